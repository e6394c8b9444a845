//! Markov partitions modulo 1, covering graphs, transitivity certificates,
//! the rome method and loop enumeration.

mod digraph;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{floor, fmt_rational, frac, largest_root_above, CertifiedRoot, IntPoly, Rational};
use crate::error::{Error, Result};
use crate::lifting::Lifting;

pub use digraph::{Digraph, Loop, Rome, TransitivityCertificate};

/// Default cap on enumerated loops.
pub const DEFAULT_LOOP_CAP: usize = 1_000_000;

/// A basic interval `[left, right]` of the partition; the wrap class has
/// `right = first point + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicInterval {
    pub left: Rational,
    pub right: Rational,
    pub name: String,
    /// `F(x) = slope * x + offset` on the interval.
    pub slope: Rational,
    pub offset: Rational,
}

/// Arrow `I -> J` meaning `F(I)` contains `J + shift`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub to: usize,
    pub shift: i64,
}

/// A Markov partition modulo 1 of a lifting together with its covering graph.
#[derive(Clone, Debug)]
pub struct MarkovSystem {
    lifting: Lifting,
    partition: Vec<Rational>,
    classes: Vec<BasicInterval>,
    arrows: Vec<Vec<Arrow>>,
    orientation: Vec<i8>,
    graph: Digraph,
}

/// Adjacency export `{classes, arrows, orientation}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub classes: Vec<String>,
    pub arrows: Vec<[usize; 2]>,
    pub orientation: Vec<i8>,
}

impl MarkovSystem {
    /// Partition generated by the breakpoints of `F` and `extra_points`, taken mod 1.
    pub fn build(f: &Lifting, extra_points: &[Rational]) -> Result<Self> {
        let mut pts: Vec<Rational> = f.breakpoints().iter().chain(extra_points).map(frac).collect();
        pts.sort();
        pts.dedup();
        for p in &pts {
            let img = f.eval(p);
            if pts.binary_search(&frac(&img)).is_err() {
                return Err(Error::NotInvariant { point: fmt_rational(p), image: fmt_rational(&img) });
            }
        }
        let k = pts.len();
        let mut classes = Vec::with_capacity(k);
        let mut orientation = Vec::with_capacity(k);
        let mut images = Vec::with_capacity(k);
        for i in 0..k {
            let left = pts[i].clone();
            let right = if i + 1 < k { pts[i + 1].clone() } else { &pts[0] + Rational::one() };
            let name = format!("[{}, {}]", fmt_rational(&left), fmt_rational(&right));
            let (fl, fr) = (f.eval(&left), f.eval(&right));
            if fl == fr {
                return Err(Error::FlatClass { class: name });
            }
            let len = (&fr - &fl).abs();
            if len >= Rational::one() {
                return Err(Error::NotShort { class: name, length: fmt_rational(&len) });
            }
            let slope = (&fr - &fl) / (&right - &left);
            let offset = &fl - &slope * &left;
            orientation.push(if fr > fl { 1 } else { -1 });
            images.push(if fl < fr { (fl, fr) } else { (fr, fl) });
            classes.push(BasicInterval { left, right, name, slope, offset });
        }
        let mut arrows = Vec::with_capacity(k);
        for (lo, hi) in &images {
            let mut row = Vec::new();
            // Translates J + s with J = [a_j, b_j] inside [lo, hi]; lo and hi are partition points up to shifts.
            let base = floor(lo);
            for (j, c) in classes.iter().enumerate() {
                for s in [&base - BigInt::one(), base.clone(), &base + BigInt::one()] {
                    let sr = Rational::from_integer(s.clone());
                    if *lo <= &c.left + &sr && &c.right + &sr <= *hi {
                        row.push(Arrow { to: j, shift: s.to_i64().expect("small shift") });
                    }
                }
            }
            row.sort_by_key(|a| a.to);
            arrows.push(row);
        }
        let graph = Digraph::new(arrows.iter().map(|r| r.iter().map(|a| a.to).collect()).collect());
        Ok(Self { lifting: f.clone(), partition: pts, classes, arrows, orientation, graph })
    }

    /// Rename classes whose endpoints carry labels, e.g. `[x0, y0]`. The
    /// labeller receives lifted coordinates, so the right end of the wrap
    /// class lies in `[1, 2)`.
    pub fn with_labels(mut self, label: impl Fn(&Rational) -> Option<String>) -> Self {
        for c in &mut self.classes {
            if let (Some(l), Some(r)) = (label(&c.left), label(&c.right)) {
                c.name = format!("[{l}, {r}]");
            }
        }
        self
    }

    pub fn lifting(&self) -> &Lifting {
        &self.lifting
    }

    pub fn partition(&self) -> &[Rational] {
        &self.partition
    }

    pub fn classes(&self) -> &[BasicInterval] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Class whose left endpoint is `x` mod 1.
    pub fn class_starting_at(&self, x: &Rational) -> Option<usize> {
        self.partition.binary_search(&frac(x)).ok()
    }

    pub fn arrows(&self) -> &[Vec<Arrow>] {
        &self.arrows
    }

    /// Shift `k` of the arrow `i -> j`, if present.
    pub fn shift(&self, i: usize, j: usize) -> Option<i64> {
        self.arrows[i].iter().find(|a| a.to == j).map(|a| a.shift)
    }

    pub fn orientation(&self) -> &[i8] {
        &self.orientation
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.graph.matrix()
    }

    pub fn transitivity_certificate(&self) -> TransitivityCertificate {
        self.graph.transitivity_certificate()
    }

    pub fn find_rome(&self) -> Rome {
        self.graph.find_rome()
    }

    pub fn rome_char_poly(&self, rome: &Rome) -> Result<IntPoly> {
        self.graph.rome_char_poly(rome)
    }

    /// Certified bracket for the spectral radius when it exceeds one, else exactly one.
    pub fn entropy(&self, tol: &Rational) -> Result<CertifiedRoot> {
        let p = self.rome_char_poly(&self.find_rome())?;
        spectral_radius(&p, tol)
    }

    pub fn enumerate_loops(&self, max_len: usize, cap: usize) -> Result<Vec<Loop>> {
        self.graph.enumerate_loops(max_len, &self.orientation, cap)
    }

    pub fn export(&self) -> GraphExport {
        GraphExport {
            classes: self.classes.iter().map(|c| c.name.clone()).collect(),
            arrows: self.graph.arrows(),
            orientation: self.orientation.clone(),
        }
    }
}

/// Largest root above one of a characteristic polynomial, or exactly one when
/// there is none.
pub fn spectral_radius(p: &IntPoly, tol: &Rational) -> Result<CertifiedRoot> {
    match largest_root_above(p, &Rational::one(), tol) {
        Ok(r) => Ok(r),
        Err(Error::NoRootAbove { .. }) => Ok(CertifiedRoot::exact_one()),
        Err(e) => Err(e),
    }
}

/// Topological entropy bounds `log sigma` from a spectral radius bracket.
pub fn entropy_bounds(sigma: &CertifiedRoot) -> (f64, f64) {
    if sigma.lower == sigma.upper && sigma.lower.is_one() {
        (0.0, 0.0)
    } else {
        sigma.ln_bounds()
    }
}

/// Convenience for a rational `1/10^k` tolerance.
pub fn tol_pow10(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(k))
}

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::poly::IntPoly;
use super::rational::{dyadic_ceil, dyadic_floor, fmt_rational, rational_serde, to_f64, Rational};
use crate::error::{Error, Result};

/// A rational bracket `[lower, upper]` on which an integer polynomial changes
/// sign, with no real root of the polynomial above `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedRoot {
    #[serde(with = "rational_serde")]
    pub lower: Rational,
    #[serde(with = "rational_serde")]
    pub upper: Rational,
}

impl CertifiedRoot {
    /// The degenerate bracket used for "no root above one": exactly 1.
    pub fn exact_one() -> Self {
        Self { lower: Rational::one(), upper: Rational::one() }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (to_f64(&self.lower) + to_f64(&self.upper))
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// Certified strict comparison: every point of `self` exceeds every point of `other`.
    pub fn certainly_above(&self, other: &Self) -> bool {
        self.lower > other.upper
    }

    /// Outward-rounded natural logarithm of the bracket.
    pub fn ln_bounds(&self) -> (f64, f64) {
        let lo = to_f64(&self.lower).ln();
        let hi = to_f64(&self.upper).ln();
        let pad = |v: f64| 4.0 * f64::EPSILON * v.abs().max(1e-300);
        (lo - pad(lo), hi + pad(hi))
    }

    pub fn display(&self) -> String {
        format!("[{}, {}]", fmt_rational(&self.lower), fmt_rational(&self.upper))
    }
}

const DYADIC_BITS: u32 = 64;

/// Certified bracket of width at most `tol` around the largest real root of
/// `p` strictly above `floor`.
///
/// A floating-point scan proposes a candidate, which is accepted only after
/// exact certification: a sign change on a dyadic bracket, a Descartes
/// count of exactly one root inside it, and no sign variation above it.
/// When certification fails the search falls back to an exact descending
/// subdivision driven by Descartes counts alone.
pub fn largest_root_above(p: &IntPoly, floor: &Rational, tol: &Rational) -> Result<CertifiedRoot> {
    if !tol.is_positive() {
        return Err(Error::BadParameter("tolerance must be positive".into()));
    }
    if p.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    if p.descartes_above(floor) == 0 {
        return Err(Error::NoRootAbove { floor: fmt_rational(floor) });
    }
    let bound = cauchy_bound(p);
    if let Some(r) = float_candidate(p, floor, &bound) {
        if let Some(b) = certify_near(p, floor, r) {
            return Ok(refine(p, b, tol));
        }
    }
    match exact_search(p, floor, &bound, tol)? {
        Some(b) => Ok(b),
        None => Err(Error::NoRootAbove { floor: fmt_rational(floor) }),
    }
}

/// `1 + max |c_i| / |lead|`, rounded up to an integer.
fn cauchy_bound(p: &IntPoly) -> Rational {
    let lead = p.lead().abs();
    let m = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let q = Rational::new(m, lead);
    Rational::from_integer(q.ceil().to_integer() + BigInt::one())
}

fn float_candidate(p: &IntPoly, floor: &Rational, bound: &Rational) -> Option<f64> {
    let lo = to_f64(floor);
    let hi = to_f64(bound).min(1e300);
    if hi.is_nan() || lo.is_nan() || hi <= lo {
        return None;
    }
    let n = 20_000usize;
    // Cubic spacing packs the grid toward the floor where Perron roots cluster.
    let grid = |i: usize| lo + (hi - lo) * (i as f64 / n as f64).powi(3);
    let mut prev_x = grid(n);
    let mut prev = p.eval_f64_scaled(prev_x);
    for i in (0..n).rev() {
        let x = grid(i);
        let v = p.eval_f64_scaled(x);
        if i > 0 && v == 0.0 {
            return Some(x);
        }
        if v.signum() != prev.signum() && v != 0.0 && prev != 0.0 {
            let (mut a, mut b) = (x, prev_x);
            let sa = v.signum();
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let vm = p.eval_f64_scaled(m);
                if vm == 0.0 {
                    return Some(m);
                }
                if vm.signum() == sa {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Some(0.5 * (a + b));
        }
        prev = v;
        prev_x = x;
    }
    None
}

fn certify_near(p: &IntPoly, floor: &Rational, r: f64) -> Option<CertifiedRoot> {
    if !r.is_finite() {
        return None;
    }
    let center = Rational::from_float(r)?;
    let scale = r.abs().max(1.0);
    for rel in [1e-13, 1e-11, 1e-9, 1e-7, 1e-5] {
        let delta = Rational::from_float(rel * scale)?;
        let lo = dyadic_floor(&(&center - &delta), DYADIC_BITS);
        let hi = dyadic_ceil(&(&center + &delta), DYADIC_BITS);
        if lo <= *floor {
            continue;
        }
        let (sl, sh) = (p.sign_at(&lo), p.sign_at(&hi));
        if sl == Ordering::Equal || sh == Ordering::Equal || sl == sh {
            continue;
        }
        if p.descartes_above(&hi) == 0 && p.descartes_in(&lo, &hi) == 1 {
            return Some(CertifiedRoot { lower: lo, upper: hi });
        }
    }
    None
}

/// Exact bisection of a bracket holding exactly one root, keeping the sign change.
fn refine(p: &IntPoly, mut b: CertifiedRoot, tol: &Rational) -> CertifiedRoot {
    let s_hi = p.sign_at(&b.upper);
    let two = Rational::from_integer(BigInt::from(2));
    while b.width() > *tol {
        let mid = (&b.lower + &b.upper) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => {
                // Rational root: shrink symmetrically around it.
                let mut eps = tol / Rational::from_integer(BigInt::from(4));
                for _ in 0..256 {
                    let lo = &mid - &eps;
                    let hi = &mid + &eps;
                    let (a, c) = (p.sign_at(&lo), p.sign_at(&hi));
                    if a != Ordering::Equal && c != Ordering::Equal && a != c {
                        return CertifiedRoot { lower: lo, upper: hi };
                    }
                    eps /= &two;
                }
                // Even multiplicity: keep the bracket around the exact root.
                return CertifiedRoot { lower: &mid - &eps, upper: &mid + &eps };
            }
            s if s == s_hi => b.upper = mid,
            _ => b.lower = mid,
        }
    }
    b
}

fn exact_search(
    p: &IntPoly,
    floor: &Rational,
    bound: &Rational,
    tol: &Rational,
) -> Result<Option<CertifiedRoot>> {
    let mut hi = bound.clone();
    while p.descartes_above(&hi) > 0 || p.sign_at(&hi) == Ordering::Equal {
        hi *= Rational::from_integer(BigInt::from(2));
    }
    descend(p, floor.clone(), hi, tol, 0)
}

/// Largest root in `(a, b)`, searching the upper half first.
fn descend(
    p: &IntPoly,
    a: Rational,
    b: Rational,
    tol: &Rational,
    depth: u32,
) -> Result<Option<CertifiedRoot>> {
    let v = p.descartes_in(&a, &b);
    if v == 0 {
        return Ok(None);
    }
    let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
    if v == 1 && sa != Ordering::Equal && sb != Ordering::Equal && sa != sb {
        return Ok(Some(refine(p, CertifiedRoot { lower: a, upper: b }, tol)));
    }
    if depth > 4000 {
        return Err(Error::RootUnresolved("subdivision depth exhausted".into()));
    }
    let two = Rational::from_integer(BigInt::from(2));
    let mid = (&a + &b) / &two;
    if let Some(r) = descend(p, mid.clone(), b.clone(), tol, depth + 1)? {
        return Ok(Some(r));
    }
    if p.sign_at(&mid) == Ordering::Equal {
        return Ok(Some(refine(
            p,
            CertifiedRoot { lower: &mid - tol, upper: mid.clone() + tol },
            tol,
        )));
    }
    if &b - &a < *tol {
        // A cluster of roots of even total multiplicity narrower than tol.
        return Err(Error::RootUnresolved(format!(
            "root cluster in [{}, {}] without sign change",
            fmt_rational(&a),
            fmt_rational(&b)
        )));
    }
    descend(p, a, mid, tol, depth + 1)
}

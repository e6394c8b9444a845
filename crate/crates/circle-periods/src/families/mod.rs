//! The three parametric families of degree-one circle maps: each map is the
//! connect-the-dots lifting of two twist periodic orbits placed in a
//! prescribed spatial order.
//!
//! Orbit points are placed at equally spaced coordinates `j / N`, where `N`
//! is the number of orbit points per unit. Periods, Markov graphs,
//! polynomials and transitivity depend only on the spatial order of the
//! points, so any other placement with the same order gives the same
//! results for everything verified here.

mod polys;
mod scan;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{floor, frac, IntPoly, Rational};
use crate::error::{Error, Result};
use crate::lifting::{build_from_orbits, LiftedOrbit, Lifting, RotationInterval};
use crate::markov::MarkovSystem;
use crate::periods::PeriodSet;

pub use polys::*;
pub use scan::{mts1_scan, ScanReport, ScanRow};
pub use verify::{verify, OracleCheck, PolyComparison, VerificationReport, VerifyConfig};

/// Name of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Dream,
    Persistent,
    Montevideo,
}

impl FamilyName {
    pub const ALL: [FamilyName; 3] = [FamilyName::Dream, FamilyName::Persistent, FamilyName::Montevideo];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Dream => "dream",
            FamilyName::Persistent => "persistent",
            FamilyName::Montevideo => "montevideo",
        }
    }

    /// Whether `n` is an admissible parameter.
    pub fn admits(self, n: u64) -> bool {
        match self {
            FamilyName::Dream | FamilyName::Montevideo => n >= 3,
            FamilyName::Persistent => n >= 3 && n % 2 == 1,
        }
    }

    /// Parameters of the default scan range.
    pub fn scan_range(self) -> Vec<u64> {
        match self {
            FamilyName::Dream => (3..=51).collect(),
            FamilyName::Persistent => (5..=101).step_by(2).collect(),
            FamilyName::Montevideo => (3..=10).collect(),
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dream" => Ok(FamilyName::Dream),
            "persistent" => Ok(FamilyName::Persistent),
            "montevideo" => Ok(FamilyName::Montevideo),
            _ => Err(Error::Parse { what: "family name", input: s.to_string() }),
        }
    }
}

/// Closed-form cofiniteness claims for an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCofiniteness {
    pub sbc: u64,
    /// Exact value of `bc` when the family has one in closed form.
    pub bc: Option<u64>,
    /// Inclusive bounds `lo <= bc <= hi` claimed for the family.
    pub bc_bounds: (u64, u64),
}

/// One of the two orbits, `x` or `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitTag {
    X,
    Y,
}

/// A point `x_i` or `y_i` of the prescribed spatial order in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub orbit: OrbitTag,
    pub index: u64,
}

/// A family member with everything its theorem predicts.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub name: FamilyName,
    pub n: u64,
    pub lifting: Lifting,
    pub markov: MarkovSystem,
    pub expected_rot: RotationInterval,
    pub expected_per: PeriodSet,
    pub expected_poly: IntPoly,
    /// Polynomial read off the family's Markov graph figure, where it differs
    /// from the stated closed form.
    pub graph_poly: Option<IntPoly>,
    pub expected_cofin: ExpectedCofiniteness,
    /// Spatial order of the orbit points in `[0, 1)`.
    pub order: Vec<OrbitPoint>,
    /// `(period, index shift)` of the `x` and `y` orbits.
    pub x_orbit: (u64, u64),
    pub y_orbit: (u64, u64),
}

impl FamilyInstance {
    /// Coordinate of `x_i` or `y_i` for any integer `i`.
    pub fn coordinate(&self, orbit: OrbitTag, i: i64) -> Rational {
        let (period, _) = match orbit {
            OrbitTag::X => self.x_orbit,
            OrbitTag::Y => self.y_orbit,
        };
        let p = period as i64;
        let (k, r) = (i.div_euclid(p), i.rem_euclid(p) as u64);
        let j = self
            .order
            .iter()
            .position(|o| o.orbit == orbit && o.index == r)
            .expect("every index of the orbit appears in the order");
        Rational::new(BigInt::from(j), BigInt::from(self.order.len())) + Rational::from_integer(k.into())
    }

    /// Label `x{i}` or `y{i}` of a lifted orbit point.
    pub fn label(&self, x: &Rational) -> Option<String> {
        label_of(&self.order, self.x_orbit.0, self.y_orbit.0, x)
    }

    /// Index of the class `[a, b]` given by endpoint labels.
    pub fn class(&self, a: &str, b: &str) -> Option<usize> {
        self.markov.class_index(&format!("[{a}, {b}]"))
    }
}

fn label_of(order: &[OrbitPoint], px: u64, py: u64, x: &Rational) -> Option<String> {
    let n = order.len() as i64;
    let k = floor(x);
    let scaled = frac(x) * Rational::from_integer(BigInt::from(n));
    if !scaled.is_integer() {
        return None;
    }
    let j: usize = scaled.to_integer().try_into().ok()?;
    let k: i64 = k.try_into().ok()?;
    let o = order.get(j)?;
    let (tag, period) = match o.orbit {
        OrbitTag::X => ("x", px),
        OrbitTag::Y => ("y", py),
    };
    Some(format!("{tag}{}", o.index as i64 + k * period as i64))
}

fn xs(range: impl IntoIterator<Item = u64>) -> impl Iterator<Item = OrbitPoint> {
    range.into_iter().map(|index| OrbitPoint { orbit: OrbitTag::X, index })
}

fn ys(range: impl IntoIterator<Item = u64>) -> impl Iterator<Item = OrbitPoint> {
    range.into_iter().map(|index| OrbitPoint { orbit: OrbitTag::Y, index })
}

struct Blueprint {
    name: FamilyName,
    n: u64,
    order: Vec<OrbitPoint>,
    x_orbit: (u64, u64),
    y_orbit: (u64, u64),
    expected_per: PeriodSet,
    expected_poly: IntPoly,
    graph_poly: Option<IntPoly>,
    expected_cofin: ExpectedCofiniteness,
}

fn assemble(b: Blueprint) -> Result<FamilyInstance> {
    let total = b.order.len();
    let coords = |tag: OrbitTag, period: u64| -> Result<Vec<Rational>> {
        let mut pts = vec![None; period as usize];
        for (j, o) in b.order.iter().enumerate().filter(|(_, o)| o.orbit == tag) {
            let slot = pts.get_mut(o.index as usize).ok_or_else(|| Error::OrderConflict(format!("index {} out of range", o.index)))?;
            *slot = Some(Rational::new(BigInt::from(j), BigInt::from(total)));
        }
        pts.into_iter().map(|p| p.ok_or_else(|| Error::OrderConflict("orbit point missing from the order".into()))).collect()
    };
    let ox = LiftedOrbit::new(coords(OrbitTag::X, b.x_orbit.0)?, b.x_orbit.1 as i64);
    let oy = LiftedOrbit::new(coords(OrbitTag::Y, b.y_orbit.0)?, b.y_orbit.1 as i64);
    let expected_rot = RotationInterval::new(ox.rotation.clone(), oy.rotation.clone());
    let lifting = build_from_orbits(&[ox, oy])?;
    let (px, py) = (b.x_orbit.0, b.y_orbit.0);
    let order = b.order;
    let markov = MarkovSystem::build(&lifting, &[])?.with_labels(|x| label_of(&order, px, py, x));
    Ok(FamilyInstance {
        name: b.name,
        n: b.n,
        lifting,
        markov,
        expected_rot,
        expected_per: b.expected_per,
        expected_poly: b.expected_poly,
        graph_poly: b.graph_poly,
        expected_cofin: b.expected_cofin,
        order,
        x_orbit: b.x_orbit,
        y_orbit: b.y_orbit,
    })
}

/// Spatial order of the dream family:
/// `x_0 < ... < x_{n-1} < y_0 < x_n < y_1 < y_2 < x_{n+1} < y_3 < y_4 < ...`.
pub fn dream_order(n: u64) -> Vec<OrbitPoint> {
    let mut o: Vec<OrbitPoint> = xs(0..n).chain(ys([0])).collect();
    for i in 0..n - 1 {
        o.extend(xs([n + i]));
        o.extend(ys([2 * i + 1, 2 * i + 2]));
    }
    o
}

/// Spatial order of the persistent family:
/// `x_0 < y_0 < ... < y_{n-3} < x_1 < y_{n-2} < ... < y_{2n-1}`.
pub fn persistent_order(n: u64) -> Vec<OrbitPoint> {
    xs([0]).chain(ys(0..n - 2)).chain(xs([1])).chain(ys(n - 2..2 * n)).collect()
}

/// Spatial order of the montevideo family, `n` blocks after `x_0 .. x_{n-1}`.
pub fn montevideo_order(n: u64) -> Vec<OrbitPoint> {
    let (p, r) = (2 * n - 1, 2 * n + 1);
    let mut o: Vec<OrbitPoint> = xs(0..n).collect();
    for j in 1..=n {
        o.extend(xs((j - 1) * p + n..j * p + n));
        if j > 1 {
            o.extend(ys((j - 2) * r + n + 1..=(j - 2) * r + 2 * n));
        }
        o.extend(ys((j - 1) * r..=(j - 1) * r + n));
    }
    o
}

/// `k` with `n = 4k + 1` or `n = 4k - 1`.
pub fn persistent_k(n: u64) -> u64 {
    if n % 4 == 1 {
        (n - 1) / 4
    } else {
        (n + 1) / 4
    }
}

/// `nu = n` for even `n` and `n - 1` for odd `n`.
pub fn montevideo_nu(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        n
    } else {
        n - 1
    }
}

/// `{2} U {odd q : 2k+1 <= q <= n-2} U S(n)`.
pub fn persistent_per(n: u64) -> PeriodSet {
    let k = persistent_k(n);
    let odd = (2 * k + 1..=n.saturating_sub(2)).filter(|q| q % 2 == 1);
    PeriodSet::from_parts(std::iter::once(2).chain(odd), Some(n))
}

/// `{n} U {tn + k : 2 <= t <= nu-1, -t/2 < k <= t/2} U S(n nu + 1 - nu/2)`.
pub fn montevideo_per(n: u64) -> PeriodSet {
    let nu = montevideo_nu(n);
    let mut items = vec![n];
    for t in 2..nu {
        let t = t as i64;
        for k in (-t / 2)..=(t / 2) {
            // -t/2 < k, with t/2 exact for even t.
            if 2 * k > -t {
                items.push((t * n as i64 + k) as u64);
            }
        }
    }
    PeriodSet::from_parts(items, Some(n * nu + 1 - nu / 2))
}

pub fn dream(n: u64) -> Result<FamilyInstance> {
    if !FamilyName::Dream.admits(n) {
        return Err(Error::BadParameter(format!("dream family needs n >= 3, got {n}")));
    }
    let per = 2 * n - 1;
    assemble(Blueprint {
        name: FamilyName::Dream,
        n,
        order: dream_order(n),
        x_orbit: (per, 1),
        y_orbit: (per, 2),
        expected_per: PeriodSet::successors(n),
        expected_poly: dream_poly(n as usize),
        graph_poly: None,
        expected_cofin: ExpectedCofiniteness { sbc: n, bc: Some(n), bc_bounds: (n, n) },
    })
}

pub fn persistent(n: u64) -> Result<FamilyInstance> {
    if !FamilyName::Persistent.admits(n) {
        return Err(Error::BadParameter(format!("persistent family needs odd n >= 3, got {n}")));
    }
    let k = persistent_k(n);
    assemble(Blueprint {
        name: FamilyName::Persistent,
        n,
        order: persistent_order(n),
        x_orbit: (2, 1),
        y_orbit: (2 * n, n + 2),
        expected_per: persistent_per(n),
        expected_poly: persistent_poly(n as usize),
        graph_poly: (n % 4 == 1).then(|| persistent_graph_poly_m(n as usize, 1)),
        expected_cofin: ExpectedCofiniteness { sbc: n, bc: None, bc_bounds: (2 * k + 1, n) },
    })
}

pub fn montevideo(n: u64) -> Result<FamilyInstance> {
    if !FamilyName::Montevideo.admits(n) {
        return Err(Error::BadParameter(format!("montevideo family needs n >= 3, got {n}")));
    }
    let q = 2 * n * n;
    let nu = montevideo_nu(n);
    assemble(Blueprint {
        name: FamilyName::Montevideo,
        n,
        order: montevideo_order(n),
        x_orbit: (q, 2 * n - 1),
        y_orbit: (q, 2 * n + 1),
        expected_per: montevideo_per(n),
        expected_poly: montevideo_poly(n as usize),
        graph_poly: None,
        expected_cofin: ExpectedCofiniteness { sbc: n * nu + 1 - nu / 2, bc: None, bc_bounds: (n, n * nu - 1 - nu / 2) },
    })
}

pub fn instance(name: FamilyName, n: u64) -> Result<FamilyInstance> {
    match name {
        FamilyName::Dream => dream(n),
        FamilyName::Persistent => persistent(n),
        FamilyName::Montevideo => montevideo(n),
    }
}

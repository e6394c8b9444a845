//! Piecewise-affine degree-one liftings, their monotone envelopes and exact
//! rotation numbers.

mod envelope;
mod rotation;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{floor, fmt_rational, rational_serde, rational_vec_serde, Rational};
use crate::error::{Error, Result};

pub use envelope::upper_lower;
pub use rotation::{rotation_interval, rotation_number_monotone, RotationConfig};

/// A degree-one lifting `F(x + 1) = F(x) + 1`, affine between consecutive
/// breakpoints. The last piece runs from the last breakpoint to the first
/// breakpoint plus one, where it takes the first value plus one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lifting {
    #[serde(with = "rational_vec_serde")]
    breakpoints: Vec<Rational>,
    #[serde(with = "rational_vec_serde")]
    values: Vec<Rational>,
}

/// A twist lifted periodic orbit given on one fundamental domain.
///
/// Points are labelled `x_0 < x_1 < ... < x_{q-1}` in `[0, 1)` and extended by
/// `x_{i + q l} = x_i + l`; the dynamics is `x_i -> x_{i + index_shift}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedOrbit {
    #[serde(with = "rational_vec_serde")]
    pub points: Vec<Rational>,
    pub period: u64,
    #[serde(with = "rational_serde")]
    pub rotation: Rational,
    pub index_shift: i64,
}

impl LiftedOrbit {
    /// Orbit with rotation number `index_shift / period`.
    pub fn new(points: Vec<Rational>, index_shift: i64) -> Self {
        let period = points.len() as u64;
        let rotation = Rational::new(BigInt::from(index_shift), BigInt::from(period.max(1)));
        Self { points, period, rotation, index_shift }
    }

    /// Lifted label `x_i` for any integer `i`.
    pub fn point(&self, i: i64) -> Rational {
        let q = self.period as i64;
        let (l, r) = i.div_mod_floor(&q);
        &self.points[r as usize] + Rational::from_integer(BigInt::from(l))
    }

    /// Image of `x_i`.
    pub fn image(&self, i: i64) -> Rational {
        self.point(i + self.index_shift)
    }
}

/// An interval `[c, d]` of rotation numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationInterval {
    #[serde(with = "rational_serde")]
    pub c: Rational,
    #[serde(with = "rational_serde")]
    pub d: Rational,
}

impl RotationInterval {
    pub fn new(c: Rational, d: Rational) -> Self {
        assert!(c <= d, "rotation interval endpoints out of order");
        Self { c, d }
    }

    pub fn len(&self) -> Rational {
        &self.d - &self.c
    }

    pub fn is_degenerate(&self) -> bool {
        self.c == self.d
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.c <= x && x <= &self.d
    }
}

impl std::fmt::Display for RotationInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", fmt_rational(&self.c), fmt_rational(&self.d))
    }
}

impl Lifting {
    /// Build from breakpoints in `[0, 1)` (strictly increasing) and values.
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::Degenerate("breakpoints and values must be nonempty and equally long".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Degenerate("breakpoints must be strictly increasing".into()));
        }
        if breakpoints[0].is_negative() || breakpoints[breakpoints.len() - 1] >= Rational::one() {
            return Err(Error::Degenerate("breakpoints must lie in [0, 1)".into()));
        }
        Ok(Self { breakpoints, values })
    }

    /// Build from arbitrary `(x, F(x))` samples of a degree-one lifting; points
    /// are reduced into `[0, 1)` and duplicates mod 1 must agree.
    pub fn from_points(points: &[(Rational, Rational)]) -> Result<Self> {
        let mut reduced: Vec<(Rational, Rational)> = points
            .iter()
            .map(|(x, y)| {
                let k = Rational::from_integer(floor(x));
                (x - &k, y - &k)
            })
            .collect();
        reduced.sort();
        reduced.dedup();
        if reduced.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::OrderConflict("two different images assigned to one point".into()));
        }
        let (b, v): (Vec<_>, Vec<_>) = reduced.into_iter().unzip();
        Self::new(b, v)
    }

    /// Rigid translation `x -> x + t`.
    pub fn translation(t: Rational) -> Self {
        Self { breakpoints: vec![Rational::zero()], values: vec![t] }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Breakpoints and values over one period `[b_0, b_0 + 1]`, closing point included.
    pub fn nodes(&self) -> Vec<(Rational, Rational)> {
        let mut v: Vec<(Rational, Rational)> =
            self.breakpoints.iter().cloned().zip(self.values.iter().cloned()).collect();
        v.push((&self.breakpoints[0] + Rational::one(), &self.values[0] + Rational::one()));
        v
    }

    /// Index `i` of the piece `[b_i, b_{i+1})` containing `y`, for `y` in `[b_0, b_0 + 1)`.
    fn piece(&self, y: &Rational) -> usize {
        match self.breakpoints.binary_search(y) {
            Ok(i) => i,
            Err(i) => i - 1,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let b0 = &self.breakpoints[0];
        let k = Rational::from_integer(floor(&(x - b0)));
        let y = x - &k;
        let i = self.piece(&y);
        let (x0, v0) = (&self.breakpoints[i], &self.values[i]);
        let (x1, v1) = if i + 1 < self.breakpoints.len() {
            (self.breakpoints[i + 1].clone(), self.values[i + 1].clone())
        } else {
            (b0 + Rational::one(), &self.values[0] + Rational::one())
        };
        let v = if &y == x0 { v0.clone() } else { v0 + (&v1 - v0) * (&y - x0) / (&x1 - x0) };
        v + k
    }

    pub fn iterate(&self, x: &Rational, k: u64) -> Rational {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.eval(&y);
        }
        y
    }

    /// `F + k` for an integer `k`.
    pub fn shifted(&self, k: i64) -> Self {
        let t = Rational::from_integer(BigInt::from(k));
        Self { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|v| v + &t).collect() }
    }

    /// True when `F` is nondecreasing.
    pub fn is_nondecreasing(&self) -> bool {
        self.nodes().windows(2).all(|w| w[0].1 <= w[1].1)
    }

    /// Drop breakpoints where consecutive pieces are collinear.
    pub fn simplified(&self) -> Self {
        let nodes = self.nodes();
        let n = self.breakpoints.len();
        if n == 1 {
            return self.clone();
        }
        let slope = |a: &(Rational, Rational), b: &(Rational, Rational)| (&b.1 - &a.1) / (&b.0 - &a.0);
        let mut keep = Vec::new();
        for i in 0..n {
            let prev = if i == 0 {
                let (x, y) = &nodes[n - 1];
                (x - Rational::one(), y - Rational::one())
            } else {
                nodes[i - 1].clone()
            };
            if slope(&prev, &nodes[i]) != slope(&nodes[i], &nodes[i + 1]) {
                keep.push(i);
            }
        }
        if keep.is_empty() {
            keep.push(0);
        }
        Self {
            breakpoints: keep.iter().map(|&i| self.breakpoints[i].clone()).collect(),
            values: keep.iter().map(|&i| self.values[i].clone()).collect(),
        }
    }

    /// Composition `self(other(x))`.
    pub fn compose(&self, other: &Lifting) -> Lifting {
        let nodes = other.nodes();
        let mut xs: Vec<Rational> = other.breakpoints.clone();
        for w in nodes.windows(2) {
            let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
            if y0 == y1 {
                continue;
            }
            let (lo, hi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
            for b in &self.breakpoints {
                let mut k = Rational::from_integer(crate::arith::ceil(&(lo - b)));
                loop {
                    let target = b + &k;
                    if &target > hi {
                        break;
                    }
                    let x = x0 + (&target - y0) * (x1 - x0) / (y1 - y0);
                    xs.push(x);
                    k += Rational::one();
                }
            }
        }
        let pts: Vec<(Rational, Rational)> = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&other.eval(&x));
                (x, y)
            })
            .collect();
        Lifting::from_points(&pts).expect("composition samples are consistent").simplified()
    }

    /// `F^k` by binary powering.
    pub fn power(&self, k: u64) -> Lifting {
        let mut result = Lifting::translation(Rational::zero());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = base.compose(&result);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        result
    }
}

/// The unique piecewise-affine lifting interpolating the orbit dynamics at
/// every orbit point.
pub fn build_from_orbits(orbits: &[LiftedOrbit]) -> Result<Lifting> {
    if orbits.is_empty() {
        return Err(Error::Degenerate("at least one orbit is required".into()));
    }
    let mut pts: Vec<(Rational, Rational)> = Vec::new();
    for (o_idx, o) in orbits.iter().enumerate() {
        if o.points.len() as u64 != o.period || o.period == 0 {
            return Err(Error::OrderConflict(format!("orbit {o_idx}: point count differs from period")));
        }
        if o.points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OrderConflict(format!("orbit {o_idx}: points must be strictly increasing")));
        }
        if o.points[0].is_negative() || o.points[o.points.len() - 1] >= Rational::one() {
            return Err(Error::OrderConflict(format!("orbit {o_idx}: points must lie in [0, 1)")));
        }
        let expected = Rational::new(BigInt::from(o.index_shift), BigInt::from(o.period));
        if expected != o.rotation {
            return Err(Error::OrderConflict(format!(
                "orbit {o_idx}: rotation {} differs from index shift {}/{}",
                fmt_rational(&o.rotation),
                o.index_shift,
                o.period
            )));
        }
        for i in 0..o.period as i64 {
            pts.push((o.point(i), o.image(i)));
        }
    }
    let mut xs: Vec<&Rational> = pts.iter().map(|p| &p.0).collect();
    xs.sort();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Degenerate("orbits share a point".into()));
    }
    Lifting::from_points(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn translation_and_degree_one() {
        let f = Lifting::translation(rat(1, 2));
        assert_eq!(f.iterate(&rat(0, 1), 2), rat(1, 1));
        let g = build_from_orbits(&[LiftedOrbit::new(vec![rat(0, 1)], 3)]).unwrap();
        assert_eq!(g.eval(&rat(2, 7)), rat(23, 7));
    }

    #[test]
    fn orbit_interpolation() {
        let q = LiftedOrbit::new(vec![rat(0, 1), rat(1, 2)], 1);
        let f = build_from_orbits(&[q]).unwrap();
        assert_eq!(f.eval(&rat(1, 2)), rat(1, 1));
        assert_eq!(f.eval(&rat(1, 1)), rat(3, 2));
        assert_eq!(f.eval(&rat(-1, 4)), rat(1, 4));
    }

    #[test]
    fn conflicts_are_reported() {
        let a = LiftedOrbit::new(vec![rat(0, 1)], 0);
        let b = LiftedOrbit::new(vec![rat(0, 1)], 1);
        assert!(matches!(build_from_orbits(&[a, b]), Err(Error::Degenerate(_))));
        let mut c = LiftedOrbit::new(vec![rat(0, 1)], 1);
        c.rotation = rat(1, 2);
        assert!(matches!(build_from_orbits(&[c]), Err(Error::OrderConflict(_))));
    }

    #[test]
    fn composition_matches_iteration() {
        let f = Lifting::new(vec![rat(0, 1), rat(1, 3)], vec![rat(1, 5), rat(3, 2)]).unwrap();
        let g = f.power(3);
        for k in 0..20 {
            let x = rat(k * 7 - 30, 13);
            assert_eq!(g.eval(&x), f.iterate(&x, 3));
        }
    }
}

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{dyadic_ceil, dyadic_floor, rational_serde, to_f64, Rational};

const BITS: u32 = 128;

/// A closed interval `[lo, hi]` with dyadic endpoints rounded outward after every operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational_serde")]
    pub lo: Rational,
    #[serde(with = "rational_serde")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo: dyadic_floor(&lo, BITS), hi: dyadic_ceil(&hi, BITS) }
    }

    pub fn point(x: Rational) -> Self {
        Self::new(x.clone(), x)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (to_f64(&self.lo) + to_f64(&self.hi))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().expect("four products").clone();
        let hi = p.iter().max().expect("four products").clone();
        Self::new(lo, hi)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, o: &Self) -> Self {
        assert!(o.lo.is_positive() || o.hi.is_negative(), "division by an interval containing zero");
        let q = [&self.lo / &o.lo, &self.lo / &o.hi, &self.hi / &o.lo, &self.hi / &o.hi];
        let lo = q.iter().min().expect("four quotients").clone();
        let hi = q.iter().max().expect("four quotients").clone();
        Self::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn outward_rounding_contains_exact_result() {
        let a = Interval::point(rat(1, 3));
        let b = Interval::point(rat(2, 7));
        let q = a.div(&b);
        assert!(q.contains(&rat(7, 6)));
        assert!(q.width() > rat(0, 1));
        let s = a.sub(&b).square();
        assert!(s.contains(&rat(1, 441)));
    }
}

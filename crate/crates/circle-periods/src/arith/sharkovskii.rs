use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::periods::{PatternKind, PeriodSet};

/// An element of N together with the symbol 2^inf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShoNumber {
    Finite(u64),
    TwoInfinity,
}

impl ShoNumber {
    /// `2^a * m` with `m` odd, or `None` for 2^inf.
    pub fn split(self) -> Option<(u32, u64)> {
        match self {
            ShoNumber::Finite(n) => {
                assert!(n >= 1, "Sharkovskii numbers start at 1");
                let a = n.trailing_zeros();
                Some((a, n >> a))
            }
            ShoNumber::TwoInfinity => None,
        }
    }

    /// Key whose natural order is the Sharkovskii order.
    fn key(self) -> (u8, i64, i64) {
        match self.split() {
            Some((a, m)) if m >= 3 => (2, -(a as i64), -(m as i64)),
            Some((a, _)) => (0, a as i64, 0),
            None => (1, 0, 0),
        }
    }
}

impl fmt::Display for ShoNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShoNumber::Finite(n) => write!(f, "{n}"),
            ShoNumber::TwoInfinity => write!(f, "2^inf"),
        }
    }
}

impl FromStr for ShoNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t == "2^inf" || t == "2^∞" {
            return Ok(ShoNumber::TwoInfinity);
        }
        match t.parse::<u64>() {
            Ok(n) if n >= 1 => Ok(ShoNumber::Finite(n)),
            _ => Err(Error::Parse { what: "Sharkovskii number", input: s.to_string() }),
        }
    }
}

impl Serialize for ShoNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ShoNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Comparison in the Sharkovskii order: `Greater` means `a` precedes `b`
/// (3 is the greatest element, 1 the least).
pub fn sharkovskii_cmp(a: ShoNumber, b: ShoNumber) -> Ordering {
    a.key().cmp(&b.key())
}

pub fn sharkovskii_geq(a: ShoNumber, b: ShoNumber) -> bool {
    sharkovskii_cmp(a, b) != Ordering::Less
}

/// The set `{k in N : k <= s}` in the Sharkovskii order.
pub fn sharkovskii_tail(s: ShoNumber) -> PeriodSet {
    match s.split() {
        None => PeriodSet::from_pattern(1, PatternKind::PowersOfTwo),
        Some((a, 1)) => PeriodSet::from_finite((0..=a).map(|b| 1u64 << b)),
        Some((0, 3)) => PeriodSet::successors(1),
        Some((a, m)) => {
            let mut p = PeriodSet::from_pattern(1, PatternKind::PowersOfTwo);
            p.add_pattern(1, PatternKind::ValuationAbove(a));
            p.add_pattern(1, PatternKind::OddMultiplesFrom { level: a, min_odd: m });
            p.normalize();
            p
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ShoNumber::*;

    #[test]
    fn ordering_examples() {
        assert!(sharkovskii_geq(Finite(3), Finite(5)));
        assert!(!sharkovskii_geq(Finite(5), Finite(3)));
        assert!(sharkovskii_geq(TwoInfinity, Finite(16)));
        assert!(sharkovskii_geq(Finite(1), Finite(1)));
        assert!(sharkovskii_geq(Finite(7), Finite(6)));
        assert!(sharkovskii_geq(Finite(12), TwoInfinity));
        assert!(sharkovskii_geq(Finite(2), Finite(1)));
    }

    #[test]
    fn tails() {
        assert_eq!(sharkovskii_tail(Finite(1)), PeriodSet::from_finite([1]));
        assert_eq!(sharkovskii_tail(Finite(3)), PeriodSet::successors(1));
        let two_inf = sharkovskii_tail(TwoInfinity);
        for k in 1..200u64 {
            assert_eq!(two_inf.contains(k), k.is_power_of_two());
        }
        let t = sharkovskii_tail(Finite(10));
        for k in 1..300u64 {
            assert_eq!(t.contains(k), sharkovskii_geq(Finite(10), Finite(k)), "k = {k}");
        }
    }
}

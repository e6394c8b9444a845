//! Boundary-of-cofiniteness statistics of a set of periods.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, Rational};
use crate::error::{Error, Result};
use crate::periods::PeriodSet;

/// `sbc`, `sbcset`, `bc` and low-period densities of a cofinite set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofinitenessReport {
    pub sbc: u64,
    pub sbcset: BTreeSet<u64>,
    pub bc: Option<u64>,
    /// Density of `L`-low periods at `L = sbc` and, when defined, `L = bc`, as "p/q".
    pub dens_at: BTreeMap<u64, String>,
}

/// Smallest `n` with `S(n)` contained in the set.
pub fn sbc(ps: &PeriodSet) -> Result<u64> {
    ps.tail_from().ok_or(Error::NotCofinite)
}

/// `2^count <= (L - 2)^2`, the exact form of `count <= 2 log2(L - 2)`.
pub fn low_count_ok(count: u64, l: u64) -> bool {
    if l < 3 {
        return false;
    }
    let lhs = BigInt::one() << count;
    let r = BigInt::from(l - 2);
    lhs <= &r * &r
}

/// Predicates defining membership of `L` in `sbcset`.
pub fn is_sbc_candidate(ps: &PeriodSet, l: u64) -> bool {
    l > 2 && ps.contains(l) && !ps.contains(l - 1) && low_count_ok(ps.count_up_to(l - 2), l)
}

/// `{L in Per : L > 2, L - 1 not in Per, |{1..L-2} n Per| <= 2 log2(L - 2)}`.
pub fn sbcset(ps: &PeriodSet) -> Result<BTreeSet<u64>> {
    let s = sbc(ps)?;
    // L - 1 not in Per forces L - 1 < sbc.
    Ok((3..=s).filter(|&l| is_sbc_candidate(ps, l)).collect())
}

pub fn bc(ps: &PeriodSet) -> Result<Option<u64>> {
    Ok(sbcset(ps)?.iter().next_back().copied())
}

/// `|{1..L-2} n Per| / (L - 2)`.
pub fn dens_low_per(ps: &PeriodSet, l: u64) -> Result<Rational> {
    if !ps.is_cofinite() {
        return Err(Error::NotCofinite);
    }
    if l <= 2 {
        return Err(Error::BadParameter("density needs L > 2".into()));
    }
    Ok(Rational::new(BigInt::from(ps.count_up_to(l - 2)), BigInt::from(l - 2)))
}

pub fn report(ps: &PeriodSet) -> Result<CofinitenessReport> {
    let s = sbc(ps)?;
    let set = sbcset(ps)?;
    let b = set.iter().next_back().copied();
    let mut dens_at = BTreeMap::new();
    for l in [Some(s), b].into_iter().flatten() {
        if l > 2 {
            dens_at.insert(l, fmt_rational(&dens_low_per(ps, l)?));
        }
    }
    Ok(CofinitenessReport { sbc: s, sbcset: set, bc: b, dens_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn definition_examples() {
        assert_eq!(sbc(&PeriodSet::successors(1)).unwrap(), 1);
        let p7 = PeriodSet::from_parts([2, 5], Some(7));
        assert_eq!(sbc(&p7).unwrap(), 7);
        assert_eq!(sbcset(&p7).unwrap(), [5, 7].into_iter().collect());
        let p5 = PeriodSet::from_parts([2, 3], Some(5));
        assert_eq!(sbcset(&p5).unwrap(), [5].into_iter().collect());
        assert_eq!(bc(&PeriodSet::successors(9)).unwrap(), Some(9));
        assert_eq!(dens_low_per(&PeriodSet::successors(9), 9).unwrap(), rat(0, 1));
        assert!(matches!(sbc(&PeriodSet::from_finite([1, 2])), Err(Error::NotCofinite)));
    }

    #[test]
    fn montevideo_six_literal() {
        let p = PeriodSet::from_parts([6, 12, 13, 17, 18, 19, 23, 24, 25, 26, 28, 29, 30, 31, 32], Some(34));
        assert_eq!(bc(&p).unwrap(), Some(23));
        assert_eq!(sbc(&p).unwrap(), 34);
    }

    #[test]
    fn persistent_three_has_no_bc() {
        let p = PeriodSet::from_parts([2], Some(3));
        assert_eq!(bc(&p).unwrap(), None);
    }
}

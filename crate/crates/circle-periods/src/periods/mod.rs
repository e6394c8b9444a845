//! Sets of periods from rotation intervals, with endpoint contributions
//! resolved by the periodic-point oracle.

mod set;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{floor, fmt_rational, sharkovskii_cmp, sharkovskii_tail, Rational, ShoNumber};
use crate::error::{Error, Result};
use crate::lifting::{rotation_interval, RotationConfig, RotationInterval};
use crate::markov::MarkovSystem;
use crate::oracle::{periods_filtered, OracleConfig};

pub use set::{Pattern, PatternKind, PeriodSet};

/// True when some integer `k` satisfies `c < k/n < d`.
pub fn in_m_set(c: &Rational, d: &Rational, n: u64) -> bool {
    let nr = Rational::from_integer(BigInt::from(n));
    let k = floor(&(c * &nr)) + BigInt::one();
    Rational::from_integer(k) < d * nr
}

/// `M(c, d) = {n : c < k/n < d for some integer k}`.
pub fn m_set(c: &Rational, d: &Rational) -> Result<PeriodSet> {
    if c >= d {
        return Err(Error::DegenerateRotationInterval { c: fmt_rational(c), d: fmt_rational(d) });
    }
    let gap = d - c;
    // For n (d - c) > 1 the open interval (nc, nd) contains an integer.
    let t0 = (Rational::one() / &gap).floor().to_integer() + BigInt::one();
    let mut t = t0.to_u64().ok_or_else(|| Error::BadParameter("rotation interval too short".into()))?;
    while t > 1 && in_m_set(c, d, t - 1) {
        t -= 1;
    }
    let finite: Vec<u64> = (1..t).filter(|&n| in_m_set(c, d, n)).collect();
    Ok(PeriodSet::from_parts(finite, Some(t)))
}

/// Periods below `bound` of periodic points with rotation number exactly `c`.
pub fn endpoint_periods(m: &MarkovSystem, c: &Rational, bound: u64, cfg: &OracleConfig) -> Result<PeriodSet> {
    let s = c.denom().to_u64().ok_or_else(|| Error::BadParameter("denominator too large".into()))?;
    if bound <= 1 || s >= bound {
        return Ok(PeriodSet::empty());
    }
    let result = periods_filtered(m, bound - 1, cfg, &|len| (len as u64).is_multiple_of(s))?;
    let q = result.periods_with_rotation(c);
    if let Some(bad) = q.iter().find(|&&p| p % s != 0) {
        return Err(Error::Degenerate(format!("period {bad} at rotation {} is not a multiple of {s}", fmt_rational(c))));
    }
    Ok(PeriodSet::from_finite(q))
}

/// Inferred Sharkovskii type at a rational endpoint from bounded evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointType {
    pub endpoint: String,
    pub denominator: u64,
    /// Observed periods below the evidence bound.
    pub observed: Vec<u64>,
    pub bound: u64,
    /// Sharkovskii-least `u` with `s * tail(u)` matching the observation below `bound`.
    pub inferred: Option<ShoNumber>,
    /// True when other types also fit the observation.
    pub bounded_evidence: bool,
}

/// Match observed endpoint periods against `s * tail(u)` for candidate types `u`.
pub fn infer_endpoint_type(c: &Rational, observed: &BTreeSet<u64>, bound: u64) -> EndpointType {
    let s = c.denom().to_u64().unwrap_or(u64::MAX);
    let mut fits: Vec<ShoNumber> = Vec::new();
    if s < bound {
        let top = (bound - 1) / s;
        let mut cands: Vec<ShoNumber> = (1..=top.max(1) + 2).map(ShoNumber::Finite).collect();
        cands.push(ShoNumber::TwoInfinity);
        for u in cands {
            let tail = sharkovskii_tail(u).scaled(s);
            let pred: BTreeSet<u64> = (1..bound).filter(|&k| tail.contains(k)).collect();
            if &pred == observed {
                fits.push(u);
            }
        }
    }
    fits.sort_by(|a, b| sharkovskii_cmp(*a, *b));
    EndpointType {
        endpoint: fmt_rational(c),
        denominator: s,
        observed: observed.iter().copied().collect(),
        bound,
        inferred: fits.first().copied(),
        bounded_evidence: fits.len() != 1,
    }
}

/// Set of periods with the endpoint analysis that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodAnalysis {
    pub rotation: RotationInterval,
    pub m_set: PeriodSet,
    pub per: PeriodSet,
    pub endpoint_c: EndpointType,
    pub endpoint_d: EndpointType,
}

/// `Per = Q(c) U M(c, d) U Q(d)`, where the endpoint sets are needed only
/// below the tail threshold of `M(c, d)`.
pub fn per_from_rotation(m: &MarkovSystem, rcfg: &RotationConfig, ocfg: &OracleConfig) -> Result<PeriodAnalysis> {
    let rot = rotation_interval(m.lifting(), rcfg)?;
    per_with_rotation(m, rot, ocfg)
}

/// As `per_from_rotation` with a rotation interval already computed.
pub fn per_with_rotation(m: &MarkovSystem, rot: RotationInterval, ocfg: &OracleConfig) -> Result<PeriodAnalysis> {
    if rot.is_degenerate() {
        return Err(Error::DegenerateRotationInterval { c: fmt_rational(&rot.c), d: fmt_rational(&rot.d) });
    }
    let ms = m_set(&rot.c, &rot.d)?;
    let t = ms.tail_from().expect("M(c, d) is cofinite");
    let qc = endpoint_periods(m, &rot.c, t, ocfg)?;
    let qd = endpoint_periods(m, &rot.d, t, ocfg)?;
    let per = ms.union(&qc).union(&qd);
    let endpoint_c = infer_endpoint_type(&rot.c, qc.finite(), t);
    let endpoint_d = infer_endpoint_type(&rot.d, qd.finite(), t);
    Ok(PeriodAnalysis { rotation: rot, m_set: ms, per, endpoint_c, endpoint_d })
}

/// Closed-form helper: `n` is in `M(c, d)` for all `n >= t`, used by callers
/// that need the threshold only.
pub fn m_tail_threshold(c: &Rational, d: &Rational) -> Result<u64> {
    m_set(c, d).map(|s| s.tail_from().expect("cofinite"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn m_set_examples() {
        assert_eq!(m_set(&rat(1, 2), &rat(7, 10)).unwrap(), PeriodSet::from_parts([3], Some(5)));
        assert_eq!(m_set(&rat(1, 5), &rat(2, 5)).unwrap(), PeriodSet::from_parts([3, 4], Some(6)));
        assert_eq!(m_set(&rat(0, 1), &rat(1, 1)).unwrap(), PeriodSet::successors(2));
    }

    #[test]
    fn endpoint_type_inference() {
        let obs: BTreeSet<u64> = [2].into_iter().collect();
        let t = infer_endpoint_type(&rat(1, 2), &obs, 7);
        assert_eq!(t.inferred, Some(ShoNumber::Finite(1)));
        assert!(!t.bounded_evidence);
    }
}

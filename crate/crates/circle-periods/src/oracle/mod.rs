//! Brute-force periodic points of a piecewise-affine lifting, obtained by
//! solving the affine fixed-point equation of every loop of the Markov graph.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, frac, rational_serde, Rational};
use crate::error::{Error, Result};
use crate::lifting::Lifting;
use crate::markov::{Loop, MarkovSystem, DEFAULT_LOOP_CAP};

/// An exact periodic point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicWitness {
    #[serde(with = "rational_serde")]
    pub point: Rational,
    pub minimal_period: u64,
    #[serde(with = "rational_serde")]
    pub rotation: Rational,
    /// Classes visited, starting with the class containing `point`; empty for
    /// orbits through partition points.
    pub itinerary: Vec<usize>,
}

/// What to do with a loop whose composed branch is the identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegeneratePolicy {
    /// Report the loop as an error.
    Strict,
    /// Use the midpoint of the interval of fixed points as the witness.
    #[default]
    Midpoint,
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub loop_cap: usize,
    pub degenerate: DegeneratePolicy,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { loop_cap: DEFAULT_LOOP_CAP, degenerate: DegeneratePolicy::default() }
    }
}

/// One witness per `(minimal period, rotation number)` pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleResult {
    pub witnesses: BTreeMap<(u64, Rational), PeriodicWitness>,
    /// Number of loops examined.
    pub loops_examined: usize,
}

impl OracleResult {
    pub fn periods(&self) -> BTreeSet<u64> {
        self.witnesses.keys().map(|k| k.0).collect()
    }

    pub fn periods_with_rotation(&self, rho: &Rational) -> BTreeSet<u64> {
        self.witnesses.keys().filter(|k| &k.1 == rho).map(|k| k.0).collect()
    }

    pub fn witness_list(&self) -> Vec<PeriodicWitness> {
        self.witnesses.values().cloned().collect()
    }

    fn add(&mut self, w: PeriodicWitness) {
        let key = (w.minimal_period, w.rotation.clone());
        match self.witnesses.get(&key) {
            Some(old) if old.point <= w.point => {}
            _ => {
                self.witnesses.insert(key, w);
            }
        }
    }
}

/// All minimal periods up to `max_period`, each with a witness.
pub fn periods_up_to(m: &MarkovSystem, max_period: u64, cfg: &OracleConfig) -> Result<OracleResult> {
    periods_filtered(m, max_period, cfg, &|_| true)
}

/// As `periods_up_to`, solving only loops whose length passes `keep_len`.
pub fn periods_filtered(
    m: &MarkovSystem,
    max_period: u64,
    cfg: &OracleConfig,
    keep_len: &(dyn Fn(usize) -> bool + Sync),
) -> Result<OracleResult> {
    if max_period == 0 {
        return Err(Error::BadParameter("period bound must be positive".into()));
    }
    let loops = m.graph().enumerate_loops_filtered(max_period as usize, m.orientation(), cfg.loop_cap, keep_len)?;
    let solved: Vec<Result<Option<PeriodicWitness>>> =
        loops.par_iter().map(|l| solve_loop(m, l, cfg.degenerate)).collect();
    let mut out = OracleResult { loops_examined: loops.len(), ..OracleResult::default() };
    for w in solved {
        if let Some(w) = w? {
            if w.minimal_period <= max_period && keep_len(w.minimal_period as usize) {
                out.add(w);
            }
        }
    }
    for w in partition_orbits(m) {
        if w.minimal_period <= max_period && keep_len(w.minimal_period as usize) {
            out.add(w);
        }
    }
    Ok(out)
}

/// Periodic orbits contained in the partition.
pub fn partition_orbits(m: &MarkovSystem) -> Vec<PeriodicWitness> {
    let f = m.lifting();
    let pts = m.partition();
    let mut out = Vec::new();
    for p in pts {
        let mut y = p.clone();
        for k in 1..=pts.len() as u64 {
            y = f.eval(&y);
            if frac(&y) == *p {
                let shift = &y - p;
                out.push(PeriodicWitness {
                    point: p.clone(),
                    minimal_period: k,
                    rotation: shift / Rational::from_integer(BigInt::from(k)),
                    itinerary: Vec::new(),
                });
                break;
            }
        }
    }
    out
}

/// Solve the fixed-point equation of one loop; `None` when the solution
/// does not follow the itinerary or lies on the partition.
pub fn solve_loop(m: &MarkovSystem, l: &Loop, policy: DegeneratePolicy) -> Result<Option<PeriodicWitness>> {
    let classes = m.classes();
    let w = &l.word;
    let p = w.len();
    // Composite of h_j(x) = F(x) - k_j along the loop: x -> a x + b.
    let mut a = Rational::one();
    let mut b = Rational::zero();
    let mut total_shift = 0i64;
    for j in 0..p {
        let c = &classes[w[j]];
        let k = m.shift(w[j], w[(j + 1) % p]).expect("loop follows arrows");
        total_shift += k;
        let kr = Rational::from_integer(BigInt::from(k));
        a = &c.slope * &a;
        b = &c.slope * &b + &c.offset - kr;
    }
    let x = if a.is_one() {
        if !b.is_zero() {
            return Ok(None);
        }
        match policy {
            DegeneratePolicy::Strict => {
                return Err(Error::DegenerateLoop { word: w.clone(), offset: fmt_rational(&b) });
            }
            DegeneratePolicy::Midpoint => match pullback_interval(m, w) {
                Some((lo, hi)) => (lo + hi) / Rational::from_integer(BigInt::from(2)),
                None => return Ok(None),
            },
        }
    } else {
        &b / (Rational::one() - &a)
    };
    // Verify the itinerary exactly.
    let mut y = x.clone();
    for j in 0..p {
        let c = &classes[w[j]];
        if y < c.left || y > c.right {
            return Ok(None);
        }
        let k = m.shift(w[j], w[(j + 1) % p]).expect("loop follows arrows");
        y = m.lifting().eval(&y) - Rational::from_integer(BigInt::from(k));
    }
    if y != x {
        return Ok(None);
    }
    if m.partition().binary_search(&frac(&x)).is_ok() {
        return Ok(None);
    }
    let (period, rotation) = minimal_period(m.lifting(), &x, p as u64, total_shift);
    Ok(Some(PeriodicWitness { point: x, minimal_period: period, rotation, itinerary: w.clone() }))
}

/// Smallest divisor `d` of `p` with `F^d(x) - x` an integer, and the rotation number.
pub fn minimal_period(f: &Lifting, x: &Rational, p: u64, total_shift: i64) -> (u64, Rational) {
    let mut y = x.clone();
    for d in 1..=p {
        y = f.eval(&y);
        if p.is_multiple_of(d) {
            let disp = &y - x;
            if disp.is_integer() {
                return (d, disp / Rational::from_integer(BigInt::from(d)));
            }
        }
    }
    (p, Rational::new(BigInt::from(total_shift), BigInt::from(p)))
}

/// Points of the first class whose orbit follows the loop word, when the
/// composed branch is the identity.
fn pullback_interval(m: &MarkovSystem, w: &[usize]) -> Option<(Rational, Rational)> {
    let classes = m.classes();
    let p = w.len();
    let (mut lo, mut hi) = (classes[w[0]].left.clone(), classes[w[0]].right.clone());
    for j in 0..p {
        let c = &classes[w[j]];
        let k = Rational::from_integer(BigInt::from(m.shift(w[j], w[(j + 1) % p])?));
        let (u, v) = (&c.slope * &lo + &c.offset - &k, &c.slope * &hi + &c.offset - &k);
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        let next = &classes[w[(j + 1) % p]];
        lo = u.max(next.left.clone());
        hi = v.min(next.right.clone());
        if lo > hi {
            return None;
        }
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn rigid_rotation_by_half() {
        let f = Lifting::translation(rat(1, 2));
        let m = MarkovSystem::build(&f, &[rat(1, 2)]).unwrap();
        let r = periods_up_to(&m, 4, &OracleConfig::default()).unwrap();
        let keys: Vec<(u64, Rational)> = r.witnesses.keys().cloned().collect();
        assert_eq!(keys, vec![(2, rat(1, 2))]);
        let strict = OracleConfig { degenerate: DegeneratePolicy::Strict, ..OracleConfig::default() };
        assert!(matches!(periods_up_to(&m, 4, &strict), Err(Error::DegenerateLoop { .. })));
    }
}

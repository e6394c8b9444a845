//! Minimum entropy for a prescribed rotation interval: the constant
//! `beta_{c,d}` and the bimodal model map `G_{c,d}` realising it.
//!
//! `beta_{c,d}` is the unique root above one of
//! `Q_{c,d}(z) = z + 1 + 2 (z/(z-1) - T_{1-c}(z) - T_d(z))` with
//! `T_c(z) = sum_{n >= 0} z^{-floor(n/c)}`, and equivalently of
//! `R_{c,d}(z) = 1/2` with `R_{c,d}(z) = sum_{n >= 1} N(n) z^{-n}`, where
//! `N(n)` counts the integers `k` with `c < k/n < d`. For rational
//! endpoints both series are quasi-periodic, so they are summed in closed
//! form and their signs are evaluated exactly at dyadic points. Values
//! derived from the bracket of `beta` are carried as outward-rounded
//! dyadic intervals.

mod interval;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ceil, dyadic_ceil, dyadic_floor, floor, fmt_rational, rational_serde, CertifiedRoot, Rational};
use crate::error::{Error, Result};
use crate::periods::m_set;

pub use interval::Interval;

/// Bits of the dyadic grid used for bisection points and interval rounding.
const BITS: u32 = 96;

/// `beta_{c,d}` from the `Q`-root, with the agreement flag of the `R = 1/2` cross-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaResult {
    pub beta: CertifiedRoot,
    /// Bracket obtained independently from `R_{c,d}(z) = 1/2`.
    pub beta_from_r: CertifiedRoot,
    /// Both brackets lie in a common interval of length `3 tol`.
    pub method_agreement: bool,
}

/// Translate `(c, d)` by an integer so that `0 <= c < 1`.
pub fn normalize(c: &Rational, d: &Rational) -> Result<(Rational, Rational)> {
    if c >= d {
        return Err(Error::DegenerateRotationInterval { c: fmt_rational(c), d: fmt_rational(d) });
    }
    let k = Rational::from_integer(floor(c));
    Ok((c - &k, d - &k))
}

fn small(x: &BigInt) -> Result<usize> {
    x.to_usize().filter(|&v| v <= 1 << 16).ok_or_else(|| Error::BadParameter("denominator too large for the series".into()))
}

/// Closed form of `T_{a/b}(z) = sum_{r < a} z^{-floor(rb/a)} / (1 - z^{-b})`, with `T_0 = 0`.
pub fn t_series(c: &Rational, z: &Rational) -> Result<Rational> {
    if c.is_zero() {
        return Ok(Rational::zero());
    }
    if c.is_negative() {
        return Err(Error::BadParameter("T_c needs c >= 0".into()));
    }
    let (a, b) = (small(c.numer())?, small(c.denom())?);
    let w = Rational::one() / z;
    let mut s = Rational::zero();
    for r in 0..a {
        s += w.pow(((r * b) / a) as i32);
    }
    Ok(s / (Rational::one() - w.pow(b as i32)))
}

/// `sum_{n >= 1} g(n) z^{-n}` for `g(n + p) = g(n) + inc`.
fn quasi_periodic_series(g: impl Fn(usize) -> BigInt, p: usize, inc: &BigInt, z: &Rational) -> Rational {
    let w = Rational::one() / z;
    let mut head = Rational::zero();
    let mut wn = Rational::one();
    for n in 1..=p {
        wn = &wn * &w;
        head += Rational::from_integer(g(n)) * &wn;
    }
    // S (1 - w^p) = head + inc * w^{p+1} / (1 - w).
    let tail = Rational::from_integer(inc.clone()) * &wn * &w / (Rational::one() - &w);
    (head + tail) / (Rational::one() - wn)
}

/// `sum_{n >= 1} floor(n c) z^{-n}`.
pub fn floor_series(c: &Rational, z: &Rational) -> Result<Rational> {
    let p = small(c.denom())?;
    let cc = c.clone();
    Ok(quasi_periodic_series(|n| floor(&(&cc * Rational::from_integer(n.into()))), p, c.numer(), z))
}

/// `sum_{n >= 1} ceil(n d) z^{-n}`.
pub fn ceil_series(d: &Rational, z: &Rational) -> Result<Rational> {
    let p = small(d.denom())?;
    let dd = d.clone();
    Ok(quasi_periodic_series(|n| ceil(&(&dd * Rational::from_integer(n.into()))), p, d.numer(), z))
}

/// `Q_{c,d}(z)` for `0 <= c < 1`, `c < d`, `z > 1`.
pub fn q_value(c: &Rational, d: &Rational, z: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    Ok(z + &one + two * (z / (z - &one) - t_series(&(&one - c), z)? - t_series(d, z)?))
}

/// `R_{c,d}(z) = sum_n N(n) z^{-n}` with `N(n) = ceil(nd) - floor(nc) - 1`.
pub fn r_value(c: &Rational, d: &Rational, z: &Rational) -> Result<Rational> {
    let one = Rational::one();
    Ok(ceil_series(d, z)? - floor_series(c, z)? - &one / (z - &one))
}

/// `sum_{n in M(c,d)} z^{-n}`, counting each period once regardless of how
/// many fractions `k/n` fall in `(c, d)`.
pub fn r_membership_value(c: &Rational, d: &Rational, z: &Rational) -> Result<Rational> {
    let m = m_set(c, d)?;
    let t = m.tail_from().expect("M(c, d) is cofinite");
    let w = Rational::one() / z;
    let mut s: Rational = m.finite().iter().map(|&n| w.pow(n as i32)).sum();
    s += w.pow(t as i32) / (Rational::one() - &w);
    Ok(s)
}

/// Bisect an increasing-sign function on `(1, inf)` to a dyadic bracket of width at most `tol`.
fn bisect_above_one(f: &dyn Fn(&Rational) -> Result<Rational>, tol: &Rational) -> Result<CertifiedRoot> {
    if !tol.is_positive() {
        return Err(Error::BadParameter("tolerance must be positive".into()));
    }
    let one = Rational::one();
    let mut lo = None;
    for k in 1..BITS {
        let z = &one + Rational::new(BigInt::one(), BigInt::one() << k);
        if f(&z)?.is_negative() {
            lo = Some(z);
            break;
        }
    }
    let mut lo = lo.ok_or_else(|| Error::Degenerate("no sign change near 1".into()))?;
    let mut hi = Rational::from_integer(2.into());
    while !f(&hi)?.is_positive() {
        if f(&hi)?.is_zero() {
            return Ok(CertifiedRoot { lower: hi.clone(), upper: hi });
        }
        lo = hi.clone();
        hi = &hi * Rational::from_integer(2.into());
        if hi > Rational::from_integer(BigInt::one() << 20) {
            return Err(Error::Degenerate("no sign change below 2^20".into()));
        }
    }
    let half = Rational::new(1.into(), 2.into());
    while &hi - &lo > *tol {
        let mid = dyadic_floor(&((&lo + &hi) * &half), BITS);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(&mid)?;
        if v.is_zero() {
            return Ok(CertifiedRoot { lower: mid.clone(), upper: mid });
        }
        if v.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CertifiedRoot { lower: lo, upper: hi })
}

/// Certified `beta_{c,d}` from `Q_{c,d} = 0`, cross-checked against `R_{c,d} = 1/2`.
pub fn beta(c: &Rational, d: &Rational, tol: &Rational) -> Result<BetaResult> {
    let (c, d) = normalize(c, d)?;
    let q = bisect_above_one(&|z| q_value(&c, &d, z), tol)?;
    let half = Rational::new(1.into(), 2.into());
    let r = bisect_above_one(&|z| Ok(&half - r_value(&c, &d, z)?), tol)?;
    let span = q.upper.clone().max(r.upper.clone()) - q.lower.clone().min(r.lower.clone());
    let agree = span <= tol * Rational::from_integer(3.into());
    Ok(BetaResult { beta: q, beta_from_r: r, method_agreement: agree })
}

/// Root of `sum_{n in M(c,d)} z^{-n} = 1/2`, exposed for comparison with `beta`.
pub fn beta_membership(c: &Rational, d: &Rational, tol: &Rational) -> Result<CertifiedRoot> {
    let (c, d) = normalize(c, d)?;
    let half = Rational::new(1.into(), 2.into());
    bisect_above_one(&|z| Ok(&half - r_membership_value(&c, &d, z)?), tol)
}

/// True when `beta^q > 3` on the whole bracket.
pub fn exceeds_cube_root_bound(beta: &CertifiedRoot, q: u32) -> bool {
    let mut p = Rational::one();
    for _ in 0..q {
        p = &p * &beta.lower;
    }
    p > Rational::from_integer(3.into())
}

/// A point of the model map with a certified value bracket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSample {
    pub x: Interval,
    pub value: Interval,
}

/// The bimodal lifting `G(x) = beta x + b` on `[0, u]` and
/// `G(x) = beta (1 - x) + b + 1` on `[u, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinEntropyModel {
    #[serde(with = "rational_serde")]
    pub c: Rational,
    #[serde(with = "rational_serde")]
    pub d: Rational,
    pub beta: Interval,
    pub b: Interval,
    pub u: Interval,
    /// Breakpoints `0`, `u`, `1` with their values.
    pub samples: Vec<ModelSample>,
}

/// Build `G_{c,d}` from the certified `beta_{c,d}`.
pub fn min_entropy_model(c: &Rational, d: &Rational, tol: &Rational) -> Result<MinEntropyModel> {
    let (c, d) = normalize(c, d)?;
    let br = beta(&c, &d, tol)?.beta;
    let one = Interval::point(Rational::one());
    let beta = Interval::new(br.lower.clone(), br.upper.clone());
    // (beta - 1)^2 / beta increases and sum floor(nc) beta^{-n} decreases in beta.
    let lo_factor = Interval::point(br.lower.clone()).sub(&one).square().div(&Interval::point(br.lower.clone()));
    let hi_factor = Interval::point(br.upper.clone()).sub(&one).square().div(&Interval::point(br.upper.clone()));
    let s_at_hi = floor_series(&c, &br.upper)?;
    let s_at_lo = floor_series(&c, &br.lower)?;
    let b_lo = lo_factor.mul(&Interval::point(s_at_hi)).lo;
    let b_hi = hi_factor.mul(&Interval::point(s_at_lo)).hi;
    let b = Interval::new(b_lo, b_hi);
    let u = beta.add(&one).div(&beta.add(&beta));
    let peak = beta.mul(&u).add(&b);
    let samples = vec![
        ModelSample { x: Interval::point(Rational::zero()), value: b.clone() },
        ModelSample { x: u.clone(), value: peak },
        ModelSample { x: one.clone(), value: b.add(&one) },
    ];
    Ok(MinEntropyModel { c, d, beta, b, u, samples })
}

/// Which monotone envelope of the model to iterate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Envelope {
    Lower,
    Upper,
}

/// One step of an envelope of `G` with the given parameters, `x` reduced to `[0, 1)`.
fn envelope_step(env: Envelope, beta: &Rational, b: &Rational, x: &Rational) -> Rational {
    let k = Rational::from_integer(floor(x));
    let t = x - &k;
    let one = Rational::one();
    let rise = beta * &t + b;
    let v = match env {
        Envelope::Lower => rise.min(b + &one),
        Envelope::Upper => {
            let peak = (beta + &one) / Rational::from_integer(2.into()) + b;
            rise.max(&peak - &one).min(peak)
        }
    };
    k + v
}

/// Certified bracket of the rotation number of an envelope of `G`.
///
/// Both envelopes are nondecreasing degree-one liftings that increase with
/// `beta` and `b`, so iterating with the lower parameters and downward
/// rounding bounds the true orbit from below, and symmetrically from
/// above. Then `|F^N(0) - N rho| < 1` brackets `rho`.
fn envelope_rotation(env: Envelope, m: &MinEntropyModel, steps: u32) -> (Rational, Rational) {
    let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
    for _ in 0..steps {
        lo = dyadic_floor(&envelope_step(env, &m.beta.lo, &m.b.lo, &lo), BITS);
        hi = dyadic_ceil(&envelope_step(env, &m.beta.hi, &m.b.hi, &hi), BITS);
    }
    let n = Rational::from_integer(steps.into());
    let one = Rational::one();
    ((lo - &one) / &n, (hi + &one) / n)
}

/// Rotation numbers of the lower and upper envelopes of the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRotation {
    pub lower_envelope: Interval,
    pub upper_envelope: Interval,
    /// `c` lies in the first bracket and `d` in the second.
    pub consistent: bool,
}

pub fn model_rotation(m: &MinEntropyModel, steps: u32) -> ModelRotation {
    let (a, b) = envelope_rotation(Envelope::Lower, m, steps);
    let (c, d) = envelope_rotation(Envelope::Upper, m, steps);
    let lower_envelope = Interval::new(a, b);
    let upper_envelope = Interval::new(c, d);
    let consistent = lower_envelope.contains(&m.c) && upper_envelope.contains(&m.d);
    ModelRotation { lower_envelope, upper_envelope, consistent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, to_f64};
    use crate::markov::tol_pow10;

    #[test]
    fn golden_interval_closed_forms() {
        // (0, 1): R(z) = 1/(z-1)^2, so beta = 1 + sqrt 2.
        let z = rat(5, 2);
        assert_eq!(r_value(&rat(0, 1), &rat(1, 1), &z).unwrap(), rat(4, 9));
        let b = beta(&rat(0, 1), &rat(1, 1), &tol_pow10(12)).unwrap();
        assert!(b.method_agreement);
        assert!((b.beta.midpoint_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-11);
    }

    #[test]
    fn series_match_truncated_sums() {
        let (c, d, z) = (rat(1, 3), rat(3, 5), rat(7, 4));
        let zf = 1.75f64;
        let mut t = 0.0;
        let mut r = 0.0;
        for n in 0..400u32 {
            t += zf.powi(-((n as f64 * 5.0 / 3.0).floor() as i32));
            if n >= 1 {
                let cnt = (n as f64 * 0.6).ceil() - (n as f64 / 3.0).floor() - 1.0;
                r += cnt * zf.powi(-(n as i32));
            }
        }
        assert!((to_f64(&t_series(&rat(3, 5), &z).unwrap()) - t).abs() < 1e-12);
        assert!((to_f64(&r_value(&c, &d, &z).unwrap()) - r).abs() < 1e-12);
    }

    #[test]
    fn q_identity_at_rational_points() {
        let (c, d) = (rat(1, 2), rat(7, 10));
        for z in [rat(3, 2), rat(2, 1), rat(11, 7)] {
            let lhs = q_value(&c, &d, &z).unwrap();
            let rhs = (&z - Rational::one()) * (Rational::one() - rat(2, 1) * r_value(&c, &d, &z).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn translation_invariance() {
        let t = tol_pow10(10);
        let a = beta(&rat(1, 3), &rat(1, 2), &t).unwrap();
        let b = beta(&rat(7, 3), &rat(5, 2), &t).unwrap();
        assert_eq!(a, b);
    }
}

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{upper_lower, Lifting, RotationInterval};
use crate::arith::{floor, frac, Rational};
use crate::error::{Error, Result};

/// Search limits for exact rotation numbers.
#[derive(Clone, Debug)]
pub struct RotationConfig {
    /// Largest denominator tried by the Stern-Brocot search.
    pub max_denominator: u64,
    /// Orbit length examined before switching to the Stern-Brocot search.
    pub orbit_steps: usize,
}

impl Default for RotationConfig {
    fn default() -> Self {
        Self { max_denominator: 1_000_000, orbit_steps: 50_000 }
    }
}

/// Exact rotation number of a nondecreasing lifting.
///
/// The orbit of the first breakpoint is followed first: once it repeats
/// modulo 1 the rotation number is the average displacement over the cycle.
/// Otherwise a Stern-Brocot search decides each mediant `p/q` by the sign
/// pattern of `F^q(x) - x - p` at the breakpoints of `F^q`.
pub fn rotation_number_monotone(f: &Lifting, cfg: &RotationConfig) -> Result<Rational> {
    if !f.is_nondecreasing() {
        return Err(Error::Degenerate("rotation number requires a nondecreasing lifting".into()));
    }
    if let Some(r) = orbit_rotation(f, cfg.orbit_steps) {
        return Ok(r);
    }
    stern_brocot(f, cfg.max_denominator)
}

/// `[rho(F_l), rho(F_u)]`
pub fn rotation_interval(f: &Lifting, cfg: &RotationConfig) -> Result<RotationInterval> {
    let (l, u) = upper_lower(f);
    Ok(RotationInterval::new(rotation_number_monotone(&l, cfg)?, rotation_number_monotone(&u, cfg)?))
}

fn orbit_rotation(f: &Lifting, steps: usize) -> Option<Rational> {
    let mut seen: HashMap<Rational, (usize, Rational)> = HashMap::new();
    let mut x = f.breakpoints()[0].clone();
    for k in 0..steps {
        let key = frac(&x);
        if key.denom().bits() > 256 {
            return None;
        }
        if let Some((j, xj)) = seen.get(&key) {
            let n = (k - j) as i64;
            return Some((&x - xj) / Rational::from_integer(BigInt::from(n)));
        }
        seen.insert(key, (k, x.clone()));
        x = f.eval(&x);
    }
    None
}

/// Minimum and maximum of `F^q(x) - x` over one period.
fn displacement_range(fq: &Lifting) -> (Rational, Rational) {
    let d: Vec<Rational> = fq.nodes().iter().map(|(x, y)| y - x).collect();
    let lo = d.iter().min().expect("nonempty").clone();
    let hi = d.iter().max().expect("nonempty").clone();
    (lo, hi)
}

fn stern_brocot(f: &Lifting, max_den: u64) -> Result<Rational> {
    let (lo, hi) = displacement_range(f);
    // An integer displacement value is a fixed point mod 1.
    let k = crate::arith::ceil(&lo);
    if Rational::from_integer(k.clone()) <= hi {
        return Ok(Rational::from_integer(k));
    }
    let base = floor(&lo);
    let (mut a, mut b) = (base.clone(), BigInt::one());
    let (mut c, mut d) = (base + BigInt::one(), BigInt::one());
    loop {
        let p = &a + &c;
        let q = &b + &d;
        let qn = q.to_u64().unwrap_or(u64::MAX);
        if qn > max_den {
            return Err(Error::DepthExceeded { bound: max_den });
        }
        let (mn, mx) = displacement_range(&f.power(qn));
        let pr = Rational::from_integer(p.clone());
        if mn <= pr && pr <= mx {
            return Ok(Rational::new(p, q));
        }
        if mn > pr {
            a = p;
            b = q;
        } else {
            c = p;
            d = q;
        }
    }
}

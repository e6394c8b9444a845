use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Integer polynomial, constant term first, no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self::new(v)
    }

    /// Sum of `c * x^k` terms; repeated exponents accumulate.
    pub fn from_terms(terms: &[(i64, usize)]) -> Self {
        let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut v = vec![BigInt::zero(); deg + 1];
        for &(c, k) in terms {
            v[k] += c;
        }
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Multiplicity of the root at zero.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Coefficient reversal padded to length `k + 1`: `x^k p(1/x)`.
    /// Panics if `k` is below the degree.
    pub fn reversed(&self, k: usize) -> Self {
        let d = self.degree().unwrap_or(0);
        assert!(k >= d || self.is_zero(), "reversal length below degree");
        let mut v = vec![BigInt::zero(); k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[k - i] = c.clone();
        }
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `b^d p(a/b)` for `x = a/b` with `b > 0`; shares its sign with `p(x)`.
    pub fn eval_scaled(&self, x: &Rational) -> BigInt {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        // Horner on the homogenized form sum c_i a^i b^(d-i).
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval_scaled(x).sign_ord()
    }

    /// Approximate value of `p(x) / max(1,|x|)^d` in floating point.
    pub fn eval_f64_scaled(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if x.abs() <= 1.0 {
            let mut acc = 0.0;
            for c in self.coeffs.iter().rev() {
                acc = acc * x + big_to_f64(c);
            }
            acc
        } else {
            let y = 1.0 / x;
            let mut acc = 0.0;
            for c in &self.coeffs {
                acc = acc * y + big_to_f64(c);
            }
            acc
        }
    }

    /// Coefficients of `b^d p((y + a)/b)` for `h = a/b`: a positive multiple of
    /// `p` composed with the shift, with positive roots matching roots of `p` above `h`.
    pub fn taylor_shift_scaled(&self, h: &Rational) -> IntPoly {
        let d = match self.degree() {
            Some(d) => d,
            None => return Self::zero(),
        };
        let (a, b) = (h.numer(), h.denom());
        // r(y) = sum c_i b^(d-i) y^i, then shift y -> y + a.
        let mut bp = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            bp[i] = &bp[i - 1] * b;
        }
        let mut c: Vec<BigInt> = (0..=d).map(|i| &self.coeffs[i] * &bp[d - i]).collect();
        for i in 0..d {
            for j in (i..d).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    pub fn sign_variations(&self) -> usize {
        let mut last: Option<bool> = None;
        let mut v = 0;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let pos = c.is_positive();
            if let Some(l) = last {
                if l != pos {
                    v += 1;
                }
            }
            last = Some(pos);
        }
        v
    }

    /// Upper bound (Descartes) on the number of roots strictly above `h`.
    pub fn descartes_above(&self, h: &Rational) -> usize {
        self.taylor_shift_scaled(h).sign_variations()
    }

    /// Exact quotient and remainder over the rationals when the divisor is
    /// monic up to sign; otherwise exact integer division is attempted and
    /// `None` returned on failure.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.lead();
        let mut r = self.coeffs.clone();
        if self.coeffs.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); self.coeffs.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(&lead);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &qq * dc;
            }
            q[k] = qq;
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Quotient when `d` divides `self` exactly in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// Cyclotomic polynomial Phi_k.
    pub fn cyclotomic(k: usize) -> Self {
        let mut p = Self::monomial(1, k).sub(&Self::one());
        for dk in 1..k {
            if k.is_multiple_of(dk) {
                p = p.div_exact(&Self::cyclotomic(dk)).expect("cyclotomic division");
            }
        }
        p
    }

    /// Exact test that every root lies on the unit circle or at zero, by
    /// stripping powers of `x` and cyclotomic factors until a unit is left.
    pub fn roots_in_closed_unit_disk_cyclotomic(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let k = self.low_order();
        let mut p = Self::new(self.coeffs[k..].to_vec());
        let deg = p.degree().unwrap_or(0);
        let bound = 2 * deg * deg + 2;
        let mut j = 1;
        while p.degree().unwrap_or(0) > 0 && j <= bound {
            let phi = Self::cyclotomic(j);
            if phi.degree().unwrap_or(0) <= p.degree().unwrap_or(0) {
                while let Some(q) = p.div_exact(&phi) {
                    p = q;
                }
            }
            j += 1;
        }
        p.degree() == Some(0) && p.lead().abs().is_one()
    }

    /// Winding number of `p` around zero along `|z| = r`, sampled adaptively so
    /// that successive arguments differ by less than a quarter turn.
    /// Returns the number of roots inside the circle, or `None` if the
    /// contour passes too close to a root for double precision.
    pub fn roots_inside_circle(&self, r: f64) -> Option<usize> {
        let c: Vec<f64> = self.coeffs.iter().map(big_to_f64).collect();
        if c.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let eval = |t: f64| -> (f64, f64) {
            // Horner in complex arithmetic at z = r e^{it}.
            let (zr, zi) = (r * t.cos(), r * t.sin());
            let (mut ar, mut ai) = (0.0f64, 0.0f64);
            for v in c.iter().rev() {
                let nr = ar * zr - ai * zi + v;
                let ni = ar * zi + ai * zr;
                ar = nr;
                ai = ni;
            }
            (ar, ai)
        };
        let tau = std::f64::consts::TAU;
        let mut total = 0.0;
        let n0 = 64 * (c.len() + 1);
        for k in 0..n0 {
            let t0 = tau * k as f64 / n0 as f64;
            let t1 = tau * (k + 1) as f64 / n0 as f64;
            total += arg_change(&eval, t0, t1, 0)?;
        }
        let w = total / tau;
        let rounded = w.round();
        if (w - rounded).abs() > 1e-6 || rounded < 0.0 {
            return None;
        }
        Some(rounded as usize)
    }
}

impl IntPoly {
    /// `p(x + h)` for an integer shift `h`.
    pub fn taylor_shift_int(&self, h: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let d = c.len();
        if d < 2 || h.is_zero() {
            return self.clone();
        }
        for i in 0..d - 1 {
            for j in (i..d - 1).rev() {
                let t = &c[j + 1] * h;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Descartes bound on the number of roots in the open interval `(a, b)`.
    /// The polynomial is mapped by `x = a + (b - a) / (1 + y)` onto the
    /// positive half-line and the sign variations of the result are counted.
    pub fn descartes_in(&self, a: &Rational, b: &Rational) -> usize {
        let d = match self.degree() {
            Some(d) if d > 0 => d,
            _ => return 0,
        };
        let den = a.denom().lcm(b.denom());
        let a1 = a.numer() * (&den / a.denom());
        let b1 = b.numer() * (&den / b.denom());
        let w1 = &b1 - &a1;
        let mut bp = vec![BigInt::one(); d + 1];
        for i in 1..=d {
            bp[i] = &bp[i - 1] * &den;
        }
        // den^d p(X / den) with X = a1 + w1 s.
        let scaled = Self::new((0..=d).map(|i| &self.coeffs[i] * &bp[d - i]).collect());
        let shifted = scaled.taylor_shift_int(&a1);
        let mut wp = BigInt::one();
        let mut r = Vec::with_capacity(d + 1);
        for c in shifted.coeffs.iter() {
            r.push(c * &wp);
            wp *= &w1;
        }
        let r = Self::new(r);
        let len = r.degree().unwrap_or(0);
        r.reversed(d.max(len)).taylor_shift_int(&BigInt::one()).sign_variations()
    }
}

fn arg_change(eval: &dyn Fn(f64) -> (f64, f64), t0: f64, t1: f64, depth: u32) -> Option<f64> {
    let a = eval(t0);
    let b = eval(t1);
    if (a.0 == 0.0 && a.1 == 0.0) || (b.0 == 0.0 && b.1 == 0.0) {
        return None;
    }
    let da = b.1.atan2(b.0) - a.1.atan2(a.0);
    let da = (da + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
    if da.abs() < std::f64::consts::FRAC_PI_4 {
        // Confirm with the midpoint so a fast full turn is not missed.
        let m = 0.5 * (t0 + t1);
        let c = eval(m);
        let d1 = c.1.atan2(c.0) - a.1.atan2(a.0);
        let d1 = (d1 + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
        let d2 = b.1.atan2(b.0) - c.1.atan2(c.0);
        let d2 = (d2 + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
        if (d1 + d2 - da).abs() < 1e-9 {
            return Some(da);
        }
    }
    if depth > 60 || t1 - t0 < 1e-15 {
        return None;
    }
    let m = 0.5 * (t0 + t1);
    Some(arg_change(eval, t0, m, depth + 1)? + arg_change(eval, m, t1, depth + 1)?)
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let c: std::result::Result<Vec<BigInt>, _> = v.iter().map(|s| s.parse::<BigInt>()).collect();
        c.map(IntPoly::new).map_err(serde::de::Error::custom)
    }
}

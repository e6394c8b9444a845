use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - Rational::from_integer(floor(x))
}

/// Always `p/q`, also for integers, so that every serialized rational has the same shape.
pub fn fmt_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse { what: "rational", input: s.to_string() };
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Exact value of `p/q`, an integer, or a decimal such as `0.25` or `1e-12`.
pub fn parse_exact(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.contains('/') || !(t.contains('.') || t.contains(['e', 'E'])) {
        return parse_rational(t);
    }
    let err = || Error::Parse { what: "decimal", input: s.to_string() };
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if frac_part.starts_with(['+', '-']) {
        return Err(err());
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| err())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(digits * ten.pow(scale as u32))
    } else {
        Rational::new(digits, ten.pow((-scale) as u32))
    })
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fallback for magnitudes the direct conversion rejects.
        let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
        if x.is_negative() {
            if bits > 0 { f64::NEG_INFINITY } else { -0.0 }
        } else if bits > 0 {
            f64::INFINITY
        } else {
            0.0
        }
    })
}

/// Largest dyadic `k / 2^bits` not above `x`.
pub fn dyadic_floor(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let k = floor(&(x * Rational::from_integer(scale.clone())));
    Rational::new(k, scale)
}

/// Smallest dyadic `k / 2^bits` not below `x`.
pub fn dyadic_ceil(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let k = ceil(&(x * Rational::from_integer(scale.clone())));
    Rational::new(k, scale)
}

pub mod rational_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rational_vec_serde {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_exact("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_exact("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_exact("-1.5e2").unwrap(), int(-150));
        assert_eq!(parse_exact("7/10").unwrap(), rat(7, 10));
        assert!(parse_exact("1e").is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let x = parse_rational("-6/4").unwrap();
        assert_eq!(x, rat(-3, 2));
        assert_eq!(fmt_rational(&x), "-3/2");
        assert_eq!(fmt_rational(&int(3)), "3/1");
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn floor_and_frac_of_negatives() {
        assert_eq!(floor(&rat(-1, 3)), BigInt::from(-1));
        assert_eq!(ceil(&rat(-1, 3)), BigInt::from(0));
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&int(5)), int(0));
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = rat(1, 3);
        let lo = dyadic_floor(&x, 10);
        let hi = dyadic_ceil(&x, 10);
        assert!(lo < x && x < hi);
        assert_eq!(&hi - &lo, rat(1, 1024));
    }
}

//! Exact rationals, the Sharkovskii ordering, integer polynomials and
//! certified real root isolation.

mod matrix;
mod poly;
mod rational;
mod roots;
mod sharkovskii;

pub use matrix::{char_poly, det_int, det_poly};
pub use poly::IntPoly;
pub use rational::{
    ceil, dyadic_ceil, dyadic_floor, floor, fmt_rational, frac, int, parse_exact, parse_rational, rat,
    rational_serde, rational_vec_serde, to_f64, Rational,
};
pub use roots::{largest_root_above, CertifiedRoot};
pub use sharkovskii::{sharkovskii_cmp, sharkovskii_geq, sharkovskii_tail, ShoNumber};

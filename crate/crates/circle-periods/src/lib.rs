//! Exact combinatorial dynamics of piecewise-affine degree-one circle maps.
//!
//! The crate builds liftings from prescribed twist periodic orbits, computes
//! rotation intervals exactly, derives Markov graphs modulo 1, sets of periods,
//! topological entropy via the rome method, and the boundary-of-cofiniteness
//! statistics. Three parametric families of examples are provided, together
//! with their combinatorial extensions to graphs that contain a circuit.
//!
//! Everything except the minimum-entropy module runs in exact rational
//! arithmetic. Roots of integer polynomials are returned as certified
//! rational brackets.

pub mod arith;
pub mod cli;
pub mod cofiniteness;
pub mod error;
pub mod families;
pub mod graphext;
pub mod lifting;
pub mod markov;
pub mod minentropy;
pub mod oracle;
pub mod periods;
pub mod report;

pub use arith::{CertifiedRoot, IntPoly, Rational, ShoNumber};
pub use error::{Error, Result};
pub use lifting::{Lifting, LiftedOrbit, RotationInterval};
pub use markov::{Digraph, MarkovSystem, Rome};
pub use periods::PeriodSet;

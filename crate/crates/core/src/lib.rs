//! Exact intersection numbers of torus-invariant divisors on weighted
//! projective spaces `P(q_0, ..., q_n)`.
//!
//! The Chow-ring route ([`chow::intersection_number`]) reduces every divisor
//! to a multiple of `D_0` and evaluates against `D_0^n = q_0^n / (q_0 ... q_n)`.
//! The polytope route ([`polytope::d0_power_from_volume`]) recovers `D_0^n`
//! independently from the normalized lattice volume of the simplex realizing
//! the space, and [`chow::verify_all`] checks that both agree.

pub mod arith;
pub mod chow;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod polytope;

pub use arith::BigRat;
pub use chow::{intersection_number, verify_all, TorusInvariantDivisor, VerificationReport};
pub use error::{Error, Result};
pub use lattice::{IntVector, Weights};

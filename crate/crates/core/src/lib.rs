//! Exact-arithmetic model of the tautological subring of the Chow rings of
//! Hilbert schemes of points on a K3 surface.
//!
//! The crate has four layers:
//!
//! * [`taut`] — canonical-form arithmetic in the tautological ring of powers
//!   of the surface (divisors, point classes, diagonals), with the rewrite
//!   rules that make the ring finite-dimensional.
//! * [`fock`] — the Fock-space model of the direct sum of the Chow rings of
//!   all `Hilb_n`, with creation/annihilation primitives and basis
//!   enumeration.
//! * [`ops`] — the named operators: grading operators, Virasoro and LQW
//!   operators, the Lie algebra of Neron-Severi wedges, multiplication by
//!   universal classes, and the Chow-Kunneth projectors.
//! * [`suites`] — the identity suites run by the CLI, with structured
//!   reporting.

pub mod fock;
pub mod linalg;
pub mod ops;
pub mod suites;
pub mod taut;

pub use num::BigRational as Rat;
use num::{BigInt, One, Zero};

/// Rational from an integer.
pub fn qi(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n / d`.
pub fn qr(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn q0() -> Rat {
    Rat::zero()
}

pub(crate) fn q1() -> Rat {
    Rat::one()
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

//! Exact arithmetic over Q and over cyclotomic fields Q(zeta_m).
//!
//! `Rational` is an arbitrary-precision fraction in canonical form
//! (gcd-reduced, positive denominator). [`CyclotomicNumber`] represents an
//! element of Q(zeta_m) as Q[x]/Phi_m(x) in the power basis
//! x^0..x^{phi(m)-1}; reduction by the cyclotomic polynomial gives a unique
//! normal form, so equality is a coefficient comparison after embedding
//! into the compositum.
//!
//! Orders are never minimized after arithmetic: descent to the smallest
//! cyclotomic subfield is not needed for correctness because equality is
//! defined through embedding.

mod cyclotomic;

pub use cyclotomic::{
    cyclotomic_polynomial, format_rational, multiplication_expansion_bound, parse_rational, rat,
    rat_int, CyclotomicNumber,
};

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

//! Exact arithmetic for modular forms as products of two Eisenstein series.
//!
//! The crate builds q-expansions of character Eisenstein series over
//! cyclotomic fields, expresses modular forms for Gamma_0(N) as linear
//! combinations of products of two Eisenstein series, and uses those
//! representations to compute Fourier expansions at arbitrary cusps and
//! Atkin-Lehner eigenvalues.
//!
//! Everything is exact: coefficients live in Q(zeta_m), linear systems are
//! solved with certified modular arithmetic, and no floating point is used
//! anywhere.
//!
//! Module layout mirrors the pipeline:
//! - [`exactmath`]: rationals and cyclotomic fields, the coefficient domain
//! - [`characters`]: Dirichlet characters, Gauss sums, L-values
//! - [`qexp`]: truncated Fourier expansions and the operator algebra
//!   (B_d, U_p, twists)
//! - [`eisenstein`]: q-expansions of E_l^{phi,psi} and Eisenstein space bases
//! - [`cuspexp`]: lattice Eisenstein series, slash action, expansions at
//!   cusps, Atkin-Lehner images
//! - [`reprsolver`]: generator enumeration and exact linear solving for
//!   product representations

pub mod arith;
pub mod characters;
pub mod cuspexp;
pub mod eisenstein;
pub mod error;
pub mod exactmath;
pub mod qexp;
pub mod reprsolver;

pub use characters::DirichletCharacter;
pub use cuspexp::{CuspExpansion, GSeriesCombination, GSeriesIndex, UnimodularMatrix};
pub use eisenstein::EisLabel;
pub use error::Error;
pub use exactmath::{CyclotomicNumber, Rational};
pub use qexp::FourierExpansion;
pub use reprsolver::{GeneratorQuintuple, ProductRepresentation, SolveOutcome};

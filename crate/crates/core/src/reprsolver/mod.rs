//! Generator quintuples, the product matrix, and exact solving for
//! representations of modular forms as combinations of products of two
//! Eisenstein series.
//!
//! A generator is E_l^{phi,psi}|B_{d1 d} * E_{k-l}^{conj phi,conj psi}|B_{d2 d}
//! with (phi, psi, l, d1, d2) ranging over the admissible quintuples of each
//! sublevel N0 and N0 d | N. Solving is done with deterministic modular
//! arithmetic (primes = 1 mod the coefficient field order, evaluation
//! representation per embedding), followed by rational reconstruction and
//! an exact verification of everything returned; ranks are certified on
//! both sides (a nonzero minor mod p certifies the lower bound, exactly
//! verified left-kernel vectors certify the upper bound).

mod enumerate;
mod exact;
mod modp;
mod solve;

pub use enumerate::enumerate_generators;
pub use exact::{build_matrix, exact_rank, exact_solve};
pub use solve::{
    rank_of_span, solve_represent, solve_with_columns, verify_representation, NotInSpan,
    SolveOutcome,
};

use serde::{Deserialize, Serialize};

use crate::arith::squarefree_decompose;
use crate::characters::DirichletCharacter;
use crate::eisenstein::EisLabel;
use crate::exactmath::{CyclotomicNumber, Rational};

/// One generator of the product space: the quintuple (phi, psi, l, d1, d2)
/// of a sublevel N0 = d1 M1 d2 M2 together with the outer lift d (N0 d | N).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorQuintuple {
    pub phi: DirichletCharacter,
    pub psi: DirichletCharacter,
    pub l: i64,
    pub d1: u64,
    pub d2: u64,
    pub d: u64,
    /// Weight k of the ambient space (fixes the partner weight k - l).
    pub weight: i64,
}

impl GeneratorQuintuple {
    /// The sublevel N0 = d1 M1 d2 M2.
    pub fn sublevel(&self) -> u64 {
        self.d1 * self.phi.modulus() * self.d2 * self.psi.modulus()
    }

    /// The two Eisenstein factors with their lifts.
    pub fn factor_labels(&self) -> (EisLabel, EisLabel) {
        let first = EisLabel {
            phi: self.phi.clone(),
            psi: self.psi.clone(),
            l: self.l,
            d: self.d1 * self.d,
        };
        let second = EisLabel {
            phi: self.phi.conjugate(),
            psi: self.psi.conjugate(),
            l: self.weight - self.l,
            d: self.d2 * self.d,
        };
        (first, second)
    }

    /// The scalar (d1 d)^{l/2} (d2 d)^{(k-l)/2} split as rational * sqrt(r)
    /// with r squarefree. Columns are stored without the sqrt(r) factor so
    /// the solver works in the character field alone.
    pub fn column_scalar(&self) -> (Rational, u64) {
        let k = self.weight;
        let a = self.d1 * self.d;
        let b = self.d2 * self.d;
        if self.l % 2 == 0 {
            let rat = Rational::from(num_bigint::BigInt::from(a)).pow((self.l / 2) as i32)
                * Rational::from(num_bigint::BigInt::from(b)).pow(((k - self.l) / 2) as i32);
            (rat, 1)
        } else {
            let (s, r) = squarefree_decompose(self.d1 * self.d2);
            let rat = Rational::from(num_bigint::BigInt::from(a)).pow(((self.l - 1) / 2) as i32)
                * Rational::from(num_bigint::BigInt::from(b)).pow(((k - self.l - 1) / 2) as i32)
                * Rational::from(num_bigint::BigInt::from(self.d * s));
            (rat, r)
        }
    }

    /// The exact generator scalar (d1 d)^{l/2} (d2 d)^{(k-l)/2} with the
    /// square root embedded cyclotomically.
    pub fn full_scalar(&self) -> CyclotomicNumber {
        let (rat, r) = self.column_scalar();
        CyclotomicNumber::sqrt_integer(r).scale(&rat)
    }
}

/// Certificate that a target form equals a combination of generators and
/// Eisenstein basis elements through q^{verified_to}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductRepresentation {
    pub level: u64,
    pub weight: i64,
    pub terms: Vec<(CyclotomicNumber, GeneratorQuintuple)>,
    /// Coefficients on `eisenstein_basis_labels(level, weight)` by index.
    pub eis_terms: Vec<(CyclotomicNumber, usize)>,
    /// Hex SHA-256 of the target coefficient JSON.
    pub target_digest: String,
    pub verified_to: usize,
}

/// Digest of an expansion's coefficients, pinning the target a
/// representation was solved against.
pub fn target_digest(target: &crate::qexp::FourierExpansion) -> String {
    use sha2::{Digest, Sha256};
    let json = serde_json::to_string(target.coeffs()).expect("serializable coefficients");
    let mut h = Sha256::new();
    h.update(json.as_bytes());
    hex::encode(h.finalize())
}

//! Expansions of Eisenstein series (and represented forms) after slashing
//! by arbitrary elements of SL_2(Z); Atkin-Lehner images and eigenvalues.
//!
//! The engine decomposes each E_l^{phi,psi} into level-L lattice Eisenstein
//! series G_l^{(v1,v2)} on which SL_2(Z) acts by index permutation, expands
//! the slashed combination with exact cyclotomic constants, and multiplies
//! factors back together. The Weisinger/Cohen closed formulas are not
//! transcribed; this lattice route is the single source of truth and is
//! validated against the series at infinity by a round-trip oracle.

mod expand;
mod gseries;
mod matrices;

pub use expand::{
    al_eigenvalue, al_image, al_matrix, expand_representation, expansion_at_cusp,
    expansion_at_cusp_label, slash_by_matrix, CuspExpansion,
};
pub use gseries::{
    decompose_e2_difference, decompose_to_gseries, GSeriesCombination, GSeriesIndex,
};
pub use matrices::{IntegralMatrix, UnimodularMatrix};

/// Width of the cusp a/c on Gamma_0(N): w = N / gcd(c^2, N).
pub fn cusp_width(level: u64, c: u64) -> u64 {
    let c = c % level.max(1);
    level / crate::arith::gcd(c.wrapping_mul(c), level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(cusp_width(49, 7), 1);
        assert_eq!(cusp_width(36, 1), 36); // cusp 0
        assert_eq!(cusp_width(36, 36), 1); // infinity-equivalent
        assert_eq!(cusp_width(49, 1), 49);
        assert_eq!(cusp_width(32, 8), 1);
        assert_eq!(cusp_width(243, 3), 27);
    }
}

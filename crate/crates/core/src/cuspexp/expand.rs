//! Assembly of slashed expansions: cusp expansions of represented forms,
//! Atkin-Lehner images and eigenvalues.
//!
//! Everything reduces to one engine: slash a product representation by an
//! integral matrix M of positive determinant. Each Eisenstein factor
//! E|B_delta picks up the combined matrix diag(delta,1) M, which is
//! factored as gamma' * (a', b'; 0, d') with gamma' in SL_2(Z); gamma'
//! permutes lattice indices and the triangular part acts on a width-L
//! expansion by index scaling n -> n a', the root-of-unity twist
//! zeta_{L d'}^{n b'}, and the exact scalar det^{l/2} / d'^l.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{self, lcm};
use crate::eisenstein::{EisBasisElement, EisLabel};
use crate::error::{Error, Result};
use crate::exactmath::{CyclotomicNumber, Rational};
use crate::qexp::{b_scalar, sturm_bound, FourierExpansion};
use crate::reprsolver::ProductRepresentation;

use super::gseries::{decompose_e2_difference, decompose_to_gseries, GSeriesCombination};
use super::matrices::{IntegralMatrix, UnimodularMatrix};
use super::cusp_width;

/// A Fourier expansion at a cusp, together with the matrix that produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspExpansion {
    /// The cusp gamma * infinity as "a/c" (or "oo" for infinity).
    pub cusp: String,
    pub gamma: [i64; 4],
    /// Expansion in q_w with the literal width w = N / gcd(c^2, N).
    pub expansion: FourierExpansion,
    /// Smallest width w' | w actually needed by the computed coefficients.
    pub minimal_width: u64,
}

/// Slash one decomposed Eisenstein factor by an integral matrix, returning
/// a width L0*d' expansion with coefficients of q^0..q^prec.
fn slashed_combination(
    comb0: &GSeriesCombination,
    m_total: &IntegralMatrix,
    prec: usize,
) -> Result<FourierExpansion> {
    let l = comb0.weight;
    let det = m_total.det() as u64;
    let (gamma, tri) = m_total.hnf_factor();
    let comb = comb0.slash(&gamma);
    let inner_prec = prec / tri.a as usize;
    let inner = comb.expansion(inner_prec)?;
    let width = comb0.level * tri.d;
    // Scalar det^{l/2} / d'^l.
    let scalar = b_scalar(l, det).scale(&Rational::new(
        BigInt::one(),
        BigInt::from(tri.d).pow(l as u32),
    ));
    let field = lcm(lcm(inner.field_order(), width), scalar.order());
    let mut coeffs = vec![CyclotomicNumber::zero(field); prec + 1];
    for (n, c) in inner.coeffs().iter().enumerate() {
        let idx = n * tri.a as usize;
        if idx > prec {
            break;
        }
        if c.is_zero() {
            continue;
        }
        let twist =
            CyclotomicNumber::root_of_unity(width, ((n as u64 * tri.b) % width) as i64);
        coeffs[idx] = c.mul(&twist).mul(&scalar);
    }
    Ok(FourierExpansion::new(l, width, field, coeffs))
}

/// Decompositions for the factors of one representation term.
enum FactorKind {
    Label(EisLabel),
    E2Diff(u64),
}

impl FactorKind {
    fn combination(&self) -> Result<GSeriesCombination> {
        match self {
            FactorKind::Label(label) => decompose_to_gseries(&EisLabel { d: 1, ..label.clone() }),
            FactorKind::E2Diff(d) => Ok(decompose_e2_difference(*d)),
        }
    }

    fn lift(&self) -> u64 {
        match self {
            FactorKind::Label(label) => label.d,
            FactorKind::E2Diff(_) => 1,
        }
    }
}

/// Slash a whole representation by an integral matrix and re-express the
/// result in the designated output width (verifying divisibility).
pub fn slash_by_matrix(
    rep: &ProductRepresentation,
    matrix: &IntegralMatrix,
    b_out: usize,
    out_width: u64,
) -> Result<FourierExpansion> {
    let needed = sturm_bound(rep.level, rep.weight);
    if rep.verified_to < needed {
        return Err(Error::UnverifiedRepresentation);
    }
    // Collect (coefficient, factor list) per term.
    let mut terms: Vec<(CyclotomicNumber, Vec<FactorKind>)> = Vec::new();
    for (coeff, quint) in &rep.terms {
        let (l1, l2) = quint.factor_labels();
        terms.push((coeff.clone(), vec![FactorKind::Label(l1), FactorKind::Label(l2)]));
    }
    let basis = crate::eisenstein::eisenstein_basis_labels(rep.level, rep.weight)?;
    for (coeff, idx) in &rep.eis_terms {
        let kind = match &basis[*idx] {
            EisBasisElement::Pair { phi, d } => FactorKind::Label(
                EisLabel::new(phi.clone(), phi.conjugate(), rep.weight, *d).expect("basis label"),
            ),
            EisBasisElement::E2Difference { d } => FactorKind::E2Diff(*d),
        };
        terms.push((coeff.clone(), vec![kind]));
    }
    if terms.is_empty() {
        return Ok(FourierExpansion::zero(rep.weight, out_width, 1, b_out));
    }

    let mut expanded: Vec<(CyclotomicNumber, FourierExpansion)> = Vec::new();
    for (coeff, factors) in &terms {
        let mut parts: Vec<FourierExpansion> = Vec::new();
        // Widths first, so each factor is computed to exactly the precision
        // the final product needs.
        let mut widths: Vec<u64> = Vec::new();
        let mut combos: Vec<(GSeriesCombination, IntegralMatrix)> = Vec::new();
        for f in factors {
            let comb = f.combination()?;
            let m_total = IntegralMatrix::diag(f.lift()).mul(matrix);
            let (_, tri) = m_total.hnf_factor();
            widths.push(comb.level * tri.d);
            combos.push((comb, m_total));
        }
        for ((comb, m_total), w) in combos.iter().zip(&widths) {
            let prec = (b_out as u64 * w).div_ceil(out_width) as usize;
            parts.push(slashed_combination(comb, m_total, prec)?);
        }
        let product = match parts.len() {
            1 => parts.pop().unwrap(),
            2 => parts[0].multiply(&parts[1]),
            _ => unreachable!(),
        };
        expanded.push((coeff.clone(), product));
    }
    let refs: Vec<(CyclotomicNumber, &FourierExpansion)> =
        expanded.iter().map(|(c, f)| (c.clone(), f)).collect();
    let mut sum = FourierExpansion::linear_combine(&refs)?;
    if sum.width() % out_width != 0 {
        sum = sum.refine_width(lcm(sum.width(), out_width));
    }
    let out = sum.reindex_to_width(out_width)?;
    if out.precision() < b_out {
        return Err(Error::InsufficientPrecision { got: out.precision(), needed: b_out });
    }
    Ok(out.truncate(b_out))
}

/// Expansion of a represented form at the cusp gamma * infinity, emitted in
/// the literal width w = N / gcd(c^2, N).
pub fn expansion_at_cusp(
    rep: &ProductRepresentation,
    gamma: &UnimodularMatrix,
    b_out: usize,
) -> Result<CuspExpansion> {
    let w = cusp_width(rep.level, gamma.c.unsigned_abs());
    let expansion = slash_by_matrix(rep, &IntegralMatrix::from_unimodular(gamma), b_out, w)?;
    Ok(package_cusp(gamma, expansion))
}

/// Expansion of a single Eisenstein series E_l^{phi,psi}|B_d at a cusp of
/// Gamma_0(level).
pub fn expansion_at_cusp_label(
    label: &EisLabel,
    level: u64,
    gamma: &UnimodularMatrix,
    b_out: usize,
) -> Result<CuspExpansion> {
    let w = cusp_width(level, gamma.c.unsigned_abs());
    let comb = decompose_to_gseries(&EisLabel { d: 1, ..label.clone() })?;
    let m_total = IntegralMatrix::diag(label.d).mul(&IntegralMatrix::from_unimodular(gamma));
    let (_, tri) = m_total.hnf_factor();
    let width = comb.level * tri.d;
    let prec = (b_out as u64 * width).div_ceil(w) as usize;
    let mut f = slashed_combination(&comb, &m_total, prec)?;
    if f.width() % w != 0 {
        f = f.refine_width(lcm(f.width(), w));
    }
    let expansion = f.reindex_to_width(w)?.truncate(b_out);
    Ok(package_cusp(gamma, expansion))
}

fn package_cusp(gamma: &UnimodularMatrix, expansion: FourierExpansion) -> CuspExpansion {
    let (num, den) = gamma.cusp();
    let cusp = if den == 0 { "oo".to_string() } else { format!("{}/{}", num, den) };
    let minimal_width = expansion.minimal_width();
    CuspExpansion {
        cusp,
        gamma: [gamma.a, gamma.b, gamma.c, gamma.d],
        expansion,
        minimal_width,
    }
}

/// Integral Atkin-Lehner matrix W_S^N = (N_S x, y; N z, N_S w) with
/// y = 1 mod N_S, x = 1 mod N_{S-bar}, det = N_S.
///
/// Constructed as gamma * diag(N_S, 1) with gamma in SL_2(Z), which keeps
/// the slash machinery free of extra root-of-unity twists.
pub fn al_matrix(level: u64, s: &[u64]) -> Result<IntegralMatrix> {
    for &p in s {
        if !arith::is_prime(p) || level % p != 0 {
            return Err(Error::NotAPrimeDivisor(p));
        }
    }
    let ns = arith::s_part(level, s);
    let nbar = level / ns;
    // N_S u + N_bar v = 1, then gamma = (1, 1; -nbar v, ns u).
    let (g, u, v) = arith::ext_gcd(ns as i128, nbar as i128);
    assert!(g == 1);
    let gamma = UnimodularMatrix::new(1, 1, (-(v as i64)) * nbar as i64, ns as i64 * u as i64);
    Ok(IntegralMatrix::from_unimodular(&gamma).mul(&IntegralMatrix::diag(ns)))
}

/// Expansion of f | W_S^N at infinity (width 1) to precision B.
pub fn al_image(rep: &ProductRepresentation, s: &[u64], b_out: usize) -> Result<FourierExpansion> {
    let m = al_matrix(rep.level, s)?;
    slash_by_matrix(rep, &m, b_out, 1)
}

/// The scalar lambda with f | W_S^N = lambda f, where f is the represented
/// form (assumed an eigenform of W_S; proportionality is asserted across
/// all computed coefficients).
pub fn al_eigenvalue(
    rep: &ProductRepresentation,
    s: &[u64],
    b_out: usize,
) -> Result<CyclotomicNumber> {
    let needed = sturm_bound(rep.level, rep.weight);
    if b_out < needed {
        return Err(Error::InsufficientPrecision { got: b_out, needed });
    }
    let f = expand_representation(rep, b_out)?;
    let image = al_image(rep, s, b_out)?;
    let pivot = (0..=b_out)
        .find(|&n| !f.coeff(n).is_zero())
        .ok_or(Error::NotAnEigenform)?;
    let lambda = image.coeff(pivot).div(f.coeff(pivot))?;
    let scaled = f.scale(&lambda);
    let field = lcm(scaled.field_order(), image.field_order());
    if !scaled
        .embed_field(field)
        .unwrap()
        .agrees_with(&image.embed_field(field).unwrap(), b_out)
    {
        return Err(Error::NotAnEigenform);
    }
    Ok(lambda)
}

/// Re-expansion of a representation at infinity (width 1) to precision B,
/// by exact products of the series at infinity. Factor expansions are
/// cached per label within one call; terms multiply in parallel.
pub fn expand_representation(
    rep: &ProductRepresentation,
    b_out: usize,
) -> Result<FourierExpansion> {
    use rayon::prelude::*;
    let basis = crate::eisenstein::eisenstein_basis_labels(rep.level, rep.weight)?;
    // Pre-expand distinct factor labels sequentially (cheap), multiply in
    // parallel (dominant cost), then fold deterministically in term order.
    let mut cache: HashMap<String, FourierExpansion> = HashMap::new();
    let mut factor = |label: &EisLabel| -> Result<FourierExpansion> {
        let key = format!(
            "{}:{}:{}:{}:{}:{}",
            label.phi.modulus(),
            label.phi.index(),
            label.psi.modulus(),
            label.psi.index(),
            label.l,
            label.d
        );
        if let Some(f) = cache.get(&key) {
            return Ok(f.clone());
        }
        let base = b_out.div_ceil(label.d as usize);
        let f = crate::eisenstein::eis_expansion(label, base)?;
        cache.insert(key.clone(), f.clone());
        Ok(f)
    };
    let mut jobs: Vec<(CyclotomicNumber, Vec<FourierExpansion>)> = Vec::new();
    for (coeff, quint) in &rep.terms {
        let (l1, l2) = quint.factor_labels();
        jobs.push((coeff.clone(), vec![factor(&l1)?, factor(&l2)?]));
    }
    for (coeff, idx) in &rep.eis_terms {
        jobs.push((coeff.clone(), vec![basis[*idx].expansion(rep.weight, b_out)]));
    }
    if jobs.is_empty() {
        return Ok(FourierExpansion::zero(rep.weight, 1, 1, b_out));
    }
    let products: Vec<(CyclotomicNumber, FourierExpansion)> = jobs
        .into_par_iter()
        .map(|(coeff, parts)| {
            let f = match parts.len() {
                1 => parts.into_iter().next().unwrap(),
                2 => parts[0].multiply(&parts[1]),
                _ => unreachable!(),
            };
            (coeff, f.truncate(b_out))
        })
        .collect();
    let refs: Vec<(CyclotomicNumber, &FourierExpansion)> =
        products.iter().map(|(c, f)| (c.clone(), f)).collect();
    Ok(FourierExpansion::linear_combine(&refs)?.truncate(b_out))
}

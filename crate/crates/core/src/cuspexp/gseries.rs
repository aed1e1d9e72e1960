//! Lattice Eisenstein series G_l^{(v1,v2)} and their exact Fourier
//! expansions at s = 0.
//!
//! For a level L and weight l >= 1 define, via Hecke's trick at s = 0,
//!
//!   G_l^{(v1,v2)}(z) = sum_{(c,d) = (v1,v2) mod L, (c,d) != 0}
//!                          (cz + d)^{-l} |cz + d|^{-2s} |_{s=0}.
//!
//! SL_2(Z) acts on these by index permutation: G|gamma = G^{(v gamma)}.
//! Writing P_l = (-2pi i)^l / (L^l (l-1)!), the expansion is
//!
//!   G_l^{(v)}(z) = P_l * sum_{n>=0} g_n(v) q_L^n   (+ correction),
//!
//! with exact cyclotomic g_n given by the Lipschitz summation formula:
//! for n >= 1 the coefficient collects m^{l-1} zeta_L^{m v2} over
//! factorizations n = mc with c > 0, c = v1 or -v1 mod L (the second class
//! weighted by (-1)^l); the constant term comes from the Fourier expansion
//! of Bernoulli polynomials, plus the weight-one boundary value
//! 1/2 - {v1}/L. The only non-holomorphic correction occurs at l = 2 and
//! equals -pi/(L^2 y) per G-series, independent of v, so a combination is
//! holomorphic exactly when its weighted coefficient sum vanishes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::lcm;
use crate::characters::{bernoulli_polynomial_at, DirichletCharacter};
use crate::eisenstein::EisLabel;
use crate::error::{Error, Result};
use crate::exactmath::{rat, CyclotomicNumber, Rational};
use crate::qexp::FourierExpansion;

use super::matrices::UnimodularMatrix;

/// Index of one lattice slice: the residue pair (v1, v2) mod level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GSeriesIndex {
    pub v1: u64,
    pub v2: u64,
}

/// Symbolic prefactor (-2 pi i)^{pi_pow} * ((l-1)!)^{fact_pow} * algebraic.
///
/// The transcendental tokens must cancel against the expansion constants
/// P_l before any expansion is emitted; `resolve` errors otherwise.
#[derive(Clone, Debug)]
pub struct SymbolicScale {
    pub pi_pow: i64,
    pub fact_pow: i64,
    pub weight: i64,
    pub algebraic: CyclotomicNumber,
}

impl SymbolicScale {
    /// Combine with P_l = (-2 pi i)^l / (L^l (l-1)!) and return the exact
    /// algebraic total, or error if a transcendental token survives.
    fn resolve_with_p(&self, level: u64) -> Result<CyclotomicNumber> {
        let pi_pow = self.pi_pow + self.weight;
        let fact_pow = self.fact_pow - 1;
        if pi_pow != 0 || fact_pow != 0 {
            return Err(Error::Parse(format!(
                "residual transcendental token (-2 pi i)^{} ((l-1)!)^{}",
                pi_pow, fact_pow
            )));
        }
        let l_pow = Rational::new(BigInt::one(), BigInt::from(level).pow(self.weight as u32));
        Ok(self.algebraic.scale(&l_pow))
    }
}

/// Formal combination sum_v lambda_v G_l^{(v)} at one level, with a
/// symbolic normalizer.
#[derive(Clone, Debug)]
pub struct GSeriesCombination {
    pub weight: i64,
    pub level: u64,
    pub terms: Vec<(CyclotomicNumber, GSeriesIndex)>,
    pub normalizer: SymbolicScale,
}

impl GSeriesCombination {
    /// Right action v -> v * gamma on every term; coefficients unchanged.
    pub fn slash(&self, gamma: &UnimodularMatrix) -> Self {
        let level = self.level as i64;
        let terms = self
            .terms
            .iter()
            .map(|(lambda, v)| {
                let v1 = v.v1 as i64;
                let v2 = v.v2 as i64;
                let w1 = (v1 * gamma.a + v2 * gamma.c).rem_euclid(level) as u64;
                let w2 = (v1 * gamma.b + v2 * gamma.d).rem_euclid(level) as u64;
                (lambda.clone(), GSeriesIndex { v1: w1, v2: w2 })
            })
            .collect();
        GSeriesCombination {
            weight: self.weight,
            level: self.level,
            terms,
            normalizer: self.normalizer.clone(),
        }
    }

    /// Weighted coefficient sum controlling the l = 2 non-holomorphic
    /// correction: normalizer.algebraic * sum lambda_v / L^2. Zero for any
    /// combination that expands to a holomorphic form.
    pub fn correction_charge(&self) -> CyclotomicNumber {
        if self.weight != 2 {
            return CyclotomicNumber::zero(1);
        }
        let mut sum = CyclotomicNumber::zero(1);
        for (lambda, _) in &self.terms {
            sum = sum.add(lambda);
        }
        let scale = Rational::new(BigInt::one(), BigInt::from(self.level).pow(2));
        self.normalizer.algebraic.mul(&sum).scale(&scale)
    }

    /// Expand the combination to a width-L expansion with coefficients of
    /// q_L^0..q_L^prec. Errors if the symbolic normalizer does not cancel.
    ///
    /// The caller is responsible for the correction charge: a combination
    /// with nonzero charge expands to the holomorphic part only.
    pub fn expansion(&self, prec: usize) -> Result<FourierExpansion> {
        let scale = self.normalizer.resolve_with_p(self.level)?;
        let l = self.weight;
        let level = self.level;
        let mut field = lcm(scale.order(), level);
        for (lambda, _) in &self.terms {
            field = lcm(field, lambda.order());
        }
        // Bucket terms by v1 for the divisor loop.
        let mut buckets: Vec<Vec<(CyclotomicNumber, u64)>> = vec![Vec::new(); level as usize];
        for (lambda, v) in &self.terms {
            buckets[v.v1 as usize].push((lambda.clone(), v.v2));
        }
        let mut coeffs = vec![CyclotomicNumber::zero(field); prec + 1];

        // Constant term.
        let mut c0 = CyclotomicNumber::zero(field);
        for (lambda, v) in &self.terms {
            let g0 = constant_term(l, level, v);
            if !g0.is_zero() {
                c0 = c0.add(&lambda.mul(&g0));
            }
        }
        coeffs[0] = c0;

        // n >= 1: for each factorization n = m * c (c > 0) add
        // m^{l-1} zeta_L^{m v2} from the bucket at c mod L and
        // (-1)^l m^{l-1} zeta_L^{-m v2} from the bucket at -c mod L.
        let sign = if l % 2 == 0 { 1i64 } else { -1 };
        for c in 1..=prec as u64 {
            let cl = (c % level) as usize;
            let neg_cl = ((level - c % level) % level) as usize;
            let pos_empty = buckets[cl].is_empty();
            let neg_empty = buckets[neg_cl].is_empty();
            if pos_empty && neg_empty {
                continue;
            }
            let mut m = 1u64;
            while m * c <= prec as u64 {
                let n = (m * c) as usize;
                let mk = Rational::from(BigInt::from(m).pow(l as u32 - 1));
                if !pos_empty {
                    for (lambda, v2) in &buckets[cl] {
                        let z = CyclotomicNumber::root_of_unity(level, (m * v2 % level) as i64);
                        coeffs[n] = coeffs[n].add(&lambda.mul(&z).scale(&mk));
                    }
                }
                if !neg_empty {
                    for (lambda, v2) in &buckets[neg_cl] {
                        let z = CyclotomicNumber::root_of_unity(level, -((m * v2 % level) as i64));
                        let term = lambda.mul(&z).scale(&mk);
                        coeffs[n] = if sign == 1 {
                            coeffs[n].add(&term)
                        } else {
                            coeffs[n].sub(&term)
                        };
                    }
                }
                m += 1;
            }
        }
        for c in coeffs.iter_mut() {
            *c = scale.mul(c);
        }
        Ok(FourierExpansion::new(l, level, lcm(field, scale.order()), coeffs))
    }
}

/// Constant term g_0(v) of G_l^{(v)} in units of P_l.
///
/// For v1 = 0 mod L this is the Bernoulli-polynomial Fourier sum
/// (-1)^{l+1} (L^{l-1}/l) sum_j zeta_L^{-j v2} B~_l(j/L); at l = 1 the rows
/// with c != 0 contribute the extra boundary value 1/2 - {v1}/L.
fn constant_term(l: i64, level: u64, v: &GSeriesIndex) -> CyclotomicNumber {
    let mut out = CyclotomicNumber::zero(1);
    if v.v1 % level == 0 {
        let mut sum = CyclotomicNumber::zero(level);
        for j in 0..level {
            if l == 1 && j == 0 {
                continue; // B~_1(0) = 0 (midpoint of the sawtooth)
            }
            let x = Rational::new(BigInt::from(j), BigInt::from(level));
            let b = bernoulli_polynomial_at(l as u32, &x);
            if b.is_zero() {
                continue;
            }
            let z = CyclotomicNumber::root_of_unity(level, -((j * v.v2 % level) as i64));
            sum = sum.add(&z.scale(&b));
        }
        let sign = if l % 2 == 0 { -1 } else { 1 };
        let scale = Rational::new(
            BigInt::from(sign) * BigInt::from(level).pow(l as u32 - 1),
            BigInt::from(l),
        );
        out = out.add(&sum.scale(&scale));
    } else if l == 1 {
        let frac = Rational::new(BigInt::from(v.v1 % level), BigInt::from(level));
        out = out.add(&CyclotomicNumber::from_rational(rat(1, 2) - frac));
    }
    out
}

/// Decompose E_l^{phi,psi} (no lift) into lattice series at level
/// lcm(M*M1, M2), where M = M1*M2.
///
/// The sum over (c, d) with phi(c) conj(psi)(d) / (Mcz + d)^l groups pairs
/// (C, D) = (Mc, d) by residues mod the level; the coefficient at
/// (v1, v2) is phi(v1/M) conj(psi)(v2) when M | v1 and 0 otherwise. The
/// normalizer carries (l-1)! M2^l / ((-2 pi i)^l G(conj psi)) symbolically.
pub fn decompose_to_gseries(label: &EisLabel) -> Result<GSeriesCombination> {
    label.validate()?;
    let m1 = label.phi.modulus();
    let m2 = label.psi.modulus();
    let m = m1 * m2;
    let level = lcm(m * m1, m2.max(1));
    let psi_bar = label.psi.conjugate();
    let inv_gauss = psi_bar.gauss_sum().inv().expect("Gauss sum of a primitive character is nonzero");
    let m2_pow = Rational::from(BigInt::from(m2).pow(label.l as u32));
    let normalizer = SymbolicScale {
        pi_pow: -label.l,
        fact_pow: 1,
        weight: label.l,
        algebraic: inv_gauss.scale(&m2_pow),
    };
    let mut terms = Vec::new();
    for v1 in (0..level).step_by(m as usize) {
        let phi_v = label.phi.evaluate((v1 / m) as i64);
        if phi_v.is_zero() {
            continue;
        }
        for v2 in 0..level {
            let psi_v = psi_bar.evaluate(v2 as i64);
            if psi_v.is_zero() {
                continue;
            }
            terms.push((phi_v.mul(&psi_v), GSeriesIndex { v1, v2 }));
        }
    }
    let comb = GSeriesCombination { weight: label.l, level, terms, normalizer };
    if label.l == 2 {
        assert!(
            comb.correction_charge().is_zero(),
            "non-holomorphic correction must cancel for a valid label"
        );
    }
    Ok(comb)
}

/// Decompose the weight-2 difference E_2(z) - d E_2(dz) = E_2 - E_2|B_d
/// into lattice series at level d. The two quasi-modular pieces carry
/// opposite correction charges, so the result is holomorphic; this is
/// asserted exactly.
pub fn decompose_e2_difference(d: u64) -> GSeriesCombination {
    assert!(d > 1);
    // E_2(z): all residue pairs mod d, coefficient 1.
    // E_2|B_d = d E_2(dz): pairs with d | C, coefficient d (from the lift
    // scalar d^{2/2} = d... the lattice for E_2(dz) at level d keeps
    // (0, v2) slices only, scaled by 1; B_d contributes the factor d).
    let normalizer = SymbolicScale {
        pi_pow: -2,
        fact_pow: 1,
        weight: 2,
        algebraic: CyclotomicNumber::from_int(1),
    };
    let mut terms = Vec::new();
    for v1 in 0..d {
        for v2 in 0..d {
            let mut lambda = Rational::one();
            if v1 == 0 {
                // E_2(dz) collects exactly the slices with d | C; the B_d
                // scalar d^{2/2} = d weights them.
                lambda -= Rational::from(BigInt::from(d));
            }
            if !lambda.is_zero() {
                terms.push((
                    CyclotomicNumber::from_rational(lambda),
                    GSeriesIndex { v1, v2 },
                ));
            }
        }
    }
    let comb = GSeriesCombination { weight: 2, level: d, terms, normalizer };
    assert!(comb.correction_charge().is_zero(), "E_2 difference must be holomorphic");
    comb
}

/// Round-trip check helper: expand a label through the lattice route at the
/// identity and compare against the series at infinity.
pub fn roundtrip_matches(label: &EisLabel, prec: usize) -> Result<bool> {
    let comb = decompose_to_gseries(label)?;
    let lattice = comb.expansion(prec * comb.level as usize)?;
    let direct = crate::eisenstein::eis_expansion(&EisLabel { d: 1, ..label.clone() }, prec)?;
    let reindexed = lattice.reindex_to_width(1)?;
    let field = lcm(reindexed.field_order(), direct.field_order());
    Ok(reindexed
        .embed_field(field)
        .unwrap()
        .agrees_with(&direct.embed_field(field).unwrap(), prec))
}

/// Gauss-sum cross-check used by tests: for a character chi mod L,
/// sum_{v2} chi(v2) zeta_L^{t v2}.
#[allow(dead_code)]
pub(crate) fn twisted_char_sum(chi: &DirichletCharacter, t: u64) -> CyclotomicNumber {
    let level = chi.modulus();
    let mut sum = CyclotomicNumber::zero(lcm(level, chi.order()));
    for v2 in 0..level {
        let c = chi.evaluate(v2 as i64);
        if !c.is_zero() {
            sum = sum.add(&c.mul(&CyclotomicNumber::root_of_unity(level, (t * v2 % level) as i64)));
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::chi4;
    use crate::eisenstein::eis_expansion;

    fn triv() -> DirichletCharacter {
        DirichletCharacter::trivial()
    }

    #[test]
    fn equivariance_under_minus_identity() {
        // G_l^{(v)} = (-1)^l G_l^{(-v)}: check coefficientwise for l = 1, 2, 3.
        for l in 1..=3i64 {
            let level = 5u64;
            let v = GSeriesIndex { v1: 2, v2: 3 };
            let minus_v = GSeriesIndex { v1: 3, v2: 2 };
            let normalizer = SymbolicScale {
                pi_pow: -l,
                fact_pow: 1,
                weight: l,
                algebraic: CyclotomicNumber::from_int(1),
            };
            let a = GSeriesCombination {
                weight: l,
                level,
                terms: vec![(CyclotomicNumber::from_int(1), v)],
                normalizer: normalizer.clone(),
            };
            let b = GSeriesCombination {
                weight: l,
                level,
                terms: vec![(CyclotomicNumber::from_int(if l % 2 == 0 { 1 } else { -1 }), minus_v)],
                normalizer,
            };
            let fa = a.expansion(20).unwrap();
            let fb = b.expansion(20).unwrap();
            assert!(fa.agrees_with(&fb, 20), "l = {}", l);
        }
    }

    #[test]
    fn full_sum_is_level_one_eisenstein() {
        // Sum over all v of G_l^{(v)} at level 3 equals the level-1 lattice
        // sum; compare against E_l^{1,1} for l = 4.
        let level = 3u64;
        let mut terms = Vec::new();
        for v1 in 0..level {
            for v2 in 0..level {
                terms.push((CyclotomicNumber::from_int(1), GSeriesIndex { v1, v2 }));
            }
        }
        let comb = GSeriesCombination {
            weight: 4,
            level,
            terms,
            normalizer: SymbolicScale {
                pi_pow: -4,
                fact_pow: 1,
                weight: 4,
                algebraic: CyclotomicNumber::from_int(1),
            },
        };
        let f = comb.expansion(15).unwrap().reindex_to_width(1).unwrap();
        let e4 = eis_expansion(&EisLabel::new(triv(), triv(), 4, 1).unwrap(), 5).unwrap();
        assert!(f.agrees_with(&e4, 5));
    }

    #[test]
    fn roundtrip_small_labels() {
        let quad5 =
            DirichletCharacter::enumerate_primitive(5, crate::characters::Parity::Even)[0].clone();
        let odd9 =
            DirichletCharacter::enumerate_primitive(9, crate::characters::Parity::Odd)[0].clone();
        let labels = vec![
            (EisLabel::new(triv(), triv(), 4, 1).unwrap(), 6),
            (EisLabel::new(triv(), triv(), 6, 1).unwrap(), 6),
            (EisLabel::new(triv(), chi4(), 1, 1).unwrap(), 8),
            (EisLabel::new(chi4(), triv(), 1, 1).unwrap(), 6),
            (EisLabel::new(triv(), chi4(), 3, 1).unwrap(), 8),
            (EisLabel::new(chi4(), chi4(), 2, 1).unwrap(), 4),
            (EisLabel::new(triv(), quad5, 2, 1).unwrap(), 8),
            (EisLabel::new(odd9, triv(), 1, 1).unwrap(), 3),
        ];
        for (label, prec) in labels {
            assert!(roundtrip_matches(&label, prec).unwrap(), "label {:?}", label);
        }
    }

    #[test]
    fn e2_difference_matches_series() {
        for d in [2u64, 3, 5] {
            let comb = decompose_e2_difference(d);
            let f = comb.expansion(6 * d as usize).unwrap().reindex_to_width(1).unwrap();
            let direct = crate::eisenstein::EisBasisElement::E2Difference { d }.expansion(2, 6);
            let field = lcm(f.field_order(), direct.field_order());
            assert!(f
                .embed_field(field)
                .unwrap()
                .agrees_with(&direct.embed_field(field).unwrap(), 6));
        }
    }

    #[test]
    fn slash_composition() {
        let label = EisLabel::new(triv(), chi4(), 1, 1).unwrap();
        let comb = decompose_to_gseries(&label).unwrap();
        let g1 = UnimodularMatrix::new(1, 1, 1, 2);
        let g2 = UnimodularMatrix::new(2, 1, 1, 1);
        let a = comb.slash(&g1).slash(&g2);
        let b = comb.slash(&g1.mul(&g2));
        let fa = a.expansion(12).unwrap();
        let fb = b.expansion(12).unwrap();
        assert!(fa.agrees_with(&fb, 12));
    }
}

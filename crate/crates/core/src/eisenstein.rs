//! q-expansions at infinity of the character Eisenstein series
//! E_l^{phi,psi}, the imprimitive-character decomposition, and spanning
//! sets for the Eisenstein subspace of M_k(Gamma_0(N)).
//!
//! The normalization is fixed once and for all: for primitive phi mod M1
//! and psi mod M2 with phi*psi(-1) = (-1)^l,
//!
//!   E_l^{phi,psi} = e_l^{phi,psi} + 2 sum_{n>=1} sigma_{l-1,phi,psi}(n) q^n,
//!
//! where sigma_{l-1,phi,psi}(n) = sum_{d|n} phi(n/d) psi(d) d^{l-1} and the
//! constant term is L(psi, 1-l) when M1 = 1, L(phi, 0) when M2 = 1 and
//! l = 1, and 0 otherwise. The analytic lattice normalization lives in
//! `cuspexp` and is reconciled there by a round-trip oracle.

use num_bigint::BigInt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, lcm};
use crate::characters::{DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::exactmath::{rat, CyclotomicNumber, Rational};
use crate::qexp::FourierExpansion;

/// Label of an Eisenstein series E_l^{phi,psi} | B_d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisLabel {
    pub phi: DirichletCharacter,
    pub psi: DirichletCharacter,
    pub l: i64,
    pub d: u64,
}

impl EisLabel {
    pub fn new(phi: DirichletCharacter, psi: DirichletCharacter, l: i64, d: u64) -> Result<Self> {
        let label = EisLabel { phi, psi, l, d };
        label.validate()?;
        Ok(label)
    }

    pub fn validate(&self) -> Result<()> {
        if self.l < 1 {
            return Err(Error::InvalidWeight(self.l));
        }
        if !self.phi.is_primitive() {
            return Err(Error::NotPrimitive(self.phi.modulus()));
        }
        if !self.psi.is_primitive() {
            return Err(Error::NotPrimitive(self.psi.modulus()));
        }
        if self.phi.parity() * self.psi.parity() != if self.l % 2 == 0 { 1 } else { -1 } {
            return Err(Error::ParityMismatch(self.l));
        }
        if self.phi.is_trivial() && self.psi.is_trivial() && self.l == 2 {
            return Err(Error::ExcludedLabel(2));
        }
        assert!(self.d >= 1);
        Ok(())
    }

    /// M = M1 * M2, the level of the un-lifted series.
    pub fn base_level(&self) -> u64 {
        self.phi.modulus() * self.psi.modulus()
    }

    /// Cyclotomic order of the coefficient field at infinity.
    pub fn field_order(&self) -> u64 {
        lcm(self.phi.order().max(1), self.psi.order().max(1))
    }
}

/// sigma_{l-1,phi,psi}(n) = sum_{d|n} phi(n/d) psi(d) d^{l-1}.
pub fn sigma_divisor(
    n: u64,
    phi: &DirichletCharacter,
    psi: &DirichletCharacter,
    l: i64,
) -> CyclotomicNumber {
    assert!(n >= 1 && l >= 1);
    let field = lcm(phi.order().max(1), psi.order().max(1));
    let mut sum = CyclotomicNumber::zero(field);
    for d in arith::divisors(n) {
        let a = psi.evaluate(d as i64);
        if a.is_zero() {
            continue;
        }
        let b = phi.evaluate((n / d) as i64);
        if b.is_zero() {
            continue;
        }
        let dk = Rational::from(BigInt::from(d)).pow(l as i32 - 1);
        sum = sum.add(&a.mul(&b).scale(&dk));
    }
    sum
}

/// Constant term e_l^{phi,psi} of the primitive-pair series.
pub fn eis_constant_term(label: &EisLabel) -> CyclotomicNumber {
    if label.phi.modulus() == 1 {
        label.psi.l_value_nonpositive(label.l as u32).expect("psi is primitive")
    } else if label.psi.modulus() == 1 && label.l == 1 {
        label.phi.l_value_nonpositive(1).expect("phi is primitive")
    } else {
        CyclotomicNumber::zero(label.field_order())
    }
}

/// Width-1 expansion of E_l^{phi,psi} | B_d to precision B (before the lift;
/// precision after a lift d > 1 is B*d).
pub fn eis_expansion(label: &EisLabel, b: usize) -> Result<FourierExpansion> {
    label.validate()?;
    let field = label.field_order();
    let mut coeffs = vec![CyclotomicNumber::zero(field); b + 1];
    coeffs[0] = eis_constant_term(label).embed(field).unwrap();
    // Sieve over d then multiples: a[m*d] += phi(m) psi(d) d^{l-1}.
    for d in 1..=b as u64 {
        let psi_d = label.psi.evaluate(d as i64);
        if psi_d.is_zero() {
            continue;
        }
        let dk = Rational::from(BigInt::from(d)).pow(label.l as i32 - 1);
        let t = psi_d.scale(&dk);
        for m in 1..=(b as u64 / d) {
            let phi_m = label.phi.evaluate(m as i64);
            if phi_m.is_zero() {
                continue;
            }
            let idx = (m * d) as usize;
            coeffs[idx] = coeffs[idx].add(&t.mul(&phi_m));
        }
    }
    for c in coeffs.iter_mut().skip(1) {
        *c = c.scale(&rat(2, 1));
    }
    let f = FourierExpansion::new(label.l, 1, field, coeffs);
    Ok(if label.d > 1 { f.apply_b(label.d) } else { f })
}

/// Index-stretch q^n -> q^{en} without the B_e scalar (internal helper).
fn stretch(f: &FourierExpansion, e: u64) -> FourierExpansion {
    if e == 1 {
        return f.clone();
    }
    let b = f.precision() * e as usize;
    let mut coeffs = vec![CyclotomicNumber::zero(f.field_order()); b + 1];
    for (n, c) in f.coeffs().iter().enumerate() {
        coeffs[n * e as usize] = c.clone();
    }
    FourierExpansion::new(f.weight(), f.width(), f.field_order(), coeffs)
}

/// The expansion of E_l^{1, conj(alpha_N)} where alpha_N is alpha induced
/// to modulus N: the Moebius combination
///
///   sum_{e | N/N_M squarefree} mu(e) conj(alpha)(e) e^{l-1}
///       * stretch_e(E_l^{1, conj alpha}),
///
/// equivalently sum_e mu(e) conj(alpha)(e) e^{l/2-1} E_l^{1,conj alpha}|B_e.
/// Its non-constant coefficients are 2 sigma_{l-1,1,conj(alpha_N)}(n)
/// (checked against direct divisor sums by the module oracle test) and its
/// constant term is the lemma combination, i.e. the imprimitive L-value
/// L(conj(alpha_N), 1-l).
pub fn eis_imprimitive(
    alpha: &DirichletCharacter,
    level: u64,
    l: i64,
    b: usize,
) -> Result<FourierExpansion> {
    if !alpha.is_primitive() {
        return Err(Error::NotPrimitive(alpha.modulus()));
    }
    let m = alpha.modulus();
    assert!(level % m == 0, "conductor must divide the level");
    if alpha.parity() != if l % 2 == 0 { 1 } else { -1 } {
        return Err(Error::ParityMismatch(l));
    }
    let alpha_bar = alpha.conjugate();
    let base = EisLabel::new(DirichletCharacter::trivial(), alpha_bar.clone(), l, 1)?;
    let prim = eis_expansion(&base, b)?;
    let nm = arith::s_part(level, &arith::prime_divisors(m));
    let q = level / nm;
    let mut terms: Vec<(CyclotomicNumber, FourierExpansion)> = Vec::new();
    for e in arith::divisors(q) {
        let mu = arith::moebius(e);
        if mu == 0 {
            continue;
        }
        let chi_e = alpha_bar.evaluate(e as i64);
        if chi_e.is_zero() {
            continue;
        }
        let scale = Rational::from(BigInt::from(e)).pow(l as i32 - 1)
            * Rational::from(BigInt::from(mu));
        terms.push((chi_e.scale(&scale), stretch(&prim, e)));
    }
    let refs: Vec<(CyclotomicNumber, &FourierExpansion)> =
        terms.iter().map(|(c, f)| (c.clone(), f)).collect();
    FourierExpansion::linear_combine(&refs)
}

/// The raw quasi-modular weight-2 series -1/12 + 2 sum sigma_1(n) q^n.
///
/// Not itself a modular form; only the differences e2 - d * stretch_d(e2)
/// below are, so this stays crate-internal.
pub(crate) fn e2_raw(b: usize) -> FourierExpansion {
    let mut coeffs = vec![CyclotomicNumber::zero(1); b + 1];
    coeffs[0] = CyclotomicNumber::from_rational(rat(-1, 12));
    for d in 1..=b as u64 {
        for m in 1..=(b as u64 / d) {
            let idx = (m * d) as usize;
            coeffs[idx] = coeffs[idx].add(&CyclotomicNumber::from_rational(rat(2 * d as i64, 1)));
        }
    }
    FourierExpansion::new(2, 1, 1, coeffs)
}

/// One element of the Eisenstein spanning set for M_k(Gamma_0(N)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EisBasisElement {
    /// E_k^{phi, conj phi} | B_d with phi primitive mod M1 and M1^2 d | N.
    Pair { phi: DirichletCharacter, d: u64 },
    /// Weight-2 quasi-modular difference E_2(z) - d E_2(dz), d | N, d > 1.
    E2Difference { d: u64 },
}

impl EisBasisElement {
    pub fn expansion(&self, weight: i64, b: usize) -> FourierExpansion {
        match self {
            EisBasisElement::Pair { phi, d } => {
                let label =
                    EisLabel::new(phi.clone(), phi.conjugate(), weight, *d).expect("valid pair");
                eis_expansion(&label, b).unwrap()
            }
            EisBasisElement::E2Difference { d } => {
                assert!(weight == 2);
                let e2 = e2_raw(b);
                let scaled = stretch(&e2, *d)
                    .scale_rat(&Rational::from(BigInt::from(*d)));
                e2.sub(&scaled).unwrap().truncate(b)
            }
        }
    }
}

/// Deterministic descriptors for the Eisenstein spanning set of the
/// trivial-nebentypus space at (N, k).
pub fn eisenstein_basis_labels(level: u64, weight: i64) -> Result<Vec<EisBasisElement>> {
    if weight % 2 != 0 {
        return Err(Error::OddWeight(weight));
    }
    assert!(weight >= 2);
    let mut out = Vec::new();
    if weight == 2 {
        for d in arith::divisors(level) {
            if d > 1 {
                out.push(EisBasisElement::E2Difference { d });
            }
        }
    }
    for m1 in arith::divisors(level) {
        if (m1 * m1) > level || level % (m1 * m1) != 0 {
            continue;
        }
        for phi in DirichletCharacter::enumerate_primitive(m1, Parity::Any) {
            if m1 == 1 && weight == 2 {
                continue; // trivial pair at weight 2 is excluded
            }
            for d in arith::divisors(level / (m1 * m1)) {
                out.push(EisBasisElement::Pair { phi: phi.clone(), d });
            }
        }
    }
    Ok(out)
}

/// Spanning set of the Eisenstein subspace, as width-1 expansions to
/// precision B.
pub fn eisenstein_space_basis(
    level: u64,
    weight: i64,
    b: usize,
) -> Result<Vec<FourierExpansion>> {
    Ok(eisenstein_basis_labels(level, weight)?
        .into_iter()
        .map(|e| e.expansion(weight, b).truncate(b))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::chi4;
    use crate::exactmath::rat_int;

    fn triv() -> DirichletCharacter {
        DirichletCharacter::trivial()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(
            sigma_divisor(6, &triv(), &triv(), 4).to_rational().unwrap(),
            rat_int(252)
        );
        assert_eq!(
            sigma_divisor(5, &triv(), &chi4(), 1).to_rational().unwrap(),
            rat_int(2)
        );
        for n in [1u64] {
            assert_eq!(
                sigma_divisor(n, &chi4(), &chi4(), 3).to_rational().unwrap(),
                rat_int(1)
            );
        }
    }

    #[test]
    fn e4_expansion() {
        let label = EisLabel::new(triv(), triv(), 4, 1).unwrap();
        let f = eis_expansion(&label, 3).unwrap();
        assert_eq!(f.coeff(0).to_rational().unwrap(), rat(1, 120));
        assert_eq!(f.coeff(1).to_rational().unwrap(), rat_int(2));
        assert_eq!(f.coeff(2).to_rational().unwrap(), rat_int(18));
        assert_eq!(f.coeff(3).to_rational().unwrap(), rat_int(56));
    }

    #[test]
    fn e1_chi4_expansion() {
        let label = EisLabel::new(triv(), chi4(), 1, 1).unwrap();
        let f = eis_expansion(&label, 2).unwrap();
        assert_eq!(f.coeff(0).to_rational().unwrap(), rat(1, 2));
        assert_eq!(f.coeff(1).to_rational().unwrap(), rat_int(2));
        assert_eq!(f.coeff(2).to_rational().unwrap(), rat_int(2));
        // Mirror: E_1^{chi4, 1} has the M2 = 1, l = 1 constant term branch.
        let label = EisLabel::new(chi4(), triv(), 1, 1).unwrap();
        let g = eis_expansion(&label, 1).unwrap();
        assert_eq!(g.coeff(0).to_rational().unwrap(), rat(1, 2));
        assert_eq!(g.coeff(1).to_rational().unwrap(), rat_int(2));
    }

    #[test]
    fn excluded_labels() {
        assert!(EisLabel::new(triv(), triv(), 2, 1).is_err());
        assert!(EisLabel::new(triv(), chi4(), 2, 1).is_err()); // parity
    }

    #[test]
    fn imprimitive_collapses_when_primitive() {
        let f = eis_imprimitive(&chi4(), 4, 3, 12).unwrap();
        let label = EisLabel::new(triv(), chi4(), 3, 1).unwrap();
        let g = eis_expansion(&label, 12).unwrap();
        assert!(f.agrees_with(&g, 12));
    }

    #[test]
    fn imprimitive_sigma_oracle() {
        // Non-constant coefficients must match direct divisor sums with the
        // imprimitive character vanishing on gcd(n, N) > 1. This is the
        // module's defining oracle; run it on several (N, M, alpha, l).
        let cases: Vec<(u64, DirichletCharacter, i64)> = vec![
            (12, chi4(), 3),
            (24, chi4(), 1),
            (36, chi4(), 3),
            (20, DirichletCharacter::enumerate_primitive(5, Parity::Even)[0].clone(), 2),
        ];
        for (level, alpha, l) in cases {
            let b = 50;
            let f = eis_imprimitive(&alpha, level, l, b).unwrap();
            let alpha_n = alpha.conjugate().induce(level).unwrap();
            for n in 1..=b {
                let direct = sigma_divisor(n as u64, &triv(), &alpha_n, l)
                    .scale(&rat(2, 1));
                assert_eq!(
                    f.coeff(n),
                    &direct.embed(f.field_order()).unwrap(),
                    "mismatch at n = {} (N = {})",
                    n,
                    level
                );
            }
            // Constant term: imprimitive L-value = primitive L-value times
            // the removed Euler factors.
            let prim_l = alpha.conjugate().l_value_nonpositive(l as u32).unwrap();
            let nm = arith::s_part(level, &arith::prime_divisors(alpha.modulus()));
            let mut euler = CyclotomicNumber::one(1);
            for p in arith::prime_divisors(level / nm) {
                let factor = CyclotomicNumber::from_int(1).sub(
                    &alpha
                        .conjugate()
                        .evaluate(p as i64)
                        .scale(&Rational::from(BigInt::from(p).pow(l as u32 - 1))),
                );
                euler = euler.mul(&factor);
            }
            assert_eq!(f.coeff(0), &prim_l.mul(&euler).embed(f.field_order()).unwrap());
        }
    }

    #[test]
    fn basis_shapes() {
        let b1 = eisenstein_basis_labels(1, 4).unwrap();
        assert_eq!(b1.len(), 1);
        let b11 = eisenstein_basis_labels(11, 2).unwrap();
        assert_eq!(b11, vec![EisBasisElement::E2Difference { d: 11 }]);
        let b32 = eisenstein_basis_labels(32, 2).unwrap();
        let diffs = b32
            .iter()
            .filter(|e| matches!(e, EisBasisElement::E2Difference { .. }))
            .count();
        let pairs = b32
            .iter()
            .filter(|e| matches!(e, EisBasisElement::Pair { .. }))
            .count();
        assert_eq!(diffs, 5); // d in {2,4,8,16,32}
        assert_eq!(pairs, 2); // chi4 pairs with 16 d | 32: d in {1, 2}
        assert!(eisenstein_basis_labels(4, 3).is_err());
    }

    #[test]
    fn e2_difference_coefficients() {
        let e = EisBasisElement::E2Difference { d: 11 }.expansion(2, 3);
        // constant (1 - 11) * (-1/12) = 5/6; a_1 = 2 sigma_1(1) = 2.
        assert_eq!(e.coeff(0).to_rational().unwrap(), rat(5, 6));
        assert_eq!(e.coeff(1).to_rational().unwrap(), rat_int(2));
        assert_eq!(e.coeff(2).to_rational().unwrap(), rat_int(6));
    }
}

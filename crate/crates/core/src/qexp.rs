//! Truncated Fourier expansions with exact cyclotomic coefficients, and the
//! operator algebra acting on them (B_d, U_p, twists).
//!
//! An expansion of width w and precision B stores the coefficients of
//! q_w^0 .. q_w^B, all embedded in one cyclotomic field Q(zeta_m).
//! Expansions are immutable values; all operations are pure.
//!
//! Precision propagation rules: linear combinations take the minimum over
//! terms (after width refinement n -> n * (lcm/w), which scales precision by
//! the same factor), multiplication takes the minimum, B_d scales by d, U_p
//! divides by p (floor).


use serde::{Deserialize, Serialize};

use crate::arith::{self, lcm};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exactmath::{CyclotomicNumber, Rational};

/// A truncated expansion sum_{n=0}^{B} c_n q_w^n of a fixed weight.
#[derive(Clone, PartialEq, Eq)]
pub struct FourierExpansion {
    weight: i64,
    width: u64,
    field_order: u64,
    coeffs: Vec<CyclotomicNumber>,
}

impl FourierExpansion {
    /// Build from raw coefficients; every coefficient is embedded into
    /// Q(zeta_field_order).
    pub fn new(weight: i64, width: u64, field_order: u64, coeffs: Vec<CyclotomicNumber>) -> Self {
        assert!(width >= 1 && field_order >= 1 && !coeffs.is_empty());
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.embed(field_order).expect("coefficient embeds in the declared field"))
            .collect();
        FourierExpansion { weight, width, field_order, coeffs }
    }

    pub fn zero(weight: i64, width: u64, field_order: u64, precision: usize) -> Self {
        FourierExpansion {
            weight,
            width,
            field_order,
            coeffs: vec![CyclotomicNumber::zero(field_order); precision + 1],
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    pub fn field_order(&self) -> u64 {
        self.field_order
    }

    /// Largest index with a known coefficient.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &CyclotomicNumber {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[CyclotomicNumber] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Same value with coefficients embedded in a larger field.
    pub fn embed_field(&self, m: u64) -> Result<Self> {
        if m == self.field_order {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.embed(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(FourierExpansion { weight: self.weight, width: self.width, field_order: m, coeffs })
    }

    /// Reduce stored precision to B.
    pub fn truncate(&self, b: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(b + 1);
        assert!(!out.coeffs.is_empty());
        out
    }

    /// Rescale to a finer width: indices map n -> n * (to / width).
    pub fn refine_width(&self, to: u64) -> Self {
        assert!(to % self.width == 0, "refine_width target must be a multiple");
        let t = (to / self.width) as usize;
        if t == 1 {
            return self.clone();
        }
        let b = self.precision() * t;
        let mut coeffs = vec![CyclotomicNumber::zero(self.field_order); b + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * t] = c.clone();
        }
        FourierExpansion { weight: self.weight, width: to, field_order: self.field_order, coeffs }
    }

    /// Linear combination; all terms must share the weight. Widths are
    /// reconciled by common refinement to the lcm.
    pub fn linear_combine(terms: &[(CyclotomicNumber, &FourierExpansion)]) -> Result<Self> {
        assert!(!terms.is_empty());
        let weight = terms[0].1.weight;
        for (_, f) in terms {
            if f.weight != weight {
                return Err(Error::MixedWeights(weight, f.weight));
            }
        }
        let width = terms.iter().fold(1u64, |w, (_, f)| lcm(w, f.width));
        let mut field = terms.iter().fold(1u64, |m, (_, f)| lcm(m, f.field_order));
        for (c, _) in terms {
            field = lcm(field, c.order());
        }
        let refined: Vec<(CyclotomicNumber, FourierExpansion)> = terms
            .iter()
            .map(|(c, f)| (c.clone(), f.refine_width(width)))
            .collect();
        let b = refined.iter().map(|(_, f)| f.precision()).min().unwrap();
        let mut coeffs = vec![CyclotomicNumber::zero(field); b + 1];
        for (c, f) in &refined {
            if c.is_zero() {
                continue;
            }
            for (n, x) in f.coeffs.iter().take(b + 1).enumerate() {
                if !x.is_zero() {
                    coeffs[n] = coeffs[n].add(&c.mul(x));
                }
            }
        }
        Ok(FourierExpansion::new(weight, width, field, coeffs))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&[
            (CyclotomicNumber::from_int(1), self),
            (CyclotomicNumber::from_int(1), other),
        ])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(&[
            (CyclotomicNumber::from_int(1), self),
            (CyclotomicNumber::from_int(-1), other),
        ])
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let field = lcm(self.field_order, c.order());
        let coeffs = self.coeffs.iter().map(|x| c.mul(x)).collect();
        FourierExpansion::new(self.weight, self.width, field, coeffs)
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.scale(r)).collect();
        FourierExpansion {
            weight: self.weight,
            width: self.width,
            field_order: self.field_order,
            coeffs,
        }
    }

    /// Cauchy product truncated at min precision; weights add. Widths are
    /// reconciled by common refinement first.
    pub fn multiply(&self, other: &Self) -> Self {
        let width = lcm(self.width, other.width);
        let a = self.refine_width(width);
        let b = other.refine_width(width);
        let prec = a.precision().min(b.precision());
        let field = lcm(a.field_order, b.field_order);
        let fa = a.embed_field(field).unwrap();
        let fb = b.embed_field(field).unwrap();
        let mut coeffs = vec![CyclotomicNumber::zero(field); prec + 1];
        for (i, x) in fa.coeffs.iter().enumerate().take(prec + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in fb.coeffs.iter().enumerate().take(prec + 1 - i) {
                if !y.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&x.mul(y));
                }
            }
        }
        FourierExpansion { weight: self.weight + other.weight, width, field_order: field, coeffs }
    }

    /// Lift operator B_d: coefficient of q_w^n becomes d^{k/2} times the
    /// coefficient of q_w^{n/d}. For odd weight, d^{k/2} is the exact
    /// cyclotomic sqrt(d) times d^{(k-1)/2}. Precision becomes B*d.
    pub fn apply_b(&self, d: u64) -> Self {
        assert!(d >= 1);
        if d == 1 {
            return self.clone();
        }
        let scalar = b_scalar(self.weight, d);
        let field = lcm(self.field_order, scalar.order());
        let b = self.precision() * d as usize;
        let mut coeffs = vec![CyclotomicNumber::zero(field); b + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[n * d as usize] = scalar.mul(c);
            }
        }
        FourierExpansion { weight: self.weight, width: self.width, field_order: field, coeffs }
    }

    /// U_p on width-1 expansions: reads off a_{pn}. Precision floor(B/p).
    ///
    /// With the determinant-normalized slash, the p^{k/2-1} prefactor of the
    /// operator and the p^{-k/2} from the slash of (1, j; 0, p) collapse to
    /// 1/p, which the inner sum over j turns into plain index extraction;
    /// this was checked symbolically once and is pinned by tests.
    pub fn apply_u(&self, p: u64) -> Result<Self> {
        if self.width != 1 {
            return Err(Error::NonUnitWidth(self.width));
        }
        let b = self.precision() / p as usize;
        let coeffs = (0..=b).map(|n| self.coeffs[n * p as usize].clone()).collect();
        Ok(FourierExpansion {
            weight: self.weight,
            width: 1,
            field_order: self.field_order,
            coeffs,
        })
    }

    /// Twist by a character: multiply the n-th coefficient by alpha(n).
    pub fn twist(&self, alpha: &DirichletCharacter) -> Result<Self> {
        if self.width != 1 {
            return Err(Error::NonUnitWidth(self.width));
        }
        let field = lcm(self.field_order, alpha.order().max(1));
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.mul(&alpha.evaluate(n as i64)))
            .collect();
        Ok(FourierExpansion::new(self.weight, 1, field, coeffs))
    }

    /// Smallest width w' | width such that all nonzero coefficients sit at
    /// indices divisible by width/w'. Zero expansions report width 1.
    pub fn minimal_width(&self) -> u64 {
        let mut g = 0u64;
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = arith::gcd(g, n as u64);
            }
        }
        if g == 0 {
            return 1;
        }
        let t = arith::gcd(g, self.width);
        self.width / t
    }

    /// Re-express in a coarser width w' | width; errors if a nonzero
    /// coefficient sits off the sublattice.
    pub fn reindex_to_width(&self, to: u64) -> Result<Self> {
        assert!(self.width % to == 0);
        let t = (self.width / to) as usize;
        if t == 1 {
            return Ok(self.clone());
        }
        for (n, c) in self.coeffs.iter().enumerate() {
            if n % t != 0 && !c.is_zero() {
                return Err(Error::WidthMismatch { width: to });
            }
        }
        let b = self.precision() / t;
        let coeffs = (0..=b).map(|n| self.coeffs[n * t].clone()).collect();
        Ok(FourierExpansion { weight: self.weight, width: to, field_order: self.field_order, coeffs })
    }

    /// Coefficientwise equality through index B (both must know that much).
    pub fn agrees_with(&self, other: &Self, b: usize) -> bool {
        if self.width != other.width {
            return false;
        }
        if self.precision() < b || other.precision() < b {
            return false;
        }
        (0..=b).all(|n| self.coeffs[n] == other.coeffs[n])
    }
}

/// d^{k/2} as an exact cyclotomic number (rational for even k).
pub fn b_scalar(weight: i64, d: u64) -> CyclotomicNumber {
    assert!(weight >= 0);
    let k = weight as u32;
    let whole = Rational::from(num_bigint::BigInt::from(d)).pow((k / 2) as i32);
    let base = CyclotomicNumber::from_rational(whole);
    if k % 2 == 0 {
        base
    } else {
        base.mul(&CyclotomicNumber::sqrt_integer(d))
    }
}

/// Sturm bound floor(k * mu(N) / 12) with mu(N) = N prod_{p|N} (1 + 1/p).
///
/// Two forms in M_k(Gamma_0(N)) agreeing on q^0..q^B are equal.
pub fn sturm_bound(level: u64, weight: i64) -> usize {
    (weight as u64 * index_mu(level) / 12) as usize
}

/// Index mu(N) = [SL_2(Z) : Gamma_0(N)] = N prod_{p|N} (1 + 1/p).
pub fn index_mu(level: u64) -> u64 {
    let mut mu = level;
    for p in arith::prime_divisors(level) {
        mu = mu / p * (p + 1);
    }
    mu
}

impl std::fmt::Debug for FourierExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "q-expansion (weight {}, width {}, prec {}): ", self.weight, self.width, self.precision())?;
        let shown = self.coeffs.len().min(6);
        for (n, c) in self.coeffs.iter().take(shown).enumerate() {
            if !c.is_zero() {
                write!(f, "+ ({:?}) q^{} ", c, n)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    weight: i64,
    width: u64,
    field_order: u64,
    precision: usize,
    coeffs: Vec<CyclotomicNumber>,
}

impl Serialize for FourierExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            weight: self.weight,
            width: self.width,
            field_order: self.field_order,
            precision: self.precision(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FourierExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ExpansionJson::deserialize(d)?;
        if raw.coeffs.len() != raw.precision + 1 {
            return Err(D::Error::custom(format!(
                "precision {} does not match {} coefficients",
                raw.precision,
                raw.coeffs.len()
            )));
        }
        if raw.width == 0 || raw.field_order == 0 {
            return Err(D::Error::custom("width and field_order must be positive"));
        }
        for c in &raw.coeffs {
            if raw.field_order % c.order() != 0 {
                return Err(D::Error::custom("coefficient order does not divide field_order"));
            }
        }
        Ok(FourierExpansion::new(raw.weight, raw.width, raw.field_order, raw.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat_int, CyclotomicNumber as Cyc};

    fn series(weight: i64, ints: &[i64]) -> FourierExpansion {
        FourierExpansion::new(
            weight,
            1,
            1,
            ints.iter().map(|&n| Cyc::from_int(n)).collect(),
        )
    }

    #[test]
    fn linear_combine_cancels() {
        let f = series(2, &[0, 1, 3, 5]);
        let g = FourierExpansion::linear_combine(&[
            (Cyc::from_int(1), &f),
            (Cyc::from_int(-1), &f),
        ])
        .unwrap();
        assert!(g.is_zero());
        assert_eq!(g.precision(), 3);
    }

    #[test]
    fn width_refinement() {
        let f = series(2, &[1, 2]); // width 1
        let g = f.refine_width(2);
        let h = f.refine_width(3);
        let sum = g.add(&h).unwrap();
        assert_eq!(sum.width(), 6);
        // q^1 appears at index 6 in width 6.
        assert_eq!(sum.coeff(6), &Cyc::from_int(4));
        assert_eq!(sum.coeff(2), &Cyc::from_int(0));
    }

    #[test]
    fn cauchy_product() {
        let f = series(2, &[1, 2]);
        let g = f.multiply(&f);
        assert_eq!(g.weight(), 4);
        assert_eq!(g.precision(), 1);
        assert_eq!(g.coeff(1), &Cyc::from_int(4));
        // Commutativity.
        let a = series(4, &[3, -1, 2, 7]);
        let b = series(6, &[1, 5, -2, 1]);
        assert_eq!(a.multiply(&b), b.multiply(&a));
    }

    #[test]
    fn b_operator() {
        let f = series(2, &[0, 1, 0]);
        assert_eq!(f.apply_b(1), f);
        let g = f.apply_b(2);
        assert_eq!(g.precision(), 4);
        assert_eq!(g.coeff(2), &Cyc::from_int(2)); // 2^{2/2} = 2
        assert_eq!(g.coeff(1), &Cyc::from_int(0));
        // Composition law B_d B_e = B_{de}.
        let h1 = f.apply_b(2).apply_b(3);
        let h2 = f.apply_b(6);
        assert!(h1.agrees_with(&h2, h1.precision().min(h2.precision())));
    }

    #[test]
    fn odd_weight_b_scalar() {
        let s = b_scalar(3, 2); // 2^{3/2} = 2 sqrt(2)
        assert_eq!(s.mul(&s).to_rational().unwrap(), rat_int(8));
    }

    #[test]
    fn u_operator() {
        let f = series(2, &[0, 1, 3]);
        let g = f.apply_u(2).unwrap();
        assert_eq!(g.precision(), 1);
        assert_eq!(g.coeff(1), &Cyc::from_int(3));
        // U_p after B_p recovers f up to the exact p^{k/2} factor.
        let f = series(2, &[5, 1, 3, -2, 7]);
        let roundtrip = f.apply_b(2).apply_u(2).unwrap();
        let expect = f.scale(&b_scalar(2, 2));
        assert!(roundtrip.agrees_with(&expect, f.precision()));
    }

    #[test]
    fn twists() {
        let chi = crate::characters::chi4();
        let f = series(2, &[0, 1, 1]);
        let t = f.twist(&chi).unwrap();
        assert_eq!(t.coeff(1), &Cyc::from_int(1));
        assert!(t.coeff(2).is_zero());
        let triv = DirichletCharacter::trivial();
        assert!(f.twist(&triv).unwrap().agrees_with(&f, 2));
    }

    #[test]
    fn sturm_bounds() {
        assert_eq!(sturm_bound(1, 12), 1);
        assert_eq!(sturm_bound(11, 2), 2);
        assert_eq!(sturm_bound(32, 2), 8);
    }

    #[test]
    fn width_detection() {
        let mut coeffs = vec![Cyc::from_int(0); 13];
        coeffs[4] = Cyc::from_int(1);
        coeffs[8] = Cyc::from_int(5);
        let f = FourierExpansion::new(2, 4, 1, coeffs);
        assert_eq!(f.minimal_width(), 1);
        let g = f.reindex_to_width(1).unwrap();
        assert_eq!(g.coeff(1), &Cyc::from_int(1));
        assert_eq!(g.coeff(2), &Cyc::from_int(5));
    }

    #[test]
    fn json_round_trip() {
        let f = series(2, &[5, 1, 3]).scale(&Cyc::root_of_unity(8, 3));
        let s = serde_json::to_string(&f).unwrap();
        let g: FourierExpansion = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}

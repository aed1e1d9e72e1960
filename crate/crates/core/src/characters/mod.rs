//! Dirichlet characters: structure theory, Gauss sums, and the L-values at
//! non-positive integers that feed Eisenstein constant terms.
//!
//! A character mod N is stored by its images on a fixed generating set of
//! (Z/N)^x (CRT blocks per prime factor, deterministic generators), plus a
//! precomputed value table of length N. Characters are immutable after
//! construction, so evaluation is read-only and thread-safe.

mod bernoulli;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial_at};

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, euler_phi, gcd, lcm};
use crate::error::{Error, Result};
use crate::exactmath::{CyclotomicNumber, Rational};

/// Generators of (Z/N)^x as CRT blocks, deterministic.
///
/// Odd p^a contributes the smallest primitive root (lifted via CRT); 4
/// contributes 3; 2^a for a >= 3 contributes -1 and 5. Blocks are ordered
/// by ascending prime.
pub fn unit_group_generators(n: u64) -> Vec<(u64, u64)> {
    assert!(n >= 1);
    if n <= 2 {
        return Vec::new();
    }
    let mut gens = Vec::new();
    for (p, e) in arith::factor(n) {
        let pe = p.pow(e);
        let rest = n / pe;
        // CRT-lift x (mod pe) to (x mod pe, 1 mod rest).
        let lift = |x: u64| -> u64 {
            if rest == 1 {
                return x % n;
            }
            let m1 = arith::inv_mod(rest % pe, pe);
            let m2 = arith::inv_mod(pe % rest, rest);
            (arith::mul_mod(arith::mul_mod(x % pe, rest % n, n), m1 % n, n)
                + arith::mul_mod(arith::mul_mod(1, pe % n, n), m2 % n, n))
                % n
        };
        if p == 2 {
            match e {
                1 => {}
                2 => gens.push((lift(3), 2)),
                _ => {
                    gens.push((lift(pe - 1), 2));
                    gens.push((lift(5), pe / 4));
                }
            }
        } else {
            let g = arith::primitive_root(pe);
            gens.push((lift(g), euler_phi(pe)));
        }
    }
    gens
}

/// A Dirichlet character mod N.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    /// (generator, order of generator) blocks from `unit_group_generators`.
    gens: Vec<(u64, u64)>,
    /// chi(g_i) = zeta_{d_i}^{e_i}.
    exps: Vec<u64>,
    /// Order of the character in the dual group.
    order: u64,
    /// Value table of length N; zero at non-units. Entries have cyclotomic
    /// order equal to the character order.
    values: Vec<CyclotomicNumber>,
    /// chi(a) = zeta_order^{exps_table[a]}; None at non-units.
    exps_table: Vec<Option<u64>>,
}

impl DirichletCharacter {
    /// The trivial character (modulus 1).
    pub fn trivial() -> Self {
        Self::from_exponents(1, &[]).unwrap()
    }

    /// The principal character mod N.
    pub fn principal(n: u64) -> Self {
        let gens = unit_group_generators(n);
        Self::from_exponents(n, &vec![0; gens.len()]).unwrap()
    }

    /// Build from exponents on the canonical generators: chi(g_i) = zeta_{d_i}^{e_i}.
    pub fn from_exponents(modulus: u64, exps: &[u64]) -> Result<Self> {
        let gens = unit_group_generators(modulus);
        if exps.len() != gens.len() {
            return Err(Error::Parse(format!(
                "expected {} exponents for modulus {}, got {}",
                gens.len(),
                modulus,
                exps.len()
            )));
        }
        let exps: Vec<u64> = exps.iter().zip(&gens).map(|(&e, &(_, d))| e % d).collect();
        // Character order = lcm of the orders of the generator images.
        let mut order = 1u64;
        for (&e, &(_, d)) in exps.iter().zip(&gens) {
            if e != 0 {
                order = lcm(order, d / gcd(e, d));
            }
        }
        let mut values = vec![CyclotomicNumber::zero(order); modulus as usize];
        let mut exps_table = vec![None; modulus as usize];
        // Walk the group once: enumerate exponent tuples incrementally.
        let k = gens.len();
        let mut tuple = vec![0u64; k];
        let mut x: u64 = 1 % modulus;
        let mut t: u64 = 0; // chi(x) = zeta_order^t
        loop {
            values[x as usize] = CyclotomicNumber::root_of_unity(order, t as i64);
            exps_table[x as usize] = Some(t);
            // Increment the mixed-radix tuple.
            let mut i = 0;
            loop {
                if i == k {
                    // Wrapped around completely.
                    let table_ok = modulus == 1 || x == 1 % modulus;
                    assert!(table_ok);
                    let me =
                        DirichletCharacter { modulus, gens, exps, order, values, exps_table };
                    return Ok(me);
                }
                let (g, d) = gens[i];
                tuple[i] += 1;
                x = arith::mul_mod(x, g, modulus);
                t = (t + (order / d) * exps[i]) % order;
                if tuple[i] < d {
                    break;
                }
                // g^d = 1; the running x and t already wrapped with it.
                tuple[i] = 0;
                i += 1;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Generator images as (generator, cyclotomic value) pairs.
    pub fn generator_images(&self) -> Vec<(u64, CyclotomicNumber)> {
        self.gens
            .iter()
            .zip(&self.exps)
            .map(|(&(g, d), &e)| (g, CyclotomicNumber::root_of_unity(d, e as i64)))
            .collect()
    }

    /// chi(n), zero on non-units.
    pub fn evaluate(&self, n: i64) -> CyclotomicNumber {
        if self.modulus == 1 {
            return CyclotomicNumber::one(1);
        }
        let r = n.rem_euclid(self.modulus as i64) as u64;
        if gcd(r, self.modulus) != 1 {
            return CyclotomicNumber::zero(self.order);
        }
        self.values[r as usize].clone()
    }

    /// chi(n) as a power of zeta_order: Some(t) with chi(n) = zeta_order^t,
    /// or None on non-units. Cheap path for modular evaluation.
    pub fn evaluate_exponent(&self, n: i64) -> Option<u64> {
        if self.modulus == 1 {
            return Some(0);
        }
        let r = n.rem_euclid(self.modulus as i64) as u64;
        self.exps_table[r as usize]
    }

    /// chi(-1) as +1 or -1.
    pub fn parity(&self) -> i64 {
        if self.evaluate(-1) == CyclotomicNumber::from_int(1) {
            1
        } else {
            -1
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == -1
    }

    /// True for the trivial character of modulus 1.
    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    /// True when all generator images are 1 (principal character).
    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Pointwise complex conjugate (inverse character).
    pub fn conjugate(&self) -> Self {
        let exps: Vec<u64> =
            self.exps.iter().zip(&self.gens).map(|(&e, &(_, d))| (d - e) % d).collect();
        Self::from_exponents(self.modulus, &exps).unwrap()
    }

    /// Product of two characters, defined mod lcm of the moduli.
    pub fn product(&self, other: &Self) -> Self {
        let m = lcm(self.modulus.max(1), other.modulus.max(1));
        let a = self.induce(m).unwrap();
        let b = other.induce(m).unwrap();
        let exps: Vec<u64> =
            a.exps.iter().zip(&b.exps).zip(&a.gens).map(|((&x, &y), &(_, d))| (x + y) % d).collect();
        Self::from_exponents(m, &exps).unwrap()
    }

    /// chi^k.
    pub fn power(&self, k: u64) -> Self {
        let exps: Vec<u64> =
            self.exps.iter().zip(&self.gens).map(|(&e, &(_, d))| (e * (k % d)) % d).collect();
        Self::from_exponents(self.modulus, &exps).unwrap()
    }

    /// Conductor and the primitive character inducing chi.
    pub fn conductor_and_primitive(&self) -> (u64, DirichletCharacter) {
        for m in arith::divisors(self.modulus) {
            if self.factors_through(m) {
                return (m, self.restrict_to(m));
            }
        }
        unreachable!("chi factors through its own modulus")
    }

    pub fn conductor(&self) -> u64 {
        self.conductor_and_primitive().0
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    fn factors_through(&self, m: u64) -> bool {
        if self.modulus == 1 {
            return m == 1;
        }
        // chi factors through mod m iff chi(a) = 1 whenever a = 1 mod m and
        // gcd(a, N) = 1.
        let one = CyclotomicNumber::one(self.order);
        let mut a = 1 + m;
        while a <= self.modulus {
            if gcd(a % self.modulus, self.modulus) == 1
                && self.values[(a % self.modulus) as usize] != one
            {
                return false;
            }
            a += m;
        }
        true
    }

    fn restrict_to(&self, m: u64) -> DirichletCharacter {
        // Assumes chi factors through mod m. chi0(u) := chi(a) for any lift
        // a = u mod m with gcd(a, N) = 1.
        let gens = unit_group_generators(m);
        let mut exps = Vec::with_capacity(gens.len());
        for &(g, d) in &gens {
            let mut a = g;
            while gcd(a, self.modulus) != 1 {
                a += m;
            }
            let v = self.evaluate(a as i64);
            let mut found = None;
            for e in 0..d {
                let cand = CyclotomicNumber::root_of_unity(d, e as i64);
                if cand == v {
                    found = Some(e);
                    break;
                }
            }
            exps.push(found.expect("generator image order divides generator order"));
        }
        DirichletCharacter::from_exponents(m, &exps).unwrap()
    }

    /// Character mod N agreeing with chi on units of Z/N; modulus must divide N.
    pub fn induce(&self, n: u64) -> Result<DirichletCharacter> {
        if n % self.modulus != 0 {
            return Err(Error::ModulusDoesNotDivide { modulus: self.modulus, target: n });
        }
        if n == self.modulus {
            return Ok(self.clone());
        }
        let gens = unit_group_generators(n);
        let mut exps = Vec::with_capacity(gens.len());
        for &(g, d) in &gens {
            let v = self.evaluate(g as i64);
            let mut found = None;
            for e in 0..d {
                if CyclotomicNumber::root_of_unity(d, e as i64) == v {
                    found = Some(e);
                    break;
                }
            }
            exps.push(found.expect("image order divides generator order after induction"));
        }
        DirichletCharacter::from_exponents(n, &exps)
    }

    /// The S-part chi_S mod N_S, for a set S of primes dividing the modulus.
    pub fn prime_part(&self, s: &[u64]) -> Result<DirichletCharacter> {
        for &p in s {
            if !arith::is_prime(p) || self.modulus % p != 0 {
                return Err(Error::NotAPrimeDivisor(p));
            }
        }
        let ns = arith::s_part(self.modulus, s);
        let gens_s = unit_group_generators(ns);
        // Generator blocks are per prime: carry over exponents for primes in
        // S by matching each small generator with its CRT lift upstairs.
        let mut exps = Vec::with_capacity(gens_s.len());
        for &(g, d) in &gens_s {
            // Lift g to a unit mod N congruent to g mod ns and 1 mod N/ns.
            let rest = self.modulus / ns;
            let a = if rest == 1 {
                g
            } else {
                let m1 = arith::inv_mod(rest % ns, ns);
                let m2 = arith::inv_mod(ns % rest, rest);
                (arith::mul_mod(arith::mul_mod(g, rest % self.modulus, self.modulus), m1 % self.modulus, self.modulus)
                    + arith::mul_mod(ns % self.modulus, m2 % self.modulus, self.modulus))
                    % self.modulus
            };
            let v = self.evaluate(a as i64);
            let mut found = None;
            for e in 0..d {
                if CyclotomicNumber::root_of_unity(d, e as i64) == v {
                    found = Some(e);
                    break;
                }
            }
            exps.push(found.expect("prime part image has compatible order"));
        }
        DirichletCharacter::from_exponents(ns, &exps)
    }

    /// Gauss sum by definition: sum over a mod N of chi(a) zeta_N^a.
    pub fn gauss_sum(&self) -> CyclotomicNumber {
        let n = self.modulus;
        let field = lcm(n, self.order);
        let mut out = CyclotomicNumber::zero(field);
        for a in 1..=n {
            let v = self.evaluate(a as i64);
            if v.is_zero() {
                continue;
            }
            let term = v.mul(&CyclotomicNumber::root_of_unity(n, a as i64));
            out = out.add(&term);
        }
        out
    }

    /// Generalized Bernoulli number B_{k,chi} = M^{k-1} sum_{a=1..M} chi(a) B_k(a/M).
    ///
    /// The a = 1..M range (using B_k(1) rather than B_k(0) at a = M) makes
    /// B_1 for the trivial character +1/2, so L(trivial, 0) = -1/2 matches
    /// zeta(0). Sign conventions differ across sources; this one is fixed
    /// project-wide.
    pub fn generalized_bernoulli(&self, k: u32) -> CyclotomicNumber {
        assert!(k >= 1);
        let m = self.modulus;
        let mut sum = CyclotomicNumber::zero(self.order);
        for a in 1..=m {
            let v = self.evaluate(a as i64);
            if v.is_zero() {
                continue;
            }
            let x = Rational::new(a.into(), m.into());
            sum = sum.add(&v.scale(&bernoulli_polynomial_at(k, &x)));
        }
        let mk = Rational::from(num_bigint::BigInt::from(m)).pow(k as i32 - 1);
        sum.scale(&mk)
    }

    /// L(chi, 1-l) = -B_{l,chi}/l for primitive chi.
    pub fn l_value_nonpositive(&self, l: u32) -> Result<CyclotomicNumber> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive(self.modulus));
        }
        assert!(l >= 1);
        Ok(self
            .generalized_bernoulli(l)
            .scale(&Rational::new((-1).into(), l.into())))
    }

    /// All characters mod M in the canonical lexicographic order on
    /// exponent vectors.
    pub fn enumerate_all(m: u64) -> Vec<DirichletCharacter> {
        let gens = unit_group_generators(m);
        let mut out = Vec::new();
        let k = gens.len();
        let mut tuple = vec![0u64; k];
        loop {
            out.push(DirichletCharacter::from_exponents(m, &tuple).unwrap());
            // lexicographic increment, most significant coordinate first
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < gens[i].1 {
                    break;
                }
                tuple[i] = 0;
                if i == 0 {
                    return out;
                }
            }
        }
    }

    /// Primitive characters mod M with the requested parity, in enumeration
    /// order.
    pub fn enumerate_primitive(m: u64, parity: Parity) -> Vec<DirichletCharacter> {
        Self::enumerate_all(m)
            .into_iter()
            .filter(|chi| chi.is_primitive())
            .filter(|chi| match parity {
                Parity::Any => true,
                Parity::Even => chi.parity() == 1,
                Parity::Odd => chi.parity() == -1,
            })
            .collect()
    }

    /// Index of this character in `enumerate_all(modulus)`.
    pub fn index(&self) -> u64 {
        let mut idx = 0u64;
        for (&e, &(_, d)) in self.exps.iter().zip(&self.gens) {
            idx = idx * d + e;
        }
        idx
    }

    /// Character from its `enumerate_all` index.
    pub fn from_index(m: u64, index: u64) -> Result<DirichletCharacter> {
        let gens = unit_group_generators(m);
        let total: u64 = gens.iter().map(|&(_, d)| d).product();
        if index >= total.max(1) {
            return Err(Error::BadCharRef(format!("{}:{}", m, index)));
        }
        let mut exps = vec![0u64; gens.len()];
        let mut rem = index;
        for i in (0..gens.len()).rev() {
            exps[i] = rem % gens[i].1;
            rem /= gens[i].1;
        }
        DirichletCharacter::from_exponents(m, &exps)
    }
}

/// Parity filter for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.exps == other.exps
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi mod {} (index {})", self.modulus, self.index())
    }
}

/// Serialized form: {"modulus": N, "generator_images": [[g, cyclotomic], ...]}.
#[derive(Serialize, Deserialize)]
struct CharacterJson {
    modulus: u64,
    generator_images: Vec<(u64, CyclotomicNumber)>,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson { modulus: self.modulus, generator_images: self.generator_images() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CharacterJson::deserialize(d)?;
        let gens = unit_group_generators(raw.modulus);
        if raw.generator_images.len() != gens.len() {
            return Err(D::Error::custom("wrong number of generator images"));
        }
        let mut exps = Vec::with_capacity(gens.len());
        for (&(g, dord), (gj, v)) in gens.iter().zip(&raw.generator_images) {
            if *gj != g {
                return Err(D::Error::custom(format!(
                    "generator mismatch: expected {}, got {}",
                    g, gj
                )));
            }
            let mut found = None;
            for e in 0..dord {
                if CyclotomicNumber::root_of_unity(dord, e as i64) == *v {
                    found = Some(e);
                    break;
                }
            }
            exps.push(found.ok_or_else(|| {
                D::Error::custom("generator image is not a root of unity of compatible order")
            })?);
        }
        DirichletCharacter::from_exponents(raw.modulus, &exps)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// The nontrivial character mod 4 (handy in tests and fixtures).
pub fn chi4() -> DirichletCharacter {
    DirichletCharacter::from_exponents(4, &[1]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn evaluation() {
        let chi = chi4();
        assert_eq!(chi.evaluate(3), CyclotomicNumber::from_int(-1));
        assert_eq!(chi.evaluate(2), CyclotomicNumber::zero(2));
        let p12 = DirichletCharacter::principal(12);
        assert_eq!(p12.evaluate(35), CyclotomicNumber::from_int(1));
    }

    #[test]
    fn conductor_and_induction() {
        let p12 = DirichletCharacter::principal(12);
        let (c, chi0) = p12.conductor_and_primitive();
        assert_eq!(c, 1);
        assert!(chi0.is_trivial());

        let chi = chi4();
        let (c, chi0) = chi.conductor_and_primitive();
        assert_eq!(c, 4);
        assert_eq!(chi0, chi);

        let chi8 = chi.induce(8).unwrap();
        let (c, chi0) = chi8.conductor_and_primitive();
        assert_eq!(c, 4);
        assert_eq!(chi0, chi);

        let chi32 = chi.induce(32).unwrap();
        assert_eq!(chi32.evaluate(5), chi.evaluate(5));
        assert_eq!(chi32.evaluate(6), CyclotomicNumber::zero(chi32.order()));

        let triv7 = DirichletCharacter::trivial().induce(7).unwrap();
        assert!(triv7.is_principal());
        assert_eq!(triv7.modulus(), 7);
    }

    #[test]
    fn prime_parts() {
        let p12 = DirichletCharacter::principal(12);
        let part = p12.prime_part(&[2, 3]).unwrap();
        assert_eq!(part.modulus(), 12);
        assert!(part.is_principal());
        let empty = p12.prime_part(&[]).unwrap();
        assert_eq!(empty.modulus(), 1);

        // Every chi mod 36 is the product of its prime parts.
        for chi in DirichletCharacter::enumerate_all(36) {
            let c2 = chi.prime_part(&[2]).unwrap().induce(36).unwrap();
            let c3 = chi.prime_part(&[3]).unwrap().induce(36).unwrap();
            let prod = c2.product(&c3);
            for a in 1..36 {
                if gcd(a, 36) == 1 {
                    assert_eq!(prod.evaluate(a as i64), chi.evaluate(a as i64));
                }
            }
        }
    }

    #[test]
    fn gauss_sums() {
        assert_eq!(DirichletCharacter::trivial().gauss_sum(), CyclotomicNumber::from_int(1));
        // G(chi_4) = 2i.
        let g = chi4().gauss_sum();
        assert_eq!(g, CyclotomicNumber::root_of_unity(4, 1).scale(&rat(2, 1)));
        // G(chi) G(conj chi) = chi(-1) * 5 for every primitive chi mod 5.
        for chi in DirichletCharacter::enumerate_primitive(5, Parity::Any) {
            let lhs = chi.gauss_sum().mul(&chi.conjugate().gauss_sum());
            let rhs = CyclotomicNumber::from_int(5 * chi.parity());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bernoulli_values() {
        let triv = DirichletCharacter::trivial();
        assert_eq!(triv.generalized_bernoulli(4).to_rational().unwrap(), rat(-1, 30));
        assert_eq!(chi4().generalized_bernoulli(1).to_rational().unwrap(), rat(-1, 2));
        assert!(chi4().generalized_bernoulli(2).is_zero());
    }

    #[test]
    fn l_values() {
        let triv = DirichletCharacter::trivial();
        assert_eq!(triv.l_value_nonpositive(4).unwrap().to_rational().unwrap(), rat(1, 120));
        assert_eq!(chi4().l_value_nonpositive(1).unwrap().to_rational().unwrap(), rat(1, 2));
        assert_eq!(triv.l_value_nonpositive(1).unwrap().to_rational().unwrap(), rat(-1, 2));
        let p12 = DirichletCharacter::principal(12);
        assert!(p12.l_value_nonpositive(1).is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(DirichletCharacter::enumerate_primitive(11, Parity::Odd).len(), 5);
        let e1 = DirichletCharacter::enumerate_primitive(1, Parity::Even);
        assert_eq!(e1.len(), 1);
        assert!(e1[0].is_trivial());
        let e4 = DirichletCharacter::enumerate_primitive(4, Parity::Any);
        assert_eq!(e4.len(), 1);
        assert_eq!(e4[0], chi4());
        // Index round-trip.
        for chi in DirichletCharacter::enumerate_all(36) {
            let back = DirichletCharacter::from_index(36, chi.index()).unwrap();
            assert_eq!(back, chi);
        }
    }

    #[test]
    fn multiplicativity_sample() {
        for chi in DirichletCharacter::enumerate_all(21) {
            for a in 1..21i64 {
                for b in 1..21i64 {
                    let lhs = chi.evaluate(a * b);
                    let rhs = chi.evaluate(a).mul(&chi.evaluate(b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let chi = DirichletCharacter::from_index(49, 5).unwrap();
        let s = serde_json::to_string(&chi).unwrap();
        let back: DirichletCharacter = serde_json::from_str(&s).unwrap();
        assert_eq!(back, chi);
    }
}

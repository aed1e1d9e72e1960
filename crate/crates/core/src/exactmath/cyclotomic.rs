//! Elements of Q(zeta_m) in the canonical power basis.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, euler_phi};
use crate::error::{Error, Result};

use super::{Integer, Rational};

/// Shorthand for a rational p/q.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

/// Format a rational as "p" or "p/q" (no decimals).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p" or "p/q".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {:?}: {}", t, e)))
    };
    match s.split_once('/') {
        None => Ok(Rational::from(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {:?}", s)));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
    }
}

/// Cached data for one cyclotomic field Q(zeta_m).
struct FieldInfo {
    phi: usize,
    /// Monic Phi_m as integer coefficients, low to high, length phi+1.
    poly: Vec<Integer>,
    /// x^j mod Phi_m for j in 0..2*phi-1 (integer coefficient rows).
    pow_table: Vec<Vec<Integer>>,
}

fn field_info(m: u64) -> Arc<FieldInfo> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldInfo>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(info) = cache.lock().unwrap().get(&m) {
        return info.clone();
    }
    let poly = cyclotomic_polynomial(m);
    let phi = poly.len() - 1;
    let mut pow_table: Vec<Vec<Integer>> = Vec::with_capacity(2 * phi);
    for j in 0..phi {
        let mut row = vec![Integer::zero(); phi];
        row[j] = Integer::one();
        pow_table.push(row);
    }
    for j in phi..(2 * phi).max(phi + 1) {
        // x^j = x * x^{j-1}, reduced.
        let prev = &pow_table[j - 1];
        let mut row = vec![Integer::zero(); phi];
        for i in 0..phi - 1 {
            row[i + 1] = prev[i].clone();
        }
        let top = prev[phi - 1].clone();
        if !top.is_zero() {
            // x^phi = -(poly[0] + ... + poly[phi-1] x^{phi-1}) since monic.
            for i in 0..phi {
                row[i] -= &top * &poly[i];
            }
        }
        pow_table.push(row);
    }
    let info = Arc::new(FieldInfo { phi, poly, pow_table });
    cache.lock().unwrap().insert(m, info.clone());
    info
}

/// Bound C such that for a, b in Z[zeta_m] with coordinate heights H_a,
/// H_b, every coordinate of a*b is at most phi(m)^2 * C * H_a * H_b in
/// absolute value: the maximal L1 norm of a reduced power x^j mod Phi_m
/// for j < 2 phi(m) - 1.
pub fn multiplication_expansion_bound(m: u64) -> num_bigint::BigInt {
    let info = field_info(m);
    let mut best = num_bigint::BigInt::one();
    for row in &info.pow_table {
        let norm: num_bigint::BigInt = row.iter().map(|c| c.abs()).sum();
        if norm > best {
            best = norm;
        }
    }
    best
}

/// The m-th cyclotomic polynomial Phi_m, integer coefficients low to high.
///
/// Computed by exact division: Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d.
pub fn cyclotomic_polynomial(m: u64) -> Vec<Integer> {
    assert!(m >= 1);
    if m == 1 {
        return vec![Integer::from(-1), Integer::from(1)];
    }
    let mut num = vec![Integer::zero(); m as usize + 1];
    num[0] = Integer::from(-1);
    num[m as usize] = Integer::from(1);
    for d in arith::divisors(m) {
        if d < m {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division of integer polynomials (monic divisor), low-to-high coeffs.
fn poly_div_exact(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let mut rem: Vec<Integer> = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut quot = vec![Integer::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for i in 0..=dn {
                rem[k + i] -= &c * &den[i];
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

/// An exact element of Q(zeta_m), stored as phi(m) rational coordinates in
/// the power basis of Q[x]/Phi_m(x).
///
/// The order m is part of the value but not canonical: equality embeds both
/// operands into Q(zeta_lcm) first.
#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Self {
        CyclotomicNumber {
            order,
            coeffs: vec![Rational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational_in(Rational::one(), order)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_rational_in(r, 1)
    }

    pub fn from_rational_in(r: Rational, order: u64) -> Self {
        let mut v = Self::zero(order);
        v.coeffs[0] = r;
        v
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// Build directly from power-basis coordinates (length phi(order)).
    pub fn from_coeffs(order: u64, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), euler_phi(order) as usize);
        CyclotomicNumber { order, coeffs }
    }

    /// zeta_m^j in canonical form of order m; j is reduced mod m.
    pub fn root_of_unity(m: u64, j: i64) -> Self {
        assert!(m >= 1);
        let j = j.rem_euclid(m as i64) as u64;
        let info = field_info(m);
        let mut coeffs = vec![Rational::zero(); info.phi];
        // x^j mod Phi_m; extend the table on the fly for j up to m-1.
        let row = reduce_power(&info, j as usize);
        for (i, c) in row.iter().enumerate() {
            coeffs[i] = Rational::from(c.clone());
        }
        CyclotomicNumber { order: m, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) if the value is rational (all non-constant coordinates zero).
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Same value expressed in Q(zeta_m); requires order | m.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m % self.order != 0 {
            return Err(Error::OrderDoesNotDivide { order: self.order, target: m });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let info = field_info(m);
        let mut coeffs = vec![Rational::zero(); info.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = reduce_power(&info, i * step);
            for (k, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    coeffs[k] += c * Rational::from(e.clone());
                }
            }
        }
        Ok(CyclotomicNumber { order: m, coeffs })
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = arith::lcm(self.order, other.order);
        (self.embed(m).unwrap(), other.embed(m).unwrap())
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let m = a.order;
        let info = field_info(m);
        let phi = info.phi;
        if phi == 1 {
            return CyclotomicNumber { order: m, coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] };
        }
        // Convolution followed by table reduction of the high part.
        let mut conv = vec![Rational::zero(); 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out = conv[..phi].to_vec();
        for (j, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (k, e) in info.pow_table[j].iter().enumerate() {
                if !e.is_zero() {
                    out[k] += c * Rational::from(e.clone());
                }
            }
        }
        CyclotomicNumber { order: m, coeffs: out }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c *= r;
        }
        a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("cyclotomic inverse"));
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational_in(r.recip(), self.order));
        }
        let info = field_info(self.order);
        let modulus: Vec<Rational> =
            info.poly.iter().map(|c| Rational::from(c.clone())).collect();
        let inv = poly_mod_inverse(&self.coeffs, &modulus)
            .expect("element of Q[x]/Phi_m has an inverse");
        let mut coeffs = inv;
        coeffs.resize(info.phi, Rational::zero());
        Ok(CyclotomicNumber { order: self.order, coeffs })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Image under zeta_m -> zeta_m^{-1} (complex conjugation); an involution
    /// fixing the rationals.
    pub fn conjugate(&self) -> Self {
        self.galois(self.order - 1 + u64::from(self.order == 1))
    }

    /// Galois automorphism zeta_m -> zeta_m^t for gcd(t, m) = 1.
    pub fn galois(&self, t: u64) -> Self {
        let m = self.order;
        if m == 1 {
            return self.clone();
        }
        let t = t % m;
        assert!(arith::gcd(t, m) == 1, "galois exponent must be a unit mod the order");
        let info = field_info(m);
        let mut coeffs = vec![Rational::zero(); info.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = reduce_power(&info, ((i as u64 * t) % m) as usize);
            for (k, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    coeffs[k] += c * Rational::from(e.clone());
                }
            }
        }
        CyclotomicNumber { order: m, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        out
    }

    /// sqrt(n) for a non-negative integer n, embedded in a cyclotomic field
    /// via quadratic Gauss sums.
    ///
    /// With n = s^2 * r (r squarefree), sqrt(r) is a product over primes:
    /// sqrt(2) = zeta_8 + zeta_8^{-1}, and for odd p the Gauss sum
    /// sum_a (a|p) zeta_p^a equals sqrt(p) for p = 1 mod 4 and i*sqrt(p)
    /// for p = 3 mod 4 (classical sign), so sqrt(p) = zeta_4^3 * G in the
    /// latter case. All factors are the positive real square roots.
    pub fn sqrt_integer(n: u64) -> Self {
        if n == 0 {
            return Self::zero(1);
        }
        let (s, r) = arith::squarefree_decompose(n);
        let mut out = Self::from_rational(Rational::from(Integer::from(s)));
        for p in arith::prime_divisors(r) {
            let factor = if p == 2 {
                let z = Self::root_of_unity(8, 1);
                z.add(&Self::root_of_unity(8, -1))
            } else {
                let mut g = Self::zero(p);
                for a in 1..p {
                    let legendre = arith::pow_mod(a, (p - 1) / 2, p);
                    let sign = if legendre == 1 { 1 } else { -1 };
                    let term = Self::root_of_unity(p, a as i64);
                    g = if sign == 1 { g.add(&term) } else { g.sub(&term) };
                }
                if p % 4 == 1 {
                    g
                } else {
                    Self::root_of_unity(4, 3).mul(&g)
                }
            };
            out = out.mul(&factor);
        }
        out
    }

    /// sqrt of a non-negative rational p/q as sqrt(p*q)/q.
    pub fn sqrt_rational(r: &Rational) -> Self {
        assert!(!r.is_negative(), "sqrt of a negative rational");
        let p: u64 = r.numer().try_into().expect("sqrt_rational numerator fits u64");
        let q: u64 = r.denom().try_into().expect("sqrt_rational denominator fits u64");
        Self::sqrt_integer(p * q).scale(&Rational::new(BigInt::one(), BigInt::from(q)))
    }
}

/// x^j mod Phi_m for arbitrary j >= 0 (extends the cached table as needed).
fn reduce_power(info: &FieldInfo, j: usize) -> Vec<Integer> {
    if j < info.pow_table.len() {
        return info.pow_table[j].clone();
    }
    // Beyond the cached range: iterate the shift-reduce step.
    let phi = info.phi;
    let mut row = info.pow_table[info.pow_table.len() - 1].clone();
    for _ in info.pow_table.len() - 1..j {
        let top = row[phi - 1].clone();
        let mut next = vec![Integer::zero(); phi];
        for i in 0..phi - 1 {
            next[i + 1] = row[i].clone();
        }
        if !top.is_zero() {
            for i in 0..phi {
                next[i] -= &top * &info.poly[i];
            }
        }
        row = next;
    }
    row
}

/// Inverse of a mod f in Q[x] (f squarefree away from a's support), low-high.
fn poly_mod_inverse(a: &[Rational], f: &[Rational]) -> Option<Vec<Rational>> {
    // Extended Euclid: maintain r0 = f, r1 = a, with s-coefficients for a.
    let trim = |v: &mut Vec<Rational>| {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
    };
    let mut r0: Vec<Rational> = f.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = vec![Rational::zero()];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        trim(&mut r1);
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None; // gcd not constant: a is a zero divisor
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return (vec![Rational::zero()], num.to_vec());
    }
    let lead = den[dn].clone();
    let mut rem = num.to_vec();
    let qn = num.len() - 1 - dn;
    let mut quot = vec![Rational::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = &rem[k + dn] / &lead;
        if !c.is_zero() {
            for i in 0..=dn {
                let t = &c * &den[i];
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    rem.truncate(dn.max(1));
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), Rational::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", format_rational(c))?;
            } else {
                write!(f, "{}*z{}^{}", format_rational(c), self.order, i)?;
            }
        }
        Ok(())
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CyclotomicNumber", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u64,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let phi = euler_phi(raw.order) as usize;
        if raw.coeffs.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                phi,
                raw.order,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CyclotomicNumber { order: raw.order, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(m: u64, j: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(m, j)
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i64 = |v: Vec<Integer>| -> Vec<i64> {
            v.into_iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        // Phi_105 has a coefficient -2.
        let c105 = cyclotomic_polynomial(105);
        assert!(c105.iter().any(|c| *c == Integer::from(-2)));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(zeta(1, 0), CyclotomicNumber::from_int(1));
        assert_eq!(zeta(4, 2), CyclotomicNumber::from_int(-1));
        let s = zeta(3, 1).add(&zeta(3, 2));
        assert_eq!(s, CyclotomicNumber::from_int(-1));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(zeta(4, 1).mul(&zeta(4, 1)), CyclotomicNumber::from_int(-1));
        let inv = CyclotomicNumber::from_int(1).div(&zeta(5, 1)).unwrap();
        assert_eq!(inv, zeta(5, 4));
        let sum = zeta(2, 1).add(&zeta(3, 1));
        let expect = zeta(6, 3).add(&zeta(6, 2));
        assert_eq!(sum, expect);
    }

    #[test]
    fn embedding() {
        let a = CyclotomicNumber::from_rational_in(rat_int(-1), 2);
        assert_eq!(a.embed(4).unwrap(), CyclotomicNumber::from_int(-1));
        assert_eq!(zeta(3, 1).embed(6).unwrap(), zeta(6, 2));
        assert_eq!(zeta(5, 1).embed(10).unwrap(), zeta(10, 2));
        assert!(zeta(3, 1).embed(4).is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(zeta(4, 1).conjugate(), zeta(4, 1).neg());
        let r = CyclotomicNumber::from_rational(rat(3, 7));
        assert_eq!(r.conjugate(), r);
        let x = zeta(21, 5);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn inverse_of_generic_element() {
        let x = zeta(7, 1).add(&CyclotomicNumber::from_int(3));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), CyclotomicNumber::one(7));
    }

    #[test]
    fn canonical_reencoding_is_idempotent() {
        // m = 12 has repeated prime factor 2; re-encoding any power must be stable.
        for j in 0..24 {
            let a = zeta(12, j);
            let b = zeta(12, j % 12);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn square_roots() {
        let two = CyclotomicNumber::from_int(2);
        let r2 = CyclotomicNumber::sqrt_integer(2);
        assert_eq!(r2.mul(&r2), two);
        // sqrt(5) = 2(zeta_10 + zeta_10^-1) - 1 pins the positive branch.
        let r5 = CyclotomicNumber::sqrt_integer(5);
        let alt = zeta(10, 1)
            .add(&zeta(10, -1))
            .scale(&rat_int(2))
            .sub(&CyclotomicNumber::from_int(1));
        assert_eq!(r5, alt);
        // sqrt(3) = zeta_12 + zeta_12^-1.
        let r3 = CyclotomicNumber::sqrt_integer(3);
        assert_eq!(r3, zeta(12, 1).add(&zeta(12, -1)));
        assert_eq!(CyclotomicNumber::sqrt_integer(18).mul(&CyclotomicNumber::sqrt_integer(2)), CyclotomicNumber::from_int(6));
    }

    #[test]
    fn json_round_trip() {
        let x = zeta(12, 5).scale(&rat(3, 2)).add(&CyclotomicNumber::from_rational_in(rat(-1, 7), 12));
        let s = serde_json::to_string(&x).unwrap();
        let y: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}

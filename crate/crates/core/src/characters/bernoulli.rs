//! Bernoulli numbers and polynomials, exact.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::exactmath::Rational;

static CACHE: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(vec![Rational::one()]));

/// B_n with B_1 = -1/2 (the recurrence convention; polynomial evaluation at
/// a/M with a in 1..=M supplies the +1/2 behaviour needed for L-values).
pub fn bernoulli_number(n: u32) -> Rational {
    let mut cache = CACHE.lock().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        // sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  B_m = -(1/(m+1)) sum_{j<m} C(m+1,j) B_j
        let mut sum = Rational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for j in 0..m {
            sum += &cache[j as usize] * Rational::from(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let b = -sum / Rational::from(BigInt::from(m + 1));
        cache.push(b);
    }
    cache[n as usize].clone()
}

/// B_k(x) = sum_j C(k, j) B_j x^{k-j}, evaluated exactly.
pub fn bernoulli_polynomial_at(k: u32, x: &Rational) -> Rational {
    let mut out = Rational::zero();
    let mut binom = BigInt::one();
    // Horner in descending powers of x: coefficients C(k,j) B_j for j = 0..k.
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    for j in 0..=k {
        coeffs.push(Rational::from(binom.clone()) * bernoulli_number(j));
        if j < k {
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
    }
    for c in coeffs {
        out = out * x + c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), rat(0, 1));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(8), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn polynomial_values() {
        // B_k(1) = (-1)^k B_k, so B_1(1) = 1/2.
        assert_eq!(bernoulli_polynomial_at(1, &rat(1, 1)), rat(1, 2));
        assert_eq!(bernoulli_polynomial_at(4, &rat(1, 1)), rat(-1, 30));
        // B_2(x) = x^2 - x + 1/6.
        assert_eq!(bernoulli_polynomial_at(2, &rat(1, 4)), rat(-1, 48));
    }
}

//! Integral 2x2 matrices and the unimodular * upper-triangular factorization.

use serde::{Deserialize, Serialize};

use crate::arith::ext_gcd;

/// An element of SL_2(Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(a as i128 * d as i128 - b as i128 * c as i128 == 1, "determinant must be 1");
        UnimodularMatrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        UnimodularMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// S = (0, -1; 1, 0), mapping infinity to 0.
    pub fn s() -> Self {
        UnimodularMatrix { a: 0, b: -1, c: 1, d: 0 }
    }

    /// T^m = (1, m; 0, 1).
    pub fn t_pow(m: i64) -> Self {
        UnimodularMatrix { a: 1, b: m, c: 0, d: 1 }
    }

    /// gamma_d = (1, 0; d, 1), mapping infinity to 1/d.
    pub fn gamma_lower(d: i64) -> Self {
        UnimodularMatrix { a: 1, b: 0, c: d, d: 1 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        UnimodularMatrix::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    /// The cusp gamma * infinity as (numerator, denominator), denominator >= 0.
    pub fn cusp(&self) -> (i64, i64) {
        if self.c < 0 {
            (-self.a, -self.c)
        } else {
            (self.a, self.c)
        }
    }
}

/// An integral 2x2 matrix with positive determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegralMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntegralMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        let m = IntegralMatrix { a, b, c, d };
        assert!(m.det() > 0, "determinant must be positive");
        m
    }

    pub fn det(&self) -> i64 {
        (self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128)
            .try_into()
            .expect("determinant fits i64")
    }

    pub fn from_unimodular(g: &UnimodularMatrix) -> Self {
        IntegralMatrix { a: g.a, b: g.b, c: g.c, d: g.d }
    }

    /// diag(d, 1), the matrix realizing B_d under the normalized slash.
    pub fn diag(d: u64) -> Self {
        IntegralMatrix::new(d as i64, 0, 0, 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        IntegralMatrix::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    /// Column-style Hermite factorization M = gamma * (a', b'; 0, d') with
    /// gamma in SL_2(Z), a'd' = det M, a' > 0, and 0 <= b' < d'.
    pub fn hnf_factor(&self) -> (UnimodularMatrix, Triangular) {
        let det = self.det();
        let (g, _, _) = ext_gcd(self.a as i128, self.c as i128);
        let a1 = g as i64; // gcd of the first column, positive
        assert!(a1 != 0, "first column of a nonsingular matrix is nonzero");
        let (p, q) = (self.a / a1, self.c / a1);
        // Complete (p, q) to gamma = (p, *, q, *) in SL_2(Z).
        let (one, x, y) = ext_gcd(p as i128, q as i128);
        assert!(one == 1);
        // p * x + q * y = 1  =>  gamma = (p, -y; q, x) has det p x + q y = 1.
        let mut gamma = UnimodularMatrix::new(p, -(y as i64), q, x as i64);
        // U = gamma^{-1} M = (d_g, -b_g; -c_g, a_g) * M.
        let u11 = gamma.d * self.a - gamma.b * self.c;
        let u12 = gamma.d * self.b - gamma.b * self.d;
        let u21 = -gamma.c * self.a + gamma.a * self.c;
        let u22 = -gamma.c * self.b + gamma.a * self.d;
        assert!(u21 == 0 && u11 == a1 && u11 * u22 == det);
        // Normalize b' into [0, d') by gamma <- gamma * T^t.
        let d1 = u22;
        let t = u12.div_euclid(d1);
        let b1 = u12.rem_euclid(d1);
        gamma = gamma.mul(&UnimodularMatrix::t_pow(t));
        (gamma, Triangular { a: a1 as u64, b: b1 as u64, d: d1 as u64 })
    }
}

/// Upper-triangular factor (a, b; 0, d) with a*d = det, 0 <= b < d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triangular {
    pub a: u64,
    pub b: u64,
    pub d: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_round_trip() {
        let cases = [
            IntegralMatrix::new(2, 0, 0, 1).mul(&IntegralMatrix::new(1, 0, 8, 1)),
            IntegralMatrix::new(4, 1, -36, -8),
            IntegralMatrix::new(6, 0, 0, 1),
            IntegralMatrix::new(12, 5, 7, 3),
            IntegralMatrix::new(0, -3, 3, 7),
        ];
        for m in cases {
            let (g, u) = m.hnf_factor();
            let back = IntegralMatrix::from_unimodular(&g).mul(&IntegralMatrix::new(
                u.a as i64, u.b as i64, 0, u.d as i64,
            ));
            assert_eq!(back, m);
            assert_eq!((u.a * u.d) as i64, m.det());
            assert!(u.b < u.d);
        }
    }

    #[test]
    fn cusp_of_gamma() {
        assert_eq!(UnimodularMatrix::s().cusp(), (0, 1));
        assert_eq!(UnimodularMatrix::gamma_lower(8).cusp(), (1, 8));
    }
}

//! Modular arithmetic layer: evaluation representation of Q(zeta_m) at
//! primes p = 1 mod m, scalar row reduction per embedding, CRT and
//! rational reconstruction.
//!
//! An element of Q(zeta_m) is represented at p by its phi(m) images under
//! the ring homomorphisms zeta_m -> omega^j (omega a fixed element of
//! exact order m in F_p, j coprime to m). Multiplication is pointwise;
//! conversion back to power-basis coordinates inverts a Vandermonde
//! matrix. Reductions at different embeddings are independent scalar
//! eliminations whose pivot structure must agree; disagreement marks a bad
//! prime, which is skipped (correctness never rests on prime choice: every
//! reconstructed result is verified exactly afterwards).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, euler_phi, gcd, inv_mod, mul_mod, pow_mod};
use crate::exactmath::{CyclotomicNumber, Rational};

/// Context for one prime p = 1 mod m.
pub struct PrimeCtx {
    pub p: u64,
    pub m: u64,
    pub phi: usize,
    /// Exponents j coprime to m indexing the embeddings zeta -> omega^j.
    pub exponents: Vec<u64>,
    /// Images of zeta_m under each embedding, ordered by the exponent j.
    pub roots: Vec<u64>,
    /// Powers omega^0..omega^{m-1} of the base root.
    pub omega_pows: Vec<u64>,
    inv_vander: Vec<Vec<u64>>,
}

impl PrimeCtx {
    pub fn new(p: u64, m: u64) -> Self {
        assert!(m == 1 || (p - 1) % m == 0, "p must be 1 mod m");
        let phi = euler_phi(m) as usize;
        // Deterministic element of exact order m.
        let mut omega = 1u64;
        if m > 1 {
            let mfac = arith::prime_divisors(m);
            let mut x = 2u64;
            loop {
                let cand = pow_mod(x, (p - 1) / m, p);
                if cand != 0 && mfac.iter().all(|&q| pow_mod(cand, m / q, p) != 1) {
                    omega = cand;
                    break;
                }
                x += 1;
            }
        }
        let mut omega_pows = Vec::with_capacity(m as usize);
        let mut acc = 1u64;
        for _ in 0..m {
            omega_pows.push(acc);
            acc = mul_mod(acc, omega, p);
        }
        let exponents: Vec<u64> = if m == 1 {
            vec![0]
        } else {
            (1..m).filter(|&j| gcd(j, m) == 1).collect()
        };
        let roots: Vec<u64> = exponents.iter().map(|&j| omega_pows[j as usize]).collect();
        assert_eq!(roots.len(), phi);
        // Invert the Vandermonde V[t][i] = roots[t]^i.
        let mut aug: Vec<Vec<u64>> = (0..phi)
            .map(|t| {
                let mut row = Vec::with_capacity(2 * phi);
                let mut acc = 1u64;
                for _ in 0..phi {
                    row.push(acc);
                    acc = mul_mod(acc, roots[t], p);
                }
                for i in 0..phi {
                    row.push(u64::from(i == t));
                }
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| aug[r][col] != 0).expect("Vandermonde is invertible");
            aug.swap(col, piv);
            let inv = inv_mod(aug[col][col], p);
            for x in aug[col].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for r in 0..phi {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for c in 0..2 * phi {
                        let t = mul_mod(f, aug[col][c], p);
                        aug[r][c] = (aug[r][c] + p - t) % p;
                    }
                }
            }
        }
        let inv_vander = aug.into_iter().map(|row| row[phi..].to_vec()).collect();
        PrimeCtx { p, m, phi, exponents, roots, omega_pows, inv_vander }
    }

    pub fn embed_rat(&self, r: &Rational) -> u64 {
        let p_big = BigInt::from(self.p);
        let num = r.numer().mod_floor(&p_big);
        let den = r.denom().mod_floor(&p_big);
        let num: u64 = num.try_into().unwrap();
        let den: u64 = den.try_into().unwrap();
        assert!(den != 0, "denominator divisible by the working prime");
        mul_mod(num, inv_mod(den, self.p), self.p)
    }

    /// Images of a cyclotomic number under all embeddings. The element's
    /// order must divide m.
    pub fn embed(&self, c: &CyclotomicNumber) -> Vec<u64> {
        let c = c.embed(self.m).expect("element embeds in the context field");
        let coeffs: Vec<u64> = c.coeffs().iter().map(|x| self.embed_rat(x)).collect();
        self.roots
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                for &ci in coeffs.iter().rev() {
                    acc = (mul_mod(acc, r, self.p) + ci) % self.p;
                }
                acc
            })
            .collect()
    }

    /// Power-basis residues of an element given by its embedding images.
    pub fn interpolate(&self, vals: &[u64]) -> Vec<u64> {
        assert_eq!(vals.len(), self.phi);
        (0..self.phi)
            .map(|i| {
                let mut acc = 0u64;
                for (t, &v) in vals.iter().enumerate() {
                    acc = (acc + mul_mod(self.inv_vander[i][t], v, self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    /// Root-of-unity image for a character value zeta_order^t under the
    /// given embedding: (omega^j)^{(m/order) t}.
    pub fn char_value(&self, order: u64, t: u64, embedding: usize) -> u64 {
        if self.m == 1 {
            return 1;
        }
        let j = self.exponents[embedding];
        let e = (self.m / order) % self.m * (t % self.m) % self.m;
        self.omega_pows[(j * e % self.m) as usize]
    }
}

/// Row reduction to reduced echelon form in place; returns pivot columns.
/// Pivoting is deterministic: first nonzero row for each column, columns
/// left to right.
pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..nrows {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let (pivot_row, row) = if r < rank {
                    let (a, b) = rows.split_at_mut(rank);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[rank], &mut b[0])
                };
                for (x, &pv) in row.iter_mut().zip(pivot_row.iter()) {
                    let t = mul_mod(f, pv, p);
                    *x = (*x + p - t) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    pivots
}

/// Canonical kernel basis from an RREF: one vector per free column, with a
/// 1 in the free position and minus the pivot-row entries elsewhere.
pub fn kernel_basis(rows: &[Vec<u64>], pivots: &[usize], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let coef = rows[r][free];
            if coef != 0 {
                v[pc] = p - coef;
            }
        }
        basis.push(v);
    }
    basis
}

/// CRT combine residues (value, prime) into (value mod M, M).
pub fn crt_combine(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(r, p) in residues {
        let p_big = BigInt::from(p);
        // value' = value mod modulus, = r mod p.
        let g = modulus.gcd(&p_big);
        assert!(g.is_one());
        let inv = mod_inverse(&modulus, &p_big);
        let diff = (BigInt::from(r) - &value).mod_floor(&p_big);
        value += &modulus * ((diff * inv).mod_floor(&p_big));
        modulus *= &p_big;
    }
    (value, modulus)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Rational reconstruction: p/q with |p|, q <= sqrt(M/2) and p = a q mod M.
pub fn rational_reconstruct(a: &BigInt, modulus: &BigInt) -> Option<Rational> {
    let bound = (modulus / 2u8).sqrt();
    let mut r0 = modulus.clone();
    let mut r1 = a.mod_floor(modulus);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let num = if t1.is_negative() { -&r1 } else { r1.clone() };
    let den = t1.abs();
    if den.is_zero() || num.gcd(&den) != BigInt::one() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Deterministic ascending primes p = 1 mod m for the solver, skipping an
/// initial segment (so verification primes are disjoint from solve primes).
pub fn solver_primes(m: u64, skip: usize, count: usize) -> Vec<u64> {
    arith::primes_one_mod(m, skip + count)[skip..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn embed_and_interpolate() {
        let m = 12u64;
        let p = solver_primes(m, 0, 1)[0];
        let ctx = PrimeCtx::new(p, m);
        let x = CyclotomicNumber::root_of_unity(12, 5)
            .scale(&rat(3, 7))
            .add(&CyclotomicNumber::from_rational(rat(-2, 5)));
        let vals = ctx.embed(&x);
        let coeffs = ctx.interpolate(&vals);
        // Compare against the direct residues of the power-basis coords.
        let expect: Vec<u64> = x
            .embed(12)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| ctx.embed_rat(c))
            .collect();
        assert_eq!(coeffs, expect);
    }

    #[test]
    fn embedding_is_multiplicative() {
        let m = 10u64;
        let p = solver_primes(m, 0, 1)[0];
        let ctx = PrimeCtx::new(p, m);
        let a = CyclotomicNumber::root_of_unity(10, 3).add(&CyclotomicNumber::from_int(2));
        let b = CyclotomicNumber::root_of_unity(5, 2).sub(&CyclotomicNumber::from_int(1));
        let ab = a.mul(&b);
        let va = ctx.embed(&a);
        let vb = ctx.embed(&b);
        let vab = ctx.embed(&ab);
        for t in 0..ctx.phi {
            assert_eq!(mul_mod(va[t], vb[t], p), vab[t]);
        }
    }

    #[test]
    fn rref_and_kernel() {
        let p = 1_000_003u64;
        let mut rows = vec![
            vec![1, 2, 3, 1],
            vec![2, 4, 6, 2],
            vec![0, 1, 1, 0],
        ];
        let pivots = rref(&mut rows, p);
        assert_eq!(pivots, vec![0, 1]);
        let kernel = kernel_basis(&rows, &pivots, 4, p);
        assert_eq!(kernel.len(), 2);
        // Each kernel vector satisfies the original relations.
        let orig = [[1u64, 2, 3, 1], [2, 4, 6, 2], [0, 1, 1, 0]];
        for v in &kernel {
            for row in &orig {
                let mut acc = 0u64;
                for (x, y) in row.iter().zip(v) {
                    acc = (acc + mul_mod(*x, *y, p)) % p;
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn reconstruction() {
        let primes = solver_primes(1, 0, 3);
        let x = rat(-22, 7);
        let residues: Vec<(u64, u64)> = primes
            .iter()
            .map(|&p| {
                let ctx = PrimeCtx::new(p, 1);
                (ctx.embed_rat(&x), p)
            })
            .collect();
        let (v, m) = crt_combine(&residues);
        let back = rational_reconstruct(&v, &m).unwrap();
        assert_eq!(back, x);
    }
}

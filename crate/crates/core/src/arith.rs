//! Small-integer number theory helpers (u64 range).
//!
//! Levels, moduli and weights all fit comfortably in u64; big-integer
//! arithmetic only enters through coefficient values in `exactmath`.

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple. Panics on overflow.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization as (p, exponent) pairs, ascending.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// All divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut r = n;
    for (p, _) in factor(n) {
        r = r / p * (p - 1);
    }
    r
}

/// Moebius function.
pub fn moebius(n: u64) -> i64 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Squarefree part: n = s^2 * r with r squarefree; returns (s, r).
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut r = 1u64;
    for (p, e) in factor(n) {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
    }
    (s, r)
}

/// The S-part of n: product of p^{v_p(n)} over primes p in `s`.
pub fn s_part(n: u64, s: &[u64]) -> u64 {
    let mut out = 1u64;
    for &(p, e) in &factor(n) {
        if s.contains(&p) {
            out *= p.pow(e);
        }
    }
    out
}

/// v_p(n): exponent of the prime p in n.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Modular inverse; panics if gcd(a, m) != 1.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let (g, x, _) = ext_gcd(a as i128, m as i128);
    assert!(g == 1, "inv_mod: {} not invertible mod {}", a, m);
    (x.rem_euclid(m as i128)) as u64
}

/// Extended gcd over i128: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Sufficient witness set for all u64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Multiplicative order of a mod n; panics if gcd(a, n) != 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert!(gcd(a, n) == 1);
    let group = euler_phi(n);
    let mut ord = group;
    for (p, _) in factor(group) {
        while ord % p == 0 && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Smallest primitive root mod p^e (p odd prime) or mod 2, 4.
pub fn primitive_root(m: u64) -> u64 {
    assert!(m >= 2);
    if m == 2 {
        return 1;
    }
    if m == 4 {
        return 3;
    }
    let f = factor(m);
    assert!(
        f.len() == 1 && f[0].0 != 2 || (f.len() == 1 && m == 4),
        "primitive_root: modulus {} is not an odd prime power",
        m
    );
    let phi = euler_phi(m);
    let phi_factors = prime_divisors(phi);
    'g: for g in 2..m {
        if gcd(g, m) != 1 {
            continue;
        }
        for &q in &phi_factors {
            if pow_mod(g, phi / q, m) == 1 {
                continue 'g;
            }
        }
        return g;
    }
    unreachable!("no primitive root mod {}", m)
}

/// Deterministic sequence of primes p ≡ 1 (mod m), ascending from 2^59.
///
/// Used for the modular linear-algebra layer; the sequence is a pure
/// function of m so solver runs are reproducible.
pub fn primes_one_mod(m: u64, count: usize) -> Vec<u64> {
    let m = m.max(1);
    let start = 1u64 << 59;
    let mut p = start - (start % m) + 1;
    if p < start {
        p += m;
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if is_prime(p) {
            out.push(p);
        }
        p += m;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arith() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(euler_phi(243), 162);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
        assert_eq!(squarefree_decompose(72), (6, 2));
    }

    #[test]
    fn primes_and_orders() {
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(2_147_483_649));
        assert_eq!(mult_order(2, 11), 10);
        assert_eq!(primitive_root(11), 2);
        assert_eq!(primitive_root(9), 2);
        let ps = primes_one_mod(162, 3);
        for p in ps {
            assert!(is_prime(p) && p % 162 == 1);
        }
    }
}

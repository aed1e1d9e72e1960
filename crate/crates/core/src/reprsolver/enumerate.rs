//! Enumeration of the generator quintuples.

use crate::arith::{self, divisors};
use crate::characters::{DirichletCharacter, Parity};
use crate::error::{Error, Result};

use super::GeneratorQuintuple;

/// The set T of primes p | n with v_p(n) = 1, as the product N_T.
fn squarefree_prime_part(n: u64) -> u64 {
    let mut out = 1;
    for (p, e) in arith::factor(n) {
        if e == 1 {
            out *= p;
        }
    }
    out
}

/// All quintuple generators for M_k(Gamma_0(N)): for each N0 d | N, the
/// quintuples (phi, psi, l, d1, d2) with d1 M1 d2 M2 = N0, d1 M1 | (N0)_T,
/// phi psi(-1) = (-1)^l, and (phi, psi, l) distinct from the excluded
/// trivial pairs at l = 2 and l = k - 2.
///
/// Deterministic and duplicate-free: the sextuple determines its sublevel,
/// and the iteration order is by ascending N0, d, M1, phi, d1, M2, psi, l.
/// The enumeration is valid for all N; spanning of the full space is only
/// guaranteed for N = p^a q^b N' with N' squarefree.
pub fn enumerate_generators(level: u64, weight: i64) -> Result<Vec<GeneratorQuintuple>> {
    if weight % 2 != 0 || weight < 2 {
        return Err(Error::OddWeight(weight));
    }
    let mut out = Vec::new();
    for n0 in divisors(level) {
        let nt = squarefree_prime_part(n0);
        for d in divisors(level / n0) {
            for m1 in divisors(nt) {
                let phis = DirichletCharacter::enumerate_primitive(m1, Parity::Any);
                for phi in &phis {
                    for d1 in divisors(nt / m1) {
                        if n0 % (d1 * m1) != 0 {
                            continue;
                        }
                        let rest = n0 / (d1 * m1);
                        for m2 in divisors(rest) {
                            let d2 = rest / m2;
                            let psis = DirichletCharacter::enumerate_primitive(m2, Parity::Any);
                            for psi in &psis {
                                let pair_parity = phi.parity() * psi.parity();
                                for l in 1..weight {
                                    let l_parity = if l % 2 == 0 { 1 } else { -1 };
                                    if pair_parity != l_parity {
                                        continue;
                                    }
                                    if phi.is_trivial()
                                        && psi.is_trivial()
                                        && (l == 2 || l == weight - 2)
                                    {
                                        continue;
                                    }
                                    out.push(GeneratorQuintuple {
                                        phi: phi.clone(),
                                        psi: psi.clone(),
                                        l,
                                        d1,
                                        d2,
                                        d,
                                        weight,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_eleven_weight_two() {
        let gens = enumerate_generators(11, 2).unwrap();
        assert_eq!(gens.len(), 10);
        let with_trivial_phi = gens.iter().filter(|g| g.phi.is_trivial()).count();
        let with_m1_eleven = gens.iter().filter(|g| g.phi.modulus() == 11).count();
        assert_eq!(with_trivial_phi, 5);
        assert_eq!(with_m1_eleven, 5);
    }

    #[test]
    fn level_one_weight_twelve() {
        let gens = enumerate_generators(1, 12).unwrap();
        let ls: Vec<i64> = gens.iter().map(|g| g.l).collect();
        assert_eq!(ls, vec![4, 6, 8]);
    }

    #[test]
    fn level_thirtytwo_weight_two() {
        let gens = enumerate_generators(32, 2).unwrap();
        assert_eq!(gens.len(), 26);
        // All have trivial phi (the T-part of every sublevel of 32 is 1 or 2).
        assert!(gens.iter().all(|g| g.phi.is_trivial()));
        // The paper's four-term combination needs (1, chi_4, 1, 1, d2) with
        // 4 d2 d | 32 for (d2 d's first factor lift, second lift) covering
        // (1,4), (1,8), (2,4), (2,8).
        let mut lifts: Vec<(u64, u64)> = gens
            .iter()
            .filter(|g| g.psi.modulus() == 4)
            .map(|g| (g.d1 * g.d, g.d2 * g.d))
            .collect();
        lifts.sort_unstable();
        for want in [(1, 4), (1, 8), (2, 4), (2, 8)] {
            assert!(lifts.contains(&want), "missing lift pair {:?}", want);
        }
    }

    #[test]
    fn duplicate_free() {
        let gens = enumerate_generators(36, 4).unwrap();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                assert!(gens[i] != gens[j]);
            }
        }
    }
}

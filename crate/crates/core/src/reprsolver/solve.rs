//! Modular solving with exact certification.
//!
//! Solutions, inconsistency certificates and ranks are computed with
//! deterministic primes p = 1 mod L (L the common coefficient field order),
//! reconstructed rationally, and then verified exactly: representations by
//! exact re-expansion against the target, kernel certificates by a
//! height-bounded multi-prime zero test (rigorous because the product of
//! fresh verification primes exceeds twice an a priori bound on the exact
//! integer coordinates).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, lcm};
use crate::eisenstein::{eis_constant_term, eisenstein_basis_labels, EisBasisElement, EisLabel};
use crate::error::{Error, Result};
use crate::exactmath::{multiplication_expansion_bound, CyclotomicNumber, Rational};
use crate::qexp::{sturm_bound, FourierExpansion};

use super::modp::{crt_combine, kernel_basis, rational_reconstruct, rref, solver_primes, PrimeCtx};
use super::{target_digest, GeneratorQuintuple, ProductRepresentation};

/// Witness that the target is not in the span: a row functional vanishing
/// on every generator column but not on the target.
#[derive(Clone, Debug)]
pub struct NotInSpan {
    /// Dual vector over coefficient rows 0..=rows-1.
    pub dual: Vec<CyclotomicNumber>,
    /// The nonzero pairing <dual, target>.
    pub pairing: CyclotomicNumber,
}

#[derive(Debug)]
pub enum SolveOutcome {
    Representation(ProductRepresentation),
    NotInSpan(NotInSpan),
}

/// The set of columns the solver works over.
pub(crate) struct ColumnSet {
    pub level: u64,
    pub weight: i64,
    pub gens: Vec<GeneratorQuintuple>,
    pub eis: Vec<EisBasisElement>,
    /// Common cyclotomic field order for all column entries.
    pub field: u64,
}

impl ColumnSet {
    pub fn full(level: u64, weight: i64) -> Result<Self> {
        let gens = super::enumerate_generators(level, weight)?;
        let eis = eisenstein_basis_labels(level, weight)?;
        Ok(Self::from_parts(level, weight, gens, eis))
    }

    pub fn from_parts(
        level: u64,
        weight: i64,
        gens: Vec<GeneratorQuintuple>,
        eis: Vec<EisBasisElement>,
    ) -> Self {
        let mut field = 1u64;
        for g in &gens {
            field = lcm(field, g.phi.order().max(1));
            field = lcm(field, g.psi.order().max(1));
        }
        for e in &eis {
            if let EisBasisElement::Pair { phi, .. } = e {
                field = lcm(field, phi.order().max(1));
            }
        }
        ColumnSet { level, weight, gens, eis, field }
    }

    pub fn ncols(&self) -> usize {
        self.gens.len() + self.eis.len()
    }

    /// All columns mod one prime, one embedding: col-major, rows 0..=b.
    ///
    /// Quintuple columns carry the rational part of the generator scalar
    /// but not its sqrt(r) radical, so entries stay in Q(zeta_field).
    pub fn columns_mod(&self, ctx: &PrimeCtx, emb: usize, b: usize) -> Vec<Vec<u64>> {
        let p = ctx.p;
        let mut factor_cache: std::collections::HashMap<(u64, u64, u64, u64, i64), Vec<u64>> =
            std::collections::HashMap::new();
        let mut series = |phi: &crate::characters::DirichletCharacter,
                          psi: &crate::characters::DirichletCharacter,
                          l: i64|
         -> Vec<u64> {
            let key = (phi.modulus(), phi.index(), psi.modulus(), psi.index(), l);
            if let Some(s) = factor_cache.get(&key) {
                return s.clone();
            }
            let mut a = vec![0u64; b + 1];
            let label = EisLabel { phi: phi.clone(), psi: psi.clone(), l, d: 1 };
            a[0] = ctx.embed(&eis_constant_term(&label))[emb];
            for d in 1..=b as u64 {
                let Some(t_psi) = psi.evaluate_exponent(d as i64) else { continue };
                let t = arith::mul_mod(
                    ctx.char_value(psi.order(), t_psi, emb),
                    arith::pow_mod(d, l as u64 - 1, p),
                    p,
                );
                for m in 1..=(b as u64 / d) {
                    let Some(t_phi) = phi.evaluate_exponent(m as i64) else { continue };
                    let v = arith::mul_mod(t, ctx.char_value(phi.order(), t_phi, emb), p);
                    let idx = (m * d) as usize;
                    a[idx] = (a[idx] + v) % p;
                }
            }
            for x in a.iter_mut().skip(1) {
                *x = arith::mul_mod(*x, 2, p);
            }
            factor_cache.insert(key, a.clone());
            a
        };
        let mut cols = Vec::with_capacity(self.ncols());
        for g in &self.gens {
            let f1 = series(&g.phi, &g.psi, g.l);
            let f2 = series(&g.phi.conjugate(), &g.psi.conjugate(), g.weight - g.l);
            let s1 = (g.d1 * g.d) as usize;
            let s2 = (g.d2 * g.d) as usize;
            let (scalar_rat, _radicand) = g.column_scalar();
            let scalar = ctx.embed_rat(&scalar_rat);
            let mut col = vec![0u64; b + 1];
            for (i, &ai) in f1.iter().enumerate() {
                if ai == 0 || i * s1 > b {
                    continue;
                }
                for (j, &bj) in f2.iter().enumerate() {
                    let n = i * s1 + j * s2;
                    if n > b {
                        break;
                    }
                    if bj != 0 {
                        col[n] = (col[n] + arith::mul_mod(ai, bj, p)) % p;
                    }
                }
            }
            for x in col.iter_mut() {
                *x = arith::mul_mod(*x, scalar, p);
            }
            cols.push(col);
        }
        for e in &self.eis {
            match e {
                EisBasisElement::Pair { phi, d } => {
                    let f = series(phi, &phi.conjugate(), self.weight);
                    let scalar = arith::pow_mod(*d, self.weight as u64 / 2, p);
                    let mut col = vec![0u64; b + 1];
                    for (i, &ai) in f.iter().enumerate() {
                        if i * *d as usize > b {
                            break;
                        }
                        col[i * *d as usize] = arith::mul_mod(ai, scalar, p);
                    }
                    cols.push(col);
                }
                EisBasisElement::E2Difference { d } => {
                    let triv = crate::characters::DirichletCharacter::trivial();
                    let f = series(&triv, &triv, 2);
                    let mut col = vec![0u64; b + 1];
                    for (i, &ai) in f.iter().enumerate() {
                        col[i] = ai;
                        let j = i * *d as usize;
                        if j <= b {
                            let t = arith::mul_mod(ai, *d % p, p);
                            col[j] = (col[j] + p - t) % p;
                        }
                    }
                    cols.push(col);
                }
            }
        }
        cols
    }

    /// Crude rigorous bound on the absolute value of any integerized exact
    /// column entry (numerators after clearing the column denominator).
    pub fn column_height_bound(&self, b: usize) -> (BigInt, BigInt) {
        let phi_l = arith::euler_phi(self.field);
        let c_red = multiplication_expansion_bound(self.field);
        let k = self.weight as u32;
        let mut sigma_bound = BigInt::zero();
        for d in 1..=b.max(1) as u64 {
            sigma_bound += BigInt::from(d).pow(k.saturating_sub(1));
        }
        // Factor coefficients: |2 sigma| with root-of-unity coordinates.
        let coeff = BigInt::from(2) * &sigma_bound * &c_red + BigInt::from(4);
        let mut den = BigInt::one();
        // Covers the B_d scalars d^{k/2} <= N^{k/2} of the Eisenstein basis
        // columns and the E2-difference multiplier d <= N.
        let mut num_scale = BigInt::from(self.level).pow(k / 2 + 1);
        for g in &self.gens {
            let (rat, _) = g.column_scalar();
            den = lcm_big(&den, rat.denom());
            if rat.numer().abs() > num_scale {
                num_scale = rat.numer().abs();
            }
            let (l1, l2) = g.factor_labels();
            for label in [l1, l2] {
                for c in eis_constant_term(&EisLabel { d: 1, ..label }).coeffs() {
                    den = lcm_big(&den, c.denom());
                }
            }
        }
        for e in &self.eis {
            if let EisBasisElement::Pair { phi, .. } = e {
                let label = EisLabel {
                    phi: phi.clone(),
                    psi: phi.conjugate(),
                    l: self.weight,
                    d: 1,
                };
                for c in eis_constant_term(&label).coeffs() {
                    den = lcm_big(&den, c.denom());
                }
            } else {
                den = lcm_big(&den, &BigInt::from(12));
            }
        }
        let height = BigInt::from(b as u64 + 1)
            * BigInt::from(phi_l).pow(2)
            * &c_red
            * (&coeff * &den).pow(2)
            * num_scale;
        (height, den)
    }
}

fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a / a.gcd(b)) * b
}

/// Reconstruct a cyclotomic vector from per-prime, per-embedding images.
/// `data[prime_idx][emb][entry]`.
fn reconstruct_vector(
    ctxs: &[PrimeCtx],
    data: &[Vec<Vec<u64>>],
    len: usize,
) -> Option<Vec<CyclotomicNumber>> {
    let m = ctxs[0].m;
    let phi = ctxs[0].phi;
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let mut coords: Vec<Rational> = Vec::with_capacity(phi);
        // Interpolate per prime, then CRT per power-basis coordinate.
        let per_prime: Vec<Vec<u64>> = ctxs
            .iter()
            .enumerate()
            .map(|(pi, ctx)| {
                let vals: Vec<u64> = (0..phi).map(|e| data[pi][e][i]).collect();
                ctx.interpolate(&vals)
            })
            .collect();
        for c in 0..phi {
            let residues: Vec<(u64, u64)> =
                ctxs.iter().enumerate().map(|(pi, ctx)| (per_prime[pi][c], ctx.p)).collect();
            let (v, modulus) = crt_combine(&residues);
            coords.push(rational_reconstruct(&v, &modulus)?);
        }
        out.push(CyclotomicNumber::from_coeffs(m, coords));
    }
    Some(out)
}

/// Height-bounded multi-prime proof that dual . column = 0 for every
/// column: integerize the dual, bound the exact integer coordinates of the
/// pairings, and check vanishing modulo fresh primes whose product exceeds
/// twice the bound.
fn verify_dual_annihilates(
    cols: &ColumnSet,
    dual: &[CyclotomicNumber],
    b: usize,
    skip_primes: usize,
) -> bool {
    let (col_height, col_den) = cols.column_height_bound(b);
    let mut dual_den = BigInt::one();
    let mut dual_height = BigInt::one();
    for c in dual {
        for x in c.coeffs() {
            dual_den = lcm_big(&dual_den, x.denom());
        }
    }
    for c in dual {
        for x in c.coeffs() {
            let h = (x.numer() * &dual_den / x.denom()).abs();
            if h > dual_height {
                dual_height = h;
            }
        }
    }
    let phi_l = BigInt::from(arith::euler_phi(cols.field));
    let c_red = multiplication_expansion_bound(cols.field);
    let bound: BigInt = BigInt::from(b as u64 + 1)
        * &phi_l
        * &phi_l
        * c_red
        * dual_height
        * col_height
        * BigInt::from(2);
    // Enough fresh primes to exceed the bound.
    let mut needed = 1usize;
    let mut acc = BigInt::from(solver_primes(cols.field, skip_primes, 1)[0]);
    while acc < bound {
        needed += 1;
        acc *= BigInt::from(solver_primes(cols.field, skip_primes + needed - 1, 1)[0]);
    }
    let primes = solver_primes(cols.field, skip_primes, needed);
    for p in primes {
        let ctx = PrimeCtx::new(p, cols.field);
        for emb in 0..ctx.phi {
            let cols_mod = cols.columns_mod(&ctx, emb, b);
            let dual_mod: Vec<u64> = dual.iter().map(|c| ctx.embed(c)[emb]).collect();
            for col in &cols_mod {
                let mut acc = 0u64;
                for (u, a) in dual_mod.iter().zip(col.iter()) {
                    acc = (acc + arith::mul_mod(*u, *a, p)) % p;
                }
                if acc != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact rank of the generator-plus-Eisenstein column matrix at precision
/// rows 0..=b. Certified on both sides: the modular rank is a lower bound
/// by the homomorphism argument, and exactly verified left-kernel vectors
/// certify the upper bound.
pub fn rank_of_span(level: u64, weight: i64, b: usize) -> Result<usize> {
    let needed = sturm_bound(level, weight);
    if b < needed {
        return Err(Error::InsufficientPrecision { got: b, needed });
    }
    let cols = ColumnSet::full(level, weight)?;
    rank_of_columns(&cols, b)
}

pub(crate) fn rank_of_columns(cols: &ColumnSet, b: usize) -> Result<usize> {
    let nrows = b + 1;
    let mut nprimes = 2usize;
    let max_primes = 64usize;
    while nprimes <= max_primes {
        let primes = solver_primes(cols.field, 0, nprimes);
        let mut ctxs = Vec::new();
        let mut all_kernels: Vec<Vec<Vec<u64>>> = Vec::new(); // [prime][emb-flattened kernels]
        let mut ref_pivots: Option<Vec<usize>> = None;
        let mut consistent = true;
        for &p in &primes {
            let ctx = PrimeCtx::new(p, cols.field);
            let mut per_emb_kernels = Vec::new();
            for emb in 0..ctx.phi {
                let cols_mod = cols.columns_mod(&ctx, emb, b);
                // Transpose: rows of the reduction are the columns of A.
                let mut rows: Vec<Vec<u64>> =
                    cols_mod.iter().map(|c| c.to_vec()).collect();
                let pivots = rref(&mut rows, p);
                match &ref_pivots {
                    None => ref_pivots = Some(pivots.clone()),
                    Some(r) if *r != pivots => {
                        consistent = false;
                    }
                    _ => {}
                }
                // Left kernel of A = kernel of A^T; rows here are A^T rows.
                per_emb_kernels.push(kernel_basis(&rows, &pivots, nrows, p));
            }
            ctxs.push(ctx);
            all_kernels.push(per_emb_kernels.concat());
            if !consistent {
                break;
            }
        }
        if !consistent {
            nprimes += 2;
            continue;
        }
        let pivots = ref_pivots.unwrap();
        let rank = pivots.len();
        let kdim = nrows - rank;
        // Reconstruct and exactly verify each left-kernel vector.
        // all_kernels[prime] is phi * kdim vectors; regroup per (emb, k).
        let phi = ctxs[0].phi;
        let mut ok = true;
        for kv in 0..kdim {
            let data: Vec<Vec<Vec<u64>>> = ctxs
                .iter()
                .enumerate()
                .map(|(pi, _)| {
                    (0..phi)
                        .map(|e| all_kernels[pi][e * kdim + kv].clone())
                        .collect()
                })
                .collect();
            let Some(dual) = reconstruct_vector(&ctxs, &data, nrows) else {
                ok = false;
                break;
            };
            if !verify_dual_annihilates(cols, &dual, b, nprimes.max(8)) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(rank);
        }
        nprimes *= 2;
    }
    Err(Error::SolveDidNotStabilize(max_primes))
}

/// Solve for a representation of the target over the full generator set.
pub fn solve_represent(
    target: &FourierExpansion,
    level: u64,
    weight: i64,
) -> Result<SolveOutcome> {
    let cols = ColumnSet::full(level, weight)?;
    solve_over(target, &cols)
}

/// Solve over an explicit column subset (generators and Eisenstein basis
/// elements); used for restricted subsystems.
pub fn solve_with_columns(
    target: &FourierExpansion,
    level: u64,
    weight: i64,
    gens: Vec<GeneratorQuintuple>,
    eis: Vec<EisBasisElement>,
) -> Result<SolveOutcome> {
    let cols = ColumnSet::from_parts(level, weight, gens, eis);
    solve_over(target, &cols)
}

fn solve_over(target: &FourierExpansion, cols: &ColumnSet) -> Result<SolveOutcome> {
    if target.width() != 1 {
        return Err(Error::NonUnitWidth(target.width()));
    }
    if target.weight() != cols.weight {
        return Err(Error::MixedWeights(target.weight(), cols.weight));
    }
    let needed = sturm_bound(cols.level, cols.weight);
    if target.precision() < needed {
        return Err(Error::InsufficientPrecision { got: target.precision(), needed });
    }
    let b = target.precision().min(needed + 5);
    let nrows = b + 1;
    let ncols = cols.ncols();
    let field = lcm(cols.field, target.field_order());
    let cols = ColumnSet { field, ..ColumnSet::from_parts(cols.level, cols.weight, cols.gens.clone(), cols.eis.clone()) };

    let mut nprimes = 2usize;
    let max_primes = 64usize;
    let mut last_stable: Option<Vec<CyclotomicNumber>> = None;
    while nprimes <= max_primes {
        let primes = solver_primes(field, 0, nprimes);
        let mut ctxs: Vec<PrimeCtx> = Vec::new();
        // per prime, per emb: solution vector or dual vector
        let mut sol_data: Vec<Vec<Vec<u64>>> = Vec::new();
        let mut dual_data: Vec<Vec<Vec<u64>>> = Vec::new();
        let mut ref_pivots: Option<Vec<usize>> = None;
        let mut consistent = true;
        let mut inconsistent_system = false;
        for &p in &primes {
            let ctx = PrimeCtx::new(p, field);
            let mut emb_sols = Vec::new();
            let mut emb_duals = Vec::new();
            for emb in 0..ctx.phi {
                let a_cols = cols.columns_mod(&ctx, emb, b);
                let b_vec: Vec<u64> = (0..nrows).map(|n| ctx.embed(target.coeff(n))[emb]).collect();
                // Augmented [A | b | I].
                let mut rows: Vec<Vec<u64>> = (0..nrows)
                    .map(|r| {
                        let mut row = Vec::with_capacity(ncols + 1 + nrows);
                        for c in a_cols.iter() {
                            row.push(c[r]);
                        }
                        row.push(b_vec[r]);
                        for i in 0..nrows {
                            row.push(u64::from(i == r));
                        }
                        row
                    })
                    .collect();
                let pivots_all = rref(&mut rows, p);
                let pivots: Vec<usize> =
                    pivots_all.iter().copied().filter(|&c| c <= ncols).collect();
                match &ref_pivots {
                    None => ref_pivots = Some(pivots.clone()),
                    Some(r) if *r != pivots => consistent = false,
                    _ => {}
                }
                if !consistent {
                    break;
                }
                if pivots.contains(&ncols) {
                    // Inconsistent: the reducing row at the b-pivot gives
                    // the dual functional from the transform block.
                    inconsistent_system = true;
                    let r = pivots.iter().position(|&c| c == ncols).unwrap();
                    let dual: Vec<u64> = rows[r][ncols + 1..].to_vec();
                    emb_duals.push(dual);
                } else {
                    let mut x = vec![0u64; ncols];
                    for (r, &pc) in pivots.iter().enumerate() {
                        x[pc] = rows[r][ncols];
                    }
                    emb_sols.push(x);
                }
            }
            if !consistent {
                break;
            }
            ctxs.push(ctx);
            sol_data.push(emb_sols);
            dual_data.push(emb_duals);
        }
        if !consistent {
            nprimes += 2;
            continue;
        }
        if inconsistent_system {
            if let Some(dual) = reconstruct_vector(&ctxs, &dual_data, nrows) {
                let mut pairing = CyclotomicNumber::zero(1);
                for (u, n) in dual.iter().zip(0..=b) {
                    pairing = pairing.add(&u.mul(target.coeff(n)));
                }
                if !pairing.is_zero()
                    && verify_dual_annihilates(&cols, &dual, b, nprimes.max(8))
                {
                    return Ok(SolveOutcome::NotInSpan(NotInSpan { dual, pairing }));
                }
            }
            nprimes *= 2;
            continue;
        }
        match reconstruct_vector(&ctxs, &sol_data, ncols) {
            Some(x) => {
                let rep = assemble_representation(&cols, target, &x, b);
                match verify_split(&rep, target, needed, b) {
                    VerifyStatus::Full => return Ok(SolveOutcome::Representation(rep)),
                    VerifyStatus::SlackOnlyFailure => {
                        if let Some(prev) = &last_stable {
                            if *prev == x {
                                panic!(
                                    "exact solution verifies to the Sturm bound but fails a slack row: inconsistent matrix build"
                                );
                            }
                        }
                        last_stable = Some(x);
                    }
                    VerifyStatus::Failure => {
                        last_stable = Some(x);
                    }
                }
            }
            None => {}
        }
        nprimes *= 2;
    }
    Err(Error::SolveDidNotStabilize(max_primes))
}

enum VerifyStatus {
    Full,
    SlackOnlyFailure,
    Failure,
}

fn verify_split(
    rep: &ProductRepresentation,
    target: &FourierExpansion,
    sturm: usize,
    b: usize,
) -> VerifyStatus {
    let expansion = crate::cuspexp::expand_representation(rep, b).expect("valid labels");
    let field = lcm(expansion.field_order(), target.field_order());
    let e = expansion.embed_field(field).unwrap();
    let t = target.embed_field(field).unwrap();
    if e.agrees_with(&t, b) {
        return VerifyStatus::Full;
    }
    if e.agrees_with(&t, sturm) {
        return VerifyStatus::SlackOnlyFailure;
    }
    VerifyStatus::Failure
}

fn assemble_representation(
    cols: &ColumnSet,
    target: &FourierExpansion,
    x: &[CyclotomicNumber],
    b: usize,
) -> ProductRepresentation {
    let mut terms = Vec::new();
    for (g, xi) in cols.gens.iter().zip(x.iter()) {
        if xi.is_zero() {
            continue;
        }
        // Stored column = (math generator) / sqrt(r): the coefficient on
        // the true generator is x * sqrt(r) / r.
        let (_, r) = g.column_scalar();
        let coeff = if r == 1 {
            xi.clone()
        } else {
            xi.mul(&CyclotomicNumber::sqrt_integer(r))
                .scale(&Rational::new(BigInt::one(), BigInt::from(r)))
        };
        terms.push((coeff, g.clone()));
    }
    let mut eis_terms = Vec::new();
    for (i, xi) in x.iter().skip(cols.gens.len()).enumerate() {
        if !xi.is_zero() {
            eis_terms.push((xi.clone(), i));
        }
    }
    ProductRepresentation {
        level: cols.level,
        weight: cols.weight,
        terms,
        eis_terms,
        target_digest: target_digest(target),
        verified_to: b,
    }
}

/// True iff re-expanding the representation matches the target through q^b.
pub fn verify_representation(
    rep: &ProductRepresentation,
    target: &FourierExpansion,
    b: usize,
) -> Result<bool> {
    if target.precision() < b {
        return Err(Error::InsufficientPrecision { got: target.precision(), needed: b });
    }
    let expansion = crate::cuspexp::expand_representation(rep, b)?;
    let field = lcm(expansion.field_order(), target.field_order());
    Ok(expansion
        .embed_field(field)
        .unwrap()
        .agrees_with(&target.embed_field(field).unwrap(), b))
}

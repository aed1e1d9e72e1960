//! Exact dense matrix construction and plain exact elimination over the
//! cyclotomic field. The modular path in `solve` is the workhorse; this
//! route exists for small systems and as the independent side of dual-route
//! checks in tests.

use crate::arith::lcm;
use crate::eisenstein::{eis_expansion, EisBasisElement, EisLabel};
use crate::error::Result;
use crate::exactmath::CyclotomicNumber;

use super::GeneratorQuintuple;

/// Exact column-major matrix: columns are generator products (with their
/// full scalars, square roots embedded cyclotomically) followed by
/// Eisenstein basis elements; rows are coefficients 0..=b.
pub fn build_matrix(
    gens: &[GeneratorQuintuple],
    eis: &[(EisBasisElement, i64)],
    b: usize,
) -> Result<Vec<Vec<CyclotomicNumber>>> {
    let mut cols = Vec::with_capacity(gens.len() + eis.len());
    for g in gens {
        let (l1, l2) = g.factor_labels();
        let f1 = eis_expansion(&EisLabel { d: 1, ..l1.clone() }, b.div_ceil(l1.d as usize))?;
        let f2 = eis_expansion(&EisLabel { d: 1, ..l2.clone() }, b.div_ceil(l2.d as usize))?;
        // Stretch without scalars, then apply the exact generator scalar.
        let s1 = stretch(&f1, l1.d);
        let s2 = stretch(&f2, l2.d);
        let product = s1.multiply(&s2).truncate(b);
        let scaled = product.scale(&g.full_scalar());
        cols.push(scaled.coeffs().to_vec());
    }
    for (e, weight) in eis {
        let f = e.expansion(*weight, b);
        cols.push(f.coeffs().to_vec());
    }
    Ok(cols)
}

fn stretch(
    f: &crate::qexp::FourierExpansion,
    e: u64,
) -> crate::qexp::FourierExpansion {
    if e == 1 {
        return f.clone();
    }
    let b = f.precision() * e as usize;
    let mut coeffs = vec![CyclotomicNumber::zero(f.field_order()); b + 1];
    for (n, c) in f.coeffs().iter().enumerate() {
        coeffs[n * e as usize] = c.clone();
    }
    crate::qexp::FourierExpansion::new(f.weight(), f.width(), f.field_order(), coeffs)
}

/// Exact rank by Gauss elimination over the common cyclotomic field.
pub fn exact_rank(columns: &[Vec<CyclotomicNumber>]) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let mut field = 1u64;
    for col in columns {
        for c in col {
            field = lcm(field, c.order());
        }
    }
    let nrows = columns[0].len();
    let mut rows: Vec<Vec<CyclotomicNumber>> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r].embed(field).unwrap()).collect())
        .collect();
    let ncols = columns.len();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pr) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().unwrap();
        for x in rows[rank].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c2 in 0..ncols {
                    let t = f.mul(&rows[rank][c2]);
                    rows[r][c2] = rows[r][c2].sub(&t);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Exact solve A x = b with the canonical pivot order (free variables 0).
/// Returns None when inconsistent.
pub fn exact_solve(
    columns: &[Vec<CyclotomicNumber>],
    rhs: &[CyclotomicNumber],
) -> Option<Vec<CyclotomicNumber>> {
    let mut field = 1u64;
    for col in columns {
        for c in col {
            field = lcm(field, c.order());
        }
    }
    for c in rhs {
        field = lcm(field, c.order());
    }
    let nrows = rhs.len();
    let ncols = columns.len();
    let mut rows: Vec<Vec<CyclotomicNumber>> = (0..nrows)
        .map(|r| {
            let mut row: Vec<CyclotomicNumber> =
                columns.iter().map(|c| c[r].embed(field).unwrap()).collect();
            row.push(rhs[r].embed(field).unwrap());
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..=ncols {
        let Some(pr) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if col == ncols {
            return None; // pivot in the rhs column: inconsistent
        }
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().unwrap();
        for x in rows[rank].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..nrows {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c2 in 0..=ncols {
                    let t = f.mul(&rows[rank][c2]);
                    rows[r][c2] = rows[r][c2].sub(&t);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    let mut x = vec![CyclotomicNumber::zero(field); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][ncols].clone();
    }
    Some(x)
}

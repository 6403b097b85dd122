//! Exact linear algebra helpers: rank certificates modulo a prime and
//! Gaussian elimination over `Q(q)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nilhecke::MultiPoly;
use crate::qring::RatFn;

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(c: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let mut r = c % &p;
    if r < BigInt::zero() {
        r += &p;
    }
    r.to_u64().expect("residue fits")
}

/// Rank modulo `2^61 - 1` of polynomials viewed as coefficient vectors.
/// Full rank modulo a prime certifies full rank over `Q`.
pub fn rank_mod_p(vectors: &[MultiPoly]) -> usize {
    let mut cols: BTreeMap<&Vec<u32>, usize> = BTreeMap::new();
    for v in vectors {
        for (e, _) in v.terms() {
            let n = cols.len();
            cols.entry(e).or_insert(n);
        }
    }
    let mut rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0u64; cols.len()];
            for (e, c) in v.terms() {
                row[cols[e]] = reduce(c);
            }
            row
        })
        .collect();
    let ncols = cols.len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = powmod(rows[rank][col], P - 2);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| mulmod(x, inv)).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][col];
            if f == 0 {
                continue;
            }
            for c in col..ncols {
                let sub = mulmod(f, pivot_row[c]);
                rows[r][c] = (rows[r][c] + P - sub) % P;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form of an augmented system over `Q(q)`.
struct Echelon {
    rows: Vec<Vec<RatFn>>,
    pivots: Vec<usize>,
    ncols: usize,
}

fn echelon(a: &[Vec<RatFn>], rhs: &[Vec<RatFn>]) -> Echelon {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<RatFn>> = a
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().chain(b.iter()).cloned().collect())
        .collect();
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        // prefer the pivot candidate with the simplest entry
        let piv = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].num().num_terms() + rows[r][col].den().num_terms());
        let Some(piv) = piv else { continue };
        rows.swap(rank, piv);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for c in col..width {
            if !rows[rank][c].is_zero() {
                rows[rank][c] = &rows[rank][c] * &inv;
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..width {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&f * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    Echelon { rows, pivots, ncols }
}

/// Solves `A X = B` for several right-hand sides at once, returning the
/// solution in which every free variable is zero. `a` is a list of rows;
/// `rhs[r]` lists the right-hand side entries of row `r`.
pub fn solve_many(a: &[Vec<RatFn>], rhs: &[Vec<RatFn>]) -> Result<Vec<Vec<RatFn>>> {
    let nrhs = rhs.first().map_or(0, |r| r.len());
    let e = echelon(a, rhs);
    let rank = e.pivots.len();
    for row in &e.rows[rank..] {
        if row[e.ncols..].iter().any(|x| !x.is_zero()) {
            return Err(Error::Inconsistent("right-hand side is not in the column space".into()));
        }
    }
    let mut sol = vec![vec![RatFn::zero(); nrhs]; e.ncols];
    for (r, &col) in e.pivots.iter().enumerate() {
        for k in 0..nrhs {
            sol[col][k] = e.rows[r][e.ncols + k].clone();
        }
    }
    Ok(sol)
}

/// Solves `A x = b`, setting free variables to zero.
pub fn solve(a: &[Vec<RatFn>], b: &[RatFn]) -> Result<Vec<RatFn>> {
    let rhs: Vec<Vec<RatFn>> = b.iter().map(|x| vec![x.clone()]).collect();
    Ok(solve_many(a, &rhs)?.into_iter().map(|mut v| v.remove(0)).collect())
}

/// A basis of the null space of `A`.
pub fn kernel(a: &[Vec<RatFn>]) -> Vec<Vec<RatFn>> {
    let empty: Vec<Vec<RatFn>> = vec![vec![]; a.len()];
    let e = echelon(a, &empty);
    let free: Vec<usize> = (0..e.ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RatFn::zero(); e.ncols];
            v[f] = RatFn::one();
            for (r, &col) in e.pivots.iter().enumerate() {
                v[col] = -&e.rows[r][f];
            }
            v
        })
        .collect()
}

/// Row reduces `[A | B]` and returns the pivot columns of `A` together with
/// the right block. With `B = I` the right block is a matrix `T` such that
/// `T A` is in reduced row echelon form.
pub fn echelon_transform(a: &[Vec<RatFn>], b: &[Vec<RatFn>]) -> (Vec<usize>, Vec<Vec<RatFn>>) {
    let e = echelon(a, b);
    let right = e.rows.into_iter().map(|r| r[e.ncols..].to_vec()).collect();
    (e.pivots, right)
}

pub fn rank(a: &[Vec<RatFn>]) -> usize {
    let empty: Vec<Vec<RatFn>> = vec![vec![]; a.len()];
    echelon(a, &empty).pivots.len()
}

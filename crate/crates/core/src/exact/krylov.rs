//! Krylov rank over the rationals and the main-eigenvalue count of a divisor.
//!
//! For a diagonalizable `M`, write `v = sum_lambda v_lambda` with each
//! `v_lambda` in the `lambda`-eigenspace of `M`. The vectors `M^j v` span
//! the span of the nonzero components, so the rank of
//! `[v, Mv, ..., M^{k-1} v]` is the number of eigenvalues with
//! `v_lambda != 0`. The component `v_lambda` vanishes exactly when `v` is
//! orthogonal to the `lambda`-eigenspace of `M^T`.
//!
//! A generalized Bethe divisor `B` is tridiagonal with positive off-diagonal
//! products; conjugating by `diag(sqrt|C_i|)` makes it symmetric, so `B` is
//! diagonalizable with real eigenvalues. An eigenvalue is main for the
//! divisor when its `B^T`-eigenspace is not orthogonal to `e_k`, so the main
//! count is `krylov_rank(B, e_k)`. The same number is `krylov_rank(B^T, s)`
//! with `s` the cell sizes, and the rank of the walk matrix
//! `[e, Ae, ...] = C [e_k, B e_k, ...]` of the whole graph.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};
use crate::partition::IntMatrix;

pub fn to_rational(m: &IntMatrix) -> Vec<Vec<Rational>> {
    (0..m.nrows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Rank by Gaussian elimination with exact rationals. The pivot is the
/// first nonzero entry in the column; the pivot row is normalized to a
/// leading 1 before it is used.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank][col..].iter_mut() {
            *x *= &inv;
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= &factor * p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of an integer matrix by fraction-free elimination. Each updated row
/// is divided by the gcd of its entries, which keeps the entries small
/// without leaving the integers.
pub fn rank_integer(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot[col].gcd(&row[col]);
            let (a, b) = (&pivot[col] / &g, &row[col] / &g);
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = &a * &*x - &b * p;
            }
            let content = row[col..].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if content > BigInt::one() {
                for x in row[col..].iter_mut() {
                    *x /= &content;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn as_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// Integer Krylov vectors, when `m` and `v` have only integer entries.
fn integer_krylov_vectors(m: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Vec<BigInt>>> {
    let m: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(as_integer).collect())
        .collect::<Option<_>>()?;
    let mut cur: Vec<BigInt> = v.iter().map(as_integer).collect::<Option<_>>()?;
    let mut out = Vec::with_capacity(m.len());
    for _ in 0..m.len() {
        let next = m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&cur)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        out.push(cur);
        cur = next;
    }
    Some(out)
}

fn check_shape(m: &[Vec<Rational>], v: &[Rational]) -> Result<()> {
    let k = m.len();
    if m.iter().any(|row| row.len() != k) || v.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "Krylov input needs a square matrix and a matching vector, got {k} rows and a vector of length {}",
            v.len()
        )));
    }
    Ok(())
}

/// The Krylov vectors `v, Mv, ..., M^{k-1} v`.
pub fn krylov_vectors(m: &[Vec<Rational>], v: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    check_shape(m, v)?;
    let k = m.len();
    let mut out = Vec::with_capacity(k);
    let mut cur = v.to_vec();
    for _ in 0..k {
        let next = mat_vec(m, &cur);
        out.push(cur);
        cur = next;
    }
    Ok(out)
}

/// Rank over the rationals of `[v, Mv, ..., M^{k-1} v]`.
pub fn krylov_rank(m: &[Vec<Rational>], v: &[Rational]) -> Result<usize> {
    // rank of the columns equals rank of the same vectors laid out as rows
    check_shape(m, v)?;
    match integer_krylov_vectors(m, v) {
        Some(ints) => Ok(rank_integer(ints)),
        None => Ok(rank(krylov_vectors(m, v)?)),
    }
}

/// Rejects anything that is not tridiagonal with positive sub- and
/// superdiagonal entries.
pub fn check_jacobi(b: &IntMatrix) -> Result<()> {
    if !b.is_square() || b.nrows() == 0 {
        return Err(Error::NotJacobi(format!(
            "shape {}x{}",
            b.nrows(),
            b.ncols()
        )));
    }
    if !b.is_tridiagonal() {
        return Err(Error::NotJacobi("entries off the tridiagonal band".into()));
    }
    let off = b.superdiagonal().into_iter().chain(b.subdiagonal());
    if let Some(x) = off.into_iter().find(|&x| x <= 0) {
        return Err(Error::NotJacobi(format!(
            "off-diagonal entry {x} is not positive"
        )));
    }
    Ok(())
}

/// Number of main eigenvalues of a generalized Bethe divisor, as the
/// Krylov rank of `B` started from the all-ones vector.
pub fn main_count_divisor(b: &IntMatrix) -> Result<usize> {
    check_jacobi(b)?;
    let ones = vec![Rational::one(); b.nrows()];
    krylov_rank(&to_rational(b), &ones)
}

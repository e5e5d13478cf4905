use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{divisor_matrix, IntMatrix};
use crate::tree::counterexample_degrees;

/// The certificate vector for eigenvalue `-2` of the counterexample divisor:
/// `(1, -2, -1, 2(k-3), -4(k-4), 4(k-5), ..., -8, 4)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiVector(#[serde(serialize_with = "serialize_big_ints")] Vec<BigInt>);

fn serialize_big_ints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl XiVector {
    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }
}

pub fn xi_vector(k: usize) -> Result<XiVector> {
    if k < 6 || !k.is_multiple_of(2) {
        return Err(Error::BadCounterexampleLevels(k));
    }
    let k = k as i64;
    let mut entries: Vec<BigInt> = [1, -2, -1, 2 * (k - 3)]
        .into_iter()
        .map(BigInt::from)
        .collect();
    for j in 1..=k - 4 {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        entries.push(BigInt::from(sign * 4 * (k - 3 - j)));
    }
    Ok(XiVector(entries))
}

/// Outcome of checking `B^T xi = lambda xi` and `e^T xi = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiReport {
    pub eigen_ok: bool,
    pub orthogonal_ok: bool,
    /// First (1-based) coordinate where `B^T xi - lambda xi` is nonzero.
    pub offending_index: Option<usize>,
    #[serde(serialize_with = "serialize_big_int")]
    pub entry_sum: BigInt,
}

fn serialize_big_int<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn check_eigenvector(b: &IntMatrix, xi: &[BigInt], lambda: i64) -> Result<XiReport> {
    let k = b.nrows();
    if !b.is_square() || xi.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "B is {}x{}, vector has length {}",
            b.nrows(),
            b.ncols(),
            xi.len()
        )));
    }
    let lambda = BigInt::from(lambda);
    let offending_index = (0..k).find(|&j| {
        // (B^T xi)_j = sum_i b_ij xi_i
        let lhs: BigInt = (0..k).map(|i| BigInt::from(b.get(i, j)) * &xi[i]).sum();
        !(lhs - &lambda * &xi[j]).is_zero()
    });
    let entry_sum: BigInt = xi.iter().sum();
    Ok(XiReport {
        eigen_ok: offending_index.is_none() && xi.iter().any(|x| !x.is_zero()),
        orthogonal_ok: entry_sum.is_zero(),
        offending_index: offending_index.map(|j| j + 1),
        entry_sum,
    })
}

pub fn verify_xi_identity(k: usize) -> Result<XiReport> {
    let b = divisor_matrix(&counterexample_degrees(k)?);
    check_eigenvector(&b, xi_vector(k)?.entries(), -2)
}

/// True if the entries from position 5 on strictly alternate in sign.
pub fn tail_alternates(xi: &XiVector) -> bool {
    xi.entries()[4..]
        .windows(2)
        .all(|w| w[0].is_positive() != w[1].is_positive() && !w[0].is_zero() && !w[1].is_zero())
}

use super::{Poly, Rational};
use crate::error::{Error, Result};
use crate::partition::IntMatrix;
use crate::tree::{check_cap, DegreeSequence};

/// `det(xI - B)` for a tridiagonal `B` with zero diagonal, by the three-term
/// recurrence `p_i = x p_{i-1} - b_{i-1,i} b_{i,i-1} p_{i-2}`.
pub fn charpoly_tridiagonal(b: &IntMatrix) -> Result<Poly> {
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
    if let Some(i) = (0..b.nrows()).find(|&i| b.get(i, i) != 0) {
        return Err(Error::NotJacobi(format!(
            "diagonal entry {} is {}, expected 0",
            i + 1,
            b.get(i, i)
        )));
    }
    let x = Poly::x();
    let mut prev = Poly::one();
    let mut cur = x.clone();
    for i in 1..b.nrows() {
        let coupling = Rational::from_integer((b.get(i - 1, i) * b.get(i, i - 1)).into());
        let next = &(&x * &cur) - &prev.scale(&coupling);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `det(xI - A)` of the whole tree, using one pair of polynomials per level.
///
/// For a vertex on a given level, `phi` is the characteristic polynomial of
/// the subtree hanging from it and `psi` that of the same subtree with its
/// root deleted. Leaves have `phi = x`, `psi = 1`. A root with `c` copies of
/// the child subtree `S` has
/// `phi = phi_S^{c-1} (x phi_S - c psi_S)` and `psi = phi_S^c`.
pub fn charpoly_tree(ds: &DegreeSequence, cap: u64) -> Result<Poly> {
    check_cap(ds, cap)?;
    let x = Poly::x();
    let mut phi = x.clone();
    let mut psi = Poly::one();
    for level in (0..ds.levels() - 1).rev() {
        let c = u64::from(ds.children_at(level));
        let base = phi.pow(c - 1);
        let c_rat = Rational::from_integer(c.into());
        let inner = &(&x * &phi) - &psi.scale(&c_rat);
        psi = &base * &phi;
        phi = &base * &inner;
    }
    Ok(phi)
}

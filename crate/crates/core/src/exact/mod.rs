//! Exact big-integer and rational arithmetic: Krylov rank, characteristic
//! polynomials, divisibility, and the eigenvector certificate of the
//! counterexample family.

mod charpoly;
mod krylov;
mod poly;
mod xi;

pub use charpoly::{charpoly_tree, charpoly_tridiagonal};
pub use krylov::{
    check_jacobi, krylov_rank, krylov_vectors, main_count_divisor, mat_vec, rank, rank_integer,
    to_rational,
};
pub use poly::{poly_divides, Poly};
pub use xi::{
    check_eigenvector, tail_alternates, verify_xi_identity, xi_vector, XiReport, XiVector,
};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

//! Generalized Bethe trees and their main eigenvalues.
//!
//! The exact path works on the `k x k` divisor matrix of the level
//! partition and counts main eigenvalues by rational Krylov rank. The
//! numeric path diagonalizes the full adjacency matrix and serves as an
//! independent cross-check.

pub mod error;
pub mod exact;
pub mod partition;
pub mod search;
pub mod spectra;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{main_count_divisor, Poly, Rational};
pub use partition::{divisor_matrix, DivisorMatrix, IntMatrix, Partition};
pub use spectra::{MainSpectrumReport, Method, SpectraConfig};
pub use tree::{
    build_tree, counterexample_degrees, Adjacency, BetheTree, DegreeSequence, TreeClass,
};

//! Floating-point spectra of adjacency matrices and numeric detection of
//! main eigenvalues. This path cross-checks the exact divisor computations;
//! when the two disagree the exact result is authoritative.

mod eigen;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::IntMatrix;

/// Tolerances and size limits for the numeric path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectraConfig {
    /// Bound on `|Av - lambda v| / |A|` for every eigenpair.
    pub tol_resid: f64,
    /// Consecutive sorted eigenvalues closer than this share a cluster.
    pub tol_cluster: f64,
    /// A cluster is main when its projection of `e` exceeds `tol_main * sqrt(n)`.
    pub tol_main: f64,
    /// Relative singular-value cutoff for the walk-matrix rank.
    pub tol_rank: f64,
    pub max_order: usize,
}

impl Default for SpectraConfig {
    fn default() -> Self {
        SpectraConfig {
            tol_resid: 1e-10,
            tol_cluster: 1e-7,
            tol_main: 1e-8,
            tol_rank: 1e-9,
            max_order: 2000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `i` pairs with `eigenvalues[i]`.
    pub eigenvectors: DMatrix<f64>,
}

impl EigenDecomposition {
    /// Largest entry of `|V^T V - I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let v = &self.eigenvectors;
        let g = v.transpose() * v;
        let n = g.nrows();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (g[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max)
    }
}

fn check_input(a: &DMatrix<f64>, cfg: &SpectraConfig) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            a.nrows(),
            a.ncols()
        )));
    }
    if a.nrows() > cfg.max_order {
        return Err(Error::TooLarge {
            projected: a.nrows().to_string(),
            cap: cfg.max_order as u64,
        });
    }
    let n = a.nrows();
    for i in 0..n {
        for j in i + 1..n {
            if a[(i, j)] != a[(j, i)] {
                return Err(Error::Asymmetric { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Full eigendecomposition of a symmetric matrix. Every returned pair is
/// checked against `cfg.tol_resid`.
pub fn symmetric_eigen(a: &DMatrix<f64>, cfg: &SpectraConfig) -> Result<EigenDecomposition> {
    check_input(a, cfg)?;
    let (eigenvalues, eigenvectors) = eigen::tridiagonal_ql(a)?;

    let norm = eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let bound = cfg.tol_resid * norm;
    let av = a * &eigenvectors;
    for (i, &lambda) in eigenvalues.iter().enumerate() {
        let residual = (av.column(i) - eigenvectors.column(i) * lambda).norm();
        if residual > bound {
            return Err(Error::Residual {
                index: i,
                residual,
                bound,
            });
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Numeric,
}

/// Floats in reports are rounded to 12 decimals so output is stable.
fn fixed<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rounded: f64 = format!("{x:.12}").parse().unwrap_or(*x);
    // avoid "-0.0"
    s.serialize_f64(if rounded == 0.0 { 0.0 } else { rounded })
}

fn fixed_sci<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rounded: f64 = format!("{x:.6e}").parse().unwrap_or(*x);
    s.serialize_f64(rounded)
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, Serialize)]
pub struct Cluster {
    #[serde(rename = "value", serialize_with = "fixed")]
    pub eigenvalue: f64,
    #[serde(rename = "mult")]
    pub multiplicity: usize,
    /// `|P_lambda e|`, the length of the projection of the all-ones vector
    /// onto the cluster's eigenspace.
    #[serde(rename = "proj", serialize_with = "fixed_sci")]
    pub projection_norm: f64,
    #[serde(rename = "main")]
    pub is_main: bool,
    /// Projection within a factor 10 of the main threshold.
    #[serde(skip_serializing_if = "is_false")]
    pub borderline: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MainSpectrumReport {
    pub method: Method,
    pub n: usize,
    pub clusters: Vec<Cluster>,
    pub main_count: usize,
}

impl MainSpectrumReport {
    /// The main spectrum, ascending.
    pub fn main_eigenvalues(&self) -> Vec<f64> {
        self.clusters
            .iter()
            .filter(|c| c.is_main)
            .map(|c| c.eigenvalue)
            .collect()
    }

    pub fn cluster_near(&self, value: f64, tol: f64) -> Option<&Cluster> {
        self.clusters
            .iter()
            .find(|c| (c.eigenvalue - value).abs() <= tol)
    }

    pub fn has_borderline(&self) -> bool {
        self.clusters.iter().any(|c| c.borderline)
    }
}

pub fn main_spectrum_from(eig: &EigenDecomposition, cfg: &SpectraConfig) -> MainSpectrumReport {
    let n = eig.eigenvalues.len();
    let v = &eig.eigenvectors;
    let threshold = cfg.tol_main * (n as f64).sqrt();

    let mut clusters = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= cfg.tol_cluster {
            end += 1;
        }
        let mut projection = nalgebra::DVector::<f64>::zeros(n);
        for i in start..end {
            let col = v.column(i);
            let weight: f64 = col.sum();
            projection.axpy(weight, &col, 1.0);
        }
        let projection_norm = projection.norm();
        let mean = eig.eigenvalues[start..end].iter().sum::<f64>() / (end - start) as f64;
        clusters.push(Cluster {
            eigenvalue: mean,
            multiplicity: end - start,
            projection_norm,
            is_main: projection_norm > threshold,
            borderline: projection_norm > threshold / 10.0 && projection_norm < threshold * 10.0,
        });
        start = end;
    }
    let main_count = clusters.iter().filter(|c| c.is_main).count();
    MainSpectrumReport {
        method: Method::Numeric,
        n,
        clusters,
        main_count,
    }
}

pub fn main_spectrum_numeric(a: &DMatrix<f64>, cfg: &SpectraConfig) -> Result<MainSpectrumReport> {
    let eig = symmetric_eigen(a, cfg)?;
    Ok(main_spectrum_from(&eig, cfg))
}

/// Numerical rank of the walk matrix `[e, Ae, ..., A^{n-1} e]`, each column
/// scaled to unit length. Singular values are computed by `nalgebra`'s SVD.
pub fn walk_matrix_rank(a: &DMatrix<f64>, cfg: &SpectraConfig) -> Result<usize> {
    check_input(a, cfg)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(0);
    }
    let mut walk = DMatrix::<f64>::zeros(n, n);
    let mut col = nalgebra::DVector::<f64>::from_element(n, 1.0);
    for j in 0..n {
        let norm = col.norm();
        if norm == 0.0 {
            break;
        }
        col /= norm;
        walk.set_column(j, &col);
        col = a * &col;
    }
    let sv = walk.singular_values();
    let largest = sv.max();
    Ok(sv.iter().filter(|&&s| s > cfg.tol_rank * largest).count())
}

/// Eigenvalues of a tridiagonal divisor with positive off-diagonal products,
/// via the symmetric matrix with off-diagonal entries `sqrt(b_{i,i+1} b_{i+1,i})`.
pub fn divisor_eigenvalues(b: &IntMatrix, cfg: &SpectraConfig) -> Result<Vec<f64>> {
    crate::exact::check_jacobi(b)?;
    let k = b.nrows();
    let sym = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            b.get(i, i) as f64
        } else if i.abs_diff(j) == 1 {
            ((b.get(i, j) * b.get(j, i)) as f64).sqrt()
        } else {
            0.0
        }
    });
    Ok(symmetric_eigen(&sym, cfg)?.eigenvalues)
}

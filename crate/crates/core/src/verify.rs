//! Runnable checks of the known facts about main spectra of generalized
//! Bethe trees, each producing a self-describing [`VerificationOutcome`].

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{
    charpoly_tree, charpoly_tridiagonal, main_count_divisor, poly_divides, verify_xi_identity,
    Poly, Rational,
};
use crate::partition::{
    characteristic_matrix, check_compatibility, check_similarity, divisor_matrix, is_equitable,
    level_partition, IntMatrix,
};
use crate::spectra::{main_spectrum_numeric, walk_matrix_rank, SpectraConfig};
use crate::tree::{
    bethe_degrees, build_tree_capped, check_cap, counterexample_degrees, quasi_regular_degrees,
    DegreeSequence,
};

pub mod claim {
    pub const BETHE_QUASI_REGULAR: &str = "bethe-quasi-regular-k-main";
    pub const HOU_FAMILY: &str = "hou-family-two-main";
    pub const COUNTEREXAMPLE: &str = "counterexample-deficient";
    pub const PARTITION_IDENTITIES: &str = "level-partition-identities";
    pub const CHARPOLY_DIVIDES: &str = "divisor-charpoly-divides-tree";
    pub const MAIN_SPECTRUM_EQUALITY: &str = "tree-divisor-same-main-spectrum";
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationOutcome {
    pub claim_id: String,
    pub instance: Value,
    pub expected: String,
    pub observed: Value,
    pub pass: bool,
}

fn main_count_of(ds: &DegreeSequence) -> Result<usize> {
    main_count_divisor(&divisor_matrix(ds))
}

/// `B_{d,k}` and `Q_{d,k}` both have exactly `k` main eigenvalues.
pub fn verify_bethe_quasi_regular(d: u32, k: usize) -> Result<VerificationOutcome> {
    if d < 2 || k < 3 {
        return Err(Error::SearchConfig(format!(
            "need d >= 2 and k >= 3, got d = {d}, k = {k}"
        )));
    }
    let bethe = bethe_degrees(d, k)?;
    let quasi = quasi_regular_degrees(d, k)?;
    let bethe_count = main_count_of(&bethe)?;
    let quasi_count = main_count_of(&quasi)?;
    Ok(VerificationOutcome {
        claim_id: claim::BETHE_QUASI_REGULAR.into(),
        instance: json!({ "d": d, "k": k }),
        expected: format!("both B_{{{d},{k}}} and Q_{{{d},{k}}} have exactly {k} main eigenvalues"),
        observed: json!({
            "bethe": { "degrees": bethe, "main_count": bethe_count },
            "quasi_regular": { "degrees": quasi, "main_count": quasi_count },
        }),
        pass: bethe_count == k && quasi_count == k,
    })
}

/// `B(a^2 - a + 1, a)` has three levels but only two main eigenvalues.
pub fn verify_hou(alpha: u32) -> Result<VerificationOutcome> {
    if alpha < 2 {
        return Err(Error::SearchConfig(format!("need alpha >= 2, got {alpha}")));
    }
    let ds = DegreeSequence::new(vec![alpha * alpha - alpha + 1, alpha])?;
    let count = main_count_of(&ds)?;
    Ok(VerificationOutcome {
        claim_id: claim::HOU_FAMILY.into(),
        instance: json!({ "alpha": alpha, "degrees": ds }),
        expected: "exactly 2 main eigenvalues".into(),
        observed: json!({ "main_count": count, "levels": 3 }),
        pass: count == 2,
    })
}

/// For even `k >= 6`, `B(5, k-3, 5, 3, 2, ..., 2)` has at most `k - 1` main
/// eigenvalues: the certificate `xi` satisfies `B^T xi = -2 xi` and sums to
/// zero, `-2` is a root of the divisor's characteristic polynomial, and the
/// exact main count is at most `k - 1`.
pub fn verify_counterexample(k: usize) -> Result<VerificationOutcome> {
    let ds = counterexample_degrees(k)?;
    let b = divisor_matrix(&ds);
    let xi = verify_xi_identity(k)?;
    let count = main_count_divisor(&b)?;
    let at_minus_two = charpoly_tridiagonal(&b)?.eval(&Rational::from_integer((-2).into()));
    let pass = xi.eigen_ok && xi.orthogonal_ok && count < k && at_minus_two.is_zero();
    Ok(VerificationOutcome {
        claim_id: claim::COUNTEREXAMPLE.into(),
        instance: json!({ "k": k, "degrees": ds }),
        expected: format!(
            "B^T xi = -2 xi, sum(xi) = 0, p(-2) = 0, main count <= {}",
            k - 1
        ),
        observed: json!({
            "xi": xi,
            "charpoly_at_minus_two": at_minus_two.to_string(),
            "main_count": count,
        }),
        pass,
    })
}

/// The level partition is equitable with the closed-form divisor as its
/// table, `AC = CB`, and `b_ij |C_i| = b_ji |C_j|`.
pub fn verify_partition_identities(ds: &DegreeSequence, cap: u64) -> Result<VerificationOutcome> {
    let tree = build_tree_capped(ds, cap)?;
    let adj = tree.adjacency();
    let part = level_partition(&tree);
    let b = divisor_matrix(ds);
    let table = is_equitable(&adj, &part)?;
    let equitable = table.is_some();
    let table_matches = table.as_ref() == Some(&b);
    let c = characteristic_matrix(&part);
    let ac_cb = check_compatibility(&adj, &c, &b)?;
    let sizes = part.cell_sizes();
    let similar = check_similarity(&b, &sizes)?;
    let mut diag = IntMatrix::zeros(sizes.len(), sizes.len());
    for (i, &s) in sizes.iter().enumerate() {
        diag.set(i, i, s as i64);
    }
    let gram_ok = c.gram() == diag;
    Ok(VerificationOutcome {
        claim_id: claim::PARTITION_IDENTITIES.into(),
        instance: json!({ "degrees": ds }),
        expected: "equitable with closed-form divisor; AC = CB; b_ij|C_i| = b_ji|C_j|; C^T C = diag(|C_i|)"
            .into(),
        observed: json!({
            "equitable": equitable,
            "table_matches_closed_form": table_matches,
            "ac_equals_cb": ac_cb,
            "edge_count_symmetry": similar,
            "gram_diagonal": gram_ok,
            "cell_sizes": sizes,
        }),
        pass: equitable && table_matches && ac_cb && similar && gram_ok,
    })
}

/// `det(xI - B)` divides `det(xI - A)` exactly.
pub fn verify_charpoly_divides(ds: &DegreeSequence, cap: u64) -> Result<VerificationOutcome> {
    let divisor_poly = charpoly_tridiagonal(&divisor_matrix(ds))?;
    let tree_poly = charpoly_tree(ds, cap)?;
    let divides = poly_divides(&divisor_poly, &tree_poly)?;
    Ok(VerificationOutcome {
        claim_id: claim::CHARPOLY_DIVIDES.into(),
        instance: json!({ "degrees": ds }),
        expected: "zero remainder".into(),
        observed: json!({
            "divisor_degree": divisor_poly.degree(),
            "tree_degree": tree_poly.degree(),
            "divides": divides,
        }),
        pass: divides,
    })
}

/// True if `p` changes sign (or vanishes) on `[center - radius, center + radius]`.
pub fn brackets_root(p: &Poly, center: f64, radius: f64) -> bool {
    let (Some(c), Some(r)) = (Rational::from_float(center), Rational::from_float(radius)) else {
        return false;
    };
    let lo = p.eval(&(&c - &r));
    let hi = p.eval(&(&c + &r));
    lo.is_zero() || hi.is_zero() || lo.is_negative() != hi.is_negative()
}

/// The numeric main spectrum of the full tree agrees with the exact divisor
/// count, and every numeric main eigenvalue sits within `tol_cluster` of a
/// root of the divisor's characteristic polynomial.
pub fn verify_main_spectrum_equality(
    ds: &DegreeSequence,
    cfg: &SpectraConfig,
) -> Result<VerificationOutcome> {
    let n = check_cap(ds, cfg.max_order as u64)?;
    let tree = build_tree_capped(ds, n)?;
    let a = tree.adjacency().to_dense();
    let b = divisor_matrix(ds);
    let exact = main_count_divisor(&b)?;
    let p = charpoly_tridiagonal(&b)?;
    let report = main_spectrum_numeric(&a, cfg)?;
    let walk = walk_matrix_rank(&a, cfg)?;
    let mains = report.main_eigenvalues();
    let unbracketed: Vec<f64> = mains
        .iter()
        .copied()
        .filter(|&x| !brackets_root(&p, x, cfg.tol_cluster))
        .collect();
    Ok(VerificationOutcome {
        claim_id: claim::MAIN_SPECTRUM_EQUALITY.into(),
        instance: json!({ "degrees": ds, "n": n }),
        expected: "numeric main count = exact divisor main count; numeric main eigenvalues bracket divisor roots"
            .into(),
        observed: json!({
            "exact_main_count": exact,
            "numeric_main_count": report.main_count,
            "walk_matrix_rank": walk,
            "main_eigenvalues": mains.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>(),
            "unbracketed": unbracketed,
            "borderline": report.has_borderline(),
        }),
        pass: exact == report.main_count && unbracketed.is_empty(),
    })
}

/// Default instances used by the `all` suite.
/// Trees small enough for the full-tree checks in the default suite.
pub const SMALL_INSTANCES: &[&str] = &["3", "4", "3,2", "3,3,2", "2,3,3", "4,3,2", "5,3,5,3,2"];

pub fn default_suite(cfg: &SpectraConfig) -> Vec<Result<VerificationOutcome>> {
    let mut out = Vec::new();
    for d in 2..=4 {
        for k in 3..=8 {
            out.push(verify_bethe_quasi_regular(d, k));
        }
    }
    for alpha in 2..=6 {
        out.push(verify_hou(alpha));
    }
    for k in (6..=40).step_by(2) {
        out.push(verify_counterexample(k));
    }
    for s in SMALL_INSTANCES {
        let ds: DegreeSequence = s.parse().expect("literal degree sequence");
        out.push(verify_partition_identities(&ds, cfg.max_order as u64));
        out.push(verify_charpoly_divides(&ds, cfg.max_order as u64));
        out.push(verify_main_spectrum_equality(&ds, cfg));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bethe_and_quasi_regular() {
        for (d, k) in [(2, 4), (3, 3), (2, 6)] {
            let out = verify_bethe_quasi_regular(d, k).unwrap();
            assert!(out.pass, "{out:?}");
            assert_eq!(out.observed["bethe"]["main_count"], k);
            assert_eq!(out.observed["quasi_regular"]["main_count"], k);
        }
        assert!(verify_bethe_quasi_regular(2, 2).is_err());
    }

    #[test]
    fn hou() {
        for (alpha, degrees) in [(2, [3, 2]), (3, [7, 3]), (4, [13, 4])] {
            let out = verify_hou(alpha).unwrap();
            assert!(out.pass);
            assert_eq!(out.instance["degrees"], json!(degrees));
        }
    }

    #[test]
    fn counterexample() {
        let out = verify_counterexample(6).unwrap();
        assert!(out.pass, "{out:?}");
        assert_eq!(out.observed["main_count"], 5);
        assert!(verify_counterexample(12).unwrap().pass);
        assert!(verify_counterexample(7).is_err());
    }

    #[test]
    fn equality() {
        let cfg = SpectraConfig::default();
        for s in ["3,3,2", "5,3,5,3,2", "4"] {
            let out = verify_main_spectrum_equality(&s.parse().unwrap(), &cfg).unwrap();
            assert!(out.pass, "{out:?}");
        }
    }

    #[test]
    fn bracket_check() {
        let p = Poly::from_ints(&[-3, 0, 1]);
        assert!(brackets_root(&p, 3f64.sqrt(), 1e-7));
        assert!(!brackets_root(&p, 1.7, 1e-7));
    }
}

//! Acceptance criteria, one line of output per criterion. Runs as a plain
//! binary under `cargo test` and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gbt_core::exact::{
    charpoly_tree, charpoly_tridiagonal, main_count_divisor, poly_divides, verify_xi_identity,
    Rational,
};
use gbt_core::partition::{
    characteristic_matrix, check_compatibility, check_similarity, divisor_matrix, level_partition,
};
use gbt_core::search::{scan, SearchConfig};
use gbt_core::spectra::{main_spectrum_from, symmetric_eigen, walk_matrix_rank, SpectraConfig};
use gbt_core::tree::{
    bethe_degrees, build_tree, counterexample_degrees, level_sizes, quasi_regular_degrees,
    DegreeSequence, DEFAULT_MAX_VERTICES,
};
use gbt_core::verify::brackets_root;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f();
    within(out, start.elapsed(), limit)
}

fn within(mut out: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed > limit {
        out.pass = false;
        out.detail
            .push_str(&format!("; took {elapsed:.2?}, limit {limit:?}"));
    } else {
        out.detail.push_str(&format!(" ({elapsed:.2?})"));
    }
    out
}

fn even_k() -> impl Iterator<Item = usize> {
    (6..=40).step_by(2)
}

fn random_sample() -> Vec<DegreeSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6274_7265_6573);
    (0..30)
        .map(|_| {
            let k = rng.random_range(2..=5);
            let degrees = (0..k - 1).map(|_| rng.random_range(2..=4)).collect();
            DegreeSequence::new(degrees).unwrap()
        })
        .collect()
}

fn xi_identity() -> Outcome {
    let failures: Vec<usize> = even_k()
        .filter(|&k| {
            let r = verify_xi_identity(k).unwrap();
            !(r.eigen_ok && r.orthogonal_ok)
        })
        .collect();
    Outcome {
        pass: failures.is_empty(),
        detail: format!("B^T xi = -2 xi and e^T xi = 0 for k = 6..40 even; failures {failures:?}"),
    }
}

fn counterexample_bound() -> Outcome {
    let counts: Vec<(usize, usize)> = even_k()
        .map(|k| {
            (
                k,
                main_count_divisor(&divisor_matrix(&counterexample_degrees(k).unwrap())).unwrap(),
            )
        })
        .collect();
    let bad: Vec<_> = counts.iter().filter(|(k, c)| c >= k).collect();
    let all_k_minus_one = counts.iter().all(|(k, c)| *c == k - 1);
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "main count <= k-1 for all {} instances (observed count = k-1 throughout: {all_k_minus_one}); violations {bad:?}",
            counts.len()
        ),
    }
}

fn bethe_quasi_regular() -> Outcome {
    let mut bad = Vec::new();
    for d in 2..=4 {
        for k in 3..=8 {
            for ds in [
                bethe_degrees(d, k).unwrap(),
                quasi_regular_degrees(d, k).unwrap(),
            ] {
                let c = main_count_divisor(&divisor_matrix(&ds)).unwrap();
                if c != k {
                    bad.push((ds.to_string(), c));
                }
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("B_(d,k), Q_(d,k) for d in 2..4, k in 3..8 have exactly k main eigenvalues; mismatches {bad:?}"),
    }
}

fn hou_family() -> Outcome {
    let counts: Vec<usize> = (2u32..=6)
        .map(|a| {
            let ds = DegreeSequence::new(vec![a * a - a + 1, a]).unwrap();
            main_count_divisor(&divisor_matrix(&ds)).unwrap()
        })
        .collect();
    Outcome {
        pass: counts.iter().all(|&c| c == 2),
        detail: format!("(a^2-a+1, a) for a = 2..6 give main counts {counts:?}"),
    }
}

fn tree_divisor_cross_check(sample: &[DegreeSequence], cfg: &SpectraConfig) -> (Outcome, Outcome) {
    let mut count_bad = Vec::new();
    let mut bracket_bad = Vec::new();
    let mut walk_bad = Vec::new();
    for ds in sample {
        let a = build_tree(ds).unwrap().adjacency().to_dense();
        let b = divisor_matrix(ds);
        let exact = main_count_divisor(&b).unwrap();
        let p = charpoly_tridiagonal(&b).unwrap();
        let report = main_spectrum_from(&symmetric_eigen(&a, cfg).unwrap(), cfg);
        if report.main_count != exact {
            count_bad.push((ds.to_string(), report.main_count, exact));
        }
        for x in report.main_eigenvalues() {
            if !brackets_root(&p, x, 1e-7) {
                bracket_bad.push((ds.to_string(), x));
            }
        }
        let walk = walk_matrix_rank(&a, cfg).unwrap();
        if walk != exact {
            walk_bad.push((ds.to_string(), walk, exact));
        }
    }
    let max_n = sample
        .iter()
        .map(|d| build_tree(d).unwrap().vertex_count())
        .max()
        .unwrap_or(0);
    (
        Outcome {
            pass: count_bad.is_empty() && bracket_bad.is_empty(),
            detail: format!(
                "{} sequences (max n = {max_n}); count mismatches {count_bad:?}; unbracketed eigenvalues {bracket_bad:?}",
                sample.len()
            ),
        },
        Outcome {
            pass: walk_bad.is_empty(),
            detail: format!("walk-matrix rank = exact count on all {}; mismatches {walk_bad:?}", sample.len()),
        },
    )
}

fn charpoly_divisibility(sample: &[DegreeSequence]) -> Outcome {
    let mut instances: Vec<DegreeSequence> = sample.to_vec();
    instances.push("5,3,5,3,2".parse().unwrap());
    let bad: Vec<String> = instances
        .iter()
        .filter(|ds| {
            let tree = charpoly_tree(ds, DEFAULT_MAX_VERTICES).unwrap();
            let div = charpoly_tridiagonal(&divisor_matrix(ds)).unwrap();
            !poly_divides(&div, &tree).unwrap()
        })
        .map(ToString::to_string)
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "zero remainder on {} instances; failures {bad:?}",
            instances.len()
        ),
    }
}

fn partition_identities(all: &BTreeSet<DegreeSequence>) -> Outcome {
    let mut bad = Vec::new();
    for ds in all {
        let b = divisor_matrix(ds);
        let similar = check_similarity(&b, &level_sizes(ds).unwrap()).unwrap();
        let tree = build_tree(ds).unwrap();
        let part = level_partition(&tree);
        let compatible =
            check_compatibility(&tree.adjacency(), &characteristic_matrix(&part), &b).unwrap();
        if !(similar && compatible) {
            bad.push(ds.to_string());
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "AC = CB and b_ij|C_i| = b_ji|C_j| on {} instances; failures {bad:?}",
            all.len()
        ),
    }
}

fn minus_two_non_main(cfg: &SpectraConfig) -> Outcome {
    let ds: DegreeSequence = "5,3,5,3,2".parse().unwrap();
    let a = build_tree(&ds).unwrap().adjacency().to_dense();
    let report = main_spectrum_from(&symmetric_eigen(&a, cfg).unwrap(), cfg);
    let cluster = report.cluster_near(-2.0, 1e-7);
    let b = divisor_matrix(&ds);
    let root = charpoly_tridiagonal(&b)
        .unwrap()
        .eval(&Rational::from_integer((-2).into()))
        .is_zero();
    let count = main_count_divisor(&b).unwrap();
    let numeric_ok = cluster.is_some_and(|c| c.projection_norm < cfg.tol_main && !c.is_main);
    Outcome {
        pass: report.n == 216 && numeric_ok && root && count <= 5,
        detail: format!(
            "n = {}, cluster at -2: mult {:?} proj {:?}; p(-2) = 0: {root}; exact count {count}",
            report.n,
            cluster.map(|c| c.multiplicity),
            cluster.map(|c| c.projection_norm),
        ),
    }
}

fn k4_scan() -> Outcome {
    let one = scan(&SearchConfig::new(4, 8), None).unwrap();
    let four = scan(
        &SearchConfig {
            worker_count: 4,
            ..SearchConfig::new(4, 8)
        },
        None,
    )
    .unwrap();
    let histogram_total: usize = one.histogram.values().sum();
    let outcome = if one.hits.is_empty() {
        "consistent with conjecture".to_string()
    } else {
        format!("counterexample found: {:?}", one.hits)
    };
    Outcome {
        pass: one == four && one.total == 343 && histogram_total == 343 && one.failures.is_empty(),
        detail: format!(
            "343 divisors, identical at 1 and 4 workers: {}; histogram {:?}; outcome: {outcome}",
            one == four,
            one.histogram
        ),
    }
}

fn main() {
    let cfg = SpectraConfig::default();
    let sample = random_sample();

    let start = Instant::now();
    let (cross, walk) = tree_divisor_cross_check(&sample, &cfg);
    let cross = within(cross, start.elapsed(), Duration::from_secs(120));

    let mut every: BTreeSet<DegreeSequence> = sample.iter().cloned().collect();
    every.extend(even_k().map(|k| counterexample_degrees(k).unwrap()));
    for d in 2..=4 {
        for k in 3..=8 {
            every.insert(bethe_degrees(d, k).unwrap());
            every.insert(quasi_regular_degrees(d, k).unwrap());
        }
    }
    every.extend((2u32..=6).map(|a| DegreeSequence::new(vec![a * a - a + 1, a]).unwrap()));
    every.extend(gbt_core::search::enumerate(4, 8));

    let results: Vec<(&str, Outcome)> = vec![
        ("1 xi identity", timed(Duration::from_secs(1), xi_identity)),
        (
            "2 counterexample bound",
            timed(Duration::from_secs(5), counterexample_bound),
        ),
        (
            "3 Bethe and quasi-regular trees",
            timed(Duration::from_secs(5), bethe_quasi_regular),
        ),
        ("4 Hou family", timed(Duration::from_secs(1), hou_family)),
        ("5 tree/divisor main spectrum", cross),
        (
            "6 charpoly divisibility",
            timed(Duration::from_secs(60), || charpoly_divisibility(&sample)),
        ),
        (
            "7 AC = CB and edge-count symmetry",
            partition_identities(&every),
        ),
        ("8 walk-matrix oracle", walk),
        (
            "9 -2 non-main for k = 6",
            timed(Duration::from_secs(10), || minus_two_non_main(&cfg)),
        ),
        ("10 k = 4 scan", timed(Duration::from_secs(10), k4_scan)),
    ];

    let mut failed = 0;
    for (name, out) in &results {
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {name}: {}", out.detail);
        failed += usize::from(!out.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

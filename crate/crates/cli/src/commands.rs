use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};

use gbt_core::exact::{charpoly_tree, charpoly_tridiagonal};
use gbt_core::search::{scan, Census, K4Outcome, SearchConfig};
use gbt_core::spectra::{main_spectrum_numeric, walk_matrix_rank};
use gbt_core::tree::{build_tree_capped, level_sizes};
use gbt_core::verify::{self, VerificationOutcome};
use gbt_core::{
    counterexample_degrees, divisor_matrix, main_count_divisor, DegreeSequence, SpectraConfig,
};
use serde_json::json;

use crate::output::{emit, max_vertices, to_value, CliResult, Failure};
use crate::{Cli, Command, Suite, Target, TreeArgs};

/// Dispatches the subcommand and returns the process exit code.
pub fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Build(tree) => build(cli, &resolve(tree)?),
        Command::Divisor(tree) => divisor(cli, &resolve(tree)?),
        Command::Charpoly { tree, of } => charpoly(cli, &resolve(tree)?, *of),
        Command::MainCount {
            tree,
            numeric,
            both,
            ..
        } => main_count(cli, &resolve(tree)?, *numeric, *both),
        Command::Verify {
            suite,
            degrees,
            k,
            d,
            alpha,
        } => run_verify(cli, *suite, degrees.as_ref(), *k, *d, *alpha),
        Command::Search {
            k,
            max_degree,
            jobs,
        } => search(cli, *k, *max_degree, *jobs),
    }
}

fn resolve(tree: &TreeArgs) -> CliResult<DegreeSequence> {
    match (&tree.degrees, tree.k) {
        (Some(ds), None) => Ok(ds.clone()),
        (None, Some(k)) => Ok(counterexample_degrees(k)?),
        _ => Err(Failure::Usage(
            "exactly one of --degrees and --k is required".into(),
        )),
    }
}

fn build(cli: &Cli, ds: &DegreeSequence) -> CliResult<u8> {
    let tree = build_tree_capped(ds, max_vertices()?)?;
    let mut json = to_value(&tree);
    json["vertex_count"] = json!(tree.vertex_count());
    emit(cli, json, || tree.to_edge_list())?;
    Ok(0)
}

fn divisor(cli: &Cli, ds: &DegreeSequence) -> CliResult<u8> {
    let b = divisor_matrix(ds);
    let sizes: Vec<String> = level_sizes(ds)?.iter().map(u64::to_string).collect();
    let json = json!({
        "degrees": ds,
        "k": ds.levels(),
        "divisor": b,
        "level_sizes": sizes,
    });
    emit(cli, json, || b.to_grid())?;
    Ok(0)
}

fn charpoly(cli: &Cli, ds: &DegreeSequence, of: Target) -> CliResult<u8> {
    let (p, target) = match of {
        Target::Divisor => (charpoly_tridiagonal(&divisor_matrix(ds))?, "divisor"),
        Target::Tree => (charpoly_tree(ds, max_vertices()?)?, "tree"),
    };
    let json = json!({
        "degrees": ds,
        "k": ds.levels(),
        "of": target,
        "degree": p.degree(),
        "coefficients": p,
        "polynomial": p.to_string(),
    });
    emit(cli, json, || p.to_string())?;
    Ok(0)
}

fn main_count(cli: &Cli, ds: &DegreeSequence, numeric: bool, both: bool) -> CliResult<u8> {
    let k = ds.levels();
    let cfg = SpectraConfig::default();
    let numeric_report = || -> CliResult<_> {
        let cap = max_vertices()?.min(cfg.max_order as u64);
        let a = build_tree_capped(ds, cap)?.adjacency().to_dense();
        let report = main_spectrum_numeric(&a, &cfg)?;
        Ok((report, a))
    };

    if both {
        let exact = main_count_divisor(&divisor_matrix(ds))?;
        let (report, a) = numeric_report()?;
        let walk = walk_matrix_rank(&a, &cfg)?;
        let agree = exact == report.main_count && exact == walk;
        let json = json!({
            "degrees": ds,
            "k": k,
            "exact": exact,
            "numeric": report.main_count,
            "walk_rank": walk,
            "agree": agree,
            "report": report,
        });
        emit(cli, json, || {
            let mut t = format!("degrees {ds} (k = {k}, n = {})\n", report.n);
            let _ = writeln!(t, "{:<10} main count", "method");
            for (name, count) in [
                ("exact", exact),
                ("numeric", report.main_count),
                ("walk rank", walk),
            ] {
                let _ = writeln!(t, "{name:<10} {count}");
            }
            let _ = write!(t, "agree: {agree}");
            t
        })?;
        return Ok(if agree { 0 } else { 1 });
    }

    if numeric {
        let (report, _) = numeric_report()?;
        let json = json!({
            "degrees": ds,
            "k": k,
            "main_count": report.main_count,
            "method": "numeric",
            "report": report,
        });
        emit(cli, json, || {
            let mut t = format!(
                "main count: {} (k = {k}, numeric, n = {})\n",
                report.main_count, report.n
            );
            for c in report.clusters.iter().filter(|c| c.is_main) {
                let _ = writeln!(
                    t,
                    "{:.12} mult {} proj {:.6e}",
                    c.eigenvalue, c.multiplicity, c.projection_norm
                );
            }
            t
        })?;
        return Ok(0);
    }

    let count = main_count_divisor(&divisor_matrix(ds))?;
    let json = json!({
        "degrees": ds,
        "k": k,
        "main_count": count,
        "method": "exact",
    });
    emit(cli, json, || {
        format!("main count: {count} (k = {k}, exact)")
    })?;
    Ok(0)
}

fn small_instances(
    degrees: Option<&DegreeSequence>,
    k: Option<usize>,
) -> CliResult<Vec<DegreeSequence>> {
    match (degrees, k) {
        (Some(ds), _) => Ok(vec![ds.clone()]),
        (None, Some(k)) => Ok(vec![counterexample_degrees(k)?]),
        (None, None) => Ok(verify::SMALL_INSTANCES
            .iter()
            .map(|s| s.parse().expect("literal degree sequence"))
            .collect()),
    }
}

fn reject(suite: &str, flags: &[(&str, bool)]) -> CliResult<()> {
    match flags.iter().find(|(_, given)| *given) {
        Some((flag, _)) => Err(Failure::Usage(format!(
            "verify {suite} does not take {flag}"
        ))),
        None => Ok(()),
    }
}

fn run_verify(
    cli: &Cli,
    suite: Suite,
    degrees: Option<&DegreeSequence>,
    k: Option<usize>,
    d: Option<u32>,
    alpha: Option<u32>,
) -> CliResult<u8> {
    let cfg = SpectraConfig::default();
    let has = (degrees.is_some(), k.is_some(), d.is_some(), alpha.is_some());
    let results: Vec<gbt_core::Result<VerificationOutcome>> = match suite {
        Suite::Counterexample => {
            reject(
                "counterexample",
                &[("--degrees", has.0), ("--d", has.2), ("--alpha", has.3)],
            )?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (6..=40).step_by(2).collect(),
            };
            ks.into_iter().map(verify::verify_counterexample).collect()
        }
        Suite::Bethe => {
            reject("bethe", &[("--degrees", has.0), ("--alpha", has.3)])?;
            let ds_range: Vec<u32> = d.map_or_else(|| (2..=4).collect(), |d| vec![d]);
            let ks: Vec<usize> = k.map_or_else(|| (3..=8).collect(), |k| vec![k]);
            ds_range
                .iter()
                .flat_map(|&d| {
                    ks.iter()
                        .map(move |&k| verify::verify_bethe_quasi_regular(d, k))
                })
                .collect()
        }
        Suite::Hou => {
            reject(
                "hou",
                &[("--degrees", has.0), ("--k", has.1), ("--d", has.2)],
            )?;
            let alphas: Vec<u32> = alpha.map_or_else(|| (2..=6).collect(), |a| vec![a]);
            alphas.into_iter().map(verify::verify_hou).collect()
        }
        Suite::Partition | Suite::Charpoly | Suite::Equality => {
            reject(&suite_name(suite), &[("--d", has.2), ("--alpha", has.3)])?;
            let cap = max_vertices()?;
            small_instances(degrees, k)?
                .iter()
                .map(|ds| match suite {
                    Suite::Partition => verify::verify_partition_identities(ds, cap),
                    Suite::Charpoly => verify::verify_charpoly_divides(ds, cap),
                    _ => verify::verify_main_spectrum_equality(ds, &cfg),
                })
                .collect()
        }
        Suite::All => {
            reject(
                "all",
                &[
                    ("--degrees", has.0),
                    ("--k", has.1),
                    ("--d", has.2),
                    ("--alpha", has.3),
                ],
            )?;
            verify::default_suite(&cfg)
        }
    };
    let outcomes = results.into_iter().collect::<gbt_core::Result<Vec<_>>>()?;
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    emit(cli, to_value(&outcomes), || {
        outcomes
            .iter()
            .map(|o| {
                let tag = if o.pass { "PASS" } else { "FAIL" };
                format!("{tag} {} {}", o.claim_id, o.instance)
            })
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    let name = suite_name(suite);
    eprintln!(
        "verify {name}: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

fn suite_name(suite: Suite) -> String {
    use clap::ValueEnum;
    suite
        .to_possible_value()
        .map_or_else(String::new, |v| v.get_name().to_string())
}

/// Level counts for which the conjecture is expected to hold, so any hit
/// there is unexpected.
fn hits_unexpected(k: usize) -> bool {
    matches!(k, 2 | 4)
}

fn census_text(census: &Census, outcome: Option<K4Outcome>) -> String {
    let mut t = format!(
        "k = {}, max degree = {}: {} instances\n",
        census.k, census.max_degree, census.total
    );
    for (count, n) in &census.histogram {
        let _ = writeln!(t, "main count {count}: {n}");
    }
    if census.hits.is_empty() {
        t.push_str("hits: none\n");
    }
    for h in &census.hits {
        let numeric = h
            .numeric_main_count
            .map_or("-".to_string(), |c| c.to_string());
        let _ = writeln!(
            t,
            "hit {}: main count {} (recheck {}, numeric {numeric})",
            h.degrees, h.main_count, h.recheck_count
        );
    }
    for f in &census.failures {
        let _ = writeln!(t, "failed {}: {}", f.degrees, f.error);
    }
    if let Some(o) = outcome {
        let _ = writeln!(t, "outcome: {}", to_value(&o).as_str().unwrap_or_default());
    }
    t
}

fn search(cli: &Cli, k: usize, max_degree: u32, jobs: Option<usize>) -> CliResult<u8> {
    let workers =
        jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = SearchConfig {
        worker_count: workers,
        ..SearchConfig::new(k, max_degree)
    };
    let last = AtomicUsize::new(0);
    let progress = |done: usize, total: usize| {
        let pct = done * 100 / total.max(1);
        if last.fetch_max(pct + 1, Ordering::Relaxed) < pct + 1 {
            eprintln!("search: {done}/{total} ({pct}%)");
        }
    };
    let census = scan(&cfg, Some(&progress))?;
    let outcome = (k == 4).then_some(if census.hits.is_empty() {
        K4Outcome::Consistent
    } else {
        K4Outcome::CounterexampleFound
    });

    let mut json = to_value(&census);
    if let Some(o) = outcome {
        json["outcome"] = to_value(&o);
    }
    emit(cli, json, || census_text(&census, outcome))?;

    let unconfirmed = census.hits.iter().filter(|h| !h.confirmed()).count();
    eprintln!(
        "search: {} instances, {} hits, {unconfirmed} unconfirmed, {} failures",
        census.total,
        census.hits.len(),
        census.failures.len()
    );
    let bad = unconfirmed > 0
        || !census.failures.is_empty()
        || (hits_unexpected(k) && !census.hits.is_empty());
    Ok(if bad { 1 } else { 0 })
}

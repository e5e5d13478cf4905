//! Exhaustive scans of degree-sequence space for generalized Bethe trees
//! with fewer main eigenvalues than levels.
//!
//! Only the `k x k` divisor is used per instance. The index range is split
//! into contiguous blocks, one per worker, and results are merged by index,
//! so the output does not depend on the worker count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{krylov_rank, main_count_divisor, to_rational, Rational};
use crate::partition::divisor_matrix;
use crate::spectra::{main_spectrum_numeric, SpectraConfig};
use crate::tree::{build_tree_capped, level_sizes, vertex_count, DegreeSequence};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub k: usize,
    pub max_degree: u32,
    pub worker_count: usize,
    /// Hits whose tree has at most this many vertices are re-checked on the
    /// numeric full-tree path.
    pub numeric_check_cap: u64,
    pub spectra: SpectraConfig,
}

impl SearchConfig {
    pub fn new(k: usize, max_degree: u32) -> Self {
        SearchConfig {
            k,
            max_degree,
            worker_count: 1,
            numeric_check_cap: 2000,
            spectra: SpectraConfig::default(),
        }
    }

    fn validate(&self) -> Result<usize> {
        if self.k < 2 {
            return Err(Error::SearchConfig(format!(
                "k must be at least 2, got {}",
                self.k
            )));
        }
        if self.max_degree < 2 {
            return Err(Error::SearchConfig(format!(
                "max degree must be at least 2, got {}",
                self.max_degree
            )));
        }
        if self.worker_count == 0 {
            return Err(Error::SearchConfig("worker count must be positive".into()));
        }
        instance_count(self.k, self.max_degree)
    }
}

/// `(max_degree - 1)^(k - 1)`.
pub fn instance_count(k: usize, max_degree: u32) -> Result<usize> {
    let base = max_degree.saturating_sub(1) as usize;
    let exp = u32::try_from(k.saturating_sub(1)).unwrap_or(u32::MAX);
    base.checked_pow(exp).ok_or_else(|| {
        Error::SearchConfig(format!("{base}^{exp} instances is too many to enumerate"))
    })
}

/// The `index`-th sequence in lexicographic order, reading `index` in base
/// `max_degree - 1` with `d1` as the most significant digit.
pub fn sequence_at(index: usize, k: usize, max_degree: u32) -> DegreeSequence {
    let base = (max_degree - 1) as usize;
    let mut digits = vec![0u32; k - 1];
    let mut rest = index;
    for slot in digits.iter_mut().rev() {
        *slot = (rest % base) as u32 + 2;
        rest /= base;
    }
    DegreeSequence::new(digits).expect("digits are at least 2")
}

/// All `(d1, ..., d_{k-1})` with `2 <= d_i <= max_degree`, lexicographically.
pub fn enumerate(k: usize, max_degree: u32) -> impl Iterator<Item = DegreeSequence> {
    let total = if k >= 2 && max_degree >= 2 {
        instance_count(k, max_degree).unwrap_or(0)
    } else {
        0
    };
    (0..total).map(move |i| sequence_at(i, k, max_degree))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub degrees: DegreeSequence,
    pub main_count: usize,
    pub deficiency: usize,
    /// Main count recomputed as the Krylov rank of `B^T` from the cell sizes.
    pub recheck_count: usize,
    /// Main count on the numeric full-tree path, when the tree is small enough.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_main_count: Option<usize>,
}

impl SearchHit {
    pub fn confirmed(&self) -> bool {
        self.recheck_count == self.main_count
            && self.numeric_main_count.is_none_or(|c| c == self.main_count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanFailure {
    pub degrees: DegreeSequence,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub k: usize,
    pub max_degree: u32,
    pub total: usize,
    /// Number of instances per main count.
    pub histogram: BTreeMap<usize, usize>,
    pub hits: Vec<SearchHit>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<ScanFailure>,
}

fn recheck(ds: &DegreeSequence) -> Result<usize> {
    let b = divisor_matrix(ds);
    let sizes: Vec<Rational> = level_sizes(ds)?
        .into_iter()
        .map(|s| Rational::from_integer(s.into()))
        .collect();
    krylov_rank(&to_rational(&b.transpose()), &sizes)
}

fn numeric_count(ds: &DegreeSequence, cfg: &SearchConfig) -> Option<usize> {
    let n = vertex_count(ds).ok()?;
    if n > cfg.numeric_check_cap || n > cfg.spectra.max_order as u64 {
        return None;
    }
    let tree = build_tree_capped(ds, n).ok()?;
    main_spectrum_numeric(&tree.adjacency().to_dense(), &cfg.spectra)
        .ok()
        .map(|r| r.main_count)
}

/// Scans every sequence and reports the histogram of main counts plus every
/// sequence whose main count is below `k`. `progress` is called with
/// `(done, total)` as instances complete, from any worker thread.
pub fn scan(
    cfg: &SearchConfig,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<Census> {
    let total = cfg.validate()?;
    let workers = cfg.worker_count.min(total.max(1));
    let block = total.div_ceil(workers);
    let done = AtomicUsize::new(0);

    let run_block = |lo: usize, hi: usize| -> Vec<(DegreeSequence, Result<usize>)> {
        (lo..hi)
            .map(|i| {
                let ds = sequence_at(i, cfg.k, cfg.max_degree);
                let count = main_count_divisor(&divisor_matrix(&ds));
                let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(report) = progress {
                    report(finished, total);
                }
                (ds, count)
            })
            .collect()
    };

    let results: Vec<(DegreeSequence, Result<usize>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (w * block).min(total);
                let hi = ((w + 1) * block).min(total);
                s.spawn(move || run_block(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });

    let mut histogram = BTreeMap::new();
    let mut hits = Vec::new();
    let mut failures = Vec::new();
    for (ds, count) in results {
        match count {
            Ok(c) => {
                *histogram.entry(c).or_insert(0) += 1;
                if c < cfg.k {
                    let recheck_count = recheck(&ds).unwrap_or(usize::MAX);
                    let numeric_main_count = numeric_count(&ds, cfg);
                    hits.push(SearchHit {
                        degrees: ds,
                        main_count: c,
                        deficiency: cfg.k - c,
                        recheck_count,
                        numeric_main_count,
                    });
                }
            }
            Err(e) => failures.push(ScanFailure {
                degrees: ds,
                error: e.to_string(),
            }),
        }
    }

    Ok(Census {
        k: cfg.k,
        max_degree: cfg.max_degree,
        total,
        histogram,
        hits,
        failures,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum K4Outcome {
    #[serde(rename = "consistent with conjecture")]
    Consistent,
    #[serde(rename = "counterexample found")]
    CounterexampleFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K4Report {
    #[serde(flatten)]
    pub census: Census,
    pub outcome: K4Outcome,
}

/// Exhaustive scan of the four-level case up to `max_degree`. The outcome
/// only describes the scanned range.
pub fn scan_k4(max_degree: u32, worker_count: usize) -> Result<K4Report> {
    let cfg = SearchConfig {
        worker_count,
        ..SearchConfig::new(4, max_degree)
    };
    let census = scan(&cfg, None)?;
    let outcome = if census.hits.is_empty() {
        K4Outcome::Consistent
    } else {
        K4Outcome::CounterexampleFound
    };
    Ok(K4Report { census, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(k: usize, max: u32) -> Vec<String> {
        enumerate(k, max).map(|d| d.to_string()).collect()
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(strs(3, 3), vec!["2,2", "2,3", "3,2", "3,3"]);
        assert_eq!(strs(2, 5), vec!["2", "3", "4", "5"]);
        assert_eq!(strs(4, 2), vec!["2,2,2"]);
        assert_eq!(enumerate(4, 8).count(), 343);
    }

    #[test]
    fn stars_never_hit() {
        let census = scan(&SearchConfig::new(2, 30), None).unwrap();
        assert!(census.hits.is_empty());
        assert_eq!(census.histogram, BTreeMap::from([(2, 29)]));
    }

    #[test]
    fn hou_family_among_three_level_hits() {
        let census = scan(&SearchConfig::new(3, 13), None).unwrap();
        for degrees in ["3,2", "7,3", "13,4"] {
            let hit = census
                .hits
                .iter()
                .find(|h| h.degrees.to_string() == degrees)
                .unwrap_or_else(|| panic!("{degrees} missing"));
            assert_eq!(hit.main_count, 2);
            assert!(hit.confirmed(), "{hit:?}");
        }
    }

    #[test]
    fn single_k4_instance() {
        let report = scan_k4(2, 1).unwrap();
        assert_eq!(report.census.total, 1);
        assert_eq!(report.census.histogram, BTreeMap::from([(4, 1)]));
        assert_eq!(report.outcome, K4Outcome::Consistent);
        let v = serde_json::to_value(&report).unwrap();
        for key in ["k", "max_degree", "total", "histogram", "hits", "outcome"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn bad_configs() {
        assert!(scan(&SearchConfig::new(1, 5), None).is_err());
        assert!(scan(&SearchConfig::new(3, 1), None).is_err());
        let zero_workers = SearchConfig {
            worker_count: 0,
            ..SearchConfig::new(3, 3)
        };
        assert!(scan(&zero_workers, None).is_err());
    }
}

//! Generalized Bethe trees.
//!
//! A generalized Bethe tree `B(d1, ..., d_{k-1})` is a rooted tree with `k`
//! levels in which every vertex on level `i < k` has degree `d_i` and every
//! vertex on level `k` is a leaf. The root therefore has `d1` children and a
//! non-root internal vertex on level `i` has `d_i - 1` children.
//!
//! Vertices are numbered breadth first: the root is vertex 0, each level
//! occupies a contiguous range, and the children of a vertex are contiguous.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of vertices of a materialized tree.
pub const DEFAULT_MAX_VERTICES: u64 = 1_000_000;

/// The degrees `(d1, ..., d_{k-1})` of a generalized Bethe tree with `k` levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DegreeSequence(Vec<u32>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::TooFewLevels);
        }
        if let Some((i, &d)) = degrees.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::DegreeTooSmall {
                level: i + 1,
                degree: d,
            });
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    /// Number of levels `k`, one more than the number of degrees.
    pub fn levels(&self) -> usize {
        self.0.len() + 1
    }

    /// Number of children of a vertex on the 0-based level `level`.
    pub fn children_at(&self, level: usize) -> u32 {
        match level {
            0 => self.0[0],
            l if l < self.0.len() => self.0[l] - 1,
            _ => 0,
        }
    }

    pub fn class(&self) -> TreeClass {
        TreeClass::of(self)
    }
}

impl TryFrom<Vec<u32>> for DegreeSequence {
    type Error = Error;

    fn try_from(degrees: Vec<u32>) -> Result<Self> {
        DegreeSequence::new(degrees)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(ds: DegreeSequence) -> Self {
        ds.0
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let degrees = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|e| parse_err(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(degrees)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", content = "d")]
pub enum TreeClass {
    Star,
    Bethe(u32),
    QuasiRegular(u32),
    General,
}

impl TreeClass {
    pub fn of(ds: &DegreeSequence) -> Self {
        let d = ds.degrees();
        if d.len() == 1 {
            return TreeClass::Star;
        }
        if d.iter().all(|&x| x == d[0]) {
            return TreeClass::QuasiRegular(d[0]);
        }
        if d[1..].iter().all(|&x| x == d[0] + 1) {
            return TreeClass::Bethe(d[0]);
        }
        TreeClass::General
    }
}

/// `B_{d,k}`: root degree `d`, every other internal vertex degree `d + 1`.
pub fn bethe_degrees(d: u32, k: usize) -> Result<DegreeSequence> {
    if k < 2 {
        return Err(Error::TooFewLevels);
    }
    let mut degrees = vec![d + 1; k - 1];
    degrees[0] = d;
    DegreeSequence::new(degrees)
}

/// `Q_{d,k}`: every internal vertex has degree `d`.
pub fn quasi_regular_degrees(d: u32, k: usize) -> Result<DegreeSequence> {
    if k < 2 {
        return Err(Error::TooFewLevels);
    }
    DegreeSequence::new(vec![d; k - 1])
}

/// `(5, k-3, 5, 3, 2, ..., 2)` with `k - 5` trailing twos, for even `k >= 6`.
pub fn counterexample_degrees(k: usize) -> Result<DegreeSequence> {
    if k < 6 || !k.is_multiple_of(2) {
        return Err(Error::BadCounterexampleLevels(k));
    }
    let mut degrees = vec![5, (k - 3) as u32, 5, 3];
    degrees.extend(std::iter::repeat_n(2, k - 5));
    DegreeSequence::new(degrees)
}

/// Vertex counts `n1, ..., nk` per level, without building the tree.
///
/// Fails with [`Error::TooLarge`] if the total does not fit in a `u64`.
pub fn level_sizes(ds: &DegreeSequence) -> Result<Vec<u64>> {
    let overflow = || Error::TooLarge {
        projected: "more than 2^64".to_string(),
        cap: u64::MAX,
    };
    let mut sizes = Vec::with_capacity(ds.levels());
    let mut current: u64 = 1;
    let mut total: u64 = 1;
    sizes.push(current);
    for level in 0..ds.levels() - 1 {
        current = current
            .checked_mul(u64::from(ds.children_at(level)))
            .ok_or_else(overflow)?;
        total = total.checked_add(current).ok_or_else(overflow)?;
        sizes.push(current);
    }
    Ok(sizes)
}

pub fn vertex_count(ds: &DegreeSequence) -> Result<u64> {
    Ok(level_sizes(ds)?.iter().sum())
}

/// Fail unless the tree for `ds` has at most `cap` vertices.
pub fn check_cap(ds: &DegreeSequence, cap: u64) -> Result<u64> {
    let n = vertex_count(ds).map_err(|_| Error::TooLarge {
        projected: "more than 2^64".to_string(),
        cap,
    })?;
    if n > cap {
        return Err(Error::TooLarge {
            projected: n.to_string(),
            cap,
        });
    }
    Ok(n)
}

/// An explicit generalized Bethe tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetheTree {
    degrees: DegreeSequence,
    level_sizes: Vec<u64>,
    level_offsets: Vec<usize>,
    edges: Vec<(usize, usize)>,
    level_of: Vec<usize>,
}

pub fn build_tree(ds: &DegreeSequence) -> Result<BetheTree> {
    build_tree_capped(ds, DEFAULT_MAX_VERTICES)
}

pub fn build_tree_capped(ds: &DegreeSequence, cap: u64) -> Result<BetheTree> {
    let n = check_cap(ds, cap)? as usize;
    let sizes = level_sizes(ds)?;

    let mut level_offsets = Vec::with_capacity(sizes.len() + 1);
    let mut offset = 0usize;
    for &s in &sizes {
        level_offsets.push(offset);
        offset += s as usize;
    }
    level_offsets.push(offset);

    let mut level_of = Vec::with_capacity(n);
    for (level, &s) in sizes.iter().enumerate() {
        level_of.extend(std::iter::repeat_n(level, s as usize));
    }

    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for level in 0..sizes.len() - 1 {
        let c = ds.children_at(level) as usize;
        let parents = level_offsets[level]..level_offsets[level + 1];
        let child_base = level_offsets[level + 1];
        for (p, parent) in parents.enumerate() {
            for j in 0..c {
                edges.push((parent, child_base + p * c + j));
            }
        }
    }

    Ok(BetheTree {
        degrees: ds.clone(),
        level_sizes: sizes,
        level_offsets,
        edges,
        level_of,
    })
}

impl BetheTree {
    pub fn degree_sequence(&self) -> &DegreeSequence {
        &self.degrees
    }

    pub fn level_sizes(&self) -> &[u64] {
        &self.level_sizes
    }

    pub fn levels(&self) -> usize {
        self.level_sizes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.level_of.len()
    }

    /// Edges `(parent, child)` in breadth-first order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// 0-based level of vertex `v`.
    pub fn level_of(&self, v: usize) -> usize {
        self.level_of[v]
    }

    /// Vertices on the 0-based level `level`, a contiguous range.
    pub fn level_range(&self, level: usize) -> std::ops::Range<usize> {
        self.level_offsets[level]..self.level_offsets[level + 1]
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::from_edges(self.vertex_count(), &self.edges)
    }

    /// One `u v` pair per line, 0-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges.len() * 8);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl Serialize for BetheTree {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BetheTree", 3)?;
        s.serialize_field("degrees", &self.degrees)?;
        s.serialize_field("edges", &self.edges)?;
        s.serialize_field("level_sizes", &self.level_sizes)?;
        s.end()
    }
}

/// Sparse symmetric 0/1 adjacency structure of a simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    /// Panics if an edge endpoint is out of range.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for row in &mut neighbors {
            row.sort_unstable();
        }
        Adjacency { neighbors }
    }

    pub fn empty(n: usize) -> Self {
        Adjacency {
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn order(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    /// Number of nonzero entries, twice the edge count.
    pub fn nnz(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, u: usize, v: usize) -> u8 {
        u8::from(self.neighbors[u].binary_search(&v).is_ok())
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.order();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for (u, row) in self.neighbors.iter().enumerate() {
            for &v in row {
                m[(u, v)] = 1.0;
            }
        }
        m
    }
}

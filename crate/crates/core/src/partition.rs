//! Vertex partitions, equitability, and the characteristic and divisor
//! matrices of a partition.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tree::{Adjacency, BetheTree, DegreeSequence};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// The `k x k` matrix of cell-to-cell neighbor counts.
pub type DivisorMatrix = IntMatrix;

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// True if every entry off the three central diagonals is zero.
    pub fn is_tridiagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i.abs_diff(j) <= 1 || self.get(i, j) == 0))
    }

    pub fn superdiagonal(&self) -> Vec<i64> {
        (1..self.rows.min(self.cols + 1))
            .map(|i| self.get(i - 1, i))
            .collect()
    }

    pub fn subdiagonal(&self) -> Vec<i64> {
        (1..self.rows.min(self.cols + 1))
            .map(|i| self.get(i, i - 1))
            .collect()
    }

    /// Aligned plain-text grid, one row per line.
    pub fn to_grid(&self) -> String {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line = self
                .row(i)
                .iter()
                .map(|x| format!("{x:>width$}"))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

/// A partition of `{0, ..., n-1}` into nonempty cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    /// Rejects overlapping cells, empty cells, out-of-range vertices and
    /// vertices left uncovered.
    pub fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut cell_of = vec![usize::MAX; n];
        for (c, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::MalformedPartition(format!(
                    "cell {} is empty",
                    c + 1
                )));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                if cell_of[v] != usize::MAX {
                    return Err(Error::MalformedPartition(format!(
                        "vertex {v} lies in cells {} and {}",
                        cell_of[v] + 1,
                        c + 1
                    )));
                }
                cell_of[v] = c;
            }
        }
        if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::MalformedPartition(format!(
                "vertex {v} is in no cell"
            )));
        }
        Ok(Partition { cells, cell_of })
    }

    /// Every vertex in its own cell.
    pub fn singletons(n: usize) -> Self {
        Partition {
            cells: (0..n).map(|v| vec![v]).collect(),
            cell_of: (0..n).collect(),
        }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn order(&self) -> usize {
        self.cell_of.len()
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn cell_sizes(&self) -> Vec<u64> {
        self.cells.iter().map(|c| c.len() as u64).collect()
    }
}

/// Cells are the levels of the tree, root level first.
pub fn level_partition(tree: &BetheTree) -> Partition {
    let cells = (0..tree.levels())
        .map(|l| tree.level_range(l).collect())
        .collect();
    let cell_of = (0..tree.vertex_count()).map(|v| tree.level_of(v)).collect();
    Partition { cells, cell_of }
}

/// Returns the table `b_ij` if every vertex of cell `i` has exactly `b_ij`
/// neighbors in cell `j`, and `None` otherwise.
pub fn is_equitable(adj: &Adjacency, partition: &Partition) -> Result<Option<IntMatrix>> {
    if adj.order() != partition.order() {
        return Err(Error::MalformedPartition(format!(
            "partition covers {} vertices, graph has {}",
            partition.order(),
            adj.order()
        )));
    }
    let k = partition.cell_count();
    let mut table = IntMatrix::zeros(k, k);
    let mut counts = vec![0i64; k];
    for (i, cell) in partition.cells().iter().enumerate() {
        for (pos, &v) in cell.iter().enumerate() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &u in adj.neighbors(v) {
                counts[partition.cell_of(u)] += 1;
            }
            if pos == 0 {
                for (j, &c) in counts.iter().enumerate() {
                    table.set(i, j, c);
                }
            } else if table.row(i) != counts.as_slice() {
                return Ok(None);
            }
        }
    }
    Ok(Some(table))
}

/// Closed-form divisor of the level partition: `b_12 = d1`,
/// `b_{i,i+1} = d_i - 1` for `i >= 2`, `b_{i+1,i} = 1`.
pub fn divisor_matrix(ds: &DegreeSequence) -> DivisorMatrix {
    let k = ds.levels();
    let mut b = IntMatrix::zeros(k, k);
    for i in 0..k - 1 {
        b.set(i, i + 1, i64::from(ds.children_at(i)));
        b.set(i + 1, i, 1);
    }
    b
}

/// The `n x k` 0/1 matrix whose columns indicate the cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicMatrix {
    cell_of: Vec<usize>,
    cells: usize,
}

pub fn characteristic_matrix(partition: &Partition) -> CharacteristicMatrix {
    CharacteristicMatrix {
        cell_of: (0..partition.order())
            .map(|v| partition.cell_of(v))
            .collect(),
        cells: partition.cell_count(),
    }
}

impl CharacteristicMatrix {
    pub fn nrows(&self) -> usize {
        self.cell_of.len()
    }

    pub fn ncols(&self) -> usize {
        self.cells
    }

    pub fn entry(&self, v: usize, j: usize) -> u8 {
        u8::from(self.cell_of[v] == j)
    }

    pub fn column_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.cells];
        for &c in &self.cell_of {
            sums[c] += 1;
        }
        sums
    }

    /// `C^T C`.
    pub fn gram(&self) -> IntMatrix {
        let mut g = IntMatrix::zeros(self.cells, self.cells);
        for (j, s) in self.column_sums().into_iter().enumerate() {
            g.set(j, j, s as i64);
        }
        g
    }

    /// `C e_k`.
    pub fn times_ones(&self) -> Vec<u64> {
        (0..self.nrows())
            .map(|v| (0..self.cells).map(|j| u64::from(self.entry(v, j))).sum())
            .collect()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows(), self.cells);
        for (v, &c) in self.cell_of.iter().enumerate() {
            m.set(v, c, 1);
        }
        m
    }
}

/// Exact check of `AC = CB`.
pub fn check_compatibility(a: &Adjacency, c: &CharacteristicMatrix, b: &IntMatrix) -> Result<bool> {
    let n = a.order();
    let k = c.ncols();
    if c.nrows() != n || b.nrows() != k || b.ncols() != k {
        return Err(Error::DimensionMismatch(format!(
            "A is {n}x{n}, C is {}x{k}, B is {}x{}",
            c.nrows(),
            b.nrows(),
            b.ncols()
        )));
    }
    let mut ac_row = vec![0i64; k];
    for v in 0..n {
        ac_row.iter_mut().for_each(|x| *x = 0);
        for &u in a.neighbors(v) {
            ac_row[c.column_of(u)] += 1;
        }
        if ac_row.as_slice() != b.row(c.column_of(v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `b_ij |C_i| = b_ji |C_j|` for all `i, j`, the division-free form
/// of `D B D^{-1} = B^T` with `D = diag(|C_1|, ..., |C_k|)`.
pub fn check_similarity(b: &IntMatrix, cell_sizes: &[u64]) -> Result<bool> {
    let k = cell_sizes.len();
    if b.nrows() != k || b.ncols() != k {
        return Err(Error::DimensionMismatch(format!(
            "B is {}x{}, {k} cell sizes given",
            b.nrows(),
            b.ncols()
        )));
    }
    let edges = |i: usize, j: usize| i128::from(b.get(i, j)) * i128::from(cell_sizes[i]);
    Ok((0..k).all(|i| (i + 1..k).all(|j| edges(i, j) == edges(j, i))))
}

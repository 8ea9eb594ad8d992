use std::collections::BTreeMap;

use super::int::Int;
use crate::error::{Error, Result};

/// Sparse integer matrix keyed by `(row, col)`. Stored entries are nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Int>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::ONE);
        }
        m
    }

    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Int {
        self.entries.get(&(row, col)).cloned().unwrap_or(Int::ZERO)
    }

    pub fn set(&mut self, row: usize, col: usize, value: Int) {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Int) {
        let v = self.get(row, col) + value;
        self.set(row, col, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Int)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Int)>> = BTreeMap::new();
        for (r, c, v) in other.iter() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, k, a) in self.iter() {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    out.add_to(r, c, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies the matrix to a dense integer vector.
    pub fn apply(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Int::ZERO; self.rows];
        for (r, c, a) in self.iter() {
            if !v[c].is_zero() {
                out[r] += &(a * &v[c]);
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseIntMatrix {
        let mut d = DenseIntMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            d.data[r][c] = v.clone();
        }
        d
    }

    /// Rows and columns permuted: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m.set(row_perm[r], col_perm[c], v.clone());
        }
        m
    }
}

/// Row-major dense integer matrix, used for the small matrices left after
/// sparse reduction and for Smith normal form transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Int>>,
}

impl DenseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseIntMatrix { rows, cols, data: vec![vec![Int::ZERO; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::ONE;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r][c]
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        self.data.iter().map(|row| row[c].clone()).collect()
    }

    pub fn mul(&self, other: &DenseIntMatrix) -> DenseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = DenseIntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Int::ZERO, |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn to_sparse(&self) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, v)| if i == j { *v == Int::ONE } else { v.is_zero() }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_zero_removes_entry() {
        let mut m = SparseIntMatrix::zeros(2, 2);
        m.set(0, 1, Int::from(3));
        assert_eq!(m.nnz(), 1);
        m.add_to(0, 1, &Int::from(-3));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_rows(&[vec![1, 2], vec![0, 1]]);
        let b = SparseIntMatrix::from_rows(&[vec![1, 0], vec![3, 1]]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p, SparseIntMatrix::from_rows(&[vec![7, 2], vec![3, 1]]));
        assert_eq!(p.transpose().get(1, 0), Int::from(2));
        assert!(a.mul(&SparseIntMatrix::zeros(3, 1)).is_err());
    }
}

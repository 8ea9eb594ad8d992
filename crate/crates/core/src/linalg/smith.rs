//! Smith normal form with unimodular transforms.
//!
//! Pivoting rule: the nonzero entry of minimal absolute value in the active
//! submatrix, ties broken by lowest `(row, col)`. The rule is applied every
//! time a pivot is (re)selected, so the output is a deterministic function of
//! the input matrix.

use super::int::Int;
use super::matrix::{DenseIntMatrix, SparseIntMatrix};

/// `U · M · V = D` with `U`, `V` unimodular. The inverses are tracked
/// alongside so generator changes can be undone without inverting.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: DenseIntMatrix,
    pub u_inv: DenseIntMatrix,
    pub v: DenseIntMatrix,
    pub v_inv: DenseIntMatrix,
    pub d: DenseIntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d.data[i][i].clone()).take_while(|v| !v.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    m: DenseIntMatrix,
    u: DenseIntMatrix,
    u_inv: DenseIntMatrix,
    v: DenseIntMatrix,
    v_inv: DenseIntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m.data.swap(a, b);
        self.u.data.swap(a, b);
        for row in self.u_inv.data.iter_mut() {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.m.data.iter_mut() {
            row.swap(a, b);
        }
        for row in self.v.data.iter_mut() {
            row.swap(a, b);
        }
        self.v_inv.data.swap(a, b);
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &Int) {
        for mat in [&mut self.m, &mut self.u] {
            let src = mat.data[source].clone();
            for (t, s) in mat.data[target].iter_mut().zip(&src) {
                if !s.is_zero() {
                    *t += &(c * s);
                }
            }
        }
        for row in self.u_inv.data.iter_mut() {
            if !row[target].is_zero() {
                let delta = c * &row[target];
                row[source] -= &delta;
            }
        }
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &Int) {
        for mat in [&mut self.m, &mut self.v] {
            for row in mat.data.iter_mut() {
                if !row[source].is_zero() {
                    let delta = c * &row[source];
                    row[target] += &delta;
                }
            }
        }
        let tgt = self.v_inv.data[target].clone();
        for (s, t) in self.v_inv.data[source].iter_mut().zip(&tgt) {
            if !t.is_zero() {
                *s -= &(c * t);
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for mat in [&mut self.m, &mut self.u] {
            for x in mat.data[r].iter_mut() {
                *x = -&*x;
            }
        }
        for row in self.u_inv.data.iter_mut() {
            row[r] = -&row[r];
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(Int, usize, usize)> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let e = &self.m.data[i][j];
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                    best = Some((a, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithDecomposition {
    smith_normal_form_dense(&m.to_dense())
}

pub fn smith_normal_form_dense(m: &DenseIntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut w = Work {
        m: m.clone(),
        u: DenseIntMatrix::identity(rows),
        u_inv: DenseIntMatrix::identity(rows),
        v: DenseIntMatrix::identity(cols),
        v_inv: DenseIntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let pivot = w.m.data[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if w.m.data[i][t].is_zero() {
                    continue;
                }
                let (q, r) = w.m.data[i][t].div_mod_floor(&pivot);
                w.add_row(i, t, &-q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.m.data[t][j].is_zero() {
                    continue;
                }
                let (q, r) = w.m.data[t][j].div_mod_floor(&pivot);
                w.add_col(j, t, &-q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Enforce divisibility of the remaining block by the pivot.
                let offender =
                    (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.m.data[i][j].rem_euclid(&pivot).is_zero()));
                match offender {
                    Some(i) => w.add_row(t, i, &Int::ONE),
                    None => break,
                }
            }
            let (pi, pj) = w.min_pivot(t).expect("active block became zero");
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
        }
        if w.m.data[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv, d: w.m }
}

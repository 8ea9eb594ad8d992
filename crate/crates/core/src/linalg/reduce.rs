//! Sparse reduction of a based chain complex by unit pivots.
//!
//! Every entry `⟨∂b, a⟩ = u` with `u` a unit lets the pair `(a, b)` be
//! cancelled: the complex shrinks by one cell in two adjacent degrees and the
//! block `ε` of `∂` becomes `ε − γ u⁻¹ β`. The cancellation is a chain
//! homotopy equivalence with explicit maps
//!
//! ```text
//! g(c) = c − u⁻¹ ⟨∂c, a⟩ b        (inclusion, degree of b)
//! f(a) = −u⁻¹ (∂b − u a)          (projection, degree of a)
//! h(a) = u⁻¹ b                    (homotopy, id − g f = ∂h + h∂)
//! ```
//!
//! Each cancellation records row `a` and column `b` at the moment it happens,
//! which is all that is needed to replay `g`, `f`, their duals and `h`.
//! Pivots are chosen greedily by Markowitz cost `(|col b| − 1)(|row a| − 1)`,
//! ties broken by `(degree, b, a)`, so the result is deterministic.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::coeff::Coeff;

/// Sparse column: `(row, value)` pairs sorted by row, values nonzero.
pub type SparseColumn<C> = Vec<(u32, C)>;

#[derive(Clone, Debug)]
struct Cancellation<C> {
    /// Degree of `b`; `a` lives in degree `degree - 1`.
    degree: usize,
    a: u32,
    b: u32,
    u_inv: C,
    /// Row `a` of `∂_degree` without the `b` entry.
    row_a: Vec<(u32, C)>,
    /// Column `b` of `∂_degree` without the `a` entry.
    col_b: Vec<(u32, C)>,
}

#[derive(Clone, Debug)]
pub struct ReducedComplex<C> {
    dims: Vec<usize>,
    log: Vec<Cancellation<C>>,
    survivors: Vec<Vec<u32>>,
    /// `reduced[k]` holds the columns of `∂'_k`, indexed by survivor position,
    /// with rows given as survivor positions in degree `k - 1`.
    reduced: Vec<Vec<SparseColumn<C>>>,
}

struct Workspace<C> {
    cols: Vec<Vec<SparseColumn<C>>>,
    rows: Vec<Vec<Vec<u32>>>,
    alive: Vec<Vec<bool>>,
    /// One candidate per column: (cost, degree, column).
    heap: BinaryHeap<Reverse<(u64, u32, u32)>>,
    /// Cost under which each column is currently queued, `u64::MAX` if none.
    queued: Vec<Vec<u64>>,
}

fn remove_from(list: &mut Vec<u32>, value: u32) {
    if let Some(pos) = list.iter().position(|&x| x == value) {
        list.swap_remove(pos);
    }
}

fn entry<C: Coeff>(col: &SparseColumn<C>, row: u32) -> Option<&C> {
    col.binary_search_by_key(&row, |(r, _)| *r).ok().map(|i| &col[i].1)
}

/// `target + factor * source`, both sorted.
fn axpy<C: Coeff>(target: &SparseColumn<C>, factor: &C, source: &SparseColumn<C>) -> SparseColumn<C> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ti = target.get(i).map(|e| e.0);
        let sj = source.get(j).map(|e| e.0);
        match (ti, sj) {
            (Some(r), Some(s)) if r == s => {
                let v = target[i].1.add(&factor.mul(&source[j].1));
                if !v.is_zero() {
                    out.push((r, v));
                }
                i += 1;
                j += 1;
            }
            (Some(r), s) if s.is_none_or(|s| r < s) => {
                out.push(target[i].clone());
                i += 1;
            }
            (_, Some(s)) => {
                let v = factor.mul(&source[j].1);
                if !v.is_zero() {
                    out.push((s, v));
                }
                j += 1;
            }
            _ => unreachable!(),
        }
    }
    out
}

impl<C: Coeff> Workspace<C> {
    fn cost(&self, k: usize, a: u32, b: u32) -> u64 {
        let c = self.cols[k][b as usize].len() as u64;
        let r = self.rows[k][a as usize].len() as u64;
        c.saturating_sub(1) * r.saturating_sub(1)
    }

    /// Cheapest unit entry of column `b`, ties by row.
    fn best_unit(&self, k: usize, b: u32) -> Option<(u64, u32)> {
        self.cols[k][b as usize].iter().filter(|(_, v)| v.is_unit()).map(|(a, _)| (self.cost(k, *a, b), *a)).min()
    }

    fn push_column(&mut self, k: usize, b: u32) {
        if let Some((cost, _)) = self.best_unit(k, b) {
            let slot = &mut self.queued[k][b as usize];
            if cost < *slot {
                *slot = cost;
                self.heap.push(Reverse((cost, k as u32, b)));
            }
        }
    }

    fn cancel(&mut self, k: usize, a: u32, b: u32) -> Cancellation<C> {
        let col_b = std::mem::take(&mut self.cols[k][b as usize]);
        let u = entry(&col_b, a).expect("pivot entry").clone();
        let u_inv = u.unit_inverse();

        let mut row_cols: Vec<u32> = self.rows[k][a as usize].iter().copied().filter(|&c| c != b).collect();
        row_cols.sort_unstable();
        let row_a: Vec<(u32, C)> =
            row_cols.iter().map(|&c| (c, entry(&self.cols[k][c as usize], a).expect("row support").clone())).collect();

        for (c, m_ac) in &row_a {
            let factor = u_inv.mul(m_ac).neg();
            let old = std::mem::take(&mut self.cols[k][*c as usize]);
            let new = axpy(&old, &factor, &col_b);
            // Update row supports for rows whose membership changed.
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                let o = old.get(i).map(|e| e.0);
                let n = new.get(j).map(|e| e.0);
                match (o, n) {
                    (Some(x), Some(y)) if x == y => {
                        i += 1;
                        j += 1;
                    }
                    (Some(x), y) if y.is_none_or(|y| x < y) => {
                        remove_from(&mut self.rows[k][x as usize], *c);
                        i += 1;
                    }
                    (_, Some(y)) => {
                        self.rows[k][y as usize].push(*c);
                        j += 1;
                    }
                    _ => unreachable!(),
                }
            }
            self.cols[k][*c as usize] = new;
        }

        for (y, _) in &col_b {
            remove_from(&mut self.rows[k][*y as usize], b);
        }
        debug_assert!(self.rows[k][a as usize].is_empty());
        self.rows[k][a as usize].clear();

        // Row b of ∂_{k+1} disappears.
        if k + 1 < self.cols.len() {
            let above = std::mem::take(&mut self.rows[k + 1][b as usize]);
            for x in above {
                let col = &mut self.cols[k + 1][x as usize];
                if let Ok(i) = col.binary_search_by_key(&b, |(r, _)| *r) {
                    col.remove(i);
                }
                self.push_column(k + 1, x);
            }
        }
        // Column a of ∂_{k-1} disappears.
        if k >= 2 {
            let below = std::mem::take(&mut self.cols[k - 1][a as usize]);
            for (y, _) in below {
                remove_from(&mut self.rows[k - 1][y as usize], a);
            }
        }
        self.alive[k][b as usize] = false;
        self.alive[k - 1][a as usize] = false;

        for (c, _) in &row_a {
            self.push_column(k, *c);
        }

        Cancellation { degree: k, a, b, u_inv, row_a, col_b: col_b.into_iter().filter(|(r, _)| *r != a).collect() }
    }
}

impl<C: Coeff> ReducedComplex<C> {
    /// `boundaries[k]` (for `1 ≤ k < dims.len()`) lists the columns of `∂_k`;
    /// `boundaries[0]` is ignored and may be empty.
    pub fn reduce(dims: Vec<usize>, mut boundaries: Vec<Vec<SparseColumn<C>>>) -> Self {
        let top = dims.len();
        boundaries.resize_with(top, Vec::new);
        let mut rows: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top];
        for k in 1..top {
            assert_eq!(boundaries[k].len(), dims[k], "∂_{k} has wrong column count");
            let mut r = vec![Vec::new(); dims[k - 1]];
            for (c, col) in boundaries[k].iter().enumerate() {
                debug_assert!(col.windows(2).all(|w| w[0].0 < w[1].0));
                for (y, _) in col {
                    r[*y as usize].push(c as u32);
                }
            }
            rows[k] = r;
        }
        let mut ws = Workspace {
            cols: boundaries,
            rows,
            alive: dims.iter().map(|&n| vec![true; n]).collect(),
            heap: BinaryHeap::new(),
            queued: dims.iter().map(|&n| vec![u64::MAX; n]).collect(),
        };
        for (k, &n) in dims.iter().enumerate().take(top).skip(1) {
            for b in 0..n as u32 {
                ws.push_column(k, b);
            }
        }
        let mut log = Vec::new();
        while let Some(Reverse((cost, k, b))) = ws.heap.pop() {
            let k = k as usize;
            if ws.queued[k][b as usize] != cost {
                continue;
            }
            ws.queued[k][b as usize] = u64::MAX;
            if !ws.alive[k][b as usize] {
                continue;
            }
            let Some((actual, a)) = ws.best_unit(k, b) else { continue };
            if actual > cost {
                ws.queued[k][b as usize] = actual;
                ws.heap.push(Reverse((actual, k as u32, b)));
                continue;
            }
            log.push(ws.cancel(k, a, b));
        }

        let survivors: Vec<Vec<u32>> =
            ws.alive.iter().map(|alive| (0..alive.len() as u32).filter(|&i| alive[i as usize]).collect()).collect();
        let mut reduced = vec![Vec::new(); top];
        for k in 1..top {
            let pos = position_map(&survivors[k - 1], dims[k - 1]);
            reduced[k] = survivors[k]
                .iter()
                .map(|&c| {
                    ws.cols[k][c as usize]
                        .iter()
                        .map(|(r, v)| (pos[*r as usize].expect("dead row in live column"), v.clone()))
                        .collect()
                })
                .collect();
        }
        ReducedComplex { dims, log, survivors, reduced }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn survivors(&self, k: usize) -> &[u32] {
        &self.survivors[k]
    }

    pub fn reduced_dim(&self, k: usize) -> usize {
        self.survivors[k].len()
    }

    pub fn cancellations(&self) -> usize {
        self.log.len()
    }

    /// Columns of the reduced `∂'_k` in survivor coordinates.
    pub fn reduced_boundary(&self, k: usize) -> &[SparseColumn<C>] {
        if k == 0 || k >= self.dims.len() {
            &[]
        } else {
            &self.reduced[k]
        }
    }

    /// Whether the reduced complex has zero differential (always the case
    /// over a field).
    pub fn is_minimal(&self) -> bool {
        self.reduced.iter().all(|cols| cols.iter().all(Vec::is_empty))
    }

    /// Embeds a chain of the reduced complex (survivor coordinates) into the
    /// original complex; cycles map to cycles of the same class.
    pub fn lift_chain(&self, k: usize, coords: &[C]) -> Vec<C> {
        let mut z = self.embed(k, coords);
        for s in self.log.iter().rev().filter(|s| s.degree == k) {
            let acc = s.row_a.iter().fold(C::zero(), |acc, (c, m)| acc.add(&m.mul(&z[*c as usize])));
            z[s.b as usize] = s.u_inv.mul(&acc).neg();
        }
        z
    }

    /// Projects a chain of the original complex to survivor coordinates.
    pub fn project_chain(&self, k: usize, chain: &[C]) -> Vec<C> {
        assert_eq!(chain.len(), self.dims[k]);
        let mut z = chain.to_vec();
        for s in &self.log {
            if s.degree == k + 1 {
                let za = std::mem::replace(&mut z[s.a as usize], C::zero());
                if !za.is_zero() {
                    let factor = s.u_inv.mul(&za).neg();
                    for (y, g) in &s.col_b {
                        z[*y as usize] = z[*y as usize].add(&factor.mul(g));
                    }
                }
            } else if s.degree == k {
                z[s.b as usize] = C::zero();
            }
        }
        self.restrict(k, &z)
    }

    /// Pulls a cochain of the reduced complex back to the original complex;
    /// cocycles map to cocycles of the same class.
    pub fn lift_cochain(&self, k: usize, coords: &[C]) -> Vec<C> {
        let mut phi = self.embed(k, coords);
        for s in self.log.iter().rev() {
            if s.degree == k + 1 {
                let acc = s.col_b.iter().fold(C::zero(), |acc, (y, g)| acc.add(&g.mul(&phi[*y as usize])));
                phi[s.a as usize] = s.u_inv.mul(&acc).neg();
            } else if s.degree == k {
                phi[s.b as usize] = C::zero();
            }
        }
        phi
    }

    /// Restricts a cochain of the original complex to the reduced complex.
    pub fn project_cochain(&self, k: usize, cochain: &[C]) -> Vec<C> {
        assert_eq!(cochain.len(), self.dims[k]);
        let mut phi = cochain.to_vec();
        for s in &self.log {
            if s.degree == k {
                let pb = std::mem::replace(&mut phi[s.b as usize], C::zero());
                if !pb.is_zero() {
                    let factor = s.u_inv.mul(&pb);
                    for (c, m) in &s.row_a {
                        phi[*c as usize] = phi[*c as usize].sub(&factor.mul(m));
                    }
                }
            } else if s.degree == k + 1 {
                phi[s.a as usize] = C::zero();
            }
        }
        self.restrict(k, &phi)
    }

    /// For a `k`-cocycle `φ`, returns `(y, r)` with `φ = δy + lift(r)`, where
    /// `r` is the projection of `φ` to the reduced complex. When `r = 0`,
    /// `y` is an explicit coboundary witness.
    pub fn coboundary_witness(&self, k: usize, cocycle: &[C]) -> (Vec<C>, Vec<C>) {
        assert!(k >= 1, "degree-0 cocycles have no coboundary witness");
        let mut phi = cocycle.to_vec();
        let mut contributions = Vec::new();
        for (idx, s) in self.log.iter().enumerate() {
            if s.degree == k {
                let pb = std::mem::replace(&mut phi[s.b as usize], C::zero());
                if !pb.is_zero() {
                    let factor = s.u_inv.mul(&pb);
                    contributions.push((idx, factor.clone()));
                    for (c, m) in &s.row_a {
                        phi[*c as usize] = phi[*c as usize].sub(&factor.mul(m));
                    }
                }
            } else if s.degree == k + 1 {
                phi[s.a as usize] = C::zero();
            }
        }
        let residual = self.restrict(k, &phi);
        let mut y = vec![C::zero(); self.dims[k - 1]];
        let mut pending = contributions.into_iter().rev().peekable();
        for (idx, s) in self.log.iter().enumerate().rev() {
            if s.degree == k {
                let acc = s.col_b.iter().fold(C::zero(), |acc, (w, g)| acc.add(&g.mul(&y[*w as usize])));
                let mut value = s.u_inv.mul(&acc).neg();
                if let Some((_, t)) = pending.next_if(|(i, _)| *i == idx) {
                    value = value.add(&t);
                }
                y[s.a as usize] = value;
            } else if s.degree == k - 1 {
                y[s.b as usize] = C::zero();
            }
        }
        (y, residual)
    }

    fn embed(&self, k: usize, coords: &[C]) -> Vec<C> {
        assert_eq!(coords.len(), self.survivors[k].len(), "wrong survivor coordinate count");
        let mut z = vec![C::zero(); self.dims[k]];
        for (&cell, v) in self.survivors[k].iter().zip(coords) {
            z[cell as usize] = v.clone();
        }
        z
    }

    fn restrict(&self, k: usize, full: &[C]) -> Vec<C> {
        self.survivors[k].iter().map(|&c| full[c as usize].clone()).collect()
    }
}

fn position_map(survivors: &[u32], n: usize) -> Vec<Option<u32>> {
    let mut pos = vec![None; n];
    for (i, &c) in survivors.iter().enumerate() {
        pos[c as usize] = Some(i as u32);
    }
    pos
}

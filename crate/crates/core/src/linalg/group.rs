//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use super::int::Int;
use super::matrix::{DenseIntMatrix, SparseIntMatrix};
use super::smith::{smith_normal_form, smith_normal_form_dense};

/// `ℤ^free_rank ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` with `d_1 | … | d_k`, every `d_i ≥ 2`.
///
/// When present, `generators` lists one representative per cyclic factor in
/// the ambient lattice: torsion factors first (in the order of `torsion`),
/// then free factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
    pub generators: Option<Vec<Vec<Int>>>,
}

impl PresentedGroup {
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Self {
        let g = PresentedGroup { free_rank, torsion, generators: None };
        debug_assert!(g.is_well_formed());
        g
    }

    pub fn trivial() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn z2() -> Self {
        Self::new(0, vec![Int::from(2)])
    }

    pub fn is_well_formed(&self) -> bool {
        self.torsion.iter().all(|d| *d >= Int::from(2))
            && self.torsion.windows(2).all(|w| w[1].rem_euclid(&w[0]).is_zero())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` if the group is infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion.iter().fold(Int::ONE, |acc, d| acc * d))
    }

    /// Number of cyclic factors, torsion then free.
    pub fn num_factors(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Same group, generator data dropped; used to compare isomorphism types.
    pub fn isomorphism_type(&self) -> (usize, Vec<Int>) {
        (self.free_rank, self.torsion.clone())
    }

    pub fn is_isomorphic(&self, other: &PresentedGroup) -> bool {
        self.isomorphism_type() == other.isomorphism_type()
    }

    /// Direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &PresentedGroup) -> PresentedGroup {
        let mut diag: Vec<Int> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let free = self.free_rank + other.free_rank;
        let n = diag.len();
        let mut rel = SparseIntMatrix::zeros(n, n);
        for (i, d) in diag.drain(..).enumerate() {
            rel.set(i, i, d);
        }
        let t = group_from_presentation(&rel);
        PresentedGroup::new(free + t.free_rank, t.torsion)
    }

    /// Number of even invariant factors, i.e. the ℤ₂-dimension of the
    /// subgroup of elements of order at most two.
    pub fn two_torsion_rank(&self) -> usize {
        self.torsion.iter().filter(|d| d.is_even()).count()
    }
}

impl fmt::Display for PresentedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Cokernel of a relation matrix: rows are relations, columns the generators.
/// Generator representatives are expressed in the original generator basis.
pub fn group_from_presentation(relations: &SparseIntMatrix) -> PresentedGroup {
    let snf = smith_normal_form(relations);
    let factors = snf.invariant_factors();
    let g = relations.cols();
    let mut torsion = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if !d.is_unit() {
            torsion.push(d.clone());
            generators.push(snf.v_inv.data[i].clone());
        }
    }
    for i in factors.len()..g {
        generators.push(snf.v_inv.data[i].clone());
    }
    PresentedGroup { free_rank: g - factors.len(), torsion, generators: Some(generators) }
}

/// `ker A / im B` for integer matrices with `A · B = 0`, together with the
/// data needed to name classes of arbitrary cycles.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: PresentedGroup,
    /// Cycle representatives, one per cyclic factor (torsion, then free).
    pub representatives: Vec<Vec<Int>>,
    /// Kernel coordinate extraction: rows `rank_a..` of `V_A⁻¹`.
    kernel_coords: DenseIntMatrix,
    /// `U_B'` restricted to the factor rows that survive (non-unit and free).
    class_rows: DenseIntMatrix,
    /// Modulus per surviving factor (`None` for free factors).
    moduli: Vec<Option<Int>>,
}

impl Subquotient {
    pub fn compute(a: &DenseIntMatrix, b: &DenseIntMatrix) -> Subquotient {
        let n = a.cols;
        assert_eq!(b.rows, n, "A and B do not compose");
        let snf_a = smith_normal_form_dense(a);
        let rank_a = snf_a.rank();
        let k = n - rank_a;
        let kernel_coords = DenseIntMatrix { rows: k, cols: n, data: snf_a.v_inv.data[rank_a..].to_vec() };
        // Image of B in kernel coordinates.
        let b_in_kernel = kernel_coords.mul(b);
        let snf_b = smith_normal_form_dense(&b_in_kernel);
        let factors = snf_b.invariant_factors();
        let mut torsion = Vec::new();
        let mut reps = Vec::new();
        let mut rows = Vec::new();
        let mut moduli = Vec::new();
        let kernel_vector = |coords: Vec<Int>| -> Vec<Int> {
            // z = V_A[:, rank_a..] · coords
            (0..n)
                .map(|r| {
                    coords.iter().enumerate().fold(Int::ZERO, |acc, (j, c)| {
                        if c.is_zero() {
                            acc
                        } else {
                            acc + &snf_a.v.data[r][rank_a + j] * c
                        }
                    })
                })
                .collect()
        };
        for (i, d) in factors.iter().enumerate() {
            if !d.is_unit() {
                torsion.push(d.clone());
                reps.push(kernel_vector(snf_b.u_inv.column(i)));
                rows.push(snf_b.u.data[i].clone());
                moduli.push(Some(d.clone()));
            }
        }
        for i in factors.len()..k {
            reps.push(kernel_vector(snf_b.u_inv.column(i)));
            rows.push(snf_b.u.data[i].clone());
            moduli.push(None);
        }
        let class_rows = DenseIntMatrix { rows: rows.len(), cols: k, data: rows };
        let group = PresentedGroup { free_rank: k - factors.len(), torsion, generators: Some(reps.clone()) };
        Subquotient { group, representatives: reps, kernel_coords, class_rows, moduli }
    }

    /// Coordinates of the class of a cycle `z` (which must lie in `ker A`):
    /// residues mod `d_i` for torsion factors, integers for free ones.
    pub fn class_of(&self, z: &[Int]) -> Vec<Int> {
        let y = self.kernel_coords.mul_vec(z);
        self.class_rows
            .mul_vec(&y)
            .into_iter()
            .zip(&self.moduli)
            .map(|(c, m)| match m {
                Some(d) => c.rem_euclid(d),
                None => c,
            })
            .collect()
    }
}

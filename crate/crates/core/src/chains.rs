//! Chain complexes of a simplicial complex with ℤ, ℤ₂ and orientation-twisted
//! ℤ coefficients, their (co)homology with representatives, and the two
//! Bockstein constructions.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{
    BitVector, DenseIntMatrix, Gf2, Int, PresentedGroup, ReducedComplex, SparseColumn, SparseIntMatrix, Subquotient,
};
use crate::simplicial::{FacetComplex, SimplexIndex, ValidationReport};

/// A complex together with its skeleta and face tables.
pub struct SimplicialSpace {
    complex: FacetComplex,
    skeleta: Vec<SimplexIndex>,
    /// `faces[k][j * (k + 1) + i]` is the index of the face of the `j`-th
    /// `k`-simplex omitting vertex `i`.
    faces: Vec<Vec<u32>>,
    /// Index of the leading edge `[v0 v1]` of each `k`-simplex, `k ≥ 1`.
    leading_edge: Vec<Vec<u32>>,
}

impl SimplicialSpace {
    pub fn new(complex: FacetComplex) -> Arc<Self> {
        let skeleta = complex.skeleta();
        let mut faces = vec![Vec::new()];
        let mut leading_edge = vec![Vec::new()];
        let mut buf = Vec::new();
        for k in 1..skeleta.len() {
            let lower = &skeleta[k - 1];
            let mut table = Vec::with_capacity(skeleta[k].len() * (k + 1));
            let mut lead = Vec::with_capacity(skeleta[k].len());
            for s in skeleta[k].iter() {
                for i in 0..=k {
                    buf.clear();
                    buf.extend(s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                    table.push(lower.index_of(&buf).expect("face of a simplex is a simplex") as u32);
                }
                lead.push(skeleta[1].index_of(&s[..2]).expect("leading edge") as u32);
            }
            faces.push(table);
            leading_edge.push(lead);
        }
        Arc::new(SimplicialSpace { complex, skeleta, faces, leading_edge })
    }

    /// Like [`SimplicialSpace::new`] but refuses input that is not a closed,
    /// connected pseudomanifold of dimension at least 4.
    pub fn validated(complex: FacetComplex) -> Result<Arc<Self>> {
        let report = complex.validate();
        if !report.passed() {
            return Err(Error::InvalidComplex(describe(&report)));
        }
        Ok(Self::new(complex))
    }

    pub fn complex(&self) -> &FacetComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    pub fn skeleton(&self, k: usize) -> &SimplexIndex {
        &self.skeleta[k]
    }

    pub fn count(&self, k: usize) -> usize {
        self.skeleta[k].len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.skeleta.iter().map(SimplexIndex::len).collect()
    }

    #[inline]
    pub fn face(&self, k: usize, simplex: usize, omit: usize) -> usize {
        self.faces[k][simplex * (k + 1) + omit] as usize
    }

    pub fn leading_edge(&self, k: usize, simplex: usize) -> usize {
        self.leading_edge[k][simplex] as usize
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Mod-2 coboundary of a `k`-cochain.
    pub fn coboundary_mod2(&self, k: usize, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.count(k));
        if k >= self.dim() {
            return BitVector::zeros(0);
        }
        let mut out = BitVector::zeros(self.count(k + 1));
        for s in 0..self.count(k + 1) {
            let parity = (0..=k + 1).filter(|&i| x.get(self.face(k + 1, s, i))).count() & 1;
            if parity == 1 {
                out.set(s, true);
            }
        }
        out
    }

    /// Mod-2 boundary of a `k`-chain.
    pub fn boundary_mod2(&self, k: usize, c: &BitVector) -> BitVector {
        assert_eq!(c.len(), self.count(k));
        if k == 0 {
            return BitVector::zeros(0);
        }
        let mut out = BitVector::zeros(self.count(k - 1));
        for s in c.ones_iter() {
            for i in 0..=k {
                out.flip(self.face(k, s, i));
            }
        }
        out
    }
}

fn describe(report: &ValidationReport) -> String {
    let shown: Vec<String> = report.violations.iter().take(5).map(ToString::to_string).collect();
    let more = report.violations.len().saturating_sub(shown.len());
    if more > 0 {
        format!("{} (and {more} more)", shown.join("; "))
    } else {
        shown.join("; ")
    }
}

/// A ℤ₂-valued 1-cocycle `z` defining the orientation local system: the
/// stalk is transported by `(-1)^{z(e)}` along an edge `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationSystem {
    cocycle: BitVector,
}

impl OrientationSystem {
    pub fn new(space: &SimplicialSpace, cocycle: BitVector) -> Result<Self> {
        if cocycle.len() != space.count(1) {
            return Err(Error::DimensionMismatch(format!(
                "orientation cochain has {} entries for {} edges",
                cocycle.len(),
                space.count(1)
            )));
        }
        if space.dim() >= 2 {
            let d = space.coboundary_mod2(1, &cocycle);
            if let Some(t) = d.first_one() {
                return Err(Error::NotACocycle(space.skeleton(2).get(t).to_vec()));
            }
        }
        Ok(OrientationSystem { cocycle })
    }

    pub fn trivial(space: &SimplicialSpace) -> Self {
        OrientationSystem { cocycle: BitVector::zeros(space.count(1)) }
    }

    pub fn cocycle(&self) -> &BitVector {
        &self.cocycle
    }

    pub fn is_trivial_cochain(&self) -> bool {
        self.cocycle.is_zero()
    }
}

#[derive(Clone, Debug)]
pub enum CoefficientSystem {
    Integer,
    Mod2,
    Twisted(OrientationSystem),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemTag {
    Integer,
    Mod2,
    Twisted,
}

impl CoefficientSystem {
    pub fn tag(&self) -> SystemTag {
        match self {
            CoefficientSystem::Integer => SystemTag::Integer,
            CoefficientSystem::Mod2 => SystemTag::Mod2,
            CoefficientSystem::Twisted(_) => SystemTag::Twisted,
        }
    }
}

/// A chain with coefficients indexed by the canonical `k`-simplex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    pub degree: usize,
    pub system: SystemTag,
    pub coeffs: Vec<Int>,
}

impl ChainVector {
    pub fn mod2(&self) -> BitVector {
        BitVector::from_bools(&self.coeffs.iter().map(Int::mod2).collect::<Vec<_>>())
    }

    pub fn from_mod2(degree: usize, bits: &BitVector) -> Self {
        ChainVector {
            degree,
            system: SystemTag::Mod2,
            coeffs: (0..bits.len()).map(|i| if bits.get(i) { Int::ONE } else { Int::ZERO }).collect(),
        }
    }
}

/// A ℤ₂ cochain of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub degree: usize,
    pub values: BitVector,
}

impl Cochain {
    pub fn zero(space: &SimplicialSpace, degree: usize) -> Self {
        Cochain { degree, values: BitVector::zeros(space.count(degree)) }
    }

    pub fn new(degree: usize, values: BitVector) -> Self {
        Cochain { degree, values }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut v = self.values.clone();
        v.xor_assign(&other.values);
        Cochain { degree: self.degree, values: v }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }
}

fn sign(i: usize) -> Int {
    if i.is_multiple_of(2) {
        Int::ONE
    } else {
        -Int::ONE
    }
}

/// Columns of `∂_k` for the integral or twisted system.
pub(crate) fn integral_boundary_columns(
    space: &SimplicialSpace,
    k: usize,
    twist: Option<&OrientationSystem>,
) -> Vec<SparseColumn<Int>> {
    (0..space.count(k))
        .map(|s| {
            let mut col: SparseColumn<Int> = (0..=k)
                .map(|i| {
                    let mut v = sign(i);
                    if i == 0 && twist.is_some_and(|o| o.cocycle.get(space.leading_edge(k, s))) {
                        v = -v;
                    }
                    (space.face(k, s, i) as u32, v)
                })
                .collect();
            col.sort_unstable_by_key(|(r, _)| *r);
            col
        })
        .collect()
}

fn mod2_boundary_columns(space: &SimplicialSpace, k: usize) -> Vec<SparseColumn<Gf2>> {
    (0..space.count(k))
        .map(|s| {
            let mut col: SparseColumn<Gf2> = (0..=k).map(|i| (space.face(k, s, i) as u32, Gf2(true))).collect();
            col.sort_unstable_by_key(|(r, _)| *r);
            col
        })
        .collect()
}

/// Matrix of `∂_k`: columns are `k`-simplices, rows `(k-1)`-simplices.
pub fn boundary_matrix(space: &SimplicialSpace, k: usize, system: &CoefficientSystem) -> Result<SparseIntMatrix> {
    if k == 0 || k > space.dim() {
        return Err(Error::DegreeOutOfRange { degree: k, max: space.dim() });
    }
    let twist = match system {
        CoefficientSystem::Twisted(o) => {
            OrientationSystem::new(space, o.cocycle.clone())?;
            Some(o)
        }
        _ => None,
    };
    let mut m = SparseIntMatrix::zeros(space.count(k - 1), space.count(k));
    for (c, col) in integral_boundary_columns(space, k, twist).into_iter().enumerate() {
        for (r, v) in col {
            let v = if matches!(system, CoefficientSystem::Mod2) { Int::from(v.mod2() as i64) } else { v };
            m.set(r as usize, c, v);
        }
    }
    Ok(m)
}

/// Twisted or untwisted boundary of an integral `k`-chain.
pub fn integral_boundary(
    space: &SimplicialSpace,
    k: usize,
    chain: &[Int],
    twist: Option<&OrientationSystem>,
) -> Vec<Int> {
    assert_eq!(chain.len(), space.count(k));
    if k == 0 {
        return Vec::new();
    }
    let mut out = vec![Int::ZERO; space.count(k - 1)];
    for (s, c) in chain.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for i in 0..=k {
            let mut v = sign(i);
            if i == 0 && twist.is_some_and(|o| o.cocycle.get(space.leading_edge(k, s))) {
                v = -v;
            }
            out[space.face(k, s, i)] += &(&v * c);
        }
    }
    out
}

/// Integral coboundary `δφ = φ ∘ ∂_{k+1}` of a `k`-cochain.
pub fn integral_coboundary(space: &SimplicialSpace, k: usize, cochain: &[Int]) -> Vec<Int> {
    assert_eq!(cochain.len(), space.count(k));
    if k >= space.dim() {
        return Vec::new();
    }
    (0..space.count(k + 1))
        .map(|s| {
            (0..=k + 1).fold(Int::ZERO, |acc, i| {
                let v = &cochain[space.face(k + 1, s, i)];
                if v.is_zero() {
                    acc
                } else {
                    acc + &sign(i) * v
                }
            })
        })
        .collect()
}

/// Homology or cohomology of one degree with representatives.
#[derive(Clone, Debug)]
pub struct GroupWithRepresentatives {
    pub degree: usize,
    /// Generators are full (co)chains on the original complex.
    pub group: PresentedGroup,
    subquotient: Subquotient,
}

impl GroupWithRepresentatives {
    pub fn representatives(&self) -> &[Vec<Int>] {
        self.group.generators.as_deref().unwrap_or(&[])
    }
}

/// The integral or twisted chain complex of a space, reduced once and
/// queried per degree.
pub struct IntegralComplex {
    space: Arc<SimplicialSpace>,
    twist: Option<OrientationSystem>,
    reduced: ReducedComplex<Int>,
    homology: Vec<OnceLock<GroupWithRepresentatives>>,
    cohomology: Vec<OnceLock<GroupWithRepresentatives>>,
}

fn dense(cols: &[SparseColumn<Int>], rows: usize) -> DenseIntMatrix {
    let mut m = DenseIntMatrix::zeros(rows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col {
            m.data[*r as usize][c] = v.clone();
        }
    }
    m
}

fn transpose(m: &DenseIntMatrix) -> DenseIntMatrix {
    let mut t = DenseIntMatrix::zeros(m.cols, m.rows);
    for r in 0..m.rows {
        for c in 0..m.cols {
            t.data[c][r] = m.data[r][c].clone();
        }
    }
    t
}

impl IntegralComplex {
    pub fn new(space: Arc<SimplicialSpace>, twist: Option<OrientationSystem>) -> Self {
        let d = space.dim();
        let mut bd = vec![Vec::new()];
        for k in 1..=d {
            bd.push(integral_boundary_columns(&space, k, twist.as_ref()));
        }
        let reduced = ReducedComplex::reduce(space.counts(), bd);
        IntegralComplex {
            homology: (0..=d).map(|_| OnceLock::new()).collect(),
            cohomology: (0..=d).map(|_| OnceLock::new()).collect(),
            space,
            twist,
            reduced,
        }
    }

    pub fn space(&self) -> &Arc<SimplicialSpace> {
        &self.space
    }

    pub fn twist(&self) -> Option<&OrientationSystem> {
        self.twist.as_ref()
    }

    pub fn system_tag(&self) -> SystemTag {
        if self.twist.is_some() {
            SystemTag::Twisted
        } else {
            SystemTag::Integer
        }
    }

    pub fn reduced_dims(&self) -> Vec<usize> {
        (0..=self.space.dim()).map(|k| self.reduced.reduced_dim(k)).collect()
    }

    fn reduced_matrix(&self, k: usize) -> DenseIntMatrix {
        let d = self.space.dim();
        if k == 0 || k > d {
            let rows = if k == 0 { 0 } else { self.reduced.reduced_dim(d) };
            let cols = if k == 0 { self.reduced.reduced_dim(0) } else { 0 };
            return DenseIntMatrix::zeros(rows, cols);
        }
        dense(self.reduced.reduced_boundary(k), self.reduced.reduced_dim(k - 1))
    }

    pub fn homology(&self, k: usize) -> &GroupWithRepresentatives {
        self.homology[k].get_or_init(|| {
            let a = self.reduced_matrix(k);
            let b = self.reduced_matrix(k + 1);
            let sq = Subquotient::compute(&a, &b);
            let gens: Vec<Vec<Int>> = sq.representatives.iter().map(|r| self.reduced.lift_chain(k, r)).collect();
            let mut group = sq.group.clone();
            group.generators = Some(gens);
            GroupWithRepresentatives { degree: k, group, subquotient: sq }
        })
    }

    pub fn cohomology(&self, k: usize) -> &GroupWithRepresentatives {
        self.cohomology[k].get_or_init(|| {
            let a = transpose(&self.reduced_matrix(k + 1));
            let b = transpose(&self.reduced_matrix(k));
            let sq = Subquotient::compute(&a, &b);
            let gens: Vec<Vec<Int>> = sq.representatives.iter().map(|r| self.reduced.lift_cochain(k, r)).collect();
            let mut group = sq.group.clone();
            group.generators = Some(gens);
            GroupWithRepresentatives { degree: k, group, subquotient: sq }
        })
    }

    /// Class coordinates of a `k`-cycle with respect to the homology generators.
    pub fn homology_class(&self, k: usize, cycle: &[Int]) -> Result<Vec<Int>> {
        let b = integral_boundary(&self.space, k, cycle, self.twist.as_ref());
        if b.iter().any(|v| !v.is_zero()) {
            return Err(Error::NotACycle(format!("degree {k} chain has nonzero boundary")));
        }
        let coords = self.reduced.project_chain(k, cycle);
        Ok(self.homology(k).subquotient.class_of(&coords))
    }

    /// Class coordinates of an integral `k`-cocycle (untwisted complex only).
    pub fn cohomology_class(&self, k: usize, cocycle: &[Int]) -> Result<Vec<Int>> {
        let coords = self.reduced.project_cochain(k, cocycle);
        Ok(self.cohomology(k).subquotient.class_of(&coords))
    }

    pub fn is_boundary(&self, k: usize, cycle: &[Int]) -> Result<bool> {
        Ok(self.homology_class(k, cycle)?.iter().all(Int::is_zero))
    }
}

/// The ℤ₂ chain complex, reduced to its minimal form: the surviving cells
/// are a basis of homology and cohomology in every degree.
pub struct Mod2Complex {
    space: Arc<SimplicialSpace>,
    reduced: ReducedComplex<Gf2>,
}

fn to_gf2(bits: &BitVector) -> Vec<Gf2> {
    (0..bits.len()).map(|i| Gf2(bits.get(i))).collect()
}

fn from_gf2(v: &[Gf2]) -> BitVector {
    BitVector::from_bools(&v.iter().map(|g| g.0).collect::<Vec<_>>())
}

impl Mod2Complex {
    pub fn new(space: Arc<SimplicialSpace>) -> Self {
        let mut bd = vec![Vec::new()];
        for k in 1..=space.dim() {
            bd.push(mod2_boundary_columns(&space, k));
        }
        let reduced = ReducedComplex::reduce(space.counts(), bd);
        debug_assert!(reduced.is_minimal());
        Mod2Complex { space, reduced }
    }

    pub fn space(&self) -> &Arc<SimplicialSpace> {
        &self.space
    }

    pub fn betti(&self, k: usize) -> usize {
        self.reduced.reduced_dim(k)
    }

    fn unit(&self, k: usize, i: usize) -> Vec<Gf2> {
        let mut e = vec![Gf2(false); self.betti(k)];
        e[i] = Gf2(true);
        e
    }

    /// Cycle representatives of a basis of `H_k(X; ℤ₂)`.
    pub fn homology_basis(&self, k: usize) -> Vec<BitVector> {
        (0..self.betti(k)).map(|i| from_gf2(&self.reduced.lift_chain(k, &self.unit(k, i)))).collect()
    }

    /// Cocycle representatives of a basis of `H^k(X; ℤ₂)`.
    pub fn cohomology_basis(&self, k: usize) -> Vec<Cochain> {
        (0..self.betti(k)).map(|i| Cochain::new(k, from_gf2(&self.reduced.lift_cochain(k, &self.unit(k, i))))).collect()
    }

    /// Coordinates of the class of a mod-2 cycle.
    pub fn homology_class(&self, k: usize, cycle: &BitVector) -> Result<BitVector> {
        if !self.space.boundary_mod2(k, cycle).is_zero() {
            return Err(Error::NotACycle(format!("degree {k} mod-2 chain has nonzero boundary")));
        }
        Ok(from_gf2(&self.reduced.project_chain(k, &to_gf2(cycle))))
    }

    /// Coordinates of the class of a mod-2 cocycle.
    pub fn cohomology_class(&self, x: &Cochain) -> Result<BitVector> {
        self.check_cocycle(x)?;
        Ok(from_gf2(&self.reduced.project_cochain(x.degree, &to_gf2(&x.values))))
    }

    pub fn is_coboundary(&self, x: &Cochain) -> Result<bool> {
        Ok(self.cohomology_class(x)?.is_zero())
    }

    /// `y` with `δy = x`, or `None` when `x` represents a nonzero class.
    pub fn solve_coboundary(&self, x: &Cochain) -> Result<Option<Cochain>> {
        self.check_cocycle(x)?;
        if x.degree == 0 {
            return Ok(x.is_zero().then(|| Cochain::new(0, BitVector::zeros(0))));
        }
        let (y, residual) = self.reduced.coboundary_witness(x.degree, &to_gf2(&x.values));
        if residual.iter().any(|v| v.0) {
            return Ok(None);
        }
        let y = Cochain::new(x.degree - 1, from_gf2(&y));
        let check = self.space.coboundary_mod2(y.degree, &y.values);
        if check != x.values {
            return Err(Error::Inconsistent("coboundary witness failed verification".into()));
        }
        Ok(Some(y))
    }

    fn check_cocycle(&self, x: &Cochain) -> Result<()> {
        if x.values.len() != self.space.count(x.degree) {
            return Err(Error::DimensionMismatch(format!("cochain length for degree {}", x.degree)));
        }
        if x.degree < self.space.dim() && !self.space.coboundary_mod2(x.degree, &x.values).is_zero() {
            return Err(Error::NotACocycle(Vec::new()));
        }
        Ok(())
    }
}

/// `H_k` for any coefficient system, without representatives for ℤ₂.
pub fn homology(space: &Arc<SimplicialSpace>, k: usize, system: &CoefficientSystem) -> Result<PresentedGroup> {
    if k > space.dim() {
        return Err(Error::DegreeOutOfRange { degree: k, max: space.dim() });
    }
    Ok(match system {
        CoefficientSystem::Integer => IntegralComplex::new(space.clone(), None).homology(k).group.clone(),
        CoefficientSystem::Twisted(o) => IntegralComplex::new(space.clone(), Some(o.clone())).homology(k).group.clone(),
        CoefficientSystem::Mod2 => {
            let m = Mod2Complex::new(space.clone());
            let basis: Vec<Vec<Int>> =
                m.homology_basis(k).iter().map(|b| ChainVector::from_mod2(k, b).coeffs).collect();
            PresentedGroup { free_rank: 0, torsion: vec![Int::from(2); basis.len()], generators: Some(basis) }
        }
    })
}

/// `H^k` with ℤ or ℤ₂ coefficients.
pub fn cohomology(space: &Arc<SimplicialSpace>, k: usize, system: &CoefficientSystem) -> Result<PresentedGroup> {
    if k > space.dim() {
        return Err(Error::DegreeOutOfRange { degree: k, max: space.dim() });
    }
    match system {
        CoefficientSystem::Integer => Ok(IntegralComplex::new(space.clone(), None).cohomology(k).group.clone()),
        CoefficientSystem::Mod2 => {
            let m = Mod2Complex::new(space.clone());
            let basis: Vec<Vec<Int>> =
                m.cohomology_basis(k).iter().map(|c| ChainVector::from_mod2(k, &c.values).coeffs).collect();
            Ok(PresentedGroup { free_rank: 0, torsion: vec![Int::from(2); basis.len()], generators: Some(basis) })
        }
        CoefficientSystem::Twisted(_) => Err(Error::InvalidSpec("twisted cohomology is not provided".into())),
    }
}

/// The top-dimensional chain with every coefficient 1, checked to be a mod-2 cycle.
pub fn fundamental_class_mod2(space: &SimplicialSpace) -> Result<ChainVector> {
    let d = space.dim();
    let all = BitVector::ones(space.count(d));
    if !space.boundary_mod2(d, &all).is_zero() {
        return Err(Error::NotACycle("sum of all facets has nonzero mod-2 boundary".into()));
    }
    Ok(ChainVector::from_mod2(d, &all))
}

/// Generator of `ker ∂_d` for the twisted system, all coefficients ±1,
/// normalized so the first facet has coefficient +1.
pub fn twisted_fundamental_class(space: &Arc<SimplicialSpace>, o: &OrientationSystem) -> Result<ChainVector> {
    let d = space.dim();
    let cx = IntegralComplex::new(space.clone(), Some(o.clone()));
    fundamental_class_of(&cx, d)
}

pub(crate) fn fundamental_class_of(cx: &IntegralComplex, d: usize) -> Result<ChainVector> {
    let h = cx.homology(d);
    let iso = h.group.isomorphism_type();
    if iso != (1, vec![]) {
        return Err(Error::NoFundamentalClass(format!("top homology is {} rather than Z", h.group)));
    }
    let mut z = h.representatives()[0].clone();
    if let Some(bad) = z.iter().find(|v| !v.is_unit()) {
        return Err(Error::NoFundamentalClass(format!("coefficient {bad} is not ±1")));
    }
    if z[0].is_negative() {
        z.iter_mut().for_each(|v| *v = -&*v);
    }
    Ok(ChainVector { degree: d, system: cx.system_tag(), coeffs: z })
}

/// Sq¹ as the Bockstein of `0 → ℤ → ℤ → ℤ₂ → 0`: lift `x` to a 0/1 integer
/// cochain, take `δ`, halve, reduce mod 2.
pub fn bockstein_sq1(space: &SimplicialSpace, x: &Cochain) -> Result<Cochain> {
    let k = x.degree;
    if k < space.dim() && !space.coboundary_mod2(k, &x.values).is_zero() {
        return Err(Error::NotACocycle(Vec::new()));
    }
    if k >= space.dim() {
        return Ok(Cochain::new(k + 1, BitVector::zeros(0)));
    }
    let lift: Vec<Int> = (0..x.values.len()).map(|i| if x.values.get(i) { Int::ONE } else { Int::ZERO }).collect();
    let d = integral_coboundary(space, k, &lift);
    let two = Int::from(2);
    let halves: Vec<bool> = d.iter().map(|v| v.div_exact(&two).mod2()).collect();
    Ok(Cochain::new(k + 1, BitVector::from_bools(&halves)))
}

/// Twisted Bockstein `β₁[c] = [½ ∂c̄]` for a mod-2 2-cycle `c`, lifted with 0/1
/// coefficients to a twisted integral chain.
pub fn twisted_bockstein_beta1(space: &SimplicialSpace, c: &BitVector, o: &OrientationSystem) -> Result<ChainVector> {
    twisted_bockstein(space, 2, c, o)
}

pub fn twisted_bockstein(
    space: &SimplicialSpace,
    k: usize,
    c: &BitVector,
    o: &OrientationSystem,
) -> Result<ChainVector> {
    if !space.boundary_mod2(k, c).is_zero() {
        return Err(Error::NotACycle(format!("degree {k} mod-2 chain has nonzero boundary")));
    }
    let lift: Vec<Int> = (0..c.len()).map(|i| if c.get(i) { Int::ONE } else { Int::ZERO }).collect();
    let b = integral_boundary(space, k, &lift, Some(o));
    let two = Int::from(2);
    let half = b.iter().map(|v| v.div_exact(&two)).collect();
    Ok(ChainVector { degree: k - 1, system: SystemTag::Twisted, coeffs: half })
}

/// `⟨x, c⟩ ∈ ℤ₂` after reducing `c` mod 2.
pub fn evaluate_pairing(x: &Cochain, c: &ChainVector) -> Result<bool> {
    if x.degree != c.degree {
        return Err(Error::DimensionMismatch(format!("cochain degree {} vs chain degree {}", x.degree, c.degree)));
    }
    if x.values.len() != c.coeffs.len() {
        return Err(Error::DimensionMismatch("cochain and chain lengths differ".into()));
    }
    Ok(x.values.and_parity(&c.mod2()))
}

/// Pairing against a mod-2 chain given as bits.
pub fn evaluate_bits(x: &Cochain, c: &BitVector) -> bool {
    x.values.and_parity(c)
}

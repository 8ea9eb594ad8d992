//! The pipeline computing `π^n(X) ≅ 𝔽₁(X)` for a closed `(n+1)`-manifold:
//! type classification, the extension functional on `Tor₂ H₁(X; o_X)`, the
//! assembled group, and the Steenrod short exact sequence as a cross-check.

use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use crate::chains::{
    fundamental_class_of, twisted_bockstein_beta1, ChainVector, Cochain, IntegralComplex, Mod2Complex,
    OrientationSystem, SimplicialSpace,
};
use crate::error::{Error, Result};
use crate::linalg::{
    group_from_presentation, kernel_mod2, solve_mod2, BitVector, Gf2Matrix, Int, PresentedGroup, SparseIntMatrix,
};
use crate::simplicial::FacetComplex;
use crate::steenrod::{
    cup, evaluate_top, pin_minus_obstruction, sq, stiefel_whitney, PinMinusObstruction, StiefelWhitney,
};

/// Smallest manifold dimension the pipeline accepts (`n ≥ 3`).
pub const MIN_DIMENSION: usize = 4;

/// Everything derived from a validated triangulation that later stages share.
pub struct Manifold {
    space: Arc<SimplicialSpace>,
    mod2: Mod2Complex,
    sw: StiefelWhitney,
    orientation: OrientationSystem,
    twisted: IntegralComplex,
    integral: OnceLock<IntegralComplex>,
    obstruction: PinMinusObstruction,
    timings: Vec<(String, Duration)>,
}

impl Manifold {
    pub fn new(complex: FacetComplex) -> Result<Self> {
        let mut timings = Vec::new();
        let t = Instant::now();
        if complex.dim() < MIN_DIMENSION {
            return Err(Error::InvalidComplex(format!(
                "dimension {} is below {MIN_DIMENSION}; the pipeline needs n + 1 with n ≥ 3",
                complex.dim()
            )));
        }
        let space = SimplicialSpace::validated(complex)?;
        timings.push(("validation".to_string(), t.elapsed()));

        let t = Instant::now();
        let mod2 = Mod2Complex::new(space.clone());
        timings.push(("mod2_reduction".to_string(), t.elapsed()));

        let t = Instant::now();
        let sw = stiefel_whitney(&mod2)?;
        let obstruction = pin_minus_obstruction(&mod2, &sw)?;
        timings.push(("stiefel_whitney".to_string(), t.elapsed()));

        let t = Instant::now();
        let orientation = OrientationSystem::new(&space, sw.w1.representative.values.clone())?;
        let twisted = IntegralComplex::new(space.clone(), Some(orientation.clone()));
        timings.push(("twisted_reduction".to_string(), t.elapsed()));

        Ok(Manifold { space, mod2, sw, orientation, twisted, integral: OnceLock::new(), obstruction, timings })
    }

    pub fn space(&self) -> &Arc<SimplicialSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mod2(&self) -> &Mod2Complex {
        &self.mod2
    }

    pub fn stiefel_whitney(&self) -> &StiefelWhitney {
        &self.sw
    }

    pub fn orientation(&self) -> &OrientationSystem {
        &self.orientation
    }

    pub fn twisted(&self) -> &IntegralComplex {
        &self.twisted
    }

    pub fn integral(&self) -> &IntegralComplex {
        self.integral.get_or_init(|| IntegralComplex::new(self.space.clone(), None))
    }

    pub fn pin_minus_obstruction(&self) -> &PinMinusObstruction {
        &self.obstruction
    }

    /// Value of `w₁² + w₂` on a mod-2 2-cycle.
    pub fn obstruction_on(&self, cycle: &BitVector) -> bool {
        self.obstruction.class.representative.values.and_parity(cycle)
    }

    pub fn is_orientable(&self) -> bool {
        self.mod2.is_coboundary(&self.sw.w1.representative).unwrap_or(false)
    }

    /// `H₁(X; o_X)` with twisted 1-cycle generators.
    pub fn twisted_h1(&self) -> &PresentedGroup {
        &self.twisted.homology(1).group
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeClassification {
    /// `(w₁² + w₂) ∘ r` is 1 on the twisted 2-cycle `witness`, the
    /// `generator`-th generator of `H₂(X; o_X)`.
    TypeI { generator: usize, witness: Vec<Int> },
    /// Pin⁻: `δ witness = w₁² + w₂`.
    TypeIIa { witness: Cochain },
    /// Type II but not Pin⁻: a mod-2 2-cycle on which `w₁² + w₂` is 1.
    TypeIIb { certificate: BitVector },
}

impl TypeClassification {
    pub fn label(&self) -> &'static str {
        match self {
            TypeClassification::TypeI { .. } => "I",
            TypeClassification::TypeIIa { .. } => "IIa",
            TypeClassification::TypeIIb { .. } => "IIb",
        }
    }

    pub fn is_type_one(&self) -> bool {
        matches!(self, TypeClassification::TypeI { .. })
    }
}

pub fn classify_type(m: &Manifold) -> Result<TypeClassification> {
    let h2 = m.twisted.homology(2);
    for (i, z) in h2.representatives().iter().enumerate() {
        let reduced = ChainVector { degree: 2, system: m.twisted.system_tag(), coeffs: z.clone() }.mod2();
        if m.obstruction_on(&reduced) {
            return Ok(TypeClassification::TypeI { generator: i, witness: z.clone() });
        }
    }
    if let Some(witness) = &m.obstruction.witness {
        return Ok(TypeClassification::TypeIIa { witness: witness.clone() });
    }
    // A nonzero class pairs nontrivially with some basis cycle (ℤ₂ is a field).
    let certificate = m
        .mod2
        .homology_basis(2)
        .into_iter()
        .find(|c| m.obstruction_on(c))
        .ok_or_else(|| Error::Inconsistent("w₁² + w₂ is nonzero but vanishes on every 2-cycle".into()))?;
    Ok(TypeClassification::TypeIIb { certificate })
}

/// Value of the extension functional on the order-2 element of one even
/// cyclic factor of `H₁(X; o_X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonEntry {
    /// Index into the torsion factors.
    pub factor: usize,
    pub order: Int,
    pub value: bool,
    /// Mod-2 2-cycle `c` with `β₁[c] = (d/2)·x`, when computed from a manifold.
    pub preimage: Option<BitVector>,
    /// Value recomputed on an independently chosen second preimage.
    pub second_value: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EpsilonFunctional {
    pub entries: Vec<EpsilonEntry>,
}

impl EpsilonFunctional {
    /// Functional with the given values on the even factors of `h`, in order.
    pub fn from_values(h: &PresentedGroup, values: &[bool]) -> Result<Self> {
        let even = even_factors(h);
        if even.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} even torsion factors",
                values.len(),
                even.len()
            )));
        }
        Ok(EpsilonFunctional {
            entries: even
                .into_iter()
                .zip(values)
                .map(|(factor, &value)| EpsilonEntry {
                    factor,
                    order: h.torsion[factor].clone(),
                    value,
                    preimage: None,
                    second_value: None,
                })
                .collect(),
        })
    }

    pub fn zero(h: &PresentedGroup) -> Self {
        Self::from_values(h, &vec![false; even_factors(h).len()]).expect("lengths agree")
    }

    pub fn value(&self, factor: usize) -> Option<bool> {
        self.entries.iter().find(|e| e.factor == factor).map(|e| e.value)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| !e.value)
    }

    /// Every entry computed twice agrees.
    pub fn preimage_independent(&self) -> bool {
        self.entries.iter().all(|e| e.second_value.is_none_or(|v| v == e.value))
    }
}

fn even_factors(h: &PresentedGroup) -> Vec<usize> {
    h.torsion.iter().enumerate().filter(|(_, d)| d.is_even()).map(|(i, _)| i).collect()
}

/// `ε` on `Tor₂ H₁(X; o_X)` via `ε ∘ β₁ = ⟨w₁² + w₂, ·⟩`.
pub fn epsilon_functional(m: &Manifold) -> Result<EpsilonFunctional> {
    let h1 = m.twisted.homology(1);
    let even = even_factors(&h1.group);
    if even.is_empty() {
        return Ok(EpsilonFunctional::default());
    }
    let basis = m.mod2.homology_basis(2);
    let rows: Vec<BitVector> = basis.iter().map(|c| beta_coordinates(m, c, &even)).collect::<Result<_>>()?;
    // Row j: coordinates of β₁[c_j] on the even factors; solve aᵀ B = e_i.
    let b = Gf2Matrix::from_rows(rows, even.len());
    let bt = b.transpose();
    let kernel = kernel_mod2(&bt);
    let mut entries = Vec::with_capacity(even.len());
    for (slot, &factor) in even.iter().enumerate() {
        let mut target = BitVector::zeros(even.len());
        target.set(slot, true);
        let a = solve_mod2(&bt, &target)?.ok_or(Error::NoPreimage(factor))?;
        let preimage = combine(&basis, &a, m.space.count(2));
        let value = m.obstruction_on(&preimage);

        // Second preimage: shift by a kernel element if there is one,
        // otherwise by a boundary; both must leave β₁ and ε unchanged.
        let second = match kernel.first() {
            Some(k) => {
                let mut shifted = preimage.clone();
                shifted.xor_assign(&combine(&basis, k, m.space.count(2)));
                shifted
            }
            None => {
                let mut shifted = preimage.clone();
                if m.space.dim() >= 3 && m.space.count(3) > 0 {
                    let mut tet = BitVector::zeros(m.space.count(3));
                    tet.set(0, true);
                    shifted.xor_assign(&m.space.boundary_mod2(3, &tet));
                }
                shifted
            }
        };
        if beta_coordinates(m, &second, &even)? != target {
            return Err(Error::EpsilonUndefined(factor));
        }
        entries.push(EpsilonEntry {
            factor,
            order: h1.group.torsion[factor].clone(),
            value,
            preimage: Some(preimage),
            second_value: Some(m.obstruction_on(&second)),
        });
    }
    Ok(EpsilonFunctional { entries })
}

fn combine(basis: &[BitVector], coeffs: &BitVector, len: usize) -> BitVector {
    let mut out = BitVector::zeros(len);
    for j in coeffs.ones_iter() {
        out.xor_assign(&basis[j]);
    }
    out
}

/// `β₁[c]` as a ℤ₂ vector over the even factors: the class of `β₁[c]` has
/// coordinate `(d/2)·b` on a factor of order `d`, and `b` is returned.
fn beta_coordinates(m: &Manifold, c: &BitVector, even: &[usize]) -> Result<BitVector> {
    let beta = twisted_bockstein_beta1(&m.space, c, &m.orientation)?;
    let coords = m.twisted.homology_class(1, &beta.coeffs)?;
    let torsion = &m.twisted.homology(1).group.torsion;
    let two = Int::from(2);
    // Odd and free coordinates of a 2-torsion class vanish.
    for (i, v) in coords.iter().enumerate() {
        let is_even = i < torsion.len() && torsion[i].is_even();
        if !is_even && !v.is_zero() {
            return Err(Error::Inconsistent(format!("β₁ image has nonzero coordinate on factor {i}")));
        }
    }
    let mut out = BitVector::zeros(even.len());
    for (slot, &i) in even.iter().enumerate() {
        let half = torsion[i].div_exact(&two);
        let (q, r) = coords[i].div_mod_floor(&half);
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("β₁ image on factor {i} is not 2-torsion")));
        }
        out.set(slot, q.mod2());
    }
    Ok(out)
}

/// Relations of the extension: columns `x_1 … x_t, f_1 … f_r, u`, rows
/// `d_i x_i − ε_i u` followed by `2u`.
pub fn extension_relations(h: &PresentedGroup, eps: &EpsilonFunctional) -> Result<SparseIntMatrix> {
    let t = h.torsion.len();
    let u = t + h.free_rank;
    let mut rel = SparseIntMatrix::zeros(t + 1, u + 1);
    for (i, d) in h.torsion.iter().enumerate() {
        rel.set(i, i, d.clone());
        if d.is_even() {
            let e = eps.value(i).ok_or(Error::EpsilonUndefined(i))?;
            if e {
                rel.set(i, u, -Int::ONE);
            }
        }
    }
    rel.set(t, u, Int::from(2));
    Ok(rel)
}

pub fn assemble_extension(h: &PresentedGroup, eps: &EpsilonFunctional) -> Result<PresentedGroup> {
    Ok(group_from_presentation(&extension_relations(h, eps)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CrossCheck {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CrossCheck { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// Data of the Steenrod sequence `0 → Q → π^n(X) → H^n(X; ℤ) → 0`.
#[derive(Clone, Debug)]
pub struct SteenrodSes {
    /// `H^{n+1}(X; ℤ₂) / Sq²(r H^{n−1}(X; ℤ))`.
    pub coker: PresentedGroup,
    pub top_integral: PresentedGroup,
    /// `⟨Sq² r(g), [X]₂⟩` for each generator `g` of `H^{n−1}(X; ℤ)`.
    pub sq2_values: Vec<bool>,
    pub checks: Vec<CrossCheck>,
}

pub fn steenrod_ses_crosscheck(
    m: &Manifold,
    classification: &TypeClassification,
    f1: &PresentedGroup,
) -> Result<SteenrodSes> {
    let d = m.dim();
    let integral = m.integral();
    let gens = integral.cohomology(d - 2).representatives().to_vec();
    let mut sq2_values = Vec::with_capacity(gens.len());
    for g in &gens {
        let bits = BitVector::from_bools(&g.iter().map(Int::mod2).collect::<Vec<_>>());
        let x = Cochain::new(d - 2, bits);
        sq2_values.push(evaluate_top(&m.space, &sq(&m.space, 2, &x)?));
    }
    // H^{n+1}(X; ℤ₂) = ℤ₂ for a closed connected manifold.
    let coker = if sq2_values.iter().any(|&v| v) { PresentedGroup::trivial() } else { PresentedGroup::z2() };
    let top_integral = integral.cohomology(d - 1).group.clone();
    let h1 = m.twisted_h1();
    let strip = |g: &PresentedGroup| PresentedGroup::new(g.free_rank, g.torsion.clone());

    let mut checks = Vec::new();
    let type_agrees = coker.is_trivial() == classification.is_type_one();
    checks.push(CrossCheck::new(
        "ses_type_agreement",
        type_agrees,
        format!("coker(Sq²∘r) = {}, type {}", coker, classification.label()),
    ));
    let pd = top_integral.is_isomorphic(h1);
    checks.push(CrossCheck::new(
        "twisted_poincare_duality_h1",
        pd,
        format!("H^{}(X;Z) = {}, H_1(X;o_X) = {}", d - 1, strip(&top_integral), strip(h1)),
    ));
    let cardinality = match (f1.order(), top_integral.order()) {
        (Some(f), Some(h)) => {
            let q = coker.order().expect("finite");
            CrossCheck::new("ses_cardinality", f == &q * &h, format!("|F1| = {f}, |Q|·|H^n| = {}", &q * &h))
        }
        _ => CrossCheck::new(
            "ses_cardinality",
            f1.free_rank == top_integral.free_rank,
            format!("infinite; free ranks {} and {}", f1.free_rank, top_integral.free_rank),
        ),
    };
    checks.push(cardinality);
    Ok(SteenrodSes { coker, top_integral, sq2_values, checks })
}

/// Per-degree group tables; generator data dropped.
#[derive(Clone, Debug)]
pub struct HomologyTables {
    pub integral_homology: Vec<PresentedGroup>,
    pub integral_cohomology: Vec<PresentedGroup>,
    pub twisted_homology: Vec<PresentedGroup>,
    pub mod2_betti: Vec<usize>,
}

/// A Stiefel–Whitney class as a cocycle and its coordinates in the chosen
/// basis of `H^k(X; ℤ₂)`.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub degree: usize,
    pub coordinates: BitVector,
    pub support: usize,
    pub is_zero: bool,
}

#[derive(Clone, Debug)]
pub struct CohomotopyReport {
    pub dimension: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub tables: HomologyTables,
    pub w1: ClassData,
    pub w2: ClassData,
    pub pin_minus: bool,
    pub classification: TypeClassification,
    pub h1_twisted: PresentedGroup,
    pub epsilon: Option<EpsilonFunctional>,
    pub f1: PresentedGroup,
    pub steenrod: Option<SteenrodSes>,
    pub crosschecks: Vec<CrossCheck>,
    pub timings: Vec<(String, Duration)>,
}

impl CohomotopyReport {
    pub fn all_checks_pass(&self) -> bool {
        self.crosschecks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PipelineOptions {
    pub skip_crosscheck: bool,
}

pub fn compute_f1(complex: FacetComplex, options: PipelineOptions) -> Result<CohomotopyReport> {
    let m = Manifold::new(complex)?;
    compute_f1_for(&m, options)
}

pub fn compute_f1_for(m: &Manifold, options: PipelineOptions) -> Result<CohomotopyReport> {
    let mut timings = m.timings.clone();
    let d = m.dim();
    let strip = |g: &PresentedGroup| PresentedGroup::new(g.free_rank, g.torsion.clone());

    let t = Instant::now();
    let classification = classify_type(m)?;
    let h1 = strip(m.twisted_h1());
    let epsilon = if classification.is_type_one() { None } else { Some(epsilon_functional(m)?) };
    let f1 = match &epsilon {
        None => h1.clone(),
        Some(eps) => strip(&assemble_extension(&h1, eps)?),
    };
    timings.push(("extension".to_string(), t.elapsed()));

    let mut crosschecks = Vec::new();
    let fundamental = fundamental_class_of(&m.twisted, d);
    crosschecks.push(CrossCheck::new(
        "twisted_fundamental_class",
        fundamental.is_ok(),
        match &fundamental {
            Ok(_) => format!("H_{d}(X;o_X) = Z with ±1 coefficients"),
            Err(e) => e.to_string(),
        },
    ));
    let type_two = !classification.is_type_one();
    let law = f1.free_rank == h1.free_rank
        && match (f1.order(), h1.order()) {
            (Some(f), Some(h)) => f == if type_two { &h * &Int::from(2) } else { h },
            _ => true,
        };
    crosschecks.push(CrossCheck::new(
        "cardinality_law",
        law,
        format!("F1 = {f1}, H_1(X;o_X) = {h1}, type {}", classification.label()),
    ));
    let pin_consistent = match &classification {
        TypeClassification::TypeIIa { .. } => epsilon.as_ref().is_some_and(EpsilonFunctional::is_zero),
        _ => true,
    };
    crosschecks.push(CrossCheck::new("pin_minus_splits", pin_consistent, "ε vanishes when X is Pin⁻"));
    if let Some(eps) = &epsilon {
        crosschecks.push(CrossCheck::new(
            "epsilon_preimage_independence",
            eps.preimage_independent(),
            format!("{} factor(s) evaluated on two preimages", eps.entries.len()),
        ));
    }

    let steenrod = if options.skip_crosscheck {
        None
    } else {
        let t = Instant::now();
        let ses = steenrod_ses_crosscheck(m, &classification, &f1)?;
        crosschecks.extend(ses.checks.iter().cloned());
        timings.push(("steenrod_crosscheck".to_string(), t.elapsed()));
        Some(ses)
    };

    let t = Instant::now();
    let integral = m.integral();
    let tables = HomologyTables {
        integral_homology: (0..=d).map(|k| strip(&integral.homology(k).group)).collect(),
        integral_cohomology: (0..=d).map(|k| strip(&integral.cohomology(k).group)).collect(),
        twisted_homology: (0..=d).map(|k| strip(&m.twisted.homology(k).group)).collect(),
        mod2_betti: (0..=d).map(|k| m.mod2.betti(k)).collect(),
    };
    timings.push(("homology_tables".to_string(), t.elapsed()));

    Ok(CohomotopyReport {
        dimension: d,
        f_vector: m.space.counts(),
        euler_characteristic: m.space.euler_characteristic(),
        orientable: m.is_orientable(),
        tables,
        w1: class_data(m, &m.sw.w1.representative)?,
        w2: class_data(m, &m.sw.w2.representative)?,
        pin_minus: m.obstruction.vanishes(),
        classification,
        h1_twisted: h1,
        epsilon,
        f1,
        steenrod,
        crosschecks,
        timings,
    })
}

fn class_data(m: &Manifold, x: &Cochain) -> Result<ClassData> {
    let coordinates = m.mod2.cohomology_class(x)?;
    Ok(ClassData { degree: x.degree, is_zero: coordinates.is_zero(), coordinates, support: x.values.count_ones() })
}

/// `⟨x ⌣ y, [X]₂⟩`, exposed for duality checks.
pub fn cup_pairing(m: &Manifold, x: &Cochain, y: &Cochain) -> Result<bool> {
    Ok(evaluate_top(&m.space, &cup(&m.space, x, y)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn z2_extensions() {
        let h = PresentedGroup::z2();
        let nonsplit = assemble_extension(&h, &EpsilonFunctional::from_values(&h, &[true]).unwrap()).unwrap();
        assert_eq!(nonsplit.isomorphism_type(), (0, ints(&[4])));
        let split = assemble_extension(&h, &EpsilonFunctional::zero(&h)).unwrap();
        assert_eq!(split.isomorphism_type(), (0, ints(&[2, 2])));
    }

    #[test]
    fn z4_nonsplit_gives_z8() {
        let h = PresentedGroup::new(0, ints(&[4]));
        let g = assemble_extension(&h, &EpsilonFunctional::from_values(&h, &[true]).unwrap()).unwrap();
        assert_eq!(g.isomorphism_type(), (0, ints(&[8])));
    }

    #[test]
    fn odd_and_free_factors_need_no_value() {
        let h = PresentedGroup::new(2, ints(&[3]));
        let g = assemble_extension(&h, &EpsilonFunctional::default()).unwrap();
        assert_eq!(g.isomorphism_type(), (2, ints(&[6])));
    }

    #[test]
    fn missing_value_is_an_error() {
        let h = PresentedGroup::new(0, ints(&[2, 4]));
        let partial = EpsilonFunctional::from_values(&PresentedGroup::z2(), &[true]).unwrap();
        assert!(matches!(assemble_extension(&h, &partial), Err(Error::EpsilonUndefined(1))));
    }
}

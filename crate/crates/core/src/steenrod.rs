//! Cup and cup-i products of simplicial ℤ₂ cochains, Steenrod squares, and
//! the Wu and Stiefel–Whitney classes derived from them.

use rayon::prelude::*;

use crate::chains::{Cochain, Mod2Complex, SimplicialSpace};
use crate::error::{Error, Result};
use crate::linalg::{rank_mod2, solve_mod2, BitVector, Gf2Matrix};

/// A ℤ₂ cocycle standing for its cohomology class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleClass {
    pub degree: usize,
    pub representative: Cochain,
}

impl CocycleClass {
    pub fn new(space: &SimplicialSpace, representative: Cochain) -> Result<Self> {
        let k = representative.degree;
        if representative.values.len() != cochain_len(space, k) {
            return Err(Error::ComplexMismatch);
        }
        if k < space.dim() && !space.coboundary_mod2(k, &representative.values).is_zero() {
            return Err(Error::NotACocycle(Vec::new()));
        }
        Ok(CocycleClass { degree: k, representative })
    }
}

fn cochain_len(space: &SimplicialSpace, k: usize) -> usize {
    if k <= space.dim() {
        space.count(k)
    } else {
        0
    }
}

fn check_operand(space: &SimplicialSpace, x: &Cochain) -> Result<()> {
    if x.values.len() != cochain_len(space, x.degree) {
        return Err(Error::ComplexMismatch);
    }
    Ok(())
}

/// Value of a cochain on the sub-simplex of `simplex` at the given positions.
#[inline]
fn value_on(space: &SimplicialSpace, x: &Cochain, simplex: &[u32], positions: &[usize], buf: &mut Vec<u32>) -> bool {
    buf.clear();
    buf.extend(positions.iter().map(|&p| simplex[p]));
    match space.skeleton(x.degree).index_of(buf) {
        Some(i) => x.values.get(i),
        None => false,
    }
}

/// Alexander–Whitney cup product: front `p`-face times back `q`-face.
pub fn cup(space: &SimplicialSpace, x: &Cochain, y: &Cochain) -> Result<Cochain> {
    cup_i(space, x, y, 0)
}

/// Steenrod's `∪_i` product over the global vertex order.
///
/// On an `n`-simplex (`n = p + q - i`) the sum runs over junctions
/// `0 ≤ j_0 < … < j_i ≤ n` cutting `[0, n]` into blocks
/// `[0, j_0], [j_0, j_1], …, [j_i, n]`; `x` is evaluated on the union of the
/// even blocks and `y` on the union of the odd ones, keeping terms where both
/// unions have the right number of vertices.
pub fn cup_i(space: &SimplicialSpace, x: &Cochain, y: &Cochain, i: usize) -> Result<Cochain> {
    check_operand(space, x)?;
    check_operand(space, y)?;
    let (p, q) = (x.degree, y.degree);
    if i > p + q {
        return Err(Error::DegreeOutOfRange { degree: i, max: p + q });
    }
    let n = p + q - i;
    if n > space.dim() {
        return Ok(Cochain::new(n, BitVector::zeros(0)));
    }
    if x.is_zero() || y.is_zero() {
        return Ok(Cochain::zero(space, n));
    }
    let junction_sets = junctions(n, i);
    let terms: Vec<(Vec<usize>, Vec<usize>)> = junction_sets
        .iter()
        .filter_map(|js| {
            let (front, back) = split_blocks(n, js);
            (front.len() == p + 1 && back.len() == q + 1).then_some((front, back))
        })
        .collect();
    let skel = space.skeleton(n);
    let bits: Vec<bool> = (0..skel.len())
        .into_par_iter()
        .map_init(Vec::new, |buf, s| {
            let simplex = skel.get(s);
            terms.iter().fold(false, |acc, (front, back)| {
                acc ^ (value_on(space, x, simplex, front, buf) && value_on(space, y, simplex, back, buf))
            })
        })
        .collect();
    Ok(Cochain::new(n, BitVector::from_bools(&bits)))
}

/// All strictly increasing `(i+1)`-tuples in `0..=n`.
fn junctions(n: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i + 1);
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            rec(j + 1, n, len, cur, out);
            cur.pop();
        }
    }
    rec(0, n, i + 1, &mut cur, &mut out);
    out
}

/// Vertex positions of the even and odd blocks.
fn split_blocks(n: usize, js: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut bounds = Vec::with_capacity(js.len() + 2);
    bounds.push(0);
    bounds.extend_from_slice(js);
    bounds.push(n);
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for (b, w) in bounds.windows(2).enumerate() {
        let target = if b % 2 == 0 { &mut even } else { &mut odd };
        target.extend(w[0]..=w[1]);
    }
    (even, odd)
}

/// `Sq^k x = x ∪_{p-k} x` for a `p`-cocycle; zero when `k > p`.
pub fn sq(space: &SimplicialSpace, k: usize, x: &Cochain) -> Result<Cochain> {
    check_operand(space, x)?;
    let p = x.degree;
    if k > p {
        let n = p + k;
        return Ok(Cochain::new(n, BitVector::zeros(cochain_len(space, n))));
    }
    let out = cup_i(space, x, x, p - k)?;
    if out.degree < space.dim() && !space.coboundary_mod2(out.degree, &out.values).is_zero() {
        return Err(Error::Inconsistent(format!("Sq^{k} of a degree-{p} cochain is not a cocycle")));
    }
    Ok(out)
}

/// `⟨x, [X]₂⟩` for a top-degree cochain: parity of its support.
pub fn evaluate_top(space: &SimplicialSpace, x: &Cochain) -> bool {
    debug_assert_eq!(x.degree, space.dim());
    x.values.count_ones() & 1 == 1
}

/// `⟨v_k ⌣ x, [X]₂⟩ = ⟨Sq^k x, [X]₂⟩` for every `x ∈ H^{d-k}(X; ℤ₂)`.
pub fn wu_class(mod2: &Mod2Complex, k: usize) -> Result<CocycleClass> {
    let space = mod2.space();
    let d = space.dim();
    if k > d {
        return Err(Error::DegreeOutOfRange { degree: k, max: d });
    }
    let lower = mod2.cohomology_basis(k);
    let upper = mod2.cohomology_basis(d - k);
    if lower.len() != upper.len() {
        return Err(Error::DegeneratePairing(k));
    }
    let pairing = pairing_matrix(space, &lower, &upper)?;
    if rank_mod2(&pairing) != lower.len() {
        return Err(Error::DegeneratePairing(k));
    }
    let targets: Vec<bool> = upper.iter().map(|x| Ok(evaluate_top(space, &sq(space, k, x)?))).collect::<Result<_>>()?;
    // Σ_i c_i P[i][j] = s_j, i.e. Pᵀ c = s.
    let coeffs = solve_mod2(&pairing.transpose(), &BitVector::from_bools(&targets))?
        .ok_or_else(|| Error::Inconsistent(format!("Wu class v_{k} has no solution")))?;
    let mut v = Cochain::zero(space, k);
    for i in coeffs.ones_iter() {
        v = v.add(&lower[i]);
    }
    // Round trip against every basis element.
    for (x, &t) in upper.iter().zip(&targets) {
        if evaluate_top(space, &cup(space, &v, x)?) != t {
            return Err(Error::Inconsistent(format!("Wu class v_{k} fails duality")));
        }
    }
    CocycleClass::new(space, v)
}

/// `P[i][j] = ⟨y_i ⌣ x_j, [X]₂⟩`.
pub fn pairing_matrix(space: &SimplicialSpace, lower: &[Cochain], upper: &[Cochain]) -> Result<Gf2Matrix> {
    let mut p = Gf2Matrix::zeros(lower.len(), upper.len());
    for (i, y) in lower.iter().enumerate() {
        for (j, x) in upper.iter().enumerate() {
            p.set(i, j, evaluate_top(space, &cup(space, y, x)?));
        }
    }
    Ok(p)
}

pub fn wu_classes(mod2: &Mod2Complex) -> Result<(CocycleClass, CocycleClass)> {
    Ok((wu_class(mod2, 1)?, wu_class(mod2, 2)?))
}

#[derive(Clone, Debug)]
pub struct StiefelWhitney {
    pub w1: CocycleClass,
    pub w2: CocycleClass,
}

/// `w = Sq(v)`: `w₁ = v₁`, `w₂ = v₁² + v₂`.
pub fn stiefel_whitney(mod2: &Mod2Complex) -> Result<StiefelWhitney> {
    let (v1, v2) = wu_classes(mod2)?;
    stiefel_whitney_from_wu(mod2.space(), &v1, &v2)
}

pub fn stiefel_whitney_from_wu(
    space: &SimplicialSpace,
    v1: &CocycleClass,
    v2: &CocycleClass,
) -> Result<StiefelWhitney> {
    let v1_sq = cup(space, &v1.representative, &v1.representative)?;
    let w2 = v1_sq.add(&v2.representative);
    Ok(StiefelWhitney { w1: v1.clone(), w2: CocycleClass::new(space, w2)? })
}

#[derive(Clone, Debug)]
pub struct PinMinusObstruction {
    /// Representative of `w₁² + w₂`.
    pub class: CocycleClass,
    /// `y` with `δy = w₁² + w₂` when the class vanishes.
    pub witness: Option<Cochain>,
}

impl PinMinusObstruction {
    pub fn vanishes(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn pin_minus_obstruction(mod2: &Mod2Complex, sw: &StiefelWhitney) -> Result<PinMinusObstruction> {
    let space = mod2.space();
    let w1 = &sw.w1.representative;
    let rep = cup(space, w1, w1)?.add(&sw.w2.representative);
    let witness = mod2.solve_coboundary(&rep)?;
    Ok(PinMinusObstruction { class: CocycleClass::new(space, rep)?, witness })
}

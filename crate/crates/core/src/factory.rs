//! Standard triangulations and bundled fixtures.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::simplicial::{load_complex, FacetComplex};

/// Environment variable overriding the fixture directory.
pub const FIXTURE_ENV: &str = "COHOMOTOPY_FIXTURES";

const CP2_9: &str = include_str!("../fixtures/cp2_9.txt");

fn from_u32(facets: Vec<Vec<u32>>, name: String) -> FacetComplex {
    FacetComplex::new(facets.into_iter().map(|f| f.into_iter().map(u64::from).collect()).collect(), Some(name))
        .expect("generated facets are well formed")
}

/// Boundary of the `(d+1)`-simplex.
pub fn sphere(d: usize) -> Result<FacetComplex> {
    if d < 1 {
        return Err(Error::InvalidSpec("sphere dimension must be at least 1".into()));
    }
    let n = d as u32 + 2;
    let facets = (0..n).map(|skip| (0..n).filter(|&v| v != skip).collect()).collect();
    Ok(from_u32(facets, format!("sphere {d}")))
}

pub fn circle(m: usize) -> Result<FacetComplex> {
    if m < 3 {
        return Err(Error::InvalidSpec("circle needs at least 3 vertices".into()));
    }
    let m = m as u32;
    let facets = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    Ok(from_u32(facets, format!("circle {m}")))
}

/// Barycentric subdivision: vertices are the nonempty faces, facets the
/// maximal flags. Faces are numbered by `(dimension, vertex tuple)`.
pub fn barycentric_subdivision(k: &FacetComplex) -> FacetComplex {
    let skeleta = k.skeleta();
    let mut offset = Vec::with_capacity(skeleta.len());
    let mut total = 0u32;
    for s in &skeleta {
        offset.push(total);
        total += s.len() as u32;
    }
    let mut facets = Vec::new();
    let mut flag = Vec::with_capacity(k.dim() + 1);
    for f in k.facets() {
        flags(f, &mut flag, &mut |chain| {
            // `chain` lists faces from the facet down to a vertex.
            let mut verts: Vec<u32> = chain
                .iter()
                .map(|face| offset[face.len() - 1] + skeleta[face.len() - 1].index_of(face).expect("face") as u32)
                .collect();
            verts.sort_unstable();
            facets.push(verts);
        });
    }
    let name = format!("sd({})", k.name().unwrap_or("K"));
    from_u32(facets, name)
}

/// Calls `f` with every maximal chain `facet ⊃ … ⊃ vertex` of faces of `facet`.
fn flags(facet: &[u32], chain: &mut Vec<Vec<u32>>, f: &mut impl FnMut(&[Vec<u32>])) {
    chain.push(facet.to_vec());
    if facet.len() == 1 {
        f(chain);
    } else {
        for skip in 0..facet.len() {
            let face: Vec<u32> = facet.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            flags(&face, chain, f);
        }
    }
    chain.pop();
}

/// A face of the cross-polytope: sign per coordinate, at least one nonzero,
/// so it names the face spanned by `{sign_i · e_i}`.
type SignVector = Vec<i8>;

fn cross_polytope_facets(d: usize) -> Vec<SignVector> {
    (0..1u32 << (d + 1)).map(|mask| (0..=d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

/// Boundary of the `(d+1)`-dimensional cross-polytope: vertices `±e_i`
/// numbered `2i` and `2i + 1`.
pub fn cross_polytope_sphere(d: usize) -> Result<FacetComplex> {
    if d < 1 {
        return Err(Error::InvalidSpec("cross-polytope dimension must be at least 1".into()));
    }
    let facets = cross_polytope_facets(d)
        .into_iter()
        .map(|signs| signs.iter().enumerate().map(|(i, &s)| 2 * i as u32 + u32::from(s < 0)).collect())
        .collect();
    Ok(from_u32(facets, format!("cross-polytope sphere {d}")))
}

/// `ℝP^d` as the quotient of the subdivided cross-polytope sphere by the
/// antipodal map, which is simplicial and free there.
pub fn antipodal_quotient(d: usize) -> Result<FacetComplex> {
    if d < 1 {
        return Err(Error::InvalidSpec("projective space dimension must be at least 1".into()));
    }
    // Orbit representatives: sign vectors whose first nonzero entry is +1.
    fn canonical(face: &SignVector) -> SignVector {
        let first = face.iter().find(|&&s| s != 0).copied().unwrap_or(1);
        face.iter().map(|&s| s * first).collect()
    }
    let mut orbit_ids: HashMap<SignVector, u32> = HashMap::new();
    let mut orbits: BTreeSet<(usize, SignVector)> = BTreeSet::new();
    let mut collect = |face: &SignVector| {
        let c = canonical(face);
        let dim = c.iter().filter(|&&s| s != 0).count();
        orbits.insert((dim, c));
    };
    for facet in cross_polytope_facets(d) {
        for sub in 1u32..1 << (d + 1) {
            let face: SignVector =
                facet.iter().enumerate().map(|(i, &s)| if sub >> i & 1 == 1 { s } else { 0 }).collect();
            collect(&face);
        }
    }
    for (i, (_, c)) in orbits.into_iter().enumerate() {
        orbit_ids.insert(c, i as u32);
    }
    // Facets of the subdivision: a facet of the cross-polytope together with
    // an ordering of its coordinates; the flag adds coordinates one by one.
    // Exactly one of each antipodal pair has first coordinate +1.
    let mut facets = Vec::new();
    let mut perm: Vec<usize> = (0..=d).collect();
    for facet in cross_polytope_facets(d).into_iter().filter(|f| f[0] > 0) {
        for_each_permutation(&mut perm, 0, &mut |order| {
            let mut face = vec![0i8; d + 1];
            let mut simplex: Vec<u32> = order
                .iter()
                .map(|&coord| {
                    face[coord] = facet[coord];
                    orbit_ids[&canonical(&face)]
                })
                .collect();
            simplex.sort_unstable();
            facets.push(simplex);
        });
    }
    Ok(from_u32(facets, format!("rp {d}")))
}

fn for_each_permutation(items: &mut [usize], start: usize, f: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        for_each_permutation(items, start + 1, f);
        items.swap(start, i);
    }
}

/// Staircase triangulation of `|K| × |L|` on the vertex grid, ordered
/// lexicographically by `(vertex of K, vertex of L)`.
pub fn product(k: &FacetComplex, l: &FacetComplex) -> FacetComplex {
    let (p, q) = (k.dim(), l.dim());
    let width = l.vertex_count() as u32;
    let mut facets = Vec::with_capacity(k.facets().len() * l.facets().len() * binomial(p + q, p));
    let mut path = Vec::with_capacity(p + q);
    for s in k.facets() {
        for t in l.facets() {
            lattice_paths(p, q, &mut path, &mut |steps| {
                let (mut i, mut j) = (0, 0);
                let mut simplex = Vec::with_capacity(p + q + 1);
                simplex.push(s[0] * width + t[0]);
                for &right in steps {
                    if right {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    simplex.push(s[i] * width + t[j]);
                }
                facets.push(simplex);
            });
        }
    }
    let name = format!("{} x {}", k.name().unwrap_or("K"), l.name().unwrap_or("L"));
    from_u32(facets, name)
}

fn lattice_paths(p: usize, q: usize, path: &mut Vec<bool>, f: &mut impl FnMut(&[bool])) {
    let rights = path.iter().filter(|&&r| r).count();
    let ups = path.len() - rights;
    if rights == p && ups == q {
        f(path);
        return;
    }
    if rights < p {
        path.push(true);
        lattice_paths(p, q, path, f);
        path.pop();
    }
    if ups < q {
        path.push(false);
        lattice_paths(p, q, path, f);
        path.pop();
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Loads a bundled fixture by name, honouring [`FIXTURE_ENV`].
pub fn fixture(name: &str) -> Result<FacetComplex> {
    if let Ok(dir) = std::env::var(FIXTURE_ENV) {
        let path = PathBuf::from(dir).join(format!("{name}.txt"));
        if path.exists() {
            let text = std::fs::read_to_string(&path)?;
            return load_complex(&text).map_err(|e| Error::Fixture { name: name.into(), message: e.to_string() });
        }
    }
    let text = match name {
        "cp2_9" | "cp2" => CP2_9,
        _ => return Err(Error::Fixture { name: name.into(), message: "unknown fixture".into() }),
    };
    load_complex(text).map_err(|e| Error::Fixture { name: name.into(), message: e.to_string() })
}

/// What to generate. Parsed from whitespace-separated words, e.g.
/// `rp 4`, `product sphere:3 circle:3`, `subdivide sphere:2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSpec {
    Sphere(usize),
    CrossPolytope(usize),
    Rp(usize),
    Circle(usize),
    Torus(usize),
    Product(Box<GeneratorSpec>, Box<GeneratorSpec>),
    Subdivide(Box<GeneratorSpec>),
    Fixture(String),
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<FacetComplex> {
        match self {
            GeneratorSpec::Sphere(d) => sphere(*d),
            GeneratorSpec::CrossPolytope(d) => cross_polytope_sphere(*d),
            GeneratorSpec::Rp(d) => antipodal_quotient(*d),
            GeneratorSpec::Circle(m) => circle(*m),
            GeneratorSpec::Torus(n) => {
                if *n < 1 {
                    return Err(Error::InvalidSpec("torus dimension must be at least 1".into()));
                }
                let c = circle(3)?;
                let mut t = c.clone();
                for _ in 1..*n {
                    t = product(&t, &c);
                }
                Ok(t.with_name(format!("torus {n}")))
            }
            GeneratorSpec::Product(a, b) => Ok(product(&a.build()?, &b.build()?)),
            GeneratorSpec::Subdivide(a) => Ok(barycentric_subdivision(&a.build()?)),
            GeneratorSpec::Fixture(name) => fixture(name),
        }
    }

    /// Parses the word list used on the command line.
    pub fn parse_words(words: &[String]) -> Result<Self> {
        let mut it = words.iter().map(String::as_str);
        let spec = Self::parse_from(&mut it)?;
        if let Some(extra) = it.next() {
            return Err(Error::InvalidSpec(format!("unexpected trailing word {extra:?}")));
        }
        Ok(spec)
    }

    fn parse_from<'a>(it: &mut impl Iterator<Item = &'a str>) -> Result<Self> {
        let head = it.next().ok_or_else(|| Error::InvalidSpec("missing family".into()))?;
        // `family:param` packs a one-parameter family into one word.
        if let Some((family, param)) = head.split_once(':') {
            let mut inner = [family, param].into_iter();
            return Self::parse_from(&mut inner);
        }
        let mut number = |what: &str| -> Result<usize> {
            let w = it.next().ok_or_else(|| Error::InvalidSpec(format!("{head} needs a {what}")))?;
            w.parse().map_err(|_| Error::InvalidSpec(format!("{head}: {w:?} is not a non-negative integer")))
        };
        let spec = match head {
            "sphere" => GeneratorSpec::Sphere(number("dimension")?),
            "cross" | "cross-polytope" => GeneratorSpec::CrossPolytope(number("dimension")?),
            "rp" => GeneratorSpec::Rp(number("dimension")?),
            "circle" => GeneratorSpec::Circle(number("vertex count")?),
            "torus" => GeneratorSpec::Torus(number("dimension")?),
            "product" => {
                let a = Self::parse_from(it)?;
                let b = Self::parse_from(it)?;
                GeneratorSpec::Product(Box::new(a), Box::new(b))
            }
            "subdivide" => GeneratorSpec::Subdivide(Box::new(Self::parse_from(it)?)),
            "fixture" => {
                let name = it.next().ok_or_else(|| Error::InvalidSpec("fixture needs a name".into()))?;
                GeneratorSpec::Fixture(name.to_string())
            }
            other => return Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        match self {
            GeneratorSpec::Sphere(0)
            | GeneratorSpec::CrossPolytope(0)
            | GeneratorSpec::Rp(0)
            | GeneratorSpec::Torus(0) => Err(Error::InvalidSpec(format!("{self}: dimension must be at least 1"))),
            GeneratorSpec::Circle(m) if *m < 3 => Err(Error::InvalidSpec(format!("{self}: need at least 3 vertices"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Sphere(d) => write!(f, "sphere {d}"),
            GeneratorSpec::CrossPolytope(d) => write!(f, "cross {d}"),
            GeneratorSpec::Rp(d) => write!(f, "rp {d}"),
            GeneratorSpec::Circle(m) => write!(f, "circle {m}"),
            GeneratorSpec::Torus(n) => write!(f, "torus {n}"),
            GeneratorSpec::Product(a, b) => write!(f, "product {a} {b}"),
            GeneratorSpec::Subdivide(a) => write!(f, "subdivide {a}"),
            GeneratorSpec::Fixture(name) => write!(f, "fixture {name}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<String> = s.split_whitespace().map(String::from).collect();
        Self::parse_words(&words)
    }
}

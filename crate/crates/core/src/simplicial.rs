//! Finite simplicial complexes given by their facets.
//!
//! Vertex indices carry a global total order; every simplex is stored as a
//! strictly increasing vertex tuple and all orientation signs elsewhere in
//! the crate are taken relative to that order.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetComplex {
    vertex_count: usize,
    facets: Vec<Vec<u32>>,
    name: Option<String>,
}

impl FacetComplex {
    /// Builds a complex from facets with arbitrary non-negative vertex labels.
    /// Labels are relabelled to `0..vertex_count` preserving their order and
    /// facets are sorted, so the result is canonical for the input.
    pub fn new(facets: Vec<Vec<u64>>, name: Option<String>) -> Result<Self> {
        Self::from_lines(facets.into_iter().enumerate().map(|(i, f)| (i + 1, f)).collect(), name)
    }

    fn from_lines(lines: Vec<(usize, Vec<u64>)>, name: Option<String>) -> Result<Self> {
        let Some((_, first)) = lines.first() else { return Err(Error::Empty) };
        let width = first.len();
        if width == 0 {
            return Err(Error::Empty);
        }
        let mut labels: Vec<u64> = Vec::new();
        for (line, facet) in &lines {
            if facet.len() != width {
                return Err(Error::RaggedFacets { expected: width, found: facet.len(), line: *line });
            }
            labels.extend(facet);
        }
        labels.sort_unstable();
        labels.dedup();
        let relabel: HashMap<u64, u32> = labels.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect();
        let mut facets = Vec::with_capacity(lines.len());
        for (line, facet) in lines {
            let mut f: Vec<u32> = facet.iter().map(|l| relabel[l]).collect();
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse { line, message: "repeated vertex in facet".into() });
            }
            facets.push(f);
        }
        facets.sort();
        if let Some(w) = facets.windows(2).find(|w| w[0] == w[1]) {
            let original = w[0].iter().map(|&v| labels[v as usize] as u32).collect();
            return Err(Error::DuplicateFacet(original));
        }
        Ok(FacetComplex { vertex_count: labels.len(), facets, name })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.facets[0].len() - 1
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Facet-list document: an optional `# name` line, then one facet per
    /// line as space-separated vertex indices, each line ending in `\n`.
    pub fn to_facet_file(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "# {name}");
        }
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn skeleton(&self, k: usize) -> Result<SimplexIndex> {
        if k > self.dim() {
            return Err(Error::DegreeOutOfRange { degree: k, max: self.dim() });
        }
        // Flat buffer plus an index sort keeps large skeleta to one allocation.
        let w = k + 1;
        let mut raw: Vec<u32> = Vec::new();
        let mut scratch = Vec::with_capacity(w);
        for f in &self.facets {
            for_each_subset(f, w, &mut scratch, &mut |s| raw.extend_from_slice(s));
        }
        let mut order: Vec<u32> = (0..(raw.len() / w) as u32).collect();
        let chunk = |i: u32| &raw[i as usize * w..(i as usize + 1) * w];
        order.sort_unstable_by(|&x, &y| chunk(x).cmp(chunk(y)));
        order.dedup_by(|x, y| chunk(*x) == chunk(*y));
        let mut flat = Vec::with_capacity(order.len() * w);
        for &i in &order {
            flat.extend_from_slice(chunk(i));
        }
        Ok(SimplexIndex { degree: k, flat })
    }

    /// All skeleta, degree 0 through `dim`.
    pub fn skeleta(&self) -> Vec<SimplexIndex> {
        (0..=self.dim()).map(|k| self.skeleton(k).expect("degree in range")).collect()
    }

    /// Alternating count of simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.skeleta()
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_closed_pseudomanifold(self)
    }
}

/// Parses a facet-list document.
pub fn load_complex(text: &str) -> Result<FacetComplex> {
    let mut lines = Vec::new();
    let mut name = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if name.is_none() && lines.is_empty() && !comment.trim().is_empty() {
                name = Some(comment.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let facet = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("expected a non-negative integer, found {tok:?}"),
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        lines.push((i + 1, facet));
    }
    FacetComplex::from_lines(lines, name)
}

fn for_each_subset(items: &[u32], size: usize, scratch: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    fn rec(items: &[u32], start: usize, size: usize, scratch: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if scratch.len() == size {
            f(scratch);
            return;
        }
        let need = size - scratch.len();
        for i in start..=items.len() - need {
            scratch.push(items[i]);
            rec(items, i + 1, size, scratch, f);
            scratch.pop();
        }
    }
    scratch.clear();
    if size <= items.len() {
        rec(items, 0, size, scratch, f);
    }
}

/// Canonically ordered list of the `k`-simplices of a complex.
#[derive(Clone)]
pub struct SimplexIndex {
    degree: usize,
    /// Lexicographically sorted simplices, `degree + 1` vertices each.
    flat: Vec<u32>,
}

impl SimplexIndex {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.flat.len() / (self.degree + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        let w = self.degree + 1;
        &self.flat[i * w..(i + 1) * w]
    }

    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let w = self.degree + 1;
        if simplex.len() != w {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(simplex) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> {
        self.flat.chunks_exact(self.degree + 1)
    }
}

impl fmt::Debug for SimplexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplexIndex").field("degree", &self.degree).field("len", &self.len()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A codimension-one face lying in a number of facets other than two.
    RidgeDegree {
        ridge: Vec<u32>,
        facets: usize,
    },
    Disconnected {
        components: usize,
    },
    DimensionTooLow {
        dim: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RidgeDegree { ridge, facets } => {
                write!(f, "ridge {ridge:?} lies in {facets} facet(s), expected 2")
            }
            Violation::Disconnected { components } => {
                write!(f, "facet graph has {components} connected components")
            }
            Violation::DimensionTooLow { dim } => {
                write!(f, "dimension {dim} is below 4 (need n >= 3)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dimension: usize,
    pub vertices: usize,
    pub facets: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn ridge_violations(&self) -> usize {
        self.violations.iter().filter(|v| matches!(v, Violation::RidgeDegree { .. })).count()
    }
}

pub fn validate_closed_pseudomanifold(k: &FacetComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let d = k.dim();
    let mut ridge_facets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    let mut scratch = Vec::new();
    for (i, f) in k.facets.iter().enumerate() {
        for_each_subset(f, d, &mut scratch, &mut |r| ridge_facets.entry(r.to_vec()).or_default().push(i));
    }
    let mut bad: Vec<(Vec<u32>, usize)> =
        ridge_facets.iter().filter(|(_, fs)| fs.len() != 2).map(|(r, fs)| (r.clone(), fs.len())).collect();
    bad.sort();
    violations.extend(bad.into_iter().map(|(ridge, facets)| Violation::RidgeDegree { ridge, facets }));

    let mut parent: Vec<usize> = (0..k.facets.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for fs in ridge_facets.values() {
        for w in fs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let components = (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count();
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }
    if d < 4 {
        violations.push(Violation::DimensionTooLow { dim: d });
    }
    ValidationReport { dimension: d, vertices: k.vertex_count, facets: k.facets.len(), violations }
}

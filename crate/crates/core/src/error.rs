use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("ragged facet lengths: expected {expected} vertices, found {found} on line {line}")]
    RaggedFacets { expected: usize, found: usize, line: usize },
    #[error("duplicate facet {0:?}")]
    DuplicateFacet(Vec<u32>),
    #[error("empty complex")]
    Empty,
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("orientation cochain is not a cocycle on the 2-face {0:?}")]
    NotACocycle(Vec<u32>),
    #[error("chain is not a cycle: {0}")]
    NotACycle(String),
    #[error("complex failed validation: {0}")]
    InvalidComplex(String),
    #[error("no twisted fundamental class: {0}")]
    NoFundamentalClass(String),
    #[error("cup-product pairing is degenerate in degree {0}")]
    DegeneratePairing(usize),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("complex mismatch: operands live on different complexes")]
    ComplexMismatch,
    #[error("no Bockstein preimage for torsion generator {0}")]
    NoPreimage(usize),
    #[error("extension functional undefined on factor {0}")]
    EpsilonUndefined(usize),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("fixture {name}: {message}")]
    Fixture { name: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Cohomotopy groups `π^n(X)` of triangulated closed `(n+1)`-manifolds.
//!
//! The computation goes through homology with coefficients twisted by the
//! orientation character, the Stiefel–Whitney classes `w₁`, `w₂` (obtained
//! from Wu classes and cup-i products), and an extension of `H₁(X; o_X)` by
//! `ℤ₂` determined by `w₁² + w₂`.

pub mod chains;
pub mod cohomotopy;
pub mod error;
pub mod factory;
pub mod linalg;
pub mod simplicial;
pub mod steenrod;

pub use chains::{Cochain, CoefficientSystem, IntegralComplex, Mod2Complex, OrientationSystem, SimplicialSpace};
pub use cohomotopy::{
    assemble_extension, classify_type, compute_f1, epsilon_functional, steenrod_ses_crosscheck, CohomotopyReport,
    EpsilonFunctional, Manifold, PipelineOptions, TypeClassification,
};
pub use error::{Error, Result};
pub use factory::GeneratorSpec;
pub use linalg::{Int, PresentedGroup};
pub use simplicial::{load_complex, validate_closed_pseudomanifold, FacetComplex, ValidationReport};

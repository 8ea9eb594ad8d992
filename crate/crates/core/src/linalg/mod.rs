//! Exact linear algebra over ℤ and ℤ₂.

pub mod coeff;
pub mod gf2;
pub mod group;
pub mod int;
pub mod matrix;
pub mod reduce;
pub mod smith;

pub use coeff::{Coeff, Gf2};
pub use gf2::{kernel_mod2, rank_mod2, solve_mod2, BitVector, Gf2Matrix};
pub use group::{group_from_presentation, PresentedGroup, Subquotient};
pub use int::Int;
pub use matrix::{DenseIntMatrix, SparseIntMatrix};
pub use reduce::{ReducedComplex, SparseColumn};
pub use smith::{smith_normal_form, SmithDecomposition};

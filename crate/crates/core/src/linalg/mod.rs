//! Exact dense linear algebra over ℚ or F_p.
//!
//! Every Hom space, quotient and witness search in the crate reduces to
//! calls into this module. There are no tolerances: equality is equality of
//! field elements.

mod mat;
mod scalar;
mod sparse;
mod subspace;
mod system;

pub use mat::Mat;
pub use scalar::{Field, Scalar};
pub use sparse::{sparsify, SparseEchelon, SparseVec};
pub use subspace::Subspace;
pub use system::{
    combine_family, solve_affine, solve_homogeneous, solve_sparse, unit_matrices, AffineSolution, Equation,
    FamilyCoordinates, LinearSystem, MatMap,
};

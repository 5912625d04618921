//! Exact linear algebra over `Q` and prime fields.

mod field;
mod mat;
mod rat;

pub use field::{is_prime, Field, FieldSpec, FieldSpecError, PrimeField, Rationals};
pub use mat::{
    axpy, kernel_basis, kernel_from_rref, lookup, normalize, rank, rref, scale, solve_in_rowspace, EchelonBasis, Mat,
    NotInSpan, Rref, SparseVec,
};
pub use rat::{ParseRatError, Rat};

//! Exact rational linear algebra.

mod elim;
mod mat;
mod rat;

pub use elim::{coker_projection, inverse, kernel_basis, solve, solve_affine, AffineSpace, Echelon};
pub use mat::{kron, kron_all, mat_mul, Mat};
pub use rat::{ParseRatError, Rat};

pub fn rank(a: &Mat) -> usize {
    a.rank()
}

/// Integer power `base^k` for tensor dimension bookkeeping.
pub fn pow(base: usize, k: usize) -> usize {
    base.pow(k as u32)
}

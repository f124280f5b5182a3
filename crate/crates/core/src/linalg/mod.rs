//! Exact linear algebra over the rationals and integers.

mod jordan;
mod lattice;
mod matrix;

pub use jordan::{
    char_poly, jordan_matrix, jordan_structure, rational_jordan_basis, JordanFactor,
    JordanStructure, RationalBlock,
};
pub use lattice::{default_max_period, fixed_character, integer_kernel, lll_reduce, normalize_sign};
pub use matrix::{mat_pow, Matrix, QMatrix, ZMatrix};

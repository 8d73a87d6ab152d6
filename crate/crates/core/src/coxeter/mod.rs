//! Coxeter systems with labels in `{1, 2, 3, inf}` realized by exact integer
//! matrices.

mod element;
mod matrix;
mod system;
mod word;

pub use element::{GroupElement, RootSign};
pub use matrix::{CoxeterMatrix, CoxeterMatrixJson, Label};
pub use system::{CoxeterSystem, DEFAULT_ENUM_CAP};
pub use word::{GeneratorSubset, Word};

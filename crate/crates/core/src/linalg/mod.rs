//! Exact linear algebra over the cover rings.

mod matrix;
mod snf;

pub use matrix::Mat;
pub use snf::{kernel_basis, smith_normal_form, solve, SnfResult};

//! Exact integer linear algebra, generic over the integer scalar.

mod det;
pub mod matrix;
pub mod scalar;
pub mod snf;
pub mod transvection;

pub use matrix::Matrix;
pub use scalar::IntScalar;
pub use snf::{smith_normal_form, SnfResult};
pub use transvection::{factor_transvections, Transvection};

//! Exact scalar rings and dense matrix algebra over them.

mod laurent;
mod matrix;
mod scalar;

pub use laurent::{LaurentQT, Term};
pub use matrix::{DenseMatrix, EdgeMatrix};
pub use matrix::edge_count;
pub use scalar::{format_rational, parse_rational, Field, JsonScalar, Rational, Scalar, FLOAT_RTOL, PIVOT_RTOL};

//! Exact-arithmetic construction of `B_N`-invariant spherical harmonics for
//! Dunkl operators: the modified monomial basis and its transition matrices,
//! a sparse Dunkl-operator engine, the harmonic basis `h_μ` with its Gram
//! determinant, and special-point evaluations.
//!
//! Symmetric polynomials are stored in the monomial basis and always read with
//! argument `x² = (x_1², ..., x_N²)`.

pub mod cli;
pub mod dunkl;
pub mod error;
pub mod evaluation;
pub mod harmonic;
pub mod matrix;
pub mod partition;
pub mod scalar;
pub mod symfunc;
pub mod verify;

pub use dunkl::{OperatorContext, XPoly};
pub use error::{Error, Result};
pub use evaluation::EvalReport;
pub use harmonic::{HarmonicExpansion, RadialLayered};
pub use matrix::RatMatrix;
pub use partition::Partition;
pub use scalar::{Integer, Rational, UniPoly};
pub use symfunc::SymPoly;

//! Exact arithmetic for fusion-procedure Young symmetrizers, their
//! orthogonal and symplectic analogues `F_Ω(M)`, and machine checks of the
//! operator identities they satisfy.
//!
//! The algebraic core is generic over [`exactnum::Scalar`]; the aliases below
//! fix the exact rational instance used by the verification routines and a
//! floating-point instance for quick numerical exploration.

pub mod error;
pub mod exactnum;
pub mod fusion;
pub mod rmatrix;
pub mod shapes;
pub mod symalg;
pub mod tensorop;

pub use error::{Error, Result};
pub use exactnum::{Polynomial, Rational, RationalFunction, Scalar};

/// Group-algebra element with exact rational coefficients.
pub type GroupElement = symalg::GroupAlgebraElement<Rational>;
/// Sparse operator with exact rational entries.
pub type Operator = tensorop::SparseOperator<Rational>;
/// Group-algebra element with `f64` coefficients.
pub type GroupElementF64 = symalg::GroupAlgebraElement<f64>;
/// Sparse operator with `f64` entries.
pub type OperatorF64 = tensorop::SparseOperator<f64>;
/// Sparse operator with `f32` entries.
pub type OperatorF32 = tensorop::SparseOperator<f32>;

//! Exact symbolic toolkit for Jacobi structures on real two- and
//! three-dimensional Lie groups: a small expression kernel, the Lie algebra
//! catalog, algebra-level Jacobi equations with automorphism equivalence,
//! lifting to the group, and Hamiltonian vector fields of Jacobi brackets.

pub mod data;
pub mod error;
pub mod group_geom;
pub mod hamsys;
pub mod jacobi_alg;
pub mod liealg;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod symexpr;

pub use error::{Error, EvalError, Result};
pub use matrix::Matrix;
pub use scalar::{HpFloat, Ring, Scalar};
pub use symexpr::{Expr, Func, Symbol};

/// Exact rationals used for every constant in an [`Expr`].
pub type Rational = num_rational::BigRational;

pub type ExprMatrix = Matrix<Expr>;
pub type RationalMatrix = Matrix<Rational>;
pub type F64Matrix = Matrix<f64>;
pub type F32Matrix = Matrix<f32>;
pub type HpMatrix = Matrix<HpFloat>;

//! Exact arithmetic: rationals, Gaussian rationals, integer polynomials,
//! real algebraic numbers, number fields and dense matrices over them.

pub mod algebraic;
pub mod bareiss;
pub mod charpoly;
pub mod eigen;
pub mod field;
pub mod gaussian;
pub mod gram_schmidt;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod rational;
pub mod sturm;

use thiserror::Error;

pub use algebraic::{isolate_real_roots, AlgebraicNumber};
pub use bareiss::{bareiss_eliminate, Elimination};
pub use field::Field;
pub use gaussian::GaussianRational;
pub use gram_schmidt::rational_gram_schmidt;
pub use matrix::{canonical_order, ExactMatrix, Matrix};
pub use numfield::{FieldElement, NumberField};
pub use poly::IntPolynomial;
pub use rational::BigRational;
pub use sturm::SturmChain;

/// A scalar literal that is not in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed scalar `{0}`")]
pub struct ScalarParseError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactNumError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("element is not invertible modulo the defining polynomial")]
    NotInvertible,
    #[error("polynomial has non-real roots")]
    NonRealRoots,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("malformed algebraic number: {0}")]
    MalformedAlgebraic(String),
}

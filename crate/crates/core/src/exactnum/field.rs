//! The scalar interface shared by exact matrices.
//!
//! Elements of an algebraic extension need their modulus to build a zero or a
//! one, so constructors take `&self` as a template.

use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::{qadd, qmul, qsub};
use super::{BigRational, GaussianRational};

pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Complex conjugation (identity on real fields).
    fn conjugate(&self) -> Self;
    /// Embed a rational.
    fn from_rational_like(&self, r: &BigRational) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        qadd(self, other)
    }
    fn minus(&self, other: &Self) -> Self {
        qsub(self, other)
    }
    fn times(&self, other: &Self) -> Self {
        qmul(self, other)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        r.clone()
    }
}

impl Field for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }
    fn one_like(&self) -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        GaussianRational::from(r.clone())
    }
}

//! Exact scalar arithmetic in the deformation parameter `q`.
//!
//! The tower is `QScalar` (Laurent polynomials in `t = q^{1/2}`) ⊂ `QFrac`
//! (rational functions in `t`) ⊂ `QRadical` (formal square roots of
//! cyclotomic products over `QFrac`).

pub mod cyclotomic;
pub mod frac;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod qint;
pub mod radical;

use std::fmt;
use std::hash::Hash;

pub use frac::QFrac;
pub use laurent::{parse_rat, rat, rat_int, rat_to_string, QScalar, Rat};
pub use qint::{bq_asymptotic_ratio, evaluate, laplacian_eigenvalue, q_int, q_int_scalar, Evaluate, QPoint};
pub use radical::{QRadical, Radicand};

use crate::error::Result;

/// Coefficient ring for algebra elements, matrices and Fourier arrays.
///
/// `q` is real and all rational coefficients are real, so complex
/// conjugation acts trivially on every implementor.
pub trait Coeff: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_frac(x: QFrac) -> Self;
    fn value_at(&self, p: &QPoint) -> Result<f64>;
    /// The rational-function value, if no radical is present.
    fn to_frac(&self) -> Option<QFrac>;
    fn to_radical(&self) -> QRadical;
}

impl Coeff for QFrac {
    fn zero() -> Self {
        QFrac::zero()
    }
    fn one() -> Self {
        QFrac::one()
    }
    fn is_zero(&self) -> bool {
        QFrac::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_frac(x: QFrac) -> Self {
        x
    }
    fn value_at(&self, p: &QPoint) -> Result<f64> {
        self.evaluate(p)
    }
    fn to_frac(&self) -> Option<QFrac> {
        Some(self.clone())
    }
    fn to_radical(&self) -> QRadical {
        QRadical::from_frac(self.clone())
    }
}

impl Coeff for QRadical {
    fn zero() -> Self {
        QRadical::zero()
    }
    fn one() -> Self {
        QRadical::one()
    }
    fn is_zero(&self) -> bool {
        QRadical::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_frac(x: QFrac) -> Self {
        QRadical::from_frac(x)
    }
    fn value_at(&self, p: &QPoint) -> Result<f64> {
        self.evaluate(p)
    }
    fn to_frac(&self) -> Option<QFrac> {
        self.as_frac()
    }
    fn to_radical(&self) -> QRadical {
        self.clone()
    }
}

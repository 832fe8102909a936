use thiserror::Error;

use crate::geometry::ElementKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for a {dim}-variate polynomial")]
    VariableOutOfRange { index: usize, dim: usize },

    #[error("expected {expected} substitution polynomials, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid polynomial parameters: {0}")]
    InvalidPolynomial(String),

    #[error("{kind} element has no {entity} with id {id}")]
    NoSuchEntity {
        kind: ElementKind,
        entity: &'static str,
        id: usize,
    },

    #[error("{0} element has no faces")]
    NoFaces(ElementKind),

    #[error("order {order} is outside {min}..={max} for {what}")]
    OrderOutOfRange {
        what: String,
        order: usize,
        min: usize,
        max: usize,
    },

    #[error("Jacobi rotations did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("every eigenvalue was excluded as numerically zero")]
    AllEigenvaluesExcluded,

    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientLength { expected: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

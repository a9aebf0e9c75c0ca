//! Exact invariants of artinian algebras `k[x_1..x_n]/I` over ℚ and 𝔽ₚ.
//!
//! The pipeline is presentation → Gröbner basis → standard monomials →
//! multiplication matrices, after which every invariant is linear algebra
//! over the field.

pub mod algebra;
pub mod arith;
pub mod fixtures;
pub mod groebner;
pub mod hilbert;
pub mod invariants;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod presentation;

use thiserror::Error;

use algebra::AlgebraError;
use invariants::InvariantError;
use presentation::{BuildError, PresentationError};

/// Anything the toolkit can fail with, grouped by the stage that failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse: {0}")]
    Presentation(#[from] PresentationError),
    #[error("{}: {}", algebra_stage(.0), .0)]
    Algebra(AlgebraError),
    #[error("{}: {}", invariant_stage(.0), .0)]
    Invariant(InvariantError),
    #[error("parse: {0}")]
    Hilbert(#[from] hilbert::HilbertError),
}

fn algebra_stage(e: &AlgebraError) -> &'static str {
    match e {
        AlgebraError::Parse(_) => "parse",
        AlgebraError::NotArtinian(_) => "not-artinian",
        AlgebraError::TooLarge(_) => "cap",
        _ => "algebra",
    }
}

fn invariant_stage(e: &InvariantError) -> &'static str {
    match e {
        InvariantError::Algebra(a) => algebra_stage(a),
        InvariantError::CapExceeded { .. } => "cap",
        InvariantError::Internal(_) => "internal",
        _ => "precondition",
    }
}

impl From<AlgebraError> for Error {
    fn from(e: AlgebraError) -> Self {
        Error::Algebra(e)
    }
}

impl From<InvariantError> for Error {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::Algebra(a) => Error::Algebra(a),
            other => Error::Invariant(other),
        }
    }
}

impl From<BuildError> for Error {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Presentation(p) => Error::Presentation(p),
            BuildError::Algebra(a) => Error::Algebra(a),
        }
    }
}

impl Error {
    /// 1 for bad input, 2 when a size cap was hit, 3 for a broken internal
    /// invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Algebra(AlgebraError::TooLarge(_)) => 2,
            Error::Invariant(InvariantError::CapExceeded { .. }) => 2,
            Error::Invariant(InvariantError::Internal(_)) => 3,
            _ => 1,
        }
    }

    pub fn stage(&self) -> &'static str {
        match self {
            Error::Presentation(_) | Error::Hilbert(_) => "parse",
            Error::Algebra(a) => algebra_stage(a),
            Error::Invariant(i) => invariant_stage(i),
        }
    }
}

//! Noncommutative polynomials over a field, quadratic presentations,
//! rewriting and degree-bounded ideal computations.

mod engine;
mod linear;
mod poly;
mod presentation;
mod rewrite;
mod span;

use thiserror::Error;

use crate::qscalar::ScalarError;

pub use engine::{hilbert_dims, ideal_membership, CompletionStep, IdealEngine, Membership};
pub use linear::{Echelon, EchelonRow, MembershipCertificate};
pub use poly::{Monomial, NCPoly, Word};
pub use presentation::{GenId, Presentation, PresentationDocument, RelationBlock};
pub use rewrite::{normal_form, orient_relations, RewriteSystem, Rule};
pub use span::{
    all_words, hilbert_dims_by_span, ideal_component, membership_by_span, relation_span_equal, relations_span_equal,
    substitute_generators,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed generator `{0}`")]
    BadGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("roster of {0} generators is too large")]
    RosterTooLarge(usize),
    #[error("relation {0} is not homogeneous quadratic")]
    NotQuadratic(usize),
    #[error("division by a non-scalar polynomial")]
    NonScalarDivisor,
    #[error("word {word} cannot be oriented into a rewrite rule")]
    Unorientable { word: String },
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeAboveBound { degree: usize, bound: usize },
    #[error("presentations have different rosters")]
    RosterMismatch,
    #[error("no image given for generator {0}")]
    MissingImage(usize),
    #[error("invalid presentation document: {0}")]
    Document(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

//! Error and violation types shared across the workbench.
//!
//! Two failure classes are kept apart on purpose: ordinary input errors
//! (malformed tables, violated preconditions, caps) and *theorem
//! violations*, which mean a verified claim failed on concrete data.
//! The latter always carry a serializable witness bundle.

use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Witness bundle for a failed claim: which claim, which clause, and the
/// concrete elements (by label) that break it.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub claim: String,
    pub clause: String,
    pub witness: serde_json::Value,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("{0}")]
    BadShape(String),
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("`{0}` is not a two-sided identity")]
    BadIdentity(String),
    #[error("`{0}` is not a two-sided zero")]
    BadZero(String),
    #[error("natural order fails {law} at ({a}, {b})")]
    NotAPartialOrder {
        law: &'static str,
        a: String,
        b: String,
    },
    #[error("`{a}` and `{b}` are not compatible")]
    NotCompatible { a: String, b: String },
    #[error("prime filters are not composable: d of the left factor differs from r of the right")]
    NotComposable,
    #[error("missing composite for ({x}, {y})")]
    MissingComposite { x: String, y: String },
    #[error("composite declared for the non-composable pair ({x}, {y})")]
    ExtraComposite { x: String, y: String },
    #[error("composite of ({x}, {y}) has mismatched endpoints")]
    BadComposite { x: String, y: String },
    #[error("enumeration reached {reached} with cap {cap}")]
    CapExceeded { reached: usize, cap: usize },
    #[error("category is not cancellative: {side} cancellation fails at ({a}, {b}, {c})")]
    NotCancellative {
        side: &'static str,
        a: String,
        b: String,
        c: String,
    },
    #[error("category is not right reversible: no common left multiple for ({a}, {b})")]
    NotRightReversible { a: String, b: String },
    #[error("`{0}` does not give a prime filter of the projection algebra")]
    FilterNotPrime(String),
    #[error("condition (C) fails at filter ^{filter} with a = {a}, b = {b}")]
    ConditionCFails { filter: String, a: String, b: String },
    #[error("oracle gave an inconsistent common left multiple for ({a}, {b})")]
    OracleInconsistent { a: String, b: String },
    #[error("theorem violation [{}]: {}", .0.claim, .0.clause)]
    TheoremViolation(Box<Violation>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn violation(
        claim: impl Into<String>,
        clause: impl Into<String>,
        witness: serde_json::Value,
    ) -> Self {
        Error::TheoremViolation(Box::new(Violation {
            claim: claim.into(),
            clause: clause.into(),
            witness,
        }))
    }

    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}

use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a complex needs at least one facet")]
    EmptyInput,

    #[error("facet {facet} repeats the label {label}")]
    RepeatedLabel { facet: String, label: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),

    #[error("face id {0} does not belong to the complex")]
    ForeignFace(usize),

    #[error("vertex label {0} appears in both complexes")]
    LabelCollision(String),

    #[error("operation requires a pure complex")]
    NotPure,

    #[error("operation requires a pseudomanifold")]
    NotPseudomanifold,

    #[error("operation requires a closed pseudomanifold (no boundary)")]
    HasBoundary,

    #[error("operation requires a non-empty boundary")]
    Closed,

    #[error("not a homology manifold: the link of {0} is not a homology sphere")]
    NotHomologyManifold(String),

    #[error("operation requires a connected complex")]
    Disconnected,

    #[error("expected dimension {expected}, found {found}")]
    WrongDimension { expected: String, found: usize },

    #[error("the subcomplex is not contained in the ambient complex")]
    NotSubcomplex,

    #[error("the designated boundary differs from the computed boundary")]
    DesignatedBoundary,

    #[error("{0} is not a cone point of the complex")]
    NotConePoint(String),

    #[error("invalid gradient: {0}")]
    InvalidGradient(String),

    #[error("invalid discrete Morse function: {0}")]
    InvalidFunction(String),

    #[error("subdivision would produce {projected} faces, above the cap of {cap}")]
    SubdivisionCap { projected: u128, cap: u128 },

    #[error("exhaustive search needs at most {cap} {what}, the input has {found}")]
    CapExceeded { what: &'static str, cap: usize, found: usize },

    #[error("exhaustive search gave up after {0} states")]
    BudgetExhausted(u64),

    #[error("time budget exhausted before any attempt finished")]
    TimeBudget,

    #[error("unknown corpus entry {0}")]
    UnknownCorpus(String),

    #[error("external data required: {name} expects the pinned file {path}")]
    ExternalDataMissing { name: String, path: String },

    #[error("pinned file {path} has digest {found}, expected {expected}")]
    DigestMismatch { path: String, expected: String, found: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

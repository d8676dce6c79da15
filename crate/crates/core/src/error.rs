use std::time::Duration;

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed graph6 input: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list: {0}")]
    MalformedEdgeList(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParameters(String),
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),

    #[error("eigenvalue iteration did not converge")]
    EigenFailure,
    #[error("eigenvalue gap {gap:e} is too close to the grouping threshold {threshold:e}; supply an exact spectrum")]
    GroupingAmbiguity { gap: f64, threshold: f64 },
    #[error("no closed-form spectrum for {0}")]
    NoClosedForm(String),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("degenerate inner product at degree {0}")]
    DegenerateInnerProduct(usize),
    #[error("no closed form for k = {k} (d = {d}); use the LP")]
    UnsupportedK { k: usize, d: usize },
    #[error("k = 3 closed form needs the closed 3-walk count")]
    MissingAux,
    #[error("invalid k = {k}: {reason}")]
    InvalidK { k: usize, reason: String },

    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("inconsistent program dimensions: {0}")]
    Dimension(String),
    #[error("minor polynomial violates its normalization (min value {0:e})")]
    NormalizationViolation(f64),
    #[error("numerical instability: {0}")]
    NumericalInstability(String),
    #[error("branch-and-bound node limit {0} reached")]
    NodeLimit(usize),

    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not {0}-partially walk-regular")]
    NotPWR(usize),
    #[error("graph is not walk-regular")]
    NotWalkRegular,
    #[error("polynomial trace is not zero ({0:e})")]
    TraceNotZero(f64),
    #[error("polynomial has p(lambda_1) <= lambda(p)")]
    DegeneratePolynomial,
    #[error("bad normalization: {0}")]
    BadNormalization(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("no eigenvalue satisfies the selection rule")]
    NoValidTheta,

    #[error("graph has {n} vertices, above the limit of {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("exact search exceeded {0:?}")]
    Timeout(Duration),

    #[error("negative radicand {0:e}")]
    NegativeRadicand(f64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("graph is not strongly regular")]
    NotSRG,

    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

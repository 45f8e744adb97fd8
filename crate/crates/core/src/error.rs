use thiserror::Error;

/// Errors raised by the series, matrix, polynomial and experiment layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("order too small: need {needed}, have {available}")]
    OrderTooSmall { needed: usize, available: usize },

    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,

    #[error("series has zero linear coefficient and cannot be reverted")]
    ZeroLinearCoefficient,

    #[error("series has zero constant term and has no reciprocal")]
    ZeroConstantTerm,

    #[error("{op} requires constant term {expected}")]
    ConstantTermRequired { op: &'static str, expected: &'static str },

    #[error("pair is not admissible: {0}")]
    Inadmissible(&'static str),

    #[error("pair is not an Appell pair (f must be a constant multiple of z)")]
    NotAppell,

    #[error("scale factor must be nonzero")]
    ZeroScale,

    #[error("polynomial degree must be at least {0}")]
    DegreeTooSmall(usize),

    #[error("invalid family parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },

    #[error("x = {x} lies outside (0, {upper})")]
    OutsideDomain { x: f64, upper: f64 },

    #[error("saddle residual {residual:e} too large at t = {t}")]
    SaddleResidual { t: f64, residual: f64 },

    #[error("no zeros with positive height on the critical line")]
    EmptyOnLineSet,

    #[error("root finder did not certify all roots by {bits} bits")]
    NonConvergence { bits: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tangent decomposition failed: {0}")]
    TanhDecomposition(&'static str),

    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

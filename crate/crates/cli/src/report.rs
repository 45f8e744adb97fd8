//! Typed result tables. JSON output is one [`Report`]; CSV output writes
//! the row types below with the matching `*_HEADER`.

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, RiordanOp};

/// Name of the check recording root-finder certification; its failure maps
/// to the non-convergence exit status.
pub const CERTIFIED: &str = "certified";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub results: Results,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Results {
    Generate(GenerateResults),
    Zeros(ZerosResults),
    Density(DensityResults),
    Riordan(RiordanResults),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, value: None, tolerance: None, detail: detail.into() }
    }

    /// Passes when `value <= tolerance`.
    pub fn bound(name: &str, value: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed: value <= tolerance,
            value: value.is_finite().then_some(value),
            tolerance: Some(tolerance),
            detail: detail.into(),
        }
    }
}

pub const CHECK_HEADER: &[&str] = &["name", "passed", "value", "tolerance", "detail"];

/// Exact entry `a_{n,k}` as a `p/q` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub n: usize,
    pub k: usize,
    pub value: String,
}

pub const COEFF_HEADER: &[&str] = &["n", "k", "value"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerateResults {
    pub label: String,
    pub rows: Vec<CoeffRow>,
}

/// One distinct root. `re`/`im` are shortest decimals at the working
/// precision; a missing `error` is an unbounded estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRow {
    pub n: usize,
    pub re: String,
    pub im: String,
    pub residual: Option<f64>,
    pub error: Option<f64>,
    pub multiplicity: usize,
    pub class: String,
    pub certified: bool,
}

pub const ZERO_HEADER: &[&str] = &["n", "re", "im", "residual", "error", "multiplicity", "class", "certified"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusSummary {
    pub n: usize,
    pub line: String,
    pub line_tol: f64,
    pub real_tol: f64,
    pub precision_bits: u32,
    pub certified: bool,
    pub real: usize,
    pub on_line: usize,
    pub other: usize,
    pub max_residual: Option<f64>,
    pub max_line_distance: f64,
    /// Predicted limits of the real zeros, for families.
    pub real_limits: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZerosResults {
    pub label: String,
    pub runs: Vec<LocusSummary>,
    pub zeros: Vec<ZeroRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub x: f64,
    pub density: f64,
}

pub const DENSITY_HEADER: &[&str] = &["x", "density"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinRow {
    pub n: usize,
    pub bin_lo: f64,
    pub bin_hi: f64,
    pub empirical_mass: f64,
    pub analytic_mass: f64,
}

pub const BIN_HEADER: &[&str] = &["n", "bin_lo", "bin_hi", "empirical_mass", "analytic_mass"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceSummary {
    pub n: usize,
    pub l1: f64,
    /// Normalized count of heights at or beyond `T`.
    pub outside: f64,
    pub heights: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityResults {
    pub z1: String,
    pub z2: String,
    pub t: f64,
    pub regime: String,
    pub mass: f64,
    pub curve: Vec<DensityRow>,
    pub bins: Vec<BinRow>,
    pub distances: Vec<DistanceSummary>,
}

/// Coefficient `[z^k]` of series `g` or `f` of a pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub pair: String,
    pub series: String,
    pub k: usize,
    pub value: String,
}

pub const SERIES_HEADER: &[&str] = &["pair", "series", "k", "value"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RiordanResults {
    pub op: RiordanOp,
    pub series: Vec<SeriesRow>,
    pub matrix: Vec<CoeffRow>,
}

impl Report {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn converged(&self) -> bool {
        self.checks.iter().all(|c| c.name != CERTIFIED || c.passed)
    }
}

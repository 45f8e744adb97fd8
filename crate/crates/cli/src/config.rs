//! Experiment configuration: what to compute, at which precision, and where
//! the results go. Built from command-line flags or loaded from JSON, and
//! validated before any computation starts.

use std::path::PathBuf;

use rug::Rational;
use serde::{Deserialize, Serialize};

use sheffer_core::family::FamilyParams;
use sheffer_core::series::named;
use sheffer_core::{parse_rational, RiordanPair, RootConfig, Series, ShefferPair};

use crate::error::{CliError, CliResult};

pub const DEFAULT_PRECISION: u32 = 256;
pub const DEFAULT_MAX_PRECISION: u32 = 4096;
pub const DEFAULT_CERT_TOL: f64 = 1e-30;
pub const DEFAULT_ORDER: usize = 8;
pub const DEFAULT_BINS: usize = 20;
pub const DEFAULT_SAMPLES: usize = 200;

/// Named pairs shipped with the binary.
pub const PAIR_PRESETS: &[&str] = &["bernoulli", "bernoulli-cognate", "euler", "hermite", "monomials", "1,z"];
pub const FAMILY_PRESETS: &[&str] = &["example1-left", "example1-right"];

const MIN_PRECISION: u32 = 32;
const PRECISION_CEILING: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    #[default]
    Generate,
    Zeros,
    Density,
    Riordan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RiordanOp {
    Materialize,
    Cognate,
    Mul,
    Inv,
    Check,
}

/// A Sheffer pair `(g, f)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairSpec {
    /// One of [`PAIR_PRESETS`].
    Named { name: String },
    /// Two atoms such as `exp,z` or `1,2z`.
    Atoms { g: String, f: String },
    /// Ordinary coefficient prefixes `[z^k]`, zero-padded to the order.
    Coeffs { g: Vec<String>, f: Vec<String> },
}

impl PairSpec {
    /// Reads `bernoulli`, `1,z` or `exp,log1p`.
    pub fn parse(text: &str) -> Self {
        let text = text.trim();
        if PAIR_PRESETS.contains(&text) {
            return PairSpec::Named { name: text.to_string() };
        }
        match text.split_once(',') {
            Some((g, f)) => PairSpec::Atoms { g: g.trim().to_string(), f: f.trim().to_string() },
            None => PairSpec::Named { name: text.to_string() },
        }
    }

    pub fn label(&self) -> String {
        match self {
            PairSpec::Named { name } => name.clone(),
            PairSpec::Atoms { g, f } => format!("{g},{f}"),
            PairSpec::Coeffs { g, f } => format!("[{}],[{}]", g.join(" "), f.join(" ")),
        }
    }

    pub fn build(&self, order: usize, field: &str) -> CliResult<ShefferPair<Rational>> {
        match self {
            PairSpec::Named { name } => ShefferPair::named(name, order).ok_or_else(|| {
                CliError::config(field, format!("unknown pair `{name}`; expected one of {} or `g,f` atoms", PAIR_PRESETS.join(", ")))
            }),
            PairSpec::Atoms { g, f } => {
                let g = atom(g, order).map_err(|r| CliError::config(format!("{field}.g"), r))?;
                let f = atom(f, order).map_err(|r| CliError::config(format!("{field}.f"), r))?;
                let pair = RiordanPair::new(g, f).map_err(|e| CliError::config(field, e.to_string()))?;
                Ok(ShefferPair::new(self.label(), pair))
            }
            PairSpec::Coeffs { g, f } => {
                let g = coeff_series(g, order, &format!("{field}.g"))?;
                let f = coeff_series(f, order, &format!("{field}.f"))?;
                let pair = RiordanPair::new(g, f).map_err(|e| CliError::config(field, e.to_string()))?;
                Ok(ShefferPair::new(self.label(), pair))
            }
        }
    }
}

fn coeff_series(values: &[String], order: usize, field: &str) -> CliResult<Series<Rational>> {
    if values.is_empty() {
        return Err(CliError::config(field, "coefficient list is empty"));
    }
    if values.len() > order + 1 {
        return Err(CliError::config(field, format!("{} coefficients exceed order {order}", values.len())));
    }
    let prefix = values
        .iter()
        .map(|v| parse_rational(v).map_err(|e| CliError::config(field, e.to_string())))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Series::from_prefix(order, &Rational::new(), &prefix))
}

/// Elementary series by name: a rational constant, `z`, `a z` (`2z`,
/// `-1/2*z`), `exp`, `exp(a z)`, `expm1`, `expm1/z`, `z/expm1`, `log1p`,
/// `cosh`.
pub fn atom(text: &str, order: usize) -> Result<Series<Rational>, String> {
    let like = Rational::new();
    let text = text.trim();
    let series = match text {
        "exp" => named::exp(order),
        "expm1" => named::expm1(order),
        "expm1/z" => named::expm1_over_z(order),
        "z/expm1" => named::expm1_over_z(order).reciprocal().map_err(|e| e.to_string())?,
        "log1p" => named::log1p(order),
        "cosh" => named::cosh(order),
        "z" => Series::identity(order, &like),
        _ => {
            if let Some(inner) = text.strip_prefix("exp(").and_then(|t| t.strip_suffix(')')) {
                let a = linear_coefficient(inner).ok_or_else(|| format!("cannot read `{inner}` as a multiple of z"))?;
                Series::exp_linear(order, &a)
            } else if let Some(a) = linear_coefficient(text) {
                if order < 1 {
                    return Err("order must be at least 1 for a linear atom".to_string());
                }
                Series::monomial(order, 1, a)
            } else if let Ok(c) = parse_rational(text) {
                Series::constant(order, c)
            } else {
                return Err(format!("unknown atom `{text}`"));
            }
        }
    };
    Ok(series)
}

fn linear_coefficient(text: &str) -> Option<Rational> {
    let head = text.trim().strip_suffix('z')?;
    let head = head.trim().trim_end_matches('*').trim();
    match head {
        "" | "+" => Some(Rational::from(1)),
        "-" => Some(Rational::from(-1)),
        h => parse_rational(h).ok(),
    }
}

/// Family parameters for the generalized Sheffer family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Preset {
        name: String,
    },
    Custom {
        z1: String,
        z2: String,
        p: String,
        p_star: String,
        q: String,
        q_star: String,
        alphas: Vec<String>,
        p_is: Vec<String>,
    },
}

impl FamilySpec {
    /// `h = 1` with the given branch points.
    pub fn trivial(z1: &str, z2: &str) -> Self {
        FamilySpec::Custom {
            z1: z1.to_string(),
            z2: z2.to_string(),
            p: "0".into(),
            p_star: "0".into(),
            q: "0".into(),
            q_star: "0".into(),
            alphas: Vec::new(),
            p_is: Vec::new(),
        }
    }

    pub fn build(&self) -> CliResult<FamilyParams> {
        let params = match self {
            FamilySpec::Preset { name } => FamilyParams::preset(name).ok_or_else(|| {
                CliError::config("family", format!("unknown preset `{name}`; expected one of {}", FAMILY_PRESETS.join(", ")))
            })?,
            FamilySpec::Custom { z1, z2, p, p_star, q, q_star, alphas, p_is } => {
                let one = |field: &str, v: &str| {
                    parse_rational(v).map_err(|e| CliError::config(format!("family.{field}"), e.to_string()))
                };
                let many = |field: &str, v: &[String]| v.iter().map(|x| one(field, x)).collect::<CliResult<Vec<_>>>();
                FamilyParams {
                    z1: one("z1", z1)?,
                    z2: one("z2", z2)?,
                    p: one("p", p)?,
                    p_star: one("p_star", p_star)?,
                    q: one("q", q)?,
                    q_star: one("q_star", q_star)?,
                    alphas: many("alphas", alphas)?,
                    p_is: many("p_is", p_is)?,
                }
            }
        };
        params.validate().map_err(|e| match e {
            sheffer_core::Error::InvalidParams { field, reason } => CliError::config(format!("family.{field}"), reason),
            other => CliError::config("family", other.to_string()),
        })?;
        Ok(params)
    }
}

/// Everything needed to reproduce one invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub command: Command,
    pub riordan_op: Option<RiordanOp>,
    pub pair: Option<PairSpec>,
    /// Right-hand factor for `riordan mul` and `riordan check`.
    pub pair_b: Option<PairSpec>,
    pub family: Option<FamilySpec>,
    /// Degree, or an n-ladder for `zeros` and `density`.
    pub n: Vec<usize>,
    /// Truncation order for `riordan`.
    pub order: Option<usize>,
    /// Number of interior points of the density curve.
    pub grid: Option<usize>,
    pub bins: Option<usize>,
    /// Critical line `Re s = line` overriding the derived one.
    pub line: Option<String>,
    /// Line tolerance `max(1e-8, line_k / n)` for family zeros.
    pub line_k: f64,
    pub precision_bits: u32,
    pub max_precision_bits: u32,
    pub cert_tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub seed: u64,
    /// Random pairs tested by `riordan check`.
    pub samples: usize,
    /// Require the zero locus predicted for the pair or family.
    pub expect_locus: bool,
    /// Require the histogram distance to shrink along the n-ladder.
    pub expect_convergence: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            command: Command::Generate,
            riordan_op: None,
            pair: None,
            pair_b: None,
            family: None,
            n: Vec::new(),
            order: None,
            grid: None,
            bins: None,
            line: None,
            line_k: sheffer_core::family::DEFAULT_LINE_K,
            precision_bits: DEFAULT_PRECISION,
            max_precision_bits: DEFAULT_MAX_PRECISION,
            cert_tol: DEFAULT_CERT_TOL,
            format: Format::Csv,
            out: None,
            jobs: 1,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            expect_locus: false,
            expect_convergence: false,
        }
    }
}

impl ExperimentConfig {
    /// Reads a config file holding either a bare config object or a full
    /// report whose `config` key is reused.
    pub fn from_json(text: &str) -> CliResult<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::config("config", format!("not valid JSON: {e}")))?;
        let value = match value {
            serde_json::Value::Object(mut map) if map.contains_key("config") && map.contains_key("results") => {
                map.remove("config").unwrap_or_default()
            }
            other => other,
        };
        serde_json::from_value(value).map_err(|e| CliError::config("config", e.to_string()))
    }

    pub fn root_config(&self) -> RootConfig {
        RootConfig {
            start_bits: self.precision_bits,
            max_bits: self.max_precision_bits,
            cert_tol: self.cert_tol,
            max_sweeps: None,
        }
    }

    pub fn max_n(&self) -> usize {
        self.n.iter().copied().max().unwrap_or(0)
    }

    pub fn line_rational(&self) -> CliResult<Option<Rational>> {
        self.line
            .as_deref()
            .map(|l| parse_rational(l).map_err(|e| CliError::config("line", e.to_string())))
            .transpose()
    }

    /// Checks every field the selected command depends on.
    pub fn validate(&self) -> CliResult<()> {
        if self.precision_bits < MIN_PRECISION || self.precision_bits > PRECISION_CEILING {
            return Err(CliError::config("precision_bits", format!("must lie in [{MIN_PRECISION}, {PRECISION_CEILING}]")));
        }
        if self.max_precision_bits < self.precision_bits || self.max_precision_bits > PRECISION_CEILING {
            return Err(CliError::config("max_precision_bits", "must lie between precision_bits and 2^20"));
        }
        if !(self.cert_tol.is_finite() && self.cert_tol > 0.0 && self.cert_tol < 1.0) {
            return Err(CliError::config("cert_tol", "must lie in (0, 1)"));
        }
        if !(self.line_k.is_finite() && self.line_k > 0.0) {
            return Err(CliError::config("line_k", "must be positive"));
        }
        if self.jobs == 0 {
            return Err(CliError::config("jobs", "must be at least 1"));
        }
        self.line_rational()?;
        if let Some(family) = &self.family {
            family.build()?;
        }
        match self.command {
            Command::Generate => {
                self.require_source()?;
                self.require_n(self.family.is_some())?;
                if self.n.len() != 1 {
                    return Err(CliError::config("n", "generate takes a single degree"));
                }
            }
            Command::Zeros => {
                self.require_source()?;
                self.require_n(true)?;
            }
            Command::Density => {
                if self.family.is_none() {
                    return Err(CliError::config("family", "density needs a family or --z1/--z2"));
                }
                if self.pair.is_some() {
                    return Err(CliError::config("pair", "density works on families only"));
                }
                if self.grid.is_none() && self.n.is_empty() {
                    return Err(CliError::config("grid", "give --grid for the curve or --n for the histogram comparison"));
                }
                if self.grid == Some(0) {
                    return Err(CliError::config("grid", "must be at least 1"));
                }
                if self.bins == Some(0) {
                    return Err(CliError::config("bins", "must be at least 1"));
                }
                if !self.n.is_empty() {
                    self.require_n(true)?;
                }
            }
            Command::Riordan => {
                let op = self.riordan_op.ok_or_else(|| CliError::config("riordan_op", "missing operation"))?;
                let order = self.order.unwrap_or(DEFAULT_ORDER);
                let min_order = if op == RiordanOp::Cognate { 2 } else { 1 };
                if order < min_order {
                    return Err(CliError::config("order", format!("must be at least {min_order}")));
                }
                match op {
                    RiordanOp::Materialize | RiordanOp::Cognate | RiordanOp::Inv => {
                        if self.pair.is_none() {
                            return Err(CliError::config("pair", "missing pair"));
                        }
                    }
                    RiordanOp::Mul => {
                        if self.pair.is_none() {
                            return Err(CliError::config("pair", "missing left factor"));
                        }
                        if self.pair_b.is_none() {
                            return Err(CliError::config("pair_b", "missing right factor"));
                        }
                    }
                    RiordanOp::Check => {
                        if self.samples == 0 && self.pair.is_none() {
                            return Err(CliError::config("samples", "nothing to check: give samples or a pair"));
                        }
                    }
                }
                for (field, spec) in [("pair", &self.pair), ("pair_b", &self.pair_b)] {
                    if let Some(spec) = spec {
                        spec.build(order, field)?;
                    }
                }
            }
        }
        if matches!(self.command, Command::Generate | Command::Zeros) {
            if let Some(spec) = &self.pair {
                spec.build(self.max_n().max(1), "pair")?;
            }
        }
        Ok(())
    }

    fn require_source(&self) -> CliResult<()> {
        match (&self.pair, &self.family) {
            (None, None) => Err(CliError::config("pair", "give --pair, --g/--f, or a family")),
            (Some(_), Some(_)) => Err(CliError::config("family", "give either a pair or a family, not both")),
            _ => Ok(()),
        }
    }

    fn require_n(&self, positive: bool) -> CliResult<()> {
        if self.n.is_empty() {
            return Err(CliError::config("n", "missing degree"));
        }
        if positive && self.n.contains(&0) {
            return Err(CliError::config("n", "degrees must be at least 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn atoms() {
        assert_eq!(*atom("2z", 3).unwrap().coeff(1), q(2, 1));
        assert_eq!(*atom("-1/2*z", 3).unwrap().coeff(1), q(-1, 2));
        assert_eq!(*atom("exp(2z)", 3).unwrap().coeff(2), q(2, 1));
        assert_eq!(*atom("3/4", 3).unwrap().coeff(0), q(3, 4));
        assert_eq!(*atom("z/expm1", 3).unwrap().coeff(1), q(-1, 2));
        assert!(atom("sin", 3).is_err());
    }

    #[test]
    fn pair_parsing() {
        assert_eq!(PairSpec::parse("1,z"), PairSpec::Named { name: "1,z".into() });
        assert_eq!(PairSpec::parse("exp, z"), PairSpec::Atoms { g: "exp".into(), f: "z".into() });
        let pair = PairSpec::parse("exp,z").build(4, "pair").unwrap();
        assert_eq!(*pair.pair.g().coeff(3), q(1, 6));
    }

    #[test]
    fn inadmissible_pair_names_field() {
        let err = PairSpec::parse("0,z").build(4, "pair").unwrap_err();
        assert!(matches!(err, CliError::Config { ref field, .. } if field == "pair"), "{err}");
        let err = PairSpec::parse("exp,sin").build(4, "pair").unwrap_err();
        assert!(matches!(err, CliError::Config { ref field, .. } if field == "pair.f"), "{err}");
    }

    #[test]
    fn coefficient_lists() {
        let spec = PairSpec::Coeffs { g: vec!["1".into(), "1/2".into()], f: vec!["0".into(), "1".into()] };
        let pair = spec.build(3, "pair").unwrap();
        assert_eq!(*pair.pair.g().coeff(1), q(1, 2));
        assert_eq!(*pair.pair.g().coeff(3), q(0, 1));
    }

    #[test]
    fn family_errors_name_the_field() {
        let mut spec = FamilySpec::trivial("3", "1");
        let err = spec.build().unwrap_err();
        assert!(matches!(err, CliError::Config { ref field, .. } if field == "family.z2"), "{err}");
        spec = FamilySpec::trivial("x", "3");
        let err = spec.build().unwrap_err();
        assert!(matches!(err, CliError::Config { ref field, .. } if field == "family.z1"), "{err}");
    }

    #[test]
    fn validation_names_fields() {
        let base = ExperimentConfig { command: Command::Zeros, pair: Some(PairSpec::parse("bernoulli")), n: vec![4], ..Default::default() };
        assert!(base.validate().is_ok());
        let cases = [
            (ExperimentConfig { n: vec![], ..base.clone() }, "n"),
            (ExperimentConfig { n: vec![0], ..base.clone() }, "n"),
            (ExperimentConfig { cert_tol: 0.0, ..base.clone() }, "cert_tol"),
            (ExperimentConfig { precision_bits: 8, ..base.clone() }, "precision_bits"),
            (ExperimentConfig { jobs: 0, ..base.clone() }, "jobs"),
            (ExperimentConfig { line: Some("a/b".into()), ..base.clone() }, "line"),
            (ExperimentConfig { pair: None, ..base.clone() }, "pair"),
            (ExperimentConfig { family: Some(FamilySpec::Preset { name: "example1-left".into() }), ..base.clone() }, "family"),
            (ExperimentConfig { command: Command::Density, pair: None, ..base.clone() }, "family"),
            (ExperimentConfig { command: Command::Riordan, ..base.clone() }, "riordan_op"),
        ];
        for (cfg, field) in cases {
            match cfg.validate() {
                Err(CliError::Config { field: f, .. }) => assert_eq!(f, field),
                other => panic!("expected config error on {field}, got {other:?}"),
            }
        }
    }

    #[test]
    fn json_roundtrip_and_partial_files() {
        let cfg = ExperimentConfig {
            command: Command::Density,
            family: Some(FamilySpec::trivial("1", "3")),
            grid: Some(10),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
        let partial = r#"{"command": "zeros", "pair": {"kind": "named", "name": "euler"}, "n": [6]}"#;
        let cfg = ExperimentConfig::from_json(partial).unwrap();
        assert_eq!(cfg.precision_bits, DEFAULT_PRECISION);
        assert!(cfg.validate().is_ok());
        assert!(matches!(ExperimentConfig::from_json("{"), Err(CliError::Config { .. })));
    }
}

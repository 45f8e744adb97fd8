use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Command, ExperimentConfig, FamilySpec, Format, PairSpec, RiordanOp};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "sheffer", version, about = "Sheffer sequences, Riordan arrays and the zeros of their polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Option<Commands>,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Load the experiment from a JSON config (or a previous JSON report)
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Starting precision of the root finder, in bits [default: 256]
    #[arg(long, global = true, value_name = "BITS")]
    pub precision: Option<u32>,

    /// Precision ceiling of the root finder, in bits [default: 4096]
    #[arg(long, global = true, value_name = "BITS")]
    pub max_precision: Option<u32>,

    /// Relative certificate tolerance for roots [default: 1e-30]
    #[arg(long, global = true, value_name = "TOL")]
    pub cert_tol: Option<f64>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output file; standard output when absent
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads for n-ladders [default: 1]
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Seed for randomized suites [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Commands {
    /// Coefficient table of G_0..G_n (or H_0..H_n for a family)
    Generate {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
    },
    /// Certified zeros of G_n or H_n, classified against the critical line
    Zeros {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Degree or comma-separated ladder
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Critical line Re s = LINE for pairs [default: derived for Appell pairs, else 0]
        #[arg(long)]
        line: Option<String>,
        /// K in the family line tolerance max(1e-8, K/n)
        #[arg(long)]
        line_k: Option<f64>,
        /// Fail unless the zeros follow the predicted locus
        #[arg(long)]
        expect_locus: bool,
    },
    /// Limiting zero density and histogram comparison for a family
    Density {
        #[command(flatten)]
        family: FamilyArgs,
        /// Interior points of the density curve on (0, T)
        #[arg(long)]
        grid: Option<usize>,
        /// Degrees whose zero heights are binned
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Histogram bins on (0, T) [default: 20]
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long)]
        line_k: Option<f64>,
        /// Fail unless the L1 distance shrinks from the smallest to the largest n
        #[arg(long)]
        expect_convergence: bool,
    },
    /// Exponential Riordan array operations
    Riordan {
        #[command(subcommand)]
        op: RiordanCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum RiordanCmd {
    /// Rows 0..=order of the matrix [g, f]
    Materialize {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        order: Option<usize>,
    },
    /// The cognate pair (f'/g, f)
    Cognate {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        order: Option<usize>,
    },
    /// The product [g, f][h, l]
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// The group inverse
    Inv {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Group laws on random pairs (and on --a/--b when given)
    Check {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        order: Option<usize>,
        /// Number of random triples [default: 200]
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Debug, Args, Default)]
pub struct PairArgs {
    /// Preset (bernoulli, bernoulli-cognate, euler, hermite, monomials, "1,z") or atoms "g,f"
    #[arg(long)]
    pub pair: Option<String>,
    /// Ordinary coefficients of g, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "f", conflicts_with = "pair")]
    pub g: Vec<String>,
    /// Ordinary coefficients of f, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "g")]
    pub f: Vec<String>,
}

impl PairArgs {
    fn spec(self) -> Option<PairSpec> {
        match self.pair {
            Some(text) => Some(PairSpec::parse(&text)),
            None if !self.g.is_empty() => Some(PairSpec::Coeffs { g: self.g, f: self.f }),
            None => None,
        }
    }
}

#[derive(Debug, Args, Default)]
pub struct FamilyArgs {
    /// Family preset: example1-left or example1-right
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p_star: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q_star: Option<String>,
    /// Extra branch points alpha_i, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<String>,
    /// Exponents p_i of (alpha_i - z^2), comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p_i: Vec<String>,
}

impl FamilyArgs {
    fn spec(self) -> CliResult<Option<FamilySpec>> {
        let custom = self.z1.is_some() || self.z2.is_some();
        match (self.family, custom) {
            (Some(_), true) => Err(CliError::config("family", "give a preset or --z1/--z2, not both")),
            (Some(name), false) => Ok(Some(FamilySpec::Preset { name })),
            (None, true) => {
                let z1 = self.z1.ok_or_else(|| CliError::config("family.z1", "missing"))?;
                let z2 = self.z2.ok_or_else(|| CliError::config("family.z2", "missing"))?;
                let zero = || "0".to_string();
                Ok(Some(FamilySpec::Custom {
                    z1,
                    z2,
                    p: self.p.unwrap_or_else(zero),
                    p_star: self.p_star.unwrap_or_else(zero),
                    q: self.q.unwrap_or_else(zero),
                    q_star: self.q_star.unwrap_or_else(zero),
                    alphas: self.alpha,
                    p_is: self.p_i,
                }))
            }
            (None, false) => {
                if self.p.is_some() || self.p_star.is_some() || self.q.is_some() || self.q_star.is_some() || !self.alpha.is_empty() {
                    return Err(CliError::config("family.z1", "exponents given without --z1/--z2"));
                }
                Ok(None)
            }
        }
    }
}

impl Cli {
    /// Builds the experiment config. `--config` supplies the base; explicit
    /// global flags override it.
    pub fn into_config(self) -> CliResult<ExperimentConfig> {
        let mut cfg = match (&self.global.config, self.command) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
                ExperimentConfig::from_json(&text)?
            }
            (Some(_), Some(_)) => return Err(CliError::config("config", "give either --config or a subcommand")),
            (None, None) => return Err(CliError::config("command", "missing subcommand")),
            (None, Some(cmd)) => from_command(cmd)?,
        };
        let g = self.global;
        if let Some(v) = g.precision {
            cfg.precision_bits = v;
            cfg.max_precision_bits = cfg.max_precision_bits.max(v);
        }
        if let Some(v) = g.max_precision {
            cfg.max_precision_bits = v;
        }
        if let Some(v) = g.cert_tol {
            cfg.cert_tol = v;
        }
        if let Some(v) = g.format {
            cfg.format = v;
        }
        if g.out.is_some() {
            cfg.out = g.out;
        }
        if let Some(v) = g.jobs {
            cfg.jobs = v;
        }
        if let Some(v) = g.seed {
            cfg.seed = v;
        }
        Ok(cfg)
    }
}

fn from_command(cmd: Commands) -> CliResult<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    match cmd {
        Commands::Generate { pair, family, n } => {
            cfg.command = Command::Generate;
            cfg.pair = pair.spec();
            cfg.family = family.spec()?;
            cfg.n = vec![n];
        }
        Commands::Zeros { pair, family, n, line, line_k, expect_locus } => {
            cfg.command = Command::Zeros;
            cfg.pair = pair.spec();
            cfg.family = family.spec()?;
            if cfg.family.is_some() && line.is_some() {
                return Err(CliError::config("line", "families use the line Re s = c from their parameters"));
            }
            cfg.n = n;
            cfg.line = line;
            cfg.line_k = line_k.unwrap_or(cfg.line_k);
            cfg.expect_locus = expect_locus;
        }
        Commands::Density { family, grid, n, bins, line_k, expect_convergence } => {
            cfg.command = Command::Density;
            cfg.family = family.spec()?;
            cfg.grid = grid;
            cfg.n = n;
            cfg.bins = bins;
            cfg.line_k = line_k.unwrap_or(cfg.line_k);
            cfg.expect_convergence = expect_convergence;
        }
        Commands::Riordan { op } => {
            cfg.command = Command::Riordan;
            let (op, pair, pair_b, order) = match op {
                RiordanCmd::Materialize { pair, order } => (RiordanOp::Materialize, pair.spec(), None, order),
                RiordanCmd::Cognate { pair, order } => (RiordanOp::Cognate, pair.spec(), None, order),
                RiordanCmd::Inv { pair, order } => (RiordanOp::Inv, pair.spec(), None, order),
                RiordanCmd::Mul { a, b, order } => (RiordanOp::Mul, Some(PairSpec::parse(&a)), Some(PairSpec::parse(&b)), order),
                RiordanCmd::Check { a, b, order, samples } => {
                    if let Some(s) = samples {
                        cfg.samples = s;
                    }
                    (RiordanOp::Check, a.as_deref().map(PairSpec::parse), b.as_deref().map(PairSpec::parse), order)
                }
            };
            cfg.riordan_op = Some(op);
            cfg.pair = pair;
            cfg.pair_b = pair_b;
            cfg.order = order;
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> CliResult<ExperimentConfig> {
        Cli::try_parse_from(std::iter::once("sheffer").chain(args.iter().copied())).unwrap().into_config()
    }

    #[test]
    fn ladder_and_globals() {
        let cfg = config(&["zeros", "--family", "example1-right", "--n", "20,50", "--jobs", "2", "--precision", "128"]).unwrap();
        assert_eq!(cfg.n, vec![20, 50]);
        assert_eq!(cfg.jobs, 2);
        assert_eq!(cfg.precision_bits, 128);
        assert_eq!(cfg.family, Some(FamilySpec::Preset { name: "example1-right".into() }));
    }

    #[test]
    fn coefficient_flags() {
        let cfg = config(&["generate", "--g", "1,-1/2", "--f", "0,1", "--n", "3"]).unwrap();
        assert_eq!(cfg.pair, Some(PairSpec::Coeffs { g: vec!["1".into(), "-1/2".into()], f: vec!["0".into(), "1".into()] }));
    }

    #[test]
    fn density_from_branch_points() {
        let cfg = config(&["density", "--z1", "1", "--z2", "3", "--grid", "5"]).unwrap();
        assert_eq!(cfg.family, Some(FamilySpec::trivial("1", "3")));
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn riordan_mul_pairs() {
        let cfg = config(&["riordan", "mul", "--a", "exp,z", "--b", "exp,z", "--order", "5"]).unwrap();
        assert_eq!(cfg.riordan_op, Some(RiordanOp::Mul));
        assert_eq!(cfg.pair_b, Some(PairSpec::Atoms { g: "exp".into(), f: "z".into() }));
    }

    #[test]
    fn family_conflicts_are_config_errors() {
        let err = config(&["zeros", "--family", "example1-left", "--z1", "1", "--n", "4"]).unwrap_err();
        assert!(matches!(err, CliError::Config { ref field, .. } if field == "family"));
        let err = config(&["zeros", "--family", "example1-left", "--line", "0", "--n", "4"]).unwrap_err();
        assert!(matches!(err, CliError::Config { ref field, .. } if field == "line"));
    }
}

//! Exact and high-precision tools for Riordan arrays, Sheffer polynomial
//! sequences and the location of their zeros.
//!
//! ```
//! use sheffer_core::family::{run_experiment, FamilyParams, LineTolerance};
//! use sheffer_core::locus::{appell_line, classify, default_tol};
//! use sheffer_core::{find_roots, sheffer_poly, RootConfig, ShefferPair};
//!
//! # fn main() -> sheffer_core::Result<()> {
//! let pair = ShefferPair::bernoulli_cognate(12);
//! let poly = sheffer_poly(&pair, 12)?;
//! let roots = find_roots(&poly, &RootConfig::with_bits(256))?;
//! let line = appell_line(&pair)?.line; // -1/2
//! let report = classify(&roots, &line, default_tol(&roots))?;
//! assert_eq!(report.on_line(), 12);
//!
//! let run = run_experiment(&FamilyParams::example1_left(), 100, &RootConfig::with_bits(256), LineTolerance::default())?;
//! assert_eq!(run.report.real(), 6);
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod family;
pub mod locus;
pub mod riordan;
pub mod roots;
pub mod scalar;
pub mod series;
pub mod sheffer;

pub use error::{Error, Result};
pub use riordan::{cognate_map, group_inv, group_mul, RiordanMatrix, RiordanPair};
pub use roots::{conjugate_closure, find_roots, vieta_check, Root, RootConfig, RootSet, VietaCheck};
pub use scalar::{parse_rational, Cplx, Real, Scalar};
pub use series::Series;
pub use sheffer::{cognate_poly, product_poly, scale_variable, sheffer_poly, umbral_compose, DensePolynomial, ShefferPair};

//! `fdiv`: divergence measures between finite discrete distributions.
//!
//! The crate covers four layers:
//!
//! - [`simplex`]: validated distributions on the open probability simplex, the
//!   ratio bounds `(r, R)` of a pair, and a seeded generator of test pairs.
//! - [`measures`]: the concrete measures (chi-square, Kullback-Leibler, relative
//!   J, relative JS, relative AG, triangular discrimination, Bhattacharyya,
//!   Hellinger, Vajda `|chi|^m`) and their symmetric combinations.
//! - [`csiszar`] and [`type_s`]: a generic f-divergence engine with bound
//!   functionals, and the two one-parameter families `Phi_s` and `Omega_s` built
//!   on it.
//! - [`bounds`] and [`means`]: closed-form bounds on `Omega_s`, the
//!   p-logarithmic power mean they are written in, and [`bounds::verify_all`],
//!   which checks every inequality numerically and reports its slack.
//!
//! All logarithms are natural, so information-type values are in nats.
//!
//! ```rust
//! use fdiv::{measures, type_s, DistributionPair};
//!
//! let pair = DistributionPair::from_slices(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
//! let ag = measures::relative_ag_divergence(&pair);
//! let omega_1 = type_s::omega_s(&pair, 1.0);
//! assert!((ag - omega_1).abs() < 1e-15);
//! assert!((measures::chi_squared(&pair) - 1.0 / 3.0).abs() < 1e-15);
//! ```

#![forbid(unsafe_code)]

pub mod bounds;
pub mod cli;
pub mod csiszar;
mod error;
pub mod means;
pub mod measures;
pub mod numeric;
pub mod simplex;
pub mod type_s;

pub use crate::error::{Error, Result};
pub use crate::simplex::{Distribution, DistributionPair, RatioBounds};
pub use crate::type_s::SParameter;

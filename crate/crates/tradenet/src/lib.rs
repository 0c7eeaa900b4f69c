//! Transitivity in bipartite buyer-seller trade networks: detection,
//! estimation, calibration, and counterfactual simulation.
//!
//! The crate covers the full pipeline for working with seller×buyer trade
//! networks where link formation may depend on shared third-party partners:
//!
//! - [`graph`] — bipartite graphs, geographic proximity, the common-support
//!   index, triad statistics, and descriptive network statistics.
//! - [`models`] — dyadic link-formation models (logistic, balls-and-bins,
//!   generalized Poisson) and the expected-surplus layer.
//! - [`dgp`] — seeded synthetic data generators for Monte Carlo work.
//! - [`triadtest`] — the cross-sectional transitivity test: saturated
//!   linear-probability fits, min-normalized residuals, the T statistic, and
//!   its bootstrap null distribution.
//! - [`panel`] — longitudinal estimation of the transitivity effect with an
//!   exchange-rate shift-share instrument and cross-fitted IV.
//! - [`calibrate`] — hybrid likelihood/moment calibration of the generalized
//!   Poisson model against a panel estimate.
//! - [`equilibrium`] — stochastic fixed-point equilibria, seeded ensembles,
//!   and counterfactual scenarios with and without the transitivity channel.
//! - [`io`] / [`config`] / [`pipeline`] — CSV schemas, run configuration, and
//!   the command orchestration used by the `tradenet` binary.
//!
//! All stochastic routines are keyed by explicit seeds and produce identical
//! results regardless of thread count.

pub mod calibrate;
pub mod config;
pub mod dgp;
pub mod equilibrium;
pub mod error;
pub mod graph;
pub mod io;
pub mod models;
pub mod panel;
pub mod pipeline;
pub mod rng;
pub mod triadtest;

pub use error::{Error, Result};

//! tsbench — a config-driven benchmark pipeline for time-series forecasting.
//!
//! Every modelling decision is an explicit, tunable configuration: data
//! shaping (filtering, splits, normalization), training technique (loss,
//! Adam, EMA weight tracking, curriculum schedules), inference
//! post-processing, budgeted hyperparameter search, and statistical
//! comparison of trained models.
//!
//! The crate is organized around the pipeline stages:
//!
//! * [`data`] — dataset ingest, profiles, splits, transforms, windowing
//! * [`metrics`] / [`loss`] — evaluation metrics and differentiable losses
//! * [`nn`] — minimal dense-network engine with hand-written gradients
//! * [`model`] — the forecaster contract and the bundled model zoo
//! * [`train`] — the training loop with early stopping, EMA, curriculum
//! * [`tune`] — budgeted random / TPE hyperparameter search
//! * [`eval`] — K-run evaluation, t-test comparison, ensembling, reports
//! * [`config`] / [`pipeline`] — run configuration and orchestration
//!
//! The `tsbench` binary drives the whole flow from a single JSON config;
//! see the repository README for CLI usage.

pub mod config;
pub mod data;
pub mod eval;
pub mod loss;
pub mod metrics;
pub mod model;
pub mod nn;
pub mod pipeline;
pub mod synthetic;
pub mod train;
pub mod tune;

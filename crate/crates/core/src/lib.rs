//! Random-forest hyperparameter and feature-subset tuning with the sparrow
//! search algorithm (SSA) and an improved, iterated-local-search SSA (ISSA).
//!
//! The pipeline, end to end:
//!
//! * [`dataset`] loads and cleans the VR-experience table, summarizes it,
//!   encodes categoricals and produces stratified splits.
//! * [`forest`] is a bagged CART random forest with confusion-matrix scoring.
//! * [`ssa`] is the canonical producer/scrounger/scout optimizer over a box.
//! * [`issa`] adds chaotic initialization, adaptive producer weighting,
//!   opposition plus Cauchy refresh of the elite, and an ILS outer loop.
//! * [`tuner`] maps search vectors to forest settings, scores them with
//!   stratified cross-validation and runs the RF / SSA-RF / ISSA-RF comparison.
//! * [`bench`] holds standard test objectives and an equal-budget harness.
//! * [`cli`] backs the `sparrow-forest` executable.

pub mod bench;
pub mod cli;
pub mod dataset;
pub mod forest;
pub mod issa;
pub mod matrix;
pub mod ssa;
pub mod synthetic;
pub mod tuner;

pub use matrix::FeatureMatrix;

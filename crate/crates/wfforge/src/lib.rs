//! Toolkit for generating, executing, and modeling scientific-workflow benchmarks.
//!
//! A workflow benchmark is a DAG of tasks whose dependencies are mediated by
//! files, where every task is an instance of a single calibratable kernel that
//! reads its inputs, performs a configurable mix of CPU- and memory-intensive
//! work, and writes its outputs. The crate covers the whole lifecycle:
//!
//! - [`wfspec`] — the benchmark data model, its JSON file format, and
//!   structural validation.
//! - [`taskbench`] — the three-phase task kernel (read, compute, write) with
//!   per-core worker groups and a tunable CPU/memory mix.
//! - [`calibrate`] — fits kernel parameters so the kernel's runtime tracks a
//!   target task's runtime.
//! - [`recipes`] — structural recipes (base graph + repeatable patterns) and
//!   workflow generation at requested sizes and data footprints.
//! - [`models`] — analytical makespan estimators (macro-task and per-level).
//! - [`runner`] — translation to executable artifacts and local DAG execution
//!   producing traces.
//! - [`analyze`] — throughput, start-time ECDFs, and trace comparison metrics.
//!
//! Two binaries ship with the crate: `wfforge`, the subcommand CLI, and
//! `taskbench`, the standalone kernel that generated manifests invoke. The
//! `examples/` directory has one runnable example per capability; start with
//! `cargo run --example generate_benchmark`.

pub mod analyze;
pub mod calibrate;
pub mod cli;
pub mod models;
pub mod recipes;
pub mod runner;
pub mod taskbench;
pub mod util;
pub mod wfspec;

//! Configuration-driven experiment runner: loads a TOML experiment, runs the
//! selected analyzers, audits and probes, and writes JSON or CSV reports.

pub mod config;
pub mod report;
pub mod run;

pub use config::{ConfigError, ExperimentConfig, Format, Task, SCHEMA};
pub use report::{emit_report, ReportError};
pub use run::{run_experiment, OverallStatus, ReportEnvelope, TaskOutput, TaskRecord};

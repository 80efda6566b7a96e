//! Configuration, published-table fixtures and output files.

pub mod config;
pub mod golden;
pub mod output;

pub use config::{load_config, load_with_overlay, parse_config, RunConfig};
pub use golden::{verify_tables, Column, GoldenTable, TableId, VerificationReport, VerifyOptions};
pub use output::{emit_outputs, trajectory_csv, EmitFlags, Manifest};

//! Experiment harness: configs, replicated runs, the regret grid and
//! click-log ingestion.

pub mod clicklog;
pub mod config;
pub mod grid;
pub mod runner;

pub use clicklog::{ingest_clicklog, ClickLogInstance, ClickLogRecord};
pub use config::{ConfigFile, ExperimentConfig};
pub use grid::{table2_grid, table2_grid_with, GridCell, GridRow, TABLE2_ROWS};
pub use runner::{
    run_experiment, run_experiment_with, write_summary_csv, write_trace_csv, ExperimentResult,
    FixedList, Learner, RunTrace, Summary,
};

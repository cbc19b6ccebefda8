//! Experiment harness for random k-complexes: threshold sweeps over the
//! `ω` axis, audits of the coboundary expansion bound, partial-domination
//! experiments and plot output.

pub mod audit;
pub mod dominate;
pub mod error;
pub mod plot;
pub mod sweep;

pub use audit::{run_bound_audit, AuditMode, AuditReport};
pub use dominate::{run_domination_experiment, DominationReport};
pub use error::{LabError, LabResult};
pub use plot::{emit_plot, PlotFormat};
pub use sweep::{
    omega_range, run_threshold_sweep, write_sweep_csv, ExperimentConfig, SweepRow, CSV_HEADER,
};

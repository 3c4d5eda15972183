//! Manufactured solutions, experiment drivers and result tables.

pub mod cases;
pub mod emit;
pub mod study;

pub use cases::{case_constant, case_noflow, case_taylor, case_trig, CaseProblem, ManufacturedCase};
pub use emit::{emit, emit_sweep_csv, Format, CSV_HEADER, SWEEP_HEADER};
pub use study::{
    attach_orders, consecutive_ratios, convergence_study, measure, observed_order, robustness_sweep, run_case, CaseSpec, ErrorRecord, MeshFamily, Orders, StudyError,
    SweepRecord,
};

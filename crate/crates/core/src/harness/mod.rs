//! Configuration-driven Monte Carlo runs comparing the oracle with the grid
//! detector.

pub mod config;
pub mod csv_report;
pub mod run;
pub mod sweep;
pub mod verify;

pub use config::{ArithmeticMode, Levels, Scenario, ScenarioConfig};
pub use csv_report::{emit_csv, report_to_string, write_report, write_sweep, REPLICATE_COLUMNS};
pub use run::{run_replicate, run_scenario, subseed, DetectorOutcome, ReplicateRow, ScenarioReport};
pub use sweep::{sweep, SweepAxis, SweepTable};
pub use verify::{verify_identity, Cause, Disagreement, VerifyOutcome};

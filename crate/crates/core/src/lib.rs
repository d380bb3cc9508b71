//! Exact first hitting times of F-sigma sets by the jump process of a
//! finite-activity càdlàg path, and a finite-grid detector for the event
//! `(T < t)` built from rational time pairs.
//!
//! * [`set_algebra`]: closed sets, F-sigma sets, distances and enlargements.
//! * [`path_model`]: exact paths and seeded compound Poisson generation.
//! * [`hitting_oracle`]: `T` and `(T < t)` read from the jump list.
//! * [`grid_detector`]: the rational-pair detector with resolution and
//!   rejection certificates.
//! * [`harness`]: configuration, Monte Carlo runs, sweeps and CSV reports.

pub mod error;
pub mod grid_detector;
pub mod harness;
pub mod hitting_oracle;
pub mod path_model;
pub mod rational;
pub mod set_algebra;

pub use error::{Error, Result};
pub use grid_detector::{
    detect, detect_fsigma, detect_level, rejection_level, required_resolution,
    required_resolution_for, theta_pairs, DetectOptions, DetectorVerdict, FSigmaVerdict, GridSpec,
    LevelVerdict, Schedule,
};
pub use hitting_oracle::{event_before, first_hitting_time, hit_witness, Branch, HittingResult};
pub use path_model::{CadlagPath, CompoundPoisson, ContinuousSpec, JumpSpec, PiecewiseLinear, SizeDistribution};
pub use rational::{BigRational, Extended};
pub use set_algebra::{ClosedInterval, ClosedSet, FSigmaSet, Membership};

//! Oracle versus detector on every replicate, with each disagreement traced
//! back to the certificate precondition it violates.

use std::fmt;

use super::config::{ArithmeticMode, Scenario};
use super::run::{replay_path, run_scenario, ReplicateRow, ScenarioReport};
use crate::error::{Error, Result};
use crate::grid_detector::{rejection_level, required_resolution_for, NoCertificate};
use crate::hitting_oracle::hit_witness;
use crate::rational::format_rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cause {
    /// Oracle true, detector rejected on a level with no grid pairs.
    VacuousLevel { component: usize, n: u64, m: u64 },
    /// Oracle true, detector rejected at a resolution below the completeness bound.
    ResolutionBelowRequired {
        component: usize,
        n: u64,
        m: u64,
        required: u64,
    },
    /// Oracle false, but fewer levels ran than the rejection certificate needs.
    LevelsBelowRejectionLevel {
        component: usize,
        levels: u64,
        required: u64,
        distance: String,
    },
    /// No certificate applies (inexact path).
    NoGuarantee { component: usize },
    /// Every precondition held. This indicates a defect in the harness.
    Unexplained(String),
}

impl Cause {
    pub fn is_precondition_violation(&self) -> bool {
        !matches!(self, Cause::Unexplained(_))
    }
}

impl fmt::Display for Cause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cause::VacuousLevel { component, n, m } => {
                write!(f, "component {component}: level {n} vacuous at m={m}")
            }
            Cause::ResolutionBelowRequired { component, n, m, required } => write!(
                f,
                "component {component}: level {n} rejected at m={m} < required resolution {required}"
            ),
            Cause::LevelsBelowRejectionLevel { component, levels, required, distance } => write!(
                f,
                "component {component}: N={levels} below rejection level {required} (d={distance})"
            ),
            Cause::NoGuarantee { component } => {
                write!(f, "component {component}: no certificate for an inexact path")
            }
            Cause::Unexplained(msg) => write!(f, "UNEXPLAINED: {msg}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub replicate: u64,
    pub subseed: u64,
    pub oracle_event: bool,
    pub detector_overall: bool,
    pub cause: Cause,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "replicate {} (subseed {}): oracle={} detector={}: {}",
            self.replicate, self.subseed, self.oracle_event, self.detector_overall, self.cause
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub report: ScenarioReport,
    pub disagreements: Vec<Disagreement>,
    pub vacuous_rejections: usize,
}

impl VerifyOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.disagreements.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "scenario={} replicates={} agreements={} disagreements={} vacuous_rejections={} oracle_events={}",
            self.report.scenario_id,
            self.report.rows.len(),
            self.report.agreements(),
            self.disagreements.len(),
            self.vacuous_rejections,
            self.report.oracle_events(),
        )
    }
}

/// Requires exact arithmetic. Any schedule is accepted so that deliberately
/// mis-scheduled runs can be diagnosed.
pub fn verify_identity(scenario: &Scenario, jobs: Option<usize>) -> Result<VerifyOutcome> {
    if scenario.mode != ArithmeticMode::Exact {
        return Err(Error::config("mode", "verify requires exact arithmetic"));
    }
    let report = run_scenario(scenario, jobs)?;
    let disagreements = report
        .rows
        .iter()
        .filter(|r| !r.agrees())
        .map(|r| {
            Ok(Disagreement {
                replicate: r.replicate,
                subseed: r.subseed,
                oracle_event: r.oracle_event,
                detector_overall: r.detector_overall(),
                cause: classify(scenario, r)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let vacuous_rejections = report.vacuous_replicates();
    Ok(VerifyOutcome {
        report,
        disagreements,
        vacuous_rejections,
    })
}

fn classify(scenario: &Scenario, row: &ReplicateRow) -> Result<Cause> {
    let path = replay_path(scenario, row)?;
    let Some(verdict) = row.verdict() else {
        return Ok(Cause::Unexplained("zero branch cannot disagree".into()));
    };
    if row.oracle_event {
        // missed event: inspect the component holding the first qualifying jump
        let Some(hit) = hit_witness(&path, &scenario.target, &scenario.t) else {
            return Ok(Cause::Unexplained("oracle event without a jump witness".into()));
        };
        let component = hit.component;
        let cv = &verdict.components[component - 1];
        let Some(level) = cv.levels.iter().find(|l| !l.accepted) else {
            return Ok(Cause::Unexplained(format!(
                "component {component} accepted every level yet overall is false"
            )));
        };
        if level.vacuous {
            return Ok(Cause::VacuousLevel { component, n: level.n, m: level.m });
        }
        match required_resolution_for(&path, &scenario.t, level.n) {
            Ok(required) if level.m < required => Ok(Cause::ResolutionBelowRequired {
                component,
                n: level.n,
                m: level.m,
                required,
            }),
            Ok(required) => Ok(Cause::Unexplained(format!(
                "component {component}: level {} rejected at m={} >= required {required}; jump at {}",
                level.n,
                level.m,
                format_rational(&hit.time)
            ))),
            Err(Error::NoGuarantee(_)) => Ok(Cause::NoGuarantee { component }),
            Err(e) => Err(e),
        }
    } else {
        let Some(component) = verdict.accepting_component() else {
            return Ok(Cause::Unexplained("detector true without an accepting component".into()));
        };
        let levels = verdict.components[component - 1].levels.len() as u64;
        match rejection_level(&path, &scenario.target.components()[component - 1], &scenario.t) {
            Ok(cert) if levels < cert.level => Ok(Cause::LevelsBelowRejectionLevel {
                component,
                levels,
                required: cert.level,
                distance: cert.distance.to_string(),
            }),
            Ok(cert) => Ok(Cause::Unexplained(format!(
                "component {component}: accepted {levels} levels >= rejection level {}",
                cert.level
            ))),
            Err(NoCertificate::Inexact) => Ok(Cause::NoGuarantee { component }),
            Err(other) => Ok(Cause::Unexplained(format!(
                "component {component}: oracle false but {other:?}"
            ))),
        }
    }
}

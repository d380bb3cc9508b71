//! Replicate execution: sample a path, ask the oracle, run the detector.

use std::time::Instant;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::config::{ArithmeticMode, Levels, Scenario};
use crate::error::{Error, Result};
use crate::grid_detector::{
    detect_fsigma, rejection_level, DetectOptions, FSigmaVerdict, GridWitness, NoCertificate,
};
use crate::hitting_oracle::{first_hitting_time, Branch};
use crate::path_model::CadlagPath;
use crate::rational::{BigRational, Extended};
use crate::set_algebra::FSigmaSet;

const SUBSEED_DOMAIN: &[u8] = b"jumphit/subseed/v1";

/// `SHA-256("jumphit/subseed/v1" || seed_le || replicate_le)`, first eight
/// bytes read little-endian. Independent of execution order.
pub fn subseed(seed: u64, replicate: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(SUBSEED_DOMAIN);
    h.update(seed.to_le_bytes());
    h.update(replicate.to_le_bytes());
    let digest = h.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetectorOutcome {
    /// `0 ∈ U`: the event holds through the zero branch and no grid is consulted.
    Skipped,
    Ran {
        verdict: FSigmaVerdict,
        max_level: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplicateRow {
    pub replicate: u64,
    pub subseed: u64,
    pub oracle_event: bool,
    pub oracle_branch: Branch,
    pub oracle_time: Extended,
    pub detector: DetectorOutcome,
    pub runtime_ms: Option<u64>,
}

impl ReplicateRow {
    pub fn detector_overall(&self) -> bool {
        match &self.detector {
            DetectorOutcome::Skipped => true,
            DetectorOutcome::Ran { verdict, .. } => verdict.overall,
        }
    }

    pub fn agrees(&self) -> bool {
        self.oracle_event == self.detector_overall()
    }

    pub fn verdict(&self) -> Option<&FSigmaVerdict> {
        match &self.detector {
            DetectorOutcome::Skipped => None,
            DetectorOutcome::Ran { verdict, .. } => Some(verdict),
        }
    }

    /// When every component rejected, the level by which the last one did.
    pub fn first_reject_level(&self) -> Option<u64> {
        let v = self.verdict()?;
        if v.overall {
            return None;
        }
        v.components.iter().filter_map(|c| c.first_reject_level).max()
    }

    /// Finest-level witness of the first accepting component.
    pub fn witness(&self) -> Option<&GridWitness> {
        let v = self.verdict()?;
        let k = v.accepting_component()?;
        v.components[k - 1].witness()
    }

    pub fn levels_run(&self) -> usize {
        self.verdict()
            .map_or(0, |v| v.components.iter().map(|c| c.levels.len()).sum())
    }

    pub fn total_pairs(&self) -> u64 {
        self.verdict()
            .map_or(0, |v| v.components.iter().map(|c| c.total_pairs()).sum())
    }

    /// Grid pair counts per evaluated level, component by component.
    pub fn level_pair_counts(&self) -> Vec<u64> {
        self.verdict().map_or_else(Vec::new, |v| {
            v.components
                .iter()
                .flat_map(|c| c.levels.iter().map(|l| l.pair_count))
                .collect()
        })
    }

    pub fn has_vacuous_level(&self) -> bool {
        self.verdict()
            .is_some_and(|v| v.components.iter().any(|c| c.vacuous_levels() > 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioReport {
    pub scenario_id: String,
    pub mode: ArithmeticMode,
    pub rows: Vec<ReplicateRow>,
}

impl ScenarioReport {
    pub fn empty(scenario_id: impl Into<String>, mode: ArithmeticMode) -> Self {
        ScenarioReport {
            scenario_id: scenario_id.into(),
            mode,
            rows: Vec::new(),
        }
    }

    pub fn agreements(&self) -> usize {
        self.rows.iter().filter(|r| r.agrees()).count()
    }

    /// Fraction of rows where oracle and detector agree; 1 for an empty report.
    pub fn agreement_rate(&self) -> f64 {
        if self.rows.is_empty() {
            1.0
        } else {
            self.agreements() as f64 / self.rows.len() as f64
        }
    }

    pub fn oracle_events(&self) -> usize {
        self.rows.iter().filter(|r| r.oracle_event).count()
    }

    pub fn detector_events(&self) -> usize {
        self.rows.iter().filter(|r| r.detector_overall()).count()
    }

    pub fn vacuous_replicates(&self) -> usize {
        self.rows.iter().filter(|r| r.has_vacuous_level()).count()
    }
}

/// Level count for one replicate: the configured `N`, or with `Levels::Auto`
/// the largest rejection certificate over components (components already hit
/// by a jump need no certificate).
pub fn levels_for(path: &CadlagPath, target: &FSigmaSet, t: &BigRational, levels: Levels) -> Result<u64> {
    match levels {
        Levels::Fixed(n) => Ok(n),
        Levels::Auto => target.components().iter().try_fold(1u64, |acc, c| {
            match rejection_level(path, c, t) {
                Ok(cert) => Ok(acc.max(cert.level)),
                Err(NoCertificate::JumpInTarget { .. }) => Ok(acc),
                Err(NoCertificate::ZeroInTarget) => Ok(acc),
                Err(NoCertificate::Inexact) => Err(Error::NoGuarantee(
                    "auto levels need an exact path".into(),
                )),
            }
        }),
    }
}

pub fn run_replicate(scenario: &Scenario, replicate: u64) -> Result<ReplicateRow> {
    let started = scenario.timings.then(Instant::now);
    let seed = subseed(scenario.seed, replicate);
    let path = scenario.source.sample(seed, scenario.mode)?;
    let hit = first_hitting_time(&path, &scenario.target);
    let oracle_event = hit.time < scenario.t;
    let detector = if hit.branch == Branch::ZeroInU {
        DetectorOutcome::Skipped
    } else {
        let max_level = levels_for(&path, &scenario.target, &scenario.t, scenario.levels)?;
        let verdict = detect_fsigma(
            &path,
            &scenario.target,
            &scenario.t,
            max_level,
            &scenario.schedule,
            DetectOptions {
                full_sweep: scenario.full_sweep,
            },
        )?;
        DetectorOutcome::Ran { verdict, max_level }
    };
    Ok(ReplicateRow {
        replicate,
        subseed: seed,
        oracle_event,
        oracle_branch: hit.branch,
        oracle_time: hit.time,
        detector,
        runtime_ms: started.map(|s| s.elapsed().as_millis() as u64),
    })
}

/// Runs every replicate on a pool of `jobs` threads (`None`: rayon's
/// default). Rows come back in replicate order regardless of scheduling.
pub fn run_scenario(scenario: &Scenario, jobs: Option<usize>) -> Result<ScenarioReport> {
    let work = || {
        (0..scenario.replicates)
            .into_par_iter()
            .map(|r| run_replicate(scenario, r))
            .collect::<Result<Vec<_>>>()
    };
    let rows = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    Ok(ScenarioReport {
        scenario_id: scenario.id.clone(),
        mode: scenario.mode,
        rows,
    })
}

/// Re-derives the path a row was computed from.
pub fn replay_path(scenario: &Scenario, row: &ReplicateRow) -> Result<CadlagPath> {
    scenario.source.sample(row.subseed, scenario.mode)
}

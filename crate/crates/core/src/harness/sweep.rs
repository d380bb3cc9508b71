//! Convergence tables along one refinement axis.

use num_traits::Zero;

use super::config::{Levels, Scenario};
use super::run::{run_scenario, ScenarioReport};
use crate::error::{Error, Result};
use crate::grid_detector::Schedule;
use crate::rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    /// Max level `N`.
    Levels(Vec<u64>),
    /// Fixed resolution `m` at every level.
    BaseResolution(Vec<u64>),
    /// Number of target components `K`.
    Components(Vec<u64>),
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::Levels(_) => "levels",
            SweepAxis::BaseResolution(_) => "base",
            SweepAxis::Components(_) => "components",
        }
    }

    pub fn values(&self) -> &[u64] {
        match self {
            SweepAxis::Levels(v) | SweepAxis::BaseResolution(v) | SweepAxis::Components(v) => v,
        }
    }

    /// `levels=1,2,4`, `base=8,16` or `components=1,2,4`.
    pub fn parse(text: &str) -> Result<SweepAxis> {
        let (name, values) = text
            .split_once('=')
            .ok_or_else(|| Error::config("axis", format!("expected name=v1,v2,..., got {text:?}")))?;
        let values = values
            .split(',')
            .map(|v| v.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::config("axis", e.to_string()))?;
        match name.trim() {
            "levels" | "N" => Ok(SweepAxis::Levels(values)),
            "base" => Ok(SweepAxis::BaseResolution(values)),
            "components" | "K" => Ok(SweepAxis::Components(values)),
            other => Err(Error::config("axis", format!("unknown axis {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub value: u64,
    pub replicates: usize,
    pub oracle_rate: BigRational,
    pub detector_rate: BigRational,
    pub agreement_rate: BigRational,
    pub vacuous_replicates: usize,
}

impl SweepRow {
    fn from_report(value: u64, report: &ScenarioReport) -> SweepRow {
        let n = report.rows.len();
        let rate = |k: usize| {
            if n == 0 {
                BigRational::zero()
            } else {
                BigRational::new(k.into(), n.into())
            }
        };
        SweepRow {
            value,
            replicates: n,
            oracle_rate: rate(report.oracle_events()),
            detector_rate: rate(report.detector_events()),
            agreement_rate: rate(report.agreements()),
            vacuous_replicates: report.vacuous_replicates(),
        }
    }
}

/// A monotonicity property that follows from the construction along this axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct SweepTable {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
    pub checks: Vec<MonotonicityCheck>,
}

impl SweepTable {
    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn nondecreasing(rows: &[SweepRow], key: impl Fn(&SweepRow) -> &BigRational) -> bool {
    rows.windows(2).all(|w| key(&w[0]) <= key(&w[1]))
}

fn nonincreasing(rows: &[SweepRow], key: impl Fn(&SweepRow) -> &BigRational) -> bool {
    rows.windows(2).all(|w| key(&w[0]) >= key(&w[1]))
}

/// One aggregate row per axis value. Asserted checks:
///
/// * levels: detector rate nonincreasing (more conjuncts); with the
///   guaranteed schedule in exact mode, agreement nondecreasing.
/// * base: with each value dividing the next, detector rate nondecreasing
///   (nested grids).
/// * components: oracle rate nondecreasing; with fixed levels, detector rate
///   nondecreasing.
pub fn sweep(scenario: &Scenario, axis: SweepAxis, jobs: Option<usize>) -> Result<SweepTable> {
    let values = axis.values();
    if values.is_empty() {
        return Err(Error::config("axis", "needs at least one value"));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config("axis", "values must be strictly increasing"));
    }
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let mut s = scenario.clone();
        match &axis {
            SweepAxis::Levels(_) => {
                if value == 0 {
                    return Err(Error::config("axis", "levels must be >= 1"));
                }
                s.levels = Levels::Fixed(value);
            }
            SweepAxis::BaseResolution(_) => {
                if value < 2 {
                    return Err(Error::config("axis", "base resolution must be >= 2"));
                }
                s.schedule = Schedule::FixedBase(value);
            }
            SweepAxis::Components(_) => {
                if value == 0 {
                    return Err(Error::config("axis", "component count must be >= 1"));
                }
                s.target = s.target_spec.with_components(value as usize)?;
            }
        }
        rows.push(SweepRow::from_report(value, &run_scenario(&s, jobs)?));
    }

    let exact = scenario.mode == super::config::ArithmeticMode::Exact;
    let mut checks = Vec::new();
    match &axis {
        SweepAxis::Levels(_) => {
            checks.push(MonotonicityCheck {
                name: "detector_rate_nonincreasing",
                holds: nonincreasing(&rows, |r| &r.detector_rate),
            });
            if exact && scenario.schedule.is_guaranteed() {
                checks.push(MonotonicityCheck {
                    name: "agreement_nondecreasing",
                    holds: nondecreasing(&rows, |r| &r.agreement_rate),
                });
            }
        }
        SweepAxis::BaseResolution(v) => {
            if v.windows(2).all(|w| w[1] % w[0] == 0) {
                checks.push(MonotonicityCheck {
                    name: "detector_rate_nondecreasing",
                    holds: nondecreasing(&rows, |r| &r.detector_rate),
                });
            }
        }
        SweepAxis::Components(_) => {
            checks.push(MonotonicityCheck {
                name: "oracle_rate_nondecreasing",
                holds: nondecreasing(&rows, |r| &r.oracle_rate),
            });
            if matches!(scenario.levels, Levels::Fixed(_)) {
                checks.push(MonotonicityCheck {
                    name: "detector_rate_nondecreasing",
                    holds: nondecreasing(&rows, |r| &r.detector_rate),
                });
            }
        }
    }
    Ok(SweepTable { axis, rows, checks })
}

//! Ground truth for `T = inf{t >= 0 : ΔX_t ∈ U}`, read directly off the jump list.

use serde::Serialize;

use crate::path_model::CadlagPath;
use crate::rational::{BigRational, Extended};
use crate::set_algebra::FSigmaSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `0 ∈ U`: `ΔX` vanishes off a finite set, so `T = 0`.
    ZeroInU,
    JumpHit,
    Never,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::ZeroInU => "zero_in_U",
            Branch::JumpHit => "jump_hit",
            Branch::Never => "never",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingResult {
    pub time: Extended,
    /// 1-based index of the first component containing the hitting jump's size.
    pub component: Option<usize>,
    pub branch: Branch,
}

/// A jump that realises the event: its time and the smallest component
/// index (1-based) containing its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitWitness {
    pub time: BigRational,
    pub component: usize,
}

pub fn first_hitting_time(path: &CadlagPath, target: &FSigmaSet) -> HittingResult {
    if target.contains_zero() {
        return HittingResult {
            time: Extended::Finite(BigRational::from_integer(0.into())),
            component: None,
            branch: Branch::ZeroInU,
        };
    }
    path.jumps()
        .iter()
        .find_map(|j| {
            target.component_containing(&j.size).map(|k| HittingResult {
                time: Extended::Finite(j.time.clone()),
                component: Some(k),
                branch: Branch::JumpHit,
            })
        })
        .unwrap_or(HittingResult {
            time: Extended::PosInf,
            component: None,
            branch: Branch::Never,
        })
}

/// The event `(T < t)`. A jump exactly at `t` does not count.
pub fn event_before(path: &CadlagPath, target: &FSigmaSet, t: &BigRational) -> bool {
    first_hitting_time(path, target).time < *t
}

/// Diagnostic for a jump-driven event; `None` when the event is false or
/// holds only through the zero branch.
pub fn hit_witness(path: &CadlagPath, target: &FSigmaSet, t: &BigRational) -> Option<HitWitness> {
    if target.contains_zero() {
        return None;
    }
    path.jumps_before(t).iter().find_map(|j| {
        target.component_containing(&j.size).map(|component| HitWitness {
            time: j.time.clone(),
            component,
        })
    })
}

//! Finite-grid evaluation of the rational-pair characterisation of `(T < t)`
//! for a single closed target `F`:
//!
//! ```text
//! (exists s in (0,t): ΔX_s ∈ F)  =  ∩_n  ∪_{(p,q) ∈ Θ_n}  (X_q - X_p ∈ E_n(F))
//! Θ_n = {(p,q) rational : 0 < p < q < t, q - p <= 1/n}
//! ```
//!
//! Each level `n` is checked on the lattice `{k t/m : 0 < k < m}`. Two
//! certificates make the finite check conclusive for exact paths with
//! Lipschitz bound `L`:
//!
//! * [`required_resolution`]: with spacing `t/m <= min(1/(2n max(L,1)), g/2)`
//!   the pair straddling a qualifying jump has an increment within `1/n` of
//!   the jump size, so the level accepts.
//! * [`rejection_level`]: once `n > (L+1)/d` (with `d` the distance from `F`
//!   to 0 and to every jump size before `t`) and windows of width `1/n`
//!   cannot hold two jumps, every increment stays more than `1/n` from `F`.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::path_model::CadlagPath;
use crate::rational::{ceil_to_u64, floor_to_u64, format_rational, int, BigRational, Extended};
use crate::set_algebra::{ClosedSet, FSigmaSet, Membership};

/// Level `n` evaluated on the grid `{k t/m : k = 1..m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    t: BigRational,
    n: u64,
    m: u64,
}

impl GridSpec {
    pub fn new(t: BigRational, n: u64, m: u64) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::Precondition("event horizon t must be positive".into()));
        }
        if n == 0 {
            return Err(Error::Precondition("level n must be >= 1".into()));
        }
        if m < 2 {
            return Err(Error::Precondition("resolution m must be >= 2".into()));
        }
        Ok(GridSpec { t, n, m })
    }

    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn resolution(&self) -> u64 {
        self.m
    }

    pub fn spacing(&self) -> BigRational {
        &self.t / int(self.m as i64)
    }

    /// `k t / m`; interior points are `k = 1..m-1`.
    pub fn point(&self, k: u64) -> BigRational {
        &self.t * BigRational::new(k.into(), self.m.into())
    }

    /// Largest index offset `j - i` with `(j - i) t/m <= 1/n`, capped by the
    /// number of interior points.
    fn window(&self) -> u64 {
        let w = floor_to_u64(&(BigRational::new(self.m.into(), self.n.into()) / &self.t))
            .unwrap_or(u64::MAX);
        w.min(self.m.saturating_sub(2))
    }

    /// Number of grid pairs in `Θ_n`.
    pub fn pair_count(&self) -> u64 {
        let points = self.m - 1;
        let w = self.window();
        w * points - w * (w + 1) / 2
    }

    /// Index pairs `(i, j)` with `1 <= i < j <= m-1`, `j - i <= window`, in
    /// increasing `i` then `j`.
    pub fn index_pairs(&self) -> IndexPairs {
        IndexPairs {
            last: self.m - 1,
            window: self.window(),
            i: 1,
            j: 2,
        }
    }
}

/// Sliding-window enumeration of grid index pairs; `O(1)` state.
#[derive(Clone, Debug)]
pub struct IndexPairs {
    last: u64,
    window: u64,
    i: u64,
    j: u64,
}

impl Iterator for IndexPairs {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        if self.window == 0 {
            return None;
        }
        while self.i < self.last {
            if self.j <= self.last && self.j - self.i <= self.window {
                let pair = (self.i, self.j);
                self.j += 1;
                return Some(pair);
            }
            self.i += 1;
            self.j = self.i + 1;
        }
        None
    }
}

/// Grid pairs `(p, q)` in `Θ_n`, streamed in witness order.
pub fn theta_pairs(spec: &GridSpec) -> impl Iterator<Item = (BigRational, BigRational)> + '_ {
    spec.index_pairs()
        .map(move |(i, j)| (spec.point(i), spec.point(j)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridWitness {
    #[serde(with = "crate::rational::serde_rational")]
    pub p: BigRational,
    #[serde(with = "crate::rational::serde_rational")]
    pub q: BigRational,
    #[serde(with = "crate::rational::serde_rational")]
    pub increment: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict {
    pub n: u64,
    pub m: u64,
    pub accepted: bool,
    pub witness: Option<GridWitness>,
    /// `E_n(F)`, the set increments were tested against.
    pub enlargement: ClosedSet,
    pub pair_count: u64,
    pub pairs_examined: u64,
    /// No grid pair satisfies the `Θ_n` gap bound at this resolution.
    pub vacuous: bool,
}

/// Evaluates one level: accepts iff some grid pair has `X_q - X_p ∈ E_n(F)`,
/// recording the first such pair.
pub fn detect_level(path: &CadlagPath, target: &ClosedSet, spec: &GridSpec) -> Result<LevelVerdict> {
    if spec.t() > path.horizon() {
        return Err(Error::Precondition(format!(
            "event horizon {} exceeds path horizon {}",
            format_rational(spec.t()),
            format_rational(path.horizon())
        )));
    }
    let radius = BigRational::new(1.into(), spec.n.into());
    let enlargement = target.enlarge(&radius)?;
    let pair_count = spec.pair_count();
    let mut verdict = LevelVerdict {
        n: spec.n,
        m: spec.m,
        accepted: false,
        witness: None,
        enlargement,
        pair_count,
        pairs_examined: 0,
        vacuous: pair_count == 0,
    };
    if pair_count == 0 || verdict.enlargement.is_empty() {
        return Ok(verdict);
    }
    // values[k] = X at k t/m; index 0 unused
    let mut values = Vec::with_capacity(spec.m as usize);
    values.push(BigRational::zero());
    for k in 1..spec.m {
        values.push(path.eval(&spec.point(k))?);
    }
    for (i, j) in spec.index_pairs() {
        verdict.pairs_examined += 1;
        let increment = &values[j as usize] - &values[i as usize];
        if verdict.enlargement.contains(&increment) {
            verdict.accepted = true;
            verdict.witness = Some(GridWitness {
                p: spec.point(i),
                q: spec.point(j),
                increment,
            });
            break;
        }
    }
    Ok(verdict)
}

/// Per-level grid resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// `m(n) = max(required_resolution(n), 2 ceil(t n) + 2)`.
    Guaranteed,
    /// The same `m` at every level.
    FixedBase(u64),
    /// `m(n)` listed for `n = 1, 2, ...`.
    Custom(Vec<u64>),
}

impl Schedule {
    pub fn resolution(&self, path: &CadlagPath, t: &BigRational, n: u64) -> Result<u64> {
        match self {
            Schedule::Guaranteed => {
                let floor = 2 * ceil_to_u64(&(t * int(n as i64))).unwrap_or(u64::MAX / 4) + 2;
                Ok(required_resolution_for(path, t, n)?.max(floor))
            }
            Schedule::FixedBase(m) => Ok(*m),
            Schedule::Custom(ms) => ms.get((n - 1) as usize).copied().ok_or_else(|| {
                Error::Precondition(format!("custom schedule has no entry for level {n}"))
            }),
        }
    }

    pub fn is_guaranteed(&self) -> bool {
        matches!(self, Schedule::Guaranteed)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DetectOptions {
    /// Evaluate every level even after a rejection.
    pub full_sweep: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectorVerdict {
    pub levels: Vec<LevelVerdict>,
    pub overall: bool,
    pub first_reject_level: Option<u64>,
}

impl DetectorVerdict {
    /// Witness from the deepest accepted level.
    pub fn witness(&self) -> Option<&GridWitness> {
        self.levels.iter().rev().find_map(|l| l.witness.as_ref())
    }

    pub fn total_pairs(&self) -> u64 {
        self.levels.iter().map(|l| l.pair_count).sum()
    }

    pub fn vacuous_levels(&self) -> usize {
        self.levels.iter().filter(|l| l.vacuous).count()
    }

    /// One line per level: n, m, pair count, verdict, witness.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for l in &self.levels {
            let verdict = match (l.accepted, l.vacuous) {
                (true, _) => "accept",
                (false, true) => "reject(vacuous)",
                (false, false) => "reject",
            };
            let _ = write!(out, "n={} m={} pairs={} {}", l.n, l.m, l.pair_count, verdict);
            if let Some(w) = &l.witness {
                let _ = write!(
                    out,
                    " p={} q={} increment={}",
                    format_rational(&w.p),
                    format_rational(&w.q),
                    format_rational(&w.increment)
                );
            }
            let _ = writeln!(out, " E_n={}", l.enlargement);
        }
        let _ = writeln!(
            out,
            "overall={} first_reject_level={}",
            self.overall,
            self.first_reject_level
                .map_or_else(|| "-".to_string(), |n| n.to_string())
        );
        out
    }
}

/// AND of [`detect_level`] over `n = 1..=max_level`, stopping at the first
/// rejection unless `opts.full_sweep`.
pub fn detect(
    path: &CadlagPath,
    target: &ClosedSet,
    t: &BigRational,
    max_level: u64,
    schedule: &Schedule,
    opts: DetectOptions,
) -> Result<DetectorVerdict> {
    if max_level == 0 {
        return Err(Error::Precondition("max level N must be >= 1".into()));
    }
    let mut levels = Vec::new();
    let mut first_reject_level = None;
    for n in 1..=max_level {
        let m = schedule.resolution(path, t, n)?;
        let level = detect_level(path, target, &GridSpec::new(t.clone(), n, m)?)?;
        let accepted = level.accepted;
        levels.push(level);
        if !accepted && first_reject_level.is_none() {
            first_reject_level = Some(n);
            if !opts.full_sweep {
                break;
            }
        }
    }
    Ok(DetectorVerdict {
        levels,
        overall: first_reject_level.is_none(),
        first_reject_level,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSigmaVerdict {
    /// One verdict per component `C_k`, in order.
    pub components: Vec<DetectorVerdict>,
    pub overall: bool,
}

impl FSigmaVerdict {
    /// 1-based index of the first accepting component.
    pub fn accepting_component(&self) -> Option<usize> {
        self.components.iter().position(|c| c.overall).map(|i| i + 1)
    }
}

/// Runs [`detect`] on each component and ORs the results. The zero branch
/// must be handled by the caller: a target containing 0 is rejected.
pub fn detect_fsigma(
    path: &CadlagPath,
    target: &FSigmaSet,
    t: &BigRational,
    max_level: u64,
    schedule: &Schedule,
    opts: DetectOptions,
) -> Result<FSigmaVerdict> {
    if target.contains_zero() {
        return Err(Error::Precondition(
            "target contains 0; the hitting time is identically zero".into(),
        ));
    }
    let components = target
        .components()
        .iter()
        .map(|c| detect(path, c, t, max_level, schedule, opts))
        .collect::<Result<Vec<_>>>()?;
    let overall = components.iter().any(|c| c.overall);
    Ok(FSigmaVerdict {
        components,
        overall,
    })
}

/// Smallest `m >= 2` with `t/m <= min(1/(2n max(L,1)), g/2)`; `g = +inf`
/// drops the gap term.
pub fn required_resolution(
    lipschitz: &BigRational,
    gap: &Extended,
    t: &BigRational,
    n: u64,
) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("level n must be >= 1".into()));
    }
    let slope = if lipschitz > &BigRational::one() {
        lipschitz.clone()
    } else {
        BigRational::one()
    };
    let mut spacing = (int(2 * n as i64) * slope).recip();
    match gap {
        Extended::Finite(g) if g.is_positive() => {
            let half = g / int(2);
            if half < spacing {
                spacing = half;
            }
        }
        Extended::PosInf => {}
        _ => return Err(Error::Precondition("jump gap must be positive".into())),
    }
    let m = ceil_to_u64(&(t / spacing))
        .ok_or_else(|| Error::Precondition("resolution overflows u64".into()))?;
    Ok(m.max(2))
}

/// [`required_resolution`] with `L` and the isolation gap read off the path.
pub fn required_resolution_for(path: &CadlagPath, t: &BigRational, n: u64) -> Result<u64> {
    if !path.is_exact() {
        return Err(Error::NoGuarantee(
            "inexact continuous part has no usable Lipschitz bound".into(),
        ));
    }
    required_resolution(&path.lipschitz_bound(), &path.isolation_gap(t), t, n)
}

/// Why [`rejection_level`] could not issue a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoCertificate {
    Inexact,
    /// `0 ∈ F`; the zero branch applies instead.
    ZeroInTarget,
    /// A jump before `t` has its size in `F`, so the event holds.
    JumpInTarget { time: BigRational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectionCertificate {
    /// Level at which every grid, at any resolution, rejects.
    pub level: u64,
    /// `floor((L+1)/d) + 1`.
    pub distance_level: u64,
    /// `ceil(1/g)` for the smallest gap `g` between consecutive jumps before
    /// `t`; absent with fewer than two such jumps.
    pub isolation_level: Option<u64>,
    /// `d = min(d_jump, d_0)`; `+inf` when `F` is empty.
    pub distance: Extended,
    pub lipschitz: BigRational,
}

/// A level at which [`detect_level`] is certain to reject, for a target with
/// `0 ∉ F` and no jump size before `t` in `F`.
pub fn rejection_level(
    path: &CadlagPath,
    target: &ClosedSet,
    t: &BigRational,
) -> std::result::Result<RejectionCertificate, NoCertificate> {
    if !path.is_exact() {
        return Err(NoCertificate::Inexact);
    }
    let zero = BigRational::zero();
    if target.contains(&zero) {
        return Err(NoCertificate::ZeroInTarget);
    }
    let jumps = path.jumps_before(t);
    if let Some(j) = jumps.iter().find(|j| target.contains(&j.size)) {
        return Err(NoCertificate::JumpInTarget {
            time: j.time.clone(),
        });
    }
    let distance = jumps
        .iter()
        .map(|j| target.distance(&j.size))
        .chain(std::iter::once(target.distance(&zero)))
        .min()
        .expect("at least the zero term");
    let lipschitz = path.lipschitz_bound();
    let distance_level = match &distance {
        Extended::Finite(d) => floor_to_u64(&((&lipschitz + BigRational::one()) / d))
            .map_or(u64::MAX, |k| k.saturating_add(1)),
        _ => 1,
    };
    let isolation_level = jumps
        .windows(2)
        .map(|w| &w[1].time - &w[0].time)
        .min()
        .and_then(|g| ceil_to_u64(&g.recip()));
    Ok(RejectionCertificate {
        level: distance_level.max(isolation_level.unwrap_or(1)),
        distance_level,
        isolation_level,
        distance,
        lipschitz,
    })
}

/// Largest per-component [`rejection_level`] over `U`.
pub fn rejection_level_fsigma(
    path: &CadlagPath,
    target: &FSigmaSet,
    t: &BigRational,
) -> std::result::Result<u64, NoCertificate> {
    target
        .components()
        .iter()
        .map(|c| rejection_level(path, c, t).map(|cert| cert.level))
        .try_fold(1, |acc, level| level.map(|l| acc.max(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_model::{JumpSpec, PiecewiseLinear};
    use crate::rational::ratio;

    fn flat_with_jump(time: BigRational, size: BigRational) -> CadlagPath {
        CadlagPath::new(
            int(1),
            PiecewiseLinear::constant(&int(1), int(0)),
            vec![JumpSpec::new(time, size)],
        )
        .unwrap()
    }

    fn sloped(slope: i64) -> CadlagPath {
        CadlagPath::new(int(1), PiecewiseLinear::linear(&int(1), &int(slope)), vec![]).unwrap()
    }

    fn spec(n: u64, m: u64) -> GridSpec {
        GridSpec::new(int(1), n, m).unwrap()
    }

    /// All pairs of interior grid points filtered by the gap bound.
    fn brute_pairs(spec: &GridSpec) -> Vec<(BigRational, BigRational)> {
        let pts: Vec<_> = (1..spec.resolution()).map(|k| spec.point(k)).collect();
        let bound = BigRational::new(1.into(), spec.level().into());
        let mut out = Vec::new();
        for (a, p) in pts.iter().enumerate() {
            for q in &pts[a + 1..] {
                if q - p <= bound {
                    out.push((p.clone(), q.clone()));
                }
            }
        }
        out
    }

    #[test]
    fn theta_pair_examples() {
        let three: Vec<_> = theta_pairs(&spec(1, 4)).collect();
        assert_eq!(three.len(), 3);
        let adjacent: Vec<_> = theta_pairs(&spec(3, 4)).collect();
        assert_eq!(
            adjacent,
            vec![(ratio(1, 4), ratio(1, 2)), (ratio(1, 2), ratio(3, 4))]
        );
        assert_eq!(theta_pairs(&spec(5, 4)).count(), 0);
    }

    #[test]
    fn theta_pairs_match_brute_force() {
        for t in [int(1), ratio(1, 2), ratio(7, 3)] {
            for n in 1..7 {
                for m in 2..25 {
                    let s = GridSpec::new(t.clone(), n, m).unwrap();
                    let pairs: Vec<_> = theta_pairs(&s).collect();
                    assert_eq!(pairs, brute_pairs(&s), "t={t} n={n} m={m}");
                    assert_eq!(s.pair_count() as usize, pairs.len());
                }
            }
        }
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::new(int(0), 1, 4).is_err());
        assert!(GridSpec::new(int(1), 0, 4).is_err());
        assert!(GridSpec::new(int(1), 1, 1).is_err());
    }

    #[test]
    fn detect_level_examples() {
        let p = flat_with_jump(ratio(1, 2), int(1));
        let v = detect_level(&p, &ClosedSet::point(int(1)), &spec(1, 4)).unwrap();
        assert!(v.accepted);
        assert_eq!(
            v.witness,
            Some(GridWitness { p: ratio(1, 4), q: ratio(1, 2), increment: int(1) })
        );
        assert_eq!(v.enlargement, ClosedSet::from_finite(&[(int(0), int(2))]).unwrap());

        let far = detect_level(&p, &ClosedSet::point(int(5)), &spec(1, 4)).unwrap();
        assert!(!far.accepted);
        assert!(far.witness.is_none());
        assert!(!far.vacuous);

        let s = sloped(2);
        let v = detect_level(&s, &ClosedSet::point(int(1)), &spec(3, 4)).unwrap();
        assert!(!v.accepted);
        assert_eq!(v.pairs_examined, 2);
    }

    #[test]
    fn vacuous_levels_flagged() {
        let p = flat_with_jump(ratio(1, 2), int(1));
        let v = detect_level(&p, &ClosedSet::point(int(1)), &spec(5, 4)).unwrap();
        assert!(v.vacuous && !v.accepted);
        let v = detect_level(&p, &ClosedSet::point(int(1)), &spec(1, 2)).unwrap();
        assert!(v.vacuous);
    }

    #[test]
    fn detect_short_circuits() {
        let p = flat_with_jump(ratio(1, 2), int(1));
        let v = detect(&p, &ClosedSet::point(int(5)), &int(1), 6, &Schedule::FixedBase(4), DetectOptions::default()).unwrap();
        assert!(!v.overall);
        assert_eq!(v.first_reject_level, Some(1));
        assert_eq!(v.levels.len(), 1);

        let full = detect(
            &p,
            &ClosedSet::point(int(5)),
            &int(1),
            6,
            &Schedule::FixedBase(4),
            DetectOptions { full_sweep: true },
        )
        .unwrap();
        assert_eq!(full.levels.len(), 6);
        assert_eq!(full.first_reject_level, Some(1));
        assert!(detect(&p, &ClosedSet::point(int(1)), &int(1), 0, &Schedule::Guaranteed, DetectOptions::default()).is_err());
    }

    #[test]
    fn planted_jump_accepted_under_guaranteed_schedule() {
        let p = flat_with_jump(ratio(3, 7), ratio(3, 2));
        let f = ClosedSet::from_finite(&[(int(1), int(2))]).unwrap();
        for n_max in [1, 4, 12] {
            let v = detect(&p, &f, &int(1), n_max, &Schedule::Guaranteed, DetectOptions::default()).unwrap();
            assert!(v.overall, "N = {n_max}");
        }
    }

    #[test]
    fn fsigma_or_summary() {
        let p = flat_with_jump(ratio(1, 2), int(1));
        let u = FSigmaSet::new(vec![ClosedSet::point(int(1)), ClosedSet::point(int(5))]);
        let v = detect_fsigma(&p, &u, &int(1), 4, &Schedule::Guaranteed, DetectOptions::default()).unwrap();
        assert!(v.components[0].overall);
        assert!(!v.components[1].overall);
        assert!(v.overall);
        assert_eq!(v.accepting_component(), Some(1));

        let empty = detect_fsigma(&p, &FSigmaSet::default(), &int(1), 4, &Schedule::Guaranteed, DetectOptions::default()).unwrap();
        assert!(!empty.overall);

        let zero = FSigmaSet::single(ClosedSet::point(int(0)));
        assert!(detect_fsigma(&p, &zero, &int(1), 4, &Schedule::Guaranteed, DetectOptions::default()).is_err());
    }

    #[test]
    fn required_resolution_examples() {
        let r = |l: BigRational, g: Extended, n| required_resolution(&l, &g, &int(1), n).unwrap();
        assert_eq!(r(int(0), Extended::Finite(ratio(1, 4)), 2), 8);
        assert_eq!(r(int(2), Extended::Finite(ratio(1, 2)), 1), 4);
        assert_eq!(r(int(1), Extended::PosInf, 3), 6);
        assert!(required_resolution(&int(0), &Extended::Finite(int(0)), &int(1), 1).is_err());
    }

    #[test]
    fn required_resolution_refuses_inexact_paths() {
        let p = sloped(1).into_inexact();
        assert!(matches!(required_resolution_for(&p, &int(1), 1), Err(Error::NoGuarantee(_))));
        assert_eq!(rejection_level(&p, &ClosedSet::point(int(1)), &int(1)), Err(NoCertificate::Inexact));
    }

    #[test]
    fn rejection_level_examples() {
        let cert = rejection_level(&sloped(2), &ClosedSet::point(int(1)), &int(1)).unwrap();
        assert_eq!(cert.level, 4);
        assert_eq!(cert.distance, Extended::Finite(int(1)));

        // single jump of size 1/2, F = [1, 2]: d_jump = 1/2, d_0 = 1
        let p = flat_with_jump(ratio(1, 2), ratio(1, 2));
        let f = ClosedSet::from_finite(&[(int(1), int(2))]).unwrap();
        assert_eq!(rejection_level(&p, &f, &int(1)).unwrap().level, 3);

        let hit = flat_with_jump(ratio(1, 2), ratio(3, 2));
        assert_eq!(
            rejection_level(&hit, &f, &int(1)),
            Err(NoCertificate::JumpInTarget { time: ratio(1, 2) })
        );
        // the jump at t itself is outside (0, t)
        assert!(rejection_level(&hit, &f, &ratio(1, 2)).is_ok());
        assert_eq!(
            rejection_level(&p, &ClosedSet::point(int(0)), &int(1)),
            Err(NoCertificate::ZeroInTarget)
        );
        assert_eq!(rejection_level(&p, &ClosedSet::empty(), &int(1)).unwrap().level, 1);
    }

    #[test]
    fn rejection_level_accounts_for_clustered_jumps() {
        // two jumps of 1/2 at distance 1/16 sum to 1 ∈ F on coarse windows
        let p = CadlagPath::new(
            int(1),
            PiecewiseLinear::constant(&int(1), int(0)),
            vec![
                JumpSpec::new(ratio(1, 2), ratio(1, 2)),
                JumpSpec::new(ratio(9, 16), ratio(1, 2)),
            ],
        )
        .unwrap();
        let f = ClosedSet::point(int(1));
        let cert = rejection_level(&p, &f, &int(1)).unwrap();
        assert_eq!(cert.distance_level, 3);
        assert_eq!(cert.isolation_level, Some(16));
        assert_eq!(cert.level, 16);
        let v = detect(&p, &f, &int(1), cert.level, &Schedule::Guaranteed, DetectOptions::default()).unwrap();
        assert!(!v.overall);
        assert!(v.first_reject_level.unwrap() > cert.distance_level);
    }

    #[test]
    fn custom_schedule_lookup() {
        let p = sloped(0);
        let s = Schedule::Custom(vec![4, 8]);
        assert_eq!(s.resolution(&p, &int(1), 2).unwrap(), 8);
        assert!(s.resolution(&p, &int(1), 3).is_err());
        assert_eq!(Schedule::Guaranteed.resolution(&p, &int(1), 3).unwrap(), 8);
    }
}

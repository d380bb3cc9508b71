//! Finite-activity càdlàg paths: a piecewise-linear continuous part plus a
//! finite list of jumps at rational times.
//!
//! `X_t = continuous(t) + sum of jump sizes at times <= t`. Left limits drop
//! the jump at `t` itself, so `X_{0-} = X_0` holds because no jump may sit
//! at time zero.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, BigRational, Extended};

/// A continuous piecewise-linear function on `[0, horizon]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinear {
    breakpoints: Vec<(BigRational, BigRational)>,
}

impl PiecewiseLinear {
    /// Breakpoint times must start at 0 and be strictly increasing.
    pub fn new(breakpoints: Vec<(BigRational, BigRational)>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidPath(
                "continuous part needs at least two breakpoints".into(),
            ));
        }
        if !breakpoints[0].0.is_zero() {
            return Err(Error::InvalidPath("first breakpoint must be at time 0".into()));
        }
        if breakpoints.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidPath(
                "breakpoint times must be strictly increasing".into(),
            ));
        }
        Ok(PiecewiseLinear { breakpoints })
    }

    pub fn constant(horizon: &BigRational, value: BigRational) -> Self {
        PiecewiseLinear {
            breakpoints: vec![(BigRational::zero(), value.clone()), (horizon.clone(), value)],
        }
    }

    pub fn linear(horizon: &BigRational, slope: &BigRational) -> Self {
        PiecewiseLinear {
            breakpoints: vec![
                (BigRational::zero(), BigRational::zero()),
                (horizon.clone(), slope * horizon),
            ],
        }
    }

    pub fn breakpoints(&self) -> &[(BigRational, BigRational)] {
        &self.breakpoints
    }

    pub fn end(&self) -> &BigRational {
        &self.breakpoints.last().expect("at least two breakpoints").0
    }

    /// Linear interpolation; `t` must lie in `[0, end]`.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        let idx = self.breakpoints.partition_point(|(bt, _)| bt <= t);
        if idx == 0 {
            return self.breakpoints[0].1.clone();
        }
        if idx == self.breakpoints.len() {
            return self.breakpoints[idx - 1].1.clone();
        }
        let (t0, v0) = &self.breakpoints[idx - 1];
        let (t1, v1) = &self.breakpoints[idx];
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    pub fn slopes(&self) -> impl Iterator<Item = BigRational> + '_ {
        self.breakpoints
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
    }
}

/// One jump: `X_time - X_{time-} = size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JumpSpec {
    pub time: BigRational,
    pub size: BigRational,
}

impl JumpSpec {
    pub fn new(time: BigRational, size: BigRational) -> Self {
        JumpSpec { time, size }
    }
}

/// An immutable càdlàg path on `[0, horizon]` with finitely many jumps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PathFixture", into = "PathFixture")]
pub struct CadlagPath {
    horizon: BigRational,
    continuous: PiecewiseLinear,
    jumps: Vec<JumpSpec>,
    /// `cumulative[i]` is the sum of the first `i` jump sizes.
    cumulative: Vec<BigRational>,
    exact: bool,
}

impl CadlagPath {
    /// Validates and sorts `jumps`. Times must be distinct and in
    /// `(0, horizon]`; sizes must be nonzero.
    pub fn new(
        horizon: BigRational,
        continuous: PiecewiseLinear,
        mut jumps: Vec<JumpSpec>,
    ) -> Result<Self> {
        if !horizon.is_positive() {
            return Err(Error::InvalidPath("horizon must be positive".into()));
        }
        if continuous.end() != &horizon {
            return Err(Error::InvalidPath(format!(
                "continuous part ends at {}, horizon is {}",
                format_rational(continuous.end()),
                format_rational(&horizon)
            )));
        }
        jumps.sort_by(|a, b| a.time.cmp(&b.time));
        for j in &jumps {
            if !j.time.is_positive() || j.time > horizon {
                return Err(Error::InvalidPath(format!(
                    "jump time {} outside (0, {}]",
                    format_rational(&j.time),
                    format_rational(&horizon)
                )));
            }
            if j.size.is_zero() {
                return Err(Error::InvalidPath(format!(
                    "zero-size jump at {}",
                    format_rational(&j.time)
                )));
            }
        }
        if let Some(w) = jumps.windows(2).find(|w| w[0].time == w[1].time) {
            return Err(Error::InvalidPath(format!(
                "duplicate jump time {}",
                format_rational(&w[0].time)
            )));
        }
        let mut cumulative = Vec::with_capacity(jumps.len() + 1);
        cumulative.push(BigRational::zero());
        for j in &jumps {
            let next = cumulative.last().expect("nonempty") + &j.size;
            cumulative.push(next);
        }
        Ok(CadlagPath {
            horizon,
            continuous,
            jumps,
            cumulative,
            exact: true,
        })
    }

    /// Marks the path as built from floating-point samples. Evaluation stays
    /// exact on the stored rationals, but no certificate is issued for it.
    pub fn into_inexact(mut self) -> Self {
        self.exact = false;
        self
    }

    /// A copy with one more jump.
    pub fn with_jump(&self, jump: JumpSpec) -> Result<CadlagPath> {
        let mut jumps = self.jumps.clone();
        jumps.push(jump);
        let path = CadlagPath::new(self.horizon.clone(), self.continuous.clone(), jumps)?;
        Ok(if self.exact { path } else { path.into_inexact() })
    }

    pub fn horizon(&self) -> &BigRational {
        &self.horizon
    }

    pub fn continuous(&self) -> &PiecewiseLinear {
        &self.continuous
    }

    pub fn jumps(&self) -> &[JumpSpec] {
        &self.jumps
    }

    /// Jumps with time strictly before `t`.
    pub fn jumps_before(&self, t: &BigRational) -> &[JumpSpec] {
        let k = self.jumps.partition_point(|j| &j.time < t);
        &self.jumps[..k]
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    fn check_time(&self, t: &BigRational) -> Result<()> {
        if t.is_negative() || t > &self.horizon {
            return Err(Error::TimeOutOfRange {
                time: format_rational(t),
                horizon: format_rational(&self.horizon),
            });
        }
        Ok(())
    }

    /// `X_t`, right-continuous: includes a jump occurring at `t`.
    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        self.check_time(t)?;
        let k = self.jumps.partition_point(|j| &j.time <= t);
        Ok(self.continuous.eval(t) + &self.cumulative[k])
    }

    /// `X_{t-}`; at `t = 0` this equals `X_0`.
    pub fn left_limit(&self, t: &BigRational) -> Result<BigRational> {
        self.check_time(t)?;
        let k = self.jumps.partition_point(|j| &j.time < t);
        Ok(self.continuous.eval(t) + &self.cumulative[k])
    }

    /// `X_t - X_{t-}`: the listed size at a jump time, zero elsewhere.
    pub fn jump_size(&self, t: &BigRational) -> Result<BigRational> {
        self.check_time(t)?;
        Ok(self
            .jumps
            .binary_search_by(|j| j.time.cmp(t))
            .map(|i| self.jumps[i].size.clone())
            .unwrap_or_else(|_| BigRational::zero()))
    }

    /// Largest absolute slope of the continuous part.
    pub fn lipschitz_bound(&self) -> BigRational {
        self.continuous
            .slopes()
            .map(|s| s.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Smallest of: gaps between consecutive jump times, the first jump time,
    /// and the distance from each jump strictly before the horizon to the
    /// horizon. `+inf` without jumps.
    pub fn min_jump_gap(&self) -> Extended {
        gap_over(&self.jumps, &self.horizon)
    }

    /// The gap that matters for grids on `(0, t)`: computed like
    /// [`min_jump_gap`](Self::min_jump_gap) over the jumps in `(0, t)` with
    /// `t` in place of the horizon.
    pub fn isolation_gap(&self, t: &BigRational) -> Extended {
        gap_over(self.jumps_before(t), t)
    }
}

fn gap_over(jumps: &[JumpSpec], end: &BigRational) -> Extended {
    let Some(first) = jumps.first() else {
        return Extended::PosInf;
    };
    let mut gap = first.time.clone();
    for w in jumps.windows(2) {
        gap = gap.min(&w[1].time - &w[0].time);
    }
    let last = &jumps[jumps.len() - 1].time;
    if last < end {
        gap = gap.min(end - last);
    }
    Extended::Finite(gap)
}

/// JSON form of a path: rationals as `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathFixture {
    pub horizon: String,
    pub breakpoints: Vec<(String, String)>,
    #[serde(default)]
    pub jumps: Vec<(String, String)>,
    #[serde(default = "default_true")]
    pub exact: bool,
}

fn default_true() -> bool {
    true
}

impl TryFrom<PathFixture> for CadlagPath {
    type Error = Error;

    fn try_from(f: PathFixture) -> Result<Self> {
        let pair = |(a, b): &(String, String)| -> Result<(BigRational, BigRational)> {
            Ok((parse_rational(a)?, parse_rational(b)?))
        };
        let breakpoints = f.breakpoints.iter().map(pair).collect::<Result<Vec<_>>>()?;
        let jumps = f
            .jumps
            .iter()
            .map(|p| pair(p).map(|(t, s)| JumpSpec::new(t, s)))
            .collect::<Result<Vec<_>>>()?;
        let path = CadlagPath::new(
            parse_rational(&f.horizon)?,
            PiecewiseLinear::new(breakpoints)?,
            jumps,
        )?;
        Ok(if f.exact { path } else { path.into_inexact() })
    }
}

impl From<CadlagPath> for PathFixture {
    fn from(p: CadlagPath) -> Self {
        PathFixture {
            horizon: format_rational(&p.horizon),
            breakpoints: p
                .continuous
                .breakpoints
                .iter()
                .map(|(t, v)| (format_rational(t), format_rational(v)))
                .collect(),
            jumps: p
                .jumps
                .iter()
                .map(|j| (format_rational(&j.time), format_rational(&j.size)))
                .collect(),
            exact: p.exact,
        }
    }
}

/// Uniform distribution over a finite set of nonzero lattice points `k/denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeDistribution {
    denominator: u64,
    support: Vec<BigRational>,
}

impl SizeDistribution {
    pub fn lattice(denominator: u64, mut support: Vec<BigRational>) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::SizeDistribution("denominator must be >= 1".into()));
        }
        if support.is_empty() {
            return Err(Error::SizeDistribution("empty support".into()));
        }
        let den = BigRational::from_integer(denominator.into());
        for s in &support {
            if s.is_zero() {
                return Err(Error::SizeDistribution("support contains 0".into()));
            }
            if !(s * &den).is_integer() {
                return Err(Error::SizeDistribution(format!(
                    "{} is not a multiple of 1/{denominator}",
                    format_rational(s)
                )));
            }
        }
        support.sort();
        support.dedup();
        Ok(SizeDistribution {
            denominator,
            support,
        })
    }

    /// Every nonzero `k/denominator` in `[lo, hi]`.
    pub fn lattice_range(denominator: u64, lo: &BigRational, hi: &BigRational) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::SizeDistribution("denominator must be >= 1".into()));
        }
        let den = BigRational::from_integer(denominator.into());
        let k_lo = (lo * &den).ceil().to_integer();
        let k_hi = (hi * &den).floor().to_integer();
        let mut support = Vec::new();
        let mut k = k_lo;
        while k <= k_hi {
            if !k.is_zero() {
                support.push(BigRational::new(k.clone(), denominator.into()));
            }
            k += 1;
        }
        Self::lattice(denominator, support)
    }

    pub fn support(&self) -> &[BigRational] {
        &self.support
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.support[rng.random_range(0..self.support.len())].clone()
    }
}

/// How the continuous part of a generated path is built.
#[derive(Clone, Debug, PartialEq)]
pub enum ContinuousSpec {
    Zero,
    Linear { slope: BigRational },
    /// `segments` equal pieces, each slope drawn uniformly from
    /// `{j / slope_denominator : |j / slope_denominator| <= max_slope}`.
    RandomPiecewise {
        segments: u32,
        max_slope: BigRational,
        slope_denominator: u64,
    },
    /// Scaled Gaussian random walk sampled at `steps` points. Marks the path inexact.
    Brownian { sigma: f64, steps: u32 },
}

impl ContinuousSpec {
    pub fn is_exact(&self) -> bool {
        !matches!(self, ContinuousSpec::Brownian { .. })
    }

    fn build<R: Rng + ?Sized>(&self, horizon: &BigRational, rng: &mut R) -> Result<PiecewiseLinear> {
        match self {
            ContinuousSpec::Zero => Ok(PiecewiseLinear::constant(horizon, BigRational::zero())),
            ContinuousSpec::Linear { slope } => Ok(PiecewiseLinear::linear(horizon, slope)),
            ContinuousSpec::RandomPiecewise {
                segments,
                max_slope,
                slope_denominator,
            } => {
                if *segments == 0 || *slope_denominator == 0 || max_slope.is_negative() {
                    return Err(Error::Precondition(
                        "random piecewise part needs segments >= 1, slope_denominator >= 1, max_slope >= 0".into(),
                    ));
                }
                let den = BigRational::from_integer((*slope_denominator).into());
                let j_max = (max_slope * &den)
                    .floor()
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Precondition("max_slope too large".into()))?;
                let step = horizon / BigRational::from_integer((*segments).into());
                let mut breakpoints = vec![(BigRational::zero(), BigRational::zero())];
                for k in 1..=*segments {
                    let slope = int(rng.random_range(-j_max..=j_max)) / &den;
                    let (_, v) = breakpoints.last().expect("nonempty");
                    let v = v + slope * &step;
                    breakpoints.push((&step * int(k.into()), v));
                }
                PiecewiseLinear::new(breakpoints)
            }
            ContinuousSpec::Brownian { sigma, steps } => {
                if *steps == 0 || !sigma.is_finite() || *sigma < 0.0 {
                    return Err(Error::Precondition(
                        "brownian part needs steps >= 1 and finite sigma >= 0".into(),
                    ));
                }
                let dt = horizon.to_f64().unwrap_or(1.0) / f64::from(*steps);
                let normal = Normal::new(0.0, sigma * dt.sqrt())
                    .map_err(|e| Error::Precondition(e.to_string()))?;
                let step = horizon / BigRational::from_integer((*steps).into());
                let mut value = 0.0f64;
                let mut breakpoints = vec![(BigRational::zero(), BigRational::zero())];
                for k in 1..=*steps {
                    value += normal.sample(rng);
                    let v = BigRational::from_float(value).unwrap_or_else(BigRational::zero);
                    breakpoints.push((&step * int(k.into()), v));
                }
                PiecewiseLinear::new(breakpoints)
            }
        }
    }
}

/// Compound Poisson jumps on the time lattice `{k/time_denominator}` plus a
/// continuous part.
#[derive(Clone, Debug, PartialEq)]
pub struct CompoundPoisson {
    pub rate: f64,
    pub horizon: BigRational,
    pub time_denominator: u64,
    pub sizes: SizeDistribution,
    pub continuous: ContinuousSpec,
}

impl CompoundPoisson {
    /// Deterministic in `seed`. The jump count is Poisson(rate * horizon);
    /// times are drawn without replacement from `{k/D : 0 < k/D <= horizon}`.
    pub fn generate(&self, seed: u64) -> Result<CadlagPath> {
        if !(self.rate.is_finite() && self.rate > 0.0) {
            return Err(Error::Precondition("rate must be positive".into()));
        }
        if self.time_denominator == 0 {
            return Err(Error::Precondition("time denominator must be >= 1".into()));
        }
        if !self.horizon.is_positive() {
            return Err(Error::Precondition("horizon must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mean = self.rate * self.horizon.to_f64().unwrap_or(f64::MAX);
        let poisson = Poisson::new(mean).map_err(|e| Error::Precondition(e.to_string()))?;
        let count = poisson.sample(&mut rng) as u64;

        let den = BigRational::from_integer(self.time_denominator.into());
        let slots = (&self.horizon * &den)
            .floor()
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::Precondition("time lattice too large".into()))?;
        if count > slots {
            return Err(Error::LatticeExhausted {
                requested: count,
                available: slots,
            });
        }
        let mut picks = index::sample(&mut rng, slots as usize, count as usize).into_vec();
        picks.sort_unstable();
        let jumps = picks
            .into_iter()
            .map(|k| {
                let time = BigRational::new((k as u64 + 1).into(), self.time_denominator.into());
                JumpSpec::new(time, self.sizes.sample(&mut rng))
            })
            .collect();
        let continuous = self.continuous.build(&self.horizon, &mut rng)?;
        let path = CadlagPath::new(self.horizon.clone(), continuous, jumps)?;
        Ok(if self.continuous.is_exact() {
            path
        } else {
            path.into_inexact()
        })
    }
}

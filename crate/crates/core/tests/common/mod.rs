#![allow(dead_code)]

use jumphit::rational::{int, ratio, BigRational};
use jumphit::{
    CadlagPath, ClosedSet, CompoundPoisson, ContinuousSpec, Extended, JumpSpec, PiecewiseLinear,
    SizeDistribution,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    ratio(rng.random_range(-max_num..=max_num), rng.random_range(1..=max_den))
}

/// A random closed set of up to `max_parts` pieces, occasionally with rays.
pub fn random_closed_set<R: Rng>(rng: &mut R, max_parts: usize) -> ClosedSet {
    let parts = rng.random_range(0..=max_parts);
    let mut pairs = Vec::new();
    for _ in 0..parts {
        let a = random_rational(rng, 40, 8);
        let b = &a + ratio(rng.random_range(0..=16), rng.random_range(1..=8));
        let lo = if rng.random_bool(0.1) { Extended::NegInf } else { Extended::Finite(a) };
        let hi = if rng.random_bool(0.1) { Extended::PosInf } else { Extended::Finite(b) };
        pairs.push((lo, hi));
    }
    ClosedSet::from_pairs(pairs).unwrap()
}

/// Distance by scanning every interval, without the ordered lookup.
pub fn naive_distance(set: &ClosedSet, x: &BigRational) -> Extended {
    set.intervals()
        .iter()
        .map(|iv| {
            let below_lo = iv.lo() > &Extended::Finite(x.clone());
            let above_hi = iv.hi() < &Extended::Finite(x.clone());
            if below_lo {
                iv.lo().finite().unwrap() - x
            } else if above_hi {
                x - iv.hi().finite().unwrap()
            } else {
                int(0)
            }
        })
        .min()
        .map_or(Extended::PosInf, Extended::Finite)
}

/// Compound Poisson on `[0, 1]`, jump times on `{k/32}`, sizes on `{k/8}`.
pub fn mixed_generator(support: &[BigRational], max_slope: BigRational) -> CompoundPoisson {
    CompoundPoisson {
        rate: 3.0,
        horizon: int(1),
        time_denominator: 32,
        sizes: SizeDistribution::lattice(8, support.to_vec()).unwrap(),
        continuous: ContinuousSpec::RandomPiecewise {
            segments: 4,
            max_slope,
            slope_denominator: 4,
        },
    }
}

pub fn flat(horizon: &BigRational) -> PiecewiseLinear {
    PiecewiseLinear::constant(horizon, int(0))
}

pub fn path_with_jumps(jumps: &[(BigRational, BigRational)]) -> CadlagPath {
    CadlagPath::new(
        int(1),
        flat(&int(1)),
        jumps
            .iter()
            .map(|(t, s)| JumpSpec::new(t.clone(), s.clone()))
            .collect(),
    )
    .unwrap()
}

/// Random continuous part on `[0, 1]` with `segments` pieces and slopes in
/// `{j/4 : |j/4| <= max_slope}`.
pub fn random_continuous<R: Rng>(rng: &mut R, segments: i64, max_slope: &BigRational) -> PiecewiseLinear {
    let j_max: i64 = (max_slope * int(4)).floor().to_integer().try_into().unwrap();
    let mut pts = vec![(int(0), int(0))];
    for k in 1..=segments {
        let slope = ratio(rng.random_range(-j_max..=j_max), 4);
        let prev = pts.last().unwrap().1.clone();
        pts.push((ratio(k, segments), prev + slope * ratio(1, segments)));
    }
    PiecewiseLinear::new(pts).unwrap()
}

//! Closed sets and F-sigma sets on the rational line.
//!
//! A [`ClosedSet`] is a finite union of closed intervals, points and rays,
//! kept sorted, disjoint and non-adjacent. An [`FSigmaSet`] is an ordered
//! list of closed components `C_1, C_2, ...`, possibly a finite prefix of a
//! countable union.
//!
//! Two families of closed sets appear in the hitting-time construction and
//! are kept apart by name here: the *components* `C_k` of the target set
//! and the *enlargements* `E_n(F) = {x : dist(x, F) <= 1/n}` of a single
//! closed set, built with [`ClosedSet::enlarge`].

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, BigRational, Extended};

/// Exact membership in a subset of the line.
pub trait Membership {
    fn contains(&self, x: &BigRational) -> bool;
}

/// `[lo, hi]` with `lo <= hi`. Infinite endpoints give rays; `lo == hi` is a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedInterval {
    lo: Extended,
    hi: Extended,
}

impl ClosedInterval {
    pub fn new(lo: Extended, hi: Extended) -> Result<Self> {
        let malformed = lo > hi || lo == Extended::PosInf || hi == Extended::NegInf;
        if malformed {
            return Err(Error::MalformedInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(ClosedInterval { lo, hi })
    }

    pub fn finite(lo: BigRational, hi: BigRational) -> Result<Self> {
        Self::new(Extended::Finite(lo), Extended::Finite(hi))
    }

    pub fn point(x: BigRational) -> Self {
        ClosedInterval {
            lo: Extended::Finite(x.clone()),
            hi: Extended::Finite(x),
        }
    }

    pub fn lo(&self) -> &Extended {
        &self.lo
    }

    pub fn hi(&self) -> &Extended {
        &self.hi
    }

    pub fn distance(&self, x: &BigRational) -> BigRational {
        if self.lo > *x {
            // lo is finite here: nothing finite lies below -inf
            self.lo.finite().expect("finite lower endpoint") - x
        } else if self.hi < *x {
            x - self.hi.finite().expect("finite upper endpoint")
        } else {
            BigRational::zero()
        }
    }

    fn widen(&self, r: &BigRational) -> ClosedInterval {
        let neg = -r;
        ClosedInterval {
            lo: self.lo.shift(&neg),
            hi: self.hi.shift(r),
        }
    }
}

impl Membership for ClosedInterval {
    fn contains(&self, x: &BigRational) -> bool {
        !(self.lo > *x) && !(self.hi < *x)
    }
}

/// A finite union of closed intervals in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(String, String)>", into = "Vec<(String, String)>")]
pub struct ClosedSet {
    intervals: Vec<ClosedInterval>,
}

impl ClosedSet {
    pub fn empty() -> Self {
        ClosedSet::default()
    }

    /// Sorts and merges `intervals` into a disjoint, non-adjacent union.
    /// Closed intervals sharing an endpoint are merged.
    pub fn normalize(mut intervals: Vec<ClosedInterval>) -> ClosedSet {
        intervals.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<ClosedInterval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        ClosedSet { intervals: merged }
    }

    /// Builds a set from raw endpoint pairs, rejecting any `lo > hi`.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Extended, Extended)>) -> Result<ClosedSet> {
        let intervals = pairs
            .into_iter()
            .map(|(lo, hi)| ClosedInterval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClosedSet::normalize(intervals))
    }

    /// Finite intervals given as rational pairs.
    pub fn from_finite(pairs: &[(BigRational, BigRational)]) -> Result<ClosedSet> {
        Self::from_pairs(
            pairs
                .iter()
                .map(|(a, b)| (Extended::Finite(a.clone()), Extended::Finite(b.clone()))),
        )
    }

    pub fn point(x: BigRational) -> ClosedSet {
        ClosedSet {
            intervals: vec![ClosedInterval::point(x)],
        }
    }

    pub fn intervals(&self) -> &[ClosedInterval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Index of the first interval whose lower endpoint exceeds `x`.
    fn split_index(&self, x: &BigRational) -> usize {
        self.intervals.partition_point(|iv| !(iv.lo > *x))
    }

    /// Exact `inf |x - y|` over `y` in the set; `+inf` for the empty set.
    pub fn distance(&self, x: &BigRational) -> Extended {
        let idx = self.split_index(x);
        let below = idx.checked_sub(1).map(|i| self.intervals[i].distance(x));
        let above = self.intervals.get(idx).map(|iv| iv.distance(x));
        match (below, above) {
            (Some(a), Some(b)) => Extended::Finite(a.min(b)),
            (Some(d), None) | (None, Some(d)) => Extended::Finite(d),
            (None, None) => Extended::PosInf,
        }
    }

    /// `{x : distance(x, self) <= r}` for `r > 0`.
    pub fn enlarge(&self, r: &BigRational) -> Result<ClosedSet> {
        if !r.is_positive() {
            return Err(Error::NonPositiveRadius(format_rational(r)));
        }
        Ok(ClosedSet::normalize(
            self.intervals.iter().map(|iv| iv.widen(r)).collect(),
        ))
    }

    /// True when every point of `self` lies in `other`.
    pub fn is_subset(&self, other: &ClosedSet) -> bool {
        // each interval is connected, so it must fit inside one interval of `other`
        self.intervals.iter().all(|iv| {
            other
                .intervals
                .iter()
                .any(|o| o.lo <= iv.lo && iv.hi <= o.hi)
        })
    }
}

impl Membership for ClosedSet {
    fn contains(&self, x: &BigRational) -> bool {
        let idx = self.split_index(x);
        idx > 0 && !(self.intervals[idx - 1].hi < *x)
    }
}

impl fmt::Display for ClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{},{}]", iv.lo, iv.hi)?;
        }
        f.write_str("]")
    }
}

impl TryFrom<Vec<(String, String)>> for ClosedSet {
    type Error = Error;

    fn try_from(pairs: Vec<(String, String)>) -> Result<Self> {
        let parsed = pairs
            .iter()
            .map(|(lo, hi)| Ok((Extended::parse(lo)?, Extended::parse(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        ClosedSet::from_pairs(parsed)
    }
}

impl From<ClosedSet> for Vec<(String, String)> {
    fn from(set: ClosedSet) -> Self {
        set.intervals
            .into_iter()
            .map(|iv| (iv.lo.to_string(), iv.hi.to_string()))
            .collect()
    }
}

/// A countable union of closed sets, represented by a finite ordered prefix
/// of its components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FSigmaSet {
    components: Vec<ClosedSet>,
    truncated: bool,
}

impl FSigmaSet {
    /// A finite union that is the whole set.
    pub fn new(components: Vec<ClosedSet>) -> Self {
        FSigmaSet {
            components,
            truncated: false,
        }
    }

    /// A finite prefix standing in for an infinite union; it represents a subset.
    pub fn truncated(components: Vec<ClosedSet>) -> Self {
        FSigmaSet {
            components,
            truncated: true,
        }
    }

    pub fn single(component: ClosedSet) -> Self {
        Self::new(vec![component])
    }

    /// The open interval `(a, b)` as the increasing union of
    /// `C_k = [a + (b-a)/(2(k+1)), b - (b-a)/(2(k+1))]`, truncated at `k = count`.
    pub fn open_interval(a: &BigRational, b: &BigRational, count: usize) -> Result<FSigmaSet> {
        if a >= b {
            return Err(Error::EmptyOpenInterval {
                a: format_rational(a),
                b: format_rational(b),
            });
        }
        if count == 0 {
            return Err(Error::Precondition(
                "open interval needs at least one component".into(),
            ));
        }
        let width = b - a;
        let components = (1..=count)
            .map(|k| {
                let inset = &width / BigRational::from_integer((2 * (k + 1)).into());
                // inset < width / 2, so the interval is nonempty
                ClosedSet {
                    intervals: vec![ClosedInterval {
                        lo: Extended::Finite(a + &inset),
                        hi: Extended::Finite(b - &inset),
                    }],
                }
            })
            .collect();
        Ok(FSigmaSet::truncated(components))
    }

    pub fn components(&self) -> &[ClosedSet] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// The first `k` components, flagged truncated when anything was dropped.
    pub fn prefix(&self, k: usize) -> FSigmaSet {
        let k = k.min(self.components.len());
        FSigmaSet {
            components: self.components[..k].to_vec(),
            truncated: self.truncated || k < self.components.len(),
        }
    }

    /// 1-based index of the first component containing `x`.
    pub fn component_containing(&self, x: &BigRational) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.contains(x))
            .map(|i| i + 1)
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    /// Minimum distance to any component; `+inf` for the empty union.
    pub fn distance(&self, x: &BigRational) -> Extended {
        self.components
            .iter()
            .map(|c| c.distance(x))
            .min()
            .unwrap_or(Extended::PosInf)
    }
}

impl Membership for FSigmaSet {
    fn contains(&self, x: &BigRational) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn set(pairs: &[(BigRational, BigRational)]) -> ClosedSet {
        ClosedSet::from_finite(pairs).unwrap()
    }

    #[test]
    fn normalize_merges_overlap_and_touching() {
        assert_eq!(
            set(&[(int(1), int(3)), (int(2), int(5))]),
            set(&[(int(1), int(5))])
        );
        let touching = set(&[(int(1), int(2)), (int(2), int(3))]);
        assert_eq!(touching.intervals().len(), 1);
        assert_eq!(touching, set(&[(int(1), int(3))]));
        assert!(ClosedSet::normalize(vec![]).is_empty());
    }

    #[test]
    fn normalize_rejects_malformed() {
        assert!(ClosedInterval::finite(int(3), int(1)).is_err());
        assert!(ClosedInterval::new(Extended::PosInf, Extended::PosInf).is_err());
        assert!(ClosedSet::from_finite(&[(int(2), int(1))]).is_err());
    }

    #[test]
    fn distance_examples() {
        let f = set(&[(int(1), int(2))]);
        assert_eq!(f.distance(&int(0)), Extended::Finite(int(1)));
        assert_eq!(f.distance(&ratio(3, 2)), Extended::Finite(int(0)));
        let g = set(&[(int(1), int(2)), (int(5), int(5))]);
        assert_eq!(g.distance(&int(-1)), Extended::Finite(int(2)));
        assert_eq!(g.distance(&int(4)), Extended::Finite(int(1)));
        assert_eq!(ClosedSet::empty().distance(&int(0)), Extended::PosInf);
    }

    #[test]
    fn distance_to_rays() {
        let ray = ClosedSet::from_pairs([(Extended::NegInf, Extended::Finite(int(-1)))]).unwrap();
        assert_eq!(ray.distance(&int(-100)), Extended::Finite(int(0)));
        assert_eq!(ray.distance(&int(2)), Extended::Finite(int(3)));
        assert!(ray.contains(&int(-1)));
        assert!(!ray.contains(&ratio(-1, 2)));
    }

    #[test]
    fn enlarge_examples() {
        let f = set(&[(int(1), int(2))]);
        assert_eq!(
            f.enlarge(&ratio(1, 2)).unwrap(),
            set(&[(ratio(1, 2), ratio(5, 2))])
        );
        assert_eq!(
            ClosedSet::point(int(3)).enlarge(&int(1)).unwrap(),
            set(&[(int(2), int(4))])
        );
        assert!(f.enlarge(&int(0)).is_err());
        assert!(f.enlarge(&int(-1)).is_err());
    }

    #[test]
    fn enlarge_bridging_gap_matches_distance_sample() {
        // gap (1, 3/2) has width 1/2 = 2r, so the widened pieces touch and merge
        let f = set(&[(int(0), int(1)), (ratio(3, 2), int(2))]);
        let r = ratio(1, 4);
        let e = f.enlarge(&r).unwrap();
        assert_eq!(e, set(&[(ratio(-1, 4), ratio(9, 4))]));
        for k in -200..=300 {
            let x = ratio(k, 100);
            let by_distance = f.distance(&x) <= Extended::Finite(r.clone());
            assert_eq!(e.contains(&x), by_distance, "x = {x}");
        }
    }

    #[test]
    fn contains_examples() {
        assert!(set(&[(int(1), int(2))]).contains(&int(2)));
        let u = FSigmaSet::new(vec![set(&[(int(1), int(2))]), set(&[(int(-3), int(-1))])]);
        assert!(!u.contains(&int(0)));
        assert!(u.contains(&int(-2)));
        assert_eq!(u.component_containing(&int(-2)), Some(2));
    }

    #[test]
    fn contains_zero_examples() {
        assert!(FSigmaSet::single(ClosedSet::point(int(0))).contains_zero());
        assert!(!FSigmaSet::single(set(&[(int(1), int(2))])).contains_zero());
        assert!(FSigmaSet::single(set(&[(int(-1), int(1))])).contains_zero());
        assert!(!FSigmaSet::default().contains_zero());
    }

    #[test]
    fn open_interval_components() {
        let u = FSigmaSet::open_interval(&int(0), &int(1), 1).unwrap();
        assert!(u.is_truncated());
        assert_eq!(u.components(), &[set(&[(ratio(1, 4), ratio(3, 4))])]);

        // 1/(2(k+1)) <= 1/100 first holds at k = 49
        let x = ratio(1, 100);
        assert!(!FSigmaSet::open_interval(&int(0), &int(1), 48).unwrap().contains(&x));
        let u49 = FSigmaSet::open_interval(&int(0), &int(1), 49).unwrap();
        assert_eq!(u49.component_containing(&x), Some(49));

        for k in [1, 5, 200] {
            let u = FSigmaSet::open_interval(&int(0), &int(1), k).unwrap();
            assert!(!u.contains(&int(0)));
            assert!(!u.contains(&int(1)));
        }
        assert!(FSigmaSet::open_interval(&int(1), &int(1), 3).is_err());
        assert!(FSigmaSet::open_interval(&int(2), &int(1), 3).is_err());
    }

    #[test]
    fn open_interval_components_increase() {
        let u = FSigmaSet::open_interval(&ratio(-1, 3), &int(2), 10).unwrap();
        for w in u.components().windows(2) {
            assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn serde_literal_round_trip() {
        let json = r#"[["1/2","3"],["-inf","-5"],["2","4"]]"#;
        let s: ClosedSet = serde_json::from_str(json).unwrap();
        assert_eq!(s.intervals().len(), 2);
        assert!(s.contains(&int(-7)));
        let back = serde_json::to_string(&s).unwrap();
        assert_eq!(back, r#"[["-inf","-5/1"],["1/2","4/1"]]"#);
        assert!(serde_json::from_str::<ClosedSet>(r#"[["3","1"]]"#).is_err());
    }
}

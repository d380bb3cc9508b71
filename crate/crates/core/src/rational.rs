//! Exact rational scalars and the extended line used for set endpoints.
//!
//! Every rational in the crate is a [`BigRational`]. Text form is always
//! `"p/q"` on output; input also accepts a bare integer `"p"`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Canonical `"p/q"` text, with `q >= 1` and the fraction reduced.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Smallest integer `k` with `k >= x`.
pub fn ceil_to_u64(x: &BigRational) -> Option<u64> {
    x.ceil().to_integer().to_u64()
}

/// Largest integer `k` with `k <= x`.
pub fn floor_to_u64(x: &BigRational) -> Option<u64> {
    x.floor().to_integer().to_u64()
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// A point of the extended real line restricted to rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Extended::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    /// `self + r` for finite `r`; infinities absorb.
    pub fn shift(&self, r: &BigRational) -> Extended {
        match self {
            Extended::Finite(x) => Extended::Finite(x + r),
            other => other.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Extended> {
        match text.trim() {
            "-inf" => Ok(Extended::NegInf),
            "+inf" | "inf" => Ok(Extended::PosInf),
            s => parse_rational(s).map(Extended::Finite),
        }
    }
}

impl From<BigRational> for Extended {
    fn from(x: BigRational) -> Self {
        Extended::Finite(x)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        use Extended::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialEq<BigRational> for Extended {
    fn eq(&self, other: &BigRational) -> bool {
        matches!(self, Extended::Finite(x) if x == other)
    }
}

impl PartialOrd<BigRational> for Extended {
    fn partial_cmp(&self, other: &BigRational) -> Option<Ordering> {
        Some(match self {
            Extended::NegInf => Ordering::Less,
            Extended::PosInf => Ordering::Greater,
            Extended::Finite(x) => x.cmp(other),
        })
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::PosInf => f.write_str("+inf"),
            Extended::Finite(x) => f.write_str(&format_rational(x)),
        }
    }
}

/// Absolute value helper that reads better at call sites than `Signed::abs`.
pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

/// Serde adapters for rationals written as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let text = RationalText::deserialize(d)?;
        text.into_rational().map_err(de::Error::custom)
    }

    /// Accepts `"p/q"` strings and bare JSON integers; rejects JSON floats so
    /// exact fields never silently round.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalText {
        Text(String),
        Int(i64),
    }

    impl RationalText {
        pub(crate) fn into_rational(self) -> Result<BigRational> {
            match self {
                RationalText::Text(s) => parse_rational(&s),
                RationalText::Int(n) => Ok(int(n)),
            }
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(
            x: &Option<BigRational>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_str(&format_rational(x)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<BigRational>, D::Error> {
            Option::<RationalText>::deserialize(d)?
                .map(|t| t.into_rational().map_err(de::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(
            xs: &[BigRational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(format_rational))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<BigRational>, D::Error> {
            Vec::<RationalText>::deserialize(d)?
                .into_iter()
                .map(|t| t.into_rational().map_err(de::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 4 / -8 ").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn formats_as_p_over_q() {
        assert_eq!(format_rational(&ratio(1, 2)), "1/2");
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(3)), "3/1");
    }

    #[test]
    fn extended_order() {
        let xs = [
            Extended::NegInf,
            Extended::Finite(int(-5)),
            Extended::Finite(ratio(1, 3)),
            Extended::PosInf,
        ];
        for w in xs.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(Extended::PosInf > int(1_000_000));
        assert_eq!(Extended::parse("-inf").unwrap(), Extended::NegInf);
        assert_eq!(Extended::parse("2/4").unwrap(), Extended::Finite(ratio(1, 2)));
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(ceil_to_u64(&ratio(7, 2)), Some(4));
        assert_eq!(ceil_to_u64(&int(4)), Some(4));
        assert_eq!(floor_to_u64(&ratio(7, 2)), Some(3));
        assert_eq!(common_denominator(&[ratio(1, 4), ratio(1, 6)]), BigInt::from(12));
    }
}

//! JSON scenario configuration. Exact quantities are `"p/q"` strings; the
//! only float field (`sigma`) belongs to the float-mode Brownian part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid_detector::Schedule;
use crate::path_model::{CadlagPath, CompoundPoisson, ContinuousSpec, PathFixture, SizeDistribution};
use crate::rational::{format_rational, parse_rational, BigRational};
use crate::set_algebra::{ClosedSet, FSigmaSet};

use num_traits::{Signed, ToPrimitive};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_id")]
    pub scenario_id: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_replicates")]
    pub replicates: u64,
    pub path: PathConfig,
    pub target: TargetConfig,
    pub t: String,
    #[serde(default)]
    pub levels: LevelsConfig,
    #[serde(default)]
    pub schedule: ScheduleConfig,
    #[serde(default)]
    pub mode: ArithmeticMode,
    #[serde(default)]
    pub full_sweep: bool,
    #[serde(default)]
    pub timings: bool,
}

fn default_id() -> String {
    "scenario".into()
}

fn default_replicates() -> u64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PathConfig {
    Generator(GeneratorConfig),
    Fixture(PathFixture),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub rate: String,
    pub horizon: String,
    pub time_denominator: u64,
    pub sizes: SizesConfig,
    #[serde(default)]
    pub continuous: ContinuousConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SizesConfig {
    Support { denominator: u64, support: Vec<String> },
    Range { denominator: u64, lo: String, hi: String },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ContinuousConfig {
    #[default]
    Zero,
    Linear {
        slope: String,
    },
    RandomPiecewise {
        segments: u32,
        max_slope: String,
        slope_denominator: u64,
    },
    Brownian {
        sigma: f64,
        steps: u32,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetConfig {
    /// A single closed set, `U = C_1`.
    Set(ClosedSet),
    Components(Vec<ClosedSet>),
    OpenInterval { a: String, b: String, components: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LevelsConfig {
    Fixed(u64),
    #[default]
    #[serde(with = "auto_literal")]
    Auto,
}

mod auto_literal {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("auto")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "auto" {
            Ok(())
        } else {
            Err(de::Error::custom(format!("expected a level count or \"auto\", got {s:?}")))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScheduleConfig {
    #[default]
    #[serde(with = "guaranteed_literal")]
    Guaranteed,
    /// `"base=<m>"`
    Base(String),
    Custom { custom: Vec<u64> },
}

mod guaranteed_literal {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("guaranteed")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "guaranteed" {
            Ok(())
        } else {
            Err(de::Error::custom("not \"guaranteed\""))
        }
    }
}

impl ScheduleConfig {
    /// Parses the CLI form: `guaranteed` or `base=<m>`.
    pub fn parse_flag(text: &str) -> Result<ScheduleConfig> {
        match text.trim() {
            "guaranteed" => Ok(ScheduleConfig::Guaranteed),
            s if s.starts_with("base=") => Ok(ScheduleConfig::Base(s.to_string())),
            other => Err(Error::config(
                "schedule",
                format!("expected `guaranteed` or `base=<m>`, got {other:?}"),
            )),
        }
    }

    fn resolve(&self) -> Result<Schedule> {
        match self {
            ScheduleConfig::Guaranteed => Ok(Schedule::Guaranteed),
            ScheduleConfig::Base(s) => {
                let m = s
                    .strip_prefix("base=")
                    .and_then(|b| b.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::config("schedule", format!("malformed {s:?}")))?;
                if m < 2 {
                    return Err(Error::config("schedule", "base resolution must be >= 2"));
                }
                Ok(Schedule::FixedBase(m))
            }
            ScheduleConfig::Custom { custom } => {
                if custom.is_empty() || custom.iter().any(|&m| m < 2) {
                    return Err(Error::config(
                        "schedule.custom",
                        "needs at least one resolution, each >= 2",
                    ));
                }
                Ok(Schedule::Custom(custom.clone()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    #[default]
    Exact,
    Float,
}

impl ArithmeticMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ArithmeticMode::Exact => "exact",
            ArithmeticMode::Float => "float",
        }
    }

    pub fn parse_flag(text: &str) -> Result<ArithmeticMode> {
        match text {
            "exact" => Ok(ArithmeticMode::Exact),
            "float" => Ok(ArithmeticMode::Float),
            other => Err(Error::config("mode", format!("expected exact|float, got {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Levels {
    Fixed(u64),
    /// Per replicate: the largest rejection certificate level over components.
    Auto,
}

#[derive(Clone, Debug)]
pub enum PathSource {
    Generator(CompoundPoisson),
    Fixture(CadlagPath),
}

impl PathSource {
    pub fn horizon(&self) -> &BigRational {
        match self {
            PathSource::Generator(g) => &g.horizon,
            PathSource::Fixture(p) => p.horizon(),
        }
    }

    pub fn sample(&self, subseed: u64, mode: ArithmeticMode) -> Result<CadlagPath> {
        let path = match self {
            PathSource::Generator(g) => g.generate(subseed)?,
            PathSource::Fixture(p) => p.clone(),
        };
        Ok(match mode {
            ArithmeticMode::Exact => path,
            ArithmeticMode::Float => path.into_inexact(),
        })
    }
}

/// How the target was given; kept so sweeps can rebuild it with a new `K`.
#[derive(Clone, Debug)]
pub enum TargetSpec {
    Literal(FSigmaSet),
    OpenInterval { a: BigRational, b: BigRational },
}

impl TargetSpec {
    /// The target with its first `k` components (or `k` components of the
    /// open-interval construction).
    pub fn with_components(&self, k: usize) -> Result<FSigmaSet> {
        match self {
            TargetSpec::Literal(u) => Ok(u.prefix(k)),
            TargetSpec::OpenInterval { a, b } => FSigmaSet::open_interval(a, b, k),
        }
    }
}

/// A validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub id: String,
    pub seed: u64,
    pub replicates: u64,
    pub source: PathSource,
    pub target: FSigmaSet,
    pub target_spec: TargetSpec,
    pub t: BigRational,
    pub levels: Levels,
    pub schedule: Schedule,
    pub mode: ArithmeticMode,
    pub full_sweep: bool,
    pub timings: bool,
}

fn rational_field(field: &str, text: &str) -> Result<BigRational> {
    parse_rational(text).map_err(|e| Error::config(field, e.to_string()))
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<ScenarioConfig> {
        serde_json::from_str(text).map_err(|e| Error::config("<document>", e.to_string()))
    }

    pub fn validate(&self) -> Result<Scenario> {
        if self.replicates == 0 {
            return Err(Error::config("replicates", "must be >= 1"));
        }
        let uses_brownian = matches!(
            &self.path,
            PathConfig::Generator(GeneratorConfig { continuous: ContinuousConfig::Brownian { .. }, .. })
        );
        if uses_brownian && self.mode == ArithmeticMode::Exact {
            return Err(Error::config(
                "path.generator.continuous",
                "brownian continuous part requires mode = float",
            ));
        }
        let source = match &self.path {
            PathConfig::Generator(g) => PathSource::Generator(g.resolve()?),
            PathConfig::Fixture(f) => PathSource::Fixture(
                CadlagPath::try_from(f.clone())
                    .map_err(|e| Error::config("path.fixture", e.to_string()))?,
            ),
        };
        let t = rational_field("t", &self.t)?;
        if !t.is_positive() {
            return Err(Error::config("t", "must be positive"));
        }
        if &t > source.horizon() {
            return Err(Error::config(
                "t",
                format!("{} exceeds path horizon {}", format_rational(&t), format_rational(source.horizon())),
            ));
        }
        let target_spec = match &self.target {
            TargetConfig::Set(s) => TargetSpec::Literal(FSigmaSet::single(s.clone())),
            TargetConfig::Components(cs) => TargetSpec::Literal(FSigmaSet::new(cs.clone())),
            TargetConfig::OpenInterval { a, b, components } => {
                let a = rational_field("target.open_interval.a", a)?;
                let b = rational_field("target.open_interval.b", b)?;
                if a >= b {
                    return Err(Error::config("target.open_interval", "needs a < b"));
                }
                if *components == 0 {
                    return Err(Error::config("target.open_interval.components", "must be >= 1"));
                }
                TargetSpec::OpenInterval { a, b }
            }
        };
        let target = match (&target_spec, &self.target) {
            (TargetSpec::Literal(u), _) => u.clone(),
            (spec, TargetConfig::OpenInterval { components, .. }) => spec.with_components(*components)?,
            _ => unreachable!("open-interval spec always comes from an open-interval config"),
        };
        let levels = match self.levels {
            LevelsConfig::Fixed(0) => return Err(Error::config("levels", "must be >= 1")),
            LevelsConfig::Fixed(n) => Levels::Fixed(n),
            LevelsConfig::Auto => Levels::Auto,
        };
        let schedule = self.schedule.resolve()?;
        if self.mode == ArithmeticMode::Float {
            if schedule.is_guaranteed() {
                return Err(Error::config(
                    "schedule",
                    "guaranteed schedule requires mode = exact",
                ));
            }
            if levels == Levels::Auto {
                return Err(Error::config("levels", "auto levels require mode = exact"));
            }
        }
        Ok(Scenario {
            id: self.scenario_id.clone(),
            seed: self.seed,
            replicates: self.replicates,
            source,
            target,
            target_spec,
            t,
            levels,
            schedule,
            mode: self.mode,
            full_sweep: self.full_sweep,
            timings: self.timings,
        })
    }
}

impl GeneratorConfig {
    fn resolve(&self) -> Result<CompoundPoisson> {
        let rate = rational_field("path.generator.rate", &self.rate)?;
        if !rate.is_positive() {
            return Err(Error::config("path.generator.rate", "must be positive"));
        }
        let horizon = rational_field("path.generator.horizon", &self.horizon)?;
        if !horizon.is_positive() {
            return Err(Error::config("path.generator.horizon", "must be positive"));
        }
        if self.time_denominator == 0 {
            return Err(Error::config("path.generator.time_denominator", "must be >= 1"));
        }
        let sizes = self
            .sizes
            .resolve()
            .map_err(|e| Error::config("path.generator.sizes", e.to_string()))?;
        let continuous = match &self.continuous {
            ContinuousConfig::Zero => ContinuousSpec::Zero,
            ContinuousConfig::Linear { slope } => ContinuousSpec::Linear {
                slope: rational_field("path.generator.continuous.slope", slope)?,
            },
            ContinuousConfig::RandomPiecewise {
                segments,
                max_slope,
                slope_denominator,
            } => {
                let max_slope = rational_field("path.generator.continuous.max_slope", max_slope)?;
                if *segments == 0 || *slope_denominator == 0 || max_slope.is_negative() {
                    return Err(Error::config(
                        "path.generator.continuous",
                        "needs segments >= 1, slope_denominator >= 1, max_slope >= 0",
                    ));
                }
                ContinuousSpec::RandomPiecewise {
                    segments: *segments,
                    max_slope,
                    slope_denominator: *slope_denominator,
                }
            }
            ContinuousConfig::Brownian { sigma, steps } => {
                if !(sigma.is_finite() && *sigma >= 0.0) || *steps == 0 {
                    return Err(Error::config(
                        "path.generator.continuous",
                        "brownian needs finite sigma >= 0 and steps >= 1",
                    ));
                }
                ContinuousSpec::Brownian {
                    sigma: *sigma,
                    steps: *steps,
                }
            }
        };
        Ok(CompoundPoisson {
            rate: rate.to_f64().unwrap_or(f64::MAX),
            horizon,
            time_denominator: self.time_denominator,
            sizes,
            continuous,
        })
    }
}

impl SizesConfig {
    fn resolve(&self) -> Result<SizeDistribution> {
        match self {
            SizesConfig::Support { denominator, support } => SizeDistribution::lattice(
                *denominator,
                support.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?,
            ),
            SizesConfig::Range { denominator, lo, hi } => {
                SizeDistribution::lattice_range(*denominator, &parse_rational(lo)?, &parse_rational(hi)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "scenario_id": "base",
        "seed": 7,
        "replicates": 4,
        "path": {"generator": {
            "rate": "3", "horizon": "1", "time_denominator": 32,
            "sizes": {"denominator": 8, "support": ["-3/4", "1/4", "3/2"]},
            "continuous": {"kind": "random_piecewise", "segments": 4, "max_slope": "1", "slope_denominator": 2}
        }},
        "target": {"set": [["5/4", "7/4"]]},
        "t": "1",
        "levels": "auto",
        "schedule": "guaranteed"
    }"#;

    fn with(edit: impl FnOnce(&mut serde_json::Value)) -> Result<Scenario> {
        let mut v: serde_json::Value = serde_json::from_str(BASE).unwrap();
        edit(&mut v);
        ScenarioConfig::from_json(&v.to_string())?.validate()
    }

    fn field_of(err: Error) -> String {
        match err {
            Error::Config { field, .. } => field,
            other => panic!("expected config error, got {other}"),
        }
    }

    #[test]
    fn base_config_validates() {
        let s = with(|_| {}).unwrap();
        assert_eq!(s.replicates, 4);
        assert_eq!(s.levels, Levels::Auto);
        assert!(s.schedule.is_guaranteed());
        assert_eq!(s.target.len(), 1);
    }

    #[test]
    fn field_level_errors() {
        assert_eq!(field_of(with(|v| v["replicates"] = 0.into()).unwrap_err()), "replicates");
        assert_eq!(field_of(with(|v| v["t"] = "2".into()).unwrap_err()), "t");
        assert_eq!(field_of(with(|v| v["levels"] = 0.into()).unwrap_err()), "levels");
        assert_eq!(field_of(with(|v| v["mode"] = "float".into()).unwrap_err()), "schedule");
        assert_eq!(
            field_of(with(|v| v["path"]["generator"]["rate"] = "-1".into()).unwrap_err()),
            "path.generator.rate"
        );
        assert_eq!(
            field_of(with(|v| v["path"]["generator"]["sizes"]["support"][0] = "0".into()).unwrap_err()),
            "path.generator.sizes"
        );
        assert_eq!(field_of(with(|v| v["schedule"] = "base=1".into()).unwrap_err()), "schedule");
    }

    #[test]
    fn float_mode_needs_fixed_schedule() {
        let s = with(|v| {
            v["mode"] = "float".into();
            v["schedule"] = "base=16".into();
            v["levels"] = 4.into();
            v["path"]["generator"]["continuous"] =
                serde_json::json!({"kind": "brownian", "sigma": 0.25, "steps": 16});
        })
        .unwrap();
        assert_eq!(s.schedule, Schedule::FixedBase(16));
        let err = with(|v| {
            v["path"]["generator"]["continuous"] =
                serde_json::json!({"kind": "brownian", "sigma": 0.25, "steps": 16});
        })
        .unwrap_err();
        assert_eq!(field_of(err), "path.generator.continuous");
    }

    #[test]
    fn open_interval_target() {
        let s = with(|v| {
            v["target"] = serde_json::json!({"open_interval": {"a": "1", "b": "2", "components": 3}});
        })
        .unwrap();
        assert_eq!(s.target.len(), 3);
        assert!(s.target.is_truncated());
        assert_eq!(s.target_spec.with_components(5).unwrap().len(), 5);
    }

    #[test]
    fn fixture_path_and_custom_schedule() {
        let s = with(|v| {
            v["path"] = serde_json::json!({"fixture": {
                "horizon": "1", "breakpoints": [["0","0"],["1","0"]], "jumps": [["1/2","3/2"]]
            }});
            v["schedule"] = serde_json::json!({"custom": [4, 8]});
            v["levels"] = 2.into();
        })
        .unwrap();
        assert_eq!(s.schedule, Schedule::Custom(vec![4, 8]));
        assert!(matches!(s.source, PathSource::Fixture(_)));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(with(|v| v["bogus"] = 1.into()).is_err());
    }
}

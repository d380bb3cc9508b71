use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jumphit::harness::config::{ArithmeticMode, LevelsConfig, ScheduleConfig};
use jumphit::harness::run::replay_path;
use jumphit::harness::{
    emit_csv, run_replicate, subseed, sweep, verify_identity, write_sweep, Scenario, ScenarioConfig,
    SweepAxis,
};
use jumphit::{first_hitting_time, hit_witness, Error, Result};

#[derive(Parser)]
#[command(name = "jumphit", version, about = "First hitting times of jump processes and their rational-grid detector")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the path fixture for one replicate as JSON.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        replicate: u64,
    },
    /// Oracle result and full per-level detector trace for one replicate.
    Detect {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        replicate: u64,
    },
    /// Compare detector and oracle on every replicate.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Convergence table along one axis, e.g. `--axis levels=1,2,4,8`.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        axis: String,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// exact | float
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    levels: Option<u64>,
    /// guaranteed | base=<m>
    #[arg(long)]
    schedule: Option<String>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Evaluate every level even after a rejection.
    #[arg(long)]
    full_sweep: bool,
    /// Record per-replicate wall time in the CSV (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn scenario(&self) -> Result<Scenario> {
        let text = fs::read_to_string(&self.config)
            .map_err(|e| Error::config("--config", format!("{}: {e}", self.config.display())))?;
        let mut cfg = ScenarioConfig::from_json(&text)?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(mode) = &self.mode {
            cfg.mode = ArithmeticMode::parse_flag(mode)?;
        }
        if let Some(n) = self.levels {
            cfg.levels = LevelsConfig::Fixed(n);
        }
        if let Some(s) = &self.schedule {
            cfg.schedule = ScheduleConfig::parse_flag(s)?;
        }
        cfg.full_sweep |= self.full_sweep;
        cfg.timings |= self.timings;
        cfg.validate()
    }
}

fn simulate(common: &Common, replicate: u64) -> Result<i32> {
    let scenario = common.scenario()?;
    let path = scenario
        .source
        .sample(subseed(scenario.seed, replicate), scenario.mode)?;
    let json = serde_json::to_string_pretty(&path)?;
    match &common.csv {
        Some(out) => fs::write(out, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(0)
}

fn detect(common: &Common, replicate: u64) -> Result<i32> {
    let scenario = common.scenario()?;
    let row = run_replicate(&scenario, replicate)?;
    let path = replay_path(&scenario, &row)?;
    let hit = first_hitting_time(&path, &scenario.target);
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "oracle: T={} branch={} event(T<{})={}",
        hit.time,
        hit.branch.as_str(),
        jumphit::rational::format_rational(&scenario.t),
        row.oracle_event
    )?;
    if let Some(w) = hit_witness(&path, &scenario.target, &scenario.t) {
        writeln!(
            out,
            "oracle witness: jump at {} in component {}",
            jumphit::rational::format_rational(&w.time),
            w.component
        )?;
    }
    match row.verdict() {
        None => writeln!(out, "detector: not consulted (0 in U)")?,
        Some(v) => {
            for (k, c) in v.components.iter().enumerate() {
                writeln!(out, "component {}:", k + 1)?;
                write!(out, "{}", c.trace())?;
            }
            writeln!(out, "detector overall={}", v.overall)?;
        }
    }
    Ok(if row.agrees() { 0 } else { 1 })
}

fn verify(common: &Common) -> Result<i32> {
    let scenario = common.scenario()?;
    let outcome = verify_identity(&scenario, common.jobs)?;
    if let Some(out) = &common.csv {
        emit_csv(&outcome.report, out)?;
    }
    println!("{}", outcome.summary());
    for d in &outcome.disagreements {
        println!("{d}");
    }
    Ok(outcome.exit_code())
}

fn run_sweep(common: &Common, axis: &str) -> Result<i32> {
    let scenario = common.scenario()?;
    let table = sweep(&scenario, SweepAxis::parse(axis)?, common.jobs)?;
    match &common.csv {
        Some(out) => write_sweep(&table, fs::File::create(out)?)?,
        None => write_sweep(&table, io::stdout().lock())?,
    }
    for c in &table.checks {
        eprintln!("check {}: {}", c.name, if c.holds { "ok" } else { "FAILED" });
    }
    Ok(if table.all_checks_hold() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate { common, replicate } => simulate(common, *replicate),
        Command::Detect { common, replicate } => detect(common, *replicate),
        Command::Verify { common } => verify(common),
        Command::Sweep { common, axis } => run_sweep(common, axis),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

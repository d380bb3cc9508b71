//! CSV output. Rationals are written as `"p/q"`, absent values as empty cells.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::run::ScenarioReport;
use super::sweep::SweepTable;
use crate::error::Result;
use crate::rational::format_rational;

pub const REPLICATE_COLUMNS: [&str; 15] = [
    "scenario_id",
    "replicate",
    "subseed",
    "oracle_event",
    "oracle_branch",
    "oracle_time",
    "detector_overall",
    "first_reject_level",
    "witness_p",
    "witness_q",
    "witness_increment",
    "levels_run",
    "total_pairs",
    "arithmetic_mode",
    "runtime_ms",
];

#[derive(Serialize)]
struct ReplicateRecord<'a> {
    scenario_id: &'a str,
    replicate: u64,
    subseed: u64,
    oracle_event: bool,
    oracle_branch: &'static str,
    oracle_time: String,
    detector_overall: bool,
    first_reject_level: Option<u64>,
    witness_p: Option<String>,
    witness_q: Option<String>,
    witness_increment: Option<String>,
    levels_run: usize,
    total_pairs: u64,
    arithmetic_mode: &'static str,
    runtime_ms: Option<u64>,
}

pub fn write_report<W: Write>(report: &ScenarioReport, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(REPLICATE_COLUMNS)?;
    for row in &report.rows {
        let witness = row.witness();
        w.serialize(ReplicateRecord {
            scenario_id: &report.scenario_id,
            replicate: row.replicate,
            subseed: row.subseed,
            oracle_event: row.oracle_event,
            oracle_branch: row.oracle_branch.as_str(),
            oracle_time: row.oracle_time.to_string(),
            detector_overall: row.detector_overall(),
            first_reject_level: row.first_reject_level(),
            witness_p: witness.map(|w| format_rational(&w.p)),
            witness_q: witness.map(|w| format_rational(&w.q)),
            witness_increment: witness.map(|w| format_rational(&w.increment)),
            levels_run: row.levels_run(),
            total_pairs: row.total_pairs(),
            arithmetic_mode: report.mode.as_str(),
            runtime_ms: row.runtime_ms,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Header plus one row per replicate.
pub fn emit_csv(report: &ScenarioReport, path: &Path) -> Result<()> {
    write_report(report, File::create(path)?)
}

pub fn report_to_string(report: &ScenarioReport) -> Result<String> {
    let mut buf = Vec::new();
    write_report(report, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn write_sweep<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "axis",
        "value",
        "replicates",
        "oracle_event_rate",
        "detector_event_rate",
        "agreement_rate",
        "vacuous_replicates",
    ])?;
    for row in &table.rows {
        w.write_record([
            table.axis.name().to_string(),
            row.value.to_string(),
            row.replicates.to_string(),
            format_rational(&row.oracle_rate),
            format_rational(&row.detector_rate),
            format_rational(&row.agreement_rate),
            row.vacuous_replicates.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

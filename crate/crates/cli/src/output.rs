use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::job::JobReport;

/// One row of the sweep summary table.
#[derive(Debug, Serialize)]
pub struct SummaryRow {
    pub claim_id: String,
    pub params: String,
    pub verdict: String,
    pub truncation: String,
    pub wall_ms: u64,
}

pub fn rows(report: &JobReport) -> Vec<SummaryRow> {
    report
        .results
        .iter()
        .map(|r| SummaryRow {
            claim_id: r.claim_id.to_string(),
            params: serde_json::to_string(&r.params).expect("params serialize"),
            verdict: r.verdict.label(),
            truncation: r.truncation.map(|t| t.to_string()).unwrap_or_default(),
            wall_ms: r.wall_ms,
        })
        .collect()
}

pub fn error_row(command: &str, params: String, message: &str) -> SummaryRow {
    SummaryRow {
        claim_id: command.into(),
        params,
        verdict: format!("Error({message})"),
        truncation: String::new(),
        wall_ms: 0,
    }
}

pub fn open(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    w.flush()
}

pub fn write_csv(w: &mut dyn Write, rows: &[SummaryRow]) -> io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for row in rows {
        wtr.serialize(row)?;
    }
    if rows.is_empty() {
        wtr.write_record(["claim_id", "params", "verdict", "truncation", "wall_ms"])?;
    }
    wtr.flush()
}

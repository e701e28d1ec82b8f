//! Append-only record of every broadcast outcome.
//!
//! Text form, one record per line after a header:
//!
//! ```text
//! # qclocksync broadcast log v1
//! # round,sequence,quadrature,nominal_time,source,outcomes
//! 0,3,S,0,ghz,+1 -1 -1 +1
//! 4,0,C,0,pair:2,+1 +1
//! 9,0,S,0,dicke,+1 -1 +1 -1
//! 9,0,S,0,dicke-pair:3,-1 -1
//! ```
//!
//! `quadrature` is `C` or `S`; `nominal_time` uses the shortest round-trip
//! decimal form; outcomes are space-separated `+1`/`-1` in the layout of the
//! record source.

use std::io::{BufRead, Write};

use super::rounds::{MeasurementRecord, RecordSource};
use super::schedule::{Quadrature, ScheduledRound};
use crate::engine::OutcomeString;
use crate::error::{Result, SyncError};
use crate::estimation::FringeAccumulator;

pub const LOG_HEADER: &str = "# qclocksync broadcast log v1";
const COLUMNS: &str = "# round,sequence,quadrature,nominal_time,source,outcomes";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BroadcastLog {
    records: Vec<MeasurementRecord>,
}

impl BroadcastLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: MeasurementRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = MeasurementRecord>) {
        self.records.extend(records);
    }

    pub fn records(&self) -> &[MeasurementRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends every record of `other`.
    pub fn concat(mut self, other: &BroadcastLog) -> BroadcastLog {
        self.records.extend(other.records.iter().cloned());
        self
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{LOG_HEADER}")?;
        writeln!(out, "{COLUMNS}")?;
        for rec in &self.records {
            writeln!(out, "{}", format_record(rec))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("log text is ascii")
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut log = BroadcastLog::new();
        let mut saw_header = false;
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            if !saw_header {
                if line.trim_end() != LOG_HEADER {
                    return Err(SyncError::MalformedRecord { line: lineno, reason: "missing log header".into() });
                }
                saw_header = true;
                continue;
            }
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            log.push(parse_record(trimmed, lineno)?);
        }
        if !saw_header {
            return Err(SyncError::MalformedRecord { line: 1, reason: "missing log header".into() });
        }
        Ok(log)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::read_from(text.as_bytes())
    }
}

fn format_record(rec: &MeasurementRecord) -> String {
    let round = rec.round();
    let source = match rec.source() {
        RecordSource::Ghz => "ghz".to_string(),
        RecordSource::Pair { party } => format!("pair:{party}"),
        RecordSource::Dicke => "dicke".to_string(),
        RecordSource::DickePair { party } => format!("dicke-pair:{party}"),
    };
    let outcomes: Vec<&str> = rec
        .outcomes()
        .as_slice()
        .iter()
        .map(|&x| if x > 0 { "+1" } else { "-1" })
        .collect();
    format!(
        "{},{},{},{},{},{}",
        round.index,
        round.sequence_index,
        round.quadrature.tag(),
        round.nominal_time,
        source,
        outcomes.join(" ")
    )
}

fn parse_record(line: &str, lineno: usize) -> Result<MeasurementRecord> {
    let bad = |reason: String| SyncError::MalformedRecord { line: lineno, reason };
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 6 {
        return Err(bad(format!("expected 6 fields, found {}", fields.len())));
    }
    let index: usize = fields[0].parse().map_err(|_| bad(format!("bad round index `{}`", fields[0])))?;
    let sequence_index: usize = fields[1].parse().map_err(|_| bad(format!("bad sequence index `{}`", fields[1])))?;
    let quadrature = Quadrature::from_tag(fields[2]).ok_or_else(|| bad(format!("bad quadrature `{}`", fields[2])))?;
    let nominal_time: f64 = fields[3].parse().map_err(|_| bad(format!("bad nominal time `{}`", fields[3])))?;
    let party = |s: &str| -> Result<usize> { s.parse().map_err(|_| bad(format!("bad party `{s}`"))) };
    let source = match fields[4].split_once(':') {
        None if fields[4] == "ghz" => RecordSource::Ghz,
        None if fields[4] == "dicke" => RecordSource::Dicke,
        Some(("pair", p)) => RecordSource::Pair { party: party(p)? },
        Some(("dicke-pair", p)) => RecordSource::DickePair { party: party(p)? },
        _ => return Err(bad(format!("unknown source `{}`", fields[4]))),
    };
    let outcomes = fields[5]
        .split_whitespace()
        .map(|tok| match tok {
            "+1" => Ok(1i8),
            "-1" => Ok(-1i8),
            other => Err(bad(format!("outcome `{other}` is not ±1"))),
        })
        .collect::<Result<Vec<i8>>>()?;
    let outcomes = OutcomeString::new(outcomes).map_err(|e| bad(e.to_string()))?;
    let round = ScheduledRound { index, sequence_index, quadrature, nominal_time };
    MeasurementRecord::new(round, source, outcomes).map_err(|e| bad(e.to_string()))
}

/// Rebuilds the fringe statistics from a log alone.
pub fn replay(log: &BroadcastLog) -> Result<FringeAccumulator> {
    let mut acc = FringeAccumulator::new();
    for rec in log.records() {
        acc.record(rec);
    }
    Ok(acc)
}

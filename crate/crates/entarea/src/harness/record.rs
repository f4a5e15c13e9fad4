//! Sweep records and their CSV/JSON forms.
//!
//! The CSV schema is fixed:
//!
//! ```text
//! d,n,m,c,model,S_nats,EN_nats,upper_bound,upper_valid,shell_sum_bound,lower_estimate,nonunit_mu_count,wall_ms
//! ```
//!
//! Floats are written in shortest round-trip form, so emit-then-parse
//! reproduces records exactly. JSON mirrors the same fields under a
//! `schema` version key; non-finite floats map to `null`.

use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::Model;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "d,n,m,c,model,S_nats,EN_nats,upper_bound,upper_valid,\
shell_sum_bound,lower_estimate,nonunit_mu_count,wall_ms";

/// One evaluated `(d, n, m, c, model)` point. Quantities that were not
/// computed (or are not defined for the model) are NaN; `error` carries the
/// failure message when a point did not evaluate cleanly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub c: f64,
    pub model: Model,
    #[serde(rename = "S_nats", with = "nan_as_null")]
    pub s_nats: f64,
    #[serde(rename = "EN_nats", with = "nan_as_null")]
    pub en_nats: f64,
    #[serde(with = "nan_as_null")]
    pub upper_bound: f64,
    pub upper_valid: bool,
    #[serde(with = "nan_as_null")]
    pub shell_sum_bound: f64,
    #[serde(with = "nan_as_null")]
    pub lower_estimate: f64,
    pub nonunit_mu_count: Option<usize>,
    #[serde(with = "nan_as_null")]
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    pub fn blank(d: usize, n: usize, m: usize, c: f64, model: Model) -> Self {
        RunRecord {
            d,
            n,
            m,
            c,
            model,
            s_nats: f64::NAN,
            en_nats: f64::NAN,
            upper_bound: f64::NAN,
            upper_valid: false,
            shell_sum_bound: f64::NAN,
            lower_estimate: f64::NAN,
            nonunit_mu_count: None,
            wall_ms: 0.0,
            error: None,
        }
    }

    /// Chain ordering `lower <= S <= E_N <= shell sum <= closed form`
    /// restricted to the quantities that are present and applicable.
    pub fn chain_ok(&self) -> bool {
        super::chain_holds(self)
    }

    fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.d,
            self.n,
            self.m,
            self.c,
            self.model,
            self.s_nats,
            self.en_nats,
            self.upper_bound,
            self.upper_valid,
            self.shell_sum_bound,
            self.lower_estimate,
            self.nonunit_mu_count
                .map(|v| v.to_string())
                .unwrap_or_default(),
            self.wall_ms
        )
    }

    fn from_csv_row(line: &str, line_no: usize) -> Result<Self> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 13 {
            return Err(Error::Parse(format!(
                "line {line_no}: expected 13 fields, found {}",
                fields.len()
            )));
        }
        fn num<T: FromStr>(field: &str, name: &str, line_no: usize) -> Result<T> {
            field
                .parse()
                .map_err(|_| Error::Parse(format!("line {line_no}: bad {name} value '{field}'")))
        }
        Ok(RunRecord {
            d: num(fields[0], "d", line_no)?,
            n: num(fields[1], "n", line_no)?,
            m: num(fields[2], "m", line_no)?,
            c: num(fields[3], "c", line_no)?,
            model: fields[4].parse()?,
            s_nats: num(fields[5], "S_nats", line_no)?,
            en_nats: num(fields[6], "EN_nats", line_no)?,
            upper_bound: num(fields[7], "upper_bound", line_no)?,
            upper_valid: num(fields[8], "upper_valid", line_no)?,
            shell_sum_bound: num(fields[9], "shell_sum_bound", line_no)?,
            lower_estimate: num(fields[10], "lower_estimate", line_no)?,
            nonunit_mu_count: if fields[11].is_empty() {
                None
            } else {
                Some(num(fields[11], "nonunit_mu_count", line_no)?)
            },
            wall_ms: num(fields[12], "wall_ms", line_no)?,
            error: None,
        })
    }
}

mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() { Some(*x) } else { None }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidInput(format!(
                "unknown format '{other}' (expected 'csv' or 'json')"
            ))),
        }
    }
}

pub fn write_csv<W: Write>(records: &[RunRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for record in records {
        writeln!(out, "{}", record.to_csv_row())?;
    }
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let reader = BufReader::new(input);
    let mut lines = reader.lines().enumerate();
    let header = match lines.next() {
        Some((_, Ok(line))) => line,
        Some((_, Err(e))) => return Err(Error::Parse(e.to_string())),
        None => return Err(Error::Parse("empty CSV input".into())),
    };
    if header.trim_end() != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header '{header}'")));
    }
    let mut records = Vec::new();
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(RunRecord::from_csv_row(&line, idx + 1)?);
    }
    Ok(records)
}

#[derive(Serialize, Deserialize)]
struct JsonDocument {
    schema: u32,
    records: Vec<RunRecord>,
}

pub fn write_json<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let doc = JsonDocument {
        schema: SCHEMA_VERSION,
        records: records.to_vec(),
    };
    serde_json::to_writer_pretty(out, &doc).map_err(|e| {
        if e.is_io() {
            Error::io("<writer>", e.into())
        } else {
            Error::Parse(e.to_string())
        }
    })
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let doc: JsonDocument =
        serde_json::from_reader(input).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    Ok(doc.records)
}

pub fn write_csv_to_path(records: &[RunRecord], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(records, std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn write_json_to_path(records: &[RunRecord], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_json(records, std::io::BufWriter::new(file))
}

/// Load records from a file, accepting either format (JSON documents start
/// with '{').
pub fn records_from_path(path: &Path) -> Result<Vec<RunRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.trim_start().starts_with('{') {
        read_json(text.as_bytes())
    } else {
        read_csv(text.as_bytes())
    }
}

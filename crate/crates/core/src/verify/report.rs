use std::io::Write;
use std::str::FromStr;

use super::VerificationReport;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 7] = ["p", "object", "case", "lhs", "rhs", "match", "elapsed_us"];

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
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

pub trait ReportSink {
    fn write_report(&mut self, report: &VerificationReport) -> Result<()>;

    fn finish(&mut self) -> Result<()> {
        Ok(())
    }
}

/// Timings are written as `0` unless enabled, so that output is reproducible
/// byte for byte.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
    timings: bool,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W, timings: bool) -> Result<Self> {
        let mut writer = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        writer.write_record(CSV_HEADER)?;
        Ok(CsvSink { writer, timings })
    }

    pub fn into_inner(self) -> Result<W> {
        self.writer
            .into_inner()
            .map_err(|e| Error::Io(e.error().to_string()))
    }
}

impl<W: Write> ReportSink for CsvSink<W> {
    fn write_report(&mut self, r: &VerificationReport) -> Result<()> {
        let p = r.p.to_string();
        for row in &r.rows {
            let us = if self.timings { row.elapsed_us } else { 0 };
            self.writer.write_record([
                p.as_str(),
                r.object.as_str(),
                row.case.as_str(),
                row.lhs.as_str(),
                row.rhs.as_str(),
                if row.matched { "true" } else { "false" },
                us.to_string().as_str(),
            ])?;
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        Ok(self.writer.flush()?)
    }
}

/// One JSON object per case, with the CSV column names as keys.
pub struct JsonSink<W: Write> {
    out: W,
    timings: bool,
}

impl<W: Write> JsonSink<W> {
    pub fn new(out: W, timings: bool) -> Self {
        JsonSink { out, timings }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> ReportSink for JsonSink<W> {
    fn write_report(&mut self, r: &VerificationReport) -> Result<()> {
        for row in &r.rows {
            let v = serde_json::json!({
                "p": r.p,
                "object": r.object,
                "case": row.case,
                "lhs": row.lhs,
                "rhs": row.rhs,
                "match": row.matched,
                "elapsed_us": if self.timings { row.elapsed_us } else { 0 },
            });
            writeln!(self.out, "{v}")?;
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        Ok(self.out.flush()?)
    }
}

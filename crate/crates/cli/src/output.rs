//! CSV output with a `#` comment header and fixed 17-significant-digit
//! number formatting, so that a run is byte-for-byte reproducible.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// Formats `x` like C's `%.17g`.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{x:.*}", (16 - exp) as usize)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rows of numbers under a named header, written in one go.
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    trailer: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
            trailer: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// A `# key=value` line after the data.
    pub fn note(&mut self, key: &str, value: f64) {
        self.trailer.push(format!("{key}={}", g17(value)));
    }

    pub fn write_to<W: Write>(&self, header: &[String], out: W) -> io::Result<()> {
        let mut out = io::BufWriter::new(out);
        for line in header {
            writeln!(out, "# {line}")?;
        }
        let mut csv = csv::Writer::from_writer(out);
        csv.write_record(&self.columns)?;
        for row in &self.rows {
            csv.write_record(row.iter().map(|&x| g17(x)))?;
        }
        let mut out = csv.into_inner().map_err(|e| e.into_error())?;
        for line in &self.trailer {
            writeln!(out, "# {line}")?;
        }
        out.flush()
    }

    /// Writes to `path`, or to stdout when `None`.
    pub fn emit(&self, header: &[String], path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(path) => self.write_to(header, File::create(path)?),
            None => self.write_to(header, io::stdout().lock()),
        }
    }
}

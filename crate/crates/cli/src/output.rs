//! CSV and JSON rendering.
//!
//! CSV files start with a `# schema=N` comment line followed by the header.
//! CSV numbers carry 17 significant digits; JSON numbers use the shortest
//! representation that parses back to the same `f64`.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::{CliError, CliResult, SCHEMA_VERSION};

pub const SWEEP_HEADER: &str = "alpha,p_plus,sensitivity,distinguishability,likelihood";
pub const FIELD_HEADER: &str = "x,y,ex,ey";

/// Round-trip decimal form with 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_document<'a, I>(header: &str, rows: I) -> String
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut out = format!("# schema={SCHEMA_VERSION}\n{header}\n");
    for row in rows {
        let mut first = true;
        for &v in row {
            if !first {
                out.push(',');
            }
            first = false;
            write!(out, "{}", fmt_num(v)).expect("write to String");
        }
        out.push('\n');
    }
    out
}

pub fn json_document<S: Serialize>(value: &S) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Splits a CSV document into its schema version, header and numeric rows.
pub fn parse_csv(text: &str) -> CliResult<(u32, String, Vec<Vec<f64>>)> {
    let bad = |m: &str| CliError::Validation(format!("malformed CSV: {m}"));
    let mut lines = text.lines();
    let schema = lines
        .next()
        .and_then(|l| l.strip_prefix("# schema="))
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| bad("missing schema line"))?;
    let header = lines.next().ok_or_else(|| bad("missing header"))?.to_string();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(|v| v.parse::<f64>().map_err(|_| bad(v))).collect())
        .collect::<CliResult<Vec<Vec<f64>>>>()?;
    Ok((schema, header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::f64::consts::PI, 0.0] {
            let s = fmt_num(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
            let digits = s
                .split('e')
                .next()
                .unwrap()
                .chars()
                .filter(char::is_ascii_digit)
                .count();
            assert_eq!(digits, 17);
        }
    }

    #[test]
    fn csv_layout() {
        let rows = [[0.5, 1.0], [0.25, -1.0]];
        let doc = csv_document("a,b", rows.iter().map(|r| r.as_slice()));
        let mut lines = doc.lines();
        assert_eq!(lines.next(), Some("# schema=1"));
        assert_eq!(lines.next(), Some("a,b"));
        assert_eq!(lines.next(), Some("5.0000000000000000e-1,1.0000000000000000e0"));
        let (schema, header, parsed) = parse_csv(&doc).unwrap();
        assert_eq!((schema, header.as_str()), (1, "a,b"));
        assert_eq!(parsed, vec![vec![0.5, 1.0], vec![0.25, -1.0]]);
    }

    #[test]
    fn parse_rejects_missing_schema() {
        assert!(parse_csv("a,b\n1,2\n").is_err());
    }
}

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::Result;

use super::config::OutputFormat;
use super::run::SweepRecord;

pub const CSV_HEADER: &str = "h,hbar,ccr_residual,dist_q,dist_p,e0,e1,e2,e3,mean,oracle,abs_err";

/// Header plus one line per record, every value with 17 significant digits.
pub fn to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(256 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let fields = [
            r.h,
            r.hbar,
            r.ccr_residual,
            r.dist_q,
            r.dist_p,
            r.e0,
            r.e1,
            r.e2,
            r.e3,
            r.mean,
            r.oracle,
            r.abs_err,
        ];
        for (k, x) in fields.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            write!(out, "{x:.16e}").expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    out
}

pub fn to_json(records: &[SweepRecord]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(records)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> Result<Vec<SweepRecord>> {
    Ok(serde_json::from_str(text)?)
}

pub fn render(records: &[SweepRecord], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => Ok(to_csv(records)),
        OutputFormat::Json => to_json(records),
    }
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit(records: &[SweepRecord], format: OutputFormat, path: Option<&Path>) -> Result<()> {
    let text = render(records, format)?;
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| std::io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display())).into()),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
            Ok(())
        }
    }
}

//! Two-column sample CSV.
//!
//! An optional single header line is recognised when none of its fields is a
//! number. LF and CRLF line endings are accepted; blank lines are skipped.

use std::path::Path;

use crate::approx::SampleSet;
use crate::error::{Error, Result};
use crate::semifield::Semifield;

fn fields(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

pub fn parse_samples_str(text: &str, sf: Semifield) -> Result<SampleSet> {
    let mut points = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            continue;
        }
        let f = fields(line);
        if line_no == 1 && f.iter().all(|s| s.parse::<f64>().is_err()) {
            continue;
        }
        if f.len() != 2 {
            return Err(Error::MalformedRow(line_no));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .and_then(|v| sf.scalar(v).ok())
                .ok_or(Error::MalformedRow(line_no))
        };
        points.push((parse(f[0])?, parse(f[1])?));
    }
    if points.is_empty() {
        return Err(Error::EmptyFile);
    }
    SampleSet::new(sf, points)
}

pub fn parse_samples(path: &Path, sf: Semifield) -> Result<SampleSet> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_samples_str(&text, sf)
}

/// CSV text with an `x,y` header; reals use the shortest exact representation.
pub fn format_samples(samples: &SampleSet) -> String {
    let sf = samples.semifield();
    let mut out = String::from("x,y\n");
    for &(x, y) in samples.points() {
        out.push_str(&format!("{},{}\n", sf.to_real(x), sf.to_real(y)));
    }
    out
}

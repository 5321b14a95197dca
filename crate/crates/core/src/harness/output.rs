//! CSV writers for learning curves and summaries.
//!
//! `curves.csv`: header `iteration,<name>,...`, one row per iteration
//! (1-based), MSE in dB with six decimals, columns in config order.
//!
//! `summary.csv`: header `algorithm,steady_state_mse_db,final_dictionary_size`;
//! the dictionary column is empty for non-kernel algorithms.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::experiment::{LearningCurve, SummaryRow};

pub fn curves_csv(curves: &[(String, LearningCurve)]) -> Result<String> {
    let Some((_, first)) = curves.first() else {
        return Err(Error::InvalidParameter("no curves to write".into()));
    };
    let n = first.len();
    if curves.iter().any(|(_, c)| c.len() != n) {
        return Err(Error::InvalidParameter("curves differ in length".into()));
    }
    let db: Vec<Vec<f64>> = curves.iter().map(|(_, c)| c.db()).collect();
    let mut out = String::from("iteration");
    for (name, _) in curves {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..n {
        let _ = write!(out, "{}", i + 1);
        for col in &db {
            let _ = write!(out, ",{:.6}", col[i]);
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn emit_csv(curves: &[(String, LearningCurve)], path: &Path) -> Result<()> {
    fs::write(path, curves_csv(curves)?)?;
    Ok(())
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("algorithm,steady_state_mse_db,final_dictionary_size\n");
    for r in rows {
        let _ = write!(out, "{},{:.6},", r.name, r.steady_state_db);
        if let Some(d) = r.dictionary_size {
            let _ = write!(out, "{d:.1}");
        }
        out.push('\n');
    }
    out
}

pub fn emit_summary(rows: &[SummaryRow], path: &Path) -> Result<()> {
    fs::write(path, summary_csv(rows))?;
    Ok(())
}

/// Reads a `curves.csv` back as `(names, dB columns)`.
pub fn parse_curves_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let bad = |line: usize, message: &str| Error::Config {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad(1, "empty file"))?;
    let mut cols = header.split(',');
    if cols.next() != Some("iteration") {
        return Err(bad(1, "header must start with `iteration`"));
    }
    let names: Vec<String> = cols.map(str::to_string).collect();
    let mut values = vec![Vec::new(); names.len()];
    for (idx, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() + 1 {
            return Err(bad(idx + 2, "wrong number of fields"));
        }
        for (col, f) in values.iter_mut().zip(&fields[1..]) {
            col.push(f.parse().map_err(|_| bad(idx + 2, "bad number"))?);
        }
    }
    Ok((names, values))
}

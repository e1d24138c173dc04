//! Text formats.
//!
//! Matrix files hold one matrix row per line as comma-separated reals. Pair
//! files hold one `x_label,y_label` observation per line. In both, lines
//! whose first non-blank character is `#` and blank lines are skipped, and
//! line numbers in errors are 1-based physical lines.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::estimation::SamplePairs;
use crate::matrix::{InputMode, JointMatrix};
use crate::report::format_real;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim();
        (!trimmed.is_empty() && !trimmed.starts_with('#')).then_some((idx + 1, line))
    })
}

pub fn parse_matrix(text: &str, mode: InputMode, eps_norm: f64) -> Result<JointMatrix> {
    let mut cols = None;
    let mut rows = 0;
    let mut data = Vec::new();
    for (line_no, line) in content_lines(text) {
        let start = data.len();
        for (col_idx, field) in line.split(',').enumerate() {
            let value = field.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                col: Some(col_idx + 1),
            })?;
            data.push(value);
        }
        let width = data.len() - start;
        match cols {
            None => cols = Some(width),
            Some(c) if c != width => return Err(Error::RaggedRows { line: line_no }),
            Some(_) => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or(Error::EmptyMatrix)?;
    JointMatrix::from_row_major(rows, cols, data, mode, eps_norm)
}

pub fn read_matrix(path: impl AsRef<Path>, mode: InputMode, eps_norm: f64) -> Result<JointMatrix> {
    parse_matrix(&fs::read_to_string(path)?, mode, eps_norm)
}

pub fn parse_pairs(text: &str) -> Result<SamplePairs> {
    let mut samples = SamplePairs::new();
    for (line_no, line) in content_lines(text) {
        let mut fields = line.split(',');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(x), Some(y), None) if !x.is_empty() && !y.is_empty() => samples.push(x, y),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    col: None,
                })
            }
        }
    }
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(samples)
}

pub fn read_pairs(path: impl AsRef<Path>) -> Result<SamplePairs> {
    parse_pairs(&fs::read_to_string(path)?)
}

/// Writes `p` in the matrix file format, reals with 17 significant digits.
pub fn write_matrix<W: Write>(p: &JointMatrix, mut out: W) -> Result<()> {
    for i in 0..p.rows() {
        let line: Vec<String> = p.row(i).iter().map(|&v| format_real(v)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

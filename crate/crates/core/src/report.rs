//! JSON and plain-text rendering of results.
//!
//! Output is written by hand so that key order and float formatting are
//! fixed: identical inputs give byte-identical reports.

use std::fmt::Write as _;

use crate::baselines::BaselineReport;
use crate::coefficient::DependenceReport;
use crate::matrix::OrientedMatrix;

/// Renders `x` with 17 significant digits, trailing zeros removed, in fixed
/// notation for decimal exponents in `[-5, 17)` and scientific otherwise.
/// Integral values keep one fractional digit (`1.0`). Non-finite values
/// become `null`.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return "0.0".to_string();
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if x < 0.0 { "-" } else { "" };

    if !(-5..17).contains(&exp) {
        let (lead, frac) = digits.split_at(1);
        let frac = frac.trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        return format!("{sign}{lead}.{frac}e{exp}");
    }
    let (int, frac) = if exp >= 0 {
        let split = exp as usize + 1;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        ("0".to_string(), "0".repeat((-exp - 1) as usize) + &digits)
    };
    let frac = frac.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    format!("{sign}{int}.{frac}")
}

/// Everything `compute` and `estimate` print.
#[derive(Debug, Clone)]
pub struct ComputeReport {
    pub dependence: DependenceReport,
    pub dropped_rows: Vec<usize>,
    pub dropped_cols: Vec<usize>,
    pub baselines: Option<BaselineReport>,
    pub k_transposed: Option<f64>,
}

impl ComputeReport {
    pub fn new(dependence: DependenceReport, oriented: &OrientedMatrix) -> Self {
        Self {
            dependence,
            dropped_rows: oriented.dropped_rows.clone(),
            dropped_cols: oriented.dropped_cols.clone(),
            baselines: None,
            k_transposed: None,
        }
    }

    pub fn to_json(&self) -> String {
        let d = &self.dependence;
        let list = |xs: &[usize]| {
            let items: Vec<String> = xs.iter().map(usize::to_string).collect();
            format!("[{}]", items.join(","))
        };
        let mut s = String::from("{");
        let _ = write!(
            s,
            "\"n\":{},\"m\":{},\"transposed\":{},\"dropped_rows\":{},\"dropped_cols\":{},\
             \"mu\":{},\"mu_f\":{},\"k\":{},\"classification\":\"{}\",\"algorithm\":\"{}\"",
            d.n_effective,
            d.m_effective,
            d.transposed,
            list(&self.dropped_rows),
            list(&self.dropped_cols),
            format_real(d.mu),
            format_real(d.mu_f),
            format_real(d.k),
            d.classification.as_str(),
            d.algorithm.as_str(),
        );
        if let Some(b) = &self.baselines {
            let _ = write!(
                s,
                ",\"baselines\":{{\"chi_square\":{},\"cramers_v\":{},\"mutual_information_nats\":{}}}",
                format_real(b.chi_square),
                format_real(b.cramers_v),
                format_real(b.mutual_information),
            );
        }
        if let Some(kt) = self.k_transposed {
            let _ = write!(s, ",\"k_transposed\":{}", format_real(kt));
        }
        s.push('}');
        s
    }

    pub fn to_plain(&self) -> String {
        format!("k={}", format_real(self.dependence.k))
    }
}

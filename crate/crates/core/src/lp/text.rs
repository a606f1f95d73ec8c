//! Plain-text LP format.
//!
//! ```text
//! # fractional matching of a path on three vertices
//! max: 1 1
//! row: 1 0 <= 1
//! row: 1 1 <= 1
//! row: 0 1 <= 1
//! ```
//!
//! The objective line is `max:` or `min:` followed by one coefficient per
//! variable; each constraint is `row:` followed by the same number of
//! coefficients, `<=` (or `≤`), and the right-hand side. Numbers are
//! integers or fractions `p/q`.

use super::{format_rational, parse_rational, Opt, Rational, RationalLP};
use crate::error::{Error, Result};
use std::fmt::Write;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn values(line: usize, text: &str) -> Result<Vec<Rational>> {
    text.split_whitespace()
        .map(|t| parse_rational(t).ok_or_else(|| perr(line, format!("bad number {t:?}"))))
        .collect()
}

pub fn parse_lp(text: &str) -> Result<RationalLP> {
    let mut objective: Option<(Opt, Vec<Rational>)> = None;
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| perr(ln, "expected \"max:\", \"min:\" or \"row:\""))?;
        match head.trim() {
            h @ ("max" | "min") => {
                if objective.is_some() {
                    return Err(perr(ln, "objective given twice"));
                }
                let opt = if h == "max" { Opt::Max } else { Opt::Min };
                objective = Some((opt, values(ln, rest)?));
            }
            "row" => {
                let Some((_, obj)) = &objective else {
                    return Err(perr(ln, "constraint before objective"));
                };
                let rest = rest.replace('≤', "<=");
                let (lhs, b) = rest
                    .split_once("<=")
                    .ok_or_else(|| perr(ln, "constraint needs \"<=\""))?;
                let coeffs = values(ln, lhs)?;
                if coeffs.len() != obj.len() {
                    return Err(perr(
                        ln,
                        format!(
                            "expected {} coefficients, found {}",
                            obj.len(),
                            coeffs.len()
                        ),
                    ));
                }
                let b = values(ln, b)?;
                let [b] = <[Rational; 1]>::try_from(b)
                    .map_err(|_| perr(ln, "right-hand side must be one number"))?;
                matrix.push(coeffs);
                rhs.push(b);
            }
            other => return Err(perr(ln, format!("unknown line kind {other:?}"))),
        }
    }
    let (opt, obj) = objective.ok_or_else(|| perr(1, "missing objective line"))?;
    RationalLP::from_dense(obj, &matrix, rhs, opt)
}

pub fn format_lp(lp: &RationalLP) -> String {
    let join = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let head = match lp.opt() {
        Opt::Max => "max",
        Opt::Min => "min",
    };
    writeln!(out, "{head}: {}", join(lp.objective())).unwrap();
    for (row, b) in lp.dense_matrix().iter().zip(lp.rhs()) {
        writeln!(out, "row: {} <= {}", join(row), format_rational(b)).unwrap();
    }
    out
}

//! Text formats: the matrix input format and CSV/JSON result emission.
//!
//! Matrix files look like
//!
//! ```text
//! # comment
//! dim 2
//! 0.5 0.25-0.1j
//! 0.25+0.1j 0.5
//! ```
//!
//! Entries are `re`, `imj` or `re<sign>imj`. Parsing never depends on locale.

use std::io::Write;

use num_complex::Complex64;
use thiserror::Error;

use crate::qlinalg::ComplexMatrix;
use crate::separability::{CurvePoint, ThresholdReport};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn parse_real(s: &str) -> Option<f64> {
    if s.is_empty() || s.chars().any(|c| !(c.is_ascii_digit() || "+-.eE".contains(c))) {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses a single entry such as `0.5`, `-2j`, `1e-3+2.5e-1j`.
pub fn parse_complex(token: &str) -> Option<Complex64> {
    let Some(body) = token.strip_suffix('j') else {
        return parse_real(token).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |s: &str| match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        s => parse_real(s),
    };
    match split {
        Some(i) => Some(Complex64::new(parse_real(&body[..i])?, imag(&body[i..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

/// Parses the matrix text format. Line and column numbers in errors are 1-based.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines.next().ok_or_else(|| parse_error(1, 1, "missing `dim <d>` header"))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("dim") {
        return Err(parse_error(hline, column_of(header, header.trim_start()), "expected `dim <d>`"));
    }
    let dim_tok = parts.next().ok_or_else(|| parse_error(hline, header.len() + 1, "missing dimension"))?;
    let dim: usize = dim_tok
        .parse()
        .ok()
        .filter(|&d| d >= 1)
        .ok_or_else(|| parse_error(hline, column_of(header, dim_tok), "dimension must be a positive integer"))?;
    if let Some(extra) = parts.next() {
        return Err(parse_error(hline, column_of(header, extra), "unexpected token after dimension"));
    }

    let mut entries = Vec::with_capacity(dim * dim);
    let mut last_line = hline;
    for row in 0..dim {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_error(last_line + 1, 1, format!("expected {dim} rows, found {row}")))?;
        last_line = lno;
        let mut count = 0;
        for tok in line.split_whitespace() {
            if count == dim {
                return Err(parse_error(lno, column_of(line, tok), format!("row has more than {dim} entries")));
            }
            let z = parse_complex(tok)
                .ok_or_else(|| parse_error(lno, column_of(line, tok), format!("malformed complex entry {tok:?}")))?;
            entries.push(z);
            count += 1;
        }
        if count < dim {
            return Err(parse_error(lno, line.len() + 1, format!("row has {count} entries, expected {dim}")));
        }
    }
    if let Some((lno, line)) = lines.next() {
        return Err(parse_error(lno, column_of(line, line.trim_start()), "unexpected content after matrix"));
    }
    Ok(ComplexMatrix::from_rows(entries))
}

/// Byte offset of `sub` (a subslice of `line`) as a 1-based column.
fn column_of(line: &str, sub: &str) -> usize {
    (sub.as_ptr() as usize).saturating_sub(line.as_ptr() as usize) + 1
}

/// Writes a matrix in the text format; `parse_matrix` reads it back exactly.
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = format!("dim {}\n", m.dim());
    for i in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|j| {
                let z = m[(i, j)];
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                format!("{:e}{}{:e}j", z.re, sign, z.im.abs())
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Ten significant digits.
pub fn fmt_sig(v: f64) -> String {
    format!("{v:.9e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

pub fn reports_to_json(reports: &[ThresholdReport]) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(reports)?;
    s.push('\n');
    Ok(s)
}

pub fn reports_from_json(text: &str) -> serde_json::Result<Vec<ThresholdReport>> {
    serde_json::from_str(text)
}

/// One `sample` row per scheduled q followed by one `summary` row per report.
pub fn reports_to_csv(reports: &[ThresholdReport]) -> csv::Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(["family", "n_qubits", "partition", "criterion", "kind", "q", "x_star", "converged"])?;
    for r in reports {
        let head = [
            r.family.to_string(),
            r.n_qubits.to_string(),
            r.partition.to_string(),
            r.criterion.to_string(),
        ];
        for s in &r.samples {
            w.write_record(head.iter().cloned().chain([
                "sample".into(),
                fmt_sig(s.q),
                fmt_sig(s.x_star),
                String::new(),
            ]))?;
        }
        w.write_record(head.iter().cloned().chain([
            "summary".into(),
            fmt_opt(r.q_at_convergence),
            fmt_sig(r.x_star),
            r.converged.to_string(),
        ]))?;
    }
    w.flush()?;
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("ascii output"))
}

pub fn curve_to_json(points: &[CurvePoint]) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(points)?;
    s.push('\n');
    Ok(s)
}

/// Columns `x,value`; an empty value marks an undefined point.
pub fn curve_to_csv(points: &[CurvePoint]) -> String {
    let mut out = Vec::new();
    writeln!(out, "x,value").unwrap();
    for p in points {
        writeln!(out, "{},{}", fmt_sig(p.x), fmt_opt(p.value)).unwrap();
    }
    String::from_utf8(out).expect("ascii output")
}

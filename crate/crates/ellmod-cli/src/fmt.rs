//! CLI value parsing and deterministic output formatting.

use anyhow::{anyhow, bail, Result};
use ellmod::qseries::Rat;
use num_complex::Complex64;

/// Parse "re,im" (or a bare real) into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse_f64(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        _ => bail!("expected a complex number as \"re,im\", got {s:?}"),
    }
}

/// Parse τ as "re,im" and validate Im τ > 0.
pub fn parse_tau(s: &str) -> Result<Complex64> {
    let tau = parse_complex(s)?;
    if !(tau.im > 0.0) {
        bail!("τ must have Im τ > 0, got {s:?}");
    }
    Ok(tau)
}

pub fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| anyhow!("not a number: {s:?}"))
}

/// Parse an exact rational "p/q" or integer "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let int = |v: &str| -> Result<i64> {
        v.trim()
            .parse::<i64>()
            .map_err(|_| anyhow!("not an integer: {v:?}"))
    };
    match t.split_once('/') {
        None => Ok(Rat::from_integer(int(t)?.into())),
        Some((p, q)) => {
            let den = int(q)?;
            if den == 0 {
                bail!("zero denominator in {s:?}");
            }
            Ok(Rat::new(int(p)?.into(), den.into()))
        }
    }
}

/// Parse a comma-separated list of rationals.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

/// Parse a comma-separated list of reals.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_f64).collect()
}

/// Parse a comma-separated list of integers.
pub fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<i64>()
                .map_err(|_| anyhow!("not an integer: {v:?}"))
        })
        .collect()
}

/// Parse a Gram matrix: a named lattice or row-major JSON.
pub fn parse_gram(s: &str) -> Result<Vec<Vec<i64>>> {
    match s {
        "a1" => Ok(vec![vec![2]]),
        "a2" => Ok(vec![vec![2, -1], vec![-1, 2]]),
        "e8" => Ok(vec![
            vec![2, -1, 0, 0, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0, 0, 0],
            vec![0, -1, 2, -1, 0, 0, 0, 0],
            vec![0, 0, -1, 2, -1, 0, 0, 0],
            vec![0, 0, 0, -1, 2, -1, 0, -1],
            vec![0, 0, 0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, 0, 0, -1, 2, 0],
            vec![0, 0, 0, 0, -1, 0, 0, 2],
        ]),
        other => {
            let rows: Vec<Vec<i64>> = serde_json::from_str(other)
                .map_err(|_| anyhow!("not a lattice name (a1|a2|e8) or JSON matrix: {other:?}"))?;
            Ok(rows)
        }
    }
}

/// Deterministic float rendering (normalizes −0).
pub fn fnum(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.12e}")
}

/// Complex number as the CLI "re,im" string.
pub fn cnum(z: Complex64) -> String {
    format!("{},{}", fnum(z.re), fnum(z.im))
}

/// Exact rational as "p/q" (or "p" when integral).
pub fn rnum(r: &Rat) -> String {
    r.to_string()
}

/// Render a flat JSON object as CSV: one header row from the keys of each
/// element of `rows`, in the given column order.
pub fn csv_table(columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

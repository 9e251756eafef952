//! Text formats used by the experiment driver.
//!
//! Matrices (graphs, signals) are whitespace-delimited rows, one vertex or
//! signal row per line; `#`-prefixed lines are comments and ignored. Sparse
//! codes are `atom_index signal_index value` triplets with the shape and
//! budget carried in structured comments. Floats are written with Rust's
//! shortest round-trip formatting, so identical data produces identical bytes.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::kernels::KernelSpec;
use crate::omp::{SignalSet, SparseCodeMatrix};

pub fn format_float(v: f64) -> String {
    format!("{v}")
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(path: &Path, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        message: message.into(),
    }
}

pub fn write_lines<I, S>(path: &Path, lines: I) -> Result<()>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = String::new();
    for line in lines {
        out.push_str(line.as_ref());
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| io_err(path, e))
}

fn read_content_lines(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned)
        .collect())
}

fn parse_row<T: FromStr>(path: &Path, line: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<T>()
                .map_err(|_| parse_err(path, format!("bad token {tok:?}")))
        })
        .collect()
}

/// Write a dense matrix, optionally preceded by `#` comment lines.
pub fn write_matrix(path: &Path, matrix: &Array2<f64>, comments: &[String]) -> Result<()> {
    let mut lines: Vec<String> = comments.iter().map(|c| format!("# {c}")).collect();
    for row in matrix.rows() {
        let cells: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
        lines.push(cells.join(" "));
    }
    write_lines(path, lines)
}

pub fn read_matrix(path: &Path) -> Result<Array2<f64>> {
    let lines = read_content_lines(path)?;
    if lines.is_empty() {
        return Err(parse_err(path, "no data rows"));
    }
    let rows: Vec<Vec<f64>> = lines
        .iter()
        .map(|l| parse_row::<f64>(path, l))
        .collect::<Result<_>>()?;
    let cols = rows[0].len();
    if cols == 0 {
        return Err(parse_err(path, "empty first row"));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
        return Err(parse_err(
            path,
            format!("row {bad} has {} columns, expected {cols}", rows[bad].len()),
        ));
    }
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    Array2::from_shape_vec((flat.len() / cols, cols), flat)
        .map_err(|e| parse_err(path, e.to_string()))
}

pub fn write_graph(path: &Path, graph: &Graph, comments: &[String]) -> Result<()> {
    write_matrix(path, graph.weights(), comments)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    Graph::from_weights(read_matrix(path)?)
}

pub fn write_signals(path: &Path, signals: &SignalSet, comments: &[String]) -> Result<()> {
    write_matrix(path, signals.signals(), comments)
}

pub fn read_signals(path: &Path) -> Result<SignalSet> {
    SignalSet::new(read_matrix(path)?)
}

/// Kernel file: one row of polynomial coefficients per subdictionary.
pub fn write_kernels(path: &Path, spec: &KernelSpec, comments: &[String]) -> Result<()> {
    write_matrix(path, spec.coeffs(), comments)
}

pub fn read_kernels(path: &Path) -> Result<KernelSpec> {
    KernelSpec::new(read_matrix(path)?)
}

/// Sparse code dump: `# shape ROWS COLS`, `# t0 T`, then one
/// `atom_index signal_index value` triplet per nonzero, in column-major
/// order of the dense matrix.
pub fn write_codes(path: &Path, codes: &SparseCodeMatrix, comments: &[String]) -> Result<()> {
    let (rows, cols) = codes.codes().dim();
    let mut lines: Vec<String> = comments.iter().map(|c| format!("# {c}")).collect();
    lines.push(format!("# shape {rows} {cols}"));
    lines.push(format!("# t0 {}", codes.t0()));
    for m in 0..cols {
        for a in 0..rows {
            let v = codes.codes()[[a, m]];
            if v != 0.0 {
                lines.push(format!("{a} {m} {}", format_float(v)));
            }
        }
    }
    write_lines(path, lines)
}

pub fn read_codes(path: &Path) -> Result<SparseCodeMatrix> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut shape: Option<(usize, usize)> = None;
    let mut t0: Option<usize> = None;
    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();

    for line in text.lines().map(str::trim) {
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match toks.as_slice() {
                ["shape", r, c] => {
                    let r = r.parse().map_err(|_| parse_err(path, "bad shape row"))?;
                    let c = c.parse().map_err(|_| parse_err(path, "bad shape col"))?;
                    shape = Some((r, c));
                }
                ["t0", t] => {
                    t0 = Some(t.parse().map_err(|_| parse_err(path, "bad t0"))?);
                }
                _ => {}
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(path, format!("expected triplet, got {line:?}")));
        }
        let a: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(path, format!("bad atom index {:?}", toks[0])))?;
        let m: usize = toks[1]
            .parse()
            .map_err(|_| parse_err(path, format!("bad signal index {:?}", toks[1])))?;
        let v: f64 = toks[2]
            .parse()
            .map_err(|_| parse_err(path, format!("bad value {:?}", toks[2])))?;
        triplets.push((a, m, v));
    }

    let (rows, cols) = match shape {
        Some(s) => s,
        None => {
            let rows = triplets.iter().map(|t| t.0 + 1).max().unwrap_or(0);
            let cols = triplets.iter().map(|t| t.1 + 1).max().unwrap_or(0);
            (rows, cols)
        }
    };
    let mut dense = Array2::<f64>::zeros((rows, cols));
    for (a, m, v) in triplets {
        if a >= rows || m >= cols {
            return Err(parse_err(
                path,
                format!("index ({a}, {m}) outside shape ({rows}, {cols})"),
            ));
        }
        dense[[a, m]] = v;
    }
    let t0 = t0.unwrap_or_else(|| {
        dense
            .columns()
            .into_iter()
            .map(|c| c.iter().filter(|v| **v != 0.0).count())
            .max()
            .unwrap_or(1)
            .max(1)
    });
    Ok(SparseCodeMatrix::from_parts(dense, t0))
}

/// Two-column objective trace: iteration index, value.
pub fn write_trace(path: &Path, values: &[f64], comments: &[String]) -> Result<()> {
    let mut lines: Vec<String> = comments.iter().map(|c| format!("# {c}")).collect();
    for (i, v) in values.iter().enumerate() {
        lines.push(format!("{i} {}", format_float(*v)));
    }
    write_lines(path, lines)
}

/// Flat `key = value` configuration text; later keys override earlier ones.
pub fn read_key_values(path: &Path) -> Result<Vec<(String, String)>> {
    let lines = read_content_lines(path)?;
    let mut out = Vec::new();
    for line in lines {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(path, format!("expected key = value, got {line:?}")))?;
        out.push((key.trim().to_owned(), value.trim().to_owned()));
    }
    Ok(out)
}

/// Length-N vector as one value per line (degree dumps and the like).
pub fn write_vector(path: &Path, v: &Array1<f64>, comments: &[String]) -> Result<()> {
    let mut lines: Vec<String> = comments.iter().map(|c| format!("# {c}")).collect();
    lines.extend(v.iter().map(|&x| format_float(x)));
    write_lines(path, lines)
}

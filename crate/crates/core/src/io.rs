//! Reading and writing networks: dense CSV/TSV matrices and edge lists.
//!
//! Dense format: one row per unit, comma- or tab-separated. An empty corner
//! cell in the first row marks a labeled matrix (header row of column labels
//! plus a leading label column); empty cells read as 0. Lines starting with
//! `#` are comments.
//!
//! Edge-list format: one `source,target,value` triple per line; units appear
//! in first-mention order and missing pairs are 0.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::network::ValuedNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Dense,
    Edges,
}

impl InputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dense" => Some(Self::Dense),
            "edges" => Some(Self::Edges),
            _ => None,
        }
    }
}

pub fn read_network(
    path: &Path,
    format: InputFormat,
    diagonal_relevant: bool,
) -> Result<ValuedNetwork> {
    let text = fs::read_to_string(path)?;
    match format {
        InputFormat::Dense => parse_dense(&text, diagonal_relevant),
        InputFormat::Edges => parse_edge_list(&text, diagonal_relevant),
    }
}

fn detect_separator(line: &str) -> char {
    if line.contains('\t') {
        '\t'
    } else {
        ','
    }
}

fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect()
}

fn parse_cell(cell: &str, line: usize) -> Result<f64> {
    let t = cell.trim();
    if t.is_empty() {
        return Ok(0.0);
    }
    t.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a number, got {t:?}"),
    })
}

/// Parse a dense matrix, auto-detecting the separator and an optional
/// label header (empty corner cell).
pub fn parse_dense(text: &str, diagonal_relevant: bool) -> Result<ValuedNetwork> {
    let lines = data_lines(text);
    if lines.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no data lines".into(),
        });
    }
    let sep = detect_separator(lines[0].1);
    let first: Vec<&str> = lines[0].1.split(sep).collect();
    let labeled = first[0].trim().is_empty() && first.len() > 1;

    if labeled {
        let labels: Vec<String> = first[1..].iter().map(|s| s.trim().to_string()).collect();
        let n = labels.len();
        if lines.len() != n + 1 {
            return Err(Error::Parse {
                line: lines[0].0,
                message: format!("labeled matrix has {n} columns but {} data rows", lines.len() - 1),
            });
        }
        let mut matrix = Vec::with_capacity(n);
        for (lineno, l) in &lines[1..] {
            let cells: Vec<&str> = l.split(sep).collect();
            if cells.len() < 2 || cells.len() > n + 1 {
                return Err(Error::Parse {
                    line: *lineno,
                    message: format!("expected up to {} cells, got {}", n + 1, cells.len()),
                });
            }
            // rows may be ragged on the right: trailing empty cells are 0
            let mut row = Vec::with_capacity(n);
            for idx in 0..n {
                let cell = cells.get(idx + 1).copied().unwrap_or("");
                row.push(parse_cell(cell, *lineno)?);
            }
            matrix.push(row);
        }
        ValuedNetwork::new(matrix, labels, diagonal_relevant)
    } else {
        let n = lines.len();
        let mut matrix = Vec::with_capacity(n);
        for (lineno, l) in &lines {
            let cells: Vec<&str> = l.split(sep).collect();
            if cells.len() != n {
                return Err(Error::Parse {
                    line: *lineno,
                    message: format!("expected {n} cells, got {}", cells.len()),
                });
            }
            let mut row = Vec::with_capacity(n);
            for cell in cells {
                row.push(parse_cell(cell, *lineno)?);
            }
            matrix.push(row);
        }
        ValuedNetwork::new(matrix, Vec::new(), diagonal_relevant)
    }
}

/// Parse a `source,target,value` edge list. Unit order is first mention.
pub fn parse_edge_list(text: &str, diagonal_relevant: bool) -> Result<ValuedNetwork> {
    let lines = data_lines(text);
    if lines.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no data lines".into(),
        });
    }
    let sep = detect_separator(lines[0].1);
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, f64, usize)> = Vec::new();
    let index_of = |label: &str, labels: &mut Vec<String>| -> usize {
        match labels.iter().position(|l| l == label) {
            Some(i) => i,
            None => {
                labels.push(label.to_string());
                labels.len() - 1
            }
        }
    };
    for (lineno, l) in &lines {
        let cells: Vec<&str> = l.split(sep).map(|c| c.trim()).collect();
        if cells.len() != 3 {
            return Err(Error::Parse {
                line: *lineno,
                message: format!("expected source{sep}target{sep}value, got {l:?}"),
            });
        }
        let s = index_of(cells[0], &mut labels);
        let t = index_of(cells[1], &mut labels);
        let v = parse_cell(cells[2], *lineno)?;
        edges.push((s, t, v, *lineno));
    }
    let n = labels.len();
    let mut values = vec![0.0; n * n];
    let mut set = vec![false; n * n];
    for (s, t, v, lineno) in edges {
        if set[s * n + t] {
            return Err(Error::Parse {
                line: lineno,
                message: format!("duplicate edge {} -> {}", labels[s], labels[t]),
            });
        }
        set[s * n + t] = true;
        values[s * n + t] = v;
    }
    ValuedNetwork::from_flat(n, values, labels, diagonal_relevant)
}

/// Render a network as labeled dense CSV (explicit zeros, lossless).
pub fn write_dense_csv(net: &ValuedNetwork) -> String {
    let mut out = String::new();
    out.push(',');
    out.push_str(&net.labels().join(","));
    out.push('\n');
    for i in 0..net.n() {
        out.push_str(&net.labels()[i]);
        for j in 0..net.n() {
            out.push(',');
            out.push_str(&format_value(net.value(i, j)));
        }
        out.push('\n');
    }
    out
}

/// Shortest round-trippable rendering of a value.
pub(crate) fn format_value(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

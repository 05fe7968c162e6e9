//! Matrix text format: line 1 a field spec, line 2 the size n, then n rows
//! of n whitespace-separated element literals.

use crate::error::{Error, Result};
use crate::ffpoly::{format_element, parse_element, parse_field};

use super::Matrix;

pub fn parse_matrix(s: &str) -> Result<Matrix> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let field = parse_field(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?,
    )?;
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("missing matrix size".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad matrix size".into()))?;
    let mut m = Matrix::zero(&field, n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                cells.len(),
                n
            )));
        }
        for (j, cell) in cells.iter().enumerate() {
            m.set(i, j, parse_element(&field, cell)?);
        }
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after matrix rows".into()));
    }
    Ok(m)
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("{}\n{}\n", m.field(), m.size());
    for i in 0..m.size() {
        let row: Vec<String> = (0..m.size())
            .map(|j| format_element(m.field(), m.at(i, j)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

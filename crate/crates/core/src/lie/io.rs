//! Line-oriented structure-constant files:
//!
//! ```text
//! lie-sc v1 dim=<N>
//! labels <l0>,<l1>,...
//! <i> <j> <k> <c>        one per nonzero constant, i < j, sorted
//! B <i> <j> <c>          one per nonzero form entry, i <= j, sorted
//! ```

use std::fmt::Write as _;

use super::LieAlgebra;
use crate::exact::{Scalar, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

pub fn write_structure(l: &LieAlgebra) -> String {
    let mut out = String::new();
    writeln!(out, "lie-sc v1 dim={}", l.dim()).unwrap();
    writeln!(out, "labels {}", l.labels().join(",")).unwrap();
    for (i, j, k, c) in l.structure_constants() {
        writeln!(out, "{i} {j} {k} {c}").unwrap();
    }
    let form = l.form();
    for i in 0..l.dim() {
        for (j, v) in form.row(i).iter() {
            if j >= i {
                writeln!(out, "B {i} {j} {v}").unwrap();
            }
        }
    }
    out
}

pub fn read_structure(text: &str) -> Result<LieAlgebra, FormatError> {
    let err = |line: usize, message: String| FormatError { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (n1, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let dim: usize = header
        .strip_prefix("lie-sc v1 dim=")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| err(n1, format!("bad header `{header}`")))?;
    let (n2, lab) = lines.next().ok_or_else(|| err(2, "missing labels line".into()))?;
    let lab = lab.strip_prefix("labels ").ok_or_else(|| err(n2, "expected `labels`".into()))?;
    let labels: Vec<String> = if dim == 0 { vec![] } else { lab.split(',').map(str::to_string).collect() };
    if labels.len() != dim {
        return Err(err(n2, format!("{} labels for dim {dim}", labels.len())));
    }
    let idx = |line: usize, t: &str| -> Result<usize, FormatError> {
        let v: usize = t.parse().map_err(|_| err(line, format!("bad index `{t}`")))?;
        if v >= dim {
            return Err(err(line, format!("index {v} out of range")));
        }
        Ok(v)
    };
    let val = |line: usize, t: &str| -> Result<Scalar, FormatError> {
        let v: Scalar = t.parse().map_err(|e| err(line, format!("{e}")))?;
        if v.is_zero() {
            return Err(err(line, "zero entries are not stored".into()));
        }
        Ok(v)
    };
    let mut constants = Vec::new();
    let mut form = Vec::new();
    let mut last_c: Option<(usize, usize, usize)> = None;
    let mut last_b: Option<(usize, usize)> = None;
    for (n, line) in lines {
        let parts: Vec<&str> = line.split(' ').collect();
        if parts.first() == Some(&"B") {
            if parts.len() != 4 {
                return Err(err(n, "form lines have 4 fields".into()));
            }
            let (i, j) = (idx(n, parts[1])?, idx(n, parts[2])?);
            if i > j {
                return Err(err(n, "form entries need i <= j".into()));
            }
            if last_b.is_some_and(|p| p >= (i, j)) {
                return Err(err(n, "form lines out of order".into()));
            }
            last_b = Some((i, j));
            let v = val(n, parts[3])?;
            if i != j {
                form.push((j, i, v.clone()));
            }
            form.push((i, j, v));
        } else {
            if last_b.is_some() {
                return Err(err(n, "constants must precede form lines".into()));
            }
            if parts.len() != 4 {
                return Err(err(n, "constant lines have 4 fields".into()));
            }
            let (i, j, k) = (idx(n, parts[0])?, idx(n, parts[1])?, idx(n, parts[2])?);
            if i >= j {
                return Err(err(n, "constants need i < j".into()));
            }
            if last_c.is_some_and(|p| p >= (i, j, k)) {
                return Err(err(n, "constant lines out of order".into()));
            }
            last_c = Some((i, j, k));
            constants.push((i, j, k, val(n, parts[3])?));
        }
    }
    let form = SparseMatrix::from_triplets(dim, dim, form);
    Ok(LieAlgebra::from_constants(labels, constants, form))
}

#[cfg(test)]
mod tests {
    use super::super::tests::su2;
    use super::*;

    #[test]
    fn round_trip_bytes() {
        let text = write_structure(&su2(1));
        assert_eq!(text, "lie-sc v1 dim=3\nlabels x,y,z\n0 1 2 1\n0 2 1 -1\n1 2 0 1\nB 0 0 1\nB 1 1 1\nB 2 2 1\n");
        let back = read_structure(&text).unwrap();
        assert_eq!(write_structure(&back), text);
    }

    #[test]
    fn malformed_lines_report_position() {
        let bad = "lie-sc v1 dim=3\nlabels x,y,z\n0 1 2 1\n1 0 2 1\n";
        assert_eq!(read_structure(bad).unwrap_err().line, 4);
        let bad = "lie-sc v1 dim=3\nlabels x,y,z\n0 1 2 1/0\n";
        assert_eq!(read_structure(bad).unwrap_err().line, 3);
        assert_eq!(read_structure("lie-sc v2 dim=3\n").unwrap_err().line, 1);
        let bad = "lie-sc v1 dim=2\nlabels x\n";
        assert_eq!(read_structure(bad).unwrap_err().line, 2);
    }
}

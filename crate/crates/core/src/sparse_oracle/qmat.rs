//! `qmat v1` text format.
//!
//! ```text
//! qmat v1
//! N s
//! i j re im
//! ```
//! Indices are 0-based. An off-diagonal pair is stored once; its mirror is
//! the conjugate. `#` starts a comment line.

use super::SparseHermitianMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Real, C};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

pub fn parse_qmat<T: Real>(text: &str) -> Result<SparseHermitianMatrix<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    if header != "qmat v1" {
        return Err(Error::Parse {
            line,
            message: format!("expected header `qmat v1`, found `{header}`"),
        });
    }
    let (line, dims) = lines.next().ok_or_else(|| Error::Parse {
        line: line + 1,
        message: "missing `N s` line".into(),
    })?;
    let fields: Vec<&str> = dims.split_whitespace().collect();
    let [n, s] = fields[..] else {
        return Err(Error::Parse {
            line,
            message: format!("expected `N s`, found `{dims}`"),
        });
    };
    let parse_usize = |tok: &str, what: &str| -> Result<usize> {
        tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid {what} `{tok}`"),
        })
    };
    let dim = parse_usize(n, "dimension")?;
    let sparsity = parse_usize(s, "sparsity")?;

    let mut stored: HashMap<(usize, usize), C<T>> = HashMap::new();
    let mut order = Vec::new();
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [i, j, re, im] = fields[..] else {
            return Err(Error::Parse {
                line,
                message: format!("expected `i j re im`, found `{text}`"),
            });
        };
        let idx = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid index `{tok}`"),
            })
        };
        let num = |tok: &str| -> Result<T> {
            tok.parse::<f64>().map(T::lit).map_err(|_| Error::Parse {
                line,
                message: format!("invalid number `{tok}`"),
            })
        };
        let (i, j) = (idx(i)?, idx(j)?);
        let v = C::new(num(re)?, num(im)?);
        if i >= dim || j >= dim {
            return Err(Error::IndexOutOfRange { i, j, dim });
        }
        if stored.contains_key(&(i, j)) {
            return Err(Error::DuplicateEntry { i, j });
        }
        if let Some(mirror) = stored.get(&(j, i)) {
            let (lo, hi) = (i.min(j), i.max(j));
            if (mirror.conj() - v).norm() > T::lit(super::HERMITIAN_TOL) {
                return Err(Error::NonHermitian { i: lo, j: hi });
            }
            return Err(Error::DuplicateEntry { i, j });
        }
        stored.insert((i, j), v);
        order.push((i, j, v));
    }
    SparseHermitianMatrix::from_full_entries(dim, sparsity, order)
}

pub fn load_matrix<T: Real>(path: impl AsRef<Path>) -> Result<SparseHermitianMatrix<T>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_qmat(&text)
}

/// Serializes the upper triangle (including the diagonal).
pub fn format_qmat<T: Real>(a: &SparseHermitianMatrix<T>) -> String {
    let mut out = format!("qmat v1\n{} {}\n", a.dim(), a.sparsity());
    for (i, j, v) in a.entries().filter(|(i, j, _)| i <= j) {
        let _ = writeln!(
            out,
            "{i} {j} {:e} {:e}",
            v.re.to_f64_lossy(),
            v.im.to_f64_lossy()
        );
    }
    out
}

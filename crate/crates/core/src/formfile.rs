//! The form file format: a small line-oriented text document carrying an
//! exact periodic form.
//!
//! ```text
//! # comment
//! label hexagonal close packing
//! d 3
//! m 2
//! matrix
//! 4 2 0 0
//! 2 4 0 2
//! 0 0 32/3 16/3
//! 0 2 16/3 4
//! ```
//!
//! Entries are exact rationals, `p/q` or plain integers, row-major,
//! `(d+m-1)^2` of them. Writers emit lowest terms; readers accept any
//! representation and never panic on malformed input.

use num_rational::BigRational;

use crate::exact::mat::RatMatrix;
use crate::exact::rat::{format_rational, parse_rational};
use crate::forms::PeriodicForm;

/// Upper bound on `d + m - 1` accepted by the reader.
pub const MAX_SIZE: usize = 64;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FormFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("size out of range: d + m - 1 must be between 1 and {MAX_SIZE}")]
    SizeOutOfRange,
    #[error("matrix needs {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

#[derive(Debug, Clone)]
pub struct FormFile {
    pub form: PeriodicForm,
    pub label: Option<String>,
}

/// Parse a form file; total-function, suitable for untrusted input.
pub fn parse_form(text: &str) -> Result<FormFile, FormFileError> {
    let mut d: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut label: Option<String> = None;
    let mut entries: Vec<BigRational> = Vec::new();
    let mut in_matrix = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if in_matrix {
            for tok in line.split_whitespace() {
                if entries.len() > MAX_SIZE * MAX_SIZE {
                    return Err(FormFileError::SizeOutOfRange);
                }
                let v = parse_rational(tok)
                    .map_err(|e| FormFileError::Syntax { line: ln + 1, message: e })?;
                entries.push(v);
            }
            continue;
        }
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match key {
            "label" => label = Some(rest.to_string()),
            "d" => {
                let v: usize = rest.parse().map_err(|_| FormFileError::Syntax {
                    line: ln + 1,
                    message: format!("bad dimension {rest:?}"),
                })?;
                d = Some(v);
            }
            "m" => {
                let v: usize = rest.parse().map_err(|_| FormFileError::Syntax {
                    line: ln + 1,
                    message: format!("bad orbit count {rest:?}"),
                })?;
                m = Some(v);
            }
            "matrix" => {
                in_matrix = true;
                for tok in rest.split_whitespace() {
                    if entries.len() > MAX_SIZE * MAX_SIZE {
                        return Err(FormFileError::SizeOutOfRange);
                    }
                    let v = parse_rational(tok)
                        .map_err(|e| FormFileError::Syntax { line: ln + 1, message: e })?;
                    entries.push(v);
                }
            }
            other => {
                return Err(FormFileError::Syntax {
                    line: ln + 1,
                    message: format!("unknown field {other:?}"),
                })
            }
        }
    }
    let d = d.ok_or(FormFileError::MissingField("d"))?;
    let m = m.ok_or(FormFileError::MissingField("m"))?;
    if d == 0 || m == 0 || d + m - 1 > MAX_SIZE {
        return Err(FormFileError::SizeOutOfRange);
    }
    let n = d + m - 1;
    if entries.len() != n * n {
        return Err(FormFileError::EntryCount { expected: n * n, found: entries.len() });
    }
    let mat = RatMatrix::from_fn(n, n, |i, j| entries[i * n + j].clone());
    for i in 0..n {
        for j in i + 1..n {
            if mat.at(i, j) != mat.at(j, i) {
                return Err(FormFileError::NotSymmetric(i, j));
            }
        }
    }
    let form = PeriodicForm::new(d, m, mat).map_err(|e| FormFileError::Syntax {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(FormFile { form, label })
}

/// Serialize with lowest-terms rationals (integers without `/1`).
pub fn format_form(form: &PeriodicForm, label: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(l) = label {
        out.push_str(&format!("label {l}\n"));
    }
    out.push_str(&format!("d {}\n", form.d()));
    out.push_str(&format!("m {}\n", form.m()));
    out.push_str("matrix\n");
    let n = form.n();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_rational(form.matrix().at(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_catalog_forms() {
        let mut all = Vec::new();
        all.extend(catalog::d3::extreme_forms().into_iter().map(|(n, f)| (n, f)));
        all.extend(catalog::d3::vertex_forms().into_iter().map(|(n, f)| (n, f)));
        all.push(("d4", catalog::d4::d4_vertex()));
        all.push(("d5", catalog::d5::d5_rep_vertex()));
        for (name, f) in all {
            let text = format_form(&f, Some(name));
            let parsed = parse_form(&text).unwrap();
            assert_eq!(parsed.form.matrix(), f.matrix());
            assert_eq!(parsed.label.as_deref(), Some(name));
        }
    }

    #[test]
    fn accepts_integers_without_denominator() {
        let text = "d 2\nm 2\nmatrix\n4 0 0\n0 4 0\n0 0 4\n";
        let parsed = parse_form(text).unwrap();
        assert_eq!(parsed.form.d(), 2);
        assert!(parsed.label.is_none());
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(matches!(parse_form(""), Err(FormFileError::MissingField("d"))));
        assert!(matches!(
            parse_form("d 2\nm 2\nmatrix\n1 2 3\n"),
            Err(FormFileError::EntryCount { .. })
        ));
        assert!(matches!(
            parse_form("d 2\nm 2\nmatrix\n1 2 0 3 4 0 0 0 1\n"),
            Err(FormFileError::NotSymmetric(0, 1))
        ));
        assert!(parse_form("d 0\nm 1\nmatrix\n").is_err());
        assert!(parse_form("d 9999999\nm 2\nmatrix\n1").is_err());
        assert!(parse_form("bogus\n").is_err());
        assert!(parse_form("d 2\nm 2\nmatrix\n1/0 0 0 0 1 0 0 0 1").is_err());
        // Huge token floods must fail fast without allocation blowup.
        let flood = format!("d 2\nm 2\nmatrix\n{}", "1 ".repeat(10_000));
        assert!(parse_form(&flood).is_err());
    }
}

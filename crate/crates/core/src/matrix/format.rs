//! Matrix output: JSON document, CSV rows, LaTeX `array`, plain text.

use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Entry, LowerTriMatrix, SquareMatrix};
use crate::calculus::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{Domain, QPoly, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    K,
    Pascal,
    Fermat,
}

impl MatrixKind {
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::K => "K",
            MatrixKind::Pascal => "pascal",
            MatrixKind::Fermat => "fermat",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "K" | "k" => Ok(MatrixKind::K),
            "pascal" | "P" => Ok(MatrixKind::Pascal),
            "fermat" | "F" => Ok(MatrixKind::Fermat),
            _ => Err(Error::InvalidParams(format!("unknown matrix kind {text:?}"))),
        }
    }
}

/// Serializable matrix. Lower-triangular matrices keep ragged rows
/// (row `i` has `i + 1` entries); square matrices keep full rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub kind: String,
    pub sequence: String,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    pub entries: Vec<Vec<String>>,
    #[serde(skip)]
    latex: Vec<Vec<String>>,
    #[serde(skip)]
    lower: bool,
}

impl MatrixDocument {
    pub fn from_lower<E: Entry>(
        kind: MatrixKind,
        sequence: &str,
        x: Option<String>,
        m: &LowerTriMatrix<E>,
    ) -> Self {
        let n = m.size();
        MatrixDocument {
            kind: kind.name().to_string(),
            sequence: sequence.to_string(),
            size: n,
            x,
            entries: (0..n).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect(),
            latex: (0..n).map(|i| m.row(i).iter().map(Entry::latex).collect()).collect(),
            lower: true,
        }
    }

    pub fn from_square<E: Entry>(kind: MatrixKind, sequence: &str, m: &SquareMatrix<E>) -> Self {
        let n = m.size();
        MatrixDocument {
            kind: kind.name().to_string(),
            sequence: sequence.to_string(),
            size: n,
            x: None,
            entries: (0..n).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect(),
            latex: (0..n).map(|i| m.row(i).iter().map(Entry::latex).collect()).collect(),
            lower: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut doc: MatrixDocument = serde_json::from_str(text)
            .map_err(|e| Error::Parse { offset: e.column().saturating_sub(1), message: e.to_string() })?;
        doc.lower = doc.entries.iter().enumerate().all(|(i, row)| row.len() == i + 1);
        Ok(doc)
    }

    /// Parses every entry as a polynomial in `x` over `domain`; constant
    /// entries come back as constant polynomials.
    pub fn parse_entries(&self, domain: Domain) -> Result<Vec<Vec<Polynomial>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| Polynomial::parse(e, domain)).collect())
            .collect()
    }

    pub fn is_lower(&self) -> bool {
        self.lower
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn full_rows<'a>(&'a self, cells: &'a [Vec<String>]) -> impl Iterator<Item = Vec<&'a str>> + 'a {
        let n = self.size;
        cells.iter().map(move |row| (0..n).map(|j| row.get(j).map_or("0", String::as_str)).collect())
    }

    /// `array` environment with the upper triangle written out as zeros.
    pub fn to_latex(&self) -> String {
        let cells = if self.latex.is_empty() { &self.entries } else { &self.latex };
        let mut out = String::new();
        writeln!(out, "\\left[\\begin{{array}}{{{}}}", "c".repeat(self.size)).unwrap();
        for row in self.full_rows(cells) {
            writeln!(out, "{}\\\\", row.join(" & ")).unwrap();
        }
        out.push_str("\\end{array}\\right]\n");
        out
    }

    /// Right-aligned columns, full square.
    pub fn to_text(&self) -> String {
        let rows: Vec<Vec<&str>> = self.full_rows(&self.entries).collect();
        let widths: Vec<usize> = (0..self.size)
            .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for row in rows {
            let cells: Vec<String> =
                row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            out.push_str(&cells.join("  "));
            out.push('\n');
        }
        out
    }
}

fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

fn qpoly_latex(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if !out.is_empty() {
            write!(out, " {sign} ").unwrap();
        } else if c.is_negative() {
            out.push('-');
        }
        let abs = c.abs();
        if k == 0 || !abs.is_one() {
            out.push_str(&rational_latex(&abs));
        }
        match k {
            0 => {}
            1 => out.push('q'),
            _ => write!(out, "q^{{{k}}}").unwrap(),
        }
    }
    out
}

pub(crate) fn scalar_latex(s: &Scalar) -> String {
    match s {
        Scalar::Rat(r) => rational_latex(r),
        Scalar::Fun(f) if f.is_polynomial() => qpoly_latex(f.numer()),
        Scalar::Fun(f) => format!("\\frac{{{}}}{{{}}}", qpoly_latex(f.numer()), qpoly_latex(f.denom())),
    }
}

pub(crate) fn polynomial_latex(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative_rational();
        let abs = if negative { -c } else { c.clone() };
        if !out.is_empty() {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        let coeff = scalar_latex(&abs);
        let compound = coeff.contains(' ');
        if k == 0 {
            out.push_str(&coeff);
        } else if !abs.is_one() {
            if compound {
                write!(out, "\\left({coeff}\\right)").unwrap();
            } else {
                out.push_str(&coeff);
            }
        }
        match k {
            0 => {}
            1 => out.push('x'),
            _ => write!(out, "x^{{{k}}}").unwrap(),
        }
    }
    out
}

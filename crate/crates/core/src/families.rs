//! The seven Hessenberg matrix families.
//!
//! Symbolic families live over [`LaurentPoly`] in `t1..tk`. Writing
//! `m = r - s`, every in-band entry is `coeff(m) * t_{m+1} * t2^(-m)` for
//! `-1 <= m < k`, with `t0 = 1` so that the superdiagonal (`m = -1`)
//! becomes a multiple of `t2`:
//!
//! | family | `coeff(m)`            | superdiagonal | determinant or permanent |
//! |--------|-----------------------|---------------|--------------------------|
//! | `Q`    | `i^abs(m)`            | `i*t2`        | det                      |
//! | `B`    | `1`, `-1` for `m = -1`| `-t2`         | det                      |
//! | `H`    | `i^m`                 | `-i*t2`       | per                      |
//! | `L`    | `1`                   | `t2`          | per                      |
//!
//! All four give `F_{k,n+1}(t)`. The numeric families are their all-ones
//! specializations: `C` (entries `i^abs(m)`), `M` (superdiagonal `-1`,
//! band `1`) and `D` (band of ones), built over [`GaussianRational`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{i_pow, GaussianRational};
use crate::error::{Error, Result};
use crate::hessenberg::{det_hessenberg, per_hessenberg, HessMatrix};
use crate::poly::{LaurentPoly, MultiIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Q,
    B,
    H,
    L,
    C,
    M,
    D,
}

/// Which of determinant or permanent a matrix is evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixOp {
    Det,
    Per,
}

impl Family {
    pub const ALL: [Family; 7] = [Family::Q, Family::B, Family::H, Family::L, Family::C, Family::M, Family::D];
    pub const SYMBOLIC: [Family; 4] = [Family::Q, Family::B, Family::H, Family::L];
    pub const NUMERIC: [Family; 3] = [Family::C, Family::M, Family::D];

    pub fn is_symbolic(self) -> bool {
        matches!(self, Family::Q | Family::B | Family::H | Family::L)
    }

    /// The operation under which the family represents the Fibonacci polynomial.
    pub fn natural_op(self) -> MatrixOp {
        match self {
            Family::Q | Family::B | Family::C | Family::M => MatrixOp::Det,
            Family::H | Family::L | Family::D => MatrixOp::Per,
        }
    }

    /// The symbolic family a numeric one specializes (all `tj = 1`).
    pub fn symbolic_parent(self) -> Family {
        match self {
            Family::C => Family::Q,
            Family::M => Family::B,
            Family::D => Family::L,
            other => other,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "Q" | "q" => Family::Q,
            "B" | "b" => Family::B,
            "H" | "h" => Family::H,
            "L" | "l" => Family::L,
            "C" | "c" => Family::C,
            "M" | "m" => Family::M,
            "D" | "d" => Family::D,
            other => return Err(Error::Argument(format!("unknown family {other:?}; expected one of Q B H L C M D"))),
        })
    }
}

impl fmt::Display for MatrixOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixOp::Det => "det",
            MatrixOp::Per => "per",
        })
    }
}

impl FromStr for MatrixOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "det" => Ok(MatrixOp::Det),
            "per" => Ok(MatrixOp::Per),
            other => Err(Error::Argument(format!("unknown op {other:?}; expected det or per"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub k: usize,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, k: usize, n: usize) -> Result<Self> {
        check_k(k)?;
        Ok(Self { family, k, n })
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        Err(Error::Parameter(format!("k must be at least 2, got {k}")))
    } else {
        Ok(())
    }
}

/// `coeff * t_{m+1} * t2^(-m)` with `t0 = 1`.
fn band_term(k: usize, m: i64, coeff: GaussianRational) -> LaurentPoly {
    let mut exps = vec![0i64; k];
    exps[1] -= m;
    if m >= 0 {
        exps[m as usize] += 1;
    }
    LaurentPoly::monomial(k, coeff, MultiIndex::new(exps))
}

fn offset(k: usize, r: usize, s: usize) -> Option<i64> {
    let m = r as i64 - s as i64;
    (-1..k as i64).contains(&m).then_some(m)
}

pub fn entry_q(k: usize, r: usize, s: usize) -> LaurentPoly {
    match offset(k, r, s) {
        Some(m) => band_term(k, m, i_pow(m.abs())),
        None => LaurentPoly::zero(k),
    }
}

pub fn entry_b(k: usize, r: usize, s: usize) -> LaurentPoly {
    match offset(k, r, s) {
        Some(-1) => band_term(k, -1, GaussianRational::from_integer(-1)),
        Some(m) => band_term(k, m, GaussianRational::one()),
        None => LaurentPoly::zero(k),
    }
}

pub fn entry_h(k: usize, r: usize, s: usize) -> LaurentPoly {
    match offset(k, r, s) {
        Some(m) => band_term(k, m, i_pow(m)),
        None => LaurentPoly::zero(k),
    }
}

pub fn entry_l(k: usize, r: usize, s: usize) -> LaurentPoly {
    match offset(k, r, s) {
        Some(m) => band_term(k, m, GaussianRational::one()),
        None => LaurentPoly::zero(k),
    }
}

pub fn entry_c(k: usize, r: usize, s: usize) -> GaussianRational {
    offset(k, r, s).map_or_else(GaussianRational::zero, |m| i_pow(m.abs()))
}

pub fn entry_m(k: usize, r: usize, s: usize) -> GaussianRational {
    match offset(k, r, s) {
        Some(-1) => GaussianRational::from_integer(-1),
        Some(_) => GaussianRational::one(),
        None => GaussianRational::zero(),
    }
}

pub fn entry_d(k: usize, r: usize, s: usize) -> GaussianRational {
    offset(k, r, s).map_or_else(GaussianRational::zero, |_| GaussianRational::one())
}

/// Entry rule of a symbolic family.
pub fn symbolic_entry(family: Family, k: usize, r: usize, s: usize) -> Option<LaurentPoly> {
    Some(match family {
        Family::Q => entry_q(k, r, s),
        Family::B => entry_b(k, r, s),
        Family::H => entry_h(k, r, s),
        Family::L => entry_l(k, r, s),
        _ => return None,
    })
}

/// Entry rule of a numeric family.
pub fn numeric_entry(family: Family, k: usize, r: usize, s: usize) -> Option<GaussianRational> {
    Some(match family {
        Family::C => entry_c(k, r, s),
        Family::M => entry_m(k, r, s),
        Family::D => entry_d(k, r, s),
        _ => return None,
    })
}

/// Builds one of `Q`, `B`, `H`, `L`.
pub fn build_symbolic(family: Family, k: usize, n: usize) -> Result<HessMatrix<LaurentPoly>> {
    check_k(k)?;
    if !family.is_symbolic() {
        return Err(Error::Argument(format!("{family} is a numeric family")));
    }
    let m = HessMatrix::from_fn(n, LaurentPoly::one(k), move |r, s| {
        symbolic_entry(family, k, r, s).expect("symbolic family")
    });
    Ok(m.with_band(k))
}

/// Builds one of `C`, `M`, `D`.
pub fn build_numeric(family: Family, k: usize, n: usize) -> Result<HessMatrix<GaussianRational>> {
    check_k(k)?;
    if family.is_symbolic() {
        return Err(Error::Argument(format!("{family} is a symbolic family")));
    }
    let m = HessMatrix::from_fn(n, GaussianRational::one(), move |r, s| {
        numeric_entry(family, k, r, s).expect("numeric family")
    });
    Ok(m.with_band(k))
}

/// A constructed family member, symbolic or numeric.
#[derive(Debug, Clone)]
pub enum FamilyMatrix {
    Symbolic(HessMatrix<LaurentPoly>),
    Numeric(HessMatrix<GaussianRational>),
}

/// Result of evaluating a [`FamilyMatrix`].
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyValue {
    Symbolic(LaurentPoly),
    Numeric(GaussianRational),
}

impl fmt::Display for FamilyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyValue::Symbolic(p) => p.fmt(f),
            FamilyValue::Numeric(x) => x.fmt(f),
        }
    }
}

pub fn build_matrix(spec: FamilySpec) -> Result<FamilyMatrix> {
    if spec.family.is_symbolic() {
        build_symbolic(spec.family, spec.k, spec.n).map(FamilyMatrix::Symbolic)
    } else {
        build_numeric(spec.family, spec.k, spec.n).map(FamilyMatrix::Numeric)
    }
}

impl FamilyMatrix {
    pub fn n(&self) -> usize {
        match self {
            FamilyMatrix::Symbolic(m) => m.n(),
            FamilyMatrix::Numeric(m) => m.n(),
        }
    }

    pub fn evaluate(&self, op: MatrixOp) -> FamilyValue {
        match (self, op) {
            (FamilyMatrix::Symbolic(m), MatrixOp::Det) => FamilyValue::Symbolic(det_hessenberg(m)),
            (FamilyMatrix::Symbolic(m), MatrixOp::Per) => FamilyValue::Symbolic(per_hessenberg(m)),
            (FamilyMatrix::Numeric(m), MatrixOp::Det) => FamilyValue::Numeric(det_hessenberg(m)),
            (FamilyMatrix::Numeric(m), MatrixOp::Per) => FamilyValue::Numeric(per_hessenberg(m)),
        }
    }

    /// Entries as canonical text, row by row.
    pub fn text_rows(&self) -> Vec<Vec<String>> {
        let n = self.n();
        (1..=n)
            .map(|r| {
                (1..=n)
                    .map(|s| match self {
                        FamilyMatrix::Symbolic(m) => m.entry(r, s).to_string(),
                        FamilyMatrix::Numeric(m) => m.entry(r, s).to_string(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Rows joined by single spaces, each column padded to its widest entry.
    pub fn render_text(&self) -> String {
        let rows = self.text_rows();
        let n = rows.len();
        let widths: Vec<usize> = (0..n).map(|c| rows.iter().map(|row| row[c].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &rows {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(cell, &w)| format!("{cell:>w$}")).collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

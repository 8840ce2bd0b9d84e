//! Lower Hessenberg matrices and their determinant and permanent.
//!
//! The fast path is the forward recursion over leading principal minors:
//!
//! ```text
//! det(A_n) = a_nn det(A_{n-1}) + sum_{r=1}^{n-1} (-1)^{n-r} a_nr (prod_{j=r}^{n-1} a_{j,j+1}) det(A_{r-1})
//! per(A_n) = a_nn per(A_{n-1}) + sum_{r=1}^{n-1}            a_nr (prod_{j=r}^{n-1} a_{j,j+1}) per(A_{r-1})
//! ```
//!
//! with `det(A_0) = per(A_0) = 1`. When the matrix is banded (`a_nr = 0`
//! for `n - r >= band`) only the last `band - 1` terms of each sum can be
//! nonzero, so a full evaluation costs `O(n * band)` ring operations.
//!
//! [`SquareMatrix`] and the `*_oracle` functions are the slow, independent
//! references: Laplace expansion for the determinant, the permutation sum
//! and row/column minor expansion for the permanent.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
pub use crate::ring::OpCount;
use crate::ring::Ring;

/// Largest order the factorial-cost oracles accept by default.
pub const DEFAULT_ORACLE_BOUND: usize = 8;

type EntryRule<R> = Arc<dyn Fn(usize, usize) -> R + Send + Sync>;

/// An `n x n` lower Hessenberg matrix with entries produced on demand.
///
/// Indices are 1-based. Entries above the superdiagonal are never
/// requested from the rule; they are the ring zero.
#[derive(Clone)]
pub struct HessMatrix<R: Ring> {
    n: usize,
    one: R,
    band: Option<usize>,
    rule: EntryRule<R>,
}

impl<R: Ring> HessMatrix<R> {
    /// Builds a matrix from an entry rule. `one` is the ring identity (it
    /// fixes the ring context, e.g. the variable count of a polynomial ring).
    pub fn from_fn<F>(n: usize, one: R, rule: F) -> Self
    where
        F: Fn(usize, usize) -> R + Send + Sync + 'static,
    {
        Self { n, one, band: None, rule: Arc::new(rule) }
    }

    /// Declares that `entry(r, s) = 0` whenever `r - s >= band`. The
    /// recursions rely on this to skip terms, so it must be true of the rule.
    pub fn with_band(mut self, band: usize) -> Self {
        self.band = Some(band.max(1));
        self
    }

    /// Copies a dense matrix, checking the Hessenberg zero pattern.
    pub fn from_square(m: &SquareMatrix<R>) -> Result<Self> {
        for r in 1..=m.n() {
            for s in r + 2..=m.n() {
                if !m.entry(r, s).is_zero() {
                    return Err(Error::Argument(format!(
                        "entry ({r}, {s}) is nonzero above the superdiagonal"
                    )));
                }
            }
        }
        let dense = m.clone();
        Ok(Self::from_fn(m.n(), m.one.clone(), move |r, s| dense.entry(r, s).clone()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn band(&self) -> Option<usize> {
        self.band
    }

    pub fn one(&self) -> &R {
        &self.one
    }

    pub fn zero(&self) -> R {
        self.one.zero_like()
    }

    pub fn entry(&self, r: usize, s: usize) -> R {
        assert!(
            (1..=self.n).contains(&r) && (1..=self.n).contains(&s),
            "entry ({r}, {s}) out of range for order {}",
            self.n
        );
        let outside_band = self.band.is_some_and(|b| r >= s + b);
        if s > r + 1 || outside_band {
            self.zero()
        } else {
            (self.rule)(r, s)
        }
    }

    /// The leading principal submatrix of order `m <= n`.
    pub fn leading(&self, m: usize) -> Self {
        assert!(m <= self.n);
        Self { n: m, ..self.clone() }
    }

    /// Applies `f` to every entry, e.g. to substitute values into a
    /// symbolic matrix. The band declaration carries over.
    pub fn map<S: Ring>(&self, one: S, f: impl Fn(R) -> S + Send + Sync + 'static) -> HessMatrix<S> {
        let rule = self.rule.clone();
        HessMatrix { n: self.n, one, band: self.band, rule: Arc::new(move |r, s| f(rule(r, s))) }
    }

    pub fn to_square(&self) -> SquareMatrix<R> {
        let n = self.n;
        let data = (1..=n).flat_map(|r| (1..=n).map(move |s| (r, s))).map(|(r, s)| self.entry(r, s));
        SquareMatrix { n, one: self.one.clone(), data: data.collect() }
    }
}

impl<R: Ring> fmt::Debug for HessMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HessMatrix")
            .field("n", &self.n)
            .field("band", &self.band)
            .field("entries", &self.to_square().rows().collect::<Vec<_>>())
            .finish()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Alternating,
    Positive,
}

fn recurse<R: Ring>(a: &HessMatrix<R>, sign: Sign, truncate: bool, ops: &mut OpCount) -> R {
    // minors[m] = det/per of the leading m x m block
    let mut minors: Vec<R> = Vec::with_capacity(a.n + 1);
    minors.push(a.one.clone());
    let reach = match (truncate, a.band) {
        (true, Some(b)) => b - 1,
        _ => usize::MAX,
    };
    for m in 1..=a.n {
        let mut acc = ops.mul(a.entry(m, m), &minors[m - 1]);
        // Walk r downward so the superdiagonal product grows by one factor per step.
        let lowest = m.saturating_sub(reach).max(1);
        let mut super_prod: Option<R> = None;
        for r in (lowest..m).rev() {
            let sup = a.entry(r, r + 1);
            let prod = match super_prod.take() {
                None => sup,
                Some(p) => ops.mul(p, &sup),
            };
            let coeff = a.entry(m, r);
            if !coeff.is_zero() {
                let scaled = ops.mul(coeff, &prod);
                let term = ops.mul(scaled, &minors[r - 1]);
                acc = if sign == Sign::Alternating && (m - r) % 2 == 1 {
                    ops.sub(acc, &term)
                } else {
                    ops.add(acc, &term)
                };
            }
            super_prod = Some(prod);
        }
        minors.push(acc);
    }
    minors.pop().expect("at least the empty minor")
}

/// Determinant by the Hessenberg recursion, truncated to the declared band.
pub fn det_hessenberg<R: Ring>(a: &HessMatrix<R>) -> R {
    det_hessenberg_counted(a, &mut OpCount::default())
}

pub fn det_hessenberg_counted<R: Ring>(a: &HessMatrix<R>, ops: &mut OpCount) -> R {
    recurse(a, Sign::Alternating, true, ops)
}

/// Determinant by the recursion with every term of the inner sum kept.
pub fn det_hessenberg_untruncated<R: Ring>(a: &HessMatrix<R>) -> R {
    recurse(a, Sign::Alternating, false, &mut OpCount::default())
}

/// Permanent by the Hessenberg recursion, truncated to the declared band.
pub fn per_hessenberg<R: Ring>(a: &HessMatrix<R>) -> R {
    per_hessenberg_counted(a, &mut OpCount::default())
}

pub fn per_hessenberg_counted<R: Ring>(a: &HessMatrix<R>, ops: &mut OpCount) -> R {
    recurse(a, Sign::Positive, true, ops)
}

pub fn per_hessenberg_untruncated<R: Ring>(a: &HessMatrix<R>) -> R {
    recurse(a, Sign::Positive, false, &mut OpCount::default())
}

/// A dense square matrix over a ring, stored row-major.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<R: Ring> {
    n: usize,
    one: R,
    data: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    pub fn from_rows(one: R, rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|row| row.len() != n) {
            return Err(Error::Argument(format!("row {} has {} entries, expected {n}", bad + 1, rows[bad].len())));
        }
        Ok(Self { n, one, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(one: R, n: usize) -> Self {
        let zero = one.zero_like();
        let data = (0..n * n).map(|idx| if idx % (n + 1) == 0 { one.clone() } else { zero.clone() }).collect();
        Self { n, one, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, s: usize) -> &R {
        &self.data[(r - 1) * self.n + (s - 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    /// The matrix with row `r` and column `s` removed.
    pub fn minor(&self, r: usize, s: usize) -> Self {
        let data = (1..=self.n)
            .filter(|&i| i != r)
            .flat_map(|i| (1..=self.n).filter(move |&j| j != s).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j).clone())
            .collect();
        Self { n: self.n - 1, one: self.one.clone(), data }
    }

    pub fn transpose(&self) -> Self {
        let data = (1..=self.n)
            .flat_map(|s| (1..=self.n).map(move |r| (r, s)))
            .map(|(r, s)| self.entry(r, s).clone())
            .collect();
        Self { n: self.n, one: self.one.clone(), data }
    }
}

impl<R: Ring> fmt::Debug for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        Err(Error::OracleBound { n, bound })
    } else {
        Ok(())
    }
}

/// Determinant by first-row Laplace expansion.
pub fn det_cofactor_oracle<R: Ring>(a: &SquareMatrix<R>) -> Result<R> {
    det_cofactor_oracle_with(a, DEFAULT_ORACLE_BOUND, &mut OpCount::default())
}

pub fn det_cofactor_oracle_with<R: Ring>(a: &SquareMatrix<R>, bound: usize, ops: &mut OpCount) -> Result<R> {
    check_bound(a.n, bound)?;
    Ok(laplace(a, ops))
}

fn laplace<R: Ring>(a: &SquareMatrix<R>, ops: &mut OpCount) -> R {
    if a.n == 0 {
        return a.one.clone();
    }
    let mut acc = a.one.zero_like();
    for s in 1..=a.n {
        let x = a.entry(1, s);
        if x.is_zero() {
            continue;
        }
        let sub = laplace(&a.minor(1, s), ops);
        let term = ops.mul(x.clone(), &sub);
        acc = if s % 2 == 0 { ops.sub(acc, &term) } else { ops.add(acc, &term) };
    }
    acc
}

/// Permanent as the sum over all `n!` permutations of `prod_i a_{i, sigma(i)}`.
pub fn per_leibniz_oracle<R: Ring>(a: &SquareMatrix<R>) -> Result<R> {
    per_leibniz_oracle_with(a, DEFAULT_ORACLE_BOUND, &mut OpCount::default())
}

pub fn per_leibniz_oracle_with<R: Ring>(a: &SquareMatrix<R>, bound: usize, ops: &mut OpCount) -> Result<R> {
    check_bound(a.n, bound)?;
    let mut perm: Vec<usize> = (1..=a.n).collect();
    let mut acc = a.one.zero_like();
    // Heap's algorithm visits every permutation exactly once.
    let mut counters = vec![0usize; a.n];
    let visit = |perm: &[usize], acc: &mut R, ops: &mut OpCount| {
        let mut prod = a.one.clone();
        for (i, &s) in perm.iter().enumerate() {
            prod = ops.mul(prod, a.entry(i + 1, s));
        }
        *acc = ops.add(std::mem::replace(acc, a.one.zero_like()), &prod);
    };
    visit(&perm, &mut acc, ops);
    let mut i = 1;
    while i < a.n {
        if counters[i] < i {
            let swap_with = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(swap_with, i);
            visit(&perm, &mut acc, ops);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

/// Permanent by minor expansion along row or column `index` (1-based);
/// the minors are expanded recursively along their first row.
pub fn per_minor_expansion<R: Ring>(a: &SquareMatrix<R>, axis: Axis, index: usize) -> Result<R> {
    check_bound(a.n, DEFAULT_ORACLE_BOUND)?;
    if !(1..=a.n).contains(&index) {
        return Err(Error::Argument(format!("{axis:?} index {index} outside 1..={}", a.n)));
    }
    let mut acc = a.one.zero_like();
    for j in 1..=a.n {
        let (r, s) = match axis {
            Axis::Row => (index, j),
            Axis::Column => (j, index),
        };
        let x = a.entry(r, s);
        if !x.is_zero() {
            acc = acc + &(x.clone() * &per_first_row(&a.minor(r, s)));
        }
    }
    Ok(acc)
}

fn per_first_row<R: Ring>(a: &SquareMatrix<R>) -> R {
    if a.n == 0 {
        return a.one.clone();
    }
    let mut acc = a.one.zero_like();
    for s in 1..=a.n {
        let x = a.entry(1, s);
        if !x.is_zero() {
            acc = acc + &(x.clone() * &per_first_row(&a.minor(1, s)));
        }
    }
    acc
}

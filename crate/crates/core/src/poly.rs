//! Sparse multivariate Laurent polynomials in `t1..tk` over the Gaussian
//! rationals.
//!
//! Terms are kept in a map keyed by [`MultiIndex`] whose ordering is the
//! canonical display order: higher total degree first, ties broken by the
//! exponent vector in descending lexicographic order. Zero coefficients are
//! never stored, so two polynomials are equal exactly when their term maps
//! are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, parse_rational, GaussianRational};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Exponent vector; position `j - 1` holds the exponent of `tj`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(exps: Vec<i64>) -> Self {
        Self(exps)
    }

    pub fn zeros(k: usize) -> Self {
        Self(vec![0; k])
    }

    /// Exponent `exp` on the single variable `t{var}` (1-based).
    pub fn unit(k: usize, var: usize, exp: i64) -> Self {
        let mut exps = vec![0; k];
        exps[var - 1] = exp;
        Self(exps)
    }

    pub fn exps(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Degree with `tj` weighted by `j`.
    pub fn weighted_degree(&self) -> i64 {
        self.0.iter().zip(1..).map(|(e, j)| e * j).sum()
    }

    fn combine(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for MultiIndex {
    // Canonical terms sort first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A Laurent polynomial in `k` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    k: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl LaurentPoly {
    pub fn zero(k: usize) -> Self {
        Self { k, terms: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, GaussianRational::one())
    }

    pub fn constant(k: usize, c: GaussianRational) -> Self {
        Self::monomial(k, c, MultiIndex::zeros(k))
    }

    /// The variable `t{var}`, `1 <= var <= k`.
    pub fn var(k: usize, var: usize) -> Self {
        assert!((1..=k).contains(&var), "t{var} is not one of t1..t{k}");
        Self::monomial(k, GaussianRational::one(), MultiIndex::unit(k, var, 1))
    }

    /// Single term `coeff * t^exps`; the zero polynomial when `coeff = 0`.
    pub fn monomial(k: usize, coeff: GaussianRational, exps: MultiIndex) -> Self {
        assert_eq!(exps.len(), k, "exponent vector length must equal k");
        let mut p = Self::zero(k);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// Builds a polynomial from (possibly repeated, possibly zero) terms.
    pub fn from_terms(
        k: usize,
        terms: impl IntoIterator<Item = (MultiIndex, GaussianRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(k);
        for (exps, c) in terms {
            if exps.len() != k {
                return Err(Error::DimensionMismatch { left: k, right: exps.len() });
            }
            p.accumulate(exps, c);
        }
        Ok(p)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &MultiIndex) -> GaussianRational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.exps().iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// True iff no term carries a negative exponent.
    pub fn is_true_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.exps().iter().all(|&x| x >= 0))
    }

    /// True iff every coefficient is a real integer `>= 0`.
    pub fn has_nonnegative_integer_coeffs(&self) -> bool {
        self.terms.values().all(GaussianRational::is_nonnegative_integer)
    }

    /// The set of isobaric weights `sum_j j * e_j` over all terms.
    pub fn weighted_degree_set(&self) -> BTreeSet<i64> {
        self.terms.keys().map(MultiIndex::weighted_degree).collect()
    }

    fn accumulate(&mut self, exps: MultiIndex, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_k(&self, other: &Self) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.k, right: other.k })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_k(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_k(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_k(other)?;
        let mut out = Self::zero(self.k);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.accumulate(ea.combine(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.k);
        }
        Self {
            k: self.k,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Substitutes `t_j = assignment[j - 1]` for every variable.
    pub fn evaluate(&self, assignment: &[GaussianRational]) -> Result<GaussianRational> {
        if assignment.len() != self.k {
            return Err(Error::DimensionMismatch { left: self.k, right: assignment.len() });
        }
        let mut total = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (j, (&exp, value)) in e.exps().iter().zip(assignment).enumerate() {
                if exp == 0 {
                    continue;
                }
                let factor = value.pow(exp).map_err(|_| Error::Evaluation { var: j + 1 })?;
                term = &term * &factor;
            }
            total = &total + &term;
        }
        Ok(total)
    }

    /// Parses the canonical text form (and the looser forms a person would
    /// type): sums of `coeff*t1^a*t2^b` terms with rational or `i` factors,
    /// parenthesized sub-expressions and signed exponents.
    pub fn parse(k: usize, s: &str) -> Result<Self> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0, k };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exps: e.exps().to_vec(),
                    re: format_rational(c.re()),
                    im: format_rational(c.im()),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let c = GaussianRational::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
                Ok((MultiIndex::new(t.exps.clone()), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(json.k, terms)
    }
}

/// JSON form of a polynomial: coefficients travel as exact `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<i64>,
    pub re: String,
    pub im: String,
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &MultiIndex) -> fmt::Result {
    let mut first = true;
    for (j, &exp) in e.exps().iter().enumerate() {
        if exp == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "t{}", j + 1)?;
        if exp != 1 {
            write!(f, "^{exp}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let is_const = e.exps().iter().all(|&x| x == 0);
            // Pull a leading minus out of purely real or purely imaginary coefficients.
            let (negative, shown) = if c.im().is_zero() && c.re().is_negative()
                || c.re().is_zero() && c.im().is_negative()
            {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff = if shown.im().is_zero() {
                let r = format_rational(shown.re());
                (!shown.re().is_one() || is_const).then_some(r)
            } else if shown.re().is_zero() {
                Some(if shown.im().is_one() {
                    "i".to_string()
                } else {
                    format!("{}*i", format_rational(shown.im()))
                })
            } else {
                Some(format!("({shown})"))
            };
            if let Some(coeff) = coeff {
                f.write_str(&coeff)?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            write_monomial(f, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[k={}]({self})", self.k)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    k: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.k);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let term = self.term()?;
            acc = if negate { acc.checked_sub(&term)? } else { acc.checked_add(&term)? };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(LaurentPoly::constant(self.k, GaussianRational::i()))
            }
            Some(b't') => {
                self.pos += 1;
                let var: usize = self.digits()?.parse().map_err(|_| self.error("bad index"))?;
                if var == 0 || var > self.k {
                    return Err(self.error(&format!("t{var} is not one of t1..t{}", self.k)));
                }
                let mut exp = 1i64;
                if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    let d: i64 = self.digits()?.parse().map_err(|_| self.error("bad exponent"))?;
                    exp = if neg { -d } else { d };
                }
                Ok(LaurentPoly::monomial(
                    self.k,
                    GaussianRational::one(),
                    MultiIndex::unit(self.k, var, exp),
                ))
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.digits()?.to_string();
                let text = if self.eat(b'/') {
                    format!("{numer}/{}", self.digits()?)
                } else {
                    numer
                };
                let q = parse_rational(&text)?;
                Ok(LaurentPoly::constant(self.k, GaussianRational::from_rational(q)))
            }
            _ => Err(self.error("expected a coefficient, 'i', a variable or '('")),
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    /// Panics on a variable count mismatch; see [`LaurentPoly::checked_add`].
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly add")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly sub")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly mul")
    }
}

impl<'a> Add<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.check_k(rhs).expect("LaurentPoly add");
        for (e, c) in &rhs.terms {
            self.accumulate(e.clone(), c.clone());
        }
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.check_k(rhs).expect("LaurentPoly sub");
        for (e, c) in &rhs.terms {
            self.accumulate(e.clone(), -c);
        }
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.k)
    }

    fn one_like(&self) -> Self {
        Self::one(self.k)
    }

    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

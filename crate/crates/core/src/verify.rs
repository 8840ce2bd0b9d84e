//! Identity verification over a grid of `(family, k, n)`.
//!
//! For every symbolic family the harness checks that the determinant or
//! permanent equals `F_{k,n+1}`, that all negative `t2` powers cancelled,
//! that the recursion agrees with the brute-force oracle, and that the
//! integer specializations hold. Numeric families are checked against
//! Miles' numbers, and each `k` also gets the specialization clauses of
//! [`specialization_check`](crate::sequences::specialization_check).
//!
//! Cases are independent; they may run on a thread pool, and the report
//! keeps grid order either way, so output does not depend on the thread count.

use std::fmt::{self, Write as _};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::families::{build_numeric, symbolic_entry, Family, MatrixOp};
use crate::hessenberg::{
    det_cofactor_oracle, det_hessenberg, per_hessenberg, per_leibniz_oracle, HessMatrix, DEFAULT_ORACLE_BOUND,
};
use crate::poly::LaurentPoly;
use crate::sequences::{
    self, er, fib_poly_table, miles, ones_point, pell, pell_point, random_rational_point, van_der_laan,
    van_der_laan_point, Clause,
};

/// Deliberate corruptions used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Negates the superdiagonal of `Q` (turning `i*t2` into `-i*t2`).
    FlipQSuperdiagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub n_max: usize,
    pub families: Vec<Family>,
    pub seed: u64,
    /// Worker threads; `1` runs everything on the calling thread.
    pub jobs: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            k_min: 2,
            k_max: 5,
            n_max: 8,
            families: Family::ALL.to_vec(),
            seed: sequences::DEFAULT_SEED,
            jobs: 1,
            fault: None,
        }
    }
}

impl VerifyConfig {
    fn validate(&self) -> Result<()> {
        if self.k_min < 2 || self.k_min > self.k_max {
            return Err(Error::Parameter(format!(
                "need 2 <= k_min <= k_max, got k_min = {}, k_max = {}",
                self.k_min, self.k_max
            )));
        }
        if self.n_max < 1 {
            return Err(Error::Parameter("n_max must be at least 1".into()));
        }
        if self.families.is_empty() {
            return Err(Error::Parameter("no families selected".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// A published identity that does not hold as stated, recorded next to
    /// the corrected form it is checked against. Not counted as a failure.
    Discrepancy,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Discrepancy => "NOTE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    /// `None` for checks on the polynomials alone.
    pub family: Option<Family>,
    pub k: usize,
    pub n: usize,
    pub identity: String,
    pub outcome: Outcome,
    /// Mismatch details; empty on a pass.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstFailure {
    pub family: Option<Family>,
    pub k: usize,
    pub n: usize,
    pub identity: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
    pub first_failure: Option<FirstFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub records: Vec<CaseRecord>,
    pub summary: Summary,
}

impl VerifyReport {
    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn records_for<'a>(&'a self, identity: &'a str) -> impl Iterator<Item = &'a CaseRecord> {
        self.records.iter().filter(move |r| r.identity == identity)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let family = r.family.map_or_else(|| "-".to_string(), |f| f.to_string());
            let _ = write!(out, "{} {family} k={} n={} {}", r.outcome, r.k, r.n, r.identity);
            if !r.detail.is_empty() {
                let _ = write!(out, " [{}]", r.detail);
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(out, "summary: {} pass, {} fail, {} discrepancy", s.pass, s.fail, s.discrepancy);
        if let Some(first) = &s.first_failure {
            let family = first.family.map_or_else(|| "-".to_string(), |f| f.to_string());
            let _ = writeln!(out, "first failure: {family} k={} n={} {}", first.k, first.n, first.identity);
        }
        out
    }
}

fn symbolic_matrix(family: Family, k: usize, n: usize, fault: Option<Fault>) -> HessMatrix<LaurentPoly> {
    let flip = family == Family::Q && fault == Some(Fault::FlipQSuperdiagonal);
    HessMatrix::from_fn(n, LaurentPoly::one(k), move |r, s| {
        let e = symbolic_entry(family, k, r, s).expect("symbolic family");
        if flip && s == r + 1 {
            -e
        } else {
            e
        }
    })
    .with_band(k)
}

fn op_name(family: Family) -> &'static str {
    match family.natural_op() {
        MatrixOp::Det => "det",
        MatrixOp::Per => "per",
    }
}

struct Ctx<'a> {
    k: usize,
    table: &'a [LaurentPoly],
    fault: Option<Fault>,
    seed: u64,
}

struct Recorder {
    family: Option<Family>,
    k: usize,
    n: usize,
    records: Vec<CaseRecord>,
}

impl Recorder {
    fn check(&mut self, identity: String, holds: bool, detail: impl FnOnce() -> String) {
        self.push(identity, if holds { Outcome::Pass } else { Outcome::Fail }, holds, detail);
    }

    /// Like [`check`](Self::check) but a mismatch is a documented discrepancy.
    fn note(&mut self, identity: String, holds: bool, detail: impl FnOnce() -> String) {
        self.push(identity, if holds { Outcome::Pass } else { Outcome::Discrepancy }, holds, detail);
    }

    fn push(&mut self, identity: String, outcome: Outcome, holds: bool, detail: impl FnOnce() -> String) {
        self.records.push(CaseRecord {
            family: self.family,
            k: self.k,
            n: self.n,
            identity,
            outcome,
            detail: if holds { String::new() } else { detail() },
        });
    }

    fn error(&mut self, identity: String, e: Error) {
        self.push(identity, Outcome::Fail, false, || e.to_string());
    }
}

fn mismatch(got: &impl fmt::Display, want: &impl fmt::Display) -> String {
    format!("got {got}, expected {want}")
}

fn symbolic_case(ctx: &Ctx<'_>, family: Family, n: usize) -> Vec<CaseRecord> {
    let k = ctx.k;
    let mut rec = Recorder { family: Some(family), k, n, records: Vec::new() };
    let m = symbolic_matrix(family, k, n, ctx.fault);
    let op = op_name(family);
    let value = match family.natural_op() {
        MatrixOp::Det => det_hessenberg(&m),
        MatrixOp::Per => per_hessenberg(&m),
    };
    let want = &ctx.table[n + 1];
    rec.check(format!("{op}({family}_k,n) = F(k,n+1)"), &value == want, || mismatch(&value, want));
    rec.check(
        format!("{op}({family}_k,n) is a polynomial with natural coefficients"),
        value.is_true_polynomial() && value.has_nonnegative_integer_coeffs(),
        || format!("got {value}"),
    );

    if n <= DEFAULT_ORACLE_BOUND {
        let dense = m.to_square();
        let (oracle, name) = match family.natural_op() {
            MatrixOp::Det => (det_cofactor_oracle(&dense), "cofactor"),
            MatrixOp::Per => (per_leibniz_oracle(&dense), "leibniz"),
        };
        let identity = format!("{op}({family}_k,n) recursion = {name} oracle");
        match oracle {
            Ok(o) => rec.check(identity, o == value, || mismatch(&value, &o)),
            Err(e) => rec.error(identity, e),
        }
    }

    // Integer specializations of the symbolic result.
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ ((k as u64) << 32) ^ n as u64 ^ ((family as u64) << 48));
    let c = random_rational_point(k, &mut rng);
    let n_i = n as i64;
    let specializations: [(String, &[GaussianRational], Result<GaussianRational>, bool); 4] = [
        (format!("{op}({family}_k,n)(c) = er(k,1,n,c)"), &c, er(k, 1, n_i, &c), false),
        (format!("{op}({family}_k,n)(2,1..1) = pell(k,k,n+1)"), &pell_point(k), pell(k, k, n_i + 1).map(Into::into), false),
        (
            format!("{op}({family}_k,n)(0,1..1) = van_der_laan(k,k,n+1)"),
            &van_der_laan_point(k),
            van_der_laan(k, k, n_i + 1).map(Into::into),
            true,
        ),
        (
            format!("{op}({family}_k,n)(0,1..1) = van_der_laan(k,k,n)"),
            &van_der_laan_point(k),
            van_der_laan(k, k, n_i).map(Into::into),
            false,
        ),
    ];
    for (identity, point, expected, stated_only) in specializations {
        match value.evaluate(point).and_then(|got| expected.map(|want| (got, want))) {
            Ok((got, want)) => {
                let holds = got == want;
                if stated_only {
                    rec.note(identity, holds, || mismatch(&got, &want));
                } else {
                    rec.check(identity, holds, || mismatch(&got, &want));
                }
            }
            Err(e) => rec.error(identity, e),
        }
    }

    if family == Family::H {
        // H at all ones, evaluated as a numeric matrix.
        let numeric = m.map(GaussianRational::one(), move |p| {
            p.evaluate(&ones_point(k)).expect("band entries have no zero denominators at t = 1")
        });
        let got = per_hessenberg(&numeric);
        let identity = "per(H_k,n(1..1)) = miles(k,k+n-1)".to_string();
        match miles(k, (k + n) as i64 - 1) {
            Ok(want) => {
                let want = GaussianRational::from(want);
                rec.check(identity, got == want, || mismatch(&got, &want));
            }
            Err(e) => rec.error(identity, e),
        }
    }
    rec.records
}

fn numeric_case(ctx: &Ctx<'_>, family: Family, n: usize) -> Vec<CaseRecord> {
    let k = ctx.k;
    let mut rec = Recorder { family: Some(family), k, n, records: Vec::new() };
    let op = op_name(family);
    let m = match build_numeric(family, k, n) {
        Ok(m) => m,
        Err(e) => {
            rec.error(format!("build {family}_k,n"), e);
            return rec.records;
        }
    };
    let value = match family.natural_op() {
        MatrixOp::Det => det_hessenberg(&m),
        MatrixOp::Per => per_hessenberg(&m),
    };
    let identity = format!("{op}({family}_k,n) = miles(k,k+n-1)");
    match miles(k, (k + n) as i64 - 1) {
        Ok(want) => {
            let want = GaussianRational::from(want);
            rec.check(identity, value == want, || mismatch(&value, &want));
        }
        Err(e) => rec.error(identity, e),
    }
    if n <= DEFAULT_ORACLE_BOUND {
        let dense = m.to_square();
        let oracle = match family.natural_op() {
            MatrixOp::Det => det_cofactor_oracle(&dense),
            MatrixOp::Per => per_leibniz_oracle(&dense),
        };
        let identity = format!("{op}({family}_k,n) recursion = oracle");
        match oracle {
            Ok(o) => rec.check(identity, o == value, || mismatch(&value, &o)),
            Err(e) => rec.error(identity, e),
        }
    }
    rec.records
}

fn polynomial_case(ctx: &Ctx<'_>, n: usize, specs: &sequences::SpecializationReport) -> Vec<CaseRecord> {
    let mut rec = Recorder { family: None, k: ctx.k, n, records: Vec::new() };
    let f = &ctx.table[n];
    let weights = f.weighted_degree_set();
    rec.check(
        "F(k,n) is isobaric of weight n-1".to_string(),
        weights.len() == 1 && weights.contains(&(n as i64 - 1)),
        || format!("weights {weights:?}"),
    );
    for outcome in specs.outcomes.iter().filter(|o| o.n == n as i64) {
        let identity = outcome.clause.describe().to_string();
        let detail = || mismatch(&outcome.lhs, &outcome.rhs);
        if outcome.clause == Clause::VanDerLaanStated {
            rec.note(identity, outcome.holds, detail);
        } else {
            rec.check(identity, outcome.holds, detail);
        }
    }
    rec.records
}

#[derive(Clone, Copy)]
enum Case {
    Polynomial { n: usize },
    Family { family: Family, n: usize },
}

/// Runs the identity suite described by `config`.
pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    config.validate()?;
    let mut families = config.families.clone();
    families.sort();
    families.dedup();

    let mut records = Vec::new();
    for k in config.k_min..=config.k_max {
        let table = fib_poly_table(k, config.n_max + 1)?;
        let specs = sequences::specialization_check_seeded(k, config.n_max as i64, config.seed)?;
        let ctx = Ctx { k, table: &table, fault: config.fault, seed: config.seed };
        let cases: Vec<Case> = (1..=config.n_max)
            .map(|n| Case::Polynomial { n })
            .chain(families.iter().flat_map(|&family| (0..=config.n_max).map(move |n| Case::Family { family, n })))
            .collect();
        let run = |case: &Case| match *case {
            Case::Polynomial { n } => polynomial_case(&ctx, n, &specs),
            Case::Family { family, n } if family.is_symbolic() => symbolic_case(&ctx, family, n),
            Case::Family { family, n } => numeric_case(&ctx, family, n),
        };
        let per_case: Vec<Vec<CaseRecord>> = if config.jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(config.jobs)
                .build()
                .map_err(|e| Error::Argument(e.to_string()))?;
            pool.install(|| cases.par_iter().map(run).collect())
        } else {
            cases.iter().map(run).collect()
        };
        records.extend(per_case.into_iter().flatten());
    }

    let mut summary = Summary::default();
    for r in &records {
        match r.outcome {
            Outcome::Pass => summary.pass += 1,
            Outcome::Fail => {
                summary.fail += 1;
                if summary.first_failure.is_none() {
                    summary.first_failure =
                        Some(FirstFailure { family: r.family, k: r.k, n: r.n, identity: r.identity.clone() });
                }
            }
            Outcome::Discrepancy => summary.discrepancy += 1,
        }
    }
    Ok(VerifyReport { config: config.clone(), records, summary })
}

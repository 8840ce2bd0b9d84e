//! Cost of the banded recursions against the brute-force oracles.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{build_symbolic, Family};
use crate::hessenberg::{
    det_cofactor_oracle_with, det_hessenberg_counted, per_hessenberg_counted, per_leibniz_oracle_with, OpCount,
    DEFAULT_ORACLE_BOUND,
};

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub ops: u64,
    pub micros: u128,
}

impl Timing {
    fn new(ops: OpCount, elapsed: Duration) -> Self {
        Self { ops: ops.total(), micros: elapsed.as_micros() }
    }
}

/// One row: `det(Q_{k,n})` and `per(L_{k,n})` by recursion, and by oracle
/// when `n` is within the oracle bound.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub det_recursion: Timing,
    pub det_oracle: Option<Timing>,
    pub per_recursion: Timing,
    pub per_oracle: Option<Timing>,
}

pub fn bench(k: usize, n_max: usize) -> Result<Vec<BenchRow>> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let q = build_symbolic(Family::Q, k, n)?;
        let l = build_symbolic(Family::L, k, n)?;

        let mut ops = OpCount::default();
        let start = Instant::now();
        det_hessenberg_counted(&q, &mut ops);
        let det_recursion = Timing::new(ops, start.elapsed());

        let mut ops = OpCount::default();
        let start = Instant::now();
        per_hessenberg_counted(&l, &mut ops);
        let per_recursion = Timing::new(ops, start.elapsed());

        let (det_oracle, per_oracle) = if n <= DEFAULT_ORACLE_BOUND {
            let (qd, ld) = (q.to_square(), l.to_square());
            let mut ops = OpCount::default();
            let start = Instant::now();
            det_cofactor_oracle_with(&qd, DEFAULT_ORACLE_BOUND, &mut ops)?;
            let det = Timing::new(ops, start.elapsed());
            let mut ops = OpCount::default();
            let start = Instant::now();
            per_leibniz_oracle_with(&ld, DEFAULT_ORACLE_BOUND, &mut ops)?;
            (Some(det), Some(Timing::new(ops, start.elapsed())))
        } else {
            (None, None)
        };
        rows.push(BenchRow { n, det_recursion, det_oracle, per_recursion, per_oracle });
    }
    Ok(rows)
}

pub fn render_table(k: usize, rows: &[BenchRow]) -> String {
    let cell = |t: &Option<Timing>| t.as_ref().map_or_else(|| "-".to_string(), |t| format!("{}/{}us", t.ops, t.micros));
    let mut out = format!(
        "# k = {k}; cells are ring ops / wall time\n{:>4} {:>18} {:>18} {:>18} {:>18}\n",
        "n", "det recursion", "det cofactor", "per recursion", "per leibniz"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>4} {:>18} {:>18} {:>18} {:>18}",
            r.n,
            cell(&Some(r.det_recursion.clone())),
            cell(&r.det_oracle),
            cell(&Some(r.per_recursion.clone())),
            cell(&r.per_oracle),
        );
    }
    out
}

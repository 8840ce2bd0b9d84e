//! Order-k recurrence sequences and the generalized Fibonacci polynomials.
//!
//! * `miles(k, n)`: `f_n = f_{n-1} + ... + f_{n-k}` with boundary
//!   `f_1 = ... = f_{k-2} = 0`, `f_{k-1} = f_k = 1`.
//! * `er(k, i, n, c)`: `f_n = c_1 f_{n-1} + ... + c_k f_{n-k}` for `n > 0`,
//!   with `f_n = [i = 1 - n]` for `1 - k <= n <= 0`.
//! * `pell(k, i, n)`: coefficients `(2, 1, ..., 1)`, same initial values as Er.
//! * `van_der_laan(k, i, n)`: coefficients `(0, 1, ..., 1)`, initial values
//!   `v_n = [i - n = k]`.
//! * `fib_poly(k, n)`: `F_n = 0` for `n < 1`, `F_1 = 1`,
//!   `F_{n+1} = t1 F_n + ... + tk F_{n-k+1}`.
//!
//! All of them are computed iteratively over a window of the last `k` values.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{rational, GaussianRational};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::ring::Ring;

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Parameter(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn check_i(k: usize, i: usize) -> Result<()> {
    if !(1..=k).contains(&i) {
        return Err(Error::Argument(format!("sequence index i = {i} outside 1..={k}")));
    }
    Ok(())
}

fn check_n(k: usize, n: i64) -> Result<()> {
    if n < 1 - k as i64 {
        return Err(Error::Argument(format!("n = {n} is below the first defined index {}", 1 - k as i64)));
    }
    Ok(())
}

/// Runs `x_n = sum_j coeffs[j-1] * x_{n-j}` forward from the `k` values
/// `initial = [x_{1-k}, ..., x_0]` and returns `x_n` for `n >= 1 - k`.
fn run_recurrence<R: Ring>(coeffs: &[R], initial: Vec<R>, n: i64) -> R {
    let k = coeffs.len();
    debug_assert_eq!(initial.len(), k);
    if n <= 0 {
        return initial[(n + k as i64 - 1) as usize].clone();
    }
    // window[0] is the most recent value
    let mut window: VecDeque<R> = initial.into_iter().rev().collect();
    for _ in 0..n {
        let zero = window[0].zero_like();
        let next = coeffs.iter().zip(&window).fold(zero, |acc, (c, x)| acc + &(c.clone() * x));
        window.pop_back();
        window.push_front(next);
    }
    window.pop_front().expect("window of length k >= 2")
}

fn indicator(k: usize, hot: impl Fn(i64) -> bool) -> Vec<GaussianRational> {
    (1 - k as i64..=0)
        .map(|n| if hot(n) { GaussianRational::one() } else { GaussianRational::zero() })
        .collect()
}

/// `F_{k,n}(t)` as a polynomial in `t1..tk`.
pub fn fib_poly(k: usize, n: i64) -> Result<LaurentPoly> {
    Ok(fib_poly_table(k, n.max(0) as usize)?.swap_remove(n.max(0) as usize))
}

/// `[F_{k,0}, F_{k,1}, ..., F_{k,n_max}]`.
pub fn fib_poly_table(k: usize, n_max: usize) -> Result<Vec<LaurentPoly>> {
    check_k(k)?;
    let vars: Vec<LaurentPoly> = (1..=k).map(|j| LaurentPoly::var(k, j)).collect();
    let mut table = vec![LaurentPoly::zero(k)];
    for n in 1..=n_max {
        let next = if n == 1 {
            LaurentPoly::one(k)
        } else {
            // F_n = sum_j t_j F_{n-j}, with F_{<1} = 0
            vars.iter()
                .zip((1..n).rev())
                .fold(LaurentPoly::zero(k), |acc, (t, prev)| acc + &(t * &table[prev]))
        };
        table.push(next);
    }
    Ok(table)
}

/// Miles' generalized order-k Fibonacci number `f_{k,n}`, `n >= 1`.
pub fn miles(k: usize, n: i64) -> Result<BigInt> {
    check_k(k)?;
    if n < 1 {
        return Err(Error::Parameter(format!("n must be at least 1, got {n}")));
    }
    let k_i = k as i64;
    if n <= k_i {
        return Ok(if n >= k_i - 1 { BigInt::one() } else { BigInt::zero() });
    }
    let mut window: VecDeque<BigInt> =
        (1..=k_i).map(|j| if j >= k_i - 1 { BigInt::one() } else { BigInt::zero() }).collect();
    let mut sum: BigInt = window.iter().sum();
    for _ in k_i..n {
        let next = sum.clone();
        sum += &next;
        sum -= window.pop_front().expect("window");
        window.push_back(next);
    }
    Ok(window.pop_back().expect("window"))
}

/// Er's `f^i_{k,n}` for numeric coefficients `c_1..c_k`.
pub fn er(k: usize, i: usize, n: i64, coeffs: &[GaussianRational]) -> Result<GaussianRational> {
    check_k(k)?;
    check_i(k, i)?;
    check_n(k, n)?;
    if coeffs.len() != k {
        return Err(Error::Argument(format!("expected {k} coefficients, got {}", coeffs.len())));
    }
    let init = indicator(k, |m| i as i64 == 1 - m);
    Ok(run_recurrence(coeffs, init, n))
}

fn integer_sequence(coeffs: Vec<GaussianRational>, init: Vec<GaussianRational>, n: i64) -> BigInt {
    run_recurrence(&coeffs, init, n).to_integer().expect("integer recurrence")
}

/// Kilic–Tasci k-sequences of generalized order-k Pell numbers, `p^i_{k,n}`.
pub fn pell(k: usize, i: usize, n: i64) -> Result<BigInt> {
    check_k(k)?;
    check_i(k, i)?;
    check_n(k, n)?;
    let coeffs = pell_point(k);
    Ok(integer_sequence(coeffs, indicator(k, |m| i as i64 == 1 - m), n))
}

/// Van der Laan k-sequences `v^i_{k,n}`.
pub fn van_der_laan(k: usize, i: usize, n: i64) -> Result<BigInt> {
    check_k(k)?;
    check_i(k, i)?;
    check_n(k, n)?;
    let coeffs = van_der_laan_point(k);
    Ok(integer_sequence(coeffs, indicator(k, |m| i as i64 - m == k as i64), n))
}

/// `(2, 1, ..., 1)`.
pub fn pell_point(k: usize) -> Vec<GaussianRational> {
    (1..=k).map(|j| GaussianRational::from_integer(if j == 1 { 2 } else { 1 })).collect()
}

/// `(0, 1, ..., 1)`.
pub fn van_der_laan_point(k: usize) -> Vec<GaussianRational> {
    (1..=k).map(|j| GaussianRational::from_integer(if j == 1 { 0 } else { 1 })).collect()
}

pub fn ones_point(k: usize) -> Vec<GaussianRational> {
    vec![GaussianRational::one(); k]
}

/// `k` random nonzero rationals with small numerators and denominators.
pub fn random_rational_point(k: usize, rng: &mut impl Rng) -> Vec<GaussianRational> {
    (0..k)
        .map(|_| {
            let mut numer = 0;
            while numer == 0 {
                numer = rng.gen_range(-9..=9);
            }
            GaussianRational::from_rational(rational(numer, rng.gen_range(1..=7)))
        })
        .collect()
}

/// Which recurrence a [`SeqSpec`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeqKind {
    Miles,
    Er,
    Pell,
    VanDerLaan,
    FibPoly,
}

/// One sequence with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqSpec {
    pub kind: SeqKind,
    pub k: usize,
    pub i: usize,
    /// Er's `c_1..c_k`; ignored by the other kinds.
    pub coeffs: Vec<GaussianRational>,
}

impl SeqSpec {
    /// First index at which the sequence is defined.
    pub fn first_index(&self) -> i64 {
        match self.kind {
            SeqKind::Miles => 1,
            SeqKind::FibPoly => 0,
            SeqKind::Er | SeqKind::Pell | SeqKind::VanDerLaan => 1 - self.k as i64,
        }
    }

    /// The `n`-th term, rendered as text.
    pub fn term(&self, n: i64) -> Result<String> {
        Ok(match self.kind {
            SeqKind::Miles => miles(self.k, n)?.to_string(),
            SeqKind::Er => er(self.k, self.i, n, &self.coeffs)?.to_string(),
            SeqKind::Pell => pell(self.k, self.i, n)?.to_string(),
            SeqKind::VanDerLaan => van_der_laan(self.k, self.i, n)?.to_string(),
            SeqKind::FibPoly => fib_poly(self.k, n)?.to_string(),
        })
    }
}

/// The specialization identities relating `F_{k,n}` to the integer sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `F_{k,n}(c) = f^1_{k,n-1}` at a random rational point `c`.
    ErAtRandomPoint,
    /// `F_{k,n}(2,1,...,1) = p^k_{k,n}`.
    PellAtTwoOnes,
    /// `F_{k,n}(0,1,...,1) = v^k_{k,n}`, the shift as originally stated.
    VanDerLaanStated,
    /// `F_{k,n}(0,1,...,1) = v^k_{k,n-1}`.
    VanDerLaanShifted,
    /// `F_{k,n}(1,...,1) = f_{k,k+n-2}`.
    MilesAtOnes,
}

impl Clause {
    pub const ALL: [Clause; 5] = [
        Clause::ErAtRandomPoint,
        Clause::PellAtTwoOnes,
        Clause::VanDerLaanStated,
        Clause::VanDerLaanShifted,
        Clause::MilesAtOnes,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            Clause::ErAtRandomPoint => "F(k,n)(c) = er(k,1,n-1,c)",
            Clause::PellAtTwoOnes => "F(k,n)(2,1..1) = pell(k,k,n)",
            Clause::VanDerLaanStated => "F(k,n)(0,1..1) = van_der_laan(k,k,n)",
            Clause::VanDerLaanShifted => "F(k,n)(0,1..1) = van_der_laan(k,k,n-1)",
            Clause::MilesAtOnes => "F(k,n)(1..1) = miles(k,k+n-2)",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseOutcome {
    pub clause: Clause,
    pub n: i64,
    pub holds: bool,
    /// Left side (the specialized polynomial).
    pub lhs: String,
    /// Right side (the sequence term).
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationReport {
    pub k: usize,
    pub n_max: i64,
    pub outcomes: Vec<ClauseOutcome>,
}

impl SpecializationReport {
    pub fn all_hold(&self, clause: Clause) -> bool {
        self.outcomes.iter().filter(|o| o.clause == clause).all(|o| o.holds)
    }

    /// Smallest `n` at which `clause` fails.
    pub fn first_failure(&self, clause: Clause) -> Option<i64> {
        self.outcomes.iter().find(|o| o.clause == clause && !o.holds).map(|o| o.n)
    }
}

/// Default seed for the random evaluation points.
pub const DEFAULT_SEED: u64 = 0x5eed_f1b0;

/// Checks every specialization clause for `n` in `1..=n_max`.
pub fn specialization_check(k: usize, n_max: i64) -> Result<SpecializationReport> {
    specialization_check_seeded(k, n_max, DEFAULT_SEED)
}

pub fn specialization_check_seeded(k: usize, n_max: i64, seed: u64) -> Result<SpecializationReport> {
    check_k(k)?;
    if n_max < 1 {
        return Err(Error::Parameter(format!("n_max must be at least 1, got {n_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ k as u64);
    let table = fib_poly_table(k, n_max as usize)?;
    let k_i = k as i64;
    let mut outcomes = Vec::new();
    for n in 1..=n_max {
        let f = &table[n as usize];
        let c = random_rational_point(k, &mut rng);
        for clause in Clause::ALL {
            let (lhs, rhs) = match clause {
                Clause::ErAtRandomPoint => (f.evaluate(&c)?, er(k, 1, n - 1, &c)?),
                Clause::PellAtTwoOnes => (f.evaluate(&pell_point(k))?, pell(k, k, n)?.into()),
                Clause::VanDerLaanStated => (f.evaluate(&van_der_laan_point(k))?, van_der_laan(k, k, n)?.into()),
                Clause::VanDerLaanShifted => {
                    (f.evaluate(&van_der_laan_point(k))?, van_der_laan(k, k, n - 1)?.into())
                }
                Clause::MilesAtOnes => (f.evaluate(&ones_point(k))?, miles(k, k_i + n - 2)?.into()),
            };
            outcomes.push(ClauseOutcome {
                clause,
                n,
                holds: lhs == rhs,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(SpecializationReport { k, n_max, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: usize, s: &str) -> LaurentPoly {
        LaurentPoly::parse(k, s).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn fib_poly_examples() {
        assert_eq!(fib_poly(4, 5).unwrap(), p(4, "t4+2*t1*t3+t2^2+t1^4+3*t1^2*t2"));
        assert_eq!(
            fib_poly(5, 7).unwrap(),
            p(5, "2*t1*t5+2*t2*t4+6*t1*t2*t3+t2^3+t3^2+t1^6+3*t1^2*t4+4*t1^3*t3+5*t1^4*t2+6*t1^2*t2^2")
        );
        assert_eq!(
            fib_poly(5, 6).unwrap(),
            p(5, "t1^5+4*t1^3*t2+3*t1^2*t3+3*t1*t2^2+2*t1*t4+2*t2*t3+t5")
        );
        assert!(fib_poly(3, 0).unwrap().is_zero());
        assert!(fib_poly(3, -4).unwrap().is_zero());
        assert_eq!(fib_poly(3, 1).unwrap(), LaurentPoly::one(3));
        assert_eq!(fib_poly(3, 2).unwrap(), p(3, "t1"));
        assert!(matches!(fib_poly(1, 3), Err(Error::Parameter(_))));
    }

    #[test]
    fn miles_examples() {
        assert_eq!(miles(2, 6).unwrap(), int(8));
        assert_eq!(miles(3, 6).unwrap(), int(7));
        assert_eq!(miles(4, 3).unwrap(), int(1));
        assert_eq!(miles(4, 1).unwrap(), int(0));
        // tribonacci 0,1,1,2,4,7,13,24
        let tri: Vec<_> = (1..=8).map(|n| miles(3, n).unwrap()).collect();
        assert_eq!(tri, [0, 1, 1, 2, 4, 7, 13, 24].map(int));
        assert!(miles(3, 0).is_err());
        assert!(miles(1, 4).is_err());
    }

    #[test]
    fn er_examples() {
        let any = ones_point(3);
        assert_eq!(er(3, 2, -1, &any).unwrap(), GaussianRational::one());
        assert_eq!(er(2, 1, 2, &ones_point(2)).unwrap(), 2.into());
        // c = (2, 1): 1, 2, 5, 12 at n = 0..3
        let c = [2.into(), 1.into()];
        assert_eq!(er(2, 1, 2, &c).unwrap(), 5.into());
        assert_eq!(er(2, 1, 3, &c).unwrap(), 12.into());
        assert!(er(2, 3, 1, &ones_point(2)).is_err());
        assert!(er(2, 1, -2, &ones_point(2)).is_err());
        assert!(er(2, 1, 1, &ones_point(3)).is_err());
    }

    #[test]
    fn pell_examples() {
        assert_eq!(pell(2, 2, 4).unwrap(), int(12));
        assert_eq!(pell(3, 1, 0).unwrap(), int(1));
        assert_eq!(pell(2, 2, 1).unwrap(), int(1));
        let classical: Vec<_> = (1..=6).map(|n| pell(2, 2, n).unwrap()).collect();
        assert_eq!(classical, [1, 2, 5, 12, 29, 70].map(int));
        assert!(pell(2, 0, 1).is_err());
    }

    #[test]
    fn van_der_laan_examples() {
        assert_eq!(van_der_laan(3, 3, 0).unwrap(), int(1));
        assert_eq!(van_der_laan(3, 3, 5).unwrap(), int(2));
        assert_eq!(van_der_laan(3, 3, 1).unwrap(), int(0));
        // Padovan-like: v_0.. = 1,0,1,1,1,2,2,3,4,5
        let seq: Vec<_> = (0..=9).map(|n| van_der_laan(3, 3, n).unwrap()).collect();
        assert_eq!(seq, [1, 0, 1, 1, 1, 2, 2, 3, 4, 5].map(int));
        assert!(van_der_laan(3, 4, 0).is_err());
    }

    #[test]
    fn er_with_unit_coefficients_contains_miles() {
        for k in 2..=5 {
            for n in 1..=12 {
                let e = er(k, k, n, &ones_point(k)).unwrap();
                assert_eq!(e, miles(k, k as i64 + n - 2).unwrap().into(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn fib_poly_satisfies_its_recurrence() {
        for k in 2..=5 {
            let table = fib_poly_table(k, 10).unwrap();
            for n in 1..10usize {
                let fold = (1..=k)
                    .filter(|&j| n + 1 > j)
                    .fold(LaurentPoly::zero(k), |acc, j| acc + &(LaurentPoly::var(k, j) * &table[n + 1 - j]));
                if n >= 1 {
                    assert_eq!(table[n + 1], fold, "k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn fib_poly_is_isobaric_with_natural_coefficients() {
        for k in 2..=5 {
            for n in 1..=10 {
                let f = fib_poly(k, n).unwrap();
                assert_eq!(f.weighted_degree_set(), [n - 1].into(), "k={k} n={n}");
                assert!(f.is_true_polynomial());
                assert!(f.has_nonnegative_integer_coeffs());
            }
        }
    }

    #[test]
    fn specialization_clauses() {
        let r = specialization_check(2, 6).unwrap();
        assert!(r.all_hold(Clause::MilesAtOnes));
        let r = specialization_check(2, 4).unwrap();
        assert!(r.all_hold(Clause::PellAtTwoOnes));
        let r = specialization_check(3, 6).unwrap();
        assert_eq!(r.first_failure(Clause::VanDerLaanStated), Some(1));
        assert!(r.all_hold(Clause::VanDerLaanShifted));
        assert!(r.all_hold(Clause::ErAtRandomPoint));
        assert!(specialization_check(3, 0).is_err());
    }

    #[test]
    fn seq_spec_terms() {
        let s = SeqSpec { kind: SeqKind::Pell, k: 2, i: 2, coeffs: vec![] };
        assert_eq!(s.first_index(), -1);
        assert_eq!(s.term(4).unwrap(), "12");
        let s = SeqSpec { kind: SeqKind::FibPoly, k: 4, i: 1, coeffs: vec![] };
        assert_eq!(s.term(5).unwrap(), "t1^4 + 3*t1^2*t2 + 2*t1*t3 + t2^2 + t4");
    }
}

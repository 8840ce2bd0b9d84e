//! Exact Hessenberg determinant and permanent representations of the
//! generalized Fibonacci polynomials `F_{k,n}(t1, ..., tk)`.
//!
//! The crate builds the symbolic matrix families `Q`, `B`, `H`, `L` (and
//! their all-ones specializations `C`, `M`, `D`) over Laurent polynomials
//! with Gaussian-rational coefficients, evaluates them with the
//! lower-Hessenberg determinant/permanent recursions, and checks the results
//! against `F_{k,n+1}` and against the classical integer sequences.
//!
//! ```
//! use hessfib::{det_hessenberg, build_symbolic, fib_poly, Family};
//!
//! let q = build_symbolic(Family::Q, 6, 4).unwrap();
//! let det = det_hessenberg(&q);
//! assert_eq!(det, fib_poly(6, 5).unwrap());
//! assert_eq!(det.to_string(), "t1^4 + 3*t1^2*t2 + 2*t1*t3 + t2^2 + t4");
//! ```
//!
//! A longer guide lives in the `book/` directory of the repository; its
//! code samples are compiled and run as doctests of this crate.

pub mod arith;
pub mod bench;
pub mod cli;
pub mod error;
pub mod families;
pub mod hessenberg;
pub mod poly;
pub mod ring;
pub mod sequences;
pub mod verify;

pub use arith::{i_pow, BigRational, GaussianRational};
pub use error::{Error, Result};
pub use families::{build_matrix, build_numeric, build_symbolic, Family, FamilyMatrix, FamilySpec, FamilyValue, MatrixOp};
pub use hessenberg::{
    det_cofactor_oracle, det_hessenberg, per_hessenberg, per_leibniz_oracle, per_minor_expansion, Axis, HessMatrix,
    SquareMatrix,
};
pub use poly::{LaurentPoly, MultiIndex};
pub use ring::{OpCount, Ring};
pub use sequences::{er, fib_poly, miles, pell, specialization_check, van_der_laan};
pub use verify::{verify, VerifyConfig, VerifyReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/hessenberg.md")]
    mod hessenberg {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}

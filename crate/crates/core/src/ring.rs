use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Commutative ring elements as used by the determinant and permanent code.
///
/// Zero and one are produced from an existing element because some rings
/// (multivariate polynomials) carry context such as the number of variables.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// Tally of ring additions and multiplications performed by an algorithm.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    pub adds: u64,
    pub muls: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.adds + self.muls
    }

    pub(crate) fn add<R: Ring>(&mut self, a: R, b: &R) -> R {
        self.adds += 1;
        a + b
    }

    pub(crate) fn sub<R: Ring>(&mut self, a: R, b: &R) -> R {
        self.adds += 1;
        a - b
    }

    pub(crate) fn mul<R: Ring>(&mut self, a: R, b: &R) -> R {
        self.muls += 1;
        a * b
    }
}

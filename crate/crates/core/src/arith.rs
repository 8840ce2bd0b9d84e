//! Exact arithmetic in the field of Gaussian rationals `Q(i)`.
//!
//! Rationals are [`num_rational::BigRational`], which is kept in lowest
//! terms with a positive denominator after every operation. A
//! [`GaussianRational`] pairs two of them as real and imaginary parts.
//!
//! Text form: a rational prints as `p/q` (or `p` when `q = 1`); a
//! Gaussian rational prints as `re` when the imaginary part is zero and as
//! `re+im*i` / `re-im*i` otherwise.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

pub use num_rational::BigRational;

/// Builds the rational `numer / denom`, normalized.
///
/// Panics if `denom` is zero.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Renders a rational as `p/q`, dropping `/q` when `q = 1`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q` or `p`. A zero denominator is a parse error.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// An exact complex number `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the value is a real integer `>= 0`.
    pub fn is_nonnegative_integer(&self) -> bool {
        self.is_real() && self.re.is_integer() && !self.re.is_negative()
    }

    /// The real integer value, if there is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_real() && self.re.is_integer()).then(|| self.re.to_integer())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

/// `i^m` for any signed `m`, read off the cycle `1, i, -1, -i`.
pub fn i_pow(m: i64) -> GaussianRational {
    match m.rem_euclid(4) {
        0 => GaussianRational::from_integer(1),
        1 => GaussianRational::i(),
        2 => GaussianRational::from_integer(-1),
        _ => -GaussianRational::i(),
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.re))?;
        if !self.im.is_zero() {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}*i", format_rational(&self.im.abs()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts the serialized form `re`, `re+im*i` or `re-im*i`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix("*i") else {
            return Ok(Self::from_rational(parse_rational(s)?));
        };
        // The sign separating the parts is the last '+' or '-' that is not
        // the leading sign of the real part.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last()
            .ok_or_else(|| Error::Parse(format!("expected re+im*i, got {s:?}")))?;
        let re = parse_rational(&body[..split])?;
        let im = parse_rational(&body[split..])?;
        Ok(Self::new(re, im))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

impl<'a> Add<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        // (a+bi)(c+di) = (ac-bd) + (ad+bc)i
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on a zero divisor; use [`GaussianRational::checked_div`] to get an error instead.
impl<'a> Div<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("GaussianRational division by zero")
    }
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

impl Ring for GaussianRational {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn one_like(&self) -> Self {
        Self::one()
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rational(re.0, re.1), rational(im.0, im.1))
    }

    #[test]
    fn i_times_identity_and_square() {
        let one = GaussianRational::one();
        let i = GaussianRational::i();
        assert_eq!(&one * &i, i);
        assert_eq!(&i * &i, GaussianRational::from_integer(-1));
    }

    #[test]
    fn division_by_i() {
        let a = g((1, 2), (1, 2));
        let q = a.checked_div(&GaussianRational::i()).unwrap();
        assert_eq!(q, g((1, 2), (-1, 2)));
        // re-multiply
        assert_eq!(&q * &GaussianRational::i(), a);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = GaussianRational::one();
        assert_eq!(a.checked_div(&GaussianRational::zero()), Err(Error::DivisionByZero));
        assert_eq!(GaussianRational::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(GaussianRational::zero().pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn i_pow_cycle() {
        assert_eq!(i_pow(0), GaussianRational::one());
        assert_eq!(i_pow(2), GaussianRational::from_integer(-1));
        assert_eq!(i_pow(-1), -GaussianRational::i());
        assert_eq!(&GaussianRational::i() * &i_pow(-1), GaussianRational::one());
        for m in -8..=8 {
            assert_eq!(&i_pow(m) * &i_pow(-m), GaussianRational::one(), "m = {m}");
            assert_eq!(i_pow(m), GaussianRational::i().pow(m).unwrap());
        }
    }

    #[test]
    fn rationals_are_normalized() {
        let q = rational(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        let z = rational(0, 7);
        assert_eq!(z.denom(), &BigInt::from(1));
        let again = BigRational::new(q.numer().clone(), q.denom().clone());
        assert_eq!(again, q);
    }

    #[test]
    fn text_form() {
        assert_eq!(format_rational(&rational(3, 1)), "3");
        assert_eq!(format_rational(&rational(-2, 6)), "-1/3");
        assert_eq!(GaussianRational::from_integer(-5).to_string(), "-5");
        assert_eq!(GaussianRational::i().to_string(), "0+1*i");
        assert_eq!(g((1, 2), (-1, 2)).to_string(), "1/2-1/2*i");
        for s in ["0", "-7/3", "0+1*i", "1/2-1/2*i", "-3-4/5*i"] {
            assert_eq!(s.parse::<GaussianRational>().unwrap().to_string(), s);
        }
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("5*i".parse::<GaussianRational>().is_err());
    }

    fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
            .prop_map(|(a, b, c, d)| g((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_gaussian(), b in small_gaussian(), c in small_gaussian()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, GaussianRational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
            }
        }

        #[test]
        fn text_round_trip(a in small_gaussian()) {
            prop_assert_eq!(a.to_string().parse::<GaussianRational>().unwrap(), a);
        }
    }
}

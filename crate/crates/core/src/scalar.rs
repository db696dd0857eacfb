//! Scalars: exact Gaussian rationals and approximate complex numbers.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Gaussian integers, used for fraction-free intermediate results.
pub type GaussianInt = num_complex::Complex<BigInt>;

/// Floating point complex numbers, used only where cube roots are needed.
pub type ApproxComplex = Complex64;

/// The operations shared by the exact and approximate evaluation paths.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn to_approx(&self) -> ApproxComplex;

    /// Exact scalars vanish only when they are zero; approximate ones when
    /// their modulus is below `tol`.
    fn is_negligible(&self, tol: f64) -> bool;
}

impl Scalar for ApproxComplex {
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_approx(&self) -> ApproxComplex {
        *self
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() < tol
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid complex literal {0:?}")]
pub struct ParseScalarError(pub String);

/// A Gaussian rational `re + im*i`.
///
/// Both parts are arbitrary precision rationals in lowest terms; equality is
/// exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ExactComplex { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den + (inum/iden) i`.
    pub fn from_parts(num: i64, den: i64, inum: i64, iden: i64) -> Self {
        ExactComplex {
            re: BigRational::new(num.into(), den.into()),
            im: BigRational::new(inum.into(), iden.into()),
        }
    }

    pub fn conj(&self) -> Self {
        ExactComplex { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|^2` as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ExactComplex { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExactComplex::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The least positive integer `d` with `d * self` a Gaussian integer.
    pub fn denominator(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// `d * self` as a Gaussian integer, for a multiple `d` of
    /// [`ExactComplex::denominator`].
    pub fn scaled_numerator(&self, d: &BigInt) -> GaussianInt {
        let part = |r: &BigRational| r.numer() * (d / r.denom());
        GaussianInt::new(part(&self.re), part(&self.im))
    }

    /// `num / den`.
    pub fn from_gaussian(num: GaussianInt, den: &BigInt) -> Self {
        ExactComplex {
            re: BigRational::new(num.re, den.clone()),
            im: BigRational::new(num.im, den.clone()),
        }
    }

    /// Total number of bits in the numerators and denominators, a rough
    /// measure of arithmetic cost.
    pub fn bit_size(&self) -> u64 {
        self.re.numer().bits()
            + self.re.denom().bits()
            + self.im.numer().bits()
            + self.im.denom().bits()
    }
}

impl Scalar for ExactComplex {
    fn from_rational(r: &BigRational) -> Self {
        ExactComplex::real(r.clone())
    }

    fn from_i64(n: i64) -> Self {
        ExactComplex::from_int(n)
    }

    fn to_approx(&self) -> ApproxComplex {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Zero for ExactComplex {
    fn zero() -> Self {
        ExactComplex { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactComplex {
    fn one() -> Self {
        ExactComplex { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl From<i64> for ExactComplex {
    fn from(n: i64) -> Self {
        ExactComplex::from_int(n)
    }
}

impl From<BigRational> for ExactComplex {
    fn from(r: BigRational) -> Self {
        ExactComplex::real(r)
    }
}

impl<'a> Add<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactComplex::real(&self.re * &rhs.re);
        }
        ExactComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a ExactComplex> for &'a ExactComplex {
    type Output = ExactComplex;
    fn div(self, rhs: &ExactComplex) -> ExactComplex {
        let inv = rhs.inv().expect("division of a Gaussian rational by zero");
        self * &inv
    }
}

impl<'a> Neg for &'a ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -&self.re, im: -&self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: ExactComplex) -> ExactComplex {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactComplex> for ExactComplex {
            type Output = ExactComplex;
            fn $m(self, rhs: &ExactComplex) -> ExactComplex {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        *self = &*self * rhs;
    }
}

impl Sum for ExactComplex {
    fn sum<I: Iterator<Item = ExactComplex>>(iter: I) -> Self {
        iter.fold(ExactComplex::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for ExactComplex {
    fn product<I: Iterator<Item = ExactComplex>>(iter: I) -> Self {
        iter.fold(ExactComplex::one(), |acc, x| &acc * &x)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    BigRational::from_str(s).ok()
}

impl FromStr for ExactComplex {
    type Err = ParseScalarError;

    /// Accepts `p`, `p/q`, `p/q+r/si`, `p/q-r/si`, `r/si`, `i` and `-i`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s).map(ExactComplex::real).ok_or_else(err);
        };
        // split off the imaginary part at the last sign that is not leading
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_txt, im_txt) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let re = parse_rational(re_txt).ok_or_else(err)?;
        let im = match im_txt {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t).ok_or_else(err)?,
        };
        Ok(ExactComplex { re, im })
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = ExactComplex;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a string such as \"1/2-3/4i\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactComplex, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactComplex, E> {
                Ok(ExactComplex::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactComplex, E> {
                Ok(ExactComplex::real(BigRational::from_integer(v.into())))
            }
        }

        deserializer.deserialize_any(ExactVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    #[test]
    fn parses_the_documented_forms() {
        assert_eq!(c("3"), ExactComplex::from_int(3));
        assert_eq!(c("-1/2"), ExactComplex::from_parts(-1, 2, 0, 1));
        assert_eq!(c("1/2+3/4i"), ExactComplex::from_parts(1, 2, 3, 4));
        assert_eq!(c("1/2-3/4i"), ExactComplex::from_parts(1, 2, -3, 4));
        assert_eq!(c("-2i"), ExactComplex::from_parts(0, 1, -2, 1));
        assert_eq!(c("i"), ExactComplex::from_parts(0, 1, 1, 1));
        assert_eq!(c("-5-i"), ExactComplex::from_parts(-5, 1, -1, 1));
        assert_eq!(c("2/4"), ExactComplex::from_parts(1, 2, 0, 1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1/0", "1+", "1/2+3/0i", "ii"] {
            assert!(bad.parse::<ExactComplex>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "7", "-1/3", "1/2+3/4i", "-2-1/5i", "0+1i"] {
            let z = c(s);
            assert_eq!(c(&z.to_string()), z);
        }
    }

    #[test]
    fn field_operations() {
        let a = c("1/2+3i");
        let b = c("-2+1/3i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv().unwrap(), ExactComplex::one());
        assert_eq!(c("i").pow(4), ExactComplex::one());
        assert_eq!(c("1+i").pow(2), c("2i"));
        assert!(ExactComplex::zero().inv().is_none());
    }

    #[test]
    fn json_accepts_integers_and_strings() {
        let v: Vec<ExactComplex> = serde_json::from_str(r#"[1, "2/3", "1-i"]"#).unwrap();
        assert_eq!(v, vec![c("1"), c("2/3"), c("1-i")]);
        assert_eq!(serde_json::to_string(&c("1/2-i")).unwrap(), "\"1/2-1i\"");
    }
}

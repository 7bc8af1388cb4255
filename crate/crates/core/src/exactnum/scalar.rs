//! Gaussian rationals: complex numbers whose real and imaginary parts are
//! arbitrary-precision rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact value `a/b + (c/d)·i`.
///
/// Both parts are kept in lowest terms with positive denominators, so the
/// derived equality is structural equality of the four integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QiScalar {
    re: BigRational,
    im: BigRational,
}

/// The four arithmetic operations accepted by [`QiScalar::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QiScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        // `Ratio::new` already reduces; values built through `Ratio::new_raw`
        // elsewhere would break the canonical form, so reduce once more.
        QiScalar { re: reduce(re), im: reduce(im) }
    }

    pub fn from_real(re: BigRational) -> Self {
        QiScalar::new(re, BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        QiScalar { re: BigRational::from_integer(BigInt::from(v)), im: BigRational::zero() }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        QiScalar::from_real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `re + im·i` from two small rationals given as (numerator, denominator).
    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        QiScalar::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn i() -> Self {
        QiScalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn re_num(&self) -> &BigInt {
        self.re.numer()
    }

    pub fn re_den(&self) -> &BigInt {
        self.re.denom()
    }

    pub fn im_num(&self) -> &BigInt {
        self.im.numer()
    }

    pub fn im_den(&self) -> &BigInt {
        self.im.denom()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn conj(&self) -> Self {
        QiScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(QiScalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &QiScalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// `self^k` for a nonnegative exponent.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QiScalar::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^k` for any integer exponent; negative powers of zero fail.
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv()?.pow((-k) as u32))
        }
    }

    pub fn apply(&self, rhs: &QiScalar, op: ArithOp) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    /// Re-establish the canonical form. Values produced by this module are
    /// always canonical, so this is the identity on them.
    pub fn normalized(&self) -> Self {
        QiScalar::new(self.re.clone(), self.im.clone())
    }

    /// Exact square root inside Q(i), if one exists.
    ///
    /// With `m = |z|` rational, the roots are `±(sqrt((m+a)/2) + sign(b)·sqrt((m−a)/2)·i)`,
    /// so a root exists iff `m`, `(m+a)/2` and `(m−a)/2` all have rational
    /// square roots. Returns the root with positive real part (or positive
    /// imaginary part when the real part vanishes).
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(QiScalar::zero());
        }
        let m = rational_root(&self.norm_sqr(), 2)?;
        let two = BigRational::from_integer(BigInt::from(2));
        let re = rational_root(&((&m + &self.re) / &two), 2)?;
        let mut im = rational_root(&((&m - &self.re) / &two), 2)?;
        if self.im.is_negative() {
            im = -im;
        }
        let r = QiScalar::new(re, im);
        debug_assert_eq!(&r.pow(2), self);
        Some(r)
    }

    /// Some `r` in Q(i) with `r^k == self`.
    ///
    /// Complete for `k` a power of two (iterated square roots, trying both
    /// signs) and for real radicands with a real rational root. A `None`
    /// for other inputs only means no root was found; callers then keep the
    /// radical symbolic.
    pub fn root_exact(&self, k: u32) -> Option<Self> {
        match k {
            0 => None,
            1 => Some(self.clone()),
            _ if self.is_zero() => Some(QiScalar::zero()),
            _ if k.is_power_of_two() => {
                let s = self.sqrt_exact()?;
                let half = k / 2;
                s.root_exact(half).or_else(|| (-&s).root_exact(half))
            }
            _ => {
                if self.is_real() {
                    if let Some(r) = rational_root(&self.re, k) {
                        return Some(QiScalar::from_real(r));
                    }
                }
                None
            }
        }
    }
}

fn reduce(r: BigRational) -> BigRational {
    BigRational::new(r.numer().clone(), r.denom().clone())
}

fn integer_root_exact(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return integer_root_exact(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

fn rational_root(r: &BigRational, k: u32) -> Option<BigRational> {
    let num = integer_root_exact(r.numer(), k)?;
    let den = integer_root_exact(r.denom(), k)?;
    Some(BigRational::new(num, den))
}

impl Zero for QiScalar {
    fn zero() -> Self {
        QiScalar::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for QiScalar {
    fn one() -> Self {
        QiScalar { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl From<i64> for QiScalar {
    fn from(v: i64) -> Self {
        QiScalar::from_int(v)
    }
}

impl From<BigRational> for QiScalar {
    fn from(v: BigRational) -> Self {
        QiScalar::from_real(v)
    }
}

impl<'a> Add<&'a QiScalar> for &'a QiScalar {
    type Output = QiScalar;
    fn add(self, rhs: &QiScalar) -> QiScalar {
        QiScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a QiScalar> for &'a QiScalar {
    type Output = QiScalar;
    fn sub(self, rhs: &QiScalar) -> QiScalar {
        QiScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a QiScalar> for &'a QiScalar {
    type Output = QiScalar;
    fn mul(self, rhs: &QiScalar) -> QiScalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return QiScalar { re: &self.re * &rhs.re, im: BigRational::zero() };
        }
        QiScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<QiScalar> for QiScalar {
            type Output = QiScalar;
            fn $method(self, rhs: QiScalar) -> QiScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QiScalar> for QiScalar {
            type Output = QiScalar;
            fn $method(self, rhs: &QiScalar) -> QiScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&QiScalar> for QiScalar {
    fn add_assign(&mut self, rhs: &QiScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&QiScalar> for QiScalar {
    fn sub_assign(&mut self, rhs: &QiScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&QiScalar> for QiScalar {
    fn mul_assign(&mut self, rhs: &QiScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for QiScalar {
    type Output = QiScalar;
    fn neg(self) -> QiScalar {
        QiScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &QiScalar {
    type Output = QiScalar;
    fn neg(self) -> QiScalar {
        QiScalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QiScalar {
    /// `a/b` for reals, `a/b+c/d*i` otherwise; denominators of 1 are dropped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.re, f)?;
        if !self.im.is_zero() {
            if self.im.is_negative() {
                f.write_str("-")?;
            } else {
                f.write_str("+")?;
            }
            fmt_rational(&self.im.abs(), f)?;
            f.write_str("*i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_unsigned_rational(s: &str, whole: &str) -> Result<BigRational> {
    let bad = || Error::ParseScalar(whole.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_signed_rational(s: &str, whole: &str) -> Result<BigRational> {
    match s.as_bytes().first() {
        Some(b'-') => Ok(-parse_unsigned_rational(&s[1..], whole)?),
        Some(b'+') => parse_unsigned_rational(&s[1..], whole),
        _ => parse_unsigned_rational(s, whole),
    }
}

impl FromStr for QiScalar {
    type Err = Error;

    /// Accepts `a/b`, `a/b+c/d*i`, `a/b-c/d*i` and the pure imaginary
    /// `c/d*i`, each numerator optionally signed.
    fn from_str(raw: &str) -> Result<Self> {
        let s = raw.trim();
        let bad = || Error::ParseScalar(raw.to_string());
        if let Some(body) = s.strip_suffix("*i") {
            // Split at the last sign that is not the leading one.
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last();
            return match split {
                Some(at) => {
                    let re = parse_signed_rational(&body[..at], raw)?;
                    let im = parse_signed_rational(&body[at..], raw)?;
                    Ok(QiScalar::new(re, im))
                }
                None => Ok(QiScalar::new(BigRational::zero(), parse_signed_rational(body, raw)?)),
            };
        }
        if s.is_empty() {
            return Err(bad());
        }
        Ok(QiScalar::from_real(parse_signed_rational(s, raw)?))
    }
}

impl Serialize for QiScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QiScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

//! Exact rational scalars and 2x2 rational matrices.
//!
//! Every value is kept in canonical lowest terms with a positive denominator,
//! so two equal numbers are also structurally equal. Nothing in this crate
//! ever rounds.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, reducing to lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self(BigRational::new(numer.into(), denom)))
    }

    #[must_use]
    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    #[must_use]
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    #[must_use]
    pub fn one() -> Self {
        Self(BigRational::one())
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    #[must_use]
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    #[must_use]
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    #[must_use]
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    #[must_use]
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Self(self.0.recip()))
    }

    /// Exact division; fails on a zero divisor.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// `self^e` for any signed exponent. `x^0 = 1`, including `0^0`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one());
        }
        if self.is_zero() {
            return if e > 0 {
                Ok(Self::zero())
            } else {
                Err(Error::Domain("zero raised to a negative power".into()))
            };
        }
        let k = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::Domain(format!("exponent {e} out of range")))?;
        // Powers of coprime integers stay coprime, so no gcd is needed.
        let numer = self.numer().pow(k);
        let denom = self.denom().pow(k);
        let (numer, denom) = if e > 0 {
            (numer, denom)
        } else {
            (denom, numer)
        };
        let (numer, denom) = if denom.is_negative() {
            (-numer, -denom)
        } else {
            (numer, denom)
        };
        Ok(Self(BigRational::new_raw(numer, denom)))
    }

    /// `(-1)^e` as a rational.
    #[must_use]
    pub fn sign_pow(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    #[must_use]
    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    #[must_use]
    pub fn square(&self) -> Self {
        self * self
    }

    /// Size of the numerator in bits; a cheap proxy for how big a term is.
    #[must_use]
    pub fn bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

/// Free-function form of [`Rational::pow`].
pub fn rat_pow(x: &Rational, e: i64) -> Result<Rational> {
    x.pow(e)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Rational {
    /// `num/den`, with `/den` omitted for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional sign. Decimal points and exponents
    /// are rejected: a decimal literal is not an exact input.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let parse_int = |x: &str| -> Result<BigInt> {
            let digits = x.strip_prefix(['+', '-']).unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Self::from_integer(parse_int(t)?)),
            Some((n, d)) => {
                let n = parse_int(n.trim())?;
                let d = parse_int(d.trim())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Self(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// Arithmetic on lowest-terms fractions. `BigRational`'s own operators reduce
// through a bitwise gcd that costs O(bits²) even against a denominator of 1,
// so integers and shared denominators are special-cased here.

fn gcd(x: &BigInt, y: &BigInt) -> BigInt {
    if x.is_one() || y.is_one() {
        return BigInt::one();
    }
    let (big, small) = if x.bits() >= y.bits() { (x, y) } else { (y, x) };
    match small.magnitude().to_u64() {
        Some(0) => big.abs(),
        Some(s) => {
            let r = (big.magnitude() % s).to_u64().expect("remainder below u64");
            BigInt::from(s.gcd(&r))
        }
        None => x.gcd(y),
    }
}

fn raw(numer: BigInt, denom: BigInt) -> BigRational {
    BigRational::new_raw(numer, denom)
}

fn add_q(x: &BigRational, y: &BigRational) -> BigRational {
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    if b.is_one() && d.is_one() {
        return raw(a + c, BigInt::one());
    }
    if b == d {
        let n = a + c;
        let g = gcd(&n, b);
        return if g.is_one() {
            raw(n, b.clone())
        } else {
            raw(n / &g, b / &g)
        };
    }
    let g = gcd(b, d);
    if g.is_one() {
        return raw(a * d + c * b, b * d);
    }
    let (b_g, d_g) = (b / &g, d / &g);
    let t = a * &d_g + c * &b_g;
    let g2 = gcd(&t, &g);
    raw(t / &g2, b_g * (d / g2))
}

fn neg_q(x: &BigRational) -> BigRational {
    raw(-x.numer(), x.denom().clone())
}

fn sub_q(x: &BigRational, y: &BigRational) -> BigRational {
    if x.denom().is_one() && y.denom().is_one() {
        return raw(x.numer() - y.numer(), BigInt::one());
    }
    add_q(x, &neg_q(y))
}

fn mul_q(x: &BigRational, y: &BigRational) -> BigRational {
    let (a, b, c, d) = (x.numer(), x.denom(), y.numer(), y.denom());
    if a.is_zero() || c.is_zero() {
        return BigRational::zero();
    }
    let (a, d) = if d.is_one() {
        (a.clone(), d.clone())
    } else {
        let g = gcd(a, d);
        (a / &g, d / g)
    };
    let (c, b) = if b.is_one() {
        (c.clone(), b.clone())
    } else {
        let g = gcd(c, b);
        (c / &g, b / g)
    };
    raw(a * c, b * d)
}

fn div_q(x: &BigRational, y: &BigRational) -> BigRational {
    assert!(!y.is_zero(), "division by zero");
    let (n, d) = (y.denom().clone(), y.numer().clone());
    let inv = if d.is_negative() {
        raw(-n, -d)
    } else {
        raw(n, d)
    };
    mul_q(x, &inv)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($f(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($f(&self.0, &rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($f(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($f(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add, add_q);
forward_binop!(Sub, sub, sub_q);
forward_binop!(Mul, mul, mul_q);
// Panics on a zero divisor, like integer division. Use `checked_div` when
// the divisor is data-dependent.
forward_binop!(Div, div, div_q);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(neg_q(&self.0))
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 = add_q(&self.0, &rhs.0);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 = sub_q(&self.0, &rhs.0);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 = mul_q(&self.0, &rhs.0);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// 2x2 matrix of exact rationals, row-major: `[[m11, m12], [m21, m22]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub m11: Rational,
    pub m12: Rational,
    pub m21: Rational,
    pub m22: Rational,
}

impl Mat2 {
    #[must_use]
    pub fn new(m11: Rational, m12: Rational, m21: Rational, m22: Rational) -> Self {
        Self { m11, m12, m21, m22 }
    }

    #[must_use]
    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Self::new(
            m[0][0].into(),
            m[0][1].into(),
            m[1][0].into(),
            m[1][1].into(),
        )
    }

    #[must_use]
    pub fn identity() -> Self {
        Self::scalar(Rational::one())
    }

    #[must_use]
    pub fn zero() -> Self {
        Self::scalar(Rational::zero())
    }

    /// `s * I`.
    #[must_use]
    pub fn scalar(s: Rational) -> Self {
        Self::new(s.clone(), Rational::zero(), Rational::zero(), s)
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    #[must_use]
    pub fn det(&self) -> Rational {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    #[must_use]
    pub fn trace(&self) -> Rational {
        &self.m11 + &self.m22
    }

    /// `[[d, -b], [-c, a]]`.
    #[must_use]
    pub fn adjugate(&self) -> Self {
        Self::new(self.m22.clone(), -&self.m12, -&self.m21, self.m11.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Domain("inverse of a singular matrix".into()));
        }
        Ok(self.adjugate().scale(&det.recip()?))
    }

    #[must_use]
    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(&self.m11 * s, &self.m12 * s, &self.m21 * s, &self.m22 * s)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        Self::new(
            self.m11.clone(),
            self.m21.clone(),
            self.m12.clone(),
            self.m22.clone(),
        )
    }

    /// `self^e` by square-and-multiply; negative `e` goes through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        self.pow_counted(e).map(|(m, _)| m)
    }

    /// Like [`Mat2::pow`], also returning how many matrix products were taken
    /// (multiplications by the identity are not performed and not counted).
    pub fn pow_counted(&self, e: i64) -> Result<(Self, u64)> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut count = 0u64;
        let mut acc: Option<Mat2> = None;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => {
                        count += 1;
                        &a * &sq
                    }
                });
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
                count += 1;
            }
        }
        Ok((acc.unwrap_or_else(Self::identity), count))
    }
}

/// Free-function form of matrix multiplication.
#[must_use]
pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    a * b
}

/// Free-function form of [`Mat2::pow`].
pub fn mat_pow(m: &Mat2, e: i64) -> Result<Mat2> {
    m.pow(e)
}

#[must_use]
pub fn mat_det(m: &Mat2) -> Rational {
    m.det()
}

pub fn mat_inv(m: &Mat2) -> Result<Mat2> {
    m.inverse()
}

impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.m11 * &rhs.m11 + &self.m12 * &rhs.m21,
            &self.m11 * &rhs.m12 + &self.m12 * &rhs.m22,
            &self.m21 * &rhs.m11 + &self.m22 * &rhs.m21,
            &self.m21 * &rhs.m12 + &self.m22 * &rhs.m22,
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl Add<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.m11 + &rhs.m11,
            &self.m12 + &rhs.m12,
            &self.m21 + &rhs.m21,
            &self.m22 + &rhs.m22,
        )
    }
}

impl Sub<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.m11 - &rhs.m11,
            &self.m12 - &rhs.m12,
            &self.m21 - &rhs.m21,
            &self.m22 - &rhs.m22,
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

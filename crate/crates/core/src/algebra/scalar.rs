use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = BigRational;

/// Commutative ring with unit containing the rationals.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> + for<'a> Div<&'a Self, Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self
    }
}

impl Ring for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for Rational {}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical "p/q" spelling.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts "p/q" or a bare integer "p"; the result is reduced.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Falling factorial `(d)_j = d (d-1) ... (d-j+1)`.
pub fn falling_factorial(d: u32, j: u32) -> BigInt {
    (0..j).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(i64::from(d) - i64::from(i))
    })
}

pub fn factorial(n: u32) -> BigInt {
    falling_factorial(n, n)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

//! Rational functions in ε with their ε-adic valuation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{Field, Rational, Ring};
use super::unipoly::EpsPoly;
use crate::error::{Error, Result};

/// Element of ℚ(ε) stored as a reduced fraction.
///
/// Canonical form: `gcd(num, den) = 1` and the lowest-order coefficient of
/// `den` equals one, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpsScalar {
    num: EpsPoly,
    den: EpsPoly,
}

impl EpsScalar {
    pub fn new(num: EpsPoly, den: EpsPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: EpsPoly, den: EpsPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() {
            let k = den.valuation().unwrap();
            let c = den.lowest_coeff().unwrap().clone();
            let m = k.min(num.valuation().unwrap());
            let num = num.shift_down(m);
            let num = if c.is_one() { num } else { num.scale(&(Rational::one() / c)) };
            return EpsScalar {
                num,
                den: EpsPoly::eps_pow(k - m),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let c = den.lowest_coeff().unwrap().clone();
        if c.is_one() {
            EpsScalar { num, den }
        } else {
            let inv = Rational::one() / c;
            EpsScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: EpsPoly) -> Self {
        EpsScalar {
            num: p,
            den: EpsPoly::one(),
        }
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_poly(EpsPoly::constant(q))
    }

    /// `c · ε^k` for any integer `k`.
    pub fn eps_monomial(c: Rational, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(EpsPoly::monomial(k as u32, c))
        } else {
            Self::normalized(EpsPoly::constant(c), EpsPoly::eps_pow((-k) as u32))
        }
    }

    pub fn eps() -> Self {
        Self::eps_monomial(Rational::one(), 1)
    }

    pub fn num(&self) -> &EpsPoly {
        &self.num
    }

    pub fn den(&self) -> &EpsPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn valuation(&self) -> Result<i64> {
        self.try_valuation().ok_or(Error::ZeroValuation)
    }

    /// Valuation, `None` for zero.
    pub fn try_valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()?;
        Some(i64::from(vn) - i64::from(self.den.valuation().unwrap()))
    }

    /// Coefficient of the lowest-order term of the Laurent expansion.
    pub fn leading_coeff(&self) -> Option<Rational> {
        // den's lowest coefficient is normalized to one
        self.num.lowest_coeff().cloned()
    }

    /// Value at ε = 0, `None` when there is a pole.
    pub fn value_at_zero(&self) -> Option<Rational> {
        match self.try_valuation() {
            None => Some(Rational::zero()),
            Some(v) if v < 0 => None,
            Some(0) => self.leading_coeff(),
            Some(_) => Some(Rational::zero()),
        }
    }

    /// Power series of a regular element modulo `ε^order`.
    pub fn truncated_series(&self, order: u32) -> Result<EpsPoly> {
        if self.is_zero() || order == 0 {
            return Ok(EpsPoly::zero());
        }
        let v = self.valuation()?;
        if v < 0 {
            return Err(Error::PoleAtZero {
                monomial: "scalar".into(),
                order: -v,
            });
        }
        if self.is_polynomial() {
            return Ok(self.num.truncate(order));
        }
        let inv = self.den.series_inverse(order);
        Ok(self.num.mul_truncated(&inv, order))
    }

    /// Multiplies by `ε^k`.
    pub fn mul_eps_pow(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k > 0 {
            Self::normalized(self.num.shift_up(k as u32), self.den.clone())
        } else {
            Self::normalized(self.num.clone(), self.den.shift_up((-k) as u32))
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        EpsScalar {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.num.coeff(0))
    }
}

impl Zero for EpsScalar {
    fn zero() -> Self {
        EpsScalar {
            num: EpsPoly::zero(),
            den: EpsPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for EpsScalar {
    fn one() -> Self {
        Self::from_poly(EpsPoly::one())
    }
}

fn combine(a: &EpsScalar, b: &EpsScalar, subtract: bool) -> EpsScalar {
    let rhs_num = if subtract { -b.num.clone() } else { b.num.clone() };
    if a.is_zero() {
        return EpsScalar {
            num: rhs_num,
            den: b.den.clone(),
        };
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.den == b.den {
        return EpsScalar::normalized(a.num.clone() + &rhs_num, a.den.clone());
    }
    if a.den.is_monomial() && b.den.is_monomial() {
        let ka = a.den.valuation().unwrap();
        let kb = b.den.valuation().unwrap();
        let k = ka.max(kb);
        let num = a.num.shift_up(k - ka) + &rhs_num.shift_up(k - kb);
        return EpsScalar::normalized(num, EpsPoly::eps_pow(k));
    }
    let num = a.num.clone() * &b.den + &(rhs_num * &a.den);
    EpsScalar::normalized(num, a.den.clone() * &b.den)
}

impl<'a> Add<&'a EpsScalar> for EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: &'a EpsScalar) -> EpsScalar {
        combine(&self, rhs, false)
    }
}

impl<'a> Sub<&'a EpsScalar> for EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: &'a EpsScalar) -> EpsScalar {
        combine(&self, rhs, true)
    }
}

impl<'a> Mul<&'a EpsScalar> for EpsScalar {
    type Output = EpsScalar;
    fn mul(self, rhs: &'a EpsScalar) -> EpsScalar {
        if self.is_zero() || rhs.is_zero() {
            return EpsScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return EpsScalar::from_poly(self.num * &rhs.num);
        }
        EpsScalar::normalized(self.num * &rhs.num, self.den * &rhs.den)
    }
}

impl<'a> Div<&'a EpsScalar> for EpsScalar {
    type Output = EpsScalar;
    fn div(self, rhs: &'a EpsScalar) -> EpsScalar {
        assert!(!rhs.is_zero(), "division by zero in Q(eps)");
        if self.is_zero() {
            return EpsScalar::zero();
        }
        EpsScalar::normalized(self.num * &rhs.den, self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for EpsScalar {
            type Output = EpsScalar;
            fn $m(self, rhs: EpsScalar) -> EpsScalar {
                <EpsScalar as $tr<&EpsScalar>>::$m(self, &rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        EpsScalar {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ring for EpsScalar {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}

impl Field for EpsScalar {}

impl fmt::Debug for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    fn poly(cs: &[i64]) -> EpsPoly {
        EpsPoly::from_coeffs(&cs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn valuation_examples() {
        let e2 = EpsScalar::eps_monomial(int(1), 2);
        assert_eq!(e2.valuation().unwrap(), 2);
        let inv3e = EpsScalar::new(poly(&[1]), poly(&[0, 3])).unwrap();
        assert_eq!(inv3e.valuation().unwrap(), -1);
        assert_eq!(inv3e, EpsScalar::eps_monomial(rat(1, 3), -1));
        // (ε + ε³)/(2 + ε)
        let s = EpsScalar::new(poly(&[0, 1, 0, 1]), poly(&[2, 1])).unwrap();
        assert_eq!(s.valuation().unwrap(), 1);
        assert_eq!(EpsScalar::zero().valuation(), Err(Error::ZeroValuation));
    }

    #[test]
    fn canonical_form() {
        // (ε² - 1)/(ε - 1) = ε + 1
        let s = EpsScalar::new(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(s, EpsScalar::from_poly(poly(&[1, 1])));
        // den lowest coefficient is one
        let t = EpsScalar::new(poly(&[1]), poly(&[4, 2])).unwrap();
        assert_eq!(t.den().lowest_coeff(), Some(&int(1)));
        assert_eq!(t.value_at_zero(), Some(rat(1, 4)));
    }

    #[test]
    fn field_operations() {
        let a = EpsScalar::new(poly(&[1, 1]), poly(&[0, 1])).unwrap();
        let b = EpsScalar::new(poly(&[2]), poly(&[1, 3])).unwrap();
        let q = a.clone() / &b;
        assert_eq!(q * &b, a);
        let s = a.clone() - &a;
        assert!(s.is_zero());
        assert_eq!(a.value_at_zero(), None);
    }

    #[test]
    fn series_truncation() {
        // 1/(1 - ε) = 1 + ε + ε² + ...
        let s = EpsScalar::new(poly(&[1]), poly(&[1, -1])).unwrap();
        assert_eq!(s.truncated_series(3).unwrap(), poly(&[1, 1, 1]));
        assert!(EpsScalar::eps_monomial(int(1), -1).truncated_series(2).is_err());
    }
}

//! Univariate polynomials over ℚ.
//!
//! The same type serves as ℚ[ε] (the numerators and denominators of
//! [`EpsScalar`](super::EpsScalar)) and as the dehomogenized binary forms
//! of the Sylvester oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{format_rational, Rational, Ring};

/// Sparse univariate polynomial; no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    terms: BTreeMap<u32, Rational>,
}

/// Polynomials in the deformation parameter ε.
pub type EpsPoly = UniPoly;

impl UniPoly {
    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = UniPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Dense constructor, coefficient `i` belongs to `t^i`.
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate().map(|(i, c)| (i as u32, c)))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn monomial(exp: u32, c: Rational) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// The indeterminate raised to `exp`.
    pub fn eps_pow(exp: u32) -> Self {
        Self::monomial(exp, Rational::one())
    }

    fn add_term(&mut self, e: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Order of vanishing at zero.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn lowest_coeff(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        UniPoly {
            terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Divides by `t^k`; every exponent must be at least `k`.
    pub fn shift_down(&self, k: u32) -> Self {
        debug_assert!(self.valuation().is_none_or(|v| v >= k));
        UniPoly {
            terms: self.terms.iter().map(|(&e, v)| (e - k, v.clone())).collect(),
        }
    }

    /// Keeps the terms of exponent `< order`.
    pub fn truncate(&self, order: u32) -> Self {
        UniPoly {
            terms: self.terms.range(..order).map(|(&e, v)| (e, v.clone())).collect(),
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let Some(deg) = self.degree() else {
            return Rational::zero();
        };
        let mut acc = Rational::zero();
        for e in (0..=deg).rev() {
            acc *= t;
            if let Some(c) = self.terms.get(&e) {
                acc += c;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, c)| (e - 1, c * Rational::from_integer(e.into()))),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&(Rational::one() / lc)),
            None => Self::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &lc;
            let shift = rd - dd;
            quot.add_term(shift, c.clone());
            for (e, v) in divisor.terms() {
                rem.add_term(e + shift, -(v * &c));
            }
        }
        (quot, rem)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Least common multiple up to a rational factor; monomials stay monomials.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_monomial() && other.is_monomial() {
            return Self::eps_pow(self.valuation().unwrap().max(other.valuation().unwrap()));
        }
        let g = self.gcd(other);
        (self.clone() * other).div_rem(&g).0
    }

    /// Power series inverse modulo `t^order`; the constant term must be nonzero.
    pub fn series_inverse(&self, order: u32) -> Self {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "series inverse needs a unit constant term");
        let inv0 = Rational::one() / &c0;
        let mut out: Vec<Rational> = Vec::with_capacity(order as usize);
        for n in 0..order {
            if n == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut s = Rational::zero();
            for (e, c) in self.terms.range(1..=n) {
                s += c * &out[(n - e) as usize];
            }
            out.push(-(s * &inv0));
        }
        Self::from_coeffs(&out)
    }

    /// Product truncated below `t^order`.
    pub fn mul_truncated(&self, other: &Self, order: u32) -> Self {
        let mut out = UniPoly::zero();
        for (ea, ca) in self.terms.range(..order) {
            for (eb, cb) in other.terms.range(..order - ea) {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl<'a> Add<&'a UniPoly> for UniPoly {
    type Output = UniPoly;
    fn add(mut self, rhs: &'a UniPoly) -> UniPoly {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
        self
    }
}

impl<'a> Sub<&'a UniPoly> for UniPoly {
    type Output = UniPoly;
    fn sub(mut self, rhs: &'a UniPoly) -> UniPoly {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
        self
    }
}

impl<'a> Mul<&'a UniPoly> for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Ring for UniPoly {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format_rational(c),
                1 => format!("({})e", format_rational(c)),
                _ => format!("({})e^{}", format_rational(c), e),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

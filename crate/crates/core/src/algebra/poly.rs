//! Sparse homogeneous multivariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::eps::EpsScalar;
use super::matrix::Matrix;
use super::scalar::{factorial, Rational, Ring};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
///
/// Ordered graded-lexicographically with the lex-largest monomial first, so
/// `x^2 < x*y < y^2` and iteration over a [`HomoPoly`] starts at its leading
/// term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var_power(nvars: usize, var: usize, e: u32) -> Self {
        let mut m = vec![0; nvars];
        m[var] = e;
        Monomial(m)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `∏ α_k!`
    pub fn factorial_product(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e)).product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// All monomials of total degree `degree` in `nvars` variables, leading first.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, 0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// Homogeneous polynomial with an explicit degree tag (kept for zero too).
#[derive(Clone, PartialEq, Eq)]
pub struct HomoPoly<S> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Ring> HomoPoly<S> {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomoPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, S)>,
    {
        let mut p = Self::zero(nvars, degree);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: m.degree(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// `c · x^exps`
    pub fn monomial(exps: &[u32], c: S) -> Self {
        let m = Monomial(exps.to_vec());
        let mut p = Self::zero(exps.len(), m.degree());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: S) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = Self::zero(self.nvars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s);
        }
        out
    }

    pub fn map_coeffs<T: Ring, F: Fn(&S) -> T>(&self, f: F) -> HomoPoly<T> {
        let mut out = HomoPoly::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `∂^j p / ∂x_var^j`; the zero result keeps degree `max(degree - j, 0)`.
    pub fn differentiate(&self, var: usize, j: u32) -> Result<Self> {
        if var >= self.nvars {
            return Err(Error::InvalidArgument(format!(
                "variable index {var} out of range for {} variables",
                self.nvars
            )));
        }
        if j == 0 {
            return Err(Error::InvalidArgument("derivative order must be positive".into()));
        }
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(j));
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e < j {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= j;
            let ff = super::scalar::falling_factorial(e, j);
            out.add_term(Monomial(exps), c.clone() * &S::from_rational(&Rational::from_integer(ff)));
        }
        Ok(out)
    }

    /// `p(Mx)`: variable `x_i` is replaced by `Σ_j M[i][j] x_j`.
    pub fn substitute_linear(&self, m: &Matrix<S>) -> Result<Self> {
        if m.nrows() != self.nvars || m.ncols() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.nrows(),
            });
        }
        let n = self.nvars;
        // powers[i][e] = (row i of M as a form)^e
        let mut max_exp = vec![0u32; n];
        for mono in self.terms.keys() {
            for (i, &e) in mono.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let mut powers: Vec<Vec<HomoPoly<S>>> = Vec::with_capacity(n);
        for (i, &top) in max_exp.iter().enumerate() {
            let row = HomoPoly::linear(m.row(i));
            let mut pw = vec![HomoPoly::constant(n, S::one())];
            for e in 1..=top as usize {
                let next = pw[e - 1].try_mul(&row)?;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Self::zero(n, self.degree);
        for (mono, c) in &self.terms {
            let mut acc = HomoPoly::constant(n, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    acc = acc.try_mul(&powers[i][e as usize])?;
                }
            }
            for (mm, cc) in acc.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars, 0);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// Degree-one polynomial `Σ coefs[i] x_i`.
    pub fn linear(coefs: &[S]) -> Self {
        let n = coefs.len();
        let mut p = Self::zero(n, 1);
        for (i, c) in coefs.iter().enumerate() {
            p.add_term(Monomial::var_power(n, i, 1), c.clone());
        }
        p
    }

    /// Sets the listed variables to zero.
    pub fn restrict_zero(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            if vars.iter().all(|&v| m.0[v] == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Indices of the variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    /// Exact division by `x_var^e`, `None` when some term has a smaller power.
    pub fn divide_by_var_power(&self, var: usize, e: u32) -> Option<Self> {
        let mut out = Self::zero(self.nvars, self.degree.checked_sub(e)?);
        for (m, c) in &self.terms {
            if m.0[var] < e {
                return None;
            }
            let mut exps = m.0.clone();
            exps[var] -= e;
            out.add_term(Monomial(exps), c.clone());
        }
        Some(out)
    }

    /// Multiplies by `x_var^e`.
    pub fn mul_var_power(&self, var: usize, e: u32) -> Self {
        let mut out = Self::zero(self.nvars, self.degree + e);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps[var] += e;
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Re-embeds into `new_nvars` variables via `var_map[old] = new`.
    pub fn remap_vars(&self, new_nvars: usize, var_map: &[usize]) -> Self {
        let mut out = Self::zero(new_nvars, self.degree);
        for (m, c) in &self.terms {
            let mut exps = vec![0; new_nvars];
            for (old, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    exps[var_map[old]] += e;
                }
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Keeps the first `k` variables; the dropped ones must not occur.
    pub fn truncate_vars(&self, k: usize) -> Result<Self> {
        let mut out = Self::zero(k, self.degree);
        for (m, c) in &self.terms {
            if m.0[k..].iter().any(|&e| e > 0) {
                return Err(Error::InvalidArgument(format!(
                    "term {m} uses a variable beyond x{k}"
                )));
            }
            out.add_term(Monomial(m.0[..k].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// First monomial (in term order) where the two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<Monomial> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .find(|m| self.coeff(m) != other.coeff(m))
            .cloned()
    }
}

/// `ℓ^d` for `ℓ = Σ coefs[i] x_i`, via the multinomial theorem.
pub fn power_of_form<S: Ring>(coefs: &[S], d: u32) -> HomoPoly<S> {
    let n = coefs.len();
    let support: Vec<usize> = (0..n).filter(|&i| !coefs[i].is_zero()).collect();
    let mut out = HomoPoly::zero(n, d);
    if support.is_empty() {
        if d == 0 {
            out.add_term(Monomial::one(n), S::one());
        }
        return out;
    }
    let pows: Vec<Vec<S>> = support
        .iter()
        .map(|&i| {
            let mut v = vec![S::one()];
            for e in 1..=d as usize {
                let next = v[e - 1].clone() * &coefs[i];
                v.push(next);
            }
            v
        })
        .collect();
    let dfact = factorial(d);
    for sub in monomials_of_degree(support.len(), d) {
        let multinom = Rational::from_integer(&dfact / sub.factorial_product());
        let mut c = S::from_rational(&multinom);
        for (k, &e) in sub.0.iter().enumerate() {
            if e > 0 {
                c = c * &pows[k][e as usize];
            }
        }
        let mut exps = vec![0; n];
        for (k, &e) in sub.0.iter().enumerate() {
            exps[support[k]] = e;
        }
        out.add_term(Monomial(exps), c);
    }
    out
}

impl HomoPoly<EpsScalar> {
    /// Coefficientwise value at ε = 0.
    pub fn limit_at_zero(&self) -> Result<HomoPoly<Rational>> {
        let mut out = HomoPoly::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            match c.value_at_zero() {
                Some(v) => out.add_term(m.clone(), v),
                None => {
                    return Err(Error::PoleAtZero {
                        monomial: m.to_string(),
                        order: -c.try_valuation().unwrap(),
                    })
                }
            }
        }
        Ok(out)
    }

    /// Minimal coefficient valuation, `None` for the zero polynomial.
    pub fn min_valuation(&self) -> Option<i64> {
        self.terms.values().filter_map(|c| c.try_valuation()).min()
    }
}

impl HomoPoly<Rational> {
    pub fn lift(&self) -> HomoPoly<EpsScalar> {
        self.map_coeffs(|c| EpsScalar::constant(c.clone()))
    }
}

impl<S: Ring + fmt::Display> fmt::Display for HomoPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*{m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<S: Ring> fmt::Debug for HomoPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomoPoly")
            .field("nvars", &self.nvars)
            .field("degree", &self.degree)
            .field("terms", &self.terms)
            .finish()
    }
}

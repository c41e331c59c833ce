use std::fmt;

use num_traits::Zero;

use super::eps::EpsScalar;
use super::matrix::Matrix;
use super::poly::{power_of_form, HomoPoly};
use super::scalar::{format_rational, Field, Rational, Ring};
use crate::error::{Error, Result};

/// Nonzero linear form `Σ coefs[i] x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm<S> {
    coefs: Vec<S>,
}

impl<S: Ring> LinearForm<S> {
    pub fn new(coefs: Vec<S>) -> Result<Self> {
        if coefs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroForm);
        }
        Ok(LinearForm { coefs })
    }

    /// The coordinate form `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut coefs = vec![S::zero(); nvars];
        coefs[var] = S::one();
        LinearForm { coefs }
    }

    pub fn coefs(&self) -> &[S] {
        &self.coefs
    }

    pub fn coef(&self, i: usize) -> &S {
        &self.coefs[i]
    }

    pub fn nvars(&self) -> usize {
        self.coefs.len()
    }

    pub fn power(&self, d: u32) -> HomoPoly<S> {
        power_of_form(&self.coefs, d)
    }

    pub fn to_poly(&self) -> HomoPoly<S> {
        HomoPoly::linear(&self.coefs)
    }

    /// Coefficients of `ℓ(Ax)`: the row vector `coefs · A`.
    pub fn transform_coefs(&self, a: &Matrix<S>) -> Vec<S> {
        (0..a.ncols())
            .map(|j| {
                self.coefs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(S::zero(), |acc, (i, c)| acc + &(c.clone() * a.get(i, j)))
            })
            .collect()
    }

    /// `ℓ(Ax)`; `None` when the result vanishes.
    pub fn transform(&self, a: &Matrix<S>) -> Result<Option<Self>> {
        if a.nrows() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: a.nrows(),
            });
        }
        Ok(LinearForm::new(self.transform_coefs(a)).ok())
    }

    /// Sets the listed variables to zero; `None` when nothing is left.
    pub fn restrict_zero(&self, vars: &[usize]) -> Option<Self> {
        let mut coefs = self.coefs.clone();
        for &v in vars {
            coefs[v] = S::zero();
        }
        LinearForm::new(coefs).ok()
    }

    pub fn scale(&self, s: &S) -> Result<Self> {
        LinearForm::new(self.coefs.iter().map(|c| c.clone() * s).collect())
    }

    pub fn map<T: Ring, F: Fn(&S) -> T>(&self, f: F) -> Result<LinearForm<T>> {
        LinearForm::new(self.coefs.iter().map(f).collect())
    }

    /// Pads with zero coefficients up to `nvars` variables.
    pub fn pad(&self, nvars: usize) -> Self {
        let mut coefs = self.coefs.clone();
        coefs.resize(nvars, S::zero());
        LinearForm { coefs }
    }

    pub fn first_nonzero(&self) -> usize {
        self.coefs.iter().position(|c| !c.is_zero()).unwrap()
    }
}

impl<S: Field> LinearForm<S> {
    /// Projective representative with first nonzero coefficient equal to one.
    pub fn canonical(&self) -> Self {
        let lead = self.coefs[self.first_nonzero()].clone();
        if lead.is_one() {
            return self.clone();
        }
        let inv = lead.inv();
        LinearForm {
            coefs: self.coefs.iter().map(|c| c.clone() * &inv).collect(),
        }
    }

    /// `self = λ · other` for some nonzero scalar `λ`; returns `λ`.
    pub fn ratio_to(&self, other: &Self) -> Option<S> {
        if self.nvars() != other.nvars() {
            return None;
        }
        let i = other.first_nonzero();
        let lambda = self.coefs[i].clone() / &other.coefs[i];
        self.coefs
            .iter()
            .zip(&other.coefs)
            .all(|(a, b)| *a == b.clone() * &lambda)
            .then_some(lambda)
    }
}

impl LinearForm<EpsScalar> {
    pub fn min_valuation(&self) -> i64 {
        self.coefs
            .iter()
            .filter_map(|c| c.try_valuation())
            .min()
            .expect("nonzero form")
    }

    /// Coefficient vector of the lowest ε-order of the Laurent expansion.
    pub fn lowest_order_part(&self) -> LinearForm<Rational> {
        let v = self.min_valuation();
        let coefs = self
            .coefs
            .iter()
            .map(|c| match c.try_valuation() {
                Some(cv) if cv == v => c.leading_coeff().unwrap(),
                _ => Rational::zero(),
            })
            .collect();
        LinearForm { coefs }
    }

    pub fn from_rational(form: &LinearForm<Rational>) -> Self {
        LinearForm {
            coefs: form.coefs.iter().map(|c| EpsScalar::constant(c.clone())).collect(),
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for LinearForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coefs).finish()
    }
}

impl fmt::Display for LinearForm<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coefs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})x{}", format_rational(c), i + 1))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Display for LinearForm<EpsScalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coefs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})x{}", i + 1))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

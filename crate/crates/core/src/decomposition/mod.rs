//! Weighted Waring and border Waring decompositions and their exact verification.

mod essential;
mod normalize;

pub use essential::{essential_reduce, essential_variables, EssentialReduction};
pub use normalize::{extract_content, normalize_border};

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{
    power_of_form, EpsMatrix, EpsPoly, EpsScalar, Field, HomoPoly, LinearForm, Matrix, Monomial,
    Rational, Ring,
};
use crate::error::{Error, Result};

/// One weighted power `weight · form^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand<S> {
    pub weight: S,
    pub form: LinearForm<S>,
}

impl<S> Summand<S> {
    pub fn new(weight: S, form: LinearForm<S>) -> Self {
        Summand { weight, form }
    }
}

/// `Σ w_i ℓ_i^d` with nonzero weights and forms in a common number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<S> {
    nvars: usize,
    degree: u32,
    summands: Vec<Summand<S>>,
}

pub type WaringDecomposition = Decomposition<Rational>;
pub type BorderDecomposition = Decomposition<EpsScalar>;

impl<S: Ring> Decomposition<S> {
    pub fn new(nvars: usize, degree: u32, summands: Vec<Summand<S>>) -> Result<Self> {
        for s in &summands {
            if s.form.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: s.form.nvars(),
                });
            }
            if s.weight.is_zero() {
                return Err(Error::InvalidArgument("zero weight".into()));
            }
        }
        Ok(Decomposition {
            nvars,
            degree,
            summands,
        })
    }

    pub fn empty(nvars: usize, degree: u32) -> Self {
        Decomposition {
            nvars,
            degree,
            summands: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn summands(&self) -> &[Summand<S>] {
        &self.summands
    }

    pub fn into_summands(self) -> Vec<Summand<S>> {
        self.summands
    }

    /// Number of summands.
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Appends a summand; zero weights are skipped.
    pub fn push(&mut self, weight: S, form: LinearForm<S>) {
        assert_eq!(form.nvars(), self.nvars, "form arity");
        if !weight.is_zero() {
            self.summands.push(Summand { weight, form });
        }
    }

    pub fn extend(&mut self, other: Decomposition<S>) {
        assert_eq!(other.nvars, self.nvars);
        assert_eq!(other.degree, self.degree);
        self.summands.extend(other.summands);
    }

    pub fn scale_weights(&self, s: &S) -> Self {
        let mut out = Self::empty(self.nvars, self.degree);
        for t in &self.summands {
            out.push(t.weight.clone() * s, t.form.clone());
        }
        out
    }

    /// Plain expansion of `Σ w_i ℓ_i^d`.
    pub fn expand_naive(&self) -> HomoPoly<S> {
        let mut out = HomoPoly::zero(self.nvars, self.degree);
        for t in &self.summands {
            let p = t.form.power(self.degree).scale(&t.weight);
            out = out.try_add(&p).expect("shapes agree");
        }
        out
    }

    /// Forms `ℓ_i(Mx)`; summands whose form vanishes are dropped.
    pub fn transform(&self, m: &Matrix<S>) -> Result<Self> {
        if m.nrows() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.nrows(),
            });
        }
        let mut out = Self::empty(m.ncols(), self.degree);
        for t in &self.summands {
            if let Ok(form) = LinearForm::new(t.form.transform_coefs(m)) {
                out.push(t.weight.clone(), form);
            }
        }
        Ok(out)
    }

    /// Sets the listed variables to zero, deleting summands whose form vanishes.
    pub fn restrict_zero(&self, vars: &[usize]) -> Self {
        let mut out = Self::empty(self.nvars, self.degree);
        for t in &self.summands {
            if let Some(form) = t.form.restrict_zero(vars) {
                out.push(t.weight.clone(), form);
            }
        }
        out
    }

    /// Keeps the first `k` coordinates of every form, deleting vanishing forms.
    pub fn truncate_vars(&self, k: usize) -> Self {
        let mut out = Self::empty(k, self.degree);
        for t in &self.summands {
            if let Ok(form) = LinearForm::new(t.form.coefs()[..k].to_vec()) {
                out.push(t.weight.clone(), form);
            }
        }
        out
    }

    /// Embeds into `nvars ≥ self.nvars` variables (extra coordinates zero).
    pub fn pad(&self, nvars: usize) -> Self {
        Decomposition {
            nvars,
            degree: self.degree,
            summands: self
                .summands
                .iter()
                .map(|t| Summand::new(t.weight.clone(), t.form.pad(nvars)))
                .collect(),
        }
    }

    /// Same summands read with a different degree.
    pub fn with_degree(&self, degree: u32) -> Self {
        Decomposition {
            nvars: self.nvars,
            degree,
            summands: self.summands.clone(),
        }
    }
}

impl<S: Field> Decomposition<S> {
    /// Merges summands with proportional forms and drops zero weights.
    pub fn compress(&self) -> Self {
        let mut reps: Vec<(LinearForm<S>, S)> = Vec::new();
        for t in &self.summands {
            let canon = t.form.canonical();
            let lambda = t.form.ratio_to(&canon).expect("proportional to canonical form");
            let w = t.weight.clone() * &lambda.pow(self.degree);
            match reps.iter_mut().find(|(f, _)| *f == canon) {
                Some((_, acc)) => *acc = acc.clone() + &w,
                None => reps.push((canon, w)),
            }
        }
        let mut out = Self::empty(self.nvars, self.degree);
        for (f, w) in reps {
            out.push(w, f);
        }
        out
    }
}

impl WaringDecomposition {
    pub fn expand(&self) -> HomoPoly<Rational> {
        self.expand_naive()
    }

    pub fn lift(&self) -> BorderDecomposition {
        Decomposition {
            nvars: self.nvars,
            degree: self.degree,
            summands: self
                .summands
                .iter()
                .map(|t| {
                    Summand::new(
                        EpsScalar::constant(t.weight.clone()),
                        LinearForm::from_rational(&t.form),
                    )
                })
                .collect(),
        }
    }
}

impl BorderDecomposition {
    /// Exact expansion of `Σ w_i ℓ_i^d` over ℚ(ε).
    ///
    /// Denominators are cleared per form and once globally, so the bulk of the
    /// work happens over ℚ[ε] with a single normalization per monomial.
    pub fn expand(&self) -> HomoPoly<EpsScalar> {
        let d = self.degree;
        let mut parts: Vec<(EpsPoly, HomoPoly<EpsPoly>, EpsPoly)> = Vec::new();
        for t in &self.summands {
            let dens = t
                .form
                .coefs()
                .iter()
                .filter(|c| !c.is_zero())
                .fold(EpsPoly::one(), |acc, c| acc.lcm(c.den()));
            let cleared: Vec<EpsPoly> = t
                .form
                .coefs()
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        EpsPoly::zero()
                    } else {
                        c.num().clone() * &dens.div_rem(c.den()).0
                    }
                })
                .collect();
            let s = EpsScalar::new(t.weight.num().clone(), t.weight.den().clone() * &dens.pow(d))
                .expect("nonzero denominator");
            parts.push((s.num().clone(), power_of_form(&cleared, d), s.den().clone()));
        }
        let common = parts.iter().fold(EpsPoly::one(), |acc, (_, _, b)| acc.lcm(b));
        let mut acc: BTreeMap<Monomial, EpsPoly> = BTreeMap::new();
        for (a, pw, b) in &parts {
            let u = a.clone() * &common.div_rem(b).0;
            for (m, c) in pw.terms() {
                let v = c.clone() * &u;
                let e = acc.entry(m.clone()).or_insert_with(EpsPoly::zero);
                *e = e.clone() + &v;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| {
            (m, EpsScalar::new(c, common.clone()).expect("nonzero denominator"))
        });
        HomoPoly::from_terms(self.nvars, d, terms).expect("homogeneous terms")
    }

    /// Forms `ℓ_i(Ax)` for a rational matrix.
    pub fn transform_rational(&self, m: &Matrix<Rational>) -> Result<Self> {
        self.transform(&EpsMatrix::from_rational(m))
    }

    pub fn min_form_valuations(&self) -> Vec<i64> {
        self.summands.iter().map(|t| t.form.min_valuation()).collect()
    }
}

/// Exact check `Σ w_i ℓ_i^d = f`.
pub fn verify_waring(w: &WaringDecomposition, f: &HomoPoly<Rational>) -> Result<bool> {
    Ok(waring_mismatch(w, f)?.is_none())
}

/// First monomial where `Σ w_i ℓ_i^d` and `f` differ.
pub fn waring_mismatch(w: &WaringDecomposition, f: &HomoPoly<Rational>) -> Result<Option<Monomial>> {
    check_shape(w.nvars, w.degree, f)?;
    Ok(w.expand().first_difference(f))
}

fn check_shape<S: Ring>(nvars: usize, degree: u32, f: &HomoPoly<S>) -> Result<()> {
    if nvars != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: f.nvars(),
        });
    }
    if degree != f.degree() {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: f.degree(),
        });
    }
    Ok(())
}

/// Outcome of checking a border decomposition against a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BorderVerdict {
    /// The limit equals the target; `q` is the least valuation of `S - f`
    /// (`None` when the sum equals the target identically).
    Verified { q: Option<i64> },
    /// Limit and target are both zero; `q` is the least valuation of `S`.
    ZeroLimit { q: i64 },
    /// Some coefficient of the sum has a pole at ε = 0.
    Pole { monomial: String, order: i64 },
    /// The limit exists but differs from the target at `monomial`.
    Mismatch { monomial: String },
}

impl BorderVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, BorderVerdict::Verified { .. } | BorderVerdict::ZeroLimit { .. })
    }

    pub fn q(&self) -> Option<i64> {
        match self {
            BorderVerdict::Verified { q } => *q,
            BorderVerdict::ZeroLimit { q } => Some(*q),
            _ => None,
        }
    }
}

/// Limit of the weighted power sum at ε = 0.
pub fn border_limit(b: &BorderDecomposition) -> Result<HomoPoly<Rational>> {
    let s = b.expand();
    if s.is_zero() {
        return Err(Error::DegenerateSum);
    }
    s.limit_at_zero()
}

pub fn verify_border(b: &BorderDecomposition, f: &HomoPoly<Rational>) -> Result<BorderVerdict> {
    check_shape(b.nvars, b.degree, f)?;
    let s = b.expand();
    if s.is_zero() {
        return Err(Error::DegenerateSum);
    }
    let limit = match s.limit_at_zero() {
        Ok(l) => l,
        Err(Error::PoleAtZero { monomial, order }) => {
            return Ok(BorderVerdict::Pole { monomial, order })
        }
        Err(e) => return Err(e),
    };
    if let Some(m) = limit.first_difference(f) {
        return Ok(BorderVerdict::Mismatch {
            monomial: m.to_string(),
        });
    }
    let q = s.try_sub(&f.lift())?.min_valuation();
    if f.is_zero() {
        return Ok(BorderVerdict::ZeroLimit { q: q.unwrap() });
    }
    Ok(BorderVerdict::Verified { q })
}

/// Canonical projective representative of the lowest ε-order part of `ℓ`.
pub fn base_of_form(form: &LinearForm<EpsScalar>) -> LinearForm<Rational> {
    form.lowest_order_part().canonical()
}

/// The common base of all summands, if there is one.
pub fn is_local(b: &BorderDecomposition) -> Option<LinearForm<Rational>> {
    let mut bases = b.summands.iter().map(|t| base_of_form(&t.form));
    let first = bases.next()?;
    bases.all(|x| x == first).then_some(first)
}

/// An invertible change of variables over ℚ(ε), regular at ε = 0 with
/// invertible value `a0` there.
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeOfVars {
    matrix: EpsMatrix,
    a0: Matrix<Rational>,
}

impl ChangeOfVars {
    pub fn new(matrix: EpsMatrix) -> Result<Self> {
        let a0 = matrix
            .limit_at_zero()
            .ok_or_else(|| Error::InvalidArgument("change of variables has a pole".into()))?;
        if !a0.is_square() || a0.rank() != a0.nrows() {
            return Err(Error::InvalidArgument(
                "change of variables is singular at eps = 0".into(),
            ));
        }
        Ok(ChangeOfVars { matrix, a0 })
    }

    pub fn identity(n: usize) -> Self {
        ChangeOfVars {
            matrix: Matrix::identity(n),
            a0: Matrix::identity(n),
        }
    }

    pub fn from_rational(m: &Matrix<Rational>) -> Result<Self> {
        Self::new(EpsMatrix::from_rational(m))
    }

    pub fn matrix(&self) -> &EpsMatrix {
        &self.matrix
    }

    pub fn a0(&self) -> &Matrix<Rational> {
        &self.a0
    }

    pub fn nvars(&self) -> usize {
        self.a0.nrows()
    }
}

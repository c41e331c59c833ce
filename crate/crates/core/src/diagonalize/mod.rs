//! Perturbed diagonalization of border decompositions and the derivative
//! certificates built on top of it.

mod echelon;

pub use echelon::{dvr_reduce_step, PivotChoice};

use num_traits::Zero;

use crate::algebra::{falling_factorial, EpsScalar, HomoPoly, LinearForm, Matrix, Rational, Ring};
use crate::decomposition::{verify_border, BorderDecomposition, ChangeOfVars, Decomposition};
use crate::error::{Error, Lemma, Result};
use echelon::Echelon;

/// A border decomposition rewritten in coordinates where its forms have
/// lower-triangular staircase shape.
///
/// Summand `i` of `border` is `(w_{perm[i]}, ℓ_{perm[i]}(Ax))`; the first `p`
/// summands are the pivots, pivot `c` sitting in variable `c` with valuation
/// `pivots[c].1`.
#[derive(Clone, Debug)]
pub struct DiagonalizedDecomposition {
    pub border: BorderDecomposition,
    pub change: ChangeOfVars,
    pub pivots: Vec<(usize, i64)>,
    pub perm: Vec<usize>,
    pub p: usize,
    /// `f(A₀x)`, the limit of `border`.
    pub target: HomoPoly<Rational>,
}

impl DiagonalizedDecomposition {
    pub fn rank(&self) -> usize {
        self.border.rank()
    }

    pub fn pivot_valuation(&self, var: usize) -> Option<i64> {
        self.pivots.iter().find(|(v, _)| *v == var).map(|&(_, q)| q)
    }
}

/// Diagonalizes `b`, whose limit is `f`; the forms of `b` must be regular at
/// ε = 0 with valuation zero (as produced by `normalize_border`).
pub fn diagonalize(b: &BorderDecomposition, f: &HomoPoly<Rational>) -> Result<DiagonalizedDecomposition> {
    let verdict = verify_border(b, f)?;
    if !verdict.is_verified() {
        return Err(Error::VerificationFailed(format!("{verdict:?}")));
    }
    for s in b.summands() {
        if s.form.min_valuation() != 0 {
            return Err(Error::InvalidArgument(
                "forms must have valuation zero; normalize first".into(),
            ));
        }
    }
    let n = b.nvars();
    let forms: Vec<LinearForm<EpsScalar>> = b.summands().iter().map(|s| s.form.clone()).collect();
    let mut ech = Echelon::new(n, &forms);
    while let Some((i, _, _)) = ech.select() {
        ech.pivot(i)?;
    }
    let p = ech.p();
    let mut perm = ech.pivot_rows.clone();
    perm.extend((0..b.rank()).filter(|i| !ech.pivot_rows.contains(i)));
    let mut border = BorderDecomposition::empty(n, b.degree());
    for &i in &perm {
        border.push(b.summands()[i].weight.clone(), LinearForm::new(ech.rows[i].clone())?);
    }
    let change = ChangeOfVars::new(ech.a.clone())?;
    let target = f.substitute_linear(change.a0())?;
    let d = DiagonalizedDecomposition {
        border,
        change,
        pivots: ech.qs.iter().enumerate().map(|(c, &q)| (c, q)).collect(),
        perm,
        p,
        target,
    };
    check_staircase(&d)?;
    let verdict = verify_border(&d.border, &d.target)?;
    if !verdict.is_verified() {
        return Err(Error::AssertionViolation(format!(
            "diagonalized decomposition does not converge to f(A0 x): {verdict:?}"
        )));
    }
    Ok(d)
}

/// Checks the staircase shape literally on the coefficient arrays.
pub fn check_staircase(d: &DiagonalizedDecomposition) -> Result<()> {
    let fail = |msg: String| Err(Error::AssertionViolation(msg));
    let n = d.border.nvars();
    if d.pivots.len() != d.p || d.p > n || d.p > d.border.rank() {
        return fail("pivot count inconsistent".into());
    }
    if d.pivots.first().is_some_and(|&(_, q)| q != 0) {
        return fail("first pivot valuation is not zero".into());
    }
    for (c, w) in d.pivots.windows(2).enumerate() {
        if w[1].1 < w[0].1 {
            return fail(format!("pivot valuations decrease at {}", c + 1));
        }
    }
    for (c, &(var, q)) in d.pivots.iter().enumerate() {
        if var != c {
            return fail(format!("pivot {c} sits in variable {var}"));
        }
        let row = d.border.summands()[c].form.coefs();
        if row[c] != EpsScalar::eps_monomial(Rational::from_integer(1.into()), q) {
            return fail(format!("pivot {c} does not have coefficient eps^{q}"));
        }
        if row[c + 1..].iter().any(|x| !x.is_zero()) {
            return fail(format!("pivot {c} uses a later variable"));
        }
        for (k, x) in row[..c].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let qk = d.pivots[k].1;
            let ok = x.is_polynomial()
                && x.num().degree().is_some_and(|deg| i64::from(deg) < q)
                && x.try_valuation().is_some_and(|v| v >= qk);
            if !ok {
                return fail(format!("pivot {c} has coefficient {x} at variable {k}"));
            }
        }
    }
    for (i, s) in d.border.summands().iter().enumerate().skip(d.p) {
        if s.form.coefs()[d.p..].iter().any(|x| !x.is_zero()) {
            return fail(format!("summand {i} uses a non-pivot variable"));
        }
    }
    if d.change.a0().rank() != n {
        return fail("A0 is singular".into());
    }
    Ok(())
}

/// Replaces `x_var` by `x_var - tail` in every transformed summand.
///
/// `tail` (coefficient vector) must have valuation at least one, so the limit
/// `f(A₀x)` does not change.
pub fn substitute_perturbation(
    d: &DiagonalizedDecomposition,
    var: usize,
    tail: &[EpsScalar],
) -> Result<DiagonalizedDecomposition> {
    let n = d.border.nvars();
    if tail.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: tail.len(),
        });
    }
    if var >= n {
        return Err(Error::InvalidArgument(format!("variable {var} out of range")));
    }
    if tail.iter().any(|t| t.try_valuation().is_some_and(|v| v < 1)) {
        return Err(Error::InvalidArgument("perturbation must have valuation >= 1".into()));
    }
    let mut e: Matrix<EpsScalar> = Matrix::identity(n);
    for (j, t) in tail.iter().enumerate() {
        let v = e.get(var, j).clone() - t;
        e.set(var, j, v);
    }
    let border = d.border.transform(&e)?;
    let change = ChangeOfVars::new(d.change.matrix().mul(&e)?)?;
    Ok(DiagonalizedDecomposition {
        border,
        change,
        pivots: d.pivots.clone(),
        perm: d.perm.clone(),
        p: d.p,
        target: d.target.clone(),
    })
}

/// `∂^j/∂x_var^j` of the weighted power sum, as a border decomposition of
/// degree `d - j`: summands `(w (d)_j c^j, L)` with `c = ∂L/∂x_var ≠ 0`.
///
/// Summands contributing only positive ε-orders are pruned. The result is
/// checked against `∂^j f(A₀x)/∂x_var^j`.
pub fn derivative_decomposition(
    d: &DiagonalizedDecomposition,
    var: usize,
    j: u32,
) -> Result<BorderDecomposition> {
    if d.pivot_valuation(var).is_none() {
        return Err(Error::InvalidArgument(format!("x{} is not a pivot variable", var + 1)));
    }
    derivative_along(&d.border, &d.target, var, j)
}

/// Same as `derivative_decomposition` for any decomposition with limit `f`.
pub fn derivative_along(
    b: &BorderDecomposition,
    f: &HomoPoly<Rational>,
    var: usize,
    j: u32,
) -> Result<BorderDecomposition> {
    let deg = b.degree();
    if j == 0 || j > deg {
        return Err(Error::InvalidArgument(format!("derivative order {j} out of range")));
    }
    let limit = f.differentiate(var, j)?;
    if limit.is_zero() {
        return Err(Error::ZeroDerivative);
    }
    let ff = EpsScalar::constant(Rational::from_integer(falling_factorial(deg, j)));
    let mut out = Decomposition::empty(b.nvars(), deg - j);
    for s in b.summands() {
        let c = s.form.coef(var);
        if c.is_zero() {
            continue;
        }
        let w = s.weight.clone() * &ff * &c.pow(j);
        let contribution = w.valuation()? + i64::from(deg - j) * s.form.min_valuation();
        if contribution >= 1 {
            continue;
        }
        out.push(w, s.form.clone());
    }
    if out.is_empty() {
        return Err(Error::lemma(
            Lemma::DerivativeCertificate,
            "every summand was pruned but the derivative is nonzero",
            Some(limit.to_string()),
        ));
    }
    let verdict = verify_border(&out, &limit)?;
    if !verdict.is_verified() {
        return Err(Error::lemma(
            Lemma::DerivativeCertificate,
            "derivative certificate does not converge to the derivative",
            Some(format!("{verdict:?}")),
        ));
    }
    Ok(out)
}

/// Substitutes zero for the listed variables, deleting vanishing summands.
pub fn restrict_vars_zero(b: &BorderDecomposition, vars: &[usize]) -> BorderDecomposition {
    b.restrict_zero(vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::decomposition::{is_local, BorderVerdict, Summand};

    fn q(c: i64) -> EpsScalar {
        EpsScalar::constant(int(c))
    }

    fn form(c: Vec<EpsScalar>) -> LinearForm<EpsScalar> {
        LinearForm::new(c).unwrap()
    }

    fn tangent(d: u32) -> (HomoPoly<Rational>, BorderDecomposition) {
        let w = EpsScalar::eps_monomial(rat(1, i64::from(d)), -1);
        let b = Decomposition::new(
            2,
            d,
            vec![
                Summand::new(w.clone(), form(vec![q(1), EpsScalar::eps()])),
                Summand::new(-w, form(vec![q(1), q(0)])),
            ],
        )
        .unwrap();
        (HomoPoly::monomial(&[d - 1, 1], int(1)), b)
    }

    /// Oracle: expanding the original sum and substituting `x ↦ Ax`.
    fn expansion_agrees(b: &BorderDecomposition, d: &DiagonalizedDecomposition) -> bool {
        let lhs = b.expand().substitute_linear(d.change.matrix()).unwrap();
        lhs == d.border.expand()
    }

    #[test]
    fn tangent_pair() {
        let (f, b) = tangent(3);
        let d = diagonalize(&b, &f).unwrap();
        assert_eq!(d.pivots, vec![(0, 0), (1, 1)]);
        assert_eq!(d.border.summands()[0].form.coefs(), &[q(1), q(0)]);
        assert_eq!(d.border.summands()[1].form.coefs(), &[q(1), EpsScalar::eps()]);
        assert!(expansion_agrees(&b, &d));
        assert!(is_local(&d.border).unwrap().coefs() == [int(1), int(0)]);
    }

    #[test]
    fn single_power() {
        let b = Decomposition::new(2, 4, vec![Summand::new(q(1), form(vec![q(1), q(0)]))]).unwrap();
        let f = HomoPoly::monomial(&[4, 0], int(1));
        let d = diagonalize(&b, &f).unwrap();
        assert_eq!(d.p, 1);
        assert!(d.change.matrix().is_identity());
        assert_eq!(d.border.summands()[0].form.coefs(), &[q(1), q(0)]);
    }

    #[test]
    fn two_bases() {
        let b = Decomposition::new(
            2,
            3,
            vec![
                Summand::new(q(1), form(vec![q(1), q(2)])),
                Summand::new(q(1), form(vec![q(3), q(1)])),
            ],
        )
        .unwrap();
        let f = b.expand().limit_at_zero().unwrap();
        let d = diagonalize(&b, &f).unwrap();
        assert_eq!(d.pivots, vec![(0, 0), (1, 0)]);
        assert!(expansion_agrees(&b, &d));
    }

    #[test]
    fn perturbation() {
        let e = EpsScalar::eps();
        let e2 = e.clone() * &e;
        let b = Decomposition::new(2, 3, vec![Summand::new(q(1), form(vec![q(1), e2.clone()]))]).unwrap();
        let f = HomoPoly::monomial(&[3, 0], int(1));
        let d = DiagonalizedDecomposition {
            border: b.clone(),
            change: ChangeOfVars::identity(2),
            pivots: vec![(0, 0)],
            perm: vec![0],
            p: 1,
            target: f.clone(),
        };
        let out = substitute_perturbation(&d, 0, &[q(0), e2]).unwrap();
        assert_eq!(out.border.summands()[0].form.coefs(), &[q(1), q(0)]);
        assert!(verify_border(&out.border, &f).unwrap().is_verified());
        let same = substitute_perturbation(&d, 0, &[q(0), q(0)]).unwrap();
        assert_eq!(same.border, d.border);
        assert!(substitute_perturbation(&d, 0, &[q(0), q(1)]).is_err());
    }

    #[test]
    fn derivative_examples() {
        let (f, b) = tangent(3);
        let d = diagonalize(&b, &f).unwrap();
        let dd = derivative_decomposition(&d, 1, 1).unwrap();
        assert_eq!(dd.rank(), 1);
        assert_eq!(dd.degree(), 2);
        assert_eq!(
            verify_border(&dd, &d.target.differentiate(1, 1).unwrap()).unwrap(),
            BorderVerdict::Verified { q: Some(1) }
        );

        let single = Decomposition::new(2, 4, vec![Summand::new(q(2), form(vec![q(1), q(0)]))]).unwrap();
        let f4 = HomoPoly::monomial(&[4, 0], int(2));
        let d = diagonalize(&single, &f4).unwrap();
        let dd = derivative_decomposition(&d, 0, 1).unwrap();
        assert_eq!(dd.summands()[0].weight, q(8));
        assert_eq!(dd.degree(), 3);
        assert_eq!(derivative_along(&single, &f4, 1, 1), Err(Error::ZeroDerivative));
    }

    #[test]
    fn restriction() {
        let e = EpsScalar::eps();
        let b = Decomposition::new(
            2,
            2,
            vec![
                Summand::new(q(1), form(vec![q(1), e.clone()])),
                Summand::new(q(1), form(vec![q(0), e])),
            ],
        )
        .unwrap();
        let r = restrict_vars_zero(&b, &[1]);
        assert_eq!(r.rank(), 1);
        assert_eq!(r.summands()[0].form.coefs(), &[q(1), q(0)]);

        let (_, t) = tangent(3);
        let r = restrict_vars_zero(&t, &[1]);
        assert!(matches!(
            verify_border(&r, &HomoPoly::zero(2, 3)),
            Err(Error::DegenerateSum) | Ok(BorderVerdict::ZeroLimit { .. })
        ));
    }
}

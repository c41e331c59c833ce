//! Exact arithmetic: rationals, ε-polynomials, ℚ(ε), sparse homogeneous
//! polynomials, linear forms and dense linear algebra.

mod eps;
mod form;
mod matrix;
mod poly;
mod scalar;
mod unipoly;
mod vandermonde;

pub use eps::EpsScalar;
pub use form::LinearForm;
pub use matrix::{EpsMatrix, Matrix};
pub use poly::{monomials_of_degree, power_of_form, HomoPoly, Monomial};
pub use scalar::{
    binomial, factorial, falling_factorial, format_rational, int, parse_rational, rat, Field,
    Rational, Ring,
};
pub use unipoly::{EpsPoly, UniPoly};
pub use vandermonde::{solve_vandermonde, standard_nodes};

use crate::error::Result;

/// `p(Mx)` with the rational coefficients of `p` lifted into ℚ(ε).
pub fn substitute_linear_eps(
    p: &HomoPoly<Rational>,
    m: &EpsMatrix,
) -> Result<HomoPoly<EpsScalar>> {
    p.lift().substitute_linear(m)
}

/// `∂^j p / ∂x_var^j`.
pub fn differentiate<S: Ring>(p: &HomoPoly<S>, var: usize, j: u32) -> Result<HomoPoly<S>> {
    p.differentiate(var, j)
}

pub fn eps_valuation(s: &EpsScalar) -> Result<i64> {
    s.valuation()
}

pub fn limit_at_zero(p: &HomoPoly<EpsScalar>) -> Result<HomoPoly<Rational>> {
    p.limit_at_zero()
}

pub fn invert_matrix(m: &EpsMatrix) -> Result<EpsMatrix> {
    m.inverse()
}


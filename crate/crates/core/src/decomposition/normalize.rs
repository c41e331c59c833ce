use num_traits::One;

use crate::algebra::{EpsScalar, LinearForm, Rational};
use crate::error::{Error, Result};

use super::{border_limit, BorderDecomposition, Summand};

/// Moves the ε-content of the form into the weight: `ℓ = ε^v ℓ'` with
/// `ℓ'` of valuation zero and weight `w ε^{dv}`.
pub fn extract_content(s: &Summand<EpsScalar>, d: u32) -> Summand<EpsScalar> {
    let v = s.form.min_valuation();
    if v == 0 {
        return s.clone();
    }
    let form = s.form.scale(&EpsScalar::eps_monomial(Rational::one(), -v)).expect("nonzero form");
    Summand::new(s.weight.mul_eps_pow(v * i64::from(d)), form)
}

/// Content-extracted, truncated copy of `b` with the same limit.
///
/// Every form becomes a polynomial in ε of valuation zero, truncated above
/// `ε^τ` where `-τ` is the valuation of its weight. Summands whose weight has
/// positive valuation contribute nothing at ε = 0 and are removed.
pub fn normalize_border(b: &BorderDecomposition) -> Result<BorderDecomposition> {
    let limit = border_limit(b)?;
    let d = b.degree();
    let mut out = BorderDecomposition::empty(b.nvars(), d);
    for s in b.summands() {
        let s = extract_content(s, d);
        let vw = s.weight.valuation()?;
        if vw >= 1 {
            continue;
        }
        let order = u32::try_from(-vw).unwrap() + 1;
        let coefs = s
            .form
            .coefs()
            .iter()
            .map(|c| c.truncated_series(order).map(EpsScalar::from_poly))
            .collect::<Result<Vec<_>>>()?;
        out.push(s.weight, LinearForm::new(coefs)?);
    }
    let again = out.expand().limit_at_zero()?;
    if again != limit {
        return Err(Error::AssertionViolation(
            "normalization changed the limit".into(),
        ));
    }
    Ok(out)
}

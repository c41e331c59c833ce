use crate::algebra::{monomials_of_degree, HomoPoly, Matrix, Rational};
use crate::error::{Error, Result};

use super::BorderDecomposition;

/// Result of rotating a target so that only its first `essential` variables occur.
#[derive(Clone, Debug)]
pub struct EssentialReduction {
    /// `f(Tx)`, still in the ambient number of variables.
    pub target: HomoPoly<Rational>,
    /// The forms `ℓ_i(Tx)`.
    pub border: BorderDecomposition,
    pub change: Matrix<Rational>,
    pub essential: usize,
}

impl EssentialReduction {
    /// Target and decomposition restricted to the essential variables.
    pub fn project(&self) -> Result<(HomoPoly<Rational>, BorderDecomposition)> {
        let n = self.essential;
        let others: Vec<usize> = (n..self.border.nvars()).collect();
        let b = self.border.restrict_zero(&others).truncate_vars(n);
        Ok((self.target.truncate_vars(n)?, b))
    }
}

/// Matrix whose rows are the coefficient vectors of the first partials.
fn partials_matrix(f: &HomoPoly<Rational>) -> Result<Matrix<Rational>> {
    let n = f.nvars();
    if f.degree() == 0 {
        return Ok(Matrix::zeros(n, 0));
    }
    let monos = monomials_of_degree(n, f.degree() - 1);
    let rows = (0..n)
        .map(|i| {
            let p = f.differentiate(i, 1)?;
            Ok(monos.iter().map(|m| p.coeff(m)).collect())
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    Matrix::from_rows(rows).map(|m| if monos.is_empty() { Matrix::zeros(n, 0) } else { m })
}

/// Dimension of the span of the first partial derivatives.
pub fn essential_variables(f: &HomoPoly<Rational>) -> Result<usize> {
    let m = partials_matrix(f)?;
    Ok(if m.ncols() == 0 { 0 } else { m.rank() })
}

/// Finds a rational change of variables `T` after which `f(Tx)` only involves
/// `x_1..x_N`, `N` the number of essential variables, and applies it to `b`.
pub fn essential_reduce(
    f: &HomoPoly<Rational>,
    b: &BorderDecomposition,
) -> Result<EssentialReduction> {
    let n = f.nvars();
    if b.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.nvars(),
        });
    }
    let p = partials_matrix(f)?;
    let kernel = if p.ncols() == 0 {
        (0..n)
            .map(|i| {
                let mut v = vec![Rational::from_integer(0.into()); n];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect()
    } else {
        p.transpose().kernel()
    };
    let essential = n - kernel.len();
    if essential > b.rank() {
        return Err(Error::AssertionViolation(format!(
            "{essential} essential variables exceed {} summands",
            b.rank()
        )));
    }
    // standard basis vectors completing the kernel to a basis come first
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for j in 0..n {
        if cols.len() == essential {
            break;
        }
        let mut e = vec![Rational::from_integer(0.into()); n];
        e[j] = Rational::from_integer(1.into());
        let mut trial = cols.clone();
        trial.push(e.clone());
        trial.extend(kernel.iter().cloned());
        if Matrix::from_rows(trial.clone())?.rank() == trial.len() {
            cols.push(e);
        }
    }
    cols.extend(kernel);
    let t = Matrix::from_cols(cols)?;
    let target = f.substitute_linear(&t)?;
    let border = b.transform_rational(&t)?;
    Ok(EssentialReduction {
        target,
        border,
        change: t,
        essential,
    })
}

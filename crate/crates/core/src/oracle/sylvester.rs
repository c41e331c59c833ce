use num_traits::Zero;

use crate::algebra::{binomial, monomials_of_degree, HomoPoly, Matrix, Monomial, Rational, UniPoly};
use crate::error::{Error, Result};

/// Nonzero binary form `Σ c_i x^{d-i} y^i`, stored as `[c_0, …, c_d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("binary form is zero".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_poly(f: &HomoPoly<Rational>) -> Result<Self> {
        if f.nvars() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: f.nvars(),
            });
        }
        let d = f.degree();
        BinaryForm::new(
            (0..=d)
                .map(|i| f.coeff(&Monomial::new(vec![d - i, i])))
                .collect(),
        )
    }

    pub fn to_poly(&self) -> HomoPoly<Rational> {
        let d = self.degree();
        HomoPoly::from_terms(
            2,
            d,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(vec![d - i as u32, i as u32]), c.clone())),
        )
        .expect("binary terms have the right shape")
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `a_i = c_i / binom(d, i)`
    fn apolar(&self) -> Vec<Rational> {
        let d = u64::from(self.degree());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / Rational::from_integer(binomial(d, i as u64)))
            .collect()
    }
}

fn hankel(a: &[Rational], s: usize) -> Matrix<Rational> {
    let d = a.len() - 1;
    let rows = (0..=d - s)
        .map(|i| (0..=s).map(|j| a[i + j].clone()).collect())
        .collect();
    Matrix::from_rows(rows).expect("rectangular")
}

/// Whether `Σ c_j X^{s-j} Y^j` has no repeated factor over the algebraic closure.
fn square_free(c: &[Rational]) -> bool {
    let s = c.len() - 1;
    // G(t, 1) = Σ c_j t^{s-j}
    let coeffs: Vec<Rational> = (0..=s).map(|k| c[s - k].clone()).collect();
    let g = UniPoly::from_coeffs(&coeffs);
    let Some(deg) = g.degree() else { return false };
    // multiplicity of the root at Y = 0
    if s as u32 - deg >= 2 {
        return false;
    }
    if deg == 0 {
        return true;
    }
    g.gcd(&g.derivative()).degree() == Some(0)
}

/// `(wr, bwr)` of a binary form.
pub fn sylvester_rank(f: &BinaryForm) -> (usize, usize) {
    let d = f.degree() as usize;
    if d == 0 {
        return (1, 1);
    }
    let a = f.apolar();
    for s in 1..=d {
        let kernel = hankel(&a, s).kernel();
        if kernel.is_empty() {
            continue;
        }
        // kernels of dimension two have no common factor, so a generic member is square-free
        if kernel.len() >= 2 || square_free(&kernel[0]) {
            return (s, s);
        }
        return (d + 2 - s, s);
    }
    unreachable!("the last catalecticant always has a kernel")
}

/// Rank of the map sending each order-`s` partial derivative of `f` to its
/// coefficient vector.
pub fn catalecticant_bound(f: &HomoPoly<Rational>, s: u32) -> usize {
    let n = f.nvars();
    let d = f.degree();
    if s > d || f.is_zero() {
        return 0;
    }
    let cols = monomials_of_degree(n, d - s);
    let rows: Vec<Vec<Rational>> = monomials_of_degree(n, s)
        .into_iter()
        .map(|alpha| {
            let mut p = f.clone();
            for (v, &e) in alpha.exps().iter().enumerate() {
                if e > 0 {
                    p = p.differentiate(v, e).expect("order within degree");
                }
            }
            cols.iter().map(|m| p.coeff(m)).collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("rectangular").rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn bf(c: &[i64]) -> BinaryForm {
        BinaryForm::new(c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(sylvester_rank(&bf(&[1, 0, 0, 0])), (1, 1));
        assert_eq!(sylvester_rank(&bf(&[0, 1, 0, 0])), (3, 2));
        assert_eq!(sylvester_rank(&bf(&[1, 0, 0, 1])), (2, 2));
        assert_eq!(sylvester_rank(&bf(&[0, 1, 0])), (2, 2));
        assert_eq!(sylvester_rank(&bf(&[0, 1])), (1, 1));
        assert_eq!(sylvester_rank(&bf(&[5])), (1, 1));
    }

    #[test]
    fn binary_round_trip() {
        let f = bf(&[1, -2, 0, 3]);
        assert_eq!(BinaryForm::from_poly(&f.to_poly()).unwrap(), f);
        assert!(BinaryForm::new(vec![int(0), int(0)]).is_err());
    }

    #[test]
    fn catalecticant_examples() {
        assert_eq!(catalecticant_bound(&HomoPoly::monomial(&[4, 0], int(1)), 2), 1);
        assert_eq!(catalecticant_bound(&HomoPoly::monomial(&[2, 1], int(1)), 1), 2);
        let f = HomoPoly::from_terms(
            3,
            2,
            vec![
                (Monomial::new(vec![1, 1, 0]), int(1)),
                (Monomial::new(vec![0, 0, 2]), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(catalecticant_bound(&f, 1), 3);
        assert_eq!(catalecticant_bound(&f, 0), 1);
    }
}

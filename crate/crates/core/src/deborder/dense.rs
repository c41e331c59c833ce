use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    binomial, monomials_of_degree, power_of_form, solve_vandermonde, standard_nodes, HomoPoly,
    LinearForm, Matrix, Rational,
};
use crate::decomposition::{verify_waring, WaringDecomposition};
use crate::error::{Error, Result};

const MAX_DRAWS: usize = 64;
const HEIGHT: i64 = 9;

/// Weighted decomposition of `h` from an exact linear solve in the span of
/// `e`-th powers of pseudo-random integer forms in the variables of `h`.
pub fn dense_decompose(h: &HomoPoly<Rational>, seed: u64) -> Result<WaringDecomposition> {
    dense_decompose_with(h, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn dense_decompose_with<R: Rng>(
    h: &HomoPoly<Rational>,
    rng: &mut R,
) -> Result<WaringDecomposition> {
    if h.is_zero() {
        return Err(Error::InvalidArgument("cannot decompose the zero polynomial".into()));
    }
    let n = h.nvars();
    let e = h.degree();
    let mut out = WaringDecomposition::empty(n, e);
    let vars = h.support_vars();
    if e == 0 {
        let c = h.terms().next().unwrap().1.clone();
        out.push(c, LinearForm::var(n, 0));
        return Ok(out);
    }
    if e == 1 {
        let coefs: Vec<Rational> = (0..n)
            .map(|i| h.coeff(&crate::algebra::Monomial::var_power(n, i, 1)))
            .collect();
        out.push(Rational::one(), LinearForm::new(coefs)?);
        return Ok(out);
    }
    if vars.len() == 1 {
        let (_, c) = h.terms().next().unwrap();
        out.push(c.clone(), LinearForm::var(n, vars[0]));
        return Ok(out);
    }
    let m = vars.len();
    let monos = monomials_of_degree(m, e);
    let count = monos.len();
    debug_assert_eq!(binomial((m as u64) + u64::from(e) - 1, u64::from(e)), count.into());
    // h in the local variables
    let rhs: Vec<Rational> = monos
        .iter()
        .map(|mono| {
            let mut exps = vec![0; n];
            for (k, &v) in vars.iter().enumerate() {
                exps[v] = mono.exps()[k];
            }
            h.coeff(&crate::algebra::Monomial::new(exps))
        })
        .collect();
    for _ in 0..MAX_DRAWS {
        let forms: Vec<Vec<Rational>> = (0..count)
            .map(|_| {
                (0..m)
                    .map(|_| Rational::from_integer(rng.gen_range(-HEIGHT..=HEIGHT).into()))
                    .collect()
            })
            .collect();
        if forms.iter().any(|f| f.iter().all(|c| c.is_zero())) {
            continue;
        }
        let cols: Vec<Vec<Rational>> = forms
            .iter()
            .map(|f| {
                let p = power_of_form(f, e);
                monos.iter().map(|mono| p.coeff(mono)).collect()
            })
            .collect();
        let a = Matrix::from_cols(cols)?;
        if a.rank() < count {
            continue;
        }
        let Some(c) = a.solve(&rhs)? else { continue };
        for (w, f) in c.into_iter().zip(forms) {
            if w.is_zero() {
                continue;
            }
            let mut coefs = vec![Rational::zero(); n];
            for (k, &v) in vars.iter().enumerate() {
                coefs[v] = f[k].clone();
            }
            out.push(w, LinearForm::new(coefs)?);
        }
        if !verify_waring(&out, h)? {
            return Err(Error::AssertionViolation("dense decomposition does not verify".into()));
        }
        return Ok(out);
    }
    Err(Error::RetryLimit(format!(
        "no nonsingular system of {count} random powers after {MAX_DRAWS} draws"
    )))
}

/// Decomposition of `z^k · Σ w_i ℓ_i^e` of degree `e + k`.
///
/// Each `ℓ^e z^k` with `ℓ` not proportional to `z` is written as
/// `Σ_j c_j (ℓ + t_j z)^{e+k}` over the nodes `0, 1, -1, 2, …`, where the
/// `c_j` solve `Σ_j c_j t_j^s = [s = k] / binom(e+k, k)`.
pub fn multiply_by_power(
    w: &WaringDecomposition,
    z: &LinearForm<Rational>,
    k: u32,
) -> Result<WaringDecomposition> {
    if z.nvars() != w.nvars() {
        return Err(Error::DimensionMismatch {
            expected: w.nvars(),
            found: z.nvars(),
        });
    }
    if k == 0 {
        return Ok(w.clone());
    }
    let e = w.degree();
    let total = e + k;
    let nodes = standard_nodes(total as usize + 1);
    let scale = Rational::one() / Rational::from_integer(binomial(total.into(), k.into()));
    let rhs: Vec<Rational> = (0..=total)
        .map(|s| if s == k { scale.clone() } else { Rational::zero() })
        .collect();
    let coeffs = solve_vandermonde(&nodes, &rhs)?;
    let mut out = WaringDecomposition::empty(w.nvars(), total);
    for s in w.summands() {
        if e == 0 {
            out.push(s.weight.clone(), z.clone());
            continue;
        }
        if let Some(lambda) = s.form.ratio_to(z) {
            out.push(s.weight.clone() * lambda.pow(e as i32), z.clone());
            continue;
        }
        for (c, t) in coeffs.iter().zip(&nodes) {
            if c.is_zero() {
                continue;
            }
            let coefs = s
                .form
                .coefs()
                .iter()
                .zip(z.coefs())
                .map(|(a, b)| a + b * t)
                .collect();
            out.push(s.weight.clone() * c, LinearForm::new(coefs)?);
        }
    }
    Ok(out.compress())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Monomial};

    fn lf(c: &[i64]) -> LinearForm<Rational> {
        LinearForm::new(c.iter().map(|&v| int(v)).collect()).unwrap()
    }

    #[test]
    fn classic_product() {
        let h = HomoPoly::monomial(&[1, 1], int(1));
        let w = dense_decompose(&h, 1).unwrap();
        assert!(w.rank() <= 3);
        assert!(verify_waring(&w, &h).unwrap());
    }

    #[test]
    fn linear_form_is_one_summand() {
        let h = lf(&[2, 0, -3]).to_poly();
        let w = dense_decompose(&h, 1).unwrap();
        assert_eq!(w.rank(), 1);
        assert!(verify_waring(&w, &h).unwrap());
    }

    #[test]
    fn cubic_binary() {
        let h = HomoPoly::monomial(&[2, 1], int(1));
        let w = dense_decompose(&h, 5).unwrap();
        assert!(w.rank() <= 4);
        assert!(verify_waring(&w, &h).unwrap());
    }

    #[test]
    fn sparse_support_in_more_variables() {
        let h = HomoPoly::from_terms(
            4,
            3,
            vec![
                (Monomial::new(vec![0, 2, 0, 1]), int(3)),
                (Monomial::new(vec![0, 0, 0, 3]), rat(-1, 2)),
            ],
        )
        .unwrap();
        let w = dense_decompose(&h, 9).unwrap();
        assert!(w.rank() <= 4);
        assert!(w.summands().iter().all(|s| s.form.coef(0).is_zero() && s.form.coef(2).is_zero()));
        assert!(verify_waring(&w, &h).unwrap());
    }

    #[test]
    fn power_multiplication_examples() {
        // x z² = ((x+z)³ + (x−z)³ − 2x³)/6
        let w = WaringDecomposition::new(2, 1, vec![crate::decomposition::Summand::new(int(1), lf(&[1, 0]))]).unwrap();
        let out = multiply_by_power(&w, &lf(&[0, 1]), 2).unwrap();
        assert_eq!(out.rank(), 3);
        assert!(verify_waring(&out, &HomoPoly::monomial(&[1, 2], int(1))).unwrap());
        let got: Vec<(Rational, Vec<Rational>)> = out
            .summands()
            .iter()
            .map(|s| (s.weight.clone(), s.form.coefs().to_vec()))
            .collect();
        assert!(got.contains(&(rat(1, 6), vec![int(1), int(1)])));
        assert!(got.contains(&(rat(1, 6), vec![int(1), int(-1)])));
        assert!(got.contains(&(rat(-1, 3), vec![int(1), int(0)])));

        let zz = WaringDecomposition::new(1, 1, vec![crate::decomposition::Summand::new(int(1), lf(&[1]))]).unwrap();
        let out = multiply_by_power(&zz, &lf(&[1]), 1).unwrap();
        assert_eq!(out.rank(), 1);
        assert_eq!(out.degree(), 2);

        let x2 = WaringDecomposition::new(2, 2, vec![crate::decomposition::Summand::new(int(1), lf(&[1, 0]))]).unwrap();
        let out = multiply_by_power(&x2, &lf(&[0, 1]), 1).unwrap();
        assert!(out.rank() <= 4);
        assert!(verify_waring(&out, &HomoPoly::monomial(&[2, 1], int(1))).unwrap());
    }
}

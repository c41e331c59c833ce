use num_traits::{One, Zero};

use crate::algebra::{EpsMatrix, EpsScalar, LinearForm, Matrix, Rational};
use crate::error::{Error, Result};

/// Column echelon reduction of a family of forms over the valuation ring
/// `ℚ[ε]` localized at `ε`.
///
/// Keeps `A` (regular at ε = 0 with invertible value there) and the rows
/// `ℓ_i · A`, i.e. the coefficient vectors of `ℓ_i(Ax)`. After `p` pivot
/// steps, pivot column `c < p` holds `ε^{q_c}` in its pivot row, the pivot
/// row vanishes in every later column, and its entries in earlier columns are
/// polynomials of degree `< q_c`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    pub n: usize,
    pub a: EpsMatrix,
    pub rows: Vec<Vec<EpsScalar>>,
    pub pivot_rows: Vec<usize>,
    pub qs: Vec<i64>,
}

impl Echelon {
    pub fn new(n: usize, forms: &[LinearForm<EpsScalar>]) -> Self {
        Echelon {
            n,
            a: Matrix::identity(n),
            rows: forms.iter().map(|f| f.coefs().to_vec()).collect(),
            pivot_rows: Vec::new(),
            qs: Vec::new(),
        }
    }

    pub fn p(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Valuation of row `i` restricted to the non-pivot columns and the first
    /// column attaining it; `None` if the row vanishes there.
    pub fn reduced_valuation(&self, i: usize) -> Option<(i64, usize)> {
        let mut best: Option<(i64, usize)> = None;
        for j in self.p()..self.n {
            if let Some(v) = self.rows[i][j].try_valuation() {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, j));
                }
            }
        }
        best
    }

    /// Non-pivot row of least reduced valuation, smallest index on ties.
    pub fn select(&self) -> Option<(usize, i64, usize)> {
        let mut best: Option<(usize, i64, usize)> = None;
        for i in 0..self.rows.len() {
            if self.pivot_rows.contains(&i) {
                continue;
            }
            if let Some((v, j)) = self.reduced_valuation(i) {
                if best.is_none_or(|(_, bv, _)| v < bv) {
                    best = Some((i, v, j));
                }
            }
        }
        best
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        for r in &mut self.rows {
            r.swap(a, b);
        }
    }

    fn scale_col(&mut self, j: usize, s: &EpsScalar) {
        self.a.scale_col(j, s);
        for r in &mut self.rows {
            r[j] = r[j].clone() * s;
        }
    }

    /// `col[dst] -= s · col[src]`
    fn sub_col(&mut self, dst: usize, src: usize, s: &EpsScalar) {
        if s.is_zero() {
            return;
        }
        self.a.sub_col_multiple(dst, src, s);
        for r in &mut self.rows {
            if !r[src].is_zero() {
                r[dst] = r[dst].clone() - &(r[src].clone() * s);
            }
        }
    }

    /// Makes row `i` the next pivot. Returns its valuation.
    pub fn pivot(&mut self, i: usize) -> Result<i64> {
        let (q, j) = self.reduced_valuation(i).ok_or(Error::NoPivot)?;
        let c = self.p();
        self.swap_cols(c, j);
        let eq = EpsScalar::eps_monomial(Rational::one(), q);
        let s = eq.clone() / &self.rows[i][c];
        self.scale_col(c, &s);
        for j in c + 1..self.n {
            let t = self.rows[i][j].clone() / &eq;
            self.sub_col(j, c, &t);
        }
        for k in 0..c {
            let a = self.rows[i][k].clone();
            if a.is_zero() {
                continue;
            }
            let head = EpsScalar::from_poly(a.truncated_series(u32::try_from(q).unwrap())?);
            let tail = (a - &head).mul_eps_pow(-q);
            self.sub_col(k, c, &tail);
        }
        self.pivot_rows.push(i);
        self.qs.push(q);
        Ok(q)
    }

    /// Row `i` with its pivot-column part removed, in original coordinates.
    pub fn reduced_form(&self, i: usize) -> Result<LinearForm<EpsScalar>> {
        let mut v = self.rows[i].clone();
        for x in v.iter_mut().take(self.p()) {
            *x = EpsScalar::zero();
        }
        let inv = self.a.inverse()?;
        LinearForm::new(v)?.transform(&inv)?.ok_or(Error::NoPivot)
    }
}

/// The candidate chosen by one reduction step.
#[derive(Clone, Debug, PartialEq)]
pub struct PivotChoice {
    pub index: usize,
    pub valuation: i64,
    /// The candidate reduced modulo the pivots, in the original coordinates.
    pub reduced: LinearForm<EpsScalar>,
    /// Canonical representative of the lowest ε-order part of `reduced`.
    pub leading: LinearForm<Rational>,
}

/// Reduces every candidate modulo `pivots` (taken in the given order) with
/// coefficients regular at ε = 0 and returns the one of least valuation,
/// smallest index on ties.
pub fn dvr_reduce_step(
    candidates: &[LinearForm<EpsScalar>],
    pivots: &[LinearForm<EpsScalar>],
) -> Result<PivotChoice> {
    let n = candidates
        .first()
        .or(pivots.first())
        .map(|f| f.nvars())
        .ok_or(Error::NoPivot)?;
    for f in candidates.iter().chain(pivots) {
        if f.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.nvars(),
            });
        }
    }
    let forms: Vec<LinearForm<EpsScalar>> = pivots.iter().chain(candidates).cloned().collect();
    let mut ech = Echelon::new(n, &forms);
    for i in 0..pivots.len() {
        ech.pivot(i).map_err(|e| match e {
            Error::NoPivot => Error::InvalidArgument(format!("pivot {i} depends on earlier pivots")),
            e => e,
        })?;
    }
    let mut best: Option<(usize, i64)> = None;
    for c in 0..candidates.len() {
        if let Some((v, _)) = ech.reduced_valuation(pivots.len() + c) {
            if best.is_none_or(|(_, bv)| v < bv) {
                best = Some((c, v));
            }
        }
    }
    let (index, valuation) = best.ok_or(Error::NoPivot)?;
    let reduced = ech.reduced_form(pivots.len() + index)?;
    let leading = reduced.lowest_order_part().canonical();
    Ok(PivotChoice {
        index,
        valuation,
        reduced,
        leading,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn q(c: i64) -> EpsScalar {
        EpsScalar::constant(int(c))
    }

    fn form(c: Vec<EpsScalar>) -> LinearForm<EpsScalar> {
        LinearForm::new(c).unwrap()
    }

    #[test]
    fn tie_goes_to_smallest_index() {
        let e = EpsScalar::eps();
        let c = dvr_reduce_step(&[form(vec![q(1), e]), form(vec![q(1), q(0)])], &[]).unwrap();
        assert_eq!(c.index, 0);
        assert_eq!(c.valuation, 0);
        assert_eq!(c.leading.coefs(), &[int(1), int(0)]);
    }

    #[test]
    fn reduction_by_a_pivot() {
        let e = EpsScalar::eps();
        let c = dvr_reduce_step(&[form(vec![q(1), q(0)])], &[form(vec![q(1), e.clone()])]).unwrap();
        assert_eq!(c.index, 0);
        assert_eq!(c.valuation, 1);
        assert_eq!(c.reduced.coefs(), &[q(0), -e]);
        assert_eq!(c.leading.coefs(), &[int(0), int(1)]);
    }

    #[test]
    fn full_reduction_gives_no_pivot() {
        let e = EpsScalar::eps();
        let r = dvr_reduce_step(
            &[form(vec![q(1), q(0)])],
            &[form(vec![q(1), e]), form(vec![q(0), q(1)])],
        );
        assert_eq!(r, Err(Error::NoPivot));
    }

    #[test]
    fn echelon_keeps_unit_change() {
        let e = EpsScalar::eps();
        let e2 = e.clone() * &e;
        let forms = vec![
            form(vec![q(1), e.clone(), e2.clone()]),
            form(vec![q(1), q(0), q(0)]),
            form(vec![q(1), e.clone() * &q(2), e2.clone() * &q(4)]),
        ];
        let mut ech = Echelon::new(3, &forms);
        while let Some((i, _, _)) = ech.select() {
            ech.pivot(i).unwrap();
        }
        assert_eq!(ech.qs, vec![0, 1, 2]);
        assert!(ech.a.is_unit_at_zero());
    }
}

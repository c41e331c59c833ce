//! Dense matrices with exact elimination over a field.

use std::fmt;

use super::eps::EpsScalar;
use super::scalar::{Field, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    nrows: usize,
    ncols: usize,
    data: Vec<S>,
}

/// Square matrix over ℚ(ε).
pub type EpsMatrix = Matrix<EpsScalar>;

impl<S: Ring> Matrix<S> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![S::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<S>>) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: other.nrows,
            });
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + &(a.clone() * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn map<T: Ring, F: Fn(&S) -> T>(&self, f: F) -> Matrix<T> {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.nrows {
            self.data.swap(i * self.ncols + a, i * self.ncols + b);
        }
    }

    pub fn scale_col(&mut self, j: usize, s: &S) {
        for i in 0..self.nrows {
            let v = self.get(i, j).clone() * s;
            self.set(i, j, v);
        }
    }

    /// `col[dst] -= s · col[src]`
    pub fn sub_col_multiple(&mut self, dst: usize, src: usize, s: &S) {
        if s.is_zero() {
            return;
        }
        for i in 0..self.nrows {
            let a = self.get(i, src);
            if a.is_zero() {
                continue;
            }
            let v = self.get(i, dst).clone() - &(a.clone() * s);
            self.set(i, dst, v);
        }
    }
}

/// Reduced row echelon form; returns the pivot columns.
fn rref<S: Field>(m: &mut Matrix<S>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.ncols {
        if r == m.nrows {
            break;
        }
        let Some(p) = (r..m.nrows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..m.ncols {
                m.data.swap(p * m.ncols + j, r * m.ncols + j);
            }
        }
        let inv = m.get(r, c).inv();
        for j in c..m.ncols {
            let v = m.get(r, j).clone() * &inv;
            m.set(r, j, v);
        }
        for i in 0..m.nrows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..m.ncols {
                let b = m.get(r, j);
                if b.is_zero() {
                    continue;
                }
                let v = m.get(i, j).clone() - &(f.clone() * b);
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl<S: Field> Matrix<S> {
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        rref(&mut m).len()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                found: self.ncols,
            });
        }
        let n = self.nrows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, S::one());
        }
        let pivots = rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Some solution of `self · x = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[S]) -> Result<Option<Vec<S>>> {
        if rhs.len() != self.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                found: rhs.len(),
            });
        }
        let mut aug = Self::zeros(self.nrows, self.ncols + 1);
        for (i, b) in rhs.iter().enumerate() {
            for j in 0..self.ncols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.ncols, b.clone());
        }
        let pivots = rref(&mut aug);
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.ncols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.ncols).clone();
        }
        Ok(Some(x))
    }

    /// Basis of the right kernel `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = rref(&mut m);
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.ncols];
                v[f] = S::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

impl EpsMatrix {
    /// Entrywise value at ε = 0, `None` if some entry has a pole.
    pub fn limit_at_zero(&self) -> Option<Matrix<Rational>> {
        let data: Option<Vec<Rational>> = self.data.iter().map(|e| e.value_at_zero()).collect();
        Some(Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: data?,
        })
    }

    /// Regular at ε = 0 with an invertible value there.
    pub fn is_unit_at_zero(&self) -> bool {
        self.is_square()
            && self
                .limit_at_zero()
                .is_some_and(|a0| a0.rank() == self.nrows)
    }

    pub fn from_rational(m: &Matrix<Rational>) -> Self {
        m.map(|q| EpsScalar::constant(q.clone()))
    }
}

impl<S: Ring> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<S: Ring> Matrix<S> {
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| {
                (0..self.ncols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;
    use num_traits::{One, Zero};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn inverse_examples() {
        let id: EpsMatrix = Matrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);

        let e = EpsScalar::eps();
        let diag = Matrix::from_rows(vec![
            vec![EpsScalar::one(), EpsScalar::zero()],
            vec![EpsScalar::zero(), e.clone()],
        ])
        .unwrap();
        let inv = diag.inverse().unwrap();
        assert_eq!(*inv.get(1, 1), EpsScalar::eps_monomial(int(1), -1));

        let upper = Matrix::from_rows(vec![
            vec![EpsScalar::one(), e.clone()],
            vec![EpsScalar::zero(), EpsScalar::one()],
        ])
        .unwrap();
        let inv = upper.inverse().unwrap();
        assert_eq!(*inv.get(0, 1), -e);
        assert!(upper.mul(&inv).unwrap().is_identity());
        assert!(upper.is_unit_at_zero());
        assert!(!diag.is_unit_at_zero());
    }

    #[test]
    fn singular_detected() {
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn rank_solve_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        let prod = m.mul(&Matrix::from_cols(ker.clone()).unwrap()).unwrap();
        assert!(prod.rows().iter().flatten().all(|v| v.is_zero()));
        let x = m.solve(&[int(6), int(12), int(2)]).unwrap().unwrap();
        let back = m.mul(&Matrix::from_cols(vec![x]).unwrap()).unwrap();
        assert_eq!(back.col(0), vec![int(6), int(12), int(2)]);
        assert_eq!(m.solve(&[int(1), int(1), int(1)]).unwrap(), None);
    }
}

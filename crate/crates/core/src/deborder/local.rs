use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{HomoPoly, LinearForm, Matrix, Monomial, Rational};
use crate::decomposition::{base_of_form, BorderDecomposition};
use crate::error::{Error, Lemma, Result};

/// One group of summands sharing a projective base, with its own limit.
#[derive(Clone, Debug)]
pub struct LocalPart {
    pub base: LinearForm<Rational>,
    pub border: BorderDecomposition,
    pub limit: HomoPoly<Rational>,
}

/// Groups the summands of `b` by base (in order of first appearance) and
/// checks that every group converges on its own and that the limits add up
/// to `f`. Groups whose limit vanishes are dropped.
pub fn partition_into_local(
    b: &BorderDecomposition,
    f: &HomoPoly<Rational>,
) -> Result<Vec<LocalPart>> {
    let r = b.rank() as u64;
    if u64::from(b.degree()) + 1 < r {
        return Err(Error::InvalidArgument(format!(
            "degree {} is below rank {} minus one",
            b.degree(),
            r
        )));
    }
    let mut groups: Vec<(LinearForm<Rational>, BorderDecomposition)> = Vec::new();
    for s in b.summands() {
        let base = base_of_form(&s.form);
        match groups.iter_mut().find(|(g, _)| *g == base) {
            Some((_, part)) => part.push(s.weight.clone(), s.form.clone()),
            None => {
                let mut part = BorderDecomposition::empty(b.nvars(), b.degree());
                part.push(s.weight.clone(), s.form.clone());
                groups.push((base, part));
            }
        }
    }
    let mut parts = Vec::new();
    let mut total = HomoPoly::zero(f.nvars(), f.degree());
    for (base, border) in groups {
        let limit = match border.expand().limit_at_zero() {
            Ok(l) => l,
            Err(Error::PoleAtZero { monomial, order }) => {
                return Err(Error::lemma(
                    Lemma::LocalPartition,
                    format!("partial sum at base {base} diverges"),
                    Some(format!("{monomial} has a pole of order {order}")),
                ))
            }
            Err(e) => return Err(e),
        };
        if limit.is_zero() {
            continue;
        }
        total = total.try_add(&limit)?;
        parts.push(LocalPart {
            base,
            border,
            limit,
        });
    }
    if let Some(m) = total.first_difference(f) {
        return Err(Error::lemma(
            Lemma::LocalPartition,
            "local limits do not add up to the target",
            Some(m.to_string()),
        ));
    }
    Ok(parts)
}

/// Cofactor `g` with `f = ℓ^{d-r+1} g`.
pub fn extract_local_structure(
    f: &HomoPoly<Rational>,
    base: &LinearForm<Rational>,
    r: usize,
    d: u32,
) -> Result<HomoPoly<Rational>> {
    let n = f.nvars();
    let e = i64::from(d) - r as i64 + 1;
    if e < 0 {
        return Err(Error::InvalidArgument(format!("degree {d} is below rank {r} minus one")));
    }
    let e = e as u32;
    let fail = || {
        Error::lemma(
            Lemma::LocalDivisibility,
            format!("target is not divisible by ({base})^{e}"),
            Some(f.to_string()),
        )
    };
    if *base == LinearForm::var(n, 0) {
        return f.divide_by_var_power(0, e).ok_or_else(fail);
    }
    // y = Px with ℓ as the first row of P
    let pivot = base.first_nonzero();
    let mut rows = vec![base.coefs().to_vec()];
    for j in (0..n).filter(|&j| j != pivot) {
        let mut v = vec![Rational::zero(); n];
        v[j] = Rational::from_integer(1.into());
        rows.push(v);
    }
    let p = Matrix::from_rows(rows)?;
    let in_y = f.substitute_linear(&p.inverse()?)?;
    let g = in_y.divide_by_var_power(0, e).ok_or_else(fail)?;
    g.substitute_linear(&p)
}

/// Cofactors of `z_i^k` keyed by `(variable index, k)`.
pub type CellTable = BTreeMap<(usize, u32), HomoPoly<Rational>>;

/// Splits `g` into the part `f0` in the first `ysize` variables and the
/// cofactors `g_{i,k}` of `z_i^k`, where `z_i` is the first non-`Y` variable
/// of a term and `k` its exact power. Keys are `(variable index, k)`.
pub fn split_and_group(
    g: &HomoPoly<Rational>,
    ysize: usize,
) -> (HomoPoly<Rational>, CellTable) {
    let n = g.nvars();
    let mut f0 = HomoPoly::zero(n, g.degree());
    let mut table = CellTable::new();
    for (m, c) in g.terms() {
        let Some(i) = (ysize..n).find(|&v| m.exps()[v] > 0) else {
            f0 = f0
                .try_add(&HomoPoly::from_terms(n, g.degree(), [(m.clone(), c.clone())]).unwrap())
                .unwrap();
            continue;
        };
        let k = m.exps()[i];
        let mut exps = m.exps().to_vec();
        exps[i] = 0;
        let term = HomoPoly::from_terms(n, g.degree() - k, [(Monomial::new(exps), c.clone())]).unwrap();
        let entry = table
            .entry((i, k))
            .or_insert_with(|| HomoPoly::zero(n, g.degree() - k));
        *entry = entry.try_add(&term).unwrap();
    }
    (f0, table)
}

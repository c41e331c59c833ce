use num_traits::{One, Zero};

use super::scalar::Rational;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Solves `Σ_j c_j · nodes_j^s = rhs_s` for `s = 0..n`.
///
/// Uses the Lagrange basis of the nodes: `c_j = Σ_s rhs_s · [t^s] L_j(t)`,
/// where `L_j(t) = P(t) / ((t - t_j) P'(t_j))` and `P = ∏ (t - t_k)`.
pub fn solve_vandermonde(nodes: &[Rational], rhs: &[Rational]) -> Result<Vec<Rational>> {
    if nodes.len() != rhs.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            found: rhs.len(),
        });
    }
    for (i, a) in nodes.iter().enumerate() {
        if nodes[..i].contains(a) {
            return Err(Error::DuplicateNodes);
        }
    }
    let master = nodes.iter().fold(UniPoly::one(), |acc, t| {
        acc * &UniPoly::from_coeffs(&[-t.clone(), Rational::one()])
    });
    let dmaster = master.derivative();
    let mut out = Vec::with_capacity(nodes.len());
    for t in nodes {
        // synthetic division of the master polynomial by (x - t)
        let n = nodes.len();
        let mut quot = vec![Rational::zero(); n];
        let mut carry = Rational::zero();
        for e in (0..n).rev() {
            carry = master.coeff(e as u32 + 1) + carry * t;
            quot[e] = carry.clone();
        }
        let scale = Rational::one() / dmaster.eval(t);
        let c: Rational = quot
            .iter()
            .zip(rhs)
            .filter(|(_, b)| !b.is_zero())
            .map(|(l, b)| l * b)
            .sum();
        out.push(c * scale);
    }
    Ok(out)
}

/// Distinct nodes `0, 1, -1, 2, -2, …`.
pub fn standard_nodes(count: usize) -> Vec<Rational> {
    (0..count)
        .map(|i| {
            let k = i64::try_from(i.div_ceil(2)).unwrap();
            let v = if i % 2 == 1 { k } else { -k };
            Rational::from_integer(v.into())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::Matrix;
    use crate::algebra::scalar::{int, rat, Ring};

    fn residual_is_zero(nodes: &[Rational], rhs: &[Rational], c: &[Rational]) -> bool {
        (0..nodes.len()).all(|s| {
            let lhs: Rational = c
                .iter()
                .zip(nodes)
                .map(|(cj, t)| cj * Ring::pow(t, s as u32))
                .sum();
            lhs == rhs[s]
        })
    }

    #[test]
    fn examples() {
        // c0 + c1 = 1 and c1 = 1
        let c = solve_vandermonde(&[int(0), int(1)], &[int(1), int(1)]).unwrap();
        assert_eq!(c, vec![int(0), int(1)]);
        let c = solve_vandermonde(&[int(1), int(-1)], &[int(0), int(2)]).unwrap();
        assert_eq!(c, vec![int(1), int(-1)]);
        let c = solve_vandermonde(&[rat(3, 7)], &[int(0)]).unwrap();
        assert_eq!(c, vec![int(0)]);
        assert_eq!(
            solve_vandermonde(&[int(2), int(2)], &[int(0), int(1)]),
            Err(Error::DuplicateNodes)
        );
    }

    #[test]
    fn agrees_with_gaussian_elimination() {
        let nodes = standard_nodes(7);
        let rhs: Vec<Rational> = (0..7).map(|i| rat(i * i - 3, i + 2)).collect();
        let c = solve_vandermonde(&nodes, &rhs).unwrap();
        assert!(residual_is_zero(&nodes, &rhs, &c));
        let rows: Vec<Vec<Rational>> = (0..7)
            .map(|s| nodes.iter().map(|t| Ring::pow(t, s)).collect())
            .collect();
        let gauss = Matrix::from_rows(rows).unwrap().solve(&rhs).unwrap().unwrap();
        assert_eq!(c, gauss);
    }

    #[test]
    fn node_sequence() {
        assert_eq!(standard_nodes(5), vec![int(0), int(1), int(-1), int(2), int(-2)]);
    }
}

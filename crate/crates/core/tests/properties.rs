use num_traits::{One, Zero};
use proptest::prelude::*;

use waring_deborder::algebra::{
    monomials_of_degree, rat, solve_vandermonde, EpsPoly, EpsScalar, HomoPoly, LinearForm, Matrix,
    Rational,
};
use waring_deborder::decomposition::{base_of_form, border_limit, normalize_border, verify_border};
use waring_deborder::oracle::{catalecticant_bound, gen_family, sylvester_rank, BinaryForm, Family, FamilySpec};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn eps_poly(max_len: usize) -> impl Strategy<Value = EpsPoly> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(|c| EpsPoly::from_coeffs(&c))
}

fn eps_scalar() -> impl Strategy<Value = EpsScalar> {
    (eps_poly(3), eps_poly(3), 0u32..3).prop_filter_map("nonzero denominator", |(n, d, k)| {
        if d.is_zero() {
            return None;
        }
        EpsScalar::new(n, d.shift_up(k)).ok()
    })
}

fn regular_scalar() -> impl Strategy<Value = EpsScalar> {
    eps_poly(3).prop_map(EpsScalar::from_poly)
}

fn homo_poly(n: usize, d: u32) -> impl Strategy<Value = HomoPoly<Rational>> {
    let monos = monomials_of_degree(n, d);
    prop::collection::vec(prop::option::weighted(0.6, small_rational()), monos.len()).prop_map(move |cs| {
        HomoPoly::from_terms(
            n,
            d,
            monos
                .iter()
                .zip(cs)
                .filter_map(|(m, c)| c.map(|c| (m.clone(), c))),
        )
        .unwrap()
    })
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n).prop_filter_map("singular", move |rows| {
        let m = Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|v| rat(v, 1)).collect())
                .collect(),
        )
        .ok()?;
        (m.rank() == n).then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eps_scalar_ring_axioms(a in eps_scalar(), b in eps_scalar(), c in eps_scalar()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert!((a.clone() - &a).is_zero());
        prop_assert_eq!(a.clone() * &EpsScalar::one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() / &a, EpsScalar::one());
        }
    }

    #[test]
    fn valuation_is_additive(a in eps_scalar(), b in eps_scalar()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = a.clone() * &b;
        prop_assert_eq!(ab.valuation().unwrap(), a.valuation().unwrap() + b.valuation().unwrap());
        if let (Some(x), Some(y)) = (a.value_at_zero(), b.value_at_zero()) {
            prop_assert_eq!(ab.value_at_zero().unwrap(), x * y);
        }
    }

    #[test]
    fn substitution_round_trip(f in homo_poly(3, 3), a in invertible(3)) {
        let g = f.substitute_linear(&a).unwrap();
        let back = g.substitute_linear(&a.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn partial_derivatives_commute(f in homo_poly(3, 4), i in 0usize..3, j in 0usize..3) {
        let ij = f.differentiate(i, 1).unwrap().differentiate(j, 1).unwrap();
        let ji = f.differentiate(j, 1).unwrap().differentiate(i, 1).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn limit_is_multiplicative(
        p in prop::collection::vec(regular_scalar(), 3),
        q in prop::collection::vec(regular_scalar(), 3),
    ) {
        let mono = monomials_of_degree(2, 2);
        let build = |cs: &[EpsScalar]| {
            HomoPoly::from_terms(2, 2, mono.iter().cloned().zip(cs.iter().cloned())).unwrap()
        };
        let (p, q) = (build(&p), build(&q));
        let lhs = p.try_mul(&q).unwrap().limit_at_zero().unwrap();
        let rhs = p.limit_at_zero().unwrap().try_mul(&q.limit_at_zero().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn base_ignores_scaling(
        coefs in prop::collection::vec(regular_scalar(), 3),
        c in nonzero_rational(),
        k in -2i64..3,
    ) {
        prop_assume!(coefs.iter().any(|x| !x.is_zero()));
        let form = LinearForm::new(coefs).unwrap();
        let scaled = form.scale(&EpsScalar::eps_monomial(c, k)).unwrap();
        prop_assert_eq!(base_of_form(&scaled), base_of_form(&form));
    }

    #[test]
    fn vandermonde_residual_vanishes(
        nodes in prop::collection::btree_set(-20i64..20, 1..7),
        rhs in prop::collection::vec(small_rational(), 7),
    ) {
        let nodes: Vec<Rational> = nodes.into_iter().map(|t| rat(t, 1)).collect();
        let rhs = &rhs[..nodes.len()];
        let c = solve_vandermonde(&nodes, rhs).unwrap();
        for (s, r) in rhs.iter().enumerate() {
            let sum = c
                .iter()
                .zip(&nodes)
                .fold(Rational::zero(), |acc, (cj, t)| acc + cj * num_traits::pow(t.clone(), s));
            prop_assert_eq!(&sum, r);
        }
    }

    #[test]
    fn sylvester_ranks_are_coordinate_free(f in homo_poly(2, 5), a in invertible(2)) {
        prop_assume!(!f.is_zero());
        let (wr, bwr) = sylvester_rank(&BinaryForm::from_poly(&f).unwrap());
        prop_assert!(wr >= bwr);
        let g = f.substitute_linear(&a).unwrap();
        prop_assert_eq!(sylvester_rank(&BinaryForm::from_poly(&g).unwrap()), (wr, bwr));
        for s in 0..=5 {
            prop_assert!(catalecticant_bound(&f, s) <= bwr);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalization_keeps_the_limit(seed in 0u64..10_000, d in 1u32..6, r in 1usize..5) {
        let spec = FamilySpec { seed, nvars: 2, rank: Some(r), ..FamilySpec::new(Family::Random, d) };
        let (f, b) = gen_family(&spec).unwrap();
        let nb = normalize_border(&b).unwrap();
        prop_assert!(nb.rank() <= b.rank());
        prop_assert!(verify_border(&nb, &f).unwrap().is_verified());
        prop_assert_eq!(border_limit(&nb).unwrap(), f);
    }
}

use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use astlab::algebra::{interpolate, parse_factored, Eisenstein, Rational, UniPoly};
use astlab::limits::Limits;
use astlab::paths::{enumerate_sets, CentredCatalanSet, MotzkinPath};
use astlab::tableaux::{shapes_of_set, Partition, SkewShape};
use astlab::trapezoid::{enumerate_trapezoids, ASTrapezoid};
use astlab::weights::{
    predicted_degree_and_leading, st_params_of, trapezoid_of_tree, tree_of_trapezoid, Method, WeightStore,
};

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn small_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..6).prop_map(|cs| {
        UniPoly::from_coeffs(cs.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect())
    })
}

fn eisenstein() -> impl Strategy<Value = Eisenstein> {
    (-50i64..=50, -50i64..=50).prop_map(|(a, b)| Eisenstein::new(a, b))
}

/// All sets of sizes 1..=7, enumerated once.
fn sets_by_size() -> &'static Vec<Vec<CentredCatalanSet>> {
    static SETS: OnceLock<Vec<Vec<CentredCatalanSet>>> = OnceLock::new();
    SETS.get_or_init(|| (0..=7).map(|k| if k == 0 { vec![] } else { enumerate_sets(k, &Limits::default()).unwrap() }).collect())
}

fn set_of_size(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CentredCatalanSet> {
    (sizes, any::<prop::sample::Index>()).prop_map(|(k, i)| {
        let all = &sets_by_size()[k];
        all[i.index(all.len())].clone()
    })
}

fn trapezoid(max_n: usize, max_l: usize) -> impl Strategy<Value = ASTrapezoid> {
    (1..=max_n, 1..=max_l, any::<prop::sample::Index>()).prop_map(|(n, l, i)| {
        let all: Vec<_> = enumerate_trapezoids(n, l, &Limits::default()).unwrap().collect();
        all[i.index(all.len())].clone()
    })
}

fn operator_store() -> &'static WeightStore {
    static STORE: OnceLock<WeightStore> = OnceLock::new();
    STORE.get_or_init(|| WeightStore::new(Method::Operator, Limits::default()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficient_text_round_trips(p in small_poly()) {
        let back: UniPoly = p.to_coeff_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn factored_text_round_trips(p in small_poly()) {
        prop_assert_eq!(parse_factored(&p.factored()).unwrap(), p);
    }

    #[test]
    fn integer_roots_are_recovered(lead in 1i64..5, mut roots in prop::collection::vec(-12i64..=12, 0..5)) {
        let rs: Vec<Rational> = roots.iter().map(|&r| rat(r)).collect();
        let p = UniPoly::from_roots(rat(lead), &rs);
        roots.sort_unstable_by(|a, b| b.cmp(a));
        let found: Vec<Rational> = p.rational_roots().unwrap();
        prop_assert_eq!(found, roots.iter().map(|&r| rat(r)).collect::<Vec<_>>());
    }

    #[test]
    fn interpolation_recovers_the_polynomial(p in small_poly(), start in -5i64..5) {
        let d = p.degree().unwrap_or(0) as i64;
        let pts: Vec<(i64, Rational)> = (start..=start + d).map(|x| (x, p.eval_int(x))).collect();
        prop_assert_eq!(interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn euclidean_division(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q * b.clone() + r.clone(), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn composition_evaluates_pointwise(p in small_poly(), q in small_poly(), x in -6i64..6) {
        prop_assert_eq!(p.compose(&q).eval_int(x), p.eval(&q.eval_int(x)));
    }

    #[test]
    fn eisenstein_ring_laws(a in eisenstein(), b in eisenstein(), c in eisenstein()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
        prop_assert_eq!(a.clone() - a.clone(), Eisenstein::zero());
        if !b.is_zero() {
            prop_assert_eq!((a.clone() * b.clone()).exact_div(&b), Some(a.clone()));
        }
    }

    #[test]
    fn eisenstein_units(m in -12i64..12) {
        let u = Eisenstein::neg_omega_pow(m);
        prop_assert_eq!(u.norm(), BigInt::from(1));
        prop_assert_eq!(u * Eisenstein::neg_omega_pow(-m), Eisenstein::one());
    }

    #[test]
    fn set_text_round_trips(s in set_of_size(1..=7)) {
        prop_assert_eq!(s.to_string().parse::<CentredCatalanSet>().unwrap(), s);
    }

    #[test]
    fn set_and_path_views_agree(s in set_of_size(1..=7)) {
        let m = s.motzkin_path();
        prop_assert_eq!(m.len() + 1, s.size());
        prop_assert_eq!(s.dyck_path().motzkin_average(), m.clone());
        prop_assert!(m.preimage().contains(&s));
        prop_assert_eq!(m.to_string().parse::<MotzkinPath>().unwrap(), m.clone());
        prop_assert_eq!(m.is_irreducible(), s.is_irreducible());
        prop_assert_eq!(shapes_of_set(&s).size() as u64, m.area());
    }

    #[test]
    fn factorisation_is_unique(a in set_of_size(1..=4), b in set_of_size(1..=4)) {
        let c = a.concat(&b);
        let mut want = a.irreducible_factors();
        want.extend(b.irreducible_factors());
        prop_assert_eq!(c.irreducible_factors().clone(), want);
        let joined = c.irreducible_factors().iter().fold(CentredCatalanSet::unit(), |acc, f| acc.concat(f));
        prop_assert_eq!(joined, c.clone());
        if a.size() > 1 && b.size() > 1 {
            prop_assert_eq!(c.split_at(a.size() - 1), Some((a, b)));
        }
    }

    #[test]
    fn trapezoid_text_round_trips(t in trapezoid(4, 4)) {
        prop_assert_eq!(t.to_string().parse::<ASTrapezoid>().unwrap(), t);
    }

    #[test]
    fn trees_and_trapezoids_are_in_bijection(t in trapezoid(4, 4)) {
        let s = t.catalan_set().unwrap();
        prop_assume!(s.size() >= 3 && s.is_irreducible());
        let params = st_params_of(&s, t.l() as i64).unwrap();
        let tree = tree_of_trapezoid(&t).unwrap();
        prop_assert_eq!(trapezoid_of_tree(&tree, &params, t.l()).unwrap(), t);
    }

    #[test]
    fn split_then_join(t in trapezoid(4, 4)) {
        let s = t.catalan_set().unwrap();
        for n1 in 1..t.n() {
            if let Some((s1, s2)) = s.split_at(n1) {
                let (bottom, top) = t.split(n1).unwrap();
                prop_assert_eq!(bottom.catalan_set().unwrap(), s1);
                prop_assert_eq!(top.catalan_set().unwrap(), s2);
                prop_assert_eq!(bottom.join(&top).unwrap(), t.clone());
            }
        }
    }

    #[test]
    fn syt_counts_agree(mut parts in prop::collection::vec(0usize..6, 0..5), mut inner in prop::collection::vec(0usize..6, 0..5)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        inner.sort_unstable_by(|a, b| b.cmp(a));
        let outer = Partition::new(parts).unwrap();
        let inner = Partition::new(inner).unwrap();
        prop_assume!(outer.contains(&inner));
        let shape = SkewShape::new(outer, inner).unwrap();
        prop_assert_eq!(shape.syt_count(), shape.syt_count_aitken());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weights_are_multiplicative(a in set_of_size(2..=4), b in set_of_size(2..=4)) {
        let store = operator_store();
        let shift = rat(2 * a.size() as i64 - 2);
        let want = store.set_weight(&a).unwrap() * store.set_weight(&b).unwrap().shift(&shift);
        prop_assert_eq!(store.set_weight(&a.concat(&b)).unwrap(), want);
    }

    #[test]
    fn degree_and_leading_follow_the_shape(s in set_of_size(2..=6)) {
        let w = operator_store().set_weight(&s).unwrap();
        let (d, lead) = predicted_degree_and_leading(&s);
        prop_assert_eq!(w.degree(), Some(d));
        prop_assert_eq!(w.leading(), lead);
    }
}

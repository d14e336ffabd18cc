//! Property tests for the algebraic invariants the verification suites rely on.

use std::cmp::Ordering;
use std::time::Duration;

use num_bigint::BigInt;
use proptest::prelude::*;

use atlas_core::atlas_model::{AtlasShape, ProjectivePoint};
use atlas_core::focal::{bump_down, bump_up, enumerate_focals, focal_det};
use atlas_core::polyring::{
    divide, format_poly, groebner_basis, normal_form, parse_poly, q_int, Limits, Monomial,
    NamedVars, Polynomial, Scheme, TermOrder, Var, Q,
};
use atlas_core::specialize::{random_arrangement, specialize, GenericityTarget};

const NVARS: usize = 4;

fn monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u16..3, NVARS)
        .prop_map(|e| Monomial::from_pairs(e.into_iter().enumerate().map(|(v, k)| (v as Var, k))))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((-5i64..=5, monomial()), 0..6).prop_map(|ts| {
        Polynomial::from_terms(NVARS, ts.into_iter().map(|(c, m)| (q_int(c), m)).collect())
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn order() -> impl Strategy<Value = TermOrder> {
    (
        Just((0..NVARS as Var).collect::<Vec<_>>()).prop_shuffle(),
        0usize..4,
    )
        .prop_map(|(vars, kind)| match kind {
            0 => TermOrder::lex(vars),
            1 => TermOrder::grevlex(vars),
            2 => TermOrder::product(vec![
                (vars[..2].to_vec(), Scheme::Lex),
                (vars[2..].to_vec(), Scheme::GRevLex),
            ]),
            _ => TermOrder::product(vec![
                (vars[..1].to_vec(), Scheme::GRevLex),
                (vars[1..].to_vec(), Scheme::Lex),
            ]),
        })
}

fn names() -> NamedVars {
    NamedVars::new(vec!["x", "y", "z", "w"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn text_round_trip(p in poly()) {
        let n = names();
        prop_assert_eq!(parse_poly(&format_poly(&p, &n), &n).unwrap(), p);
    }

    #[test]
    fn order_is_total_and_monomial(ord in order(), a in monomial(), b in monomial(), c in monomial()) {
        prop_assert_eq!(ord.compare(&a, &b), ord.compare(&b, &a).reverse());
        prop_assert_eq!(ord.compare(&a, &b) == Ordering::Equal, a == b);
        prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ord.compare(&a, &b));
        prop_assert_ne!(ord.compare(&Monomial::one(), &a), Ordering::Greater);
    }

    #[test]
    fn division_identity(ord in order(), f in poly(), gs in proptest::collection::vec(nonzero_poly(), 1..4)) {
        let d = divide(&f, &gs, &ord).unwrap();
        let mut recon = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&gs) {
            recon = recon.add(&q.mul(g));
        }
        prop_assert_eq!(recon, f);
        let leads: Vec<Monomial> = gs.iter().map(|g| g.leading_monomial(&ord).unwrap()).collect();
        for m in d.remainder.monomials() {
            prop_assert!(leads.iter().all(|l| !l.divides(m)));
        }
    }

    #[test]
    fn ideal_members_reduce_to_zero(
        ord in order(),
        gens in proptest::collection::vec(nonzero_poly(), 1..3),
        mults in proptest::collection::vec(poly(), 2),
    ) {
        let budget = Limits { max_pairs: Some(2_000), max_poly_terms: Some(2_000), wallclock: Some(Duration::from_secs(2)) };
        let limits = Limits::default();
        // over-budget cases are rejected; proptest fails if rejections dominate
        let gb = groebner_basis(&gens, &ord, &budget);
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        let member = gens.iter().zip(&mults).fold(Polynomial::zero(NVARS), |acc, (g, h)| acc.add(&g.mul(h)));
        prop_assert!(normal_form(&member, &gb, &ord, &limits).unwrap().is_zero());
        // normal forms modulo a Groebner basis do not depend on divisor order
        let mut rev = gb.clone();
        rev.reverse();
        let f = &mults[0];
        prop_assert_eq!(normal_form(f, &gb, &ord, &limits).unwrap(), normal_form(f, &rev, &ord, &limits).unwrap());
    }

    #[test]
    fn projective_canonical_form(v in proptest::collection::vec(-9i64..=9, 4), s in prop_oneof![-7i64..=-1, 1i64..=7]) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let a = ProjectivePoint::from_i64(&v).unwrap();
        let scaled: Vec<i64> = v.iter().map(|x| x * s).collect();
        prop_assert_eq!(&a, &ProjectivePoint::from_i64(&scaled).unwrap());
        let first = a.coords().iter().find(|x| **x != BigInt::from(0)).unwrap();
        prop_assert!(*first > BigInt::from(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn specialization_commutes_with_evaluation(seed in 0u64..1_000, idx in any::<prop::sample::Index>(), pt in proptest::collection::vec(-6i64..=6, 34)) {
        let shape3 = AtlasShape::new(3, 1);
        let specs = enumerate_focals(shape3, 3, 1);
        let (arr, _) = random_arrangement(3, seed, GenericityTarget::DistinctCenters).unwrap();
        let f = focal_det(idx.get(&specs), shape3).unwrap().value;
        let sub = arr.substitution(shape3);
        let mut full: Vec<Q> = pt.iter().map(|&x| q_int(x)).cycle().take(shape3.nvars()).collect();
        for (v, val) in sub.iter().enumerate() {
            if let Some(val) = val {
                full[v] = val.clone();
            }
        }
        let spec = specialize(std::slice::from_ref(&f), shape3, &arr, None, None).unwrap();
        prop_assert_eq!(spec.polys[0].eval(&full), f.eval(&full));
    }

    #[test]
    fn bump_round_trip(m in 3usize..=5, pick in any::<prop::sample::Index>(), row in 1usize..=3) {
        let shape = AtlasShape::new(m, 1);
        let specs = enumerate_focals(shape, 2, 1);
        let base = focal_det(pick.get(&specs), shape).unwrap();
        let free = (1..=m).find(|i| !base.spec.sigma().contains(i)).unwrap();
        let up = bump_up(&base, free, row).unwrap();
        prop_assert_eq!(&up.value, &shape.var_poly(shape.p(free, 1, row)).mul(&base.value));
        let direct = focal_det(&up.spec, shape).unwrap();
        prop_assert_eq!(&direct.value.scale_int(up.sign as i64), &up.value.scale_int(direct.sign as i64));
        let (down, v) = bump_down(&up).unwrap();
        prop_assert_eq!(v, shape.p(free, 1, row));
        prop_assert_eq!(down, base);
    }
}

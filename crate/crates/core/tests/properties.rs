use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use chowring::catalog::Catalog;
use chowring::chern::{total_chern, CoordinateSpec, CoordinateSystem, WeightSystem};
use chowring::polyring::{
    parse_polynomial, rational, CoefficientRing, Polynomial, PolynomialJson, VarSet,
};
use chowring::presentations::{GradedRingPresentation, Params};

fn xyz() -> Arc<VarSet> {
    VarSet::uniform(["x", "y", "z"]).unwrap()
}

fn poly_in(vars: Arc<VarSet>, ring: CoefficientRing, max_exp: i32) -> impl Strategy<Value = Polynomial> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -6i64..=6, 1i64..=3), 0..6).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|(e, num, den)| {
                let den = if ring == CoefficientRing::Integers { 1 } else { 2 * den - 1 };
                (e, rational(num, den))
            });
            Polynomial::from_terms(ring, vars.clone(), false, terms).unwrap()
        },
    )
}

fn qpoly() -> impl Strategy<Value = Polynomial> {
    poly_in(xyz(), CoefficientRing::Rationals, 3)
}

fn f2poly() -> impl Strategy<Value = Polynomial> {
    poly_in(xyz(), CoefficientRing::PrimeField(2), 3)
}

fn homogeneous(p: &Polynomial) -> Polynomial {
    let d = p.degree().unwrap_or(0);
    p.homogeneous_part(d)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn ring_axioms(a in qpoly(), b in qpoly(), c in qpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn ring_axioms_mod_two(a in f2poly(), b in f2poly()) {
        prop_assert!((&a + &a).is_zero());
        prop_assert_eq!((&a + &b).pow(2), &a.pow(2) + &b.pow(2));
    }

    #[test]
    fn degrees_add(a in qpoly(), b in qpoly()) {
        let (a, b) = (homogeneous(&a), homogeneous(&b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.homogeneous_degree(), Some(a.homogeneous_degree().unwrap() + b.homogeneous_degree().unwrap()));
    }

    #[test]
    fn elimination_composes_and_is_multiplicative(a in qpoly(), b in qpoly()) {
        let both = a.eliminate(&["y", "z"]).unwrap();
        prop_assert_eq!(a.eliminate(&["z"]).unwrap().eliminate(&["y"]).unwrap(), both);
        prop_assert_eq!((&a * &b).eliminate(&["z"]).unwrap(), &a.eliminate(&["z"]).unwrap() * &b.eliminate(&["z"]).unwrap());
    }

    #[test]
    fn exact_division_round_trips(a in qpoly(), b in qpoly()) {
        prop_assume!(!b.is_zero());
        let q = (&a * &b).exact_divide(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn text_and_json_round_trip(a in qpoly()) {
        let text = a.to_string();
        prop_assert_eq!(&parse_polynomial(&text, a.ring(), a.vars()).unwrap(), &a);
        let json = serde_json::to_string(&PolynomialJson::from(&a)).unwrap();
        let back: PolynomialJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_polynomial().unwrap(), a);
    }

    #[test]
    fn whitney_sum_formula(
        w1 in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..5),
        w2 in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..5),
    ) {
        let coords = Arc::new(CoordinateSystem::from_spec(CoordinateSpec {
            name: "t".into(),
            variables: vec!["t1".into(), "t2".into()],
            eliminate: BTreeMap::new(),
        }).unwrap());
        let a = WeightSystem::new("a", coords.clone(), &w1).unwrap();
        let b = WeightSystem::new("b", coords, &w2).unwrap();
        let (ca, cb, cs) = (total_chern(&a), total_chern(&b), total_chern(&a.direct_sum(&b).unwrap()));
        for (k, ck) in cs.iter().enumerate() {
            let mut expect = Polynomial::zero(ck.ring(), ck.vars().clone());
            for i in 0..=k {
                if i < ca.len() && k - i < cb.len() {
                    expect = &expect + &(&ca[i] * &cb[k - i]);
                }
            }
            prop_assert_eq!(&expect, ck);
        }
    }
}

fn presentation_poly(p: &Arc<GradedRingPresentation>) -> impl Strategy<Value = Polynomial> {
    poly_in(p.vars().clone(), p.ring(), 2)
}

fn spin7(d1: i64, d2: i64) -> Arc<GradedRingPresentation> {
    let mut params = Params::new();
    params.insert("delta1".into(), rational(d1, 1));
    params.insert("delta2".into(), rational(d2, 1));
    Catalog::builtin().presentation("Spin7", &params).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(32) })]

    #[test]
    fn spin7_normal_form_is_idempotent_and_multiplicative(
        (pres, a, b) in (0i64..2, 0i64..2).prop_flat_map(|(d1, d2)| {
            let p = spin7(d1, d2);
            (Just(p.clone()), presentation_poly(&p), presentation_poly(&p))
        })
    ) {
        let (na, nb) = (pres.normal_form(&a), pres.normal_form(&b));
        prop_assert_eq!(&pres.normal_form(&na), &na);
        prop_assert!(pres.is_normal(&na));
        prop_assert_eq!(pres.normal_form(&(&a * &b)), pres.normal_form(&(&na * &nb)));
        prop_assert_eq!(pres.normal_form(&(&a + &b)), pres.normal_form(&(&na + &nb)));
    }

    #[test]
    fn g2_normal_form_is_idempotent_and_multiplicative(
        (pres, a, b) in Just(Catalog::builtin().presentation("G2", &Params::new()).unwrap())
            .prop_flat_map(|p| (Just(p.clone()), presentation_poly(&p), presentation_poly(&p)))
    ) {
        let (na, nb) = (pres.normal_form(&a), pres.normal_form(&b));
        prop_assert_eq!(&pres.normal_form(&na), &na);
        prop_assert_eq!(pres.normal_form(&(&a * &b)), pres.normal_form(&(&na * &nb)));
    }
}

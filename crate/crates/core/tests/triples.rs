use lamplighter_core::algebra::LaurentPoly;
use lamplighter_core::cbrank::q_less;
use lamplighter_core::lamplighter::{
    ball_elements, conjugate, contains, phi_encoding, triple_membership, word_closure,
    GroupElement, SubgroupTriple,
};
use lamplighter_core::modules::{LaurentVector, SubmoduleGens};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(7),
        failure_persistence: None,
        ..Config::default()
    }
}

fn laurent(p: u32, lo: i64, hi: i64) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((lo..=hi, 0i64..p as i64), 0..3)
        .prop_map(move |t| LaurentPoly::from_terms(&t, p))
}

fn vector(n: usize, p: u32, lo: i64, hi: i64) -> impl Strategy<Value = LaurentVector> {
    proptest::collection::vec(laurent(p, lo, hi), n)
        .prop_map(move |c| LaurentVector::new(c, p).unwrap())
}

fn triple(n: usize, p: u32, lo: i64, hi: i64) -> impl Strategy<Value = SubgroupTriple> {
    (1u64..=3).prop_flat_map(move |s| {
        (
            proptest::collection::vec(vector(n, p, lo, hi), 0..3),
            vector(n, p, lo, hi),
        )
            .prop_map(move |(gens, v)| {
                let u = SubmoduleGens::new(n, p, s as usize, gens).unwrap();
                SubgroupTriple::new(s, u, v).unwrap()
            })
    })
}

fn element(n: usize, p: u32) -> impl Strategy<Value = GroupElement> {
    (vector(n, p, -3, 3), -4i64..=4).prop_map(|(v, s)| GroupElement::new(v, s))
}

fn generating_set(v: &SubgroupTriple) -> Vec<GroupElement> {
    let mut gens = vec![v.generator()];
    gens.extend(v.u().gens().iter().map(|g| GroupElement::new(g.clone(), 0)));
    gens
}

/// A triple contained in `v`: generated by a power of `(v, s)` times an
/// element of `U`, together with a multiple of `U`.
fn sub_triple(v: &SubgroupTriple, k: u64, f: &LaurentPoly, pick: usize) -> SubgroupTriple {
    let u = v.u();
    let extra = u
        .gens()
        .get(pick % u.gens().len().max(1))
        .cloned()
        .unwrap_or_else(|| LaurentVector::zero(u.ambient_rank(), u.modulus()));
    let g = v.generator().power(k as i64);
    let w = &g.v + &extra;
    let s = v.s() * k;
    let small = u
        .scale_by(&f.compose_power(v.s() as usize))
        .with_period(s as usize)
        .unwrap();
    SubgroupTriple::new(s, small, w).unwrap()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn triple_is_the_generated_subgroup(v in triple(1, 2, -1, 1)) {
        let closure = word_closure(&generating_set(&v), 1, 2, 1, 2, 3);
        for g in ball_elements(1, 2, 1, 2) {
            prop_assert_eq!(triple_membership(&v, &g), closure.contains(&g), "{}", g);
        }
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn conjugation_contract(v in triple(2, 3, -2, 2), g in element(2, 3)) {
        let c = conjugate(&g, &v);
        let ginv = g.inverse();
        let co = c.oracle();
        let vo = v.oracle();
        for h in ball_elements(2, 3, 0, 3) {
            prop_assert_eq!(co.contains(&g.multiply(&h).multiply(&ginv)), vo.contains(&h));
        }
        prop_assert_eq!(c.s(), v.s());
    }

    #[test]
    fn containment_is_a_partial_order(
        v in triple(1, 3, -2, 2),
        k1 in 1u64..=2, k2 in 1u64..=2,
        f1 in laurent(3, 0, 2), f2 in laurent(3, 0, 2),
        pick in 0usize..3,
    ) {
        let f1 = if f1.is_zero() { LaurentPoly::one(3) } else { f1 };
        let f2 = if f2.is_zero() { LaurentPoly::one(3) } else { f2 };
        let w = sub_triple(&v, k1, &f1, pick);
        let z = sub_triple(&w, k2, &f2, pick + 1);
        prop_assert!(contains(&v, &v));
        prop_assert!(contains(&v, &w));
        prop_assert!(contains(&w, &z));
        prop_assert!(contains(&v, &z));
        if contains(&w, &v) {
            prop_assert_eq!(&w, &v);
        }
        // elementwise: members of w on a ball are members of v
        let vo = v.oracle();
        let wo = w.oracle();
        for g in ball_elements(1, 3, 1, 4) {
            if wo.contains(&g) {
                prop_assert!(vo.contains(&g));
            }
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn encoding_is_conjugation_invariant(v in triple(2, 2, -2, 2), g in element(2, 2)) {
        prop_assert_eq!(phi_encoding(&conjugate(&g, &v)).unwrap(), phi_encoding(&v).unwrap());
    }
}

#[test]
fn conjugation_by_pure_shift() {
    let p = 2;
    let u =
        SubmoduleGens::new(1, p, 2, vec![LaurentVector::parse("[1+x]", 1, p).unwrap()]).unwrap();
    let v =
        SubgroupTriple::new(2, u.clone(), LaurentVector::parse("[x^-1]", 1, p).unwrap()).unwrap();
    for t in -3..=3 {
        let g = GroupElement::new(LaurentVector::zero(1, p), t);
        let expected = SubgroupTriple::new(2, u.shift(t), v.v().mul_x_pow(t)).unwrap();
        assert_eq!(conjugate(&g, &v), expected);
        for h in ball_elements(1, p, 2, 3) {
            assert_eq!(
                triple_membership(&expected, &h.conjugate_by(&g)),
                triple_membership(&v, &h)
            );
        }
    }
}

/// The order that the encoding respects is the one given by limits (see the
/// cbrank sequence tests), not inclusion.
#[test]
fn encoding_is_not_monotone_for_inclusion() {
    let p = 2;
    let zero = LaurentVector::zero(1, p);
    let q = |u: SubmoduleGens, s: u64| {
        let v = SubgroupTriple::new(s, u, zero.clone()).unwrap();
        (phi_encoding(&v).unwrap(), v)
    };
    // <τ> ⊇ <τ^2> while Φ(<τ>) = (1, 1) < (2, 1) = Φ(<τ^2>)
    let (a, tau) = q(SubmoduleGens::zero(1, p), 1);
    let (b, tau2) = q(SubmoduleGens::zero(1, p), 2);
    assert!(contains(&tau, &tau2));
    assert!(q_less(a, b));
    // same s, U = R ⊇ F_2[x^2, x^-2]: (2, 0) and (1, 1) are incomparable
    let even =
        SubmoduleGens::new(1, p, 2, vec![LaurentVector::parse("[1]", 1, p).unwrap()]).unwrap();
    let (c, big) = q(SubmoduleGens::full(1, p), 2);
    let (d, small) = q(even, 2);
    assert!(contains(&big, &small));
    assert!(!q_less(c, d) && !q_less(d, c) && c != d);
}

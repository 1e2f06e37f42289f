use std::sync::Arc;

use lievar::linalg::GroupShape;
use lievar::variety::{
    center, centralizer, compare_varieties, derived_series, ideal_closure, lower_central_series,
    nilpotency_exponent, solvable_length, square_nilpotency_exponent, variety_equal,
    verbal_generators, GradedSubspace, RelativelyFreeRing, VarietySpec,
};
use lievar::wordlang::parse_identity;
use lievar::{CoeffDomain, FreeLieContext, LieRing};
use num_bigint::BigInt;

fn spec(lines: &[&str], domain: CoeffDomain) -> VarietySpec {
    let ids = lines.iter().map(|l| parse_identity(l).unwrap()).collect();
    VarietySpec::new(ids, domain).unwrap()
}

fn zp(p: u64) -> CoeffDomain {
    CoeffDomain::Modular(p)
}

#[test]
fn abelian_variety_keeps_only_degree_one() {
    let r = RelativelyFreeRing::new(&spec(&["(x,y) = 0"], CoeffDomain::Integers), 3, 3).unwrap();
    assert_eq!(r.degree_shape(1), GroupShape::new(vec![BigInt::from(0); 3]));
    assert!(r.degree_is_trivial(2));
    assert!(r.degree_is_trivial(3));
    let e = nilpotency_exponent(&r).unwrap();
    assert_eq!((e.value, e.truncated), (1, false));
    assert_eq!(solvable_length(&r).unwrap().value, 0);
}

#[test]
fn verbal_generators_of_the_abelian_identity() {
    let ctx = Arc::new(FreeLieContext::new(2, 2, CoeffDomain::Integers).unwrap());
    let g = verbal_generators(&parse_identity("(x,y) = 0").unwrap(), &ctx).unwrap();
    assert!(g.degree_is_full(2));
    assert_eq!(g.degree_rank(1), 0);
}

#[test]
fn second_engel_identity_by_characteristic() {
    let id = parse_identity("(x,y,x) = 0").unwrap();
    let ctx = Arc::new(FreeLieContext::new(2, 3, zp(5)).unwrap());
    let g = verbal_generators(&id, &ctx).unwrap();
    assert_eq!(g.degree_rank(3), 2);
    assert!(g.degree_is_full(3));

    let r = RelativelyFreeRing::new(&spec(&["(x,y,x) = 0"], zp(5)), 3, 3).unwrap();
    assert!(r.degree_is_trivial(3));

    let r = RelativelyFreeRing::new(&spec(&["(x,y,x) = 0"], CoeffDomain::Integers), 3, 3).unwrap();
    let f = r.degree_shape(3).invariant_factors;
    assert!(!f.is_empty());
    assert!(f.iter().all(|d| *d == BigInt::from(3)));

    let r = RelativelyFreeRing::new(&spec(&["(x,y,x) = 0"], zp(3)), 4, 4).unwrap();
    assert!(r.degree_is_trivial(4));
    assert!(!r.degree_is_trivial(3));
    let e = nilpotency_exponent(&r).unwrap();
    assert_eq!((e.value, e.truncated), (3, false));
}

#[test]
fn free_nilpotent_ring_reaches_the_cutoff() {
    let r = RelativelyFreeRing::free(2, 2, zp(3)).unwrap();
    let e = nilpotency_exponent(&r).unwrap();
    assert_eq!((e.value, e.truncated), (2, true));
    assert_eq!(solvable_length(&r).unwrap().value, 1);
    let z = center(&r).unwrap();
    assert!(z.degree_is_full(2));
    assert_eq!(z.degree_rank(1), 0);

    let r = RelativelyFreeRing::free(3, 4, CoeffDomain::Integers).unwrap();
    let e = nilpotency_exponent(&r).unwrap();
    assert_eq!(e.value, 4);
    let s = lower_central_series(&r).unwrap();
    for w in s.terms.windows(2) {
        for (a, b) in w[0].degrees.iter().zip(&w[1].degrees) {
            assert!(b.size.size_key() <= a.size.size_key());
        }
    }
}

#[test]
fn centers_and_centralizers() {
    let r = RelativelyFreeRing::free(2, 3, zp(5)).unwrap();
    let z = center(&r).unwrap();
    assert!(z.degree_is_full(3));
    assert_eq!(z.degree_rank(2), 0);
    let full = GradedSubspace::full(r.context()).unwrap();
    assert!(centralizer(&r, &full).unwrap().same_as(&z));
}

#[test]
fn metabelian_identity_kills_the_second_derived_term() {
    let r = RelativelyFreeRing::new(&spec(&["(x1,x2;x3,x4) = 0"], zp(5)), 3, 5).unwrap();
    let s = derived_series(&r).unwrap();
    assert_eq!(s.first_zero, Some(2));
    assert_eq!(solvable_length(&r).unwrap().value, 1);
}

#[test]
fn prop_two_five_for_n_two() {
    let a = spec(&["(x1,x2,x3,x4) = (x1,x2,x4,x3)"], CoeffDomain::Integers);
    let b = spec(&["(x1,x2;x3,x4) = 0"], CoeffDomain::Integers);
    assert!(variety_equal(&a, &b, 4, 5).unwrap());
}

#[test]
fn inner_derivation_identity() {
    let a = spec(&["(x1,x2,x3) = (x1,x3,x2)"], CoeffDomain::Integers);
    let b = spec(&["(x1;x2,x3) = 0"], CoeffDomain::Integers);
    assert!(variety_equal(&a, &b, 3, 4).unwrap());
}

#[test]
fn abelian_is_smaller_than_class_two() {
    let a = spec(&["(x,y) = 0"], CoeffDomain::Integers);
    let b = spec(&["(x,y,z) = 0"], CoeffDomain::Integers);
    let rep = compare_varieties(&a, &b, 2, 3).unwrap();
    assert!(!rep.equal);
    assert_eq!(rep.differing_degrees, vec![2]);
}

#[test]
fn self_consistency_and_witnesses() {
    let r = RelativelyFreeRing::new(&spec(&["(x,y,x) = 0"], zp(3)), 3, 4).unwrap();
    assert!(r.satisfies(&parse_identity("(x,y,x) = 0").unwrap()).unwrap().0);
    assert!(r.satisfies(&parse_identity("(u,v;x,y) = 0").unwrap()).unwrap().0);
    let (ok, w) = r.satisfies(&parse_identity("(x,y) = 0").unwrap()).unwrap();
    assert!(!ok);
    let w = w.unwrap();
    assert_eq!(w.assignment, vec![("x".into(), "x1".into()), ("y".into(), "x2".into())]);
    assert!(r.ideal_is_closed().unwrap());

    let h = RelativelyFreeRing::free(2, 2, zp(3)).unwrap();
    assert!(h.satisfies(&parse_identity("(x1,x2,x3) = 0").unwrap()).unwrap().0);
}

#[test]
fn c_predicates() {
    let ab = RelativelyFreeRing::new(&spec(&["(x,y) = 0"], zp(5)), 3, 4).unwrap();
    assert!(ab.satisfies_c(4, &[4, 3]).unwrap());
    let free = RelativelyFreeRing::free(3, 3, zp(5)).unwrap();
    assert!(free.satisfies_c(3, &[3]).unwrap());
    let free = RelativelyFreeRing::free(4, 4, zp(5)).unwrap();
    assert!(!free.satisfies_c(4, &[4, 3]).unwrap());
    assert!(free.satisfies_c(4, &[3, 5]).is_err());
}

#[test]
fn closure_is_idempotent_and_monotone() {
    let ctx = Arc::new(FreeLieContext::new(2, 4, CoeffDomain::Integers).unwrap());
    let mut g = GradedSubspace::empty(&ctx).unwrap();
    let (x1, x2) = (ctx.generator(0).unwrap(), ctx.generator(1).unwrap());
    g.insert(&ctx.bracket(&x1, &x2).unwrap()).unwrap();
    let c = ideal_closure(&g).unwrap();
    assert!(c.degree_is_full(2) && c.degree_is_full(3) && c.degree_is_full(4));
    assert!(ideal_closure(&c).unwrap().same_as(&c));
    let empty = GradedSubspace::empty(&ctx).unwrap();
    assert!(ideal_closure(&empty).unwrap().is_empty());

    let one = RelativelyFreeRing::new(&spec(&["(x,y,x) = 0"], zp(5)), 3, 4).unwrap();
    let two = RelativelyFreeRing::new(&spec(&["(x,y,x) = 0", "(x1,x2;x3,x4) = 0"], zp(5)), 3, 4).unwrap();
    for d in 1..=4 {
        assert!(two.degree_shape(d).size_key() <= one.degree_shape(d).size_key());
    }
}

#[test]
fn square_series_of_the_free_ring() {
    // in rank 2 degree 2 is one-dimensional, so [L^2, L^2] = 0 below degree 5
    let r = RelativelyFreeRing::free(2, 4, zp(5)).unwrap();
    let e = square_nilpotency_exponent(&r).unwrap();
    assert_eq!((e.value, e.truncated), (1, true));
    let r = RelativelyFreeRing::free(3, 4, zp(5)).unwrap();
    let e = square_nilpotency_exponent(&r).unwrap();
    assert_eq!((e.value, e.truncated), (2, true));
}

#[test]
fn quotient_bracket_is_well_defined() {
    let r = RelativelyFreeRing::new(&spec(&["(x,y,x) = 0"], CoeffDomain::Integers), 2, 4).unwrap();
    let g = r.generators().unwrap();
    let a = r.bracket(&g[0], &g[1]).unwrap();
    let b = r.bracket(&a, &g[0]).unwrap();
    assert!(r.is_zero(&b));
}

mod properties {
    use super::*;
    use lievar::variety::verbal_ideal;
    use lievar::LieElement;
    use proptest::prelude::*;

    // the endomorphism sending generator i to generator perm[i], applied to
    // basis elements through their standard factorizations
    fn permute(ctx: &FreeLieContext, perm: &[usize], a: &LieElement) -> LieElement {
        let mut images: Vec<LieElement> = Vec::new();
        for b in ctx.basis() {
            let img = match b.factors {
                None => ctx.generator(perm[b.word[0] as usize]).unwrap(),
                Some((l, r)) => ctx.bracket(&images[l as usize], &images[r as usize]).unwrap(),
            };
            images.push(img);
        }
        let mut out = ctx.zero();
        for (i, k) in a.terms() {
            out = ctx.add(&out, &ctx.scale(k, &images[*i as usize]).unwrap()).unwrap();
        }
        out
    }

    const IDS: [&str; 5] = ["(x,y,x) = 0", "(x,y;x,z) = 0", "(x1,x2;x3,x4) = 0", "(x1,x2,x3) = (x1,x3,x2)", "(x,y,y,x) = 0"];

    fn perm() -> impl Strategy<Value = Vec<usize>> {
        Just((0..4).collect::<Vec<usize>>()).prop_shuffle()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn verbal_ideal_is_invariant_under_generator_permutations(
            which in 0usize..IDS.len(),
            p in prop_oneof![Just(0u64), Just(2), Just(3), Just(5)],
            perm in perm(),
        ) {
            let domain = if p == 0 { CoeffDomain::Integers } else { zp(p) };
            let ctx = Arc::new(FreeLieContext::new(4, 4, domain).unwrap());
            let ideal = verbal_ideal(&[parse_identity(IDS[which]).unwrap()], &ctx).unwrap();
            for g in ideal.basis_elements().unwrap() {
                prop_assert!(ideal.contains(&permute(&ctx, &perm, &g)).unwrap());
            }
        }

        #[test]
        fn adding_an_identity_never_grows_the_quotient(
            a in 0usize..IDS.len(),
            b in 0usize..IDS.len(),
            p in prop_oneof![Just(2u64), Just(3), Just(5)],
        ) {
            let one = RelativelyFreeRing::new(&spec(&[IDS[a]], zp(p)), 3, 4).unwrap();
            let two = RelativelyFreeRing::new(&spec(&[IDS[a], IDS[b]], zp(p)), 3, 4).unwrap();
            for d in 1..=4 {
                prop_assert!(two.degree_shape(d).num_factors() <= one.degree_shape(d).num_factors());
            }
            prop_assert!(one.ideal().is_subspace_of(two.ideal()));
        }
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use lievar::{Coeff, CoeffDomain, FreeLieContext, LieElement};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn ctx(rank: usize, class: usize, domain: CoeffDomain) -> Arc<FreeLieContext> {
    Arc::new(FreeLieContext::new(rank, class, domain).unwrap())
}

fn counts(c: &FreeLieContext) -> Vec<usize> {
    (1..=c.class()).map(|d| c.degree_dim(d).unwrap()).collect()
}

#[test]
fn basis_counts() {
    assert_eq!(counts(&ctx(2, 5, CoeffDomain::Integers)), vec![2, 1, 2, 3, 6]);
    assert_eq!(counts(&ctx(1, 3, CoeffDomain::Integers)), vec![1, 0, 0]);
    assert_eq!(counts(&ctx(3, 2, CoeffDomain::Integers)), vec![3, 3]);
}

// a word is Lyndon iff it is strictly smaller than each proper rotation
fn brute_lyndon_count(k: usize, n: usize) -> usize {
    let total = k.pow(n as u32);
    (0..total)
        .filter(|&code| {
            let mut w = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                w.push(c % k);
                c /= k;
            }
            (1..n).all(|r| {
                let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
                w < rot
            })
        })
        .count()
}

#[test]
fn counts_match_word_enumeration() {
    for rank in 1..=4 {
        let c = ctx(rank, 8, CoeffDomain::Integers);
        for d in 1..=8 {
            assert_eq!(c.degree_dim(d).unwrap(), brute_lyndon_count(rank, d), "rank {rank} degree {d}");
        }
    }
}

#[test]
fn small_examples() {
    let c = ctx(3, 4, CoeffDomain::Integers);
    let x = c.generators();
    assert!(c.bracket(&x[0], &x[0]).unwrap().is_zero());
    assert_eq!(c.left_normed(&x[..1]).unwrap(), x[0]);
    assert_eq!(c.left_normed(&x[..2]).unwrap(), c.bracket(&x[0], &x[1]).unwrap());
    let three = c.bracket(&c.bracket(&x[0], &x[1]).unwrap(), &x[2]).unwrap();
    assert_eq!(c.left_normed(&x).unwrap(), three);
    assert!(c.left_normed(&[]).is_err());
    let neg = c.scale(&Coeff::small(-1), &three).unwrap();
    assert!(c.add(&three, &neg).unwrap().is_zero());
    let b = c.bracket(&x[0], &x[1]).unwrap();
    assert_eq!(c.graded_component(&b, 2).unwrap(), b);
    assert!(c.graded_component(&b, 3).unwrap().is_zero());
    assert!(c.to_vector(&c.zero(), 3).unwrap().iter().all(Coeff::is_zero));
    assert!(c.to_vector(&b, 5).is_err());

    let f3 = ctx(2, 2, CoeffDomain::modular(3).unwrap());
    assert!(f3.scale(&Coeff::small(3), &f3.generators()[0]).unwrap().is_zero());

    let c2 = ctx(2, 2, CoeffDomain::Integers);
    let g = c2.generators();
    assert_eq!(c2.to_vector(&c2.bracket(&g[1], &g[0]).unwrap(), 2).unwrap(), vec![Coeff::small(-1)]);
    assert_eq!(c2.render(&c2.bracket(&g[1], &g[0]).unwrap()), "-[x1,x2]");
}

#[test]
fn truncation_and_contexts() {
    let c = ctx(2, 2, CoeffDomain::Integers);
    let x = c.generators();
    let b = c.bracket(&x[0], &x[1]).unwrap();
    assert!(c.bracket(&b, &x[0]).unwrap().is_zero());
    let other = ctx(2, 2, CoeffDomain::Integers);
    assert!(c.bracket(&x[0], &other.generators()[1]).is_err());
}

// image of a basis element in the free associative ring, [a,b] = ab - ba
type Poly = HashMap<Vec<u8>, BigInt>;

fn poly_mul(a: &Poly, b: &Poly, cut: usize) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > cut {
                continue;
            }
            let w: Vec<u8> = u.iter().chain(v).copied().collect();
            *out.entry(w).or_default() += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_comm(a: &Poly, b: &Poly, cut: usize) -> Poly {
    let mut out = poly_mul(a, b, cut);
    for (w, c) in poly_mul(b, a, cut) {
        *out.entry(w).or_default() -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn embed_basis(c: &FreeLieContext) -> Vec<Poly> {
    let mut images: Vec<Poly> = Vec::new();
    for b in c.basis() {
        let p = match b.factors {
            None => Poly::from([(b.word.clone(), BigInt::from(1))]),
            Some((l, r)) => poly_comm(&images[l as usize], &images[r as usize], c.class()),
        };
        images.push(p);
    }
    images
}

fn embed(images: &[Poly], a: &LieElement) -> Poly {
    let mut out = Poly::new();
    for (i, k) in a.terms() {
        for (w, c) in &images[*i as usize] {
            *out.entry(w.clone()).or_default() += c * k.to_bigint();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn element(c: &FreeLieContext, terms: &[(usize, i64)]) -> LieElement {
    let t: Vec<(u32, Coeff)> = terms
        .iter()
        .map(|&(i, k)| ((i % c.dimension()) as u32, c.domain().canon_i64(k)))
        .collect();
    c.element(&t).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((0usize..10_000, -3i64..=3), 0..6)
}

fn domain() -> impl Strategy<Value = CoeffDomain> {
    prop_oneof![
        Just(CoeffDomain::Integers),
        Just(CoeffDomain::Modular(2)),
        Just(CoeffDomain::Modular(3)),
        Just(CoeffDomain::Modular(5)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_matches_associative_commutator(a in terms(), b in terms()) {
        let c = ctx(3, 5, CoeffDomain::Integers);
        let images = embed_basis(&c);
        let (x, y) = (element(&c, &a), element(&c, &b));
        let lhs = embed(&images, &c.bracket(&x, &y).unwrap());
        let rhs = poly_comm(&embed(&images, &x), &embed(&images, &y), c.class());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_axioms(d in domain(), rank in 1usize..=4, class in 1usize..=6, a in terms(), b in terms(), b2 in terms(), e in terms()) {
        let c = ctx(rank, class, d);
        let (x, y, y2, z) = (element(&c, &a), element(&c, &b), element(&c, &b2), element(&c, &e));
        let br = |p: &LieElement, q: &LieElement| c.bracket(p, q).unwrap();
        prop_assert!(c.add(&br(&x, &y), &br(&y, &x)).unwrap().is_zero());
        let jac = c.add(&c.add(&br(&x, &br(&y, &z)), &br(&y, &br(&z, &x))).unwrap(), &br(&z, &br(&x, &y))).unwrap();
        prop_assert!(jac.is_zero());
        let lhs = br(&x, &c.add(&y, &y2).unwrap());
        let rhs = c.add(&br(&x, &y), &br(&x, &y2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn association_orders_agree(a in terms(), b in terms(), e in terms()) {
        let c = ctx(3, 6, CoeffDomain::Integers);
        let (x, y, z) = (element(&c, &a), element(&c, &b), element(&c, &e));
        let br = |p: &LieElement, q: &LieElement| c.bracket(p, q).unwrap();
        // [x,[y,z]] = [[x,y],z] - [[x,z],y]
        let direct = br(&x, &br(&y, &z));
        let via = c.sub(&br(&br(&x, &y), &z), &br(&br(&x, &z), &y)).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn vector_round_trip(d in domain(), a in terms()) {
        let c = ctx(3, 4, d);
        let x = element(&c, &a);
        for deg in 1..=4 {
            let v = c.to_vector(&x, deg).unwrap();
            prop_assert_eq!(c.from_vector(deg, &v).unwrap(), c.graded_component(&x, deg).unwrap());
        }
    }
}

use gsp4_core::arith::rat::{frac, rat};
use gsp4_core::arith::{BigRat, Character, CycNum, FinAbGroup, GroupRingElt, MultiLaurent, Ring, SqrtExt, SqrtPrimeExt};
use proptest::prelude::*;
use std::fmt::Debug;

fn ring_axioms<R: Ring + PartialEq + Debug>(a: &R, b: &R, c: &R) {
    assert_eq!(a.radd(b), b.radd(a));
    assert_eq!(a.rmul(b), b.rmul(a));
    assert_eq!(a.radd(b).radd(c), a.radd(&b.radd(c)));
    assert_eq!(a.rmul(b).rmul(c), a.rmul(&b.rmul(c)));
    assert_eq!(a.rmul(&b.radd(c)), a.rmul(b).radd(&a.rmul(c)));
    assert_eq!(a.rsub(a), R::zero());
    assert_eq!(a.rmul(&R::one()), *a);
}

fn q() -> impl Strategy<Value = BigRat> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| frac(n, d))
}

fn cyc() -> impl Strategy<Value = CycNum> {
    prop::collection::vec((prop::sample::select(vec![1u64, 3, 4, 5, 8, 12]), 0i64..24, -5i64..5), 0..4).prop_map(
        |terms| {
            terms.into_iter().fold(CycNum::zero(), |acc, (m, k, c)| acc.radd(&CycNum::zeta(m, k).rmul(&CycNum::from_int(c))))
        },
    )
}

fn sqrt3() -> impl Strategy<Value = SqrtPrimeExt> {
    (q(), q()).prop_map(|(a, b)| SqrtExt::new(3, a, b))
}

fn laurent() -> impl Strategy<Value = MultiLaurent<BigRat>> {
    prop::collection::vec((-2i64..3, -2i64..3, q()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(MultiLaurent::zero(), |acc, (ex, ey, c)| {
            let m = MultiLaurent::var_pow("x", ex).mul(&MultiLaurent::var_pow("y", ey));
            acc.add(&m.scale(&c))
        })
    })
}

fn group() -> FinAbGroup {
    FinAbGroup::new(vec![2, 6])
}

fn gre() -> impl Strategy<Value = GroupRingElt> {
    prop::collection::vec((0i64..2, 0i64..6, cyc()), 0..4).prop_map(|terms| {
        let g = group();
        terms.into_iter().fold(GroupRingElt::zero(&g), |acc, (a, b, c)| acc.add(&GroupRingElt::monomial(&g, &[a, b], c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_form_a_ring(a in q(), b in q(), c in q()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn sqrt_extension_forms_a_ring(a in sqrt3(), b in sqrt3(), c in sqrt3()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn sqrt_extension_norm(a in q(), b in q()) {
        let x = SqrtExt::new(3, a.clone(), b.clone());
        let n = x.rmul(&x.sconj());
        prop_assert_eq!(n, SqrtExt::base(&a * &a - rat(3) * &b * &b));
    }

    #[test]
    fn cyclotomics_form_a_ring(a in cyc(), b in cyc(), c in cyc()) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn cyclotomic_inverse(a in cyc()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.rmul(&a.inv().unwrap()), CycNum::one());
    }

    #[test]
    fn laurent_polynomials_form_a_ring(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn group_ring_axioms(a in gre(), b in gre(), c in gre()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn characters_are_ring_homomorphisms(a in gre(), b in gre(), e0 in 0i64..2, e1 in 0i64..6) {
        let chi = Character { exps: vec![e0, e1] };
        prop_assert_eq!(a.mul(&b).apply_char(&chi), a.apply_char(&chi).rmul(&b.apply_char(&chi)));
        prop_assert_eq!(a.add(&b).apply_char(&chi), a.apply_char(&chi).radd(&b.apply_char(&chi)));
    }

    #[test]
    fn primary_parts_decompose_the_group(orders in prop::collection::vec(2u64..40, 1..4)) {
        let g = FinAbGroup::new(orders);
        let primes: Vec<u64> = (2..40).filter(|&p| (2..p).all(|d| p % d != 0) && g.order() % p == 0).collect();
        let projs: Vec<_> = primes.iter().map(|&p| g.quotient_p(p)).collect();
        prop_assert_eq!(projs.iter().map(|pr| pr.target.order()).product::<u64>(), g.order());
        let mut seen = std::collections::BTreeSet::new();
        for x in g.elements() {
            let image: Vec<Vec<i64>> = projs.iter().map(|pr| pr.apply(&x)).collect();
            prop_assert!(seen.insert(image));
        }
        // reducing p-parts of the q-quotient is trivial for p != q
        for (i, a) in projs.iter().enumerate() {
            for (j, &p) in primes.iter().enumerate() {
                if i != j {
                    prop_assert_eq!(a.target.quotient_p(p).target.order(), 1);
                }
            }
        }
    }
}

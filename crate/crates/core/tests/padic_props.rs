use gsp4_core::arith::rat::rat;
use gsp4_core::padic::{
    cartan_label, coset_key, embed_iota, gsp4_torus, in_integral_group, iwasawa_borel, multiplier,
    random_gl2_integral, random_gsp4_integral, smith_invariants, smith_invariants_minors, split_iota, CartanLabel,
    MatQ,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

/// Dominant `(a, b, c)`: `a >= b`, `2b >= c`.
fn gsp4_label() -> impl Strategy<Value = CartanLabel> {
    (-2i64..3, 0i64..3, 0i64..3).prop_map(|(b, da, dc)| CartanLabel::Gsp4 { a: b + da, b, c: 2 * b - dc })
}

fn is_upper_unitriangular(m: &MatQ) -> bool {
    (0..m.n).all(|i| (0..=i).all(|j| *m.get(i, j) == rat(if i == j { 1 } else { 0 })))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cartan_label_is_constant_on_double_cosets(l in prime(), label in gsp4_label(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k1 = random_gsp4_integral(l, &mut rng, 5);
        let k2 = random_gsp4_integral(l, &mut rng, 5);
        let g = k1.mul(&label.representative(l)).mul(&k2);
        prop_assert_eq!(cartan_label(&g).unwrap(), label);
    }

    #[test]
    fn smith_invariants_agree_with_minors(l in prime(), label in gsp4_label(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gsp4_integral(l, &mut rng, 4)
            .mul(&label.representative(l))
            .mul(&random_gsp4_integral(l, &mut rng, 4));
        let mut diag = label.diagonal();
        diag.sort();
        prop_assert_eq!(smith_invariants(&g), diag.clone());
        prop_assert_eq!(smith_invariants_minors(&g), diag);
    }

    #[test]
    fn gl2_smith_invariance(l in prime(), e1 in -3i64..4, e2 in -3i64..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = MatQ::diag_pows(l, &[e1, e2]);
        let g = random_gl2_integral(l, &mut rng, 6).mul(&t).mul(&random_gl2_integral(l, &mut rng, 6));
        prop_assert_eq!(smith_invariants(&g), vec![e1.min(e2), e1.max(e2)]);
        prop_assert_eq!(cartan_label(&g).unwrap(), CartanLabel::Gl2 { e1: e1.max(e2), e2: e1.min(e2) });
    }

    #[test]
    fn multiplier_of_iota_is_the_common_determinant(
        l in prime(), x in -2i64..3, y in -2i64..3, seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h1 = random_gl2_integral(l, &mut rng, 5).mul(&MatQ::diag_pows(l, &[x, y]));
        let k = random_gl2_integral(l, &mut rng, 5);
        let k2 = random_gl2_integral(l, &mut rng, 5);
        let scale = h1.det() / k.mul(&k2).det();
        let h2 = k.mul(&MatQ::diag(l, &[scale, rat(1)])).mul(&k2);
        let g = embed_iota(&h1, &h2).unwrap();
        prop_assert_eq!(multiplier(&g).unwrap(), h1.det());
        prop_assert_eq!(split_iota(&g), Some((h1, h2)));
    }

    #[test]
    fn iwasawa_reassembles(l in prime(), label in gsp4_label(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gsp4_integral(l, &mut rng, 4)
            .mul(&label.representative(l))
            .mul(&random_gsp4_integral(l, &mut rng, 4));
        let iw = iwasawa_borel(&g);
        prop_assert!(is_upper_unitriangular(&iw.n));
        prop_assert!(in_integral_group(&iw.k));
        prop_assert_eq!(iw.n.mul(&MatQ::diag_pows(l, &iw.t)).mul(&iw.k), g);
        let c = iw.t[0] + iw.t[3];
        prop_assert_eq!(iw.t[1] + iw.t[2], c);
    }

    #[test]
    fn coset_key_ignores_right_translation(l in prime(), f1 in -2i64..3, f2 in -2i64..3, c in -2i64..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gsp4_integral(l, &mut rng, 3).mul(&gsp4_torus(l, f1, f2, c));
        let k = random_gsp4_integral(l, &mut rng, 5);
        prop_assert_eq!(coset_key(&g.mul(&k)), coset_key(&g));
    }
}

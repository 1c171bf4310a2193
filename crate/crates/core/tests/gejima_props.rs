use gsp4_core::arith::rat::valuation;
use gsp4_core::gejima::{candidates, double_coset_member, gejima_reduce_all, random_h_integral, rep_matrix, CocharPair};
use gsp4_core::padic::{multiplier, random_gsp4_integral};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cone_pair() -> impl Strategy<Value = CocharPair> {
    (0i64..3, -2i64..3, 0i64..3, -2i64..3, 0i64..3, 0i64..3).prop_map(|(m1, m2, dm3, n2, dn1, dn3)| {
        CocharPair::new([m1, m2, 2 * m2 - dm3], [n2 + dn1, n2, 2 * n2 - dn3]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn central_normalization_keeps_the_matrix(pair in cone_pair(), l in prop::sample::select(vec![2u64, 3, 5])) {
        let n = pair.normalized();
        prop_assert_eq!(n.mu_p[0], 0);
        prop_assert_eq!(n.normalized(), n);
        prop_assert_eq!(rep_matrix(&n, l), rep_matrix(&pair, l));
    }

    #[test]
    fn representative_multiplier(pair in cone_pair(), l in prop::sample::select(vec![2u64, 3, 5])) {
        let mu = multiplier(&rep_matrix(&pair, l)).unwrap();
        prop_assert_eq!(valuation(&mu, l), Some(pair.multiplier_valuation()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn membership_is_two_sided_invariant(i in 0usize..64, seed in any::<u64>()) {
        let pool = candidates(2, 1);
        let pair = pool[i % pool.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rep_matrix(&pair, 2);
        let g = random_h_integral(2, &mut rng).mul(&r).mul(&random_gsp4_integral(2, &mut rng, 5));
        prop_assert!(double_coset_member(&g, &pair).unwrap());
        prop_assert!(gejima_reduce_all(&g, 1).unwrap().contains(&pair));
    }
}

use gsp4_core::arith::rat::frac;
use gsp4_core::arith::{Ring, SqrtPrimeExt};
use gsp4_core::hecke::cosets::macdonald_degree;
use gsp4_core::hecke::lfactor::{gsp4_eigensystem, p_spin_poly};
use gsp4_core::hecke::satake::{eigen_from_reps, gl2_swap, ps_eigenvalue, weyl_invert, weyl_swap, Poly};
use gsp4_core::hecke::{decompose_double_coset, enumerate_cosets, Group, HeckeOp};
use gsp4_core::padic::{coset_key, random_gl2_integral, random_gsp4_integral, CartanLabel, MatQ};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

const LABELS: [(i64, i64, i64); 5] = [(1, 1, 1), (2, 1, 2), (1, 1, 2), (1, 0, 0), (2, 2, 2)];

fn label(i: usize) -> CartanLabel {
    let (a, b, c) = LABELS[i];
    CartanLabel::Gsp4 { a, b, c }
}

fn reps(prime: u64, i: usize) -> &'static Vec<MatQ> {
    static CACHE: OnceLock<BTreeMap<(u64, usize), Vec<MatQ>>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        let mut m = BTreeMap::new();
        for p in [2, 3] {
            for j in 0..LABELS.len() {
                m.insert((p, j), decompose_double_coset(label(j), p).unwrap());
            }
        }
        m
    })[&(prime, i)]
}

fn eigensystem(prime: u64) -> &'static (Poly, Poly, Poly) {
    static E2: OnceLock<(Poly, Poly, Poly)> = OnceLock::new();
    static E3: OnceLock<(Poly, Poly, Poly)> = OnceLock::new();
    let cell = if prime == 2 { &E2 } else { &E3 };
    cell.get_or_init(|| gsp4_eigensystem(prime).unwrap())
}

fn nonzero_rat() -> impl Strategy<Value = SqrtPrimeExt> {
    (-9i64..10, 1i64..6)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| SqrtPrimeExt::from_rat(&frac(n, d)))
}

#[test]
fn macdonald_degree_matches_a_wider_scan() {
    for i in 0..LABELS.len() {
        let lab = label(i);
        let keys: BTreeSet<MatQ> = enumerate_cosets(lab, 2, 1).iter().map(coset_key).collect();
        assert_eq!(keys.len() as u64, macdonald_degree(lab, 2), "{lab:?}");
        assert_eq!(reps(2, i).len() as u64, macdonald_degree(lab, 2));
    }
}

#[test]
fn eigenvalues_are_weyl_invariant() {
    for p in [2, 3] {
        for i in 0..LABELS.len() {
            let e = eigen_from_reps(Group::Gsp4, p, reps(p, i));
            assert_eq!(weyl_swap(&e), e, "swap {:?} at {p}", label(i));
            assert_eq!(weyl_invert(&e), e, "invert {:?} at {p}", label(i));
        }
        for op in [HeckeOp::gl2_t(p), HeckeOp::gl2_s(p)] {
            let e = ps_eigenvalue(&op).unwrap();
            assert_eq!(gl2_swap(&e), e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigenvalue_ignores_choice_of_representatives(
        p in prop::sample::select(vec![2u64, 3]), i in 0..LABELS.len(), seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut moved: Vec<MatQ> =
            reps(p, i).iter().map(|g| g.mul(&random_gsp4_integral(p, &mut rng, 4))).collect();
        moved.shuffle(&mut rng);
        prop_assert_eq!(eigen_from_reps(Group::Gsp4, p, &moved), eigen_from_reps(Group::Gsp4, p, reps(p, i)));
    }

    #[test]
    fn gl2_eigenvalue_ignores_choice_of_representatives(
        p in prop::sample::select(vec![2u64, 3, 5]), e1 in 0i64..3, d in 0i64..3, seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lab = CartanLabel::Gl2 { e1: e1 + d, e2: e1 };
        let base = decompose_double_coset(lab, p).unwrap();
        let moved: Vec<MatQ> = base.iter().map(|g| g.mul(&random_gl2_integral(p, &mut rng, 5))).collect();
        prop_assert_eq!(eigen_from_reps(Group::Gl2, p, &moved), eigen_from_reps(Group::Gl2, p, &base));
    }

    /// The spin polynomial of the enumerated eigenvalues, evaluated at a
    /// rational Satake point, equals `prod (1 - alpha X)` over
    /// `alpha in x0 {1, x1, x2, x1 x2}` computed directly.
    #[test]
    fn spin_polynomial_factors_pointwise(
        p in prop::sample::select(vec![2u64, 3]),
        x0 in nonzero_rat(), x1 in nonzero_rat(), x2 in nonzero_rat(), x in nonzero_rat(),
    ) {
        let (lam, mu, om) = eigensystem(p);
        let spin = p_spin_poly(p, lam, mu, om);
        let assign: BTreeMap<String, SqrtPrimeExt> = [("x0", &x0), ("x1", &x1), ("x2", &x2), ("X", &x)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        let lhs = spin.eval(&assign).unwrap();
        let alphas = [x0.clone(), x0.rmul(&x1), x0.rmul(&x2), x0.rmul(&x1).rmul(&x2)];
        let rhs = alphas.iter().fold(SqrtPrimeExt::one(), |acc, a| acc.rmul(&SqrtPrimeExt::one().rsub(&a.rmul(&x))));
        prop_assert_eq!(lhs, rhs);
    }
}

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use tiltmut::algebra::{compile, BasedAlgebra, Presentation};
use tiltmut::cluster::{good_mutation, linear_quiver, type_a_relations};
use tiltmut::homology::{cartan, s_matrix, SMode};
use tiltmut::matops::{
    canonical_key, fz_mutate, mutation_class, quiver_mutate, reflection, skew_of_quiver, IntMatrix, Quiver, Sign,
};
use tiltmut::mutation::{
    bb_defined, bb_module, endo_of_tilting, hom_homotopy, module_endomorphism_algebra, predicted_cartan,
    tilting_status, tilting_summands, Verdict,
};
use tiltmut::Caps;

use common::*;

fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Loop and 2-cycle free quivers on at most 6 vertices, with a vertex.
fn cluster_quiver() -> impl Strategy<Value = (Quiver, usize)> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-2i64..=2, n * (n - 1) / 2), 1..=n))
        .prop_map(|(n, counts, k)| {
            let mut edges = Vec::new();
            let mut it = counts.into_iter();
            for i in 1..=n {
                for j in i + 1..=n {
                    let c = it.next().unwrap();
                    let e = if c > 0 { (i, j) } else { (j, i) };
                    edges.extend(std::iter::repeat_n(e, c.unsigned_abs() as usize));
                }
            }
            (quiver(n, &edges), k)
        })
}

/// Finite-dimensional random algebras of dimension at most 40.
fn random_algebras() -> impl Strategy<Value = (u64, Presentation, BasedAlgebra)> {
    any::<u64>().prop_filter_map("infinite or too large", |s| {
        random_algebra(s, 40).map(|(p, b)| (s, p, b))
    })
}

fn loop_free(b: &BasedAlgebra) -> Vec<usize> {
    let q = b.arrow_basis().quiver;
    (1..=b.n()).filter(|&k| !q.has_loop_at(k)).collect()
}

proptest! {
    #![proptest_config(config(300, 11))]

    #[test]
    fn reflections_are_involutions((q, k) in cluster_quiver()) {
        for s in [Sign::Minus, Sign::Plus] {
            let r = reflection(&q, k, s).unwrap();
            prop_assert_eq!(r.checked_mul(&r).unwrap(), IntMatrix::identity(q.vertex_count()));
        }
    }

    #[test]
    fn exchange_mutation_is_both_congruences((q, k) in cluster_quiver()) {
        let b = skew_of_quiver(&q);
        let mu = fz_mutate(&b, k).unwrap();
        for s in [Sign::Minus, Sign::Plus] {
            let r = reflection(&q, k, s).unwrap();
            prop_assert_eq!(r.transpose().checked_mul(&b).unwrap().checked_mul(&r).unwrap(), mu.clone());
        }
        prop_assert_eq!(fz_mutate(&mu, k).unwrap(), b);
        prop_assert_eq!(skew_of_quiver(&quiver_mutate(&q, k).unwrap()), mu);
    }

    #[test]
    fn canonical_keys_ignore_relabeling((q, _k) in cluster_quiver(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let n = q.vertex_count();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let edges: Vec<(usize, usize)> = q.arrows().iter().map(|a| (perm[a.source - 1], perm[a.target - 1])).collect();
        prop_assert_eq!(canonical_key(&q), canonical_key(&quiver(n, &edges)));
    }
}

proptest! {
    #![proptest_config(config(120, 12))]

    #[test]
    fn asymmetry_relation_in_both_modes((seed, _p, b) in random_algebras()) {
        let c = cartan(&b).to_rat();
        for mode in [SMode::Formula, SMode::Resolved] {
            if let Ok(s) = s_matrix(&b, mode, 8) {
                prop_assert_eq!(s.checked_mul(&c.transpose()).unwrap(), c.clone(), "seed {} {:?}", seed, mode);
            }
        }
    }

    #[test]
    fn minus_and_opposite_plus_agree((seed, _p, b) in random_algebras()) {
        let op = b.opposite();
        for k in loop_free(&b) {
            let minus = tilting_status(&b, k, Sign::Minus).unwrap();
            let plus = tilting_status(&op, k, Sign::Plus).unwrap();
            prop_assert_eq!(minus.verdict.is_defined(), plus.verdict.is_defined(), "seed {} k {}", seed, k);
            prop_assert_eq!(&minus.kernel_dims, &plus.kernel_dims, "seed {} k {}", seed, k);
            prop_assert_ne!(plus.verdict, Verdict::TiltingModule);
        }
    }

    #[test]
    fn kernel_verdicts_match_path_criterion((seed, p, b) in random_algebras()) {
        for k in loop_free(&b) {
            for sign in [Sign::Minus, Sign::Plus] {
                let v = tilting_status(&b, k, sign).unwrap().verdict;
                prop_assert_eq!(v, path_criterion(&p, k, sign), "seed {} k {} {}", seed, k, sign);
            }
        }
    }

    #[test]
    fn triangular_complexes_are_modules((seed, _p, b) in random_algebras()) {
        let q = b.arrow_basis().quiver;
        let acyclic = (1..=b.n()).all(|i| b.block_dim(i, i) == 1);
        for k in loop_free(&b) {
            let isolated = q.arrows().iter().all(|a| a.source != k && a.target != k);
            if acyclic && !isolated {
                let v = tilting_status(&b, k, Sign::Minus).unwrap().verdict;
                prop_assert_ne!(v, Verdict::TiltingComplex, "seed {} k {}", seed, k);
            }
        }
    }

    #[test]
    fn hom_dimensions_follow_the_reflection((seed, _p, b) in random_algebras()) {
        for k in loop_free(&b) {
            for sign in [Sign::Minus, Sign::Plus] {
                if !tilting_status(&b, k, sign).unwrap().verdict.is_defined() {
                    continue;
                }
                let t = tilting_summands(&b, k, sign).unwrap();
                let expected = predicted_cartan(&b, k, sign).unwrap();
                for i in 0..b.n() {
                    for j in 0..b.n() {
                        let h = hom_homotopy(&b, &t[i], &t[j]);
                        prop_assert_eq!(h.dim() as i64, expected[(i, j)], "seed {} k {} {} ({},{})", seed, k, sign, i, j);
                    }
                }
                let m = endo_of_tilting(&b, k, sign).unwrap();
                prop_assert!(m.validate().is_ok());
            }
        }
    }

    #[test]
    fn bb_module_matches_the_complex((seed, _p, b) in random_algebras()) {
        for k in loop_free(&b) {
            if !bb_defined(&b, k).unwrap() {
                continue;
            }
            let t = bb_module(&b, k, &Caps::default()).unwrap();
            prop_assert!(t.validation.ok(), "seed {} k {}: {:?}", seed, k, t.validation);
            let by_modules = module_endomorphism_algebra("bb", &b, &t.summands).unwrap();
            let by_complexes = endo_of_tilting(&b, k, Sign::Minus).unwrap();
            prop_assert_eq!(cartan(&by_modules), cartan(&by_complexes));
            prop_assert!(by_modules.arrow_basis().quiver.same_arrows(&by_complexes.arrow_basis().quiver));
        }
    }
}

/// Neighbors in the type-A corpus satisfy
/// `good(L, L', k) == good(L'^op, L^op, k)`.
#[test]
fn good_mutation_is_symmetric_under_opposites() {
    let caps = Caps::default();
    let class = mutation_class(&linear_quiver(4), 100).unwrap();
    let mut checked = 0;
    for q in class.members.values() {
        let l = compile(&type_a_relations(q, &caps).unwrap(), &caps).unwrap();
        for k in 1..=4 {
            let q2 = quiver_mutate(q, k).unwrap();
            let lp = compile(&type_a_relations(&q2, &caps).unwrap(), &caps).unwrap();
            let there = good_mutation(&l, &lp, k).unwrap();
            let back = good_mutation(&lp.opposite(), &l.opposite(), k).unwrap();
            assert_eq!(there.good, back.good, "{q} at {k}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn mutation_class_does_not_depend_on_the_seed_labeling() {
    let a = mutation_class(&linear_quiver(4), 100).unwrap();
    let cycle = quiver(4, &[(1, 2), (2, 3), (3, 1), (3, 4)]);
    let b = mutation_class(&cycle, 100).unwrap();
    assert!(a.complete && b.complete);
    assert!(a.members.keys().eq(b.members.keys()));
    assert!(a.members.values().all(|q| a.members.contains_key(&canonical_key(q))));
}

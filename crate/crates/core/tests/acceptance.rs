//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use tiltmut::algebra::BasedAlgebra;
use tiltmut::cluster::{asymmetry_sign_test, good_graph, good_mutation, linear_quiver};
use tiltmut::homology::{asymmetry, cartan, coxeter_polynomial, extended_quiver, global_dimension, s_matrix, SMode};
use tiltmut::matops::{fz_mutate, quiver_of_skew, reflection, skew_of_quiver, IntMatrix, Quiver, Sign};
use tiltmut::mutation::{
    bb_defined, bb_module, check_extended_mutation, endo_of_tilting, module_endomorphism_algebra, mutate,
    predicted_cartan, tilting_status, Verdict,
};
use tiltmut::Caps;

use common::*;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn verdict(b: &BasedAlgebra, k: usize, s: Sign) -> Result<Verdict, String> {
    tilting_status(b, k, s).map(|t| t.verdict).map_err(err)
}

fn int(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn criterion_1() -> Check {
    let a = algebra("a3.alg");
    let expected = [
        (1, Sign::Minus, Verdict::NotTilting),
        (1, Sign::Plus, Verdict::TiltingComplex),
        (3, Sign::Minus, Verdict::TiltingModule),
        (3, Sign::Plus, Verdict::NotTilting),
    ];
    for (k, s, v) in expected {
        let got = verdict(&a, k, s)?;
        ensure(got == v, || format!("k={k} {s}: {got:?}, expected {v:?}"))?;
    }
    for s in [Sign::Minus, Sign::Plus] {
        ensure(verdict(&a, 2, s)?.is_defined(), || format!("k=2 {s} undefined"))?;
    }
    let minus = endo_of_tilting(&a, 2, Sign::Minus).map_err(err)?;
    let plus = endo_of_tilting(&a, 2, Sign::Plus).map_err(err)?;
    let qm = minus.arrow_basis().quiver;
    let qp = plus.arrow_basis().quiver;
    ensure(qm.same_arrows(&quiver(3, &[(2, 1), (1, 3)])), || {
        format!("quiver of mu-_2 is {qm}")
    })?;
    ensure(qp.same_arrows(&quiver(3, &[(1, 3), (3, 2)])), || {
        format!("quiver of mu+_2 is {qp}")
    })?;
    for s in [Sign::Minus, Sign::Plus] {
        let v = verdict(&minus, 1, s)?;
        ensure(v == Verdict::NotTilting, || format!("mu-_2(A) at 1, {s}: {v:?}"))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let lambda = algebra("a3.alg");
    let cyclic = algebra("a3_cyclic.alg");
    for k in 1..=3 {
        for s in [Sign::Minus, Sign::Plus] {
            let v = verdict(&cyclic, k, s)?;
            ensure(v == Verdict::NotTilting, || format!("cyclic A3 at {k} {s}: {v:?}"))?;
        }
    }
    let g = good_mutation(&lambda, &cyclic, 2).map_err(err)?;
    ensure(!g.good, || "good_mutation(A3, cyclic, 2) reported good".into())?;
    ensure(g.bb_on_left, || "BB tilting of A3 at 2 should be defined".into())?;
    ensure(bb_defined(&lambda, 2).map_err(err)?, || {
        "bb_defined(A3, 2) is false".into()
    })?;
    let t = bb_module(&lambda, 2, &Caps::default()).map_err(err)?;
    let bb = module_endomorphism_algebra("muBB", &lambda, &t.summands).map_err(err)?;
    let zero = algebra("a3_zero.alg");
    ensure(cartan(&bb) == cartan(&zero), || {
        format!(
            "Cartan of muBB_2: {:?}, of 2->1->3 with zero relation: {:?}",
            cartan(&bb).to_rows(),
            cartan(&zero).to_rows()
        )
    })?;
    ensure(cartan(&zero) == int(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1]]), || {
        "path-count Cartan".into()
    })
}

fn criterion_3() -> Check {
    let c = matrix("d5_lambda.mat");
    let cp = matrix("d5_lambda_prime.mat");
    let s = asymmetry(&c).map_err(err)?;
    let s_printed = int(&[
        &[0, 0, 0, 1, -1],
        &[0, 0, 0, 1, 0],
        &[1, 0, 0, 0, 0],
        &[0, 1, -1, 0, 0],
        &[0, 1, 0, 0, 0],
    ]);
    ensure(s == s_printed.to_rat(), || format!("S_Lambda = {s}"))?;
    let sp_inv = asymmetry(&cp).map_err(err)?.inverse().ok_or("S_Lambda' singular")?;
    let sp_inv_printed = int(&[
        &[0, 1, -1, 0, 0],
        &[0, 0, 0, 0, 1],
        &[0, 0, 0, 1, 0],
        &[0, 1, 0, 0, 0],
        &[-1, 1, 0, 0, 0],
    ]);
    ensure(sp_inv == sp_inv_printed.to_rat(), || format!("S_Lambda'^-1 = {sp_inv}"))?;
    let test = asymmetry_sign_test(&c, &cp, 3).map_err(err)?;
    ensure(test.good, || "sign test at 3 is not good".into())
}

fn criterion_4() -> Check {
    let b = matrix("skew_a3.mat");
    let bp = matrix("skew_a3_mutated.mat");
    let got = fz_mutate(&b, 2).map_err(err)?;
    ensure(got == bp, || format!("mu_2(b) = {got}"))?;
    for m in [&b, &bp] {
        let q = quiver_of_skew(m).map_err(err)?;
        ensure(skew_of_quiver(&q) == *m, || format!("round trip of {m}"))?;
    }
    Ok(())
}

fn square_with_back_arrow() -> Quiver {
    quiver(4, &[(1, 2), (1, 3), (2, 4), (3, 4), (4, 1)])
}

fn criterion_5() -> Check {
    let caps = Caps::default();
    let a = algebra("star.alg");
    let plus = algebra("star_plus.alg");
    let minus = algebra("star_minus.alg");
    for (sign, target, name) in [(Sign::Minus, &minus, "A-"), (Sign::Plus, &plus, "A+")] {
        let (m, _) = mutate(&a, 4, sign, &caps).map_err(err)?;
        let (q, qt) = (m.arrow_basis().quiver, target.arrow_basis().quiver);
        ensure(q.same_arrows(&qt), || {
            format!("mu{sign}_4(A) has quiver {q}, {name} has {qt}")
        })?;
        ensure(cartan(&m) == cartan(target), || {
            format!("Cartan of mu{sign}_4(A) differs from {name}")
        })?;
    }
    for (b, name) in [(&a, "A"), (&plus, "A+"), (&minus, "A-")] {
        let g = global_dimension(b, caps.resolution_cap);
        ensure(g.finite().is_some_and(|d| d <= 2), || format!("gldim {name} = {g}"))?;
    }
    let printed = [
        (&a, quiver(4, &[(1, 4), (4, 2), (4, 3)]), "A"),
        (&plus, square_with_back_arrow(), "A+"),
        (&minus, square_with_back_arrow(), "A-"),
    ];
    for (b, q, name) in printed {
        let e = extended_quiver(b, caps.resolution_cap).map_err(err)?;
        ensure(e.same_arrows(&q), || format!("extended quiver of {name} is {e}"))?;
    }
    for sign in [Sign::Minus, Sign::Plus] {
        let check = check_extended_mutation(&a, 4, sign, &caps).map_err(err)?;
        ensure(check.ok(), || {
            format!("extended mutation check failed for {sign}: {check:?}")
        })?;
        ensure(check.extended_after.same_arrows(&square_with_back_arrow()), || {
            format!("extended quiver after {sign} is {}", check.extended_after)
        })?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let a = algebra("hexagon.alg");
    for k in [2, 4, 5] {
        for s in [Sign::Minus, Sign::Plus] {
            let v = verdict(&a, k, s)?;
            ensure(v == Verdict::NotTilting, || format!("T{s}_{k}: {v:?}"))?;
        }
    }
    let b = algebra("hexagon_mutated.alg");
    let (pa, pb) = (
        coxeter_polynomial(&a).map_err(err)?,
        coxeter_polynomial(&b).map_err(err)?,
    );
    ensure(pa != pb, || format!("Coxeter polynomials agree: {pa:?}"))
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

fn runner(cases: u32, seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    })
}

fn run_prop<S: Strategy>(
    name: &str,
    cases: u32,
    seed: u64,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check {
    runner(cases, seed)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

/// The first `count` seeds from `base` that give a finite-dimensional random
/// algebra of dimension at most `max_dim`.
fn random_corpus(base: u64, count: usize, max_dim: usize) -> Vec<(u64, tiltmut::algebra::Presentation, BasedAlgebra)> {
    (base..)
        .filter_map(|s| random_algebra(s, max_dim).map(|(p, b)| (s, p, b)))
        .take(count)
        .collect()
}

fn criterion_7() -> Check {
    let identity = |n| IntMatrix::identity(n);
    run_prop("r^2 = I", 500, 71, cluster_quiver(), |(q, k)| {
        for s in [Sign::Minus, Sign::Plus] {
            let r = reflection(&q, k, s).unwrap();
            prop_assert_eq!(r.checked_mul(&r).unwrap(), identity(q.vertex_count()));
        }
        Ok(())
    })?;
    run_prop("fz = r congruence", 500, 72, cluster_quiver(), |(q, k)| {
        let b = skew_of_quiver(&q);
        let mu = fz_mutate(&b, k).unwrap();
        for s in [Sign::Minus, Sign::Plus] {
            let r = reflection(&q, k, s).unwrap();
            let cong = r.transpose().checked_mul(&b).unwrap().checked_mul(&r).unwrap();
            prop_assert_eq!(&cong, &mu, "sign {}", s);
        }
        Ok(())
    })?;
    run_prop("fz involution", 500, 73, cluster_quiver(), |(q, k)| {
        let b = skew_of_quiver(&q);
        prop_assert_eq!(fz_mutate(&fz_mutate(&b, k).unwrap(), k).unwrap(), b);
        Ok(())
    })?;

    let caps = Caps::default();
    let corpus = random_corpus(7_000, 300, 40);
    ensure(corpus.len() == 300, || "random corpus too small".into())?;
    let (mut defined, mut bb_cases, mut resolved) = (0, 0, 0);
    for (seed, p, b) in &corpus {
        let tag = |what: &str| format!("seed {seed}: {what}");
        let c = cartan(b);
        if let Ok(s) = s_matrix(b, SMode::Formula, caps.resolution_cap) {
            ensure(
                s.checked_mul(&c.to_rat().transpose()).map_err(err)? == c.to_rat(),
                || tag("S C^T = C (formula)"),
            )?;
        }
        if let Ok(s) = s_matrix(b, SMode::Resolved, caps.resolution_cap) {
            resolved += 1;
            ensure(
                s.checked_mul(&c.to_rat().transpose()).map_err(err)? == c.to_rat(),
                || tag("S C^T = C (resolved)"),
            )?;
        }
        let op = b.opposite();
        for k in 1..=b.n() {
            if b.arrow_basis().quiver.has_loop_at(k) {
                continue;
            }
            let minus = tilting_status(b, k, Sign::Minus).map_err(err)?;
            let plus = tilting_status(b, k, Sign::Plus).map_err(err)?;
            let op_plus = tilting_status(&op, k, Sign::Plus).map_err(err)?;
            ensure(minus.verdict.is_defined() == op_plus.verdict.is_defined(), || {
                tag(&format!("duality at {k}"))
            })?;
            for (status, sign) in [(&minus, Sign::Minus), (&plus, Sign::Plus)] {
                let oracle = path_criterion(p, k, sign);
                ensure(status.verdict == oracle, || {
                    tag(&format!("{sign} at {k}: kernel {:?}, paths {oracle:?}", status.verdict))
                })?;
                if status.verdict.is_defined() {
                    defined += 1;
                    let m = endo_of_tilting(b, k, sign).map_err(|e| tag(&e.to_string()))?;
                    ensure(cartan(&m) == predicted_cartan(b, k, sign).map_err(err)?, || {
                        tag("Cartan transport")
                    })?;
                }
            }
            let bb = bb_defined(b, k).map_err(|e| tag(&e.to_string()))?;
            ensure(bb == (minus.verdict == Verdict::TiltingModule), || {
                tag("bb_defined vs kernel")
            })?;
            if bb {
                bb_cases += 1;
                let t = bb_module(b, k, &caps).map_err(err)?;
                ensure(t.validation.ok(), || {
                    tag(&format!("BB validation at {k}: {:?}", t.validation))
                })?;
            }
        }
    }
    ensure(defined > 0 && bb_cases > 0 && resolved > 0, || {
        "degenerate random corpus".into()
    })
}

fn criterion_8() -> Check {
    for n in [3, 4] {
        let g = good_graph(&linear_quiver(n), &Caps::default()).map_err(err)?;
        ensure(g.good_edges().count() > 0, || format!("A{n}: no good edges"))?;
        ensure(g.corroborated(), || format!("A{n}: a good edge failed corroboration"))?;
        for node in &g.nodes {
            ensure(node.sign_test_agrees(), || {
                format!("A{n}: sign test disagrees at node {}", node.key)
            })?;
            ensure(node.bb_sign_test.iter().all(Option::is_some), || {
                format!("A{n}: singular Cartan at {}", node.key)
            })?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("definedness table for linear A3", criterion_1),
        ("cyclic A3 is rigid; BB mutation of A3 at 2", criterion_2),
        ("D5 asymmetries and sign test", criterion_3),
        ("exchange matrix mutation", criterion_4),
        ("mutations of the star algebra and extended quivers", criterion_5),
        (
            "six-vertex algebra: no tilting complexes, Euler forms separated",
            criterion_6,
        ),
        ("property suites", criterion_7),
        ("type-A good mutation graphs", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

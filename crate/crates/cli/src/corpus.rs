//! Regression examples with known answers, embedded so the binary can check
//! itself without the source tree.

use serde::Serialize;
use tiltmut::algebra::{compile, parse, BasedAlgebra};
use tiltmut::cluster::{asymmetry_sign_test, good_graph, good_mutation, linear_quiver};
use tiltmut::homology::{cartan, coxeter_polynomial, global_dimension};
use tiltmut::matops::{fz_mutate, parse_matrix, quiver_of_skew, skew_of_quiver, IntMatrix, Quiver, Sign};
use tiltmut::mutation::{
    bb_module, check_extended_mutation, module_endomorphism_algebra, mutate, tilting_status, Verdict,
};
use tiltmut::Caps;

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!("../../../data/", $name))
    };
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub name: &'static str,
    pub pass: bool,
    /// The failure, or empty.
    pub detail: String,
}

type Check = Result<(), String>;
type Named = (&'static str, fn(&Caps) -> Check);

fn algebra(text: &str, caps: &Caps) -> Result<BasedAlgebra, String> {
    let p = parse(text).map_err(|e| e.to_string())?;
    compile(&p, caps).map_err(|e| e.to_string())
}

fn matrix(text: &str) -> Result<IntMatrix, String> {
    parse_matrix(text)
        .map_err(|e| e.to_string())?
        .to_int()
        .ok_or_else(|| "non-integral matrix".into())
}

fn edges(n: usize, e: &[(usize, usize)]) -> Quiver {
    Quiver::from_edges(n, e).expect("vertices in range")
}

fn verdict(b: &BasedAlgebra, k: usize, s: Sign) -> Result<Verdict, String> {
    tilting_status(b, k, s).map(|t| t.verdict).map_err(|e| e.to_string())
}

fn expect(cond: bool, what: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn a3_table(caps: &Caps) -> Check {
    let a = algebra(fixture!("a3.alg"), caps)?;
    let expected = [
        (1, Sign::Minus, Some(Verdict::NotTilting)),
        (1, Sign::Plus, Some(Verdict::TiltingComplex)),
        (2, Sign::Minus, None),
        (2, Sign::Plus, None),
        (3, Sign::Minus, Some(Verdict::TiltingModule)),
        (3, Sign::Plus, Some(Verdict::NotTilting)),
    ];
    for (k, s, v) in expected {
        let got = verdict(&a, k, s)?;
        let ok = v.map_or(got.is_defined(), |v| v == got);
        expect(ok, &format!("vertex {k} {s}: {got}"))?;
    }
    Ok(())
}

fn a3_mutations(caps: &Caps) -> Check {
    let a = algebra(fixture!("a3.alg"), caps)?;
    let (m, _) = mutate(&a, 2, Sign::Minus, caps).map_err(|e| e.to_string())?;
    let (p, _) = mutate(&a, 2, Sign::Plus, caps).map_err(|e| e.to_string())?;
    expect(
        m.arrow_basis().quiver.same_arrows(&edges(3, &[(2, 1), (1, 3)])),
        "quiver of the minus mutation",
    )?;
    expect(
        p.arrow_basis().quiver.same_arrows(&edges(3, &[(1, 3), (3, 2)])),
        "quiver of the plus mutation",
    )?;
    for s in [Sign::Minus, Sign::Plus] {
        expect(!verdict(&m, 1, s)?.is_defined(), "mutation at 1 after mutating at 2")?;
    }
    Ok(())
}

fn cyclic_rigid(caps: &Caps) -> Check {
    let c = algebra(fixture!("a3_cyclic.alg"), caps)?;
    for k in 1..=3 {
        for s in [Sign::Minus, Sign::Plus] {
            expect(!verdict(&c, k, s)?.is_defined(), &format!("vertex {k} {s} is defined"))?;
        }
    }
    let a = algebra(fixture!("a3.alg"), caps)?;
    let g = good_mutation(&a, &c, 2).map_err(|e| e.to_string())?;
    expect(!g.good && g.bb_on_left, "good mutation verdict")
}

fn bb_at_2(caps: &Caps) -> Check {
    let a = algebra(fixture!("a3.alg"), caps)?;
    let t = bb_module(&a, 2, caps).map_err(|e| e.to_string())?;
    expect(t.validation.ok(), "validation")?;
    let end = module_endomorphism_algebra("bb", &a, &t.summands).map_err(|e| e.to_string())?;
    let zero = algebra(fixture!("a3_zero.alg"), caps)?;
    expect(
        cartan(&end) == cartan(&zero),
        "Cartan matrix of the endomorphism algebra",
    )
}

fn d5(caps: &Caps) -> Check {
    let (l, lp) = (
        algebra(fixture!("d5_lambda.alg"), caps)?,
        algebra(fixture!("d5_lambda_prime.alg"), caps)?,
    );
    let (c, cp) = (
        matrix(fixture!("d5_lambda.mat"))?,
        matrix(fixture!("d5_lambda_prime.mat"))?,
    );
    expect(
        cartan(&l) == c && cartan(&lp) == cp,
        "presentations reproduce the Cartan matrices",
    )?;
    let t = asymmetry_sign_test(&c, &cp, 3).map_err(|e| e.to_string())?;
    expect(t.good, "sign test at 3")?;
    let g = good_mutation(&l, &lp, 3).map_err(|e| e.to_string())?;
    expect(g.good && g.corroboration.is_some_and(|c| c.ok()), "good mutation at 3")
}

fn exchange(_: &Caps) -> Check {
    let (b, bp) = (
        matrix(fixture!("skew_a3.mat"))?,
        matrix(fixture!("skew_a3_mutated.mat"))?,
    );
    expect(fz_mutate(&b, 2).map_err(|e| e.to_string())? == bp, "mutation at 2")?;
    for m in [&b, &bp] {
        let q = quiver_of_skew(m).map_err(|e| e.to_string())?;
        expect(skew_of_quiver(&q) == *m, "round trip through the quiver")?;
    }
    Ok(())
}

fn star(caps: &Caps) -> Check {
    let a = algebra(fixture!("star.alg"), caps)?;
    let targets = [
        (Sign::Minus, algebra(fixture!("star_minus.alg"), caps)?),
        (Sign::Plus, algebra(fixture!("star_plus.alg"), caps)?),
    ];
    for (s, target) in &targets {
        let (m, _) = mutate(&a, 4, *s, caps).map_err(|e| e.to_string())?;
        expect(
            m.arrow_basis().quiver.same_arrows(&target.arrow_basis().quiver),
            "quiver",
        )?;
        expect(cartan(&m) == cartan(target), "Cartan matrix")?;
        expect(
            global_dimension(target, caps.resolution_cap)
                .finite()
                .is_some_and(|d| d <= 2),
            "gldim",
        )?;
        let check = check_extended_mutation(&a, 4, *s, caps).map_err(|e| e.to_string())?;
        expect(check.ok(), "extended quiver mutation")?;
    }
    Ok(())
}

fn hexagon(caps: &Caps) -> Check {
    let a = algebra(fixture!("hexagon.alg"), caps)?;
    for k in [2, 4, 5] {
        for s in [Sign::Minus, Sign::Plus] {
            expect(verdict(&a, k, s)? == Verdict::NotTilting, &format!("vertex {k} {s}"))?;
        }
    }
    let b = algebra(fixture!("hexagon_mutated.alg"), caps)?;
    let (pa, pb) = (coxeter_polynomial(&a), coxeter_polynomial(&b));
    expect(pa.is_ok() && pa != pb, "Coxeter polynomials")
}

fn type_a_graphs(caps: &Caps) -> Check {
    for n in [3, 4] {
        let g = good_graph(&linear_quiver(n), caps).map_err(|e| e.to_string())?;
        expect(g.corroborated(), &format!("A{n} corroboration"))?;
        expect(g.criteria_agree(), &format!("A{n} sign test"))?;
    }
    Ok(())
}

pub fn run(caps: &Caps) -> Vec<Row> {
    let checks: [Named; 9] = [
        ("linear A3 definedness", a3_table),
        ("linear A3 mutations at 2", a3_mutations),
        ("cyclic A3 rigidity", cyclic_rigid),
        ("BB module of A3 at 2", bb_at_2),
        ("D5 good mutation at 3", d5),
        ("exchange matrix mutation", exchange),
        ("star algebra mutations", star),
        ("six-vertex algebra", hexagon),
        ("type-A good graphs", type_a_graphs),
    ];
    checks
        .iter()
        .map(|(name, check)| {
            let outcome = check(caps);
            Row {
                name,
                pass: outcome.is_ok(),
                detail: outcome.err().unwrap_or_default(),
            }
        })
        .collect()
}

pub fn format_table(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for r in rows {
        let status = if r.pass { "PASS" } else { "FAIL" };
        s += &format!("{:width$}  {status}", r.name);
        if !r.detail.is_empty() {
            s += &format!("  {}", r.detail);
        }
        s.push('\n');
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    s += &format!("{passed}/{} passed\n", rows.len());
    s
}

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use tiltmut::algebra::{compile, parse, BasedAlgebra, PathSum, PathWord, Presentation, RewriteSystem};
use tiltmut::matops::{parse_matrix, span_dim, IntMatrix, Quiver, Sign};
use tiltmut::mutation::Verdict;
use tiltmut::rational::Rat;
use tiltmut::{Caps, Vertex};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn algebra(name: &str) -> BasedAlgebra {
    compile(&parse(&fixture(name)).unwrap(), &Caps::default()).unwrap()
}

pub fn matrix(name: &str) -> IntMatrix {
    parse_matrix(&fixture(name)).unwrap().to_int().unwrap()
}

pub fn quiver(n: usize, edges: &[(Vertex, Vertex)]) -> Quiver {
    Quiver::from_edges(n, edges).unwrap()
}

/// Caps small enough that rejected random presentations fail fast.
pub fn small_caps() -> Caps {
    Caps {
        len_cap: 10,
        size_cap: 400,
        ..Caps::default()
    }
}

/// Presentation text for a random quiver with relations. Roughly half the
/// quivers are acyclic; the rest get many zero relations so that most are
/// finite-dimensional.
pub fn random_presentation_text(seed: u64) -> String {
    let mut rng = StdRng::seed_from_u64(seed);
    let n: usize = rng.gen_range(2..=5);
    let acyclic = rng.gen_bool(0.5);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    let m = rng.gen_range(1..=n + 2);
    let mut arrows = Vec::new();
    while arrows.len() < m {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if x == y || (acyclic && x > y) {
            continue;
        }
        arrows.push((order[x], order[y]));
    }
    let mut text = format!("vertices {n}\n");
    for (i, (s, t)) in arrows.iter().enumerate() {
        text += &format!("arrow x{i}: {s} -> {t}\n");
    }
    let paths2: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| arrows[a].1 == arrows[b].0)
        .collect();
    let paths3: Vec<(usize, usize, usize)> = paths2
        .iter()
        .flat_map(|&(a, b)| (0..m).map(move |c| (a, b, c)))
        .filter(|&(_, b, c)| arrows[b].1 == arrows[c].0)
        .collect();
    let p = if acyclic { 0.25 } else { 0.7 };
    for &(a, b) in &paths2 {
        if rng.gen_bool(p) {
            text += &format!("relation x{a}.x{b}\n");
        }
    }
    if !paths3.is_empty() && rng.gen_bool(0.3) {
        let (a, b, c) = paths3[rng.gen_range(0..paths3.len())];
        text += &format!("relation x{a}.x{b}.x{c}\n");
    }
    // a binomial relation between two parallel paths of length 2
    let pairs: Vec<((usize, usize), (usize, usize))> = paths2
        .iter()
        .flat_map(|&p| paths2.iter().map(move |&q| (p, q)))
        .filter(|&(p, q)| p < q && arrows[p.0].0 == arrows[q.0].0 && arrows[p.1].1 == arrows[q.1].1)
        .collect();
    if !pairs.is_empty() && rng.gen_bool(0.4) {
        let ((a, b), (c, d)) = pairs[rng.gen_range(0..pairs.len())];
        let coeff = [1, -1, 2][rng.gen_range(0..3)];
        text += &format!("relation x{a}.x{b} - {coeff}*x{c}.x{d}\n");
    }
    text
}

/// A finite-dimensional random presentation of dimension at most `max_dim`,
/// or `None` when the seed produced something else.
pub fn random_algebra(seed: u64, max_dim: usize) -> Option<(Presentation, BasedAlgebra)> {
    let p = parse(&random_presentation_text(seed)).ok()?;
    let b = compile(&p, &small_caps()).ok()?;
    (b.dim() <= max_dim).then_some((p, b))
}

/// `x -> (a x)_a` (or `(x b)_b`) is injective on the span of the normal
/// words `ws`, i.e. the stacked images of the words are independent.
fn injective(rs: &RewriteSystem, ws: &[PathWord], arrows: &[usize], left: bool) -> bool {
    let q = rs.quiver();
    let mut keys: Vec<(usize, PathWord)> = Vec::new();
    let mut images = Vec::with_capacity(ws.len());
    for w in ws {
        let mut image = Vec::new();
        for &a in arrows {
            let aw = PathWord::arrow(q, a);
            let Some(prod) = (if left { aw.concat(w) } else { w.concat(&aw) }) else {
                continue;
            };
            for (word, c) in rs.normal_form(&PathSum::from_word(prod)).terms() {
                let key = (a, word.clone());
                let at = keys.iter().position(|k| *k == key).unwrap_or_else(|| {
                    keys.push(key);
                    keys.len() - 1
                });
                image.push((at, c.clone()));
            }
        }
        images.push(image);
    }
    let rows: Vec<Vec<Rat>> = images
        .into_iter()
        .map(|image| {
            let mut row = vec![Rat::from_integer(0.into()); keys.len()];
            for (at, c) in image {
                row[at] += c;
            }
            row
        })
        .collect();
    span_dim(keys.len(), &rows) == ws.len()
}

/// The combinatorial tilting criterion evaluated with rewriting normal
/// forms of paths only.
pub fn path_criterion(p: &Presentation, k: Vertex, sign: Sign) -> Verdict {
    let caps = small_caps();
    let rs = RewriteSystem::complete(p, caps.len_cap, caps.size_cap).unwrap();
    let q = rs.quiver();
    let n = q.vertex_count();
    let words = |s: Vertex, t: Vertex| -> Vec<PathWord> {
        rs.basis()
            .iter()
            .filter(|w| w.source == s && w.target == t)
            .cloned()
            .collect()
    };
    match sign {
        Sign::Minus => {
            let into: Vec<usize> = (0..q.arrows().len()).filter(|&a| q.arrows()[a].target == k).collect();
            let holds = |i: Vertex| injective(&rs, &words(k, i), &into, true);
            if !(1..=n).filter(|&i| i != k).all(holds) {
                Verdict::NotTilting
            } else if holds(k) {
                Verdict::TiltingModule
            } else {
                Verdict::TiltingComplex
            }
        }
        Sign::Plus => {
            let out: Vec<usize> = (0..q.arrows().len()).filter(|&a| q.arrows()[a].source == k).collect();
            let holds = |i: Vertex| injective(&rs, &words(i, k), &out, false);
            if (1..=n).filter(|&i| i != k).all(holds) {
                Verdict::TiltingComplex
            } else {
                Verdict::NotTilting
            }
        }
    }
}

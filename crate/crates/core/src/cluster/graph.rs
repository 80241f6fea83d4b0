use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::compile;
use crate::cluster::good::{asymmetry_sign_test, bb_sign_test, good_mutation, SignSide};
use crate::cluster::type_a::{linear_quiver, triangle_relations};
use crate::error::{Error, Result};
use crate::homology::cartan;
use crate::matops::{canonical_key, mutation_class_strict, quiver_mutate, Quiver};
use crate::mutation::bb_defined;
use crate::{Caps, Vertex};

#[derive(Clone, Debug, Serialize)]
pub struct GoodNode {
    pub id: usize,
    /// Compact canonical key of the quiver.
    pub key: String,
    /// The canonically labeled representative.
    pub quiver: Quiver,
    pub dim: usize,
    pub relations: usize,
    /// `bb_defined` at each vertex.
    pub bb_defined: Vec<bool>,
    /// The column sign test of `S` at each vertex (`None` for a singular
    /// Cartan matrix).
    pub bb_sign_test: Vec<Option<bool>>,
}

impl GoodNode {
    pub fn sign_test_agrees(&self) -> bool {
        self.bb_defined
            .iter()
            .zip(&self.bb_sign_test)
            .all(|(b, s)| s.is_none_or(|s| s == *b))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodEdge {
    pub from: usize,
    pub to: usize,
    /// Mutation vertex, in the labeling of the source node.
    pub vertex: Vertex,
    pub good: bool,
    pub bb_on_left: bool,
    pub bb_on_right_op: bool,
    /// For good edges: Cartan matrix and quiver of the BB mutation match the
    /// neighbor.
    pub corroborated: Option<bool>,
    /// Verdict of the numerical criterion on the two Cartan matrices.
    pub sign_test_good: Option<bool>,
}

/// Mutation class of a type-A quiver with every mutation labeled good or
/// not good.
#[derive(Clone, Debug, Serialize)]
pub struct GoodGraph {
    pub seed: Quiver,
    pub nodes: Vec<GoodNode>,
    pub edges: Vec<GoodEdge>,
}

impl GoodGraph {
    pub fn good_edges(&self) -> impl Iterator<Item = &GoodEdge> {
        self.edges.iter().filter(|e| e.good)
    }

    /// Every good edge passed corroboration.
    pub fn corroborated(&self) -> bool {
        self.good_edges().all(|e| e.corroborated == Some(true))
    }

    /// The presentation-level and numerical verdicts agree on every edge
    /// where the latter applies.
    pub fn criteria_agree(&self) -> bool {
        self.edges.iter().all(|e| e.sign_test_good.is_none_or(|s| s == e.good))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph good_mutations {\n");
        for n in &self.nodes {
            s += &format!("  n{} [label=\"{}\"];\n", n.id, n.key);
        }
        for e in &self.edges {
            s += &format!(
                "  n{} -> n{} [label=\"{}\", good={}];\n",
                e.from, e.to, e.vertex, e.good
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Explores the mutation class of `seed`, which must be of type A, compiling
/// each member with its cluster-tilted relations.
pub fn good_graph(seed: &Quiver, caps: &Caps) -> Result<GoodGraph> {
    let n = seed.vertex_count();
    let class = mutation_class_strict(seed, caps.class_cap)?;
    if !class.members.contains_key(&canonical_key(&linear_quiver(n))) {
        return Err(Error::NotTypeA(format!("{seed} is not in the mutation class of A{n}")));
    }
    let keys: Vec<_> = class.members.keys().cloned().collect();
    let results: Vec<Result<(GoodNode, Vec<GoodEdge>)>> = keys
        .par_iter()
        .enumerate()
        .map(|(id, key)| {
            let q = key.to_quiver();
            let p = triangle_relations(&q);
            let alg = compile(&p, caps)?;
            let c = cartan(&alg);
            let mut bb = Vec::with_capacity(n);
            let mut sign = Vec::with_capacity(n);
            let mut edges = Vec::with_capacity(n);
            for k in 1..=n {
                bb.push(bb_defined(&alg, k)?);
                sign.push(match bb_sign_test(&c, k, SignSide::Algebra) {
                    Ok(r) => Some(r.pass),
                    Err(Error::Singular) => None,
                    Err(e) => return Err(e),
                });
                let q2 = quiver_mutate(&q, k)?;
                let alg2 = compile(&triangle_relations(&q2), caps)?;
                let verdict = match good_mutation(&alg, &alg2, k) {
                    Ok(v) => v,
                    // isolated vertex
                    Err(Error::NotDefined { .. }) => continue,
                    Err(e) => return Err(e),
                };
                let to = keys
                    .binary_search(&canonical_key(&q2))
                    .expect("class is closed under mutation");
                let sign_test_good = match asymmetry_sign_test(&c, &cartan(&alg2), k) {
                    Ok(t) => Some(t.good),
                    Err(Error::Singular) => None,
                    Err(e) => return Err(e),
                };
                edges.push(GoodEdge {
                    from: id,
                    to,
                    vertex: k,
                    good: verdict.good,
                    bb_on_left: verdict.bb_on_left,
                    bb_on_right_op: verdict.bb_on_right_op,
                    corroborated: verdict.corroboration.as_ref().map(|c| c.ok()),
                    sign_test_good,
                });
            }
            let node = GoodNode {
                id,
                key: key.to_compact(),
                quiver: q,
                dim: alg.dim(),
                relations: p.relations.len(),
                bb_defined: bb,
                bb_sign_test: sign,
            };
            Ok((node, edges))
        })
        .collect();
    let mut nodes = Vec::with_capacity(keys.len());
    let mut edges = Vec::new();
    for r in results {
        let (node, e) = r?;
        nodes.push(node);
        edges.extend(e);
    }
    Ok(GoodGraph {
        seed: seed.clone(),
        nodes,
        edges,
    })
}

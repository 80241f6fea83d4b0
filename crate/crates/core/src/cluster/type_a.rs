use crate::algebra::{PathSum, PathWord, Presentation};
use crate::error::{Error, Result};
use crate::matops::{canonical_key, mutation_class, Quiver};
use crate::Caps;

/// `1 -> 2 -> ... -> n`.
pub fn linear_quiver(n: usize) -> Quiver {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    Quiver::from_edges(n, &edges).expect("vertices in range")
}

/// Every oriented 3-cycle `i -> j -> l -> i`, each reported once with its
/// three arrow indices in cyclic order.
fn oriented_triangles(q: &Quiver) -> Vec<[usize; 3]> {
    let arrows = q.arrows();
    let mut out = Vec::new();
    for (x, a) in arrows.iter().enumerate() {
        for (y, b) in arrows.iter().enumerate() {
            if b.source != a.target {
                continue;
            }
            for (z, c) in arrows.iter().enumerate() {
                if c.source == b.target && c.target == a.source && x < y && x < z {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

/// Relations of the cluster-tilted algebra of type A with quiver `q`: the
/// composition of any two consecutive arrows of an oriented 3-cycle is zero.
/// Fails with `NotTypeA` unless `q` is mutation equivalent to a linear `A_n`.
pub fn type_a_relations(q: &Quiver, caps: &Caps) -> Result<Presentation> {
    q.check_cluster_quiver()?;
    let n = q.vertex_count();
    let class = mutation_class(&linear_quiver(n), caps.class_cap)?;
    if !class.members.contains_key(&canonical_key(q)) {
        return Err(if class.complete {
            Error::NotTypeA(format!("{q} is not in the mutation class of A{n}"))
        } else {
            Error::ClassCapExceeded { cap: caps.class_cap }
        });
    }
    Ok(triangle_relations(q))
}

/// Zero relations on consecutive arrows of every oriented 3-cycle, without
/// the type-A membership check.
pub(crate) fn triangle_relations(q: &Quiver) -> Presentation {
    let n = q.vertex_count();
    let mut relations = Vec::new();
    for [x, y, z] in oriented_triangles(q) {
        for (u, v) in [(x, y), (y, z), (z, x)] {
            let w = PathWord::from_arrows(q, vec![u, v]).expect("consecutive arrows");
            relations.push(PathSum::from_word(w));
        }
    }
    Presentation {
        name: format!("A{n}"),
        quiver: q.clone(),
        relations,
    }
}

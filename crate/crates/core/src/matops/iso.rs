//! Canonical forms of quivers up to vertex relabeling, and mutation classes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matops::{quiver_mutate, Quiver};

/// Isomorphism-invariant key of a quiver: equal keys iff the quivers are
/// isomorphic directed multigraphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalKey {
    n: usize,
    /// Arrow counts of the lexicographically least relabeling, row-major.
    counts: Vec<u32>,
}

impl CanonicalKey {
    /// Compact textual form, e.g. `3:010001000`.
    pub fn to_compact(&self) -> String {
        let body: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        let sep = if self.counts.iter().any(|&c| c > 9) { "," } else { "" };
        format!("{}:{}", self.n, body.join(sep))
    }

    /// The quiver realized by the canonical relabeling.
    pub fn to_quiver(&self) -> Quiver {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for _ in 0..self.counts[i * self.n + j] {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        Quiver::from_edges(self.n, &edges).expect("vertices in range")
    }
}

/// Per-vertex invariant used to restrict the permutation search.
fn vertex_signature(adj: &[Vec<u32>], v: usize) -> (u32, u32, u32, Vec<(u32, u32)>) {
    let n = adj.len();
    let out: u32 = (0..n).filter(|&j| j != v).map(|j| adj[v][j]).sum();
    let inn: u32 = (0..n).filter(|&j| j != v).map(|j| adj[j][v]).sum();
    let mut nbr: Vec<(u32, u32)> = (0..n)
        .filter(|&j| j != v && (adj[v][j] > 0 || adj[j][v] > 0))
        .map(|j| (adj[v][j], adj[j][v]))
        .collect();
    nbr.sort_unstable();
    (adj[v][v], out, inn, nbr)
}

/// Exhaustive permutation search, pruned by vertex signatures and by the
/// partially filled adjacency matrix.
pub fn canonical_key(q: &Quiver) -> CanonicalKey {
    let n = q.vertex_count();
    let m = q.adjacency();
    let adj: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)] as u32).collect()).collect();

    let mut sigs: Vec<_> = (0..n).map(|v| (vertex_signature(&adj, v), v)).collect();
    sigs.sort();
    // slot p may only take vertices whose signature equals the p-th sorted one
    let slot_class: Vec<usize> = {
        let mut class = Vec::with_capacity(n);
        let mut c = 0;
        for p in 0..n {
            if p > 0 && sigs[p].0 != sigs[p - 1].0 {
                c += 1;
            }
            class.push(c);
        }
        class
    };
    let vertex_class: Vec<usize> = {
        let mut vc = vec![0; n];
        for (p, (_, v)) in sigs.iter().enumerate() {
            vc[*v] = slot_class[p];
        }
        vc
    };

    let mut search = Search {
        adj: &adj,
        n,
        slot_class: &slot_class,
        vertex_class: &vertex_class,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.run();
    let order = search.best.expect("at least one permutation");
    let mut counts = Vec::with_capacity(n * n);
    for &a in &order {
        for &b in &order {
            counts.push(adj[a][b]);
        }
    }
    CanonicalKey { n, counts }
}

struct Search<'a> {
    adj: &'a [Vec<u32>],
    n: usize,
    slot_class: &'a [usize],
    vertex_class: &'a [usize],
    order: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<usize>>,
}

impl Search<'_> {
    /// Compares the leading `p x p` corner (in the order in which cells get
    /// filled) against the best complete ordering found so far.
    fn compare_prefix(&self, p: usize) -> std::cmp::Ordering {
        let Some(best) = &self.best else {
            return std::cmp::Ordering::Less;
        };
        // cells are revealed shell by shell: new row/column p-1
        for s in 0..p {
            for t in 0..=s {
                for (x, y) in [(s, t), (t, s)] {
                    let mine = self.adj[self.order[x]][self.order[y]];
                    let theirs = self.adj[best[x]][best[y]];
                    if mine != theirs {
                        return mine.cmp(&theirs);
                    }
                }
            }
        }
        std::cmp::Ordering::Equal
    }

    fn run(&mut self) {
        let p = self.order.len();
        if p == self.n {
            if self.compare_prefix(p) == std::cmp::Ordering::Less || self.best.is_none() {
                self.best = Some(self.order.clone());
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] || self.vertex_class[v] != self.slot_class[p] {
                continue;
            }
            self.order.push(v);
            self.used[v] = true;
            if self.compare_prefix(p + 1) != std::cmp::Ordering::Greater {
                self.run();
            }
            self.used[v] = false;
            self.order.pop();
        }
    }
}

/// Quivers reachable by iterated mutation, one representative per
/// isomorphism class.
#[derive(Clone, Debug)]
pub struct MutationClass {
    /// Representative (first discovered, labeled as reached) per canonical key.
    pub members: BTreeMap<CanonicalKey, Quiver>,
    /// False when the size cap stopped the search early.
    pub complete: bool,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: &Quiver) -> bool {
        self.members.contains_key(&canonical_key(q))
    }
}

/// Breadth-first closure under mutation at every vertex. Frontier expansion
/// runs in parallel; merging is ordered by canonical key so the result does
/// not depend on scheduling. Hitting `max_size` returns the partial class
/// with `complete == false`.
pub fn mutation_class(seed: &Quiver, max_size: usize) -> Result<MutationClass> {
    seed.check_cluster_quiver()?;
    let mut members = BTreeMap::new();
    members.insert(canonical_key(seed), seed.clone());
    let mut frontier = vec![seed.clone()];
    while !frontier.is_empty() {
        let expanded: Vec<(CanonicalKey, Quiver)> = frontier
            .par_iter()
            .flat_map_iter(|q| {
                (1..=q.vertex_count()).map(move |k| {
                    let m = quiver_mutate(q, k).expect("mutation class stays loop and 2-cycle free");
                    (canonical_key(&m), m)
                })
            })
            .collect();
        let mut fresh: BTreeMap<CanonicalKey, Quiver> = BTreeMap::new();
        for (key, q) in expanded {
            if !members.contains_key(&key) {
                fresh.entry(key).or_insert(q);
            }
        }
        frontier = Vec::with_capacity(fresh.len());
        for (key, q) in fresh {
            if members.len() >= max_size {
                return Ok(MutationClass {
                    members,
                    complete: false,
                });
            }
            members.insert(key, q.clone());
            frontier.push(q);
        }
    }
    Ok(MutationClass {
        members,
        complete: true,
    })
}

/// Like [`mutation_class`] but treats an exceeded cap as an error.
pub fn mutation_class_strict(seed: &Quiver, max_size: usize) -> Result<MutationClass> {
    let class = mutation_class(seed, max_size)?;
    if class.complete {
        Ok(class)
    } else {
        Err(Error::ClassCapExceeded { cap: max_size })
    }
}

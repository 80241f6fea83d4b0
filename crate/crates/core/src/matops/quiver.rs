//! Quivers, their skew-symmetric matrices, reflection matrices and
//! Fomin-Zelevinsky mutation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matops::IntMatrix;
use crate::Vertex;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: Vertex,
    pub target: Vertex,
}

/// Finite directed multigraph on the vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "minus",
            Sign::Plus => "plus",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "minus" | "-" => Ok(Sign::Minus),
            "plus" | "+" => Ok(Sign::Plus),
            other => Err(format!("unknown sign {other:?}")),
        }
    }
}

impl Quiver {
    pub fn new(n: usize) -> Self {
        Quiver { n, arrows: Vec::new() }
    }

    /// Builds a quiver from `(source, target)` pairs, naming arrows
    /// `a{src}_{tgt}_{idx}`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut q = Quiver::new(n);
        for &(s, t) in edges {
            let idx = q.arrow_count(s, t);
            q.add_arrow(format!("a{s}_{t}_{idx}"), s, t)?;
        }
        Ok(q)
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: Vertex, target: Vertex) -> Result<()> {
        let name = name.into();
        for v in [source, target] {
            self.check_vertex(v)?;
        }
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("duplicate arrow name {name:?}"),
            });
        }
        self.arrows.push(Arrow { name, source, target });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_count(&self, source: Vertex, target: Vertex) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == source && a.target == target)
            .count()
    }

    /// Matrix of arrow counts, `(i-1, j-1)` entry = number of arrows `i -> j`.
    pub fn adjacency(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for a in &self.arrows {
            m[(a.source - 1, a.target - 1)] += 1;
        }
        m
    }

    pub fn has_loop_at(&self, k: Vertex) -> bool {
        self.arrows.iter().any(|a| a.source == k && a.target == k)
    }

    pub fn first_loop(&self) -> Option<Vertex> {
        self.arrows.iter().find(|a| a.source == a.target).map(|a| a.source)
    }

    pub fn first_two_cycle(&self) -> Option<(Vertex, Vertex)> {
        let adj = self.adjacency();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if adj[(i, j)] > 0 && adj[(j, i)] > 0 {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    /// Rejects loops and 2-cycles.
    pub fn check_cluster_quiver(&self) -> Result<()> {
        if let Some(v) = self.first_loop() {
            return Err(Error::LoopAt(v));
        }
        if let Some((i, j)) = self.first_two_cycle() {
            return Err(Error::TwoCycle(i, j));
        }
        Ok(())
    }

    pub fn is_sink(&self, k: Vertex) -> bool {
        !self.arrows.iter().any(|a| a.source == k)
    }

    pub fn is_source(&self, k: Vertex) -> bool {
        !self.arrows.iter().any(|a| a.target == k)
    }

    /// Same vertices, every arrow reversed and starred.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: star(&a.name),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// True when both quivers have the same arrow counts between every pair of
    /// labeled vertices (arrow names ignored).
    pub fn same_arrows(&self, other: &Quiver) -> bool {
        self.n == other.n && self.adjacency() == other.adjacency()
    }

    /// Presentation-file text for the bare quiver.
    pub fn format_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.n);
        for a in &self.arrows {
            s.push_str(&format!("arrow {}: {} -> {}\n", a.name, a.source, a.target));
        }
        s
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}->{}", a.source, a.target))
            .collect();
        write!(f, "Q{}[{}]", self.n, edges.join(","))
    }
}

pub(crate) fn star(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

/// `b[i][j] = #(j -> i) - #(i -> j)`; loops cancel.
pub fn skew_of_quiver(q: &Quiver) -> IntMatrix {
    let adj = q.adjacency();
    let n = q.vertex_count();
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = adj[(j, i)] - adj[(i, j)];
        }
    }
    b
}

/// Inverse of [`skew_of_quiver`] on skew-symmetric matrices: `b[i][j] > 0`
/// yields that many arrows `j -> i`.
pub fn quiver_of_skew(b: &IntMatrix) -> Result<Quiver> {
    if !b.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    let n = b.rows();
    let mut q = Quiver::new(n);
    for j in 0..n {
        for i in 0..n {
            for idx in 0..b[(i, j)].max(0) {
                q.add_arrow(format!("a{}_{}_{}", j + 1, i + 1, idx), j + 1, i + 1)?;
            }
        }
    }
    Ok(q)
}

/// The change-of-basis matrix `r-_k` (arrows into `k`) or `r+_k` (arrows out
/// of `k`): identity except row `k`.
pub fn reflection(q: &Quiver, k: Vertex, sign: Sign) -> Result<IntMatrix> {
    q.check_vertex(k)?;
    if q.has_loop_at(k) {
        return Err(Error::LoopAt(k));
    }
    let n = q.vertex_count();
    let mut r = IntMatrix::identity(n);
    for j in 1..=n {
        let count = match sign {
            Sign::Minus => q.arrow_count(j, k),
            Sign::Plus => q.arrow_count(k, j),
        } as i64;
        let delta = i64::from(j == k);
        r[(k - 1, j - 1)] = count - delta;
    }
    Ok(r)
}

/// Exchange-matrix mutation at `k` (1-based).
pub fn fz_mutate(b: &IntMatrix, k: Vertex) -> Result<IntMatrix> {
    if !b.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    let n = b.rows();
    if k == 0 || k > n {
        return Err(Error::VertexOutOfRange { vertex: k, n });
    }
    let k = k - 1;
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = if i == k || j == k {
                -b[(i, j)]
            } else {
                let (bik, bkj) = (b[(i, k)], b[(k, j)]);
                b[(i, j)] + (bik.abs() * bkj + bik * bkj.abs()) / 2
            };
        }
    }
    Ok(out)
}

/// Quiver mutation at `k` through the skew-symmetric matrix.
pub fn quiver_mutate(q: &Quiver, k: Vertex) -> Result<Quiver> {
    q.check_vertex(k)?;
    q.check_cluster_quiver()?;
    quiver_of_skew(&fz_mutate(&skew_of_quiver(q), k)?)
}

use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::{PathSum, PathWord, Presentation, RewriteSystem};
use crate::error::{Error, Result};
use crate::matops::{extend_independent, star, IntMatrix, Quiver, RatMatrix};
use crate::rational::Rat;
use crate::{Caps, Vertex};

/// Sparse coordinate vector: `(basis index, nonzero coefficient)`, sorted.
pub type Sparse = Vec<(usize, Rat)>;

/// A basis element living in the Peirce block `e_source B e_target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub source: Vertex,
    pub target: Vertex,
}

/// A finite-dimensional basic elementary algebra given by a basis adapted
/// to the Peirce decomposition and to the radical: the only basis elements
/// outside the radical are the primitive idempotents `e_1, ..., e_n`.
#[derive(Clone, Debug)]
pub struct BasedAlgebra {
    name: String,
    n: usize,
    basis: Vec<BasisElement>,
    idempotents: Vec<usize>,
    products: Vec<Vec<Sparse>>,
    blocks: Vec<Vec<Vec<usize>>>,
}

/// The quiver of an algebra with one radical basis element chosen per arrow.
#[derive(Clone, Debug)]
pub struct ArrowBasis {
    pub quiver: Quiver,
    /// Basis index lifting each arrow, in arrow order.
    pub lifts: Vec<usize>,
}

pub(crate) fn to_sparse(v: &[Rat]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub(crate) fn to_dense(dim: usize, s: &Sparse) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    for (i, c) in s {
        v[*i] = c.clone();
    }
    v
}

impl BasedAlgebra {
    /// Builds and validates an algebra whose basis is already radical-adapted.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        basis: Vec<BasisElement>,
        idempotents: Vec<usize>,
        products: Vec<Vec<Sparse>>,
    ) -> Result<Self> {
        let b = Self::assemble(name.into(), n, basis, idempotents, products)?;
        b.validate()?;
        Ok(b)
    }

    /// Like [`BasedAlgebra::new`], but first replaces the non-idempotent part
    /// of each diagonal block by a basis of its radical. Fails with
    /// `NonElementary` when some `e_i B e_i / rad` is not one-dimensional or
    /// when distinct idempotents are isomorphic.
    pub fn from_raw(
        name: impl Into<String>,
        n: usize,
        basis: Vec<BasisElement>,
        idempotents: Vec<usize>,
        products: Vec<Vec<Sparse>>,
    ) -> Result<Self> {
        let raw = Self::assemble(name.into(), n, basis, idempotents, products)?;
        let b = raw.rebase()?;
        b.validate()?;
        Ok(b)
    }

    fn assemble(
        name: String,
        n: usize,
        basis: Vec<BasisElement>,
        idempotents: Vec<usize>,
        products: Vec<Vec<Sparse>>,
    ) -> Result<Self> {
        let dim = basis.len();
        if idempotents.len() != n {
            return Err(Error::InvalidAlgebra(format!(
                "{} idempotents for {n} vertices",
                idempotents.len()
            )));
        }
        if products.len() != dim || products.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidAlgebra("structure constant table has wrong shape".into()));
        }
        let mut blocks = vec![vec![Vec::new(); n]; n];
        for (x, e) in basis.iter().enumerate() {
            if e.source == 0 || e.source > n || e.target == 0 || e.target > n {
                return Err(Error::InvalidAlgebra(format!(
                    "element {} has block outside 1..={n}",
                    e.label
                )));
            }
            blocks[e.source - 1][e.target - 1].push(x);
        }
        for (i, &x) in idempotents.iter().enumerate() {
            if x >= dim || basis[x].source != i + 1 || basis[x].target != i + 1 {
                return Err(Error::InvalidAlgebra(format!("idempotent e{} misplaced", i + 1)));
            }
        }
        Ok(BasedAlgebra {
            name,
            n,
            basis,
            idempotents,
            products,
            blocks,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of vertices (primitive idempotents).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// Basis index of `e_i`.
    pub fn idempotent(&self, i: Vertex) -> usize {
        self.idempotents[i - 1]
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.idempotents[self.basis[x].source - 1] == x
    }

    /// Basis indices spanning `e_i B e_j`.
    pub fn block(&self, i: Vertex, j: Vertex) -> &[usize] {
        &self.blocks[i - 1][j - 1]
    }

    pub fn block_dim(&self, i: Vertex, j: Vertex) -> usize {
        self.blocks[i - 1][j - 1].len()
    }

    /// Matrix of Peirce block dimensions, `(i, j) -> dim e_i B e_j`.
    pub fn block_dims(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.blocks[i][j].len() as i64;
            }
        }
        m
    }

    pub fn product(&self, x: usize, y: usize) -> &Sparse {
        &self.products[x][y]
    }

    /// Product of two elements given in dense coordinates.
    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (x, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (y, cb) in b.iter().enumerate() {
                if cb.is_zero() || self.basis[x].target != self.basis[y].source {
                    continue;
                }
                let c = ca * cb;
                for (z, cz) in &self.products[x][y] {
                    out[*z] += &c * cz;
                }
            }
        }
        out
    }

    /// Checks orthogonality and completeness of the idempotents, block
    /// compatibility, associativity on all basis triples, and that every
    /// non-idempotent basis element lies in the radical.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidAlgebra(m));
        let dim = self.dim();
        for x in 0..dim {
            for y in 0..dim {
                let (bx, by) = (&self.basis[x], &self.basis[y]);
                let p = &self.products[x][y];
                if bx.target != by.source {
                    if !p.is_empty() {
                        return bad(format!("{} * {} should vanish", bx.label, by.label));
                    }
                    continue;
                }
                for (z, _) in p {
                    let bz = &self.basis[*z];
                    if bz.source != bx.source || bz.target != by.target {
                        return bad(format!("{} * {} leaves its Peirce block", bx.label, by.label));
                    }
                }
            }
        }
        for x in 0..dim {
            let bx = &self.basis[x];
            let unit = vec![(x, Rat::one())];
            if self.products[self.idempotent(bx.source)][x] != unit
                || self.products[x][self.idempotent(bx.target)] != unit
            {
                return bad(format!("idempotents do not act as identity on {}", bx.label));
            }
        }
        for x in 0..dim {
            for y in 0..dim {
                if self.basis[x].target != self.basis[y].source {
                    continue;
                }
                for z in 0..dim {
                    if self.basis[y].target != self.basis[z].source {
                        continue;
                    }
                    if self.sparse_mul_left(&self.products[x][y], z) != self.sparse_mul_right(x, &self.products[y][z]) {
                        return bad(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[x].label, self.basis[y].label, self.basis[z].label
                        ));
                    }
                }
            }
        }
        let traces = self.left_traces();
        for x in 0..dim {
            if self.is_idempotent(x) {
                continue;
            }
            for y in 0..dim {
                let t: Rat = self.products[x][y].iter().map(|(z, c)| c * &traces[*z]).sum();
                if !t.is_zero() {
                    return Err(Error::NonElementary(format!(
                        "basis element {} is not in the radical",
                        self.basis[x].label
                    )));
                }
            }
        }
        Ok(())
    }

    fn sparse_mul_left(&self, a: &Sparse, z: usize) -> Sparse {
        let mut out = vec![Rat::zero(); self.dim()];
        for (y, c) in a {
            for (w, d) in &self.products[*y][z] {
                out[*w] += c * d;
            }
        }
        to_sparse(&out)
    }

    fn sparse_mul_right(&self, x: usize, b: &Sparse) -> Sparse {
        let mut out = vec![Rat::zero(); self.dim()];
        for (y, c) in b {
            for (w, d) in &self.products[x][*y] {
                out[*w] += c * d;
            }
        }
        to_sparse(&out)
    }

    /// `Tr(L_z)` for every basis element `z`.
    fn left_traces(&self) -> Vec<Rat> {
        (0..self.dim())
            .map(|z| {
                (0..self.dim())
                    .filter_map(|b| {
                        self.products[z][b]
                            .iter()
                            .find(|(w, _)| *w == b)
                            .map(|(_, c)| c.clone())
                    })
                    .sum()
            })
            .collect()
    }

    /// Jacobson radical by Dickson's criterion: the kernel of the trace form
    /// `(x, y) -> Tr(L_{xy})`. Returned as a basis in dense coordinates.
    pub fn radical(&self) -> Vec<Vec<Rat>> {
        let dim = self.dim();
        let traces = self.left_traces();
        let mut form = RatMatrix::zeros(dim, dim);
        for x in 0..dim {
            for y in 0..dim {
                form[(x, y)] = self.products[x][y].iter().map(|(z, c)| c * &traces[*z]).sum();
            }
        }
        form.kernel()
    }

    fn rebase(self) -> Result<Self> {
        let dim = self.dim();
        let rad = self.radical();
        // rad is a two-sided ideal, so it is the sum of its Peirce components
        let mut new_vectors: Vec<Vec<Rat>> = vec![Vec::new(); dim];
        let mut labels: Vec<String> = self.basis.iter().map(|b| b.label.clone()).collect();
        let mut changed = false;
        for i in 1..=self.n {
            for j in 1..=self.n {
                let idx = self.block(i, j);
                let proj: Vec<Vec<Rat>> = rad
                    .iter()
                    .map(|v| idx.iter().map(|&x| v[x].clone()).collect())
                    .collect();
                let rows = RatMatrix::from_rows_or_empty(proj, idx.len());
                let (rref, pivots) = rows.rref();
                let r = pivots.len();
                if i != j {
                    if r != idx.len() {
                        return Err(Error::NonElementary(format!(
                            "vertices {i} and {j} carry isomorphic projectives"
                        )));
                    }
                    for &x in idx {
                        new_vectors[x] = unit(dim, x);
                    }
                    continue;
                }
                if r + 1 != idx.len() {
                    return Err(Error::NonElementary(format!(
                        "e{i} B e{i} modulo its radical has dimension {}",
                        idx.len() - r
                    )));
                }
                let e = self.idempotent(i);
                let others: Vec<usize> = idx.iter().copied().filter(|&x| x != e).collect();
                let in_rad = others.iter().all(|&x| {
                    let mut m = rref.to_rows()[..r].to_vec();
                    m.push(
                        idx.iter()
                            .map(|&y| if y == x { Rat::one() } else { Rat::zero() })
                            .collect(),
                    );
                    RatMatrix::from_rows(m).rank() == r
                });
                new_vectors[e] = unit(dim, e);
                if in_rad {
                    for &x in &others {
                        new_vectors[x] = unit(dim, x);
                    }
                } else {
                    changed = true;
                    for (t, &x) in others.iter().enumerate() {
                        let mut v = vec![Rat::zero(); dim];
                        for (c, &y) in idx.iter().enumerate() {
                            v[y] = rref[(t, c)].clone();
                        }
                        new_vectors[x] = v;
                        labels[x] = format!("r{i}_{}", t + 1);
                    }
                }
            }
        }
        if !changed {
            return Ok(self);
        }
        // old coordinates = new coordinates * p
        let p = RatMatrix::from_rows(new_vectors);
        let p_inv = p.inverse().ok_or(Error::Singular)?;
        let products: Vec<Vec<Sparse>> = (0..dim)
            .map(|x| {
                (0..dim)
                    .map(|y| {
                        if self.basis[x].target != self.basis[y].source {
                            return Sparse::new();
                        }
                        let prod = self.mul(p.row(x), p.row(y));
                        to_sparse(&p_inv.left_apply(&prod))
                    })
                    .collect()
            })
            .collect();
        let basis = self
            .basis
            .iter()
            .zip(labels)
            .map(|(b, label)| BasisElement {
                label,
                source: b.source,
                target: b.target,
            })
            .collect();
        Self::assemble(self.name, self.n, basis, self.idempotents, products)
    }

    /// `B^op`: same basis with starred labels, blocks transposed, `x * y`
    /// computed as `y x` in `B`.
    pub fn opposite(&self) -> BasedAlgebra {
        let dim = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement {
                label: star(&b.label),
                source: b.target,
                target: b.source,
            })
            .collect();
        let products = (0..dim)
            .map(|x| (0..dim).map(|y| self.products[y][x].clone()).collect())
            .collect();
        Self::assemble(star(&self.name), self.n, basis, self.idempotents.clone(), products)
            .expect("opposite of a valid algebra")
    }

    /// Spanning vectors of `rad^2`, i.e. all products of two radical elements.
    fn rad_products(&self) -> Vec<Vec<Rat>> {
        let dim = self.dim();
        let mut out = Vec::new();
        for x in (0..dim).filter(|&x| !self.is_idempotent(x)) {
            for y in (0..dim).filter(|&y| !self.is_idempotent(y)) {
                if !self.products[x][y].is_empty() {
                    out.push(to_dense(dim, &self.products[x][y]));
                }
            }
        }
        out
    }

    /// Arrows `i -> j` correspond to a basis of block `(i, j)` of
    /// `rad / rad^2`; lifts are chosen among the basis elements.
    pub fn arrow_basis(&self) -> ArrowBasis {
        let dim = self.dim();
        let rad2 = self.rad_products();
        let mut quiver = Quiver::new(self.n);
        let mut lifts = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let cand: Vec<usize> = self
                    .block(i, j)
                    .iter()
                    .copied()
                    .filter(|&x| !self.is_idempotent(x))
                    .collect();
                if cand.is_empty() {
                    continue;
                }
                let base: Vec<Vec<Rat>> = rad2
                    .iter()
                    .filter(|v| cand.iter().any(|&x| !v[x].is_zero()))
                    .cloned()
                    .collect();
                let vectors: Vec<Vec<Rat>> = cand.iter().map(|&x| unit(dim, x)).collect();
                for pick in extend_independent(dim, &base, &vectors) {
                    lifts.push(cand[pick]);
                }
            }
        }
        let mut names: HashMap<String, usize> = HashMap::new();
        for &x in &lifts {
            let b = &self.basis[x];
            let label = if is_arrow_name(&b.label) && !names.contains_key(&b.label) {
                b.label.clone()
            } else {
                format!("a{}_{}_{}", b.source, b.target, names.len())
            };
            names.insert(label.clone(), x);
            quiver.add_arrow(label, b.source, b.target).expect("fresh arrow name");
        }
        ArrowBasis { quiver, lifts }
    }

    /// Block dimensions of the radical layers `rad^m / rad^{m+1}`, starting
    /// with `m = 0`; stops at the first vanishing power.
    pub fn radical_layers(&self) -> Vec<IntMatrix> {
        let dim = self.dim();
        let mut layers = vec![IntMatrix::identity(self.n)];
        let radicals: Vec<usize> = (0..dim).filter(|&x| !self.is_idempotent(x)).collect();
        let mut power: Vec<Vec<Rat>> = radicals.iter().map(|&x| unit(dim, x)).collect();
        while !power.is_empty() {
            let mut next = Vec::new();
            for v in &power {
                for &y in &radicals {
                    let p = self.mul(v, &unit(dim, y));
                    if p.iter().any(|c| !c.is_zero()) {
                        next.push(p);
                    }
                }
            }
            let next = independent(dim, next);
            let mut layer = IntMatrix::zeros(self.n, self.n);
            for i in 1..=self.n {
                for j in 1..=self.n {
                    let idx = self.block(i, j);
                    let restrict = |vs: &[Vec<Rat>]| {
                        let rows: Vec<Vec<Rat>> =
                            vs.iter().map(|v| idx.iter().map(|&x| v[x].clone()).collect()).collect();
                        RatMatrix::from_rows_or_empty(rows, idx.len()).rank()
                    };
                    layer[(i - 1, j - 1)] = (restrict(&power) - restrict(&next)) as i64;
                }
            }
            layers.push(layer);
            power = next;
        }
        layers
    }

    pub fn format_text(&self) -> String {
        let mut s = format!("algebra {} (dim {}, {} vertices)\n", self.name, self.dim(), self.n);
        for x in 0..self.dim() {
            let b = &self.basis[x];
            s.push_str(&format!("  {}: {} -> {}\n", b.label, b.source, b.target));
        }
        s
    }
}

impl fmt::Display for BasedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

fn is_arrow_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '*')
}

pub(crate) fn unit(dim: usize, x: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[x] = Rat::one();
    v
}

/// A basis of the span of `vs`, as rows of the reduced echelon form.
pub(crate) fn independent(dim: usize, vs: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    if vs.is_empty() {
        return vs;
    }
    let (rref, pivots) = RatMatrix::from_rows_or_empty(vs, dim).rref();
    rref.to_rows().into_iter().take(pivots.len()).collect()
}

/// Compiles a presentation: basis = irreducible words, products = normal
/// forms of concatenations.
pub fn compile(p: &Presentation, caps: &Caps) -> Result<BasedAlgebra> {
    let rs = RewriteSystem::complete(p, caps.len_cap, caps.size_cap)?;
    compile_system(&p.name, &rs)
}

pub fn compile_system(name: &str, rs: &RewriteSystem) -> Result<BasedAlgebra> {
    let q = rs.quiver();
    let words = rs.basis();
    let position: HashMap<&PathWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let dim = words.len();
    let mut products = vec![vec![Sparse::new(); dim]; dim];
    for (x, u) in words.iter().enumerate() {
        for (y, v) in words.iter().enumerate() {
            let Some(w) = u.concat(v) else { continue };
            let nf = rs.normal_form(&PathSum::from_word(w));
            let mut sp: Sparse = nf.terms().map(|(w, c)| (position[w], c.clone())).collect();
            sp.sort_by_key(|(i, _)| *i);
            products[x][y] = sp;
        }
    }
    let basis = words
        .iter()
        .map(|w| BasisElement {
            label: w.display(q),
            source: w.source,
            target: w.target,
        })
        .collect();
    let idempotents = (1..=q.vertex_count())
        .map(|v| position[&PathWord::trivial(v)])
        .collect();
    BasedAlgebra::new(name, q.vertex_count(), basis, idempotents, products)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::rational::rat;

    fn alg(text: &str) -> BasedAlgebra {
        compile(&parse(text).unwrap(), &Caps::default()).unwrap()
    }

    const A3: &str = "vertices 3\narrow a: 1->2\narrow b: 2->3\n";

    #[test]
    fn linear_a3_blocks() {
        let b = alg(A3);
        assert_eq!(b.dim(), 6);
        assert_eq!(b.block_dims(), IntMatrix::from_rows(&[[1, 1, 1], [0, 1, 1], [0, 0, 1]]));
        let ab = b.block(1, 3)[0];
        assert_eq!(b.basis()[ab].label, "a.b");
        assert_eq!(b.radical().len(), 3);
        let arrows = b.arrow_basis();
        assert!(arrows
            .quiver
            .same_arrows(&Quiver::from_edges(3, &[(1, 2), (2, 3)]).unwrap()));
        assert_eq!(b.radical_layers().len(), 3);
    }

    #[test]
    fn opposite_transposes_blocks() {
        let b = alg(A3);
        let op = b.opposite();
        op.validate().unwrap();
        assert_eq!(op.block_dims(), b.block_dims().transpose());
        let arrows = op.arrow_basis().quiver;
        assert!(arrows.same_arrows(&Quiver::from_edges(3, &[(2, 1), (3, 2)]).unwrap()));
        let back = op.opposite();
        assert_eq!(back.products, b.products);
    }

    #[test]
    fn semisimple() {
        let b = alg("vertices 3\n");
        assert_eq!(b.dim(), 3);
        assert!(b.radical().is_empty());
        assert_eq!(b.arrow_basis().quiver.arrows().len(), 0);
        let op = b.opposite();
        assert_eq!(op.block_dims(), b.block_dims());
    }

    #[test]
    fn rebase_moves_diagonal_to_radical() {
        // K[x]/(x^2) with basis {1, 1 + x}
        let basis = vec![
            BasisElement {
                label: "e".into(),
                source: 1,
                target: 1,
            },
            BasisElement {
                label: "y".into(),
                source: 1,
                target: 1,
            },
        ];
        let products = vec![
            vec![vec![(0, rat(1))], vec![(1, rat(1))]],
            // (1+x)^2 = 1 + 2x = 2(1+x) - 1
            vec![vec![(1, rat(1))], vec![(0, rat(-1)), (1, rat(2))]],
        ];
        let b = BasedAlgebra::from_raw("d", 1, basis, vec![0], products).unwrap();
        assert_eq!(b.basis()[1].label, "r1_1");
        assert!(b.product(1, 1).is_empty());
    }

    #[test]
    fn non_local_block_is_rejected() {
        // K x K presented over a single idempotent
        let basis = vec![
            BasisElement {
                label: "e".into(),
                source: 1,
                target: 1,
            },
            BasisElement {
                label: "f".into(),
                source: 1,
                target: 1,
            },
        ];
        let products = vec![
            vec![vec![(0, rat(1))], vec![(1, rat(1))]],
            vec![vec![(1, rat(1))], vec![(1, rat(1))]],
        ];
        assert!(matches!(
            BasedAlgebra::from_raw("kk", 1, basis, vec![0], products),
            Err(Error::NonElementary(_))
        ));
    }
}

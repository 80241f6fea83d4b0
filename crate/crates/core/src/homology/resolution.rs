use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::algebra::{to_sparse, BasedAlgebra, Sparse};
use crate::error::{Error, Result};
use crate::homology::module::{projective_sum, radical_image, simple, ModuleRep};
use crate::matops::{extend_independent, RatMatrix};
use crate::rational::Rat;
use crate::Vertex;

/// A map between sums of indecomposable projectives,
/// `P_{cols[0]} + ... -> P_{rows[0]} + ...`. Entry `(r, c)` lies in
/// `e_{rows[r]} B e_{cols[c]}`, and the generator of summand `c` is sent to
/// the column `c` (maps are left multiplications).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix {
    pub rows: Vec<Vertex>,
    pub cols: Vec<Vertex>,
    pub entries: Vec<Vec<Sparse>>,
}

/// Coordinates of the component at `l` of a projective sum: one
/// `(summand, basis index)` pair per basis vector.
pub fn projective_coords(b: &BasedAlgebra, summands: &[Vertex], l: Vertex) -> Vec<(usize, usize)> {
    summands
        .iter()
        .enumerate()
        .flat_map(|(s, &v)| b.block(v, l).iter().map(move |&y| (s, y)))
        .collect()
}

pub(crate) fn add_sparse(acc: &mut [Rat], s: &Sparse, c: &Rat) {
    for (z, v) in s {
        acc[*z] += c * v;
    }
}

pub(crate) fn sparse_mul(b: &BasedAlgebra, x: &Sparse, y: &Sparse) -> Sparse {
    let mut acc = vec![Rat::zero(); b.dim()];
    for (p, cp) in x {
        for (q, cq) in y {
            add_sparse(&mut acc, b.product(*p, *q), &(cp * cq));
        }
    }
    to_sparse(&acc)
}

impl AlgMatrix {
    pub fn zero(rows: Vec<Vertex>, cols: Vec<Vertex>) -> Self {
        let entries = vec![vec![Sparse::new(); cols.len()]; rows.len()];
        AlgMatrix { rows, cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Vec::is_empty)
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, b: &BasedAlgebra, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.cols, other.rows, "incompatible projective sums");
        let mut out = AlgMatrix::zero(self.rows.clone(), other.cols.clone());
        for r in 0..self.rows.len() {
            for c in 0..other.cols.len() {
                let mut acc = vec![Rat::zero(); b.dim()];
                for s in 0..self.cols.len() {
                    let p = sparse_mul(b, &self.entries[r][s], &other.entries[s][c]);
                    add_sparse(&mut acc, &p, &Rat::one());
                }
                out.entries[r][c] = to_sparse(&acc);
            }
        }
        out
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, b: &BasedAlgebra, other: &AlgMatrix, c: &Rat) -> AlgMatrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "incompatible projective sums"
        );
        let mut out = self.clone();
        for (r, row) in out.entries.iter_mut().enumerate() {
            for (col, e) in row.iter_mut().enumerate() {
                let mut acc = vec![Rat::zero(); b.dim()];
                add_sparse(&mut acc, e, &Rat::one());
                add_sparse(&mut acc, &other.entries[r][col], c);
                *e = to_sparse(&acc);
            }
        }
        out
    }

    /// No entry has an idempotent component.
    pub fn in_radical(&self, b: &BasedAlgebra) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.iter().all(|(x, _)| !b.is_idempotent(*x)))
    }

    /// The linear map at vertex `l`, rows indexed by the domain coordinates.
    pub fn linear_map(&self, b: &BasedAlgebra, l: Vertex) -> RatMatrix {
        let dom = projective_coords(b, &self.cols, l);
        let cod = projective_coords(b, &self.rows, l);
        let mut m = RatMatrix::zeros(dom.len(), cod.len());
        for (i, &(c, y)) in dom.iter().enumerate() {
            for r in 0..self.rows.len() {
                for (p, cp) in &self.entries[r][c] {
                    for (z, cz) in b.product(*p, y) {
                        let j = cod.iter().position(|&t| t == (r, *z)).expect("block coordinate");
                        m[(i, j)] += cp * cz;
                    }
                }
            }
        }
        m
    }

    /// Kernel of the map, per vertex, as row vectors in domain coordinates.
    pub fn kernel(&self, b: &BasedAlgebra) -> Vec<Vec<Vec<Rat>>> {
        (1..=b.n())
            .map(|l| self.linear_map(b, l).transpose().kernel())
            .collect()
    }
}

/// Projective cover `P -> M` with its kernel.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertices of the indecomposable summands of `P`.
    pub summands: Vec<Vertex>,
    /// Image in `M e_v` of the generator of each summand.
    pub generators: Vec<Vec<Rat>>,
    pub kernel: ModuleRep,
    /// Kernel basis per vertex, as row vectors in `P` coordinates.
    pub kernel_basis: Vec<Vec<Vec<Rat>>>,
}

/// Generators of `M` modulo `M rad`, per vertex in increasing order.
fn top_generators(b: &BasedAlgebra, m: &ModuleRep) -> (Vec<Vertex>, Vec<Vec<Rat>>) {
    let rad = radical_image(b, m);
    let mut summands = Vec::new();
    let mut generators = Vec::new();
    for j in 1..=b.n() {
        let d = m.dim_at(j);
        let units: Vec<Vec<Rat>> = (0..d).map(|t| crate::algebra::unit(d, t)).collect();
        for pick in extend_independent(d, &rad[j - 1], &units) {
            summands.push(j);
            generators.push(units[pick].clone());
        }
    }
    (summands, generators)
}

pub fn projective_cover(b: &BasedAlgebra, m: &ModuleRep) -> ProjectiveCover {
    let (summands, generators) = top_generators(b, m);
    let p = projective_sum(b, &summands);
    let mut kernel_basis = Vec::with_capacity(b.n());
    for l in 1..=b.n() {
        let coords = projective_coords(b, &summands, l);
        let mut pi = RatMatrix::zeros(coords.len(), m.dim_at(l));
        for (i, &(s, y)) in coords.iter().enumerate() {
            let image = m.action(y).left_apply(&generators[s]);
            for (j, v) in image.into_iter().enumerate() {
                pi[(i, j)] = v;
            }
        }
        kernel_basis.push(pi.transpose().kernel());
    }
    let kernel = p.submodule(b, &kernel_basis).expect("kernel of a module map");
    ProjectiveCover {
        summands,
        generators,
        kernel,
        kernel_basis,
    }
}

/// Minimal projective resolution `... -> P_1 -> P_0 -> M`.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// Summand vertices of `P_t`.
    pub terms: Vec<Vec<Vertex>>,
    /// `d_t : P_t -> P_{t-1}` for `t >= 1`, stored at index `t - 1`.
    pub differentials: Vec<AlgMatrix>,
    pub minimal: bool,
    pub terminated: bool,
    pub cap: usize,
}

impl Resolution {
    /// `beta^t`: multiplicity of each `P_j` in `P_t`.
    pub fn betti(&self, t: usize, n: usize) -> Vec<usize> {
        let mut v = vec![0; n];
        if let Some(term) = self.terms.get(t) {
            for &j in term {
                v[j - 1] += 1;
            }
        }
        v
    }

    /// Projective dimension when the resolution terminated.
    pub fn length(&self) -> Option<usize> {
        self.terminated.then(|| self.terms.len().saturating_sub(1))
    }

    /// `d_{t-1} d_t = 0` for all consecutive differentials.
    pub fn is_complex(&self, b: &BasedAlgebra) -> bool {
        self.differentials.windows(2).all(|w| w[0].compose(b, &w[1]).is_zero())
    }
}

/// Betti numbers can grow exponentially; past this many summands in one term
/// a resolution is abandoned as if it had hit the cap.
pub const MAX_TERM_SUMMANDS: usize = 64;

/// Iterates projective covers of kernels. Stops when a kernel vanishes, once
/// `P_cap` has been computed, or when a term exceeds [`MAX_TERM_SUMMANDS`].
pub fn minimal_resolution(b: &BasedAlgebra, m: &ModuleRep, cap: usize) -> Resolution {
    let mut current = projective_cover(b, m);
    let mut terms = vec![current.summands.clone()];
    let mut differentials = Vec::new();
    let mut terminated = current.kernel.is_zero();
    while !terminated && terms.len() <= cap && current.summands.len() <= MAX_TERM_SUMMANDS {
        let next = projective_cover(b, &current.kernel);
        let prev = terms.last().expect("nonempty").clone();
        let mut d = AlgMatrix::zero(prev.clone(), next.summands.clone());
        for (c, (&v, g)) in next.summands.iter().zip(&next.generators).enumerate() {
            // generator in kernel coordinates -> P_{t-1} coordinates
            let basis = &current.kernel_basis[v - 1];
            let mut in_p = vec![Rat::zero(); basis.first().map_or(0, Vec::len)];
            for (coef, row) in g.iter().zip(basis) {
                if coef.is_zero() {
                    continue;
                }
                for (a, r) in in_p.iter_mut().zip(row) {
                    *a += coef * r;
                }
            }
            let coords = projective_coords(b, &prev, v);
            let mut entries = vec![vec![Rat::zero(); b.dim()]; prev.len()];
            for ((s, y), val) in coords.into_iter().zip(in_p) {
                entries[s][y] = val;
            }
            for (r, e) in entries.into_iter().enumerate() {
                d.entries[r][c] = to_sparse(&e);
            }
        }
        terms.push(next.summands.clone());
        differentials.push(d);
        terminated = next.kernel.is_zero();
        current = next;
    }
    let minimal = differentials.iter().all(|d| d.in_radical(b));
    Resolution {
        terms,
        differentials,
        minimal,
        terminated,
        cap,
    }
}

/// `dim Ext^d(S_i, S_j)`, read off as the multiplicity of `P_j` in the `d`-th
/// term of the minimal resolution of `S_i`.
pub fn ext_dim(b: &BasedAlgebra, i: Vertex, j: Vertex, d: usize, cap: usize) -> Result<usize> {
    for v in [i, j] {
        if v == 0 || v > b.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: b.n() });
        }
    }
    let res = minimal_resolution(b, &simple(b, i), cap.max(d));
    if !res.terminated && res.terms.len() <= d {
        return Err(Error::ResolutionCap { cap });
    }
    Ok(res.betti(d, b.n())[j - 1])
}

/// `dim Ext^t(M, N)` for `t = 0..=max_degree`, from `Hom(P_., N)`.
pub fn ext_dims(b: &BasedAlgebra, m: &ModuleRep, n: &ModuleRep, max_degree: usize, cap: usize) -> Result<Vec<usize>> {
    let res = minimal_resolution(b, m, cap.max(max_degree + 1));
    if !res.terminated && res.terms.len() <= max_degree + 1 {
        return Err(Error::ResolutionCap { cap });
    }
    let hom_dim = |t: usize| -> usize {
        res.terms
            .get(t)
            .map_or(0, |term| term.iter().map(|&v| n.dim_at(v)).sum())
    };
    // coboundary Hom(P_t, N) -> Hom(P_{t+1}, N), phi -> phi . d_{t+1}
    let delta_rank = |t: usize| -> usize {
        let Some(d) = res.differentials.get(t) else {
            return 0;
        };
        let rows: Vec<(usize, usize)> = d
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, &v)| (0..n.dim_at(v)).map(move |k| (r, k)))
            .collect();
        let col_offsets: Vec<usize> = d
            .cols
            .iter()
            .scan(0, |acc, &v| {
                let o = *acc;
                *acc += n.dim_at(v);
                Some(o)
            })
            .collect();
        let mut mat = RatMatrix::zeros(rows.len(), hom_dim(t + 1));
        for (i, &(r, k)) in rows.iter().enumerate() {
            let phi = crate::algebra::unit(n.dim_at(d.rows[r]), k);
            for (c, &v) in d.cols.iter().enumerate() {
                let image = n.act_element(b, &phi, &d.entries[r][c], v);
                for (q, val) in image.into_iter().enumerate() {
                    mat[(i, col_offsets[c] + q)] = val;
                }
            }
        }
        mat.rank()
    };
    let mut out = Vec::with_capacity(max_degree + 1);
    let mut prev_rank = 0;
    for t in 0..=max_degree {
        let r = delta_rank(t);
        out.push(hom_dim(t) - r - prev_rank);
        prev_rank = r;
    }
    Ok(out)
}

/// Global dimension, or the cap when some simple needs a longer resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GlobalDimension {
    Finite(usize),
    /// Some simple has projective dimension greater than this cap.
    Exceeds(usize),
}

impl GlobalDimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            GlobalDimension::Finite(d) => Some(d),
            GlobalDimension::Exceeds(_) => None,
        }
    }
}

impl fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlobalDimension::Finite(d) => write!(f, "{d}"),
            GlobalDimension::Exceeds(c) => write!(f, "> {c}"),
        }
    }
}

pub fn simple_resolutions(b: &BasedAlgebra, cap: usize) -> Vec<Resolution> {
    use rayon::prelude::*;
    (1..=b.n())
        .into_par_iter()
        .map(|i| minimal_resolution(b, &simple(b, i), cap))
        .collect()
}

pub fn global_dimension(b: &BasedAlgebra, cap: usize) -> GlobalDimension {
    let mut best = 0;
    for r in simple_resolutions(b, cap) {
        match r.length() {
            Some(l) => best = best.max(l),
            None => return GlobalDimension::Exceeds(cap),
        }
    }
    GlobalDimension::Finite(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compile, parse};
    use crate::homology::module::{dual_algebra, projective};
    use crate::Caps;

    fn alg(text: &str) -> BasedAlgebra {
        compile(&parse(text).unwrap(), &Caps::default()).unwrap()
    }

    const A3: &str = "vertices 3\narrow a: 1->2\narrow b: 2->3\n";
    const A_MINUS: &str = "vertices 4\narrow a: 1->2\narrow b: 1->3\narrow c: 4->1\n\
                           relation c.a\nrelation c.b\n";

    #[test]
    fn covers_of_simples() {
        let b = alg(A3);
        let c = projective_cover(&b, &simple(&b, 3));
        assert_eq!(c.summands, [3]);
        assert!(c.kernel.is_zero());
        let c = projective_cover(&b, &simple(&b, 1));
        assert_eq!(c.summands, [1]);
        assert_eq!(c.kernel.dims(), [0, 1, 1]);
        let c = projective_cover(&b, &projective(&b, 2));
        assert_eq!(c.summands, [2]);
        assert!(c.kernel.is_zero());
    }

    #[test]
    fn resolution_of_s4_over_a_minus() {
        let b = alg(A_MINUS);
        let r = minimal_resolution(&b, &simple(&b, 4), 32);
        assert_eq!(r.terms, vec![vec![4], vec![1], vec![2, 3]]);
        assert!(r.terminated && r.minimal && r.is_complex(&b));
        assert_eq!(ext_dim(&b, 4, 2, 2, 32).unwrap(), 1);
        assert_eq!(ext_dim(&b, 4, 3, 2, 32).unwrap(), 1);
        assert_eq!(global_dimension(&b, 32), GlobalDimension::Finite(2));
    }

    #[test]
    fn hereditary_and_semisimple() {
        assert_eq!(global_dimension(&alg(A3), 32), GlobalDimension::Finite(1));
        assert_eq!(global_dimension(&alg("vertices 2\n"), 32), GlobalDimension::Finite(0));
        let b = alg(A3);
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(
                    ext_dim(&b, i, j, 1, 32).unwrap(),
                    b.arrow_basis().quiver.arrow_count(i, j)
                );
                assert_eq!(ext_dim(&b, i, j, 2, 32).unwrap(), 0);
            }
        }
    }

    #[test]
    fn self_injective_dual_is_projective() {
        // cyclic zero-relation algebra with rad^2 = 0 is not self-injective,
        // but K[x]/(x^2) is
        let b = alg("vertices 1\narrow x: 1->1\nrelation x.x\n");
        let r = minimal_resolution(&b, &dual_algebra(&b), 32);
        assert_eq!(r.length(), Some(0));
        assert_eq!(global_dimension(&b, 5), GlobalDimension::Exceeds(5));
    }

    #[test]
    fn ext_of_modules() {
        let b = alg(A3);
        let (s1, s2) = (simple(&b, 1), simple(&b, 2));
        assert_eq!(ext_dims(&b, &s1, &s2, 2, 32).unwrap(), vec![0, 1, 0]);
        assert_eq!(ext_dims(&b, &s1, &s1, 1, 32).unwrap(), vec![1, 0]);
        let p1 = projective(&b, 1);
        assert_eq!(ext_dims(&b, &p1, &s1, 1, 32).unwrap(), vec![1, 0]);
    }
}

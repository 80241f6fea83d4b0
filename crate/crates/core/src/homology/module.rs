use num::{One, Zero};

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::matops::{ColumnSolver, RatMatrix};
use crate::rational::Rat;
use crate::Vertex;

/// A finite-dimensional right module. Elements of `M e_i` are row vectors of
/// length `dims[i-1]`; a basis element `x` of block `(i, j)` acts by
/// `v -> v * action(x)`, a `dims[i-1] x dims[j-1]` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    dims: Vec<usize>,
    actions: Vec<RatMatrix>,
}

/// Per-vertex linear maps `M e_i -> N e_i` in the row-vector convention.
pub type ModuleMap = Vec<RatMatrix>;

impl ModuleRep {
    pub fn new(b: &BasedAlgebra, dims: Vec<usize>, actions: Vec<RatMatrix>) -> Result<Self> {
        let m = ModuleRep { dims, actions };
        m.validate(b)?;
        Ok(m)
    }

    pub fn zero(b: &BasedAlgebra) -> Self {
        let actions = b.basis().iter().map(|_| RatMatrix::zeros(0, 0)).collect();
        ModuleRep {
            dims: vec![0; b.n()],
            actions,
        }
    }

    /// `dim M e_i` for `i = 1..=n`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, i: Vertex) -> usize {
        self.dims[i - 1]
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self, x: usize) -> &RatMatrix {
        &self.actions[x]
    }

    /// `v * y` for an element `y` of block `(i, j)` given in sparse form and
    /// `v` in `M e_i`.
    pub fn act_element(&self, b: &BasedAlgebra, v: &[Rat], y: &[(usize, Rat)], j: Vertex) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim_at(j)];
        for (x, c) in y {
            debug_assert_eq!(b.basis()[*x].target, j);
            for (o, w) in out.iter_mut().zip(self.actions[*x].left_apply(v)) {
                *o += c * w;
            }
        }
        out
    }

    /// Checks shapes, that idempotents act as the identity on their own
    /// component, and `A_x A_y = sum_z c_xy^z A_z` on composable pairs.
    pub fn validate(&self, b: &BasedAlgebra) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidModule(m));
        if self.dims.len() != b.n() || self.actions.len() != b.dim() {
            return bad("module does not match the algebra".into());
        }
        for (x, e) in b.basis().iter().enumerate() {
            let a = &self.actions[x];
            if a.rows() != self.dim_at(e.source) || a.cols() != self.dim_at(e.target) {
                return bad(format!("action of {} has the wrong shape", e.label));
            }
            if b.is_idempotent(x) && *a != RatMatrix::identity(self.dim_at(e.source)) {
                return bad(format!("{} does not act as the identity", e.label));
            }
        }
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                let (bx, by) = (&b.basis()[x], &b.basis()[y]);
                if bx.target != by.source || b.is_idempotent(x) || b.is_idempotent(y) {
                    continue;
                }
                let lhs = &self.actions[x] * &self.actions[y];
                let mut rhs = RatMatrix::zeros(lhs.rows(), lhs.cols());
                for (z, c) in b.product(x, y) {
                    let az = &self.actions[*z];
                    for r in 0..rhs.rows() {
                        for s in 0..rhs.cols() {
                            rhs[(r, s)] += c * &az[(r, s)];
                        }
                    }
                }
                if lhs != rhs {
                    return bad(format!("action is not compatible with {} * {}", bx.label, by.label));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(b: &BasedAlgebra, parts: &[&ModuleRep]) -> ModuleRep {
        let n = b.n();
        let dims: Vec<usize> = (0..n).map(|i| parts.iter().map(|m| m.dims[i]).sum()).collect();
        let actions = b
            .basis()
            .iter()
            .enumerate()
            .map(|(x, e)| {
                let mut a = RatMatrix::zeros(dims[e.source - 1], dims[e.target - 1]);
                let (mut r0, mut c0) = (0, 0);
                for m in parts {
                    let ax = &m.actions[x];
                    for r in 0..ax.rows() {
                        for c in 0..ax.cols() {
                            a[(r0 + r, c0 + c)] = ax[(r, c)].clone();
                        }
                    }
                    r0 += ax.rows();
                    c0 += ax.cols();
                }
                a
            })
            .collect();
        ModuleRep { dims, actions }
    }

    /// The submodule spanned per vertex by the given (independent) row
    /// vectors; fails if the spaces are not closed under the action.
    pub fn submodule(&self, b: &BasedAlgebra, basis: &[Vec<Vec<Rat>>]) -> Result<ModuleRep> {
        let solvers: Vec<Option<ColumnSolver>> = basis
            .iter()
            .enumerate()
            .map(|(i, vs)| ColumnSolver::new(self.dims[i], vs))
            .collect();
        let mut actions = Vec::with_capacity(b.dim());
        for (x, e) in b.basis().iter().enumerate() {
            let (from, to) = (&basis[e.source - 1], &basis[e.target - 1]);
            let mut a = RatMatrix::zeros(from.len(), to.len());
            for (r, v) in from.iter().enumerate() {
                let image = self.actions[x].left_apply(v);
                if to.is_empty() {
                    if image.iter().any(|c| !c.is_zero()) {
                        return Err(Error::InvalidModule("subspace is not a submodule".into()));
                    }
                    continue;
                }
                let solver = solvers[e.target - 1]
                    .as_ref()
                    .ok_or_else(|| Error::InvalidModule("dependent submodule basis".into()))?;
                let coeffs = solver
                    .solve(&image)
                    .ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?;
                for (c, val) in coeffs.into_iter().enumerate() {
                    a[(r, c)] = val;
                }
            }
            actions.push(a);
        }
        Ok(ModuleRep {
            dims: basis.iter().map(Vec::len).collect(),
            actions,
        })
    }

    /// `M / U` for a submodule given by spanning vectors per vertex, together
    /// with the projection `M -> M / U`.
    pub fn quotient(&self, b: &BasedAlgebra, span: &[Vec<Vec<Rat>>]) -> (ModuleRep, ModuleMap) {
        let (projections, free): (Vec<RatMatrix>, Vec<Vec<usize>>) = span
            .iter()
            .enumerate()
            .map(|(i, vs)| quotient_projection(self.dims[i], vs))
            .unzip();
        let actions = b
            .basis()
            .iter()
            .enumerate()
            .map(|(x, e)| {
                // lift quotient basis vectors to unit vectors on free coordinates
                let (fi, pj) = (&free[e.source - 1], &projections[e.target - 1]);
                let mut lifts = RatMatrix::zeros(fi.len(), self.dims[e.source - 1]);
                for (q, &f) in fi.iter().enumerate() {
                    lifts[(q, f)] = Rat::one();
                }
                &(&lifts * &self.actions[x]) * pj
            })
            .collect();
        let dims = projections.iter().map(RatMatrix::cols).collect();
        (ModuleRep { dims, actions }, projections)
    }

    /// Basis of `Hom_B(self, other)` as per-vertex matrices.
    pub fn hom_basis(&self, b: &BasedAlgebra, other: &ModuleRep) -> Vec<ModuleMap> {
        let n = b.n();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for i in 0..n {
            offsets.push(offsets[i] + self.dims[i] * other.dims[i]);
        }
        let unknowns = offsets[n];
        if unknowns == 0 {
            return Vec::new();
        }
        // equations A^M_x F_j - F_i A^N_x = 0 for radical x
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (x, e) in b.basis().iter().enumerate() {
            if b.is_idempotent(x) {
                continue;
            }
            let (i, j) = (e.source - 1, e.target - 1);
            let (am, an) = (&self.actions[x], &other.actions[x]);
            for r in 0..self.dims[i] {
                for c in 0..other.dims[j] {
                    let mut eq = vec![Rat::zero(); unknowns];
                    for s in 0..self.dims[j] {
                        if !am[(r, s)].is_zero() {
                            eq[offsets[j] + s * other.dims[j] + c] += &am[(r, s)];
                        }
                    }
                    for s in 0..other.dims[i] {
                        if !an[(s, c)].is_zero() {
                            eq[offsets[i] + r * other.dims[i] + s] -= &an[(s, c)];
                        }
                    }
                    if eq.iter().any(|v| !v.is_zero()) {
                        rows.push(eq);
                    }
                }
            }
        }
        let system = RatMatrix::from_rows_or_empty(rows, unknowns);
        system
            .kernel()
            .into_iter()
            .map(|u| {
                (0..n)
                    .map(|i| {
                        let mut f = RatMatrix::zeros(self.dims[i], other.dims[i]);
                        for r in 0..self.dims[i] {
                            for c in 0..other.dims[i] {
                                f[(r, c)] = u[offsets[i] + r * other.dims[i] + c].clone();
                            }
                        }
                        f
                    })
                    .collect()
            })
            .collect()
    }
}

/// Projection `K^d -> K^d / span(vs)` onto the non-pivot coordinates of the
/// reduced echelon form of `vs`.
fn quotient_projection(d: usize, vs: &[Vec<Rat>]) -> (RatMatrix, Vec<usize>) {
    let (rref, pivots) = RatMatrix::from_rows_or_empty(vs.to_vec(), d).rref();
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let mut p = RatMatrix::zeros(d, free.len());
    for (q, &f) in free.iter().enumerate() {
        p[(f, q)] = Rat::one();
    }
    // a pivot coordinate equals minus the free part of its echelon row
    for (r, &pc) in pivots.iter().enumerate() {
        for (q, &f) in free.iter().enumerate() {
            p[(pc, q)] = -rref[(r, f)].clone();
        }
    }
    (p, free)
}

/// Indecomposable projective `P_i = e_i B`.
pub fn projective(b: &BasedAlgebra, i: Vertex) -> ModuleRep {
    projective_sum(b, &[i])
}

/// `P_{v_1} + ... + P_{v_r}`; component `l` has coordinates `(summand, y)`
/// for `y` in block `(v_s, l)`, summands in order.
pub fn projective_sum(b: &BasedAlgebra, summands: &[Vertex]) -> ModuleRep {
    let parts: Vec<ModuleRep> = summands.iter().map(|&v| single_projective(b, v)).collect();
    let refs: Vec<&ModuleRep> = parts.iter().collect();
    ModuleRep::direct_sum(b, &refs)
}

fn single_projective(b: &BasedAlgebra, i: Vertex) -> ModuleRep {
    let n = b.n();
    let dims = (1..=n).map(|j| b.block_dim(i, j)).collect();
    let actions = b
        .basis()
        .iter()
        .enumerate()
        .map(|(x, e)| {
            let (from, to) = (b.block(i, e.source), b.block(i, e.target));
            let mut a = RatMatrix::zeros(from.len(), to.len());
            for (r, &y) in from.iter().enumerate() {
                for (z, c) in b.product(y, x) {
                    let col = to.iter().position(|t| t == z).expect("product in block");
                    a[(r, col)] = c.clone();
                }
            }
            a
        })
        .collect();
    ModuleRep { dims, actions }
}

/// Indecomposable injective `I_i = D(B e_i)`: the component at `j` is dual
/// to block `(j, i)`, and `x` of block `(j, l)` acts by
/// `(phi x)(y) = phi(x y)`.
pub fn injective(b: &BasedAlgebra, i: Vertex) -> ModuleRep {
    let n = b.n();
    let dims = (1..=n).map(|j| b.block_dim(j, i)).collect();
    let actions = b
        .basis()
        .iter()
        .enumerate()
        .map(|(x, e)| {
            let (from, to) = (b.block(e.source, i), b.block(e.target, i));
            let mut a = RatMatrix::zeros(from.len(), to.len());
            for (c, &y) in to.iter().enumerate() {
                for (z, coeff) in b.product(x, y) {
                    let r = from.iter().position(|t| t == z).expect("product in block");
                    a[(r, c)] = coeff.clone();
                }
            }
            a
        })
        .collect();
    ModuleRep { dims, actions }
}

pub fn simple(b: &BasedAlgebra, i: Vertex) -> ModuleRep {
    let n = b.n();
    let dims: Vec<usize> = (1..=n).map(|j| usize::from(j == i)).collect();
    let actions = b
        .basis()
        .iter()
        .enumerate()
        .map(|(x, e)| {
            if x == b.idempotent(i) {
                RatMatrix::identity(1)
            } else {
                RatMatrix::zeros(dims[e.source - 1], dims[e.target - 1])
            }
        })
        .collect();
    ModuleRep { dims, actions }
}

/// `(P_i, I_i, S_i)`.
pub fn standard_modules(b: &BasedAlgebra, i: Vertex) -> Result<(ModuleRep, ModuleRep, ModuleRep)> {
    if i == 0 || i > b.n() {
        return Err(Error::VertexOutOfRange { vertex: i, n: b.n() });
    }
    Ok((projective(b, i), injective(b, i), simple(b, i)))
}

/// `DB = I_1 + ... + I_n`.
pub fn dual_algebra(b: &BasedAlgebra) -> ModuleRep {
    let parts: Vec<ModuleRep> = (1..=b.n()).map(|i| injective(b, i)).collect();
    let refs: Vec<&ModuleRep> = parts.iter().collect();
    ModuleRep::direct_sum(b, &refs)
}

/// `M * rad` at every vertex, as spanning row vectors.
pub fn radical_image(b: &BasedAlgebra, m: &ModuleRep) -> Vec<Vec<Vec<Rat>>> {
    let mut out = vec![Vec::new(); b.n()];
    for (x, e) in b.basis().iter().enumerate() {
        if b.is_idempotent(x) {
            continue;
        }
        let a = m.action(x);
        for r in 0..a.rows() {
            let row = a.row(r);
            if row.iter().any(|c| !c.is_zero()) {
                out[e.target - 1].push(row.to_vec());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compile, parse};
    use crate::Caps;

    fn a3() -> BasedAlgebra {
        compile(
            &parse("vertices 3\narrow a: 1->2\narrow b: 2->3\n").unwrap(),
            &Caps::default(),
        )
        .unwrap()
    }

    #[test]
    fn standard_dimension_vectors() {
        let b = a3();
        let (p1, i1, s1) = standard_modules(&b, 1).unwrap();
        assert_eq!(p1.dims(), [1, 1, 1]);
        assert_eq!(i1.dims(), [1, 0, 0]);
        assert_eq!(s1.dims(), [1, 0, 0]);
        let (p3, i3, _) = standard_modules(&b, 3).unwrap();
        assert_eq!(p3.dims(), [0, 0, 1]);
        assert_eq!(i3.dims(), [1, 1, 1]);
        for m in [&p1, &i1, &s1, &p3, &i3] {
            m.validate(&b).unwrap();
        }
        dual_algebra(&b).validate(&b).unwrap();
        assert!(standard_modules(&b, 4).is_err());
    }

    #[test]
    fn hom_dimensions_match_blocks() {
        let b = a3();
        for i in 1..=3 {
            for j in 1..=3 {
                let h = projective(&b, i).hom_basis(&b, &projective(&b, j));
                assert_eq!(h.len(), b.block_dim(j, i), "Hom(P{i}, P{j})");
            }
        }
    }

    #[test]
    fn quotient_and_submodule() {
        let b = a3();
        let p1 = projective(&b, 1);
        let rad = radical_image(&b, &p1);
        let (top, proj) = p1.quotient(&b, &rad);
        top.validate(&b).unwrap();
        assert_eq!(top.dims(), [1, 0, 0]);
        assert_eq!(proj[0].cols(), 1);
        let basis: Vec<Vec<Vec<Rat>>> = rad
            .iter()
            .enumerate()
            .map(|(i, vs)| crate::algebra::independent(p1.dims()[i], vs.clone()))
            .collect();
        let sub = p1.submodule(&b, &basis).unwrap();
        sub.validate(&b).unwrap();
        assert_eq!(sub.dims(), [0, 1, 1]);
    }
}

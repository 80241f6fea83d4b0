//! Bounded complexes of projectives and morphisms between them in the
//! homotopy category.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::algebra::{to_sparse, BasedAlgebra};
use crate::homology::AlgMatrix;
use crate::matops::{extend_independent, ColumnSolver};
use crate::rational::Rat;
use crate::Vertex;

/// `X^low -> X^{low+1} -> ...`, each term a sum of indecomposable
/// projectives; `diffs[t]` maps the term in degree `low + t` to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    pub low: i32,
    pub terms: Vec<Vec<Vertex>>,
    pub diffs: Vec<AlgMatrix>,
}

/// The two-term complexes used for mutation have exactly this shape.
pub type TwoTermComplex = ProjComplex;

impl ProjComplex {
    /// `P_i` concentrated in degree `degree`.
    pub fn stalk(i: Vertex, degree: i32) -> Self {
        ProjComplex {
            low: degree,
            terms: vec![vec![i]],
            diffs: Vec::new(),
        }
    }

    /// `P_from -> P_to` in degrees `low, low + 1`.
    pub fn two_term(low: i32, d: AlgMatrix) -> Self {
        ProjComplex {
            low,
            terms: vec![d.cols.clone(), d.rows.clone()],
            diffs: vec![d],
        }
    }

    pub fn high(&self) -> i32 {
        self.low + self.terms.len() as i32 - 1
    }

    pub fn term(&self, p: i32) -> &[Vertex] {
        if p < self.low || p > self.high() {
            return &[];
        }
        &self.terms[(p - self.low) as usize]
    }

    /// Differential out of degree `p` (zero outside the stored range).
    pub fn diff(&self, p: i32) -> AlgMatrix {
        if p >= self.low && p < self.high() {
            self.diffs[(p - self.low) as usize].clone()
        } else {
            AlgMatrix::zero(self.term(p + 1).to_vec(), self.term(p).to_vec())
        }
    }

    pub fn is_complex(&self, b: &BasedAlgebra) -> bool {
        self.diffs.windows(2).all(|w| w[1].compose(b, &w[0]).is_zero())
    }
}

/// Degree-wise maps `X^p -> Y^{p+shift}`, keyed by `p`. Missing degrees are
/// zero.
pub type GradedMap = BTreeMap<i32, AlgMatrix>;

pub type ChainMap = GradedMap;

fn component(m: &GradedMap, p: i32, rows: &[Vertex], cols: &[Vertex]) -> AlgMatrix {
    m.get(&p)
        .cloned()
        .unwrap_or_else(|| AlgMatrix::zero(rows.to_vec(), cols.to_vec()))
}

/// Coordinates of graded maps `X^p -> Y^{p+shift}`: one per
/// `(p, row, column, basis element of the block)`.
#[derive(Clone, Debug)]
struct Layout {
    shift: i32,
    entries: Vec<(i32, usize, usize, usize)>,
    index: HashMap<(i32, usize, usize, usize), usize>,
}

impl Layout {
    fn new(b: &BasedAlgebra, x: &ProjComplex, y: &ProjComplex, shift: i32) -> Self {
        let mut entries = Vec::new();
        for p in x.low..=x.high() {
            let (xs, ys) = (x.term(p), y.term(p + shift));
            for (r, &vr) in ys.iter().enumerate() {
                for (c, &vc) in xs.iter().enumerate() {
                    for &e in b.block(vr, vc) {
                        entries.push((p, r, c, e));
                    }
                }
            }
        }
        let index = entries.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Layout { shift, entries, index }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    fn flatten(&self, m: &GradedMap) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.len()];
        for (&p, a) in m {
            for (r, row) in a.entries.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    for (e, val) in entry {
                        let i = self.index[&(p, r, c, *e)];
                        v[i] = val.clone();
                    }
                }
            }
        }
        v
    }

    fn unflatten(&self, b: &BasedAlgebra, x: &ProjComplex, y: &ProjComplex, v: &[Rat]) -> GradedMap {
        let mut dense: BTreeMap<i32, Vec<Vec<Vec<Rat>>>> = BTreeMap::new();
        for (i, &(p, r, c, e)) in self.entries.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            let (rows, cols) = (y.term(p + self.shift).len(), x.term(p).len());
            let m = dense
                .entry(p)
                .or_insert_with(|| vec![vec![vec![Rat::zero(); b.dim()]; cols]; rows]);
            m[r][c][e] = v[i].clone();
        }
        dense
            .into_iter()
            .map(|(p, m)| {
                let a = AlgMatrix {
                    rows: y.term(p + self.shift).to_vec(),
                    cols: x.term(p).to_vec(),
                    entries: m
                        .into_iter()
                        .map(|row| row.into_iter().map(|e| to_sparse(&e)).collect())
                        .collect(),
                };
                (p, a)
            })
            .collect()
    }
}

/// `psi . phi` for chain maps `phi : X -> Y`, `psi : Y -> Z`.
pub fn compose_maps(
    b: &BasedAlgebra,
    psi: &GradedMap,
    phi: &GradedMap,
    x: &ProjComplex,
    y: &ProjComplex,
    z: &ProjComplex,
) -> GradedMap {
    let mut out = GradedMap::new();
    for p in x.low..=x.high() {
        let (xs, ys, zs) = (x.term(p), y.term(p), z.term(p));
        if xs.is_empty() || zs.is_empty() || ys.is_empty() {
            continue;
        }
        let c = component(psi, p, zs, ys).compose(b, &component(phi, p, ys, xs));
        if !c.is_zero() {
            out.insert(p, c);
        }
    }
    out
}

/// Chain maps `X -> Y` modulo null-homotopic ones.
#[derive(Clone, Debug)]
pub struct HomotopyHomSpace {
    pub source: ProjComplex,
    pub target: ProjComplex,
    /// Representatives of a basis of the quotient.
    pub basis: Vec<ChainMap>,
    layout: Layout,
    /// Columns: basis representatives, then a basis of the null-homotopic maps.
    solver: Option<ColumnSolver>,
}

impl HomotopyHomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the class of a chain map in `basis`.
    pub fn coordinates(&self, phi: &ChainMap) -> Option<Vec<Rat>> {
        let v = self.layout.flatten(phi);
        match &self.solver {
            None => v.iter().all(Zero::is_zero).then(Vec::new),
            Some(s) => s.solve(&v).map(|c| c[..self.basis.len()].to_vec()),
        }
    }

    /// True iff the chain map is null-homotopic.
    pub fn is_null(&self, phi: &ChainMap) -> bool {
        self.coordinates(phi).is_some_and(|c| c.iter().all(Zero::is_zero))
    }
}

/// Solves `d_Y phi = phi d_X` and divides out `d_Y h + h d_X`. When
/// `preferred` is given and survives in the quotient, it becomes the first
/// basis element (used to put identities first).
pub fn hom_homotopy(b: &BasedAlgebra, x: &ProjComplex, y: &ProjComplex) -> HomotopyHomSpace {
    hom_homotopy_with(b, x, y, None)
}

pub(crate) fn hom_homotopy_with(
    b: &BasedAlgebra,
    x: &ProjComplex,
    y: &ProjComplex,
    preferred: Option<&ChainMap>,
) -> HomotopyHomSpace {
    let maps = Layout::new(b, x, y, 0);
    let eqs = Layout::new(b, x, y, 1);
    let homs = Layout::new(b, x, y, -1);
    let lo = x.low.min(y.low) - 1;
    let hi = x.high().max(y.high()) + 1;

    // chain condition, evaluated on every coordinate map
    let mut columns = Vec::with_capacity(maps.len());
    for i in 0..maps.len() {
        let phi = maps.unflatten(b, x, y, &crate::algebra::unit(maps.len(), i));
        let mut eq = GradedMap::new();
        for p in lo..=hi {
            let (xs, ys, ys1, xs1) = (x.term(p), y.term(p), y.term(p + 1), x.term(p + 1));
            if xs.is_empty() || ys1.is_empty() {
                continue;
            }
            let left = y.diff(p).compose(b, &component(&phi, p, ys, xs));
            let right = component(&phi, p + 1, ys1, xs1).compose(b, &x.diff(p));
            let diff = left.add_scaled(b, &right, &-Rat::one());
            if !diff.is_zero() {
                eq.insert(p, diff);
            }
        }
        columns.push(eqs.flatten(&eq));
    }
    // kernel of the chain condition: rows of `columns` are images of unit maps
    let cycles: Vec<Vec<Rat>> = if maps.len() == 0 {
        Vec::new()
    } else if eqs.len() == 0 {
        (0..maps.len()).map(|i| crate::algebra::unit(maps.len(), i)).collect()
    } else {
        crate::matops::RatMatrix::from_columns(eqs.len(), &columns).kernel()
    };

    // null-homotopic maps d_Y h + h d_X
    let mut boundaries = Vec::with_capacity(homs.len());
    for i in 0..homs.len() {
        let h = homs.unflatten(b, x, y, &crate::algebra::unit(homs.len(), i));
        let mut phi = GradedMap::new();
        for p in lo..=hi {
            let (xs, ys) = (x.term(p), y.term(p));
            if xs.is_empty() || ys.is_empty() {
                continue;
            }
            // h^p : X^p -> Y^{p-1}
            let a = y.diff(p - 1).compose(b, &component(&h, p, y.term(p - 1), xs));
            let c = component(&h, p + 1, ys, x.term(p + 1)).compose(b, &x.diff(p));
            let sum = a.add_scaled(b, &c, &Rat::one());
            if !sum.is_zero() {
                phi.insert(p, sum);
            }
        }
        boundaries.push(maps.flatten(&phi));
    }
    let boundary_basis: Vec<Vec<Rat>> = {
        let picks = extend_independent(maps.len(), &[], &boundaries);
        picks.into_iter().map(|i| boundaries[i].clone()).collect()
    };

    let mut candidates = Vec::new();
    if let Some(p) = preferred {
        candidates.push(maps.flatten(p));
    }
    candidates.extend(cycles);
    let picks = extend_independent(maps.len(), &boundary_basis, &candidates);
    let reps: Vec<Vec<Rat>> = picks.iter().map(|&i| candidates[i].clone()).collect();
    let basis = reps.iter().map(|v| maps.unflatten(b, x, y, v)).collect();
    let mut cols = reps;
    cols.extend(boundary_basis);
    let solver = if cols.is_empty() {
        None
    } else {
        ColumnSolver::new(maps.len(), &cols)
    };
    HomotopyHomSpace {
        source: x.clone(),
        target: y.clone(),
        basis,
        layout: maps,
        solver,
    }
}

/// Identity chain map of `x`.
pub fn identity_map(b: &BasedAlgebra, x: &ProjComplex) -> ChainMap {
    let mut out = ChainMap::new();
    for p in x.low..=x.high() {
        let t = x.term(p);
        let mut a = AlgMatrix::zero(t.to_vec(), t.to_vec());
        for (i, &v) in t.iter().enumerate() {
            a.entries[i][i] = vec![(b.idempotent(v), Rat::one())];
        }
        out.insert(p, a);
    }
    out
}

//! Endomorphism algebras of tilting objects, assembled from Hom spaces
//! between their indecomposable summands.

use crate::algebra::{to_sparse, BasedAlgebra, BasisElement};
use crate::error::{Error, Result};
use crate::homology::{cartan, ModuleMap, ModuleRep};
use crate::matops::{reflection, ColumnSolver, IntMatrix, RatMatrix, Sign};
use crate::mutation::complex::{
    compose_maps, hom_homotopy_with, identity_map, ChainMap, HomotopyHomSpace, ProjComplex,
};
use crate::mutation::tilting::{approximation, tilting_status};
use crate::rational::Rat;
use crate::Vertex;

/// Builds `End(T_1 + ... + T_n)` where `homs[i][j]` is a basis of
/// `Hom(T_j, T_i)` (identity first on the diagonal), `compose(x, y)` is
/// `x . y`, and `coords(i, l, h)` expands `h` in the basis `homs[i][l]`.
/// Block `(i, j)` of the result is `Hom(T_j, T_i)`.
fn assemble<M>(
    name: &str,
    homs: &[Vec<Vec<M>>],
    compose: impl Fn(&M, &M) -> M,
    coords: impl Fn(usize, usize, &M) -> Vec<Rat>,
) -> Result<BasedAlgebra> {
    let n = homs.len();
    let mut basis = Vec::new();
    let mut offset = vec![vec![0; n]; n];
    let mut idempotents = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            offset[i][j] = basis.len();
            for t in 0..homs[i][j].len() {
                let label = if i == j && t == 0 {
                    idempotents[i] = basis.len();
                    format!("e{}", i + 1)
                } else {
                    format!("h{}_{}_{}", i + 1, j + 1, t + 1)
                };
                basis.push(BasisElement {
                    label,
                    source: i + 1,
                    target: j + 1,
                });
            }
        }
    }
    let dim = basis.len();
    let mut products = vec![vec![Vec::new(); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for (t, x) in homs[i][j].iter().enumerate() {
                for l in 0..n {
                    for (u, y) in homs[j][l].iter().enumerate() {
                        let c = coords(i, l, &compose(x, y));
                        let mut dense = vec![num::Zero::zero(); dim];
                        for (s, v) in c.into_iter().enumerate() {
                            dense[offset[i][l] + s] = v;
                        }
                        products[offset[i][j] + t][offset[j][l] + u] = to_sparse(&dense);
                    }
                }
            }
        }
    }
    BasedAlgebra::from_raw(name, n, basis, idempotents, products)
}

/// The summands `T_1, ..., T_n` of the two-term tilting complex at `k`:
/// stalks `P_i` in degree 0 and the approximation complex at `k`.
pub fn tilting_summands(b: &BasedAlgebra, k: Vertex, sign: Sign) -> Result<Vec<ProjComplex>> {
    let approx = approximation(b, k, sign)?;
    Ok((1..=b.n())
        .map(|i| {
            if i == k {
                approx.clone()
            } else {
                ProjComplex::stalk(i, 0)
            }
        })
        .collect())
}

/// Endomorphism algebra in the homotopy category of a sum of complexes.
pub fn endomorphism_algebra(name: &str, b: &BasedAlgebra, summands: &[ProjComplex]) -> Result<BasedAlgebra> {
    let n = summands.len();
    let spaces: Vec<Vec<HomotopyHomSpace>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = (i == j).then(|| identity_map(b, &summands[i]));
                    hom_homotopy_with(b, &summands[j], &summands[i], id.as_ref())
                })
                .collect()
        })
        .collect();
    let homs: Vec<Vec<Vec<(usize, usize, ChainMap)>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| spaces[i][j].basis.iter().map(|m| (j, i, m.clone())).collect())
                .collect()
        })
        .collect();
    assemble(
        name,
        &homs,
        // x : T_j -> T_i after y : T_l -> T_j
        |(j, i, x), (l, _, y)| {
            (
                *l,
                *i,
                compose_maps(b, x, y, &summands[*l], &summands[*j], &summands[*i]),
            )
        },
        |i, l, (_, _, m)| {
            spaces[i][l]
                .coordinates(m)
                .expect("composite of chain maps is a chain map")
        },
    )
}

/// `End(T)` for a tilting module `T = T_1 + ... + T_n` (module maps).
pub fn module_endomorphism_algebra(name: &str, b: &BasedAlgebra, summands: &[ModuleRep]) -> Result<BasedAlgebra> {
    let n = summands.len();
    let mut homs: Vec<Vec<Vec<ModuleMap>>> = Vec::with_capacity(n);
    let mut solvers: Vec<Vec<Option<ColumnSolver>>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        let mut srow = Vec::with_capacity(n);
        for j in 0..n {
            let mut basis = summands[j].hom_basis(b, &summands[i]);
            if i == j {
                let id: ModuleMap = summands[i].dims().iter().map(|&d| RatMatrix::identity(d)).collect();
                let flat: Vec<Vec<Rat>> = std::iter::once(&id).chain(&basis).map(flatten).collect();
                let picks = crate::matops::extend_independent(flat[0].len(), &[], &flat);
                let all: Vec<ModuleMap> = std::iter::once(id).chain(basis).collect();
                basis = picks.into_iter().map(|p| all[p].clone()).collect();
            }
            let flat: Vec<Vec<Rat>> = basis.iter().map(flatten).collect();
            let len = summands[j]
                .dims()
                .iter()
                .zip(summands[i].dims())
                .map(|(a, c)| a * c)
                .sum();
            srow.push(if flat.is_empty() {
                None
            } else {
                ColumnSolver::new(len, &flat)
            });
            row.push(basis);
        }
        homs.push(row);
        solvers.push(srow);
    }
    assemble(
        name,
        &homs,
        // row vectors: apply y, then x
        |x, y| y.iter().zip(x).map(|(fy, fx)| fy * fx).collect(),
        |i, l, h| match &solvers[i][l] {
            Some(s) => s.solve(&flatten(h)).expect("composition stays in the Hom space"),
            None => Vec::new(),
        },
    )
}

fn flatten(m: &ModuleMap) -> Vec<Rat> {
    m.iter().flat_map(|f| f.to_rows().into_iter().flatten()).collect()
}

/// `End(T^±_k)`, with the Cartan matrix checked against `r C r^T`.
pub fn endo_of_tilting(b: &BasedAlgebra, k: Vertex, sign: Sign) -> Result<BasedAlgebra> {
    let status = tilting_status(b, k, sign)?;
    if !status.verdict.is_defined() {
        return Err(Error::NotDefined {
            vertex: k,
            sign: sign.to_string(),
        });
    }
    let summands = tilting_summands(b, k, sign)?;
    let name = format!("{}_{}{k}", b.name(), if sign == Sign::Minus { "m" } else { "p" });
    let result = endomorphism_algebra(&name, b, &summands)?;
    let r = reflection(&b.arrow_basis().quiver, k, sign)?;
    let expected = transported_cartan(&r, &cartan(b))?;
    let found = cartan(&result);
    if found != expected {
        return Err(Error::Postcondition(format!(
            "Cartan matrix of the mutation at {k} is {:?}, expected r C r^T = {:?}",
            found.to_rows(),
            expected.to_rows()
        )));
    }
    Ok(result)
}

/// `r C r^T`.
pub fn transported_cartan(r: &IntMatrix, c: &IntMatrix) -> Result<IntMatrix> {
    r.checked_mul(c)?.checked_mul(&r.transpose())
}

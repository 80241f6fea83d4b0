use num::Signed;
use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::homology::module::injective;
use crate::homology::resolution::{global_dimension, minimal_resolution, simple_resolutions, GlobalDimension};
use crate::matops::{IntMatrix, Quiver, RatMatrix};
use crate::rational::{format_rat, rat, to_i64};
use crate::Caps;

/// `C_ij = dim Hom(P_i, P_j) = dim e_j B e_i`.
pub fn cartan(b: &BasedAlgebra) -> IntMatrix {
    b.block_dims().transpose()
}

/// Euler form in the basis of simples, `C^{-T}`.
pub fn euler(b: &BasedAlgebra) -> Result<RatMatrix> {
    euler_of_cartan(&cartan(b))
}

pub fn euler_of_cartan(c: &IntMatrix) -> Result<RatMatrix> {
    square(c)?;
    c.to_rat().transpose().inverse().ok_or(Error::Singular)
}

fn square(c: &IntMatrix) -> Result<()> {
    if c.is_square() {
        Ok(())
    } else {
        Err(Error::Shape(format!("{}x{} matrix is not square", c.rows(), c.cols())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SMode {
    /// `C C^{-T}`.
    Formula,
    /// Alternating sums of the Betti numbers of minimal resolutions of the
    /// indecomposable injectives.
    Resolved,
}

/// The asymmetry `C C^{-T}` of a Cartan matrix.
pub fn asymmetry(c: &IntMatrix) -> Result<RatMatrix> {
    let e = euler_of_cartan(c)?;
    Ok(&c.to_rat() * &e)
}

/// Row `i` expresses `[I_i]` in the basis of indecomposable projectives.
pub fn s_matrix(b: &BasedAlgebra, mode: SMode, cap: usize) -> Result<RatMatrix> {
    match mode {
        SMode::Formula => asymmetry(&cartan(b)),
        SMode::Resolved => {
            let n = b.n();
            let mut s = RatMatrix::zeros(n, n);
            for i in 1..=n {
                let res = minimal_resolution(b, &injective(b, i), cap);
                if !res.terminated {
                    return Err(Error::ResolutionCap { cap });
                }
                for t in 0..res.terms.len() {
                    let sign = if t % 2 == 0 { 1 } else { -1 };
                    for (j, beta) in res.betti(t, n).into_iter().enumerate() {
                        s[(i - 1, j)] += rat(sign * beta as i64);
                    }
                }
            }
            Ok(s)
        }
    }
}

/// Characteristic polynomial of the Coxeter matrix `-C C^{-T}`, constant
/// term first.
pub fn coxeter_polynomial_of_cartan(c: &IntMatrix) -> Result<Vec<i64>> {
    let s = asymmetry(c)?;
    let neg = RatMatrix::from_rows(
        s.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect(),
    );
    neg.char_poly()
        .iter()
        .map(|x| to_i64(x).ok_or_else(|| Error::Postcondition("non-integral Coxeter polynomial".into())))
        .collect()
}

pub fn coxeter_polynomial(b: &BasedAlgebra) -> Result<Vec<i64>> {
    coxeter_polynomial_of_cartan(&cartan(b))
}

/// `x^3 - x + 1` style rendering of a coefficient list (constant first).
pub fn format_polynomial(coeffs: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (d, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let body = match (d, mag) {
            (0, m) => m.to_string(),
            (1, 1) => "x".to_string(),
            (1, m) => format!("{m}x"),
            (_, 1) => format!("x^{d}"),
            (_, m) => format!("{m}x^{d}"),
        };
        let sign = if c < 0 { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if c < 0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign} {body}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Arrows `i -> j` counted by `Ext^1(S_i, S_j) + Ext^2(S_j, S_i)`; requires
/// global dimension at most 2.
pub fn extended_quiver(b: &BasedAlgebra, cap: usize) -> Result<Quiver> {
    let n = b.n();
    let res = simple_resolutions(b, cap.max(2));
    let mut found = 0;
    for r in &res {
        match r.length() {
            Some(l) => found = found.max(l),
            None => return Err(Error::ResolutionCap { cap }),
        }
    }
    if found > 2 {
        return Err(Error::GlobalDimensionTooLarge { found });
    }
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let count = res[i - 1].betti(1, n)[j - 1] + res[j - 1].betti(2, n)[i - 1];
            edges.extend(std::iter::repeat_n((i, j), count));
        }
    }
    Quiver::from_edges(n, &edges)
}

/// How much the invariants say about equivalence of two Euler forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormComparison {
    /// Some congruence invariant differs, so the forms are not equivalent.
    NotEquivalent { reason: String },
    /// The invariants agree; equivalence is not decided.
    Inconclusive,
}

/// Compares `|det C|` and the Coxeter polynomials of two Cartan matrices.
pub fn compare_euler_forms(c1: &IntMatrix, c2: &IntMatrix) -> Result<FormComparison> {
    if c1.rows() != c2.rows() {
        return Ok(FormComparison::NotEquivalent {
            reason: "different ranks".into(),
        });
    }
    let (d1, d2) = (c1.to_rat().det().abs(), c2.to_rat().det().abs());
    if d1 != d2 {
        return Ok(FormComparison::NotEquivalent {
            reason: format!("|det C| differs: {} vs {}", format_rat(&d1), format_rat(&d2)),
        });
    }
    let (p1, p2) = (coxeter_polynomial_of_cartan(c1)?, coxeter_polynomial_of_cartan(c2)?);
    if p1 != p2 {
        return Ok(FormComparison::NotEquivalent {
            reason: format!(
                "Coxeter polynomials differ: {} vs {}",
                format_polynomial(&p1),
                format_polynomial(&p2)
            ),
        });
    }
    Ok(FormComparison::Inconclusive)
}

/// Everything `analyze` reports about one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub name: String,
    pub dim: usize,
    pub vertices: usize,
    pub quiver: Quiver,
    /// Dimension vector of each indecomposable projective.
    pub projective_dims: Vec<Vec<i64>>,
    pub cartan: IntMatrix,
    pub cartan_det: String,
    pub euler: Option<RatMatrix>,
    pub s_formula: Option<RatMatrix>,
    pub s_resolved: Option<RatMatrix>,
    pub global_dimension: GlobalDimension,
    pub extended_quiver: Option<Quiver>,
    pub coxeter_polynomial: Option<Vec<i64>>,
    pub coxeter_polynomial_text: Option<String>,
    pub notes: Vec<String>,
}

pub fn analyze(b: &BasedAlgebra, caps: &Caps) -> AlgebraReport {
    let c = cartan(b);
    let mut notes = Vec::new();
    let gldim = global_dimension(b, caps.resolution_cap);
    let euler = euler(b).ok();
    if euler.is_none() {
        notes.push("Cartan matrix is singular over Q".to_string());
    } else if gldim.finite().is_none() {
        notes.push("global dimension not determined within the cap; Euler matrix is C^-T only".into());
    }
    let s_formula = s_matrix(b, SMode::Formula, caps.resolution_cap).ok();
    let s_resolved = match s_matrix(b, SMode::Resolved, caps.resolution_cap) {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("resolved asymmetry unavailable: {e}"));
            None
        }
    };
    let extended = match extended_quiver(b, caps.resolution_cap) {
        Ok(q) => Some(q),
        Err(e) => {
            notes.push(format!("extended quiver unavailable: {e}"));
            None
        }
    };
    let cox = coxeter_polynomial(b).ok();
    if cox.is_some() {
        notes.push("the Coxeter polynomial only separates: different polynomials rule out derived equivalence, equal ones prove nothing".into());
    }
    let det = c.to_rat().det();
    AlgebraReport {
        name: b.name().to_string(),
        dim: b.dim(),
        vertices: b.n(),
        quiver: b.arrow_basis().quiver,
        projective_dims: (1..=b.n())
            .map(|i| (1..=b.n()).map(|j| b.block_dim(i, j) as i64).collect())
            .collect(),
        cartan: c,
        cartan_det: format_rat(&det),
        euler,
        s_formula,
        s_resolved,
        global_dimension: gldim,
        extended_quiver: extended,
        coxeter_polynomial_text: cox.as_deref().map(format_polynomial),
        coxeter_polynomial: cox,
        notes,
    }
}

impl AlgebraReport {
    pub fn format_text(&self) -> String {
        let mut s = format!(
            "algebra {}: dimension {}, {} vertices\nquiver {}\n",
            self.name, self.dim, self.vertices, self.quiver
        );
        s.push_str(&format!("cartan (det {})\n{}", self.cartan_det, self.cartan));
        if let Some(e) = &self.euler {
            s.push_str(&format!("euler\n{e}"));
        }
        if let Some(m) = &self.s_formula {
            s.push_str(&format!("asymmetry (formula)\n{m}"));
        }
        if let Some(m) = &self.s_resolved {
            s.push_str(&format!("asymmetry (resolved)\n{m}"));
        }
        s.push_str(&format!("global dimension {}\n", self.global_dimension));
        if let Some(q) = &self.extended_quiver {
            s.push_str(&format!("extended quiver {q}\n"));
        }
        if let Some(p) = &self.coxeter_polynomial_text {
            s.push_str(&format!("coxeter polynomial {p}\n"));
        }
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compile, parse};

    fn alg(text: &str) -> BasedAlgebra {
        compile(&parse(text).unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn linear_a3_invariants() {
        let b = alg("vertices 3\narrow a: 1->2\narrow b: 2->3\n");
        assert_eq!(cartan(&b), IntMatrix::from_rows(&[[1, 0, 0], [1, 1, 0], [1, 1, 1]]));
        assert_eq!(
            euler(&b).unwrap(),
            IntMatrix::from_rows(&[[1, -1, 0], [0, 1, -1], [0, 0, 1]]).to_rat()
        );
        let f = s_matrix(&b, SMode::Formula, 32).unwrap();
        assert_eq!(f, s_matrix(&b, SMode::Resolved, 32).unwrap());
        assert_eq!(&f * &cartan(&b).to_rat().transpose(), cartan(&b).to_rat());
        assert_eq!(coxeter_polynomial(&b).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(format_polynomial(&[1, 1, 1, 1]), "x^3 + x^2 + x + 1");
        let eq = extended_quiver(&b, 32).unwrap();
        assert!(eq.same_arrows(&Quiver::from_edges(3, &[(1, 2), (2, 3)]).unwrap()));
    }

    #[test]
    fn semisimple_invariants() {
        let b = alg("vertices 2\n");
        assert_eq!(cartan(&b), IntMatrix::identity(2));
        assert_eq!(s_matrix(&b, SMode::Formula, 32).unwrap(), RatMatrix::identity(2));
        assert_eq!(coxeter_polynomial(&b).unwrap(), vec![1, 2, 1]);
        assert_eq!(format_polynomial(&[1, 2, 1]), "x^2 + 2x + 1");
        assert_eq!(format_polynomial(&[1, 0, 0, -1, -1, 1]), "x^5 - x^4 - x^3 + 1");
    }

    #[test]
    fn singular_cartan_is_reported() {
        let c = IntMatrix::from_rows(&[[1, 1], [1, 1]]);
        assert_eq!(euler_of_cartan(&c).unwrap_err(), Error::Singular);
    }
}

use num::Signed;
use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::homology::{asymmetry, cartan};
use crate::matops::{IntMatrix, Sign};
use crate::mutation::{bb_defined, endo_of_tilting};
use crate::rational::Rat;
use crate::Vertex;

/// Cartan and quiver of `mu^BB_k(Lambda)` compared with the supplied
/// neighbor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corroboration {
    pub cartan_mutated: IntMatrix,
    pub cartan_target: IntMatrix,
    pub cartan_matches: bool,
    pub quiver_matches: bool,
}

impl Corroboration {
    pub fn ok(&self) -> bool {
        self.cartan_matches && self.quiver_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodMutationVerdict {
    pub vertex: Vertex,
    /// `T^BB_k(Lambda)` is defined.
    pub bb_on_left: bool,
    /// `T^BB_k(Lambda'^op)` is defined.
    pub bb_on_right_op: bool,
    pub good: bool,
    /// Present when the verdict is good. A mismatch means the two algebras
    /// are not a neighboring pair.
    pub corroboration: Option<Corroboration>,
}

/// Decides whether passing from `lambda` to its neighbor `lambda_prime` at
/// `k` is a good mutation, i.e. given by BB tilting on both sides.
///
/// The neighbor relation itself (an exchange triangle in a 2-CY category)
/// cannot be seen from presentations; it is assumed, and the corroboration
/// step reports when the data contradict it.
pub fn good_mutation(lambda: &BasedAlgebra, lambda_prime: &BasedAlgebra, k: Vertex) -> Result<GoodMutationVerdict> {
    if lambda.n() != lambda_prime.n() {
        return Err(Error::Shape(format!(
            "algebras have {} and {} vertices",
            lambda.n(),
            lambda_prime.n()
        )));
    }
    let (q, qp) = (lambda.arrow_basis().quiver, lambda_prime.arrow_basis().quiver);
    for quiver in [&q, &qp] {
        quiver.check_vertex(k)?;
        if quiver.has_loop_at(k) {
            return Err(Error::LoopAt(k));
        }
    }
    let isolated = |quiver: &crate::matops::Quiver| quiver.arrows().iter().all(|a| a.source != k && a.target != k);
    if isolated(&q) && isolated(&qp) {
        return Err(Error::NotDefined {
            vertex: k,
            sign: "good".into(),
        });
    }
    let bb_on_left = bb_defined(lambda, k)?;
    let bb_on_right_op = bb_defined(&lambda_prime.opposite(), k)?;
    let good = bb_on_left && bb_on_right_op;
    let corroboration = if good {
        let mutated = endo_of_tilting(lambda, k, Sign::Minus)?;
        let (cm, ct) = (cartan(&mutated), cartan(lambda_prime));
        Some(Corroboration {
            cartan_matches: cm == ct,
            quiver_matches: mutated.arrow_basis().quiver.same_arrows(&qp),
            cartan_mutated: cm,
            cartan_target: ct,
        })
    } else {
        None
    };
    Ok(GoodMutationVerdict {
        vertex: k,
        bb_on_left,
        bb_on_right_op,
        good,
        corroboration,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignSide {
    /// Column `k` of `S = C C^{-T}`: BB tilting of the algebra.
    Algebra,
    /// Column `k` of `S^{-1} = C^T C^{-1}`: BB tilting of the opposite.
    Opposite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTestReport {
    pub side: SignSide,
    pub vertex: Vertex,
    /// The full matrix whose column is tested (`S` or `S^{-1}`).
    pub matrix: crate::matops::RatMatrix,
    #[serde(serialize_with = "crate::rational::serialize_rats")]
    pub column: Vec<Rat>,
    /// Every entry of the column is `<= 0`.
    pub pass: bool,
}

/// Sign test on column `k` of `S` or `S^{-1}`. Meaningful for Cartan
/// matrices of 2-CY-tilted algebras without a loop at `k`; both hypotheses
/// are the caller's responsibility.
pub fn bb_sign_test(c: &IntMatrix, k: Vertex, side: SignSide) -> Result<SignTestReport> {
    if !c.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", c.rows(), c.cols())));
    }
    if k == 0 || k > c.rows() {
        return Err(Error::VertexOutOfRange { vertex: k, n: c.rows() });
    }
    let matrix = match side {
        SignSide::Algebra => asymmetry(c)?,
        SignSide::Opposite => {
            let inv = c.to_rat().inverse().ok_or(Error::Singular)?;
            c.to_rat().transpose().checked_mul(&inv)?
        }
    };
    let column = matrix.column(k - 1);
    let pass = column.iter().all(|x| !x.is_positive());
    Ok(SignTestReport {
        side,
        vertex: k,
        matrix,
        column,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymmetrySignTest {
    pub left: SignTestReport,
    pub right: SignTestReport,
    pub good: bool,
}

/// The numerical good-mutation criterion from two Cartan matrices: column
/// `k` of `S_Lambda` and of `S_Lambda'^{-1}` must both be nonpositive.
pub fn asymmetry_sign_test(c: &IntMatrix, c_prime: &IntMatrix, k: Vertex) -> Result<AsymmetrySignTest> {
    if c.rows() != c_prime.rows() {
        return Err(Error::Shape(format!(
            "Cartan matrices of sizes {} and {}",
            c.rows(),
            c_prime.rows()
        )));
    }
    let left = bb_sign_test(c, k, SignSide::Algebra)?;
    let right = bb_sign_test(c_prime, k, SignSide::Opposite)?;
    let good = left.pass && right.pass;
    Ok(AsymmetrySignTest { left, right, good })
}

use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::homology::{cartan, euler, extended_quiver, global_dimension, GlobalDimension};
use crate::matops::{fz_mutate, quiver_mutate, reflection, skew_of_quiver, IntMatrix, Quiver, Sign};
use crate::mutation::endo::{endo_of_tilting, transported_cartan};
use crate::mutation::tilting::{tilting_status, Verdict};
use crate::{Caps, Vertex};

#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub vertex: Vertex,
    pub sign: Sign,
    pub verdict: Verdict,
    pub m: Option<usize>,
    pub cartan_before: IntMatrix,
    pub cartan_after: Option<IntMatrix>,
    pub r_matrix: IntMatrix,
    pub quiver_after: Option<Quiver>,
    /// Mutating back with the opposite sign recovers the Cartan matrix and
    /// the quiver.
    pub round_trip_ok: Option<bool>,
    /// `c' = r^T c r` for the Euler forms (when both Cartan matrices are
    /// invertible).
    pub euler_transport_ok: Option<bool>,
    pub gldim_after: Option<GlobalDimension>,
    /// Present when the mutated algebra has global dimension at most 2.
    pub extended_quiver_after: Option<Quiver>,
}

impl MutationReport {
    pub fn format_text(&self) -> String {
        let mut s = format!("vertex {} ({}): {}", self.vertex, self.sign, self.verdict);
        if let Some(m) = self.m {
            s += &format!(", m = {m}");
        }
        s.push('\n');
        s += &format!("cartan before:\n{}\n", self.cartan_before);
        s += &format!("reflection:\n{}\n", self.r_matrix);
        if let Some(c) = &self.cartan_after {
            s += &format!("cartan after:\n{c}\n");
        }
        if let Some(q) = &self.quiver_after {
            s += &format!("quiver after:\n{}\n", q.format_text());
        }
        if let Some(ok) = self.round_trip_ok {
            s += &format!("round trip: {}\n", if ok { "ok" } else { "FAILED" });
        }
        if let Some(ok) = self.euler_transport_ok {
            s += &format!("euler transport: {}\n", if ok { "ok" } else { "FAILED" });
        }
        if let Some(g) = self.gldim_after {
            s += &format!("global dimension after: {g}\n");
        }
        if let Some(q) = &self.extended_quiver_after {
            s += &format!("extended quiver after:\n{}\n", q.format_text());
        }
        s
    }
}

fn flip(sign: Sign) -> Sign {
    match sign {
        Sign::Minus => Sign::Plus,
        Sign::Plus => Sign::Minus,
    }
}

/// Runs the tilting decision at `k` and, when defined, computes the mutated
/// algebra together with its transport checks. An undefined mutation gives
/// `(None, report)` rather than an error.
pub fn mutation_report(
    b: &BasedAlgebra,
    k: Vertex,
    sign: Sign,
    caps: &Caps,
) -> Result<(Option<BasedAlgebra>, MutationReport)> {
    let status = tilting_status(b, k, sign)?;
    let quiver = b.arrow_basis().quiver;
    let c = cartan(b);
    let r = reflection(&quiver, k, sign)?;
    let mut report = MutationReport {
        vertex: k,
        sign,
        verdict: status.verdict,
        m: status.m,
        cartan_before: c.clone(),
        cartan_after: None,
        r_matrix: r.clone(),
        quiver_after: None,
        round_trip_ok: None,
        euler_transport_ok: None,
        gldim_after: None,
        extended_quiver_after: None,
    };
    if !status.verdict.is_defined() {
        return Ok((None, report));
    }
    let after = endo_of_tilting(b, k, sign)?;
    let c_after = cartan(&after);
    let q_after = after.arrow_basis().quiver;

    report.euler_transport_ok = match (euler(b), euler(&after)) {
        (Ok(e), Ok(e_after)) => {
            let rt = r.to_rat();
            let moved = rt.transpose().checked_mul(&e)?.checked_mul(&rt)?;
            Some(moved == e_after)
        }
        _ => None,
    };
    report.round_trip_ok = Some(match endo_of_tilting(&after, k, flip(sign)) {
        Ok(back) => cartan(&back) == c && back.arrow_basis().quiver.same_arrows(&quiver),
        Err(e) if e.is_cap() => return Err(e),
        Err(_) => false,
    });
    let gl = global_dimension(&after, caps.resolution_cap);
    report.gldim_after = Some(gl);
    if gl.finite().is_some_and(|d| d <= 2) {
        report.extended_quiver_after = Some(extended_quiver(&after, caps.resolution_cap)?);
    }
    report.cartan_after = Some(c_after);
    report.quiver_after = Some(q_after);
    Ok((Some(after), report))
}

/// `mu^±_k(B)`, or `NotDefined` when the tilting test fails.
pub fn mutate(b: &BasedAlgebra, k: Vertex, sign: Sign, caps: &Caps) -> Result<(BasedAlgebra, MutationReport)> {
    match mutation_report(b, k, sign, caps)? {
        (Some(a), r) => Ok((a, r)),
        (None, _) => Err(Error::NotDefined {
            vertex: k,
            sign: sign.to_string(),
        }),
    }
}

/// Compatibility of algebra mutation with quiver mutation of the extended
/// quivers, for an algebra of global dimension at most 2.
#[derive(Clone, Debug, Serialize)]
pub struct ExtendedMutationCheck {
    pub vertex: Vertex,
    pub sign: Sign,
    pub extended_before: Quiver,
    pub extended_after: Quiver,
    /// `b` of the mutated extended quiver equals the FZ mutation of `b`.
    pub matrix_ok: bool,
    /// Quiver-level agreement, checked when the mutated extended quiver has
    /// no loops or 2-cycles.
    pub quiver_ok: Option<bool>,
    /// The reflection at `k` computed from the extended quiver equals the one
    /// computed from the ordinary quiver.
    pub reflection_ok: bool,
}

impl ExtendedMutationCheck {
    pub fn ok(&self) -> bool {
        self.matrix_ok && self.quiver_ok != Some(false) && self.reflection_ok
    }
}

fn require_gldim_two(b: &BasedAlgebra, caps: &Caps) -> Result<()> {
    match global_dimension(b, caps.resolution_cap) {
        GlobalDimension::Finite(d) if d <= 2 => Ok(()),
        GlobalDimension::Finite(d) => Err(Error::GlobalDimensionTooLarge { found: d }),
        GlobalDimension::Exceeds(cap) => Err(Error::ResolutionCap { cap }),
    }
}

pub fn check_extended_mutation(b: &BasedAlgebra, k: Vertex, sign: Sign, caps: &Caps) -> Result<ExtendedMutationCheck> {
    require_gldim_two(b, caps)?;
    let before = extended_quiver(b, caps.resolution_cap)?;
    before.check_cluster_quiver()?;
    let (after_alg, _) = mutate(b, k, sign, caps)?;
    require_gldim_two(&after_alg, caps)?;
    let after = extended_quiver(&after_alg, caps.resolution_cap)?;
    let mutated = fz_mutate(&skew_of_quiver(&before), k)?;
    let matrix_ok = skew_of_quiver(&after) == mutated;
    let quiver_ok = after
        .check_cluster_quiver()
        .is_ok()
        .then(|| quiver_mutate(&before, k).is_ok_and(|q| q.same_arrows(&after)));
    let reflection_ok = reflection(&before, k, sign)? == reflection(&b.arrow_basis().quiver, k, sign)?;
    Ok(ExtendedMutationCheck {
        vertex: k,
        sign,
        extended_before: before,
        extended_after: after,
        matrix_ok,
        quiver_ok,
        reflection_ok,
    })
}

/// `r C r^T` from the quiver of `b`, without computing the mutation.
pub fn predicted_cartan(b: &BasedAlgebra, k: Vertex, sign: Sign) -> Result<IntMatrix> {
    let r = reflection(&b.arrow_basis().quiver, k, sign)?;
    transported_cartan(&r, &cartan(b))
}

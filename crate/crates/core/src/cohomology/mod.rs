//! Cohomology of cocycles: witnesses, signatures, Zimmer's correspondence,
//! canonical representatives over ℤ_a, conjugacy decisions and a boxed
//! brute-force oracle.

mod canonical;
mod search;
mod zimmer;

pub use canonical::{
    canonical_cocycle, canonical_form_za, is_translation_coboundary, transitive_conjugacy, Conjugacy,
};
pub use search::{brute_force_cohomologous, brute_force_graph_cohomologous, SearchOptions, DEFAULT_SEARCH_CAP};
pub use zimmer::{coset_space, remark_witness, zimmer_cocycle, zimmer_hom, zimmer_witness, CosetSpace, ZimmerData};

use std::sync::Arc;

use thiserror::Error;

use crate::cocycle::{validate_graph_cocycle, Cocycle, CocycleError, GraphAction};
use crate::group::{Elem, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("witness violates the cochain condition ψ(e)·s(e) = s(e) at edge {0}")]
    Cochain(usize),
    #[error("witness has {found} values, expected {expected}")]
    WitnessSize { expected: usize, found: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search box has {size} candidates, above the cap {cap}")]
    SearchTooLarge { size: String, cap: u128 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Set,
    GraphEdges,
}

/// ψ: S → T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyWitness {
    pub values: Vec<Elem>,
    pub kind: WitnessKind,
}

impl CohomologyWitness {
    pub fn set(values: Vec<Elem>) -> Self {
        CohomologyWitness {
            values,
            kind: WitnessKind::Set,
        }
    }

    pub fn edges(values: Vec<Elem>) -> Self {
        CohomologyWitness {
            values,
            kind: WitnessKind::GraphEdges,
        }
    }

    pub fn identity(phi: &Cocycle, kind: WitnessKind) -> Self {
        CohomologyWitness {
            values: vec![phi.target().identity(); phi.size()],
            kind,
        }
    }
}

fn twisted(phi: &Cocycle, psi: &[Elem]) -> Result<Cocycle, CohomologyError> {
    if psi.len() != phi.size() {
        return Err(CohomologyError::WitnessSize {
            expected: phi.size(),
            found: psi.len(),
        });
    }
    for v in psi {
        phi.target().check(v)?;
    }
    let t = phi.target().clone();
    let action = phi.action().clone();
    let a = action.clone();
    Ok(Cocycle::from_fn(action, t.clone(), |g, x| {
        t.mul(&t.mul(&psi[a.act(g, x)], &phi.eval(g, x)), &t.inv(&psi[x]))
    })?)
}

/// φ′(g,x) = ψ(g·x)φ(g,x)ψ(x)⁻¹ on a set action.
pub fn apply_witness(phi: &Cocycle, psi: &CohomologyWitness) -> Result<Cocycle, CohomologyError> {
    twisted(phi, &psi.values)
}

/// The graph version: the witness must satisfy ψ(e)·s(e) = s(e), and the
/// result is re-validated as a graph cocycle.
pub fn apply_graph_witness(
    action: &GraphAction,
    phi: &Cocycle,
    psi: &CohomologyWitness,
) -> Result<Cocycle, CohomologyError> {
    check_cochain(action, &psi.values)?;
    let out = twisted(phi, &psi.values)?;
    let report = validate_graph_cocycle(action, &out, false)?;
    if !report.is_valid() {
        return Err(CohomologyError::Precondition(
            "twisted map fails validation; is the input a graph cocycle?".into(),
        ));
    }
    Ok(out)
}

pub fn check_cochain(action: &GraphAction, psi: &[Elem]) -> Result<(), CohomologyError> {
    let graph = action.graph();
    if psi.len() != graph.num_edges() {
        return Err(CohomologyError::WitnessSize {
            expected: graph.num_edges(),
            found: psi.len(),
        });
    }
    let va = action.vertex_action();
    for (e, p) in psi.iter().enumerate() {
        action.group().check(p)?;
        let s = graph.source(e);
        if va.act(p, s) != s {
            return Err(CohomologyError::Cochain(e));
        }
    }
    Ok(())
}

/// Pointwise check of φ′(g,x) = ψ(g·x)φ(g,x)ψ(x)⁻¹: every element for finite
/// G, the standard generators for ℤⁿ.
pub fn verify_cohomologous(phi: &Cocycle, phi2: &Cocycle, psi: &CohomologyWitness) -> bool {
    if phi.size() != phi2.size()
        || psi.values.len() != phi.size()
        || phi.target() != phi2.target()
        || phi.action() != phi2.action() && **phi.action() != **phi2.action()
        || !psi.values.iter().all(|v| phi.target().contains(v))
    {
        return false;
    }
    let t = phi.target();
    let a = phi.action();
    a.check_elements().iter().all(|g| {
        (0..phi.size()).all(|x| {
            let rhs = t.mul(&t.mul(&psi.values[a.act(g, x)], &phi.eval(g, x)), &t.inv(&psi.values[x]));
            phi2.eval(g, x) == rhs
        })
    })
}

/// The graph version adds the cochain condition.
pub fn verify_graph_cohomologous(
    action: &GraphAction,
    phi: &Cocycle,
    phi2: &Cocycle,
    psi: &CohomologyWitness,
) -> bool {
    check_cochain(action, &psi.values).is_ok() && verify_cohomologous(phi, phi2, psi)
}

/// Σₓ ξ(x) for G = ℤ acting on a finite set with abelian T.
pub fn signature(phi: &Cocycle) -> Result<Elem, CohomologyError> {
    let xi = phi.xi().ok_or_else(|| {
        CohomologyError::NotApplicable(format!("signature needs G = integers, not {}", phi.group()))
    })?;
    let t = phi.target();
    if !t.is_abelian() {
        return Err(CohomologyError::NotApplicable(format!(
            "signature needs an abelian target, not {t}"
        )));
    }
    Ok(xi.iter().fold(t.identity(), |acc, v| t.mul(&acc, v)))
}

/// Pointwise inverse ψ⁻¹.
pub fn inverse_witness(phi_target: &crate::group::Group, psi: &CohomologyWitness) -> CohomologyWitness {
    CohomologyWitness {
        values: psi.values.iter().map(|v| phi_target.inv(v)).collect(),
        kind: psi.kind,
    }
}

pub(crate) fn same_action(a: &Arc<crate::cocycle::SetAction>, b: &Arc<crate::cocycle::SetAction>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

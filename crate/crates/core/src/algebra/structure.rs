use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use crate::cocycle::{Cocycle, GraphAction};
use crate::cohomology::{apply_graph_witness, CohomologyError, CohomologyWitness};
use crate::constructions::System;
use crate::group::{Elem, Group};

use super::sum::{BElement, BSym, Coeff, YElement, YSym};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("cocycle is {0}-valued; the algebra needs a G-valued graph cocycle")]
    Target(Group),
    #[error("cocycle lives on {found} points, the graph has {expected} edges")]
    Size { expected: usize, found: usize },
}

/// θ_{ξ,η}: ζ ↦ ξ·⟨η,ζ⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOneOp {
    pub xi: YElement,
    pub eta: YElement,
}

/// Spanning symbols of J_X ⋊ G: δ_{v,g} for regular v and every g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatsuraIdealReport {
    pub regular: Vec<usize>,
    pub sources: Vec<usize>,
    pub row_finite: bool,
    /// Row-finite with no sources, so the ideal is all of B.
    pub equals_b: bool,
}

/// An E¹-indexed family with entries in B.
pub type EpFamily = BTreeMap<usize, BElement>;

/// The structure constants of B and Y^φ for one graph cocycle.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub action: GraphAction,
    pub phi: Cocycle,
}

impl Algebra {
    pub fn new(action: GraphAction, phi: Cocycle) -> Result<Algebra, AlgebraError> {
        if phi.target() != action.group() {
            return Err(AlgebraError::Target(phi.target().clone()));
        }
        let expected = action.graph().num_edges();
        if phi.size() != expected {
            return Err(AlgebraError::Size {
                expected,
                found: phi.size(),
            });
        }
        Ok(Algebra { action, phi })
    }

    pub fn from_system(sys: &System) -> Algebra {
        Algebra {
            action: sys.action.clone(),
            phi: sys.cocycle.clone(),
        }
    }

    pub fn group(&self) -> &Group {
        self.action.group()
    }

    fn vact(&self, g: &Elem, v: usize) -> usize {
        self.action.vertex_action().act(g, v)
    }

    fn eact(&self, g: &Elem, e: usize) -> usize {
        self.action.edge_action().act(g, e)
    }

    pub fn delta(&self, v: usize, g: Elem) -> BElement {
        BElement::basis(BSym { v, g })
    }

    pub fn chi(&self, e: usize, g: Elem) -> YElement {
        YElement::basis(YSym { e, g })
    }

    /// i_G(g) = Σ_v δ_{v,g}, a finite sum since E⁰ is finite.
    pub fn unitary(&self, g: &Elem) -> BElement {
        (0..self.action.graph().num_vertices())
            .map(|v| (BSym { v, g: g.clone() }, Coeff::one()))
            .collect()
    }

    /// δ_{v′,g}δ_{v,h} = δ_{gv,gh} if v′ = gv, else 0.
    pub fn b_multiply(&self, x: &BElement, y: &BElement) -> BElement {
        let grp = self.group();
        let mut out = BElement::zero();
        for (a, c1) in x.terms() {
            for (b, c2) in y.terms() {
                if a.v == self.vact(&a.g, b.v) {
                    out.add_term(BSym { v: a.v, g: grp.mul(&a.g, &b.g) }, c1 * c2);
                }
            }
        }
        out
    }

    /// δ_{v,g}* = δ_{g⁻¹v,g⁻¹}, conjugating coefficients.
    pub fn b_adjoint(&self, x: &BElement) -> BElement {
        let grp = self.group();
        x.terms()
            .map(|(s, c)| {
                let gi = grp.inv(&s.g);
                (BSym { v: self.vact(&gi, s.v), g: gi }, c.conj())
            })
            .collect()
    }

    /// δ_{v,g}·χ_{e,h} = χ_{ge,φ(g,e)h} if v = r(ge), else 0.
    pub fn left_action(&self, b: &BElement, xi: &YElement) -> YElement {
        let grp = self.group();
        let graph = self.action.graph();
        let mut out = YElement::zero();
        for (a, c1) in b.terms() {
            for (y, c2) in xi.terms() {
                let ge = self.eact(&a.g, y.e);
                if graph.range(ge) == a.v {
                    let h = grp.mul(&self.phi.eval(&a.g, y.e), &y.g);
                    out.add_term(YSym { e: ge, g: h }, c1 * c2);
                }
            }
        }
        out
    }

    /// χ_{e,h}·δ_{v,g} = χ_{e,hg} if s(e) = hv, else 0.
    pub fn right_action(&self, xi: &YElement, b: &BElement) -> YElement {
        let grp = self.group();
        let graph = self.action.graph();
        let mut out = YElement::zero();
        for (y, c1) in xi.terms() {
            for (a, c2) in b.terms() {
                if graph.source(y.e) == self.vact(&y.g, a.v) {
                    out.add_term(YSym { e: y.e, g: grp.mul(&y.g, &a.g) }, c1 * c2);
                }
            }
        }
        out
    }

    /// ⟨χ_{e,g},χ_{e,h}⟩ = δ_{g⁻¹s(e),g⁻¹h}, zero across different edges;
    /// conjugate-linear in the first slot.
    pub fn inner_product(&self, xi: &YElement, eta: &YElement) -> BElement {
        let grp = self.group();
        let graph = self.action.graph();
        let mut out = BElement::zero();
        for (a, c1) in xi.terms() {
            let gi = grp.inv(&a.g);
            let v = self.vact(&gi, graph.source(a.e));
            for (b, c2) in eta.terms() {
                if a.e == b.e {
                    out.add_term(BSym { v, g: grp.mul(&gi, &b.g) }, c1.conj() * c2);
                }
            }
        }
        out
    }

    pub fn rank_one_apply(&self, theta: &RankOneOp, zeta: &YElement) -> YElement {
        self.right_action(&theta.xi, &self.inner_product(&theta.eta, zeta))
    }

    pub fn rank_ones_apply(&self, thetas: &[RankOneOp], zeta: &YElement) -> YElement {
        thetas
            .iter()
            .fold(YElement::zero(), |acc, t| acc.add(&self.rank_one_apply(t, zeta)))
    }

    /// Σ_{r(e)=v} θ_{χ_{e,1},χ_{g⁻¹e,φ(g⁻¹,e)}}; empty when v is a source.
    pub fn katsura_decomposition(&self, v: usize, g: &Elem) -> Vec<RankOneOp> {
        let grp = self.group();
        let gi = grp.inv(g);
        self.action
            .graph()
            .edges_into(v)
            .iter()
            .map(|&e| RankOneOp {
                xi: self.chi(e, grp.identity()),
                eta: self.chi(self.eact(&gi, e), self.phi.eval(&gi, e)),
            })
            .collect()
    }

    pub fn katsura_ideal_report(&self) -> KatsuraIdealReport {
        let graph = self.action.graph();
        let (regular, sources) = graph.classify_vertices();
        let row_finite = graph.is_row_finite();
        KatsuraIdealReport {
            equals_b: row_finite && sources.is_empty(),
            regular,
            sources,
            row_finite,
        }
    }

    /// Φ for a graph cochain ψ, together with the algebra of the twisted
    /// cocycle it intertwines into.
    pub fn cohomology_iso(&self, psi: &CohomologyWitness) -> Result<CohomologyIso, AlgebraError> {
        let twisted = apply_graph_witness(&self.action, &self.phi, psi)?;
        Ok(CohomologyIso {
            psi: psi.values.clone(),
            group: self.group().clone(),
            target: Algebra {
                action: self.action.clone(),
                phi: twisted,
            },
        })
    }

    /// Ψχ_{e,g}: the family whose only entry is δ_{s(e),g} at e.
    pub fn ep_model_map(&self, sym: &YSym) -> EpFamily {
        let s = self.action.graph().source(sym.e);
        BTreeMap::from([(sym.e, self.delta(s, sym.g.clone()))])
    }

    pub fn ep_model_apply(&self, xi: &YElement) -> EpFamily {
        let mut out: EpFamily = BTreeMap::new();
        for (sym, c) in xi.terms() {
            for (e, b) in self.ep_model_map(sym) {
                let entry = out.entry(e).or_default();
                *entry = entry.add(&b.scale(c));
            }
        }
        out.retain(|_, b| !b.is_zero());
        out
    }

    /// Σ_{e′} F_{e′}* F′_{e′}.
    pub fn ep_inner(&self, f1: &EpFamily, f2: &EpFamily) -> BElement {
        f1.iter()
            .filter_map(|(e, a)| f2.get(e).map(|b| self.b_multiply(&self.b_adjoint(a), b)))
            .fold(BElement::zero(), |acc, x| acc.add(&x))
    }

    /// δ_{v,g} on the standard module: (g·F)_{e′} = δ_{s(e′),φ(g,g⁻¹e′)}F_{g⁻¹e′},
    /// followed by the projection onto r(e′) = v.
    pub fn ep_left_action(&self, b: &BElement, f: &EpFamily) -> EpFamily {
        let graph = self.action.graph();
        let mut out: EpFamily = BTreeMap::new();
        for (a, c) in b.terms() {
            for (&e, entry) in f {
                let e2 = self.eact(&a.g, e);
                if graph.range(e2) != a.v {
                    continue;
                }
                let twist = self.delta(graph.source(e2), self.phi.eval(&a.g, e));
                let term = self.b_multiply(&twist, entry).scale(c);
                let slot = out.entry(e2).or_default();
                *slot = slot.add(&term);
            }
        }
        out.retain(|_, b| !b.is_zero());
        out
    }
}

/// Φχ_{e,g} = χ_{e,ψ(e)g}, from Y^φ to Y^{φ′} with φ′ the ψ-twist of φ.
#[derive(Clone, Debug)]
pub struct CohomologyIso {
    pub psi: Vec<Elem>,
    group: Group,
    pub target: Algebra,
}

impl CohomologyIso {
    pub fn apply(&self, xi: &YElement) -> YElement {
        xi.map_linear(|s| {
            YElement::basis(YSym {
                e: s.e,
                g: self.group.mul(&self.psi[s.e], &s.g),
            })
        })
    }

    pub fn apply_inverse(&self, xi: &YElement) -> YElement {
        xi.map_linear(|s| {
            YElement::basis(YSym {
                e: s.e,
                g: self.group.mul(&self.group.inv(&self.psi[s.e]), &s.g),
            })
        })
    }
}

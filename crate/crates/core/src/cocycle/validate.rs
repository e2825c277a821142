use crate::group::Elem;
use crate::par;

use super::action::GraphAction;
use super::map::Cocycle;
use super::CocycleError;

/// φ(gh, x) ≠ φ(g, h·x)φ(h, x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub g: Elem,
    pub h: Elem,
    pub x: usize,
}

/// φ(g, e)·s(e) ≠ g·s(e); in strong mode `vertex` is any vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexViolation {
    pub g: Elem,
    pub e: usize,
    pub vertex: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub identity: Vec<IdentityViolation>,
    pub vertex: Vec<VertexViolation>,
    pub strong: Vec<VertexViolation>,
    pub strong_checked: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.identity.is_empty() && self.vertex.is_empty() && self.strong.is_empty()
    }
}

/// Checks the cocycle identity: exhaustively for finite G; for ℤⁿ the
/// generating functions must agree around every commuting square, which is
/// automatic when n = 1.
pub fn validate_cocycle(phi: &Cocycle) -> ValidationReport {
    ValidationReport {
        identity: identity_violations(phi),
        ..Default::default()
    }
}

fn identity_violations(phi: &Cocycle) -> Vec<IdentityViolation> {
    let action = phi.action();
    let group = action.group();
    let t = phi.target();
    let n = action.size();
    if action.is_free_abelian() {
        let gens = group.generators();
        let mut out = Vec::new();
        for a in 0..gens.len() {
            for b in (a + 1)..gens.len() {
                let (ga, gb) = (&gens[a], &gens[b]);
                for x in 0..n {
                    let lhs = t.mul(&phi.eval(ga, action.act(gb, x)), &phi.eval(gb, x));
                    let rhs = t.mul(&phi.eval(gb, action.act(ga, x)), &phi.eval(ga, x));
                    if lhs != rhs {
                        out.push(IdentityViolation { g: ga.clone(), h: gb.clone(), x });
                    }
                }
            }
        }
        return out;
    }
    let elements = action.elements().unwrap();
    par::flat_map(elements, |g| {
        let mut out = Vec::new();
        for h in elements {
            let gh = group.mul(g, h);
            for x in 0..n {
                let lhs = phi.eval(&gh, x);
                let rhs = t.mul(&phi.eval(g, action.act(h, x)), &phi.eval(h, x));
                if lhs != rhs {
                    out.push(IdentityViolation { g: g.clone(), h: h.clone(), x });
                }
            }
        }
        out
    })
}

/// Cocycle identity plus the vertex condition φ(g,e)·s(e) = g·s(e); with
/// `strong`, also φ(g,e)·v = g·v for every vertex v. For ℤⁿ it suffices to
/// check generators.
pub fn validate_graph_cocycle(
    action: &GraphAction,
    phi: &Cocycle,
    strong: bool,
) -> Result<ValidationReport, CocycleError> {
    if **phi.action() != **action.edge_action() {
        return Err(CocycleError::Table("cocycle is defined over a different edge action".into()));
    }
    if phi.target() != action.group() {
        return Err(CocycleError::Unsupported(format!(
            "graph cocycles must take values in the acting group {}, not {}",
            action.group(),
            phi.target()
        )));
    }
    let graph = action.graph();
    let va = action.vertex_action();
    let checks = action.edge_action().check_elements();
    let vertex = par::flat_map(&checks, |g| {
        (0..graph.num_edges())
            .filter_map(|e| {
                let s = graph.source(e);
                let lhs = va.act(&phi.eval(g, e), s);
                (lhs != va.act(g, s)).then(|| VertexViolation { g: g.clone(), e, vertex: s })
            })
            .collect()
    });
    let strong_v = if strong {
        par::flat_map(&checks, |g| {
            let mut out = Vec::new();
            for e in 0..graph.num_edges() {
                let p = phi.eval(g, e);
                for v in 0..graph.num_vertices() {
                    if va.act(&p, v) != va.act(g, v) {
                        out.push(VertexViolation { g: g.clone(), e, vertex: v });
                    }
                }
            }
            out
        })
    } else {
        Vec::new()
    };
    Ok(ValidationReport {
        identity: identity_violations(phi),
        vertex,
        strong: strong_v,
        strong_checked: strong,
    })
}

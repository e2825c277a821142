use std::fmt;

use crate::cocycle::act_path;
use crate::constructions::System;
use crate::graph::Path;
use crate::group::Elem;

/// s_μ u_g s_ν* with s(μ) = g·s(ν); vertices are length-0 paths, so
/// p_v = (v, 1, v).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub mu: Path,
    pub g: Elem,
    pub nu: Path,
}

impl Monomial {
    pub fn is_compatible(&self, sys: &System) -> bool {
        self.mu.source() == sys.action.vertex_action().act(&self.g, self.nu.source())
    }

    pub fn vertex(sys: &System, v: usize) -> Monomial {
        Monomial {
            mu: Path::vertex(v),
            g: sys.group().identity(),
            nu: Path::vertex(v),
        }
    }

    pub fn edge(sys: &System, e: usize) -> Monomial {
        let graph = sys.graph();
        Monomial {
            mu: Path::edge(graph, e),
            g: sys.group().identity(),
            nu: Path::vertex(graph.source(e)),
        }
    }

    /// p_v u_g = u_g p_{g⁻¹v}.
    pub fn unitary_at(sys: &System, v: usize, g: &Elem) -> Monomial {
        let gi = sys.group().inv(g);
        Monomial {
            mu: Path::vertex(v),
            g: g.clone(),
            nu: Path::vertex(sys.action.vertex_action().act(&gi, v)),
        }
    }

    /// (μ, g, ν)* = (ν, g⁻¹, μ).
    pub fn adjoint(&self, sys: &System) -> Monomial {
        Monomial {
            mu: self.nu.clone(),
            g: sys.group().inv(&self.g),
            nu: self.mu.clone(),
        }
    }

    pub fn display(&self, sys: &System) -> String {
        let graph = sys.graph();
        let grp = sys.group();
        let mut parts = Vec::new();
        if self.mu.is_vertex() {
            if self.nu.is_vertex() {
                parts.push(format!("p({})", graph.vertex_name(self.mu.range())));
            }
        } else {
            parts.extend(self.mu.edges().map(|e| format!("s({})", graph.edge_name(e))));
        }
        if !grp.is_identity(&self.g) {
            parts.push(format!("u({})", self.g));
        }
        let nu: Vec<usize> = self.nu.edges().collect();
        parts.extend(nu.iter().rev().map(|&e| format!("s*({})", graph.edge_name(e))));
        parts.join(" ")
    }
}

/// Wrapper for printing a monomial with its system's names.
pub struct Shown<'a>(pub &'a Monomial, pub &'a System);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display(self.1))
    }
}

/// (s_μ u_g s_ν*)(s_ρ u_h s_σ*):
/// ρ = νρ′ gives (μ(g·ρ′), φ(g,ρ′)h, σ);
/// ν = ρν′ gives (μ, g·φ(h⁻¹,ν′)⁻¹, σ(h⁻¹·ν′));
/// anything else is 0.
pub fn monomial_multiply(sys: &System, m1: &Monomial, m2: &Monomial) -> Option<Monomial> {
    let grp = sys.group();
    if let Some(rest) = m2.mu.strip_prefix(&m1.nu) {
        let (moved, phi) = act_path(&sys.action, &sys.cocycle, &m1.g, &rest);
        let mu = m1.mu.concat(&moved).expect("source compatibility");
        return Some(Monomial {
            mu,
            g: grp.mul(&phi, &m2.g),
            nu: m2.nu.clone(),
        });
    }
    if let Some(rest) = m1.nu.strip_prefix(&m2.mu) {
        let hi = grp.inv(&m2.g);
        let (moved, phi) = act_path(&sys.action, &sys.cocycle, &hi, &rest);
        let nu = m2.nu.concat(&moved).expect("source compatibility");
        return Some(Monomial {
            mu: m1.mu.clone(),
            g: grp.mul(&m1.g, &grp.inv(&phi)),
            nu,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::EpkSystem;

    #[test]
    fn odometer_relations() {
        let sys = EpkSystem::new(2, 1).unwrap().system().unwrap();
        let u = Monomial::unitary_at(&sys, 0, &Elem::int(1));
        let s0 = Monomial::edge(&sys, 0);
        let s1 = Monomial::edge(&sys, 1);
        assert_eq!(monomial_multiply(&sys, &u, &s0), Some(s1.clone()));
        let us1 = monomial_multiply(&sys, &u, &s1).unwrap();
        assert_eq!(us1.display(&sys), "s(0) u(1)");
        let p = Monomial::vertex(&sys, 0);
        assert_eq!(monomial_multiply(&sys, &p, &p), Some(p.clone()));
        assert_eq!(p.display(&sys), "p(v)");
        // s_0* s_1 = 0, s_0* s_0 = p
        assert_eq!(monomial_multiply(&sys, &s0.adjoint(&sys), &s1), None);
        assert_eq!(monomial_multiply(&sys, &s0.adjoint(&sys), &s0), Some(p));
        let proj = monomial_multiply(&sys, &s0, &s0.adjoint(&sys)).unwrap();
        assert_eq!(monomial_multiply(&sys, &proj, &proj), Some(proj));
    }

    #[test]
    fn second_branch() {
        // s_1* u_1 = (u_{-1} s_1)* = s_0*, since u s_0 = s_1
        let sys = EpkSystem::new(2, 1).unwrap().system().unwrap();
        let s1 = Monomial::edge(&sys, 1);
        let u = Monomial::unitary_at(&sys, 0, &Elem::int(1));
        let prod = monomial_multiply(&sys, &s1.adjoint(&sys), &u).unwrap();
        assert_eq!(prod.display(&sys), "s*(0)");
        // s_0* u_1 = (u_{-1} s_0)* = (s_1 u_{-1})* = u_1 s_1*
        let s0 = Monomial::edge(&sys, 0);
        let prod = monomial_multiply(&sys, &s0.adjoint(&sys), &u).unwrap();
        assert_eq!(prod.display(&sys), "u(1) s*(1)");
        assert!(prod.is_compatible(&sys));
    }
}

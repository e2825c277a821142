use std::sync::Arc;

use crate::cocycle::{Cocycle, GraphAction, SetAction};
use crate::graph::Graph;
use crate::group::{Elem, Group};

use super::{ConstructionError, System};

fn check_perm(p: &[usize], n: usize, name: &str) -> Result<(), ConstructionError> {
    let mut seen = vec![false; n];
    if p.len() != n || p.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
        return Err(ConstructionError::Parameters(format!("{name} is not a bijection of the {n}-point set")));
    }
    Ok(())
}

/// Period of x under τ, i.e. the positive generator of S_x = {k : τᵏx = x}.
fn period(tau: &[usize], x: usize) -> u64 {
    let mut y = tau[x];
    let mut p = 1;
    while y != x {
        y = tau[y];
        p += 1;
    }
    p
}

/// Whether ξ(x) − 1 lies in S_x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnSetCheck {
    pub point: usize,
    pub period: u64,
    pub xi: i64,
    pub admissible: bool,
}

#[derive(Clone, Debug)]
pub struct DynamicalOutcome {
    pub checks: Vec<ReturnSetCheck>,
    /// Present exactly when every point is admissible.
    pub system: Option<System>,
}

/// E⁰ = E¹ = S, s = id, r = σ, with ℤ acting through τ and the cocycle
/// generated by ξ.
pub fn dynamical_system_graph(sigma: &[usize], tau: &[usize], xi: &[i64]) -> Result<DynamicalOutcome, ConstructionError> {
    let n = sigma.len();
    if n == 0 {
        return Err(ConstructionError::Parameters("S must be nonempty".into()));
    }
    check_perm(sigma, n, "σ")?;
    check_perm(tau, n, "τ")?;
    if xi.len() != n {
        return Err(ConstructionError::Parameters("ξ must have one value per point".into()));
    }
    if let Some(x) = (0..n).find(|&x| sigma[tau[x]] != tau[sigma[x]]) {
        return Err(ConstructionError::Constraint(format!("σ and τ do not commute at {x}")));
    }
    let checks: Vec<ReturnSetCheck> = (0..n)
        .map(|x| {
            let p = period(tau, x);
            ReturnSetCheck {
                point: x,
                period: p,
                xi: xi[x],
                admissible: (xi[x] - 1).rem_euclid(p as i64) == 0,
            }
        })
        .collect();
    let system = if checks.iter().all(|c| c.admissible) {
        let names: Vec<String> = (0..n).map(|x| x.to_string()).collect();
        let edges = (0..n)
            .map(|x| (format!("e{x}"), names[sigma[x]].clone(), names[x].clone()))
            .collect();
        let graph = Arc::new(Graph::new(names.clone(), edges)?);
        let act = Arc::new(SetAction::integers(tau.to_vec())?);
        let cocycle = Cocycle::generating(act.clone(), Group::Integers, xi.iter().map(|&v| Elem::int(v)).collect())?;
        let action = GraphAction::new(graph, act.clone(), act)?;
        Some(System::new(action, cocycle)?)
    } else {
        None
    };
    Ok(DynamicalOutcome { checks, system })
}

/// E¹ = H × E⁰ with r(h,x) = h·x, s(h,x) = x, G acting by g(h,x) = (h, g·x)
/// and φ(g,(h,x)) = ϕ(g, h·x). H must be finite; edge (h, x) has index
/// (position of h in H's enumeration)·|E⁰| + x.
pub fn commuting_actions_system(
    g_action: Arc<SetAction>,
    h_action: &SetAction,
    small_phi: &Cocycle,
) -> Result<System, ConstructionError> {
    let n = g_action.size();
    let group = g_action.group().clone();
    if h_action.size() != n || small_phi.size() != n {
        return Err(ConstructionError::Parameters("actions live on different sets".into()));
    }
    if **small_phi.action() != *g_action || small_phi.target() != &group {
        return Err(ConstructionError::Parameters("ϕ must be a G-valued cocycle for G ↷ E⁰".into()));
    }
    let h_elems = h_action
        .elements()
        .ok_or_else(|| ConstructionError::Parameters("H must be finite".into()))?
        .to_vec();
    for g in group.generators() {
        for h in &h_elems {
            for x in 0..n {
                if g_action.act(&g, h_action.act(h, x)) != h_action.act(h, g_action.act(&g, x)) {
                    return Err(ConstructionError::Constraint(format!(
                        "the actions do not commute at ({g}, {h}, {x})"
                    )));
                }
            }
        }
    }
    for g in g_action.check_elements() {
        for x in 0..n {
            if g_action.act(&small_phi.eval(&g, x), x) != g_action.act(&g, x) {
                return Err(ConstructionError::Constraint(format!("ϕ({g},{x})·{x} ≠ {g}·{x}")));
            }
        }
    }
    let names: Vec<String> = (0..n).map(|x| x.to_string()).collect();
    let mut edges = Vec::with_capacity(h_elems.len() * n);
    for (hi, h) in h_elems.iter().enumerate() {
        for x in 0..n {
            edges.push((format!("h{hi}:{x}"), names[h_action.act(h, x)].clone(), names[x].clone()));
        }
    }
    let graph = Arc::new(Graph::new(names, edges)?);
    let m = h_elems.len() * n;
    let gens = group
        .generators()
        .into_iter()
        .map(|g| {
            let img = (0..m).map(|e| (e / n) * n + g_action.act(&g, e % n)).collect();
            (g, img)
        })
        .collect();
    let edge_action = Arc::new(SetAction::from_generators(group.clone(), m, gens)?);
    let cocycle = Cocycle::from_fn(edge_action.clone(), group, |g, e| {
        small_phi.eval(g, h_action.act(&h_elems[e / n], e % n))
    })?;
    let action = GraphAction::new(graph, g_action, edge_action)?;
    System::new(action, cocycle)
}

/// For G = ℤ acting through τ on E⁰: the generating values in
/// [−bound, bound] allowed at each point by ϕ(1,x)·x = 1·x. Every ξ built
/// from these lists is admissible, since the constraint is pointwise.
pub fn commuting_scan(g_action: &SetAction, bound: i64) -> Result<Vec<Vec<i64>>, ConstructionError> {
    let tau = g_action
        .tau()
        .ok_or_else(|| ConstructionError::Parameters("the scan needs G = integers".into()))?;
    let tau: Vec<usize> = tau.iter().map(|&y| y as usize).collect();
    Ok((0..tau.len())
        .map(|x| {
            let p = period(&tau, x) as i64;
            (-bound..=bound).filter(|v| (v - 1).rem_euclid(p) == 0).collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::validate_graph_cocycle;

    #[test]
    fn identity_tau_allows_anything() {
        let out = dynamical_system_graph(&[1, 2, 0], &[0, 1, 2], &[5, -3, 0]).unwrap();
        assert!(out.checks.iter().all(|c| c.admissible && c.period == 1));
        let sys = out.system.unwrap();
        assert_eq!(sys.graph().range(0), 1);
        assert_eq!(sys.graph().source(0), 0);
    }

    #[test]
    fn period_two_needs_odd_values() {
        // τ swaps 0 and 1 and commutes with σ = τ
        let ok = dynamical_system_graph(&[1, 0], &[1, 0], &[3, -1]).unwrap();
        assert!(ok.system.is_some());
        let bad = dynamical_system_graph(&[1, 0], &[1, 0], &[2, 1]).unwrap();
        assert!(!bad.checks[0].admissible && bad.checks[1].admissible);
        assert!(bad.system.is_none());
        assert!(dynamical_system_graph(&[1, 2, 0], &[1, 0, 2], &[1, 1, 1]).is_err());
    }

    #[test]
    fn dynamical_admissibility_matches_validation() {
        // the report agrees with the vertex condition of the unchecked system
        for xi0 in -4..=4 {
            for xi1 in -4..=4 {
                let out = dynamical_system_graph(&[0, 1, 2], &[1, 0, 2], &[xi0, xi1, 1]).unwrap();
                let expect = (xi0 - 1) % 2 == 0 && (xi1 - 1) % 2 == 0;
                assert_eq!(out.system.is_some(), expect);
            }
        }
    }

    fn rotation(n: usize, step: usize, group: Group) -> SetAction {
        let one = group.generators().remove(0);
        SetAction::from_generators(group, n, vec![(one, (0..n).map(|z| (z + step) % n).collect())]).unwrap()
    }

    #[test]
    fn discretized_circle() {
        // E⁰ = ℤ₆, λ = rotation by 2 (period 3), H = ℤ₆ rotating by 1
        let g = Arc::new(rotation(6, 2, Group::Integers));
        let h = rotation(6, 1, Group::cyclic(6));
        for k in -2..=2i64 {
            let xi = vec![Elem::int(1 + 3 * k); 6];
            let phi = Cocycle::generating(g.clone(), Group::Integers, xi).unwrap();
            let sys = commuting_actions_system(g.clone(), &h, &phi).unwrap();
            assert_eq!(sys.graph().num_edges(), 36);
            for e in 0..36 {
                assert_eq!(sys.cocycle.eval(&Elem::int(5), e), Elem::int(5 * (1 + 3 * k)));
            }
            assert!(validate_graph_cocycle(&sys.action, &sys.cocycle, false).unwrap().is_valid());
        }
        let bad = Cocycle::generating(g.clone(), Group::Integers, vec![Elem::int(2); 6]).unwrap();
        assert!(matches!(commuting_actions_system(g, &h, &bad), Err(ConstructionError::Constraint(_))));
    }

    #[test]
    fn free_action_forces_trivial_cocycle() {
        // ℤ₃ acting freely on itself: ϕ must be (g, x) ↦ g
        let g3 = Group::cyclic(3);
        let act = Arc::new(rotation(3, 1, g3.clone()));
        let h = SetAction::trivial(Group::cyclic(2), 3).unwrap();
        let triv = Cocycle::trivial(act.clone());
        let sys = commuting_actions_system(act.clone(), &h, &triv).unwrap();
        for g in g3.enumerate().unwrap() {
            for e in 0..6 {
                assert_eq!(sys.cocycle.eval(&g, e), g);
            }
        }
        let zero = Cocycle::identity_valued(act.clone(), g3);
        assert!(commuting_actions_system(act, &h, &zero).is_err());
    }

    #[test]
    fn scan_lists_congruence_classes() {
        let g = rotation(4, 1, Group::Integers);
        let scan = commuting_scan(&g, 9).unwrap();
        assert_eq!(scan[0], vec![-7, -3, 1, 5, 9]);
        let fixed = SetAction::integers(vec![0]).unwrap();
        assert_eq!(commuting_scan(&fixed, 2).unwrap()[0].len(), 5);
    }
}

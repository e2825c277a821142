use std::sync::Arc;

use crate::cocycle::{Cocycle, GraphAction, SetAction};
use crate::group::{Elem, Group};

use super::{signature, CohomologyError, CohomologyWitness};

fn transitive_tau(phi: &Cocycle) -> Result<&[u32], CohomologyError> {
    let tau = phi.action().tau().ok_or_else(|| {
        CohomologyError::NotApplicable(format!("needs G = integers, not {}", phi.group()))
    })?;
    if phi.size() == 0 || !phi.action().is_transitive() {
        return Err(CohomologyError::Precondition("the action is not transitive".into()));
    }
    Ok(tau)
}

/// The cocycle with generating function equal to `c` at τ⁻¹(0) and the
/// identity elsewhere; on the translation k ↦ k+1 of ℤ_a this is ξ_c.
pub fn canonical_cocycle(action: Arc<SetAction>, target: Group, c: Elem) -> Result<Cocycle, CohomologyError> {
    let tau = action
        .tau()
        .ok_or_else(|| CohomologyError::NotApplicable("needs G = integers".into()))?;
    target.check(&c)?;
    let last = tau.iter().position(|&y| y == 0).ok_or_else(|| {
        CohomologyError::Precondition("empty set".into())
    })?;
    let mut xi = vec![target.identity(); action.size()];
    xi[last] = c;
    Ok(Cocycle::generating(action, target, xi)?)
}

/// c = φ(a, 0) and ψ(τᵏ0) = φ(k, 0)⁻¹ for 0 ≤ k < a, so that
/// ψ(τx)·ξ(x)·ψ(x)⁻¹ vanishes except at τ⁻¹(0). For abelian T, c is the
/// signature.
pub fn canonical_form_za(phi: &Cocycle) -> Result<(Elem, CohomologyWitness), CohomologyError> {
    let tau = transitive_tau(phi)?;
    let t = phi.target();
    let xi = phi.xi().expect("generating");
    let a = phi.size();
    let mut psi = vec![t.identity(); a];
    // running value φ(k, 0)
    let mut acc = t.identity();
    let mut x = 0usize;
    for _ in 0..a {
        psi[x] = t.inv(&acc);
        acc = t.mul(&xi[x], &acc);
        x = tau[x] as usize;
    }
    if t.is_abelian() {
        debug_assert_eq!(acc, signature(phi)?);
    }
    Ok((acc, CohomologyWitness::set(psi)))
}

/// Result of [`transitive_conjugacy`]. `theta[x]` is the image in S′ of
/// x ∈ S, `transported` is φ moved to S′ along θ, and `witness` carries
/// `transported` to φ′.
#[derive(Clone, Debug)]
pub struct Conjugacy {
    pub theta: Vec<usize>,
    pub transported: Cocycle,
    pub witness: CohomologyWitness,
}

/// Decides cohomology conjugacy of two transitive ℤ-systems on finite sets
/// with abelian target: Some iff |S| = |S′| and the signatures agree.
pub fn transitive_conjugacy(phi: &Cocycle, phi2: &Cocycle) -> Result<Option<Conjugacy>, CohomologyError> {
    let tau = transitive_tau(phi)?;
    let tau2 = transitive_tau(phi2)?;
    if phi.target() != phi2.target() {
        return Err(CohomologyError::Precondition("cocycles have different targets".into()));
    }
    let t = phi.target();
    if phi.size() != phi2.size() || signature(phi)? != signature(phi2)? {
        return Ok(None);
    }
    let n = phi.size();
    let mut theta = vec![0usize; n];
    let (mut x, mut y) = (0usize, 0usize);
    for _ in 0..n {
        theta[x] = y;
        x = tau[x] as usize;
        y = tau2[y] as usize;
    }
    let xi = phi.xi().expect("generating");
    let mut moved = vec![t.identity(); n];
    for (x, v) in xi.iter().enumerate() {
        moved[theta[x]] = v.clone();
    }
    let transported = Cocycle::generating(phi2.action().clone(), t.clone(), moved)?;
    let (_, w1) = canonical_form_za(&transported)?;
    let (_, w2) = canonical_form_za(phi2)?;
    let witness = CohomologyWitness::set(
        w1.values
            .iter()
            .zip(&w2.values)
            .map(|(a, b)| t.mul(&t.inv(b), a))
            .collect(),
    );
    Ok(Some(Conjugacy {
        theta,
        transported,
        witness,
    }))
}

/// For an action fixing sources, returns an equivariant ψ: E¹ → G
/// (ψ(g·e) = g·ψ(e)) when G acts freely on E¹, and None otherwise. ψ carries
/// the identity-valued cocycle to (g, e) ↦ g, so the latter is a coboundary.
pub fn is_translation_coboundary(action: &GraphAction) -> Result<Option<CohomologyWitness>, CohomologyError> {
    if let Some((g, e)) = action.source_moving_witness() {
        return Err(CohomologyError::Precondition(format!(
            "{g} moves the source of edge {}",
            action.graph().edge_name(e)
        )));
    }
    let edges = action.edge_action();
    let n = edges.size();
    let Some(elements) = edges.elements() else {
        // an infinite group cannot act freely on a nonempty finite set
        return Ok((n == 0).then(|| CohomologyWitness::edges(Vec::new())));
    };
    let mut psi: Vec<Option<Elem>> = vec![None; n];
    for rep in 0..n {
        if psi[rep].is_some() {
            continue;
        }
        for g in elements {
            let y = edges.act(g, rep);
            if psi[y].is_some() {
                return Ok(None);
            }
            psi[y] = Some(g.clone());
        }
    }
    Ok(Some(CohomologyWitness::edges(psi.into_iter().map(Option::unwrap).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::validate_graph_cocycle;
    use crate::cohomology::{apply_witness, verify_cohomologous, verify_graph_cohomologous};
    use crate::graph::Graph;
    use proptest::prelude::*;

    fn translation(a: usize) -> Arc<SetAction> {
        Arc::new(SetAction::integers((0..a).map(|k| (k + 1) % a).collect()).unwrap())
    }

    fn ints(v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| Elem::int(x)).collect()
    }

    /// n·k = (k+nb) mod a, φ(n,k) = ⌊(k+nb)/a⌋.
    fn phi_ab(a: i64, b: i64) -> Cocycle {
        let tau = (0..a).map(|k| ((k + b) % a) as usize).collect();
        let act = Arc::new(SetAction::integers(tau).unwrap());
        let xi = (0..a).map(|k| Elem::int((k + b) / a)).collect();
        Cocycle::generating(act, Group::Integers, xi).unwrap()
    }

    #[test]
    fn canonical_is_fixed() {
        let a = translation(4);
        let phi = canonical_cocycle(a, Group::Integers, Elem::int(3)).unwrap();
        assert_eq!(phi.xi().unwrap(), ints(&[0, 0, 0, 3]).as_slice());
        let (c, psi) = canonical_form_za(&phi).unwrap();
        assert_eq!(c, Elem::int(3));
        assert!(psi.values.iter().all(|v| *v == Elem::int(0)));
    }

    #[test]
    fn phi_32_is_canonical_two() {
        let phi = phi_ab(3, 2);
        assert_eq!(signature(&phi).unwrap(), Elem::int(2));
        let (c, psi) = canonical_form_za(&phi).unwrap();
        assert_eq!(c, Elem::int(2));
        let canon = canonical_cocycle(phi.action().clone(), Group::Integers, c).unwrap();
        assert!(verify_cohomologous(&phi, &canon, &psi));
    }

    #[test]
    fn signatures_of_dynamical_cocycles() {
        for a in 1..6 {
            for b in 0..7 {
                assert_eq!(signature(&phi_ab(a, b)).unwrap(), Elem::int(b));
            }
        }
    }

    #[test]
    fn non_transitive_rejected() {
        let act = Arc::new(SetAction::integers(vec![1, 0, 2]).unwrap());
        let phi = Cocycle::identity_valued(act, Group::Integers);
        assert!(canonical_form_za(&phi).is_err());
        assert!(transitive_conjugacy(&phi, &phi).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        let phi = phi_ab(2, 1);
        let same = transitive_conjugacy(&phi, &phi).unwrap().unwrap();
        assert_eq!(same.theta, vec![0, 1]);
        assert!(verify_cohomologous(&same.transported, &phi, &same.witness));
        let other = phi_ab(2, 3);
        assert!(transitive_conjugacy(&phi, &other).unwrap().is_none());
        // orbit {1, 3} of ℤ₄ under k ↦ k+2 with φ_{4,2}: θ: k ↦ 1+2k onto φ_{2,1}
        let big = phi_ab(4, 2);
        let orbit = [1usize, 3];
        let sub = big.restrict(&orbit).unwrap();
        let c = transitive_conjugacy(&phi, &sub).unwrap().unwrap();
        assert_eq!(c.theta, vec![0, 1]);
        assert!(verify_cohomologous(&c.transported, &sub, &c.witness));
    }

    #[test]
    fn coboundary_examples() {
        // left translation of ℤ₃ on the loops of a bouquet
        let g = Group::cyclic(3);
        let graph = Arc::new(Graph::new(vec!["v"], vec![("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v")]).unwrap());
        let one = g.parse_elem("1").unwrap();
        let va = Arc::new(SetAction::from_generators(g.clone(), 1, vec![(one.clone(), vec![0])]).unwrap());
        let ea = Arc::new(SetAction::from_generators(g.clone(), 3, vec![(one, vec![1, 2, 0])]).unwrap());
        let ga = GraphAction::new(graph.clone(), va.clone(), ea.clone()).unwrap();
        let psi = is_translation_coboundary(&ga).unwrap().unwrap();
        assert_eq!(psi.values, vec![g.parse_elem("0").unwrap(), g.parse_elem("1").unwrap(), g.parse_elem("2").unwrap()]);
        let triv = Cocycle::trivial(ea.clone());
        let zero = Cocycle::identity_valued(ea.clone(), g.clone());
        assert!(verify_graph_cohomologous(&ga, &zero, &triv, &psi));
        assert!(validate_graph_cocycle(&ga, &triv, true).unwrap().is_valid());
        // trivial action is not free
        let t = GraphAction::trivial(graph, g).unwrap();
        assert!(is_translation_coboundary(&t).unwrap().is_none());
    }

    #[test]
    fn coboundary_requires_fixed_sources() {
        let g = Group::cyclic(2);
        let one = g.parse_elem("1").unwrap();
        let graph = Arc::new(Graph::new(vec!["a", "b"], vec![("e", "b", "a"), ("f", "a", "b")]).unwrap());
        let va = Arc::new(SetAction::from_generators(g.clone(), 2, vec![(one.clone(), vec![1, 0])]).unwrap());
        let ea = Arc::new(SetAction::from_generators(g, 2, vec![(one, vec![1, 0])]).unwrap());
        let ga = GraphAction::new(graph, va, ea).unwrap();
        assert!(matches!(is_translation_coboundary(&ga), Err(CohomologyError::Precondition(_))));
    }

    proptest! {
        #[test]
        fn canonical_witness_verifies(a in 1usize..7, xi in proptest::collection::vec(-3i64..=3, 6), shift in 0usize..6) {
            let tau: Vec<usize> = (0..a).map(|k| (k + 1) % a).collect();
            // relabel the cycle so that 0 is not always followed by 1
            let perm: Vec<usize> = (0..a).map(|k| (k * (shift % a.max(1) + 1) + shift) % a).collect();
            let bij = {
                let mut seen = vec![false; a];
                perm.iter().all(|&p| !std::mem::replace(&mut seen[p], true))
            };
            let tau = if bij {
                let mut t = vec![0; a];
                for k in 0..a { t[perm[k]] = perm[tau[k]]; }
                t
            } else { tau };
            let act = Arc::new(SetAction::integers(tau).unwrap());
            let phi = Cocycle::generating(act.clone(), Group::Integers, ints(&xi[..a])).unwrap();
            let (c, psi) = canonical_form_za(&phi).unwrap();
            prop_assert_eq!(&c, &signature(&phi).unwrap());
            let canon = canonical_cocycle(act, Group::Integers, c).unwrap();
            prop_assert!(verify_cohomologous(&phi, &canon, &psi));
            let twisted = apply_witness(&phi, &psi).unwrap();
            prop_assert_eq!(twisted.xi().unwrap(), canon.xi().unwrap());
        }

        #[test]
        fn conjugacy_iff_signatures_match(a in 1usize..6, x in proptest::collection::vec(-3i64..=3, 5), y in proptest::collection::vec(-3i64..=3, 5), b in 1usize..6) {
            let b = (b % a).max(1);
            let b = if num_integer::gcd(a, b) == 1 { b } else { 1 };
            let tau1: Vec<usize> = (0..a).map(|k| (k + 1) % a).collect();
            let tau2: Vec<usize> = (0..a).map(|k| (k + b) % a).collect();
            let p1 = Cocycle::generating(Arc::new(SetAction::integers(tau1).unwrap()), Group::Integers, ints(&x[..a])).unwrap();
            let p2 = Cocycle::generating(Arc::new(SetAction::integers(tau2.clone()).unwrap()), Group::Integers, ints(&y[..a])).unwrap();
            let res = transitive_conjugacy(&p1, &p2).unwrap();
            prop_assert_eq!(res.is_some(), signature(&p1).unwrap() == signature(&p2).unwrap());
            if let Some(c) = res {
                for k in 0..a {
                    prop_assert_eq!(c.theta[(k + 1) % a], tau2[c.theta[k]]);
                }
                prop_assert!(verify_cohomologous(&c.transported, &p2, &c.witness));
            }
        }
    }
}

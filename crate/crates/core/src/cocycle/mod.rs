//! Group actions on finite sets and graphs, cocycles, validation, induced
//! actions and the self-similar extension to words and paths.

mod action;
mod extend;
mod map;
mod validate;

pub use action::{GraphAction, SetAction};
pub use extend::{
    act_path, act_word, check_path_extension, check_paths_match_words, extend_to_paths, extend_to_words, words_up_to,
    Extension, ExtensionReport,
};
pub use map::{induced_product_action, Cocycle, InducedAction};
pub use validate::{
    validate_cocycle, validate_graph_cocycle, IdentityViolation, ValidationReport, VertexViolation,
};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("point {0} is outside the acted-on set")]
    Domain(usize),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("element {g} does not act by a graph automorphism (edge {e})")]
    NotAnAutomorphism { g: String, e: String },
    #[error("generator data violates the cocycle identity at ({g}, {x})")]
    Inconsistent { g: String, x: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, Path};
    use crate::group::{Elem, Group};
    use proptest::prelude::*;
    use std::sync::Arc;

    /// φ_{2,1} on the two-letter set: τ = swap, ξ = (0, 1).
    fn odometer() -> Cocycle {
        let a = Arc::new(SetAction::integers(vec![1, 0]).unwrap());
        Cocycle::generating(a, Group::Integers, vec![Elem::int(0), Elem::int(1)]).unwrap()
    }

    fn bouquet_action(phi: &Cocycle) -> GraphAction {
        let n = phi.size();
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let graph = Graph::new(vec!["v".to_string()], names.iter().map(|e| (e.clone(), "v".to_string(), "v".to_string())).collect()).unwrap();
        let v = SetAction::trivial(phi.group().clone(), 1).unwrap();
        GraphAction::new(Arc::new(graph), Arc::new(v), phi.action().clone()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let phi = odometer();
        assert_eq!(phi.eval(&Elem::int(1), 0), Elem::int(0));
        assert_eq!(phi.eval(&Elem::int(1), 1), Elem::int(1));
        assert_eq!(phi.eval(&Elem::int(2), 0), Elem::int(1));
        assert_eq!(phi.eval(&Elem::int(0), 1), Elem::int(0));
        // floor((m + k)/2) for every m
        for m in -20i64..20 {
            for k in 0..2 {
                assert_eq!(phi.eval(&Elem::int(m), k), Elem::int((m + k as i64).div_euclid(2)));
            }
        }
        let triv = Cocycle::trivial(phi.action().clone());
        assert_eq!(triv.eval(&Elem::int(5), 1), Elem::int(5));
        assert!(phi.evaluate(&Elem::int(1), 2).is_err());
        assert!(phi.evaluate(&Group::cyclic(2).identity(), 0).is_err());
    }

    #[test]
    fn nonabelian_target_telescopes_in_order() {
        // ℤ acting on 3 points cyclically, S₃-valued generating function.
        let s3 = Group::symmetric(3);
        let a = Arc::new(SetAction::integers(vec![1, 2, 0]).unwrap());
        let xi = vec![
            Elem::Perm(vec![1, 0, 2]),
            Elem::Perm(vec![0, 2, 1]),
            Elem::Perm(vec![1, 2, 0]),
        ];
        let phi = Cocycle::generating(a.clone(), s3.clone(), xi.clone()).unwrap();
        // naive product ξ(τ^{n−1}x)···ξ(x)
        let naive = |n: usize, x: usize| {
            let mut acc = s3.identity();
            let mut y = x;
            for _ in 0..n {
                acc = s3.mul(&xi[y], &acc);
                y = (y + 1) % 3;
            }
            acc
        };
        for n in 0..20usize {
            for x in 0..3 {
                assert_eq!(phi.eval(&Elem::int(n as i64), x), naive(n, x), "n={n} x={x}");
            }
        }
        for m in -8i64..=8 {
            for n in -8i64..=8 {
                for x in 0..3 {
                    let lhs = phi.eval(&Elem::int(m + n), x);
                    let rhs = s3.mul(&phi.eval(&Elem::int(m), a.act(&Elem::int(n), x)), &phi.eval(&Elem::int(n), x));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn validation_examples() {
        // (g, e) ↦ g on a graph action is valid
        let graph = Arc::new(Graph::new(vec!["a", "b"], vec![("e", "a", "b"), ("f", "b", "a")]).unwrap());
        let g = Group::cyclic(2);
        let one = g.parse_elem("1").unwrap();
        let v = Arc::new(SetAction::from_generators(g.clone(), 2, vec![(one.clone(), vec![1, 0])]).unwrap());
        let e = Arc::new(SetAction::from_generators(g.clone(), 2, vec![(one.clone(), vec![1, 0])]).unwrap());
        let act = GraphAction::new(graph, v, e.clone()).unwrap();
        let triv = Cocycle::trivial(e.clone());
        assert!(validate_graph_cocycle(&act, &triv, true).unwrap().is_valid());
        // the constant-identity map fails on an action moving sources
        let constant = Cocycle::identity_valued(e, g.clone());
        let report = validate_graph_cocycle(&act, &constant, false).unwrap();
        assert!(report.identity.is_empty());
        assert!(report.vertex.iter().any(|w| w.g == one));
        // an arbitrary table breaking the identity is reported
        let a = Arc::new(SetAction::trivial(g.clone(), 1).unwrap());
        let bad = Cocycle::from_table(a, g.clone(), vec![(g.identity(), vec![one.clone()]), (one.clone(), vec![one.clone()])]).unwrap();
        let r = validate_cocycle(&bad);
        assert!(!r.is_valid());
        assert!(r.identity.contains(&IdentityViolation { g: g.identity(), h: g.identity(), x: 0 }));
    }

    #[test]
    fn inconsistent_generator_data_is_rejected() {
        let g = Group::cyclic(2);
        let one = g.parse_elem("1").unwrap();
        let a = Arc::new(SetAction::trivial(g.clone(), 1).unwrap());
        // φ(1,x) = 1 forces φ(0,x) = φ(1,x)φ(1,x) = 0, consistent
        assert!(Cocycle::from_generators(a.clone(), g.clone(), vec![(one.clone(), vec![one.clone()])]).is_ok());
        // ℤ-valued on ℤ₂: φ(1)=1 forces φ(0)=2 ≠ 0
        assert!(matches!(
            Cocycle::from_generators(a, Group::Integers, vec![(one, vec![Elem::int(1)])]),
            Err(CocycleError::Inconsistent { .. })
        ));
    }

    #[test]
    fn full_tables_rejected_for_integers() {
        let a = Arc::new(SetAction::integers(vec![0]).unwrap());
        assert!(matches!(
            Cocycle::from_table(a, Group::Integers, vec![(Elem::int(0), vec![Elem::int(0)])]),
            Err(CocycleError::Unsupported(_))
        ));
    }

    #[test]
    fn z2_squares_are_checked() {
        let g = Group::free_abelian(2);
        let e1 = g.parse_elem("(1,0)").unwrap();
        let e2 = g.parse_elem("(0,1)").unwrap();
        let a = Arc::new(SetAction::from_generators(g.clone(), 1, vec![(e1.clone(), vec![0]), (e2.clone(), vec![0])]).unwrap());
        let z = Group::Integers;
        let good = Cocycle::from_generators(a.clone(), z.clone(), vec![(e1.clone(), vec![Elem::int(2)]), (e2.clone(), vec![Elem::int(3)])]).unwrap();
        assert!(validate_cocycle(&good).is_valid());
        assert_eq!(good.eval(&g.parse_elem("(2,-1)").unwrap(), 0), Elem::int(1));
        let s3 = Group::symmetric(3);
        let bad = Cocycle::from_generators(a, s3, vec![(e1, vec![Elem::Perm(vec![1, 0, 2])]), (e2, vec![Elem::Perm(vec![0, 2, 1])])]).unwrap();
        assert_eq!(validate_cocycle(&bad).identity.len(), 1);
    }

    #[test]
    fn induced_action_examples() {
        let phi = odometer();
        let ind = induced_product_action(&phi);
        assert_eq!(ind.act(&Elem::int(1), &(1, Elem::int(0))), (0, Elem::int(1)));
        let triv = Cocycle::identity_valued(phi.action().clone(), Group::Integers);
        assert_eq!(induced_product_action(&triv).act(&Elem::int(3), &(0, Elem::int(7))), (1, Elem::int(7)));
        // finite T: the product action validates
        let g = Group::symmetric(3);
        let a = Arc::new(SetAction::from_generators(g.clone(), 3, g.generators().into_iter().map(|s| {
            let Elem::Perm(p) = &s else { unreachable!() };
            let img = p.iter().map(|&i| i as usize).collect();
            (s, img)
        }).collect()).unwrap());
        let diag = Cocycle::trivial(a);
        let (set, ts) = induced_product_action(&diag).to_set_action().unwrap();
        assert_eq!(set.size(), 18);
        assert_eq!(ts.len(), 6);
    }

    #[test]
    fn word_extension_examples() {
        let phi = odometer();
        let ext = extend_to_words(&phi, 3).unwrap();
        let empty = ext.index_of(&vec![]).unwrap();
        assert_eq!(ext.action.act(&Elem::int(5), empty), empty);
        assert_eq!(ext.cocycle.eval(&Elem::int(5), empty), Elem::int(5));
        let w11 = ext.index_of(&vec![1, 1]).unwrap();
        assert_eq!(ext.points[ext.action.act(&Elem::int(1), w11)], vec![0, 0]);
        // trivial cocycle extends diagonally
        let triv = Cocycle::trivial(phi.action().clone());
        let ext = extend_to_words(&triv, 3).unwrap();
        let w = ext.index_of(&vec![0, 0, 1]).unwrap();
        assert_eq!(ext.points[ext.action.act(&Elem::int(1), w)], vec![1, 1, 0]);
    }

    #[test]
    fn path_extension_examples() {
        let phi = odometer();
        let act = bouquet_action(&phi);
        let paths = extend_to_paths(&act, &phi, 4).unwrap();
        let words = extend_to_words(&phi, 4).unwrap();
        for g in Group::Integers.ball(6) {
            for (i, p) in paths.points.iter().enumerate() {
                let w: Vec<u32> = p.edges().map(|e| e as u32).collect();
                let j = words.index_of(&w).unwrap();
                let pi = &paths.points[paths.action.act(&g, i)];
                assert_eq!(pi.edges().map(|e| e as u32).collect::<Vec<_>>(), words.points[words.action.act(&g, j)]);
                assert_eq!(paths.cocycle.eval(&g, i), words.cocycle.eval(&g, j));
            }
        }
        // length-1 paths restrict to φ
        for e in 0..2 {
            let i = paths.index_of(&Path::edge(act.graph(), e)).unwrap();
            assert_eq!(paths.cocycle.eval(&Elem::int(3), i), phi.eval(&Elem::int(3), e));
        }
        // two-cycle with swap and trivial cocycle
        let graph = Arc::new(Graph::new(vec!["a", "b"], vec![("e1", "a", "b"), ("e2", "b", "a")]).unwrap());
        let g = Group::cyclic(2);
        let one = g.parse_elem("1").unwrap();
        let v = Arc::new(SetAction::from_generators(g.clone(), 2, vec![(one.clone(), vec![1, 0])]).unwrap());
        let e = Arc::new(SetAction::from_generators(g.clone(), 2, vec![(one.clone(), vec![1, 0])]).unwrap());
        let act = GraphAction::new(graph.clone(), v, e.clone()).unwrap();
        let triv = Cocycle::trivial(e);
        let ext = extend_to_paths(&act, &triv, 2).unwrap();
        let p = Path::new(&graph, &[0, 1]).unwrap();
        let q = &ext.points[ext.action.act(&one, ext.index_of(&p).unwrap())];
        assert_eq!(q, &Path::new(&graph, &[1, 0]).unwrap());
    }

    proptest! {
        #[test]
        fn telescoping_survives_negative_arguments(
            tau_seed in proptest::collection::vec(any::<u32>(), 1..6),
            xi in proptest::collection::vec(-5i64..5, 6),
            m in -8i64..=8, n in -8i64..=8,
        ) {
            let size = tau_seed.len();
            let mut tau: Vec<usize> = (0..size).collect();
            for (i, s) in tau_seed.iter().enumerate() {
                tau.swap(i, *s as usize % size);
            }
            let a = Arc::new(SetAction::integers(tau).unwrap());
            let phi = Cocycle::generating(a.clone(), Group::Integers, xi[..size].iter().map(|&v| Elem::int(v)).collect()).unwrap();
            for x in 0..size {
                let lhs = phi.eval(&Elem::int(m + n), x);
                let rhs = Group::Integers.mul(&phi.eval(&Elem::int(m), a.act(&Elem::int(n), x)), &phi.eval(&Elem::int(n), x));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn ss1_on_all_splittings(xi in proptest::collection::vec(-3i64..3, 3), g in -6i64..6) {
            let a = Arc::new(SetAction::integers(vec![1, 2, 0]).unwrap());
            let phi = Cocycle::generating(a, Group::Integers, xi.into_iter().map(Elem::int).collect()).unwrap();
            let ext = extend_to_words(&phi, 4).unwrap();
            let g = Elem::int(g);
            for (i, w) in ext.points.iter().enumerate() {
                for k in 0..=w.len() {
                    let (v, u) = w.split_at(k);
                    let gv = &ext.points[ext.action.act(&g, ext.index_of(&v.to_vec()).unwrap())];
                    let h = ext.cocycle.eval(&g, ext.index_of(&v.to_vec()).unwrap());
                    let hu = &ext.points[ext.action.act(&h, ext.index_of(&u.to_vec()).unwrap())];
                    let mut joined = gv.clone();
                    joined.extend_from_slice(hu);
                    prop_assert_eq!(&ext.points[ext.action.act(&g, i)], &joined);
                    prop_assert_eq!(ext.cocycle.eval(&g, i), ext.cocycle.eval(&h, ext.index_of(&u.to_vec()).unwrap()));
                }
            }
        }

        #[test]
        fn induced_action_is_an_action(vals in proptest::collection::vec(0u64..3, 2)) {
            // ℤ₂ acting on two points by swap, ℤ₃-valued cocycle from generator data
            let g = Group::cyclic(2);
            let t = Group::cyclic(3);
            let one = g.parse_elem("1").unwrap();
            let a = Arc::new(SetAction::from_generators(g.clone(), 2, vec![(one.clone(), vec![1, 0])]).unwrap());
            let row: Vec<Elem> = vals.iter().map(|&v| Elem::Cyclic { modulus: 3, residue: v }).collect();
            match Cocycle::from_generators(a, t, vec![(one, row)]) {
                Ok(phi) => {
                    prop_assert!(validate_cocycle(&phi).is_valid());
                    prop_assert!(induced_product_action(&phi).to_set_action().is_ok());
                }
                Err(CocycleError::Inconsistent { .. }) => {
                    // the two values must be mutually inverse
                    prop_assert!((vals[0] + vals[1]) % 3 != 0);
                }
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}

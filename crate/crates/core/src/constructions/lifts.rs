use std::sync::Arc;

use crate::cocycle::{extend_to_words, Cocycle, GraphAction, SetAction};
use crate::group::Elem;

use super::{
    bouquet, general_strings, sink_free_graph, tree_graph, with_fixed_point, word_name, ConstructionError, System,
};

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn g_valued(phi: &Cocycle) -> Result<(), ConstructionError> {
    if phi.target() != phi.group() {
        return Err(ConstructionError::Parameters(format!(
            "graph systems need a G-valued cocycle; target is {}",
            phi.target()
        )));
    }
    Ok(())
}

/// (S, G, φ) on the bouquet E_S. Edges are labeled `0..|S|` unless labels
/// are given.
pub fn bouquet_system(phi: &Cocycle, labels: Option<&[String]>) -> Result<System, ConstructionError> {
    g_valued(phi)?;
    let owned = default_labels(phi.size());
    let graph = Arc::new(bouquet(labels.unwrap_or(&owned))?);
    let v = Arc::new(SetAction::trivial(phi.group().clone(), 1)?);
    let action = GraphAction::new(graph, v, phi.action().clone())?;
    System::new(action, phi.clone())
}

/// (S, G, φ) on the strings graph F_S, with ω fixed.
pub fn lift_system_to_strings(phi: &Cocycle) -> Result<System, ConstructionError> {
    g_valued(phi)?;
    let labels = default_labels(phi.size());
    let rho: Vec<usize> = (0..phi.size()).collect();
    let graph = Arc::new(general_strings(&labels, &labels, &rho)?);
    let v = Arc::new(with_fixed_point(phi.action())?);
    let action = GraphAction::new(graph, v, phi.action().clone())?;
    System::new(action, phi.clone())
}

/// F⁰ = I ∪ {ω}, F¹ = S, r = ρ for a G-equivariant ρ: S → I.
pub fn general_strings_system(
    phi: &Cocycle,
    i_action: &SetAction,
    rho: &[usize],
) -> Result<System, ConstructionError> {
    g_valued(phi)?;
    if i_action.group() != phi.group() {
        return Err(ConstructionError::Parameters("I and S carry different groups".into()));
    }
    let labels = default_labels(phi.size());
    let targets: Vec<String> = (0..i_action.size()).map(|i| format!("i{i}")).collect();
    let graph = Arc::new(general_strings(&labels, &targets, rho)?);
    for g in phi.group().generators() {
        for (x, &r) in rho.iter().enumerate() {
            if rho[phi.action().act(&g, x)] != i_action.act(&g, r) {
                return Err(ConstructionError::Constraint(format!("ρ is not equivariant at ({g}, {x})")));
            }
        }
    }
    let v = Arc::new(with_fixed_point(i_action)?);
    let action = GraphAction::new(graph, v, phi.action().clone())?;
    System::new(action, phi.clone())
}

/// The sink-free graph K with φ̃(g,(x,ω)) = φ(g,x), φ̃(g,(x,y)) = g, and
/// φ̃(g, loop) = g on the optional loops at ω.
pub fn sink_free_system(
    phi: &Cocycle,
    t_action: &SetAction,
    omega_loops: usize,
) -> Result<System, ConstructionError> {
    g_valued(phi)?;
    let group = phi.group().clone();
    if t_action.group() != &group {
        return Err(ConstructionError::Parameters("T and S carry different groups".into()));
    }
    let (n, m) = (phi.size(), t_action.size());
    let labels = default_labels(n);
    let t_labels: Vec<String> = (0..m).map(|i| format!("t{i}")).collect();
    let graph = Arc::new(sink_free_graph(&labels, &t_labels, omega_loops)?);
    let s = phi.action();
    let width = m + 1;
    let edge_count = n * width + omega_loops;
    let edge_image = |g: &Elem, e: usize| -> usize {
        if e >= n * width {
            return e;
        }
        let (x, j) = (e / width, e % width);
        let gx = s.act(g, x);
        if j == 0 {
            gx * width
        } else {
            gx * width + 1 + t_action.act(g, j - 1)
        }
    };
    let gens = group
        .generators()
        .into_iter()
        .map(|g| {
            let img = (0..edge_count).map(|e| edge_image(&g, e)).collect();
            (g, img)
        })
        .collect();
    let edges = Arc::new(SetAction::from_generators(group.clone(), edge_count, gens)?);
    let vertices = Arc::new(with_fixed_point(s)?);
    let cocycle = Cocycle::from_fn(edges.clone(), group, |g, e| {
        if e < n * width && e % width == 0 {
            phi.eval(g, e / width)
        } else {
            g.clone()
        }
    })?;
    let action = GraphAction::new(graph, vertices, edges)?;
    System::new(action, cocycle)
}

/// Status of the tree-lift conditions: CT3 is φ(g,x)·x = g·x on letters,
/// CT2 is φ(g,w)·w = g·w on every nonempty word up to the depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeReport {
    pub depth: usize,
    pub ct3_violations: Vec<(Elem, Vec<u32>)>,
    pub ct2_violations: Vec<(Elem, Vec<u32>)>,
}

impl TreeReport {
    pub fn ct3(&self) -> bool {
        self.ct3_violations.is_empty()
    }

    pub fn ct2(&self) -> bool {
        self.ct2_violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct TreeLift {
    pub words: Vec<Vec<u32>>,
    pub report: TreeReport,
    /// Present exactly when CT2 holds up to the depth.
    pub system: Option<System>,
}

impl TreeLift {
    pub fn word_label(&self, labels: &[String], i: usize) -> String {
        word_name(labels, &self.words[i])
    }
}

/// Extends (S, G, φ) to the rooted tree of depth L and reports CT2/CT3. For
/// ℤⁿ the conditions are checked on the standard generators, which suffices
/// for cocycles.
pub fn lift_system_to_tree(phi: &Cocycle, depth: usize) -> Result<TreeLift, ConstructionError> {
    g_valued(phi)?;
    let ext = extend_to_words(phi, depth)?;
    let checks = ext.action.check_elements();
    let mut ct2 = Vec::new();
    let mut ct3 = Vec::new();
    for g in &checks {
        for (i, w) in ext.points.iter().enumerate().skip(1) {
            let h = ext.cocycle.eval(g, i);
            if ext.action.act(&h, i) != ext.action.act(g, i) {
                if w.len() == 1 {
                    ct3.push((g.clone(), w.clone()));
                }
                ct2.push((g.clone(), w.clone()));
            }
        }
    }
    let report = TreeReport {
        depth,
        ct3_violations: ct3,
        ct2_violations: ct2,
    };
    let system = if report.ct2() && depth >= 1 {
        let labels = default_labels(phi.size());
        let graph = Arc::new(tree_graph(&labels, depth)?);
        let nonempty: Vec<usize> = (1..ext.points.len()).collect();
        let cocycle = ext.cocycle.restrict(&nonempty)?;
        let action = GraphAction::new(graph, ext.action.clone(), cocycle.action().clone())?;
        Some(System::new(action, cocycle)?)
    } else {
        None
    };
    Ok(TreeLift {
        words: ext.points,
        report,
        system,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::validate_graph_cocycle;
    use crate::cohomology::is_translation_coboundary;
    use crate::group::Group;
    use proptest::prelude::*;

    fn odometer() -> Cocycle {
        let a = Arc::new(SetAction::integers(vec![1, 0]).unwrap());
        Cocycle::generating(a, Group::Integers, vec![Elem::int(0), Elem::int(1)]).unwrap()
    }

    fn z2_swap_trivial() -> Cocycle {
        let g = Group::cyclic(2);
        let one = g.parse_elem("1").unwrap();
        let a = Arc::new(SetAction::from_generators(g, 2, vec![(one, vec![1, 0])]).unwrap());
        Cocycle::trivial(a)
    }

    /// ℤ₂ swapping a, b and fixing c; φ(1,a) = φ(1,b) = 1, φ(1,c) = 0.
    fn half_trivial() -> Cocycle {
        let g = Group::cyclic(2);
        let (zero, one) = (g.parse_elem("0").unwrap(), g.parse_elem("1").unwrap());
        let a = Arc::new(SetAction::from_generators(g.clone(), 3, vec![(one.clone(), vec![1, 0, 2])]).unwrap());
        Cocycle::from_generators(a, g, vec![(one.clone(), vec![one.clone(), one, zero])]).unwrap()
    }

    #[test]
    fn bouquet_and_strings_lifts() {
        let phi = odometer();
        let b = bouquet_system(&phi, None).unwrap();
        assert_eq!(b.graph().num_vertices(), 1);
        let s = lift_system_to_strings(&phi).unwrap();
        assert_eq!(s.graph().num_vertices(), 3);
        assert!(validate_graph_cocycle(&s.action, &s.cocycle, false).unwrap().is_valid());
        // ℤ₂ translation on itself: the translation cocycle is a coboundary
        let t = lift_system_to_strings(&z2_swap_trivial()).unwrap();
        let psi = is_translation_coboundary(&t.action).unwrap().unwrap();
        let g = Group::cyclic(2);
        assert_eq!(psi.values, vec![g.parse_elem("0").unwrap(), g.parse_elem("1").unwrap()]);
    }

    #[test]
    fn general_strings_requires_equivariance() {
        let phi = z2_swap_trivial();
        let g = Group::cyclic(2);
        let single = SetAction::trivial(g, 1).unwrap();
        assert!(general_strings_system(&phi, &single, &[0, 0]).is_ok());
        let two = SetAction::trivial(Group::cyclic(2), 2).unwrap();
        assert!(matches!(
            general_strings_system(&phi, &two, &[0, 1]),
            Err(ConstructionError::Constraint(_))
        ));
    }

    #[test]
    fn sink_free_lift() {
        let phi = odometer();
        let t = SetAction::integers(vec![0]).unwrap();
        let k = sink_free_system(&phi, &t, 1).unwrap();
        assert_eq!(k.graph().num_edges(), 5);
        assert_eq!(k.cocycle.eval(&Elem::int(1), 2), Elem::int(1));
        assert_eq!(k.cocycle.eval(&Elem::int(1), 1), Elem::int(1));
        assert_eq!(k.cocycle.eval(&Elem::int(3), 0), Elem::int(1));
        let (_, sources) = k.graph().classify_vertices();
        assert!(sources.is_empty());
    }

    #[test]
    fn tree_lifts() {
        let free = lift_system_to_tree(&z2_swap_trivial(), 3).unwrap();
        assert!(free.report.ct3() && free.report.ct2());
        assert!(free.system.is_some());
        let half = lift_system_to_tree(&half_trivial(), 2).unwrap();
        assert!(half.report.ct3());
        assert!(!half.report.ct2());
        // 1·(ac) = bc while φ(1, ac) = 0 fixes ac
        let g = Group::cyclic(2);
        assert!(half.report.ct2_violations.contains(&(g.parse_elem("1").unwrap(), vec![0, 2])));
        assert!(half.system.is_none());
        // the odometer moves letters, so φ(1,0) = 0 fails CT3
        let odo = lift_system_to_tree(&odometer(), 2).unwrap();
        assert!(!odo.report.ct3());
    }

    proptest! {
        #[test]
        fn strings_lift_is_always_valid(xi in proptest::collection::vec(-4i64..=4, 1..6), seed in any::<u64>()) {
            let n = xi.len();
            let mut tau: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                tau.swap(i, (s % (i as u64 + 1)) as usize);
                s /= 7;
            }
            let a = Arc::new(SetAction::integers(tau).unwrap());
            let phi = Cocycle::generating(a, Group::Integers, xi.into_iter().map(Elem::int).collect()).unwrap();
            prop_assert!(lift_system_to_strings(&phi).is_ok());
            prop_assert!(bouquet_system(&phi, None).is_ok());
        }
    }
}

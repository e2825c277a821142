//! Builders for example systems (E, G, φ).

mod dynamical;
mod endomorphism;
mod epk;
mod lifts;
mod pasting;
mod zappa;

pub use dynamical::{
    commuting_actions_system, commuting_scan, dynamical_system_graph, DynamicalOutcome, ReturnSetCheck,
};
pub use endomorphism::{endomorphism_system, IntMatrix};
pub use epk::{epk_decompose, EpkOrbit, EpkSystem};
pub use lifts::{
    bouquet_system, general_strings_system, lift_system_to_strings, lift_system_to_tree, sink_free_system,
    TreeLift, TreeReport,
};
pub use pasting::{katsura_line_graph, katsura_system, pasting_construction, Block};
pub use zappa::{ZappaSzep, ZsElement, ZsReport};

use std::sync::Arc;

use thiserror::Error;

use crate::cocycle::{validate_graph_cocycle, Cocycle, CocycleError, GraphAction, SetAction};
use crate::cohomology::CohomologyError;
use crate::graph::{Graph, GraphError};
use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("result fails validation: {0}")]
    Invalid(String),
}

/// A validated triple (E, G, φ): graph, action and graph cocycle.
#[derive(Clone, Debug)]
pub struct System {
    pub action: GraphAction,
    pub cocycle: Cocycle,
}

impl System {
    /// Validates the cocycle identity and the vertex condition.
    pub fn new(action: GraphAction, cocycle: Cocycle) -> Result<System, ConstructionError> {
        let report = validate_graph_cocycle(&action, &cocycle, false)?;
        if !report.is_valid() {
            let msg = if let Some(v) = report.identity.first() {
                format!("cocycle identity fails at ({}, {}, {})", v.g, v.h, v.x)
            } else {
                let v = &report.vertex[0];
                format!("vertex condition fails at ({}, edge {})", v.g, action.graph().edge_name(v.e))
            };
            return Err(ConstructionError::Invalid(msg));
        }
        Ok(System { action, cocycle })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        self.action.graph()
    }

    pub fn group(&self) -> &crate::group::Group {
        self.action.group()
    }
}

fn check_labels<S: AsRef<str>>(labels: &[S], what: &str) -> Result<(), ConstructionError> {
    if labels.is_empty() {
        return Err(ConstructionError::Parameters(format!("{what} must be nonempty")));
    }
    Ok(())
}

pub const OMEGA: &str = "omega";

/// One vertex with a loop for each label.
pub fn bouquet<S: AsRef<str>>(labels: &[S]) -> Result<Graph, ConstructionError> {
    check_labels(labels, "S")?;
    Ok(Graph::new(
        vec!["v".to_string()],
        labels
            .iter()
            .map(|l| (l.as_ref().to_string(), "v".to_string(), "v".to_string()))
            .collect(),
    )?)
}

/// F⁰ = S ∪ {ω}, F¹ = S, r(x) = x, s(x) = ω.
pub fn strings_graph<S: AsRef<str>>(labels: &[S]) -> Result<Graph, ConstructionError> {
    let rho: Vec<usize> = (0..labels.len()).collect();
    general_strings(labels, labels, &rho)
}

/// F⁰ = I ∪ {ω}, F¹ = S, r(x) = ρ(x), s(x) = ω.
pub fn general_strings<S: AsRef<str>, I: AsRef<str>>(
    labels: &[S],
    targets: &[I],
    rho: &[usize],
) -> Result<Graph, ConstructionError> {
    check_labels(labels, "S")?;
    check_labels(targets, "I")?;
    if rho.len() != labels.len() || rho.iter().any(|&i| i >= targets.len()) {
        return Err(ConstructionError::Parameters("ρ must map S into I".into()));
    }
    let mut vertices: Vec<String> = targets.iter().map(|t| t.as_ref().to_string()).collect();
    vertices.push(OMEGA.into());
    let edges = labels
        .iter()
        .zip(rho)
        .map(|(x, &i)| (x.as_ref().to_string(), targets[i].as_ref().to_string(), OMEGA.to_string()))
        .collect();
    Ok(Graph::new(vertices, edges)?)
}

/// K⁰ = S ∪ {ω}, K¹ = S × (T ∪ {ω}) with r(x,ω) = x, s(x,ω) = ω and
/// r(x,y) = s(x,y) = x, plus `omega_loops` loops at ω. Edge (x, ω) has
/// index x·(|T|+1), edge (x, y) index x·(|T|+1) + 1 + y, loops come last.
pub fn sink_free_graph<S: AsRef<str>, T: AsRef<str>>(
    labels: &[S],
    t_labels: &[T],
    omega_loops: usize,
) -> Result<Graph, ConstructionError> {
    check_labels(labels, "S")?;
    let mut vertices: Vec<String> = labels.iter().map(|t| t.as_ref().to_string()).collect();
    vertices.push(OMEGA.into());
    let mut edges = Vec::new();
    for x in labels {
        let x = x.as_ref();
        edges.push((format!("{x}:{OMEGA}"), x.to_string(), OMEGA.to_string()));
        for y in t_labels {
            edges.push((format!("{x}:{}", y.as_ref()), x.to_string(), x.to_string()));
        }
    }
    for i in 0..omega_loops {
        edges.push((format!("{OMEGA}:loop{i}"), OMEGA.to_string(), OMEGA.to_string()));
    }
    Ok(Graph::new(vertices, edges)?)
}

/// Name of a word in the tree graph: letters concatenated (separated by `.`
/// unless every label is one character), `root` for the empty word.
pub(crate) fn word_name<S: AsRef<str>>(labels: &[S], word: &[u32]) -> String {
    if word.is_empty() {
        return "root".into();
    }
    let compact = labels.iter().all(|l| l.as_ref().chars().count() == 1);
    let parts: Vec<&str> = word.iter().map(|&x| labels[x as usize].as_ref()).collect();
    if compact {
        parts.concat()
    } else {
        parts.join(".")
    }
}

/// The rooted tree truncated at depth L: T⁰ = words of length ≤ L, and an
/// edge (w, wx) with range w and source wx for every nonempty word wx. Vertex
/// and edge orders follow `words_up_to` (edge i is the word i+1).
pub fn tree_graph<S: AsRef<str>>(labels: &[S], depth: usize) -> Result<Graph, ConstructionError> {
    check_labels(labels, "S")?;
    let words = crate::cocycle::words_up_to(labels.len(), depth);
    let vertices: Vec<String> = words.iter().map(|w| word_name(labels, w)).collect();
    let edges = words[1..]
        .iter()
        .map(|w| {
            (
                format!("e:{}", word_name(labels, w)),
                word_name(labels, &w[..w.len() - 1]),
                word_name(labels, w),
            )
        })
        .collect();
    Ok(Graph::new(vertices, edges)?)
}

/// An action on `n` points extended by one fixed point.
pub(crate) fn with_fixed_point(action: &SetAction) -> Result<SetAction, CocycleError> {
    let n = action.size();
    let gens = action
        .generator_images()
        .into_iter()
        .map(|(g, mut img)| {
            img.push(n);
            (g, img)
        })
        .collect();
    SetAction::from_generators(action.group().clone(), n + 1, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_shapes() {
        let b = bouquet(&["0", "1"]).unwrap();
        assert_eq!((b.num_vertices(), b.num_edges()), (1, 2));
        let f = strings_graph(&["0", "1"]).unwrap();
        assert_eq!((f.num_vertices(), f.num_edges()), (3, 2));
        let (_, sources) = f.classify_vertices();
        assert_eq!(sources, vec![2]);
        assert_eq!(f.vertex_name(2), OMEGA);
        assert!((0..2).all(|e| f.source(e) == 2 && f.range(e) == e));
        let t = tree_graph(&["0", "1"], 2).unwrap();
        assert_eq!((t.num_vertices(), t.num_edges()), (7, 6));
        let e = t.edge_index("e:01").unwrap();
        assert_eq!(t.vertex_name(t.range(e)), "0");
        assert_eq!(t.vertex_name(t.source(e)), "01");
        let k = sink_free_graph(&["x", "y"], &["t"], 1).unwrap();
        assert_eq!((k.num_vertices(), k.num_edges()), (3, 5));
        let xt = k.edge_index("x:t").unwrap();
        assert_eq!((k.range(xt), k.source(xt)), (0, 0));
        let xo = k.edge_index("x:omega").unwrap();
        assert_eq!((k.range(xo), k.source(xo)), (0, 2));
        let (_, sources) = k.classify_vertices();
        assert!(sources.is_empty());
        assert!(bouquet::<&str>(&[]).is_err());
    }
}

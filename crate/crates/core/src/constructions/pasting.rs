use std::sync::Arc;

use crate::cocycle::{Cocycle, GraphAction, SetAction};
use crate::graph::Graph;
use crate::group::Group;

use super::{ConstructionError, EpkSystem, System};

/// A set of edges sharing range and source, with an action and cocycle on
/// it; point i of the cocycle is `edges[i]`.
#[derive(Clone, Debug)]
pub struct Block {
    pub edges: Vec<usize>,
    pub cocycle: Cocycle,
}

/// Pastes blockwise actions and cocycles into a system on E with G acting
/// trivially on E⁰.
pub fn pasting_construction(graph: Arc<Graph>, group: Group, blocks: &[Block]) -> Result<System, ConstructionError> {
    let m = graph.num_edges();
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; m];
    for (b, block) in blocks.iter().enumerate() {
        if block.cocycle.group() != &group || block.cocycle.target() != &group {
            return Err(ConstructionError::Parameters(format!("block {b} uses a different group")));
        }
        if block.cocycle.size() != block.edges.len() {
            return Err(ConstructionError::Parameters(format!("block {b} has the wrong size")));
        }
        let Some(&first) = block.edges.first() else {
            return Err(ConstructionError::Parameters(format!("block {b} is empty")));
        };
        for (i, &e) in block.edges.iter().enumerate() {
            if e >= m {
                return Err(ConstructionError::Parameters(format!("block {b} names edge {e}, out of range")));
            }
            if owner[e].replace((b, i)).is_some() {
                return Err(ConstructionError::Parameters(format!(
                    "edge {} lies in two blocks",
                    graph.edge_name(e)
                )));
            }
            if graph.range(e) != graph.range(first) || graph.source(e) != graph.source(first) {
                return Err(ConstructionError::Parameters(format!(
                    "block {b} mixes edges with different range or source"
                )));
            }
        }
    }
    if let Some(e) = owner.iter().position(Option::is_none) {
        return Err(ConstructionError::Parameters(format!(
            "edge {} is in no block",
            graph.edge_name(e)
        )));
    }
    let owner: Vec<(usize, usize)> = owner.into_iter().map(Option::unwrap).collect();
    let gens = group.generators();
    let images = gens
        .iter()
        .map(|g| {
            let img = owner
                .iter()
                .map(|&(b, i)| blocks[b].edges[blocks[b].cocycle.action().act(g, i)])
                .collect();
            (g.clone(), img)
        })
        .collect();
    let values = gens
        .iter()
        .map(|g| {
            let val = owner.iter().map(|&(b, i)| blocks[b].cocycle.eval(g, i)).collect();
            (g.clone(), val)
        })
        .collect();
    let edges = Arc::new(SetAction::from_generators(group.clone(), m, images)?);
    let cocycle = Cocycle::from_generators(edges.clone(), group.clone(), values)?;
    let vertices = Arc::new(SetAction::trivial(group, graph.num_vertices())?);
    let action = GraphAction::new(graph, vertices, edges)?;
    System::new(action, cocycle)
}

/// G = ℤ on E with A(v,w) = |ᵥE¹_w|: each nonempty ᵥE¹_w, in edge order,
/// carries the EPK system for (A(v,w), B(v,w)).
pub fn katsura_system(graph: Arc<Graph>, b: &[Vec<i64>]) -> Result<System, ConstructionError> {
    let n = graph.num_vertices();
    if b.len() != n || b.iter().any(|r| r.len() != n) {
        return Err(ConstructionError::Parameters(format!("B must be {n}×{n}")));
    }
    let mut cells: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for e in 0..graph.num_edges() {
        cells.entry((graph.range(e), graph.source(e))).or_default().push(e);
    }
    let blocks = cells
        .into_iter()
        .map(|((v, w), edges)| {
            let epk = EpkSystem::new(edges.len() as i64, b[v][w])?;
            Ok(Block {
                edges,
                cocycle: epk.cocycle(),
            })
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    pasting_construction(graph, Group::Integers, &blocks)
}

/// E⁰ = {0, …, len}, E¹ = ℤ_a × {1, …, len} with r(t,j) = j−1, s(t,j) = j.
pub fn katsura_line_graph(a: usize, len: usize) -> Result<Graph, ConstructionError> {
    let vertices: Vec<String> = (0..=len).map(|j| j.to_string()).collect();
    let mut edges = Vec::new();
    for j in 1..=len {
        for t in 0..a {
            edges.push((format!("{t}_{j}"), (j - 1).to_string(), j.to_string()));
        }
    }
    Ok(Graph::new(vertices, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{apply_witness, brute_force_cohomologous, signature, CohomologyWitness, SearchOptions};
    use crate::constructions::bouquet;
    use crate::group::Elem;

    #[test]
    fn single_block_is_bouquet() {
        let graph = Arc::new(bouquet(&["0", "1", "2"]).unwrap());
        let epk = EpkSystem::new(3, 2).unwrap();
        let sys = pasting_construction(graph, Group::Integers, &[Block { edges: vec![0, 1, 2], cocycle: epk.cocycle() }]).unwrap();
        assert_eq!(sys.cocycle.xi(), epk.cocycle().xi());
    }

    #[test]
    fn katsura_line() {
        let graph = Arc::new(katsura_line_graph(2, 1).unwrap());
        assert_eq!((graph.num_vertices(), graph.num_edges()), (2, 2));
        let sys = katsura_system(graph.clone(), &[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(sys.cocycle.xi().unwrap(), &[Elem::int(0), Elem::int(1)]);
        assert_eq!(sys.action.edge_action().tau().unwrap(), &[1, 0]);
        let longer = Arc::new(katsura_line_graph(3, 3).unwrap());
        let b = vec![vec![0, 1, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 5], vec![0; 4]];
        let sys = katsura_system(longer, &b).unwrap();
        // per-block signatures recover B along the subdiagonal
        for (j, expect) in [(1usize, 1i64), (2, 2), (3, 5)] {
            let block: Vec<usize> = (0..3).map(|t| 3 * (j - 1) + t).collect();
            let restricted = sys.cocycle.restrict(&block).unwrap();
            assert_eq!(signature(&restricted).unwrap(), Elem::int(expect));
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        let graph = Arc::new(katsura_line_graph(2, 2).unwrap());
        let epk = EpkSystem::new(2, 1).unwrap().cocycle();
        // mixes (0,1) and (1,2) edges
        let bad = [Block { edges: vec![0, 2], cocycle: epk.clone() }, Block { edges: vec![1, 3], cocycle: epk.clone() }];
        assert!(pasting_construction(graph.clone(), Group::Integers, &bad).is_err());
        let missing = [Block { edges: vec![0, 1], cocycle: epk.clone() }];
        assert!(pasting_construction(graph.clone(), Group::Integers, &missing).is_err());
        let twice = [
            Block { edges: vec![0, 1], cocycle: epk.clone() },
            Block { edges: vec![0, 1], cocycle: epk.clone() },
            Block { edges: vec![2, 3], cocycle: epk },
        ];
        assert!(pasting_construction(graph, Group::Integers, &twice).is_err());
    }

    #[test]
    fn blockwise_cohomology() {
        let graph = Arc::new(katsura_line_graph(2, 2).unwrap());
        let s1 = katsura_system(graph.clone(), &[vec![0, 1, 0], vec![0, 0, 3], vec![0; 3]]).unwrap();
        // twisting each block separately stays within the class
        let w = CohomologyWitness::set(vec![Elem::int(1), Elem::int(-2), Elem::int(0), Elem::int(4)]);
        let twisted = apply_witness(&s1.cocycle, &w).unwrap();
        let opts = SearchOptions::default();
        assert!(brute_force_cohomologous(&s1.cocycle, &twisted, 6, &opts).unwrap().is_some());
        // changing one block's signature breaks it
        let s2 = katsura_system(graph, &[vec![0, 1, 0], vec![0, 0, 1], vec![0; 3]]).unwrap();
        assert!(brute_force_cohomologous(&s1.cocycle, &s2.cocycle, 6, &opts).unwrap().is_none());
    }
}

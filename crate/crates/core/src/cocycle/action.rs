use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::graph::Graph;
use crate::group::{Elem, Group};
use crate::integer::Integer;

use super::CocycleError;

/// A permutation together with its cycle decomposition, so arbitrary integer
/// powers cost one division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cycles {
    pub image: Vec<u32>,
    /// cycle id and position of every point
    pub slot: Vec<(u32, u32)>,
    pub cycles: Vec<Vec<u32>>,
}

impl Cycles {
    pub fn new(image: Vec<u32>) -> Option<Cycles> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            let i = i as usize;
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        let mut slot = vec![(u32::MAX, 0); n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if slot[start].0 != u32::MAX {
                continue;
            }
            let id = cycles.len() as u32;
            let mut cycle = Vec::new();
            let mut x = start;
            loop {
                slot[x] = (id, cycle.len() as u32);
                cycle.push(x as u32);
                x = image[x] as usize;
                if x == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        Some(Cycles { image, slot, cycles })
    }

    pub fn cycle_len(&self, x: usize) -> u64 {
        self.cycles[self.slot[x].0 as usize].len() as u64
    }

    pub fn power(&self, n: &Integer, x: usize) -> usize {
        if let Some(1) = n.as_i64() {
            return self.image[x] as usize;
        }
        let (id, pos) = self.slot[x];
        let cycle = &self.cycles[id as usize];
        let len = cycle.len() as u64;
        let shift = n.rem_euclid(len);
        cycle[((pos as u64 + shift) % len) as usize] as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// Finite G: `images[i][x]` is `elements[i]·x`.
    Table {
        elements: Vec<Elem>,
        index: HashMap<Elem, usize>,
        images: Vec<Vec<u32>>,
    },
    /// G = ℤⁿ: one permutation per standard basis vector.
    Free { gens: Vec<Cycles> },
}

/// An action of a group on the finite set `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetAction {
    group: Group,
    size: usize,
    repr: Repr,
}

impl SetAction {
    /// A finite group acting by an explicit table with one row per element.
    pub fn from_table(
        group: Group,
        size: usize,
        rows: Vec<(Elem, Vec<usize>)>,
    ) -> Result<SetAction, CocycleError> {
        let elements = group.enumerate()?;
        let index: HashMap<Elem, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut images: Vec<Option<Vec<u32>>> = vec![None; elements.len()];
        for (g, img) in rows {
            group.check(&g)?;
            let i = index[&g];
            if images[i].is_some() {
                return Err(CocycleError::Table(format!("element {g} listed twice")));
            }
            images[i] = Some(to_perm(size, &img)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| CocycleError::Table(format!("element {} missing", elements[i])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let action = SetAction {
            group,
            size,
            repr: Repr::Table {
                elements,
                index,
                images,
            },
        };
        action.check_axioms()?;
        Ok(action)
    }

    /// An action determined by the images of a generating set. For ℤⁿ the
    /// generators must be the standard basis vectors; for finite groups the
    /// table is closed under products and checked for consistency.
    pub fn from_generators(
        group: Group,
        size: usize,
        gens: Vec<(Elem, Vec<usize>)>,
    ) -> Result<SetAction, CocycleError> {
        for (g, _) in &gens {
            group.check(g)?;
        }
        if let Some(rank) = group.free_abelian_rank() {
            let basis = group.generators();
            let mut slots: Vec<Option<Cycles>> = vec![None; rank];
            for (g, img) in gens {
                let i = basis.iter().position(|b| *b == g).ok_or_else(|| {
                    CocycleError::Table(format!("{g} is not a standard generator of {group}"))
                })?;
                let perm = to_perm(size, &img)?;
                slots[i] = Some(Cycles::new(perm).unwrap());
            }
            let gens = slots
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    c.ok_or_else(|| {
                        CocycleError::Table(format!("generator {} missing", basis[i]))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            for a in 0..rank {
                for b in 0..a {
                    for x in 0..size {
                        let ab = gens[a].image[gens[b].image[x] as usize];
                        let ba = gens[b].image[gens[a].image[x] as usize];
                        if ab != ba {
                            return Err(CocycleError::NotAnAction(format!(
                                "generators {} and {} do not commute at point {x}",
                                basis[a], basis[b]
                            )));
                        }
                    }
                }
            }
            return Ok(SetAction {
                group,
                size,
                repr: Repr::Free { gens },
            });
        }
        if !group.is_finite() {
            return Err(CocycleError::Unsupported(format!(
                "actions of {group} (only finite groups and free abelian groups are supported)"
            )));
        }
        let perms = gens
            .iter()
            .map(|(_, img)| to_perm(size, img))
            .collect::<Result<Vec<_>, _>>()?;
        let mut table: HashMap<Elem, Vec<u32>> = HashMap::new();
        let id = group.identity();
        table.insert(id.clone(), (0..size as u32).collect());
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            let ph = table[&h].clone();
            for ((s, _), ps) in gens.iter().zip(&perms) {
                let k = group.mul(s, &h);
                let pk: Vec<u32> = ph.iter().map(|&x| ps[x as usize]).collect();
                match table.get(&k) {
                    Some(existing) if *existing != pk => {
                        return Err(CocycleError::NotAnAction(format!(
                            "generator images are inconsistent at element {k}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        table.insert(k.clone(), pk);
                        queue.push_back(k);
                    }
                }
            }
        }
        if Some(table.len() as u64) != group.order() {
            return Err(CocycleError::NotAnAction(format!(
                "the listed elements do not generate {group}"
            )));
        }
        let rows = table
            .into_iter()
            .map(|(g, p)| (g, p.into_iter().map(|x| x as usize).collect()))
            .collect();
        SetAction::from_table(group, size, rows)
    }

    /// ℤ acting through the permutation τ.
    pub fn integers(tau: Vec<usize>) -> Result<SetAction, CocycleError> {
        let n = tau.len();
        SetAction::from_generators(Group::Integers, n, vec![(Elem::int(1), tau)])
    }

    /// Every element acts as the identity.
    pub fn trivial(group: Group, size: usize) -> Result<SetAction, CocycleError> {
        let gens = group
            .generators()
            .into_iter()
            .map(|g| (g, (0..size).collect()))
            .collect();
        SetAction::from_generators(group, size, gens)
    }

    fn check_axioms(&self) -> Result<(), CocycleError> {
        let Repr::Table {
            elements,
            index,
            images,
        } = &self.repr
        else {
            return Ok(());
        };
        let id = index[&self.group.identity()];
        if images[id].iter().enumerate().any(|(x, &y)| x as u32 != y) {
            return Err(CocycleError::NotAnAction("identity moves a point".into()));
        }
        for (i, g) in elements.iter().enumerate() {
            for (j, h) in elements.iter().enumerate() {
                let k = index[&self.group.mul(g, h)];
                for x in 0..self.size {
                    if images[k][x] != images[i][images[j][x] as usize] {
                        return Err(CocycleError::NotAnAction(format!(
                            "({g}·{h})·{x} differs from {g}·({h}·{x})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_free_abelian(&self) -> bool {
        matches!(self.repr, Repr::Free { .. })
    }

    /// The permutation τ when G = ℤ.
    pub fn tau(&self) -> Option<&[u32]> {
        match &self.repr {
            Repr::Free { gens } if gens.len() == 1 => Some(&gens[0].image),
            _ => None,
        }
    }

    pub(crate) fn free_generators(&self) -> Option<&[Cycles]> {
        match &self.repr {
            Repr::Free { gens } => Some(gens),
            _ => None,
        }
    }

    /// Element list of a finite acting group (enumeration order).
    pub fn elements(&self) -> Option<&[Elem]> {
        match &self.repr {
            Repr::Table { elements, .. } => Some(elements),
            _ => None,
        }
    }

    pub fn element_index(&self, g: &Elem) -> Option<usize> {
        match &self.repr {
            Repr::Table { index, .. } => index.get(g).copied(),
            _ => None,
        }
    }

    pub fn act(&self, g: &Elem, x: usize) -> usize {
        self.try_act(g, x).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_act(&self, g: &Elem, x: usize) -> Result<usize, CocycleError> {
        if x >= self.size {
            return Err(CocycleError::Domain(x));
        }
        match &self.repr {
            Repr::Table { index, images, .. } => {
                let i = index.get(g).ok_or_else(|| {
                    CocycleError::Group(crate::group::GroupError::Mismatch {
                        group: self.group.to_string(),
                        elem: format!("{g:?}"),
                    })
                })?;
                Ok(images[*i][x] as usize)
            }
            Repr::Free { gens } => {
                if let (Group::Integers, Elem::Int(n)) = (&self.group, g) {
                    return Ok(if n.is_zero() { x } else { gens[0].power(n, x) });
                }
                let coords = self.group.coordinates(g)?;
                let mut y = x;
                for (c, n) in gens.iter().zip(&coords) {
                    if !n.is_zero() {
                        y = c.power(n, y);
                    }
                }
                Ok(y)
            }
        }
    }

    /// Elements whose action determines everything: all elements for finite
    /// groups, the standard basis for ℤⁿ.
    pub fn check_elements(&self) -> Vec<Elem> {
        match &self.repr {
            Repr::Table { elements, .. } => elements.clone(),
            Repr::Free { .. } => self.group.generators(),
        }
    }

    /// Images of the group's generators, in generator order.
    pub fn generator_images(&self) -> Vec<(Elem, Vec<usize>)> {
        self.group
            .generators()
            .into_iter()
            .map(|g| {
                let img = (0..self.size).map(|x| self.act(&g, x)).collect();
                (g, img)
            })
            .collect()
    }

    /// Orbits, each ascending, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.size).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (_, img) in self.generator_images() {
            for (x, y) in img.into_iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.size {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// The action restricted to an invariant subset, re-indexed by position
    /// in `points`.
    pub fn restrict(&self, points: &[usize]) -> Result<SetAction, CocycleError> {
        let pos: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let gens = self
            .generator_images()
            .into_iter()
            .map(|(g, img)| {
                points
                    .iter()
                    .map(|&x| {
                        pos.get(&img[x]).copied().ok_or_else(|| {
                            CocycleError::NotAnAction(format!("subset is not invariant at {x}"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(|v| (g, v))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SetAction::from_generators(self.group.clone(), points.len(), gens)
    }
}

fn to_perm(size: usize, img: &[usize]) -> Result<Vec<u32>, CocycleError> {
    if img.len() != size {
        return Err(CocycleError::Table(format!(
            "expected {size} images, found {}",
            img.len()
        )));
    }
    let mut seen = vec![false; size];
    for &y in img {
        if y >= size || std::mem::replace(&mut seen[y], true) {
            return Err(CocycleError::NotAnAction("images are not a bijection".into()));
        }
    }
    Ok(img.iter().map(|&y| y as u32).collect())
}

/// A group acting on a graph by automorphisms.
#[derive(Clone, Debug)]
pub struct GraphAction {
    graph: Arc<Graph>,
    vertices: Arc<SetAction>,
    edges: Arc<SetAction>,
}

impl GraphAction {
    pub fn new(
        graph: Arc<Graph>,
        vertices: Arc<SetAction>,
        edges: Arc<SetAction>,
    ) -> Result<GraphAction, CocycleError> {
        if vertices.group() != edges.group() {
            return Err(CocycleError::Table(
                "vertex and edge actions use different groups".into(),
            ));
        }
        if vertices.size() != graph.num_vertices() || edges.size() != graph.num_edges() {
            return Err(CocycleError::Table(
                "action sizes do not match the graph".into(),
            ));
        }
        for g in edges.group().generators() {
            for e in 0..graph.num_edges() {
                let ge = edges.act(&g, e);
                if graph.range(ge) != vertices.act(&g, graph.range(e))
                    || graph.source(ge) != vertices.act(&g, graph.source(e))
                {
                    return Err(CocycleError::NotAnAutomorphism {
                        g: g.to_string(),
                        e: graph.edge_name(e).to_string(),
                    });
                }
            }
        }
        Ok(GraphAction {
            graph,
            vertices,
            edges,
        })
    }

    /// The trivial action of `group` on every vertex and edge.
    pub fn trivial(graph: Arc<Graph>, group: Group) -> Result<GraphAction, CocycleError> {
        let v = SetAction::trivial(group.clone(), graph.num_vertices())?;
        let e = SetAction::trivial(group, graph.num_edges())?;
        GraphAction::new(graph, Arc::new(v), Arc::new(e))
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn group(&self) -> &Group {
        self.edges.group()
    }

    pub fn vertex_action(&self) -> &Arc<SetAction> {
        &self.vertices
    }

    pub fn edge_action(&self) -> &Arc<SetAction> {
        &self.edges
    }

    /// g·s(e) = s(e) for every generator g and edge e.
    pub fn fixes_sources(&self) -> bool {
        self.group().generators().iter().all(|g| {
            (0..self.graph.num_edges()).all(|e| {
                let s = self.graph.source(e);
                self.vertices.act(g, s) == s
            })
        })
    }

    /// A witness (g, e) with g·s(e) ≠ s(e), if any.
    pub fn source_moving_witness(&self) -> Option<(Elem, usize)> {
        for g in self.group().generators() {
            for e in 0..self.graph.num_edges() {
                let s = self.graph.source(e);
                if self.vertices.act(&g, s) != s {
                    return Some((g, e));
                }
            }
        }
        None
    }
}

use std::collections::HashMap;

use crate::cocycle::act_path;
use crate::graph::Path;
use crate::group::Elem;
use crate::par;

use super::System;

/// A pair (w, g) of a path and a group element.
pub type ZsElement = (Path, Elem);

const MAX_EXAMPLES: usize = 32;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZsReport {
    pub elements: usize,
    pub defined_pairs: usize,
    pub triples_checked: usize,
    /// Index triples (a, b, c) where (ab)c ≠ a(bc) or only one side is defined.
    pub associativity_failures: Vec<(usize, usize, usize)>,
    pub right_cancellation_count: usize,
    /// Index triples (a, b, c) with a ≠ b and ac = bc, at most a few.
    pub right_cancellation_examples: Vec<(usize, usize, usize)>,
}

impl ZsReport {
    pub fn associative(&self) -> bool {
        self.associativity_failures.is_empty()
    }

    pub fn right_cancellative(&self) -> bool {
        self.right_cancellation_count == 0
    }
}

/// The partial product (w,g)(w′,g′) = (w(g·w′), φ(g,w′)g′) on paths of
/// length ≤ L times a finite set of group elements (all of G when finite,
/// the ball of the given radius in ℤⁿ).
#[derive(Clone, Debug)]
pub struct ZappaSzep {
    pub system: System,
    pub max_len: usize,
    pub elements: Vec<ZsElement>,
}

impl ZappaSzep {
    pub fn new(system: System, max_len: usize, radius: u64) -> ZappaSzep {
        let group = system.group().clone();
        let group_elems = group.enumerate().unwrap_or_else(|_| group.ball(radius));
        let paths = system.graph().paths_up_to(max_len);
        let elements = paths
            .iter()
            .flat_map(|p| group_elems.iter().map(move |g| (p.clone(), g.clone())))
            .collect();
        ZappaSzep {
            system,
            max_len,
            elements,
        }
    }

    /// Defined when s(w) = r(g·w′).
    pub fn product(&self, a: &ZsElement, b: &ZsElement) -> Option<ZsElement> {
        let (w, g) = a;
        let (w2, g2) = b;
        let (gw2, phi) = act_path(&self.system.action, &self.system.cocycle, g, w2);
        let path = w.concat(&gw2)?;
        Some((path, self.system.group().mul(&phi, g2)))
    }

    pub fn identity_at(&self, v: usize) -> ZsElement {
        (Path::vertex(v), self.system.group().identity())
    }

    /// The full table on index pairs; `None` where undefined.
    pub fn table(&self) -> Vec<Vec<Option<ZsElement>>> {
        par::map(&self.elements, |a| self.elements.iter().map(|b| self.product(a, b)).collect())
    }

    /// Exhaustive check of associativity and right cancellation over the
    /// element set.
    pub fn check(&self) -> ZsReport {
        let n = self.elements.len();
        let table = self.table();
        let defined_pairs = table.iter().flatten().filter(|p| p.is_some()).count();
        let rows: Vec<usize> = (0..n).collect();
        let assoc: Vec<Vec<(usize, usize, usize)>> = par::map(&rows, |&a| {
            let mut bad = Vec::new();
            for b in 0..n {
                let ab = &table[a][b];
                for c in 0..n {
                    let left = ab.as_ref().and_then(|x| self.product(x, &self.elements[c]));
                    let right = table[b][c].as_ref().and_then(|y| self.product(&self.elements[a], y));
                    if left != right {
                        bad.push((a, b, c));
                    }
                }
            }
            bad
        });
        let mut cancel_count = 0;
        let mut cancel_examples = Vec::new();
        for c in 0..n {
            let mut seen: HashMap<&ZsElement, usize> = HashMap::new();
            for (a, row) in table.iter().enumerate() {
                if let Some(p) = &row[c] {
                    if let Some(&b) = seen.get(p) {
                        cancel_count += 1;
                        if cancel_examples.len() < MAX_EXAMPLES {
                            cancel_examples.push((b, a, c));
                        }
                    } else {
                        seen.insert(p, a);
                    }
                }
            }
        }
        ZsReport {
            elements: n,
            defined_pairs,
            triples_checked: n * n * n,
            associativity_failures: assoc.into_iter().flatten().collect(),
            right_cancellation_count: cancel_count,
            right_cancellation_examples: cancel_examples,
        }
    }
}

//! Boxed exhaustive search for cohomology witnesses, used as a test oracle.
//!
//! Once ψ is fixed at one point of a G-orbit, the relation
//! ψ(g·x) = φ′(g,x)·ψ(x)·φ(g,x)⁻¹ determines it on the whole orbit, so the
//! search enumerates one root value per orbit and propagates. Orbits are
//! independent, and the lexicographically least witness is the union of the
//! least witnesses on each orbit.

use std::collections::VecDeque;

use crate::cocycle::{Cocycle, GraphAction};
use crate::group::{Elem, Group};
use crate::par;

use super::{check_cochain, same_action, CohomologyError, CohomologyWitness, WitnessKind};

pub const DEFAULT_SEARCH_CAP: u128 = 1_000_000_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Upper bound on (root candidates) × (orbits).
    pub cap: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_SEARCH_CAP,
        }
    }
}

fn in_box(t: &Group, v: &Elem, bound: u64) -> bool {
    if t.is_finite() {
        return true;
    }
    match v {
        Elem::Int(i) => i.abs() <= crate::Integer::from(bound as i64),
        Elem::Tuple(parts) => match t {
            Group::Product { factors } => factors.iter().zip(parts).all(|(f, p)| in_box(f, p, bound)),
            _ => false,
        },
        _ => true,
    }
}

struct Propagation<'a> {
    phi: &'a Cocycle,
    phi2: &'a Cocycle,
    gens: Vec<Elem>,
    /// images[i][x] = gᵢ·x, preimages[i][y] = gᵢ⁻¹·y
    images: Vec<Vec<usize>>,
    preimages: Vec<Vec<usize>>,
}

impl Propagation<'_> {
    /// ψ on `orbit` from ψ(orbit[0]) = root, or None on inconsistency or
    /// when a value leaves the box.
    fn run(&self, orbit: &[usize], root: &Elem, bound: u64, n: usize) -> Option<Vec<(usize, Elem)>> {
        let t = self.phi.target();
        let mut psi: Vec<Option<Elem>> = vec![None; n];
        psi[orbit[0]] = Some(root.clone());
        let mut queue = VecDeque::from([orbit[0]]);
        let assign = |psi: &mut Vec<Option<Elem>>, y: usize, v: Elem, queue: &mut VecDeque<usize>| -> bool {
            match &psi[y] {
                Some(old) => *old == v,
                None => {
                    if !in_box(t, &v, bound) {
                        return false;
                    }
                    psi[y] = Some(v);
                    queue.push_back(y);
                    true
                }
            }
        };
        while let Some(x) = queue.pop_front() {
            let px = psi[x].clone().unwrap();
            for (i, g) in self.gens.iter().enumerate() {
                // forward: ψ(gx) = φ′(g,x) ψ(x) φ(g,x)⁻¹
                let y = self.images[i][x];
                let v = t.mul(&t.mul(&self.phi2.eval(g, x), &px), &t.inv(&self.phi.eval(g, x)));
                if !assign(&mut psi, y, v, &mut queue) {
                    return None;
                }
                // backward: with z = g⁻¹x, ψ(z) = φ′(g,z)⁻¹ ψ(x) φ(g,z)
                let z = self.preimages[i][x];
                let v = t.mul(&t.mul(&t.inv(&self.phi2.eval(g, z)), &px), &self.phi.eval(g, z));
                if !assign(&mut psi, z, v, &mut queue) {
                    return None;
                }
            }
        }
        Some(orbit.iter().map(|&x| (x, psi[x].clone().unwrap())).collect())
    }
}

fn search(
    phi: &Cocycle,
    phi2: &Cocycle,
    bound: u64,
    opts: &SearchOptions,
    accept: impl Fn(&[(usize, Elem)]) -> bool + Sync,
) -> Result<Option<Vec<Elem>>, CohomologyError> {
    if !same_action(phi.action(), phi2.action()) {
        return Err(CohomologyError::Precondition("cocycles are over different actions".into()));
    }
    if phi.target() != phi2.target() {
        return Err(CohomologyError::Precondition("cocycles have different targets".into()));
    }
    let t = phi.target();
    let mut candidates = t.ball(bound);
    candidates.sort();
    let action = phi.action();
    let orbits = action.orbits();
    let work = candidates.len() as u128 * orbits.len().max(1) as u128;
    if work > opts.cap {
        return Err(CohomologyError::SearchTooLarge {
            size: work.to_string(),
            cap: opts.cap,
        });
    }
    let n = action.size();
    let gens = action.group().generators();
    let images: Vec<Vec<usize>> = gens.iter().map(|g| (0..n).map(|x| action.act(g, x)).collect()).collect();
    let preimages = images
        .iter()
        .map(|img| {
            let mut inv = vec![0; n];
            for (x, &y) in img.iter().enumerate() {
                inv[y] = x;
            }
            inv
        })
        .collect();
    let prop = Propagation {
        phi,
        phi2,
        gens,
        images,
        preimages,
    };
    let mut psi = vec![t.identity(); n];
    for orbit in &orbits {
        let found = par::map(&candidates, |root| {
            prop.run(orbit, root, bound, n).filter(|vals| accept(vals))
        });
        // lexicographic on the orbit's points in ascending order
        let best = found.into_iter().flatten().min_by(|a, b| {
            let key = |v: &Vec<(usize, Elem)>| {
                let mut v = v.clone();
                v.sort_by_key(|(x, _)| *x);
                v.into_iter().map(|(_, e)| e).collect::<Vec<_>>()
            };
            key(a).cmp(&key(b))
        });
        match best {
            Some(vals) => {
                for (x, v) in vals {
                    psi[x] = v;
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(psi))
}

/// Searches for ψ with values in the box (all of T when T is finite,
/// sup-norm ≤ `bound` otherwise) and φ′(g,x) = ψ(gx)φ(g,x)ψ(x)⁻¹. Returns
/// the lexicographically least such ψ, or None if the box holds no witness.
pub fn brute_force_cohomologous(
    phi: &Cocycle,
    phi2: &Cocycle,
    bound: u64,
    opts: &SearchOptions,
) -> Result<Option<CohomologyWitness>, CohomologyError> {
    Ok(search(phi, phi2, bound, opts, |_| true)?.map(CohomologyWitness::set))
}

/// The graph version adds the cochain condition ψ(e)·s(e) = s(e).
pub fn brute_force_graph_cohomologous(
    action: &GraphAction,
    phi: &Cocycle,
    phi2: &Cocycle,
    bound: u64,
    opts: &SearchOptions,
) -> Result<Option<CohomologyWitness>, CohomologyError> {
    let graph = action.graph();
    let va = action.vertex_action();
    let out = search(phi, phi2, bound, opts, |vals| {
        vals.iter().all(|(e, p)| {
            let s = graph.source(*e);
            va.act(p, s) == s
        })
    })?;
    Ok(out.map(|v| {
        debug_assert!(check_cochain(action, &v).is_ok());
        CohomologyWitness {
            values: v,
            kind: WitnessKind::GraphEdges,
        }
    }))
}

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::graph::{EdgeSeq, Path};
use crate::group::Elem;

use super::action::{GraphAction, SetAction};
use super::map::Cocycle;
use super::CocycleError;

/// A materialized extension of an action and cocycle to words or paths.
#[derive(Clone, Debug)]
pub struct Extension<P> {
    pub points: Vec<P>,
    index: HashMap<P, usize>,
    pub action: Arc<SetAction>,
    pub cocycle: Cocycle,
}

impl<P: Hash + Eq> Extension<P> {
    pub fn index_of(&self, p: &P) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// g·(x₁…xₙ) and φ(g, x₁…xₙ) by the recursion
/// g·(vw) = (g·v)(φ(g,v)·w), φ(g, vw) = φ(φ(g,v), w), φ(g, ∅) = g.
pub fn act_word(phi: &Cocycle, g: &Elem, word: &[u32]) -> (Vec<u32>, Elem) {
    let action = phi.action();
    let mut g = g.clone();
    let mut out = Vec::with_capacity(word.len());
    for &x in word {
        out.push(action.act(&g, x as usize) as u32);
        g = phi.eval(&g, x as usize);
    }
    (out, g)
}

/// The same recursion on a composable path; on a vertex v it returns
/// (g·v, g).
pub fn act_path(action: &GraphAction, phi: &Cocycle, g: &Elem, path: &Path) -> (Path, Elem) {
    let graph = action.graph();
    if path.is_vertex() {
        return (Path::vertex(action.vertex_action().act(g, path.range())), g.clone());
    }
    let edges = action.edge_action();
    let mut g = g.clone();
    let mut out = EdgeSeq::with_capacity(path.len());
    for e in path.edges() {
        out.push(edges.act(&g, e) as u32);
        g = phi.eval(&g, e);
    }
    let range = graph.range(out[0] as usize);
    let source = graph.source(*out.last().unwrap() as usize);
    (Path::from_parts(range, source, out), g)
}

/// All words of length ≤ `max_len` over `0..alphabet`, by length then
/// lexicographically.
pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet);
        for w in &layer {
            for x in 0..alphabet as u32 {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn materialize<P: Clone + Hash + Eq>(
    phi: &Cocycle,
    points: Vec<P>,
    step: impl Fn(&Elem, &P) -> (P, Elem),
) -> Result<Extension<P>, CocycleError> {
    let index: HashMap<P, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let base = phi.action();
    let group = base.group().clone();
    let elems = base.check_elements();
    let mut images = Vec::with_capacity(elems.len());
    let mut values = Vec::with_capacity(elems.len());
    for g in &elems {
        let mut img = Vec::with_capacity(points.len());
        let mut val = Vec::with_capacity(points.len());
        for p in &points {
            let (q, h) = step(g, p);
            img.push(index[&q]);
            val.push(h);
        }
        images.push((g.clone(), img));
        values.push((g.clone(), val));
    }
    let n = points.len();
    let (action, cocycle) = if base.is_free_abelian() {
        let a = Arc::new(SetAction::from_generators(group, n, images)?);
        let c = Cocycle::from_generators(a.clone(), phi.target().clone(), values)?;
        (a, c)
    } else {
        let a = Arc::new(SetAction::from_table(group, n, images)?);
        let c = Cocycle::from_table(a.clone(), phi.target().clone(), values)?;
        (a, c)
    };
    Ok(Extension {
        points,
        index,
        action,
        cocycle,
    })
}

/// Extends (action, cocycle) on S to words of length ≤ `max_len`.
pub fn extend_to_words(phi: &Cocycle, max_len: usize) -> Result<Extension<Vec<u32>>, CocycleError> {
    if phi.target() != phi.group() {
        return Err(CocycleError::Unsupported(
            "word extension needs a G-valued cocycle".into(),
        ));
    }
    let words = words_up_to(phi.size(), max_len);
    materialize(phi, words, |g, w| act_word(phi, g, w))
}

/// Extends a graph cocycle to composable paths of length ≤ `max_len`,
/// vertices included.
pub fn extend_to_paths(
    action: &GraphAction,
    phi: &Cocycle,
    max_len: usize,
) -> Result<Extension<Path>, CocycleError> {
    if phi.target() != phi.group() {
        return Err(CocycleError::Unsupported(
            "path extension needs a G-valued cocycle".into(),
        ));
    }
    let paths = action.graph().paths_up_to(max_len);
    materialize(phi, paths, |g, p| act_path(action, phi, g, p))
}

/// Checked instances and a description of each failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For g, h in the ball and every path p with |p| ≤ `max_len`:
/// (gh)·p = g·(h·p), φ(gh,p) = φ(g,h·p)φ(h,p), the vertex condition
/// φ(g,p)·s(p) = g·s(p), and at every split p = qw
/// g·(qw) = (g·q)(φ(g,q)·w), φ(g,qw) = φ(φ(g,q),w).
pub fn check_path_extension(action: &GraphAction, phi: &Cocycle, max_len: usize, radius: u64) -> ExtensionReport {
    let graph = action.graph();
    let group = action.group();
    let ball = group.ball(radius);
    let paths = graph.paths_up_to(max_len);
    let va = action.vertex_action();
    let step = |g: &Elem, p: &Path| act_path(action, phi, g, p);
    let parts = crate::par::map(&paths, |p| {
        let mut r = ExtensionReport::default();
        let mut record = |ok: bool, what: &dyn Fn() -> String| {
            r.checked += 1;
            if !ok {
                r.failures.push(what());
            }
        };
        for g in &ball {
            let (gp, gphi) = step(g, p);
            record(gp.len() == p.len(), &|| format!("length changes: {g}·{}", graph.path_label(p)));
            record(
                va.act(&gphi, p.source()) == va.act(g, p.source()),
                &|| format!("vertex condition: ({g}, {})", graph.path_label(p)),
            );
            for h in &ball {
                let (hp, hphi) = step(h, p);
                let (ghp, ghphi) = step(g, &hp);
                let (prod_p, prod_phi) = step(&group.mul(g, h), p);
                record(
                    prod_p == ghp && prod_phi == group.mul(&ghphi, &hphi),
                    &|| format!("cocycle identity: ({g}, {h}, {})", graph.path_label(p)),
                );
            }
            for k in 1..p.len() {
                let (q, w) = p.split_at(graph, k);
                let (gq, gqphi) = step(g, &q);
                let (mw, mphi) = step(&gqphi, &w);
                let ok = gq.concat(&mw).is_some_and(|c| c == gp) && mphi == gphi;
                record(ok, &|| format!("split {k}: ({g}, {})", graph.path_label(p)));
            }
        }
        r
    });
    parts.into_iter().fold(ExtensionReport::default(), |mut acc, r| {
        acc.checked += r.checked;
        acc.failures.extend(r.failures);
        acc
    })
}

/// On a bouquet, paths are words in the edges; the two extensions must give
/// the same images and cocycle values.
pub fn check_paths_match_words(action: &GraphAction, phi: &Cocycle, max_len: usize, radius: u64) -> Result<ExtensionReport, CocycleError> {
    let graph = action.graph();
    if graph.num_vertices() != 1 {
        return Err(CocycleError::Unsupported("word extension needs a bouquet".into()));
    }
    let words = extend_to_words(phi, max_len)?;
    let paths = extend_to_paths(action, phi, max_len)?;
    let mut r = ExtensionReport::default();
    for g in action.group().ball(radius) {
        for (i, p) in paths.points.iter().enumerate() {
            let w: Vec<u32> = p.edges().map(|e| e as u32).collect();
            let Some(j) = words.index_of(&w) else {
                r.failures.push(format!("no word for {}", graph.path_label(p)));
                continue;
            };
            let gp = &paths.points[paths.action.act(&g, i)];
            let gw = &words.points[words.action.act(&g, j)];
            r.checked += 1;
            let same = gp.edges().map(|e| e as u32).eq(gw.iter().copied())
                && paths.cocycle.eval(&g, i) == words.cocycle.eval(&g, j);
            if !same {
                r.failures.push(format!("({g}, {})", graph.path_label(p)));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{EpkSystem, lift_system_to_strings};
    use crate::group::Group;

    #[test]
    fn odometer_carry() {
        let phi = EpkSystem::new(2, 1).unwrap().cocycle();
        let one = Elem::int(1);
        // adding 1 to 1…1 carries all the way through
        for n in 1..=5 {
            let (w, g) = act_word(&phi, &one, &vec![1; n]);
            assert_eq!(w, vec![0; n]);
            assert_eq!(g, one);
            let (w, g) = act_word(&phi, &one, &vec![0; n]);
            assert_eq!(w[0], 1);
            assert_eq!(g, Elem::int(0));
        }
        assert_eq!(words_up_to(2, 5).len(), 63);
    }

    #[test]
    fn path_identities_hold() {
        let sys = EpkSystem::new(2, 1).unwrap().system().unwrap();
        let r = check_path_extension(&sys.action, &sys.cocycle, 5, 3);
        assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(5)]);
        let agree = check_paths_match_words(&sys.action, &sys.cocycle, 5, 3).unwrap();
        assert!(agree.passed());
        assert_eq!(agree.checked, 63 * 7);
        let strings = lift_system_to_strings(&EpkSystem::new(3, 2).unwrap().cocycle()).unwrap();
        assert!(check_path_extension(&strings.action, &strings.cocycle, 3, 2).passed());
        assert!(check_paths_match_words(&strings.action, &strings.cocycle, 3, 2).is_err());
    }

    #[test]
    fn extensions_are_actions() {
        let sys = EpkSystem::new(3, -2).unwrap().system().unwrap();
        let ext = extend_to_paths(&sys.action, &sys.cocycle, 3).unwrap();
        assert_eq!(ext.points.len(), 1 + 3 + 9 + 27);
        assert!(crate::cocycle::validate_cocycle(&ext.cocycle).is_valid());
        let g = Group::Integers.parse_elem("5").unwrap();
        let i = ext.index_of(&ext.points[7]).unwrap();
        let (p, h) = act_path(&sys.action, &sys.cocycle, &g, &ext.points[i]);
        assert_eq!(ext.points[ext.action.act(&g, i)], p);
        assert_eq!(ext.cocycle.eval(&g, i), h);
    }
}

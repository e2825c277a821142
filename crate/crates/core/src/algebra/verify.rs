use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::Elem;
use crate::par;

use super::structure::{Algebra, CohomologyIso};
use super::sum::{coeff, BElement, BSym, Coeff, YElement, YSym};

/// Random Gaussian rational with numerators in [−3,3] and denominators in
/// [1,3], never zero.
pub fn random_coeff(rng: &mut impl Rng) -> Coeff {
    loop {
        let c = coeff(
            (rng.gen_range(-3..=3), rng.gen_range(1..=3)),
            (rng.gen_range(-3..=3), rng.gen_range(1..=3)),
        );
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_b(alg: &Algebra, rng: &mut impl Rng, max_terms: usize, ball: &[Elem]) -> BElement {
    let n = alg.action.graph().num_vertices();
    let terms = rng.gen_range(1..=max_terms);
    (0..terms)
        .map(|_| {
            let sym = BSym {
                v: rng.gen_range(0..n),
                g: ball[rng.gen_range(0..ball.len())].clone(),
            };
            (sym, random_coeff(rng))
        })
        .collect()
}

pub fn random_y(alg: &Algebra, rng: &mut impl Rng, max_terms: usize, ball: &[Elem]) -> YElement {
    let m = alg.action.graph().num_edges();
    if m == 0 {
        return YElement::zero();
    }
    let terms = rng.gen_range(1..=max_terms);
    (0..terms)
        .map(|_| {
            let sym = YSym {
                e: rng.gen_range(0..m),
                g: ball[rng.gen_range(0..ball.len())].clone(),
            };
            (sym, random_coeff(rng))
        })
        .collect()
}

/// Failure counts per identity over seeded random triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub trials: usize,
    pub failures: BTreeMap<&'static str, usize>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.values().all(|&n| n == 0)
    }
}

pub const AXIOMS: [&str; 9] = [
    "associativity",
    "involution",
    "anti-multiplicative",
    "left module",
    "right module",
    "bimodule",
    "inner right-linear",
    "inner hermitian",
    "left adjointable",
];

fn axiom_trial(alg: &Algebra, seed: u64, max_terms: usize, ball: &[Elem]) -> [bool; 9] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (x, y, z) = (
        random_b(alg, &mut rng, max_terms, ball),
        random_b(alg, &mut rng, max_terms, ball),
        random_b(alg, &mut rng, max_terms, ball),
    );
    let (xi, eta) = (random_y(alg, &mut rng, max_terms, ball), random_y(alg, &mut rng, max_terms, ball));
    let m = |a: &BElement, b: &BElement| alg.b_multiply(a, b);
    let adj = |a: &BElement| alg.b_adjoint(a);
    [
        m(&m(&x, &y), &z) == m(&x, &m(&y, &z)),
        adj(&adj(&x)) == x,
        adj(&m(&x, &y)) == m(&adj(&y), &adj(&x)),
        alg.left_action(&m(&x, &y), &xi) == alg.left_action(&x, &alg.left_action(&y, &xi)),
        alg.right_action(&alg.right_action(&xi, &x), &y) == alg.right_action(&xi, &m(&x, &y)),
        alg.right_action(&alg.left_action(&x, &xi), &y) == alg.left_action(&x, &alg.right_action(&xi, &y)),
        alg.inner_product(&xi, &alg.right_action(&eta, &x)) == m(&alg.inner_product(&xi, &eta), &x),
        adj(&alg.inner_product(&xi, &eta)) == alg.inner_product(&eta, &xi),
        alg.inner_product(&alg.left_action(&x, &xi), &eta) == alg.inner_product(&xi, &alg.left_action(&adj(&x), &eta)),
    ]
}

/// *-algebra, module and inner-product identities on `trials` random
/// triples; trial i uses the stream seeded by seed + i.
pub fn check_axioms(alg: &Algebra, trials: usize, seed: u64, max_terms: usize, radius: u64) -> AxiomReport {
    let ball = alg.group().ball(radius);
    let results = par::map_range(trials, |i| axiom_trial(alg, seed.wrapping_add(i as u64), max_terms, &ball));
    let mut failures: BTreeMap<&'static str, usize> = AXIOMS.iter().map(|&a| (a, 0)).collect();
    for r in &results {
        for (name, ok) in AXIOMS.iter().zip(r) {
            if !ok {
                *failures.get_mut(name).unwrap() += 1;
            }
        }
    }
    AxiomReport { trials, failures }
}

/// Number of checked instances and a description of each failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(parts: Vec<GridReport>) -> GridReport {
        parts.into_iter().fold(GridReport::default(), |mut acc, p| {
            acc.checked += p.checked;
            acc.failures.extend(p.failures);
            acc
        })
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn y_basis(alg: &Algebra, ball: &[Elem]) -> Vec<YSym> {
    (0..alg.action.graph().num_edges())
        .flat_map(|e| ball.iter().map(move |g| YSym { e, g: g.clone() }))
        .collect()
}

/// Σθ from the finite-rank decomposition against the left action of δ_{v,g}
/// on every χ_{e′,h}; at sources the left action must vanish.
pub fn check_jy(alg: &Algebra, g_radius: u64, h_radius: u64) -> GridReport {
    let basis = y_basis(alg, &alg.group().ball(h_radius));
    let pairs: Vec<(usize, Elem)> = (0..alg.action.graph().num_vertices())
        .flat_map(|v| alg.group().ball(g_radius).into_iter().map(move |g| (v, g)))
        .collect();
    GridReport::merge(par::map(&pairs, |(v, g)| {
        let ops = alg.katsura_decomposition(*v, g);
        let delta = alg.delta(*v, g.clone());
        let mut rep = GridReport::default();
        for sym in &basis {
            let zeta = YElement::basis(sym.clone());
            let lhs = alg.rank_ones_apply(&ops, &zeta);
            let rhs = alg.left_action(&delta, &zeta);
            rep.record(lhs == rhs, || format!("d({v},{g}) on {sym}: {lhs} != {rhs}"));
        }
        rep
    }))
}

/// δ_{v,g}·ξ = δ_{v,1}·(i_G(g)·ξ), i_G(g)δ_{v,1}i_G(g)* = δ_{gv,1} and
/// i_G(g)·(δ_{v,1}·(i_G(g)*·ξ)) = δ_{gv,1}·ξ on basis vectors.
pub fn check_covariance(alg: &Algebra, radius: u64) -> GridReport {
    let grp = alg.group().clone();
    let ball = grp.ball(radius);
    let basis = y_basis(alg, &ball);
    let pairs: Vec<(usize, Elem)> = (0..alg.action.graph().num_vertices())
        .flat_map(|v| ball.iter().map(move |g| (v, g.clone())))
        .collect();
    GridReport::merge(par::map(&pairs, |(v, g)| {
        let mut rep = GridReport::default();
        let u = alg.unitary(g);
        let ustar = alg.b_adjoint(&u);
        let p = alg.delta(*v, grp.identity());
        let gv = alg.action.vertex_action().act(g, *v);
        let pg = alg.delta(gv, grp.identity());
        let conj = alg.b_multiply(&alg.b_multiply(&u, &p), &ustar);
        rep.record(conj == pg, || format!("u({g}) p({v}) u({g})* = {conj}"));
        let delta = alg.delta(*v, g.clone());
        for sym in &basis {
            let xi = YElement::basis(sym.clone());
            let split = alg.left_action(&p, &alg.left_action(&u, &xi));
            rep.record(alg.left_action(&delta, &xi) == split, || format!("d({v},{g}) on {sym}"));
            let twisted = alg.left_action(&u, &alg.left_action(&p, &alg.left_action(&ustar, &xi)));
            rep.record(twisted == alg.left_action(&pg, &xi), || format!("conjugated p({v}) by {g} on {sym}"));
        }
        rep
    }))
}

/// ⟨Ψχ,Ψχ′⟩ = ⟨χ,χ′⟩ on all basis pairs, and Ψ(δ·χ) = δ·Ψχ.
pub fn check_ep_isometry(alg: &Algebra, radius: u64) -> GridReport {
    let ball = alg.group().ball(radius);
    let basis = y_basis(alg, &ball);
    let deltas: Vec<BSym> = (0..alg.action.graph().num_vertices())
        .flat_map(|v| ball.iter().map(move |g| BSym { v, g: g.clone() }))
        .collect();
    GridReport::merge(par::map(&basis, |a| {
        let mut rep = GridReport::default();
        let fa = alg.ep_model_map(a);
        let xa = YElement::basis(a.clone());
        for b in &basis {
            let lhs = alg.ep_inner(&fa, &alg.ep_model_map(b));
            let rhs = alg.inner_product(&xa, &YElement::basis(b.clone()));
            rep.record(lhs == rhs, || format!("<{a},{b}>: {lhs} != {rhs}"));
        }
        for d in &deltas {
            let db = BElement::basis(d.clone());
            let lhs = alg.ep_model_apply(&alg.left_action(&db, &xa));
            let rhs = alg.ep_left_action(&db, &fa);
            rep.record(lhs == rhs, || format!("{d} on {a}"));
        }
        rep
    }))
}

/// Φ preserves inner products and carries the φ-left action to the
/// twisted one on the basis grid.
pub fn check_cohomology_iso(alg: &Algebra, iso: &CohomologyIso, radius: u64) -> GridReport {
    let ball = alg.group().ball(radius);
    let basis = y_basis(alg, &ball);
    let deltas: Vec<BSym> = (0..alg.action.graph().num_vertices())
        .flat_map(|v| ball.iter().map(move |g| BSym { v, g: g.clone() }))
        .collect();
    let target = &iso.target;
    GridReport::merge(par::map(&basis, |a| {
        let mut rep = GridReport::default();
        let xa = YElement::basis(a.clone());
        let pa = iso.apply(&xa);
        for b in &basis {
            let xb = YElement::basis(b.clone());
            let ok = target.inner_product(&pa, &iso.apply(&xb)) == alg.inner_product(&xa, &xb);
            rep.record(ok, || format!("inner product at ({a},{b})"));
        }
        for d in &deltas {
            let db = BElement::basis(d.clone());
            let ok = iso.apply(&alg.left_action(&db, &xa)) == target.left_action(&db, &pa);
            rep.record(ok, || format!("intertwining {d} on {a}"));
        }
        rep
    }))
}

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Coeff, FormalSum};
use crate::cocycle::act_path;
use crate::constructions::System;
use crate::graph::Path;
use crate::group::Elem;
use crate::par;

use rand::Rng;
use smallvec::SmallVec;

use super::monomial::{monomial_multiply, Monomial};
use super::word::{normalize_expression, GeneratorWord, Token};

/// χ_{μ,g}; a length-0 μ = v stands for δ_{v,g}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockVec {
    pub path: Path,
    pub g: Elem,
}

pub type FockVector = FormalSum<FockVec>;

/// Each generator sends a basis vector to a basis vector or to 0.
pub fn fock_apply_token(sys: &System, t: &Token, x: &FockVec) -> Option<FockVec> {
    let graph = sys.graph();
    match t {
        Token::P(v) => (x.path.range() == *v).then(|| x.clone()),
        Token::S(e) => x.path.prepend(graph, *e).map(|path| FockVec { path, g: x.g.clone() }),
        Token::SStar(e) => match x.path.split_first(graph) {
            Some((f, rest)) if f == *e => Some(FockVec { path: rest, g: x.g.clone() }),
            _ => None,
        },
        Token::U(h) => {
            let (path, phi) = act_path(&sys.action, &sys.cocycle, h, &x.path);
            Some(FockVec {
                path,
                g: sys.group().mul(&phi, &x.g),
            })
        }
    }
}

/// Applies the rightmost token first.
pub fn fock_apply_word(sys: &System, w: &[Token], x: &FockVec) -> Option<FockVec> {
    w.iter().rev().try_fold(x.clone(), |acc, t| fock_apply_token(sys, t, &acc))
}

/// s_μ u_g s_ν* as a word: the edges of μ, u(g), then s*(eₙ)…s*(e₁),
/// with p(v) standing in for a vertex.
pub fn monomial_word(m: &Monomial) -> GeneratorWord {
    let mut w = Vec::new();
    if m.mu.is_vertex() {
        w.push(Token::P(m.mu.range()));
    } else {
        w.extend(m.mu.edges().map(Token::S));
    }
    w.push(Token::U(m.g.clone()));
    if m.nu.is_vertex() {
        w.push(Token::P(m.nu.range()));
    } else {
        let nu: Vec<usize> = m.nu.edges().collect();
        w.extend(nu.into_iter().rev().map(Token::SStar));
    }
    w
}

pub fn fock_apply(sys: &System, terms: &[(i64, GeneratorWord)], x: &FockVec) -> FockVector {
    let mut out = FockVector::zero();
    for (c, w) in terms {
        if let Some(y) = fock_apply_word(sys, w, x) {
            out.add_term(y, crate::algebra::coeff((*c, 1), (0, 1)));
        }
    }
    out
}

pub fn fock_basis(sys: &System, max_len: usize, radius: u64) -> Vec<FockVec> {
    let ball = sys.group().ball(radius);
    sys.graph()
        .paths_up_to(max_len)
        .into_iter()
        .flat_map(|path| ball.iter().map(move |g| FockVec { path: path.clone(), g: g.clone() }))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl FockReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for FockVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.path.edge_seq().as_slice(), self.g)
    }
}

/// The expression and its normal form act identically on every basis
/// vector with |μ| ≤ L and g in the ball.
pub fn fock_check(sys: &System, terms: &[(i64, GeneratorWord)], max_len: usize, radius: u64) -> FockReport {
    fock_check_on(sys, terms, &fock_basis(sys, max_len, radius))
}

/// `fock_check` on a precomputed set of basis vectors.
pub fn fock_check_on(sys: &System, terms: &[(i64, GeneratorWord)], basis: &[FockVec]) -> FockReport {
    let normal = normalize_expression(sys, terms);
    let reduced: Vec<(GeneratorWord, &Coeff)> = normal.terms().map(|(m, c)| (monomial_word(m), c)).collect();
    let small: Option<Vec<i64>> = reduced.iter().map(|(_, c)| small_integer(c)).collect();
    let results = match small {
        // integer coefficients: compare sorted term lists without rationals
        Some(cs) => par::map(basis, |x| {
            let direct = integer_sum(terms.iter().map(|(c, w)| (fock_apply_word(sys, w, x), *c)));
            let normal = integer_sum(reduced.iter().zip(&cs).map(|((w, _), c)| (fock_apply_word(sys, w, x), *c)));
            (direct == normal).then_some(()).ok_or_else(|| format!("on {x}: {direct:?} vs {normal:?}"))
        }),
        None => par::map(basis, |x| {
            let direct = fock_apply(sys, terms, x);
            let mut normal = FockVector::zero();
            for (w, c) in &reduced {
                if let Some(y) = fock_apply_word(sys, w, x) {
                    normal.add_term(y, (*c).clone());
                }
            }
            (direct == normal).then_some(()).ok_or_else(|| format!("on {x}: {direct} vs {normal}"))
        }),
    };
    FockReport {
        checked: basis.len(),
        mismatches: results.into_iter().filter_map(Result::err).collect(),
    }
}

fn small_integer(c: &Coeff) -> Option<i64> {
    if c.im.is_zero() && c.re.is_integer() {
        c.re.to_integer().to_i64()
    } else {
        None
    }
}

type IntegerSum = SmallVec<[(FockVec, i64); 2]>;

fn integer_sum(terms: impl Iterator<Item = (Option<FockVec>, i64)>) -> IntegerSum {
    let mut v: IntegerSum = terms.filter_map(|(y, c)| y.map(|y| (y, c))).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = IntegerSum::new();
    for (y, c) in v {
        match out.last_mut() {
            Some((z, d)) if *z == y => *d += c,
            _ => out.push((y, c)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

/// A word of uniform length in 1..=max_len with uniformly chosen tokens;
/// unitaries are drawn from `ball`.
pub fn random_word(sys: &System, rng: &mut impl Rng, max_len: usize, ball: &[Elem]) -> GeneratorWord {
    let (nv, ne) = (sys.graph().num_vertices(), sys.graph().num_edges());
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| match rng.gen_range(0..4) {
            0 => Token::P(rng.gen_range(0..nv)),
            1 if ne > 0 => Token::S(rng.gen_range(0..ne)),
            2 if ne > 0 => Token::SStar(rng.gen_range(0..ne)),
            _ => Token::U(ball[rng.gen_range(0..ball.len())].clone()),
        })
        .collect()
}

/// Every compatible s_μ u_g s_ν* with |μ|, |ν| ≤ `max_len` and g in the ball.
pub fn monomials_up_to(sys: &System, max_len: usize, radius: u64) -> Vec<Monomial> {
    let paths = sys.graph().paths_up_to(max_len);
    let ball = sys.group().ball(radius);
    let mut out = Vec::new();
    for mu in &paths {
        for g in &ball {
            for nu in &paths {
                let m = Monomial { mu: mu.clone(), g: g.clone(), nu: nu.clone() };
                if m.is_compatible(sys) {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductReport {
    pub pairs: usize,
    pub nonzero: usize,
    pub failures: Vec<String>,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All pairs of monomials from [`monomials_up_to`]: each product is a single
/// compatible monomial or zero, and it acts on `probe` exactly as the two
/// factors applied in turn.
pub fn check_monomial_products(sys: &System, max_len: usize, radius: u64, probe: &[FockVec]) -> ProductReport {
    let monos = monomials_up_to(sys, max_len, radius);
    let words: Vec<GeneratorWord> = monos.iter().map(monomial_word).collect();
    let idx: Vec<usize> = (0..monos.len()).collect();
    let parts = par::map(&idx, |&i| {
        let mut r = ProductReport::default();
        for j in 0..monos.len() {
            r.pairs += 1;
            let prod = monomial_multiply(sys, &monos[i], &monos[j]);
            if let Some(m) = &prod {
                r.nonzero += 1;
                if !m.is_compatible(sys) {
                    r.failures.push(format!("incompatible product of #{i} and #{j}"));
                    continue;
                }
            }
            let pw = prod.as_ref().map(monomial_word);
            for x in probe {
                let direct = fock_apply_word(sys, &words[j], x).and_then(|y| fock_apply_word(sys, &words[i], &y));
                let reduced = pw.as_ref().and_then(|w| fock_apply_word(sys, w, x));
                if direct != reduced {
                    r.failures.push(format!("#{i}·#{j} on {x}"));
                    break;
                }
            }
        }
        r
    });
    parts.into_iter().fold(ProductReport::default(), |mut acc, r| {
        acc.pairs += r.pairs;
        acc.nonzero += r.nonzero;
        acc.failures.extend(r.failures);
        acc
    })
}

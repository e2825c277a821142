//! Concrete discrete groups: integers, cyclic groups, symmetric groups and
//! finite direct products of these.
//!
//! Elements are self-describing: a cyclic residue records its modulus and a
//! permutation its degree, so handing an element to the wrong group is
//! reported as [`GroupError::Mismatch`] instead of being silently reduced.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::integer::Integer;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element {elem} does not belong to {group}")]
    Mismatch { group: String, elem: String },
    #[error("{0} is infinite")]
    Infinite(String),
    #[error("cannot parse '{text}' as an element of {group}: {reason}")]
    Parse {
        group: String,
        text: String,
        reason: String,
    },
    #[error("{0} has too many elements to enumerate")]
    TooLarge(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Elem {
    Int(Integer),
    Cyclic { modulus: u64, residue: u64 },
    /// One-line notation: `p[i]` is the image of `i`.
    Perm(Vec<u32>),
    Tuple(Vec<Elem>),
}

impl Elem {
    pub fn int(v: i64) -> Elem {
        Elem::Int(Integer::from(v))
    }

    pub fn as_int(&self) -> Option<&Integer> {
        match self {
            Elem::Int(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(v) => write!(f, "{v}"),
            Elem::Cyclic { residue, .. } => write!(f, "{residue}"),
            Elem::Perm(p) => write!(f, "[{}]", p.iter().join(",")),
            Elem::Tuple(items) => write!(f, "({})", items.iter().join(",")),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Group {
    Integers,
    Cyclic { order: u64 },
    Permutation { degree: usize },
    Product { factors: Vec<Group> },
}

const ENUMERATION_LIMIT: u64 = 1 << 20;

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Integers => write!(f, "integers"),
            Group::Cyclic { order } => write!(f, "cyclic({order})"),
            Group::Permutation { degree } => write!(f, "permutation({degree})"),
            Group::Product { factors } => write!(f, "product({})", factors.iter().join(", ")),
        }
    }
}

impl Group {
    pub fn cyclic(order: u64) -> Group {
        assert!(order >= 1, "cyclic group order must be positive");
        Group::Cyclic { order }
    }

    pub fn symmetric(degree: usize) -> Group {
        Group::Permutation { degree }
    }

    pub fn product(factors: Vec<Group>) -> Group {
        Group::Product { factors }
    }

    /// ℤⁿ; rank 1 is plain `Integers`.
    pub fn free_abelian(rank: usize) -> Group {
        if rank == 1 {
            Group::Integers
        } else {
            Group::Product {
                factors: vec![Group::Integers; rank],
            }
        }
    }

    fn mismatch(&self, e: &Elem) -> GroupError {
        GroupError::Mismatch {
            group: self.to_string(),
            elem: format!("{e:?}"),
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (Group::Integers, Elem::Int(_)) => true,
            (Group::Cyclic { order }, Elem::Cyclic { modulus, residue }) => {
                modulus == order && residue < order
            }
            (Group::Permutation { degree }, Elem::Perm(p)) => {
                p.len() == *degree && {
                    let mut seen = vec![false; *degree];
                    p.iter().all(|&i| {
                        let i = i as usize;
                        i < *degree && !std::mem::replace(&mut seen[i], true)
                    })
                }
            }
            (Group::Product { factors }, Elem::Tuple(items)) => {
                factors.len() == items.len()
                    && factors.iter().zip(items).all(|(g, x)| g.contains(x))
            }
            _ => false,
        }
    }

    pub fn check(&self, e: &Elem) -> Result<(), GroupError> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(self.mismatch(e))
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            Group::Integers => Elem::Int(Integer::ZERO),
            Group::Cyclic { order } => Elem::Cyclic {
                modulus: *order,
                residue: 0,
            },
            Group::Permutation { degree } => Elem::Perm((0..*degree as u32).collect()),
            Group::Product { factors } => Elem::Tuple(factors.iter().map(|g| g.identity()).collect()),
        }
    }

    pub fn is_identity(&self, e: &Elem) -> bool {
        *e == self.identity()
    }

    pub fn multiply(&self, a: &Elem, b: &Elem) -> Result<Elem, GroupError> {
        match (self, a, b) {
            (Group::Integers, Elem::Int(x), Elem::Int(y)) => Ok(Elem::Int(x + y)),
            (
                Group::Cyclic { order },
                Elem::Cyclic { modulus: m1, residue: x },
                Elem::Cyclic { modulus: m2, residue: y },
            ) if m1 == order && m2 == order && x < order && y < order => Ok(Elem::Cyclic {
                modulus: *order,
                residue: ((*x as u128 + *y as u128) % *order as u128) as u64,
            }),
            (Group::Permutation { degree }, Elem::Perm(p), Elem::Perm(q))
                if p.len() == *degree && q.len() == *degree =>
            {
                Ok(Elem::Perm(q.iter().map(|&i| p[i as usize]).collect()))
            }
            (Group::Product { factors }, Elem::Tuple(xs), Elem::Tuple(ys))
                if xs.len() == factors.len() && ys.len() == factors.len() =>
            {
                factors
                    .iter()
                    .zip(xs.iter().zip(ys))
                    .map(|(g, (x, y))| g.multiply(x, y))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Elem::Tuple)
            }
            _ => Err(if self.contains(a) {
                self.mismatch(b)
            } else {
                self.mismatch(a)
            }),
        }
    }

    pub fn inverse(&self, a: &Elem) -> Result<Elem, GroupError> {
        match (self, a) {
            (Group::Integers, Elem::Int(x)) => Ok(Elem::Int(-x)),
            (Group::Cyclic { order }, Elem::Cyclic { modulus, residue })
                if modulus == order && residue < order =>
            {
                Ok(Elem::Cyclic {
                    modulus: *order,
                    residue: (order - residue) % order,
                })
            }
            (Group::Permutation { degree }, Elem::Perm(p)) if p.len() == *degree => {
                let mut inv = vec![0u32; p.len()];
                for (i, &j) in p.iter().enumerate() {
                    inv[j as usize] = i as u32;
                }
                Ok(Elem::Perm(inv))
            }
            (Group::Product { factors }, Elem::Tuple(xs)) if xs.len() == factors.len() => factors
                .iter()
                .zip(xs)
                .map(|(g, x)| g.inverse(x))
                .collect::<Result<Vec<_>, _>>()
                .map(Elem::Tuple),
            _ => Err(self.mismatch(a)),
        }
    }

    /// Infallible product for elements already known to lie in the group.
    ///
    /// # Panics
    /// Panics if either argument is not an element of `self`.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.multiply(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Infallible inverse; see [`Group::mul`].
    pub fn inv(&self, a: &Elem) -> Elem {
        self.inverse(a).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `a^n` by repeated squaring; negative `n` uses the inverse.
    pub fn pow(&self, a: &Elem, n: &Integer) -> Elem {
        match (self, a) {
            (Group::Integers, Elem::Int(x)) => return Elem::Int(x * n),
            (Group::Cyclic { order }, Elem::Cyclic { residue, .. }) => {
                let k = n.rem_euclid(*order);
                return Elem::Cyclic {
                    modulus: *order,
                    residue: ((*residue as u128 * k as u128) % *order as u128) as u64,
                };
            }
            _ => {}
        }
        let (base, mut e) = if n.is_negative() {
            (self.inv(a), n.abs().to_big())
        } else {
            (a.clone(), n.to_big())
        };
        let mut acc = self.identity();
        let mut sq = base;
        let two = num_bigint::BigInt::from(2);
        while e > num_bigint::BigInt::from(0) {
            if &e % &two == num_bigint::BigInt::from(1) {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e /= &two;
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Group::Integers => false,
            Group::Cyclic { .. } | Group::Permutation { .. } => true,
            Group::Product { factors } => factors.iter().all(|g| g.is_finite()),
        }
    }

    /// Group order, or `None` for infinite groups (and for orders beyond `u64`).
    pub fn order(&self) -> Option<u64> {
        match self {
            Group::Integers => None,
            Group::Cyclic { order } => Some(*order),
            Group::Permutation { degree } => {
                (1..=*degree as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
            }
            Group::Product { factors } => factors
                .iter()
                .try_fold(1u64, |acc, g| g.order().and_then(|o| acc.checked_mul(o))),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Group::Integers | Group::Cyclic { .. } => true,
            Group::Permutation { degree } => *degree <= 2,
            Group::Product { factors } => factors.iter().all(|g| g.is_abelian()),
        }
    }

    /// All elements, identity first.
    pub fn enumerate(&self) -> Result<Vec<Elem>, GroupError> {
        let order = self
            .order()
            .ok_or_else(|| GroupError::Infinite(self.to_string()))?;
        if order > ENUMERATION_LIMIT {
            return Err(GroupError::TooLarge(self.to_string()));
        }
        Ok(match self {
            Group::Integers => unreachable!(),
            Group::Cyclic { order } => (0..*order)
                .map(|residue| Elem::Cyclic {
                    modulus: *order,
                    residue,
                })
                .collect(),
            Group::Permutation { degree } => (0..*degree as u32)
                .permutations(*degree)
                .map(Elem::Perm)
                .collect(),
            Group::Product { factors } => {
                let parts = factors
                    .iter()
                    .map(|g| g.enumerate())
                    .collect::<Result<Vec<_>, _>>()?;
                if parts.is_empty() {
                    vec![Elem::Tuple(vec![])]
                } else {
                    parts
                        .into_iter()
                        .multi_cartesian_product()
                        .map(Elem::Tuple)
                        .collect()
                }
            }
        })
    }

    /// A generating set (empty for trivial groups).
    pub fn generators(&self) -> Vec<Elem> {
        match self {
            Group::Integers => vec![Elem::int(1)],
            Group::Cyclic { order } => {
                if *order > 1 {
                    vec![Elem::Cyclic {
                        modulus: *order,
                        residue: 1,
                    }]
                } else {
                    vec![]
                }
            }
            Group::Permutation { degree } => {
                let n = *degree as u32;
                let mut gens = Vec::new();
                if n >= 2 {
                    let mut t: Vec<u32> = (0..n).collect();
                    t.swap(0, 1);
                    gens.push(Elem::Perm(t));
                }
                if n >= 3 {
                    gens.push(Elem::Perm((0..n).map(|i| (i + 1) % n).collect()));
                }
                gens
            }
            Group::Product { factors } => {
                let ids: Vec<Elem> = factors.iter().map(|g| g.identity()).collect();
                let mut gens = Vec::new();
                for (i, g) in factors.iter().enumerate() {
                    for s in g.generators() {
                        let mut t = ids.clone();
                        t[i] = s;
                        gens.push(Elem::Tuple(t));
                    }
                }
                gens
            }
        }
    }

    /// Rank n when the group is ℤⁿ (as `Integers` or a product of `Integers`).
    pub fn free_abelian_rank(&self) -> Option<usize> {
        match self {
            Group::Integers => Some(1),
            Group::Product { factors }
                if !factors.is_empty() && factors.iter().all(|g| *g == Group::Integers) =>
            {
                Some(factors.len())
            }
            _ => None,
        }
    }

    /// Coordinates of an element of ℤⁿ.
    pub fn coordinates(&self, e: &Elem) -> Result<Vec<Integer>, GroupError> {
        match (self.free_abelian_rank(), e) {
            (Some(1), Elem::Int(v)) => Ok(vec![v.clone()]),
            (Some(_), Elem::Tuple(xs)) if self.contains(e) => Ok(xs
                .iter()
                .map(|x| x.as_int().cloned().unwrap())
                .collect()),
            _ => Err(self.mismatch(e)),
        }
    }

    pub fn from_coordinates(&self, coords: Vec<Integer>) -> Elem {
        match self {
            Group::Integers => Elem::Int(coords.into_iter().next().unwrap()),
            _ => Elem::Tuple(coords.into_iter().map(Elem::Int).collect()),
        }
    }

    /// Finite groups: every element. ℤⁿ: the box of sup-radius `radius`.
    /// Other infinite products: the cartesian product of factor balls.
    pub fn ball(&self, radius: u64) -> Vec<Elem> {
        if self.is_finite() {
            return self.enumerate().expect("finite group enumerates");
        }
        match self {
            Group::Integers => {
                let r = radius as i64;
                let mut out = vec![Elem::int(0)];
                for k in 1..=r {
                    out.push(Elem::int(k));
                    out.push(Elem::int(-k));
                }
                out
            }
            Group::Product { factors } => factors
                .iter()
                .map(|g| g.ball(radius))
                .multi_cartesian_product()
                .map(Elem::Tuple)
                .collect(),
            _ => unreachable!(),
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem, GroupError> {
        let err = |reason: &str| GroupError::Parse {
            group: self.to_string(),
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let e = match self {
            Group::Integers => Elem::Int(t.parse().map_err(|_| err("expected an integer"))?),
            Group::Cyclic { order } => {
                let v: Integer = t.parse().map_err(|_| err("expected a residue"))?;
                Elem::Cyclic {
                    modulus: *order,
                    residue: v.rem_euclid(*order),
                }
            }
            Group::Permutation { .. } => {
                let inner = t
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .unwrap_or(t);
                let images = inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| err("expected one-line images"))?;
                Elem::Perm(images)
            }
            Group::Product { factors } => {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| err("expected a parenthesized tuple"))?;
                let parts = split_top_level(inner);
                if parts.len() != factors.len() {
                    return Err(err("wrong number of components"));
                }
                Elem::Tuple(
                    factors
                        .iter()
                        .zip(parts)
                        .map(|(g, p)| g.parse_elem(p))
                        .collect::<Result<_, _>>()?,
                )
            }
        };
        self.check(&e).map_err(|_| err("not an element of the group"))?;
        Ok(e)
    }

    /// Subgroup generated by `gens` (finite groups only), sorted.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Result<Vec<Elem>, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::Infinite(self.to_string()));
        }
        for g in gens {
            self.check(g)?;
        }
        let mut seen: BTreeSet<Elem> = BTreeSet::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(h) = queue.pop_front() {
            for s in gens {
                let k = self.mul(s, &h);
                if seen.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Every subgroup of a finite group, each sorted; ordered by size then
    /// lexicographically.
    pub fn subgroups(&self) -> Result<Vec<Vec<Elem>>, GroupError> {
        let elems = self.enumerate()?;
        let cyclic: Vec<Vec<Elem>> = elems
            .iter()
            .map(|g| self.generated_subgroup(std::slice::from_ref(g)))
            .collect::<Result<BTreeSet<_>, _>>()?
            .into_iter()
            .collect();
        let mut all: BTreeSet<Vec<Elem>> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Vec<Elem>> = all.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let mut gens = h.clone();
                    gens.extend(c.iter().cloned());
                    let j = self.generated_subgroup(&gens)?;
                    if all.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<Elem>> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }
}

/// A homomorphism from a finite subgroup into a target group, stored as a
/// table keyed by the domain elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub target: Group,
    pub map: std::collections::BTreeMap<Elem, Elem>,
}

impl Homomorphism {
    pub fn apply(&self, h: &Elem) -> Option<&Elem> {
        self.map.get(h)
    }

    /// Checks π(xy) = π(x)π(y) over all pairs of the domain.
    pub fn is_homomorphism(&self, ambient: &Group) -> bool {
        self.map.iter().all(|(x, px)| {
            self.map.iter().all(|(y, py)| {
                let xy = ambient.mul(x, y);
                self.map
                    .get(&xy)
                    .is_some_and(|pxy| *pxy == self.target.mul(px, py))
            })
        })
    }

    /// t·π(h)·t⁻¹ for every h.
    pub fn conjugate(&self, t: &Elem) -> Homomorphism {
        let ti = self.target.inv(t);
        Homomorphism {
            target: self.target.clone(),
            map: self
                .map
                .iter()
                .map(|(h, p)| (h.clone(), self.target.mul(&self.target.mul(t, p), &ti)))
                .collect(),
        }
    }
}

/// All homomorphisms from the subgroup `domain` of `ambient` into a finite
/// `target`, found by assigning images to a generating set and checking the
/// extension.
pub fn homomorphisms(
    ambient: &Group,
    domain: &[Elem],
    target: &Group,
) -> Result<Vec<Homomorphism>, GroupError> {
    let targets = target.enumerate()?;
    let gens = minimal_generators(ambient, domain)?;
    let mut out = Vec::new();
    for images in std::iter::repeat_n(targets.iter(), gens.len()).multi_cartesian_product() {
        if let Some(h) = extend_hom(ambient, &gens, &images, target) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| a.map.cmp(&b.map));
    Ok(out)
}

fn minimal_generators(ambient: &Group, domain: &[Elem]) -> Result<Vec<Elem>, GroupError> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = ambient.generated_subgroup(&[])?;
    for g in domain {
        if span.binary_search(g).is_err() {
            gens.push(g.clone());
            span = ambient.generated_subgroup(&gens)?;
        }
    }
    Ok(gens)
}

fn extend_hom(ambient: &Group, gens: &[Elem], images: &[&Elem], target: &Group) -> Option<Homomorphism> {
    let mut map: HashMap<Elem, Elem> = HashMap::new();
    map.insert(ambient.identity(), target.identity());
    let mut queue = VecDeque::from([ambient.identity()]);
    while let Some(h) = queue.pop_front() {
        let ph = map[&h].clone();
        for (s, ps) in gens.iter().zip(images) {
            let k = ambient.mul(s, &h);
            let pk = target.mul(ps, &ph);
            match map.get(&k) {
                Some(existing) if *existing != pk => return None,
                Some(_) => {}
                None => {
                    map.insert(k.clone(), pk);
                    queue.push_back(k);
                }
            }
        }
    }
    let hom = Homomorphism {
        target: target.clone(),
        map: map.into_iter().collect(),
    };
    hom.is_homomorphism(ambient).then_some(hom)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(p: &[u32]) -> Elem {
        Elem::Perm(p.to_vec())
    }

    #[test]
    fn cyclic_product_and_inverse() {
        let g = Group::cyclic(4);
        let three = g.parse_elem("3").unwrap();
        let two = g.parse_elem("2").unwrap();
        assert_eq!(g.mul(&three, &two).to_string(), "1");
        let c5 = Group::cyclic(5);
        assert_eq!(c5.inv(&c5.parse_elem("2").unwrap()).to_string(), "3");
    }

    #[test]
    fn integer_inverse() {
        let z = Group::Integers;
        assert_eq!(z.mul(&Elem::int(5), &Elem::int(-5)), Elem::int(0));
        assert_eq!(z.inv(&Elem::int(7)), Elem::int(-7));
    }

    #[test]
    fn permutation_composition() {
        let s3 = Group::symmetric(3);
        // (01)·(12): apply (12) first, then (01).
        let prod = s3.mul(&perm(&[1, 0, 2]), &perm(&[0, 2, 1]));
        assert_eq!(prod, perm(&[1, 2, 0]));
        let t = perm(&[0, 2, 1]);
        assert_eq!(s3.inv(&t), t);
    }

    #[test]
    fn enumeration() {
        assert_eq!(Group::cyclic(3).enumerate().unwrap().iter().join(","), "0,1,2");
        assert_eq!(Group::symmetric(3).enumerate().unwrap().len(), 6);
        assert_eq!(Group::cyclic(1).enumerate().unwrap().len(), 1);
        assert!(matches!(
            Group::Integers.enumerate(),
            Err(GroupError::Infinite(_))
        ));
        assert_eq!(
            Group::symmetric(3).enumerate().unwrap()[0],
            Group::symmetric(3).identity()
        );
    }

    #[test]
    fn mixed_groups_are_rejected() {
        let c4 = Group::cyclic(4);
        let c5 = Group::cyclic(5);
        let x = c5.parse_elem("3").unwrap();
        assert!(matches!(
            c4.multiply(&x, &c4.identity()),
            Err(GroupError::Mismatch { .. })
        ));
        assert!(Group::Integers.multiply(&Elem::int(1), &x).is_err());
        assert!(Group::symmetric(3).inverse(&perm(&[0, 1])).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let g = Group::product(vec![Group::Integers, Group::cyclic(3), Group::symmetric(3)]);
        let e = g.parse_elem("(-12, 2, [2,0,1])").unwrap();
        assert_eq!(g.parse_elem(&e.to_string()).unwrap(), e);
        assert!(g.parse_elem("(1,2)").is_err());
        assert!(Group::symmetric(3).parse_elem("[0,0,1]").is_err());
    }

    #[test]
    fn subgroup_counts() {
        // ℤ₆ has 4 subgroups, S₃ has 6, ℤ₂×ℤ₂ has 5.
        assert_eq!(Group::cyclic(6).subgroups().unwrap().len(), 4);
        assert_eq!(Group::symmetric(3).subgroups().unwrap().len(), 6);
        let klein = Group::product(vec![Group::cyclic(2), Group::cyclic(2)]);
        assert_eq!(klein.subgroups().unwrap().len(), 5);
    }

    #[test]
    fn hom_counts() {
        // |Hom(ℤ₆, S₃)| = 1 + 3 + 2 = 6 (orders dividing 6: identity, 3 involutions, 2 three-cycles)
        let g = Group::cyclic(6);
        let all = g.enumerate().unwrap();
        assert_eq!(homomorphisms(&g, &all, &Group::symmetric(3)).unwrap().len(), 6);
        // |Hom(S₃, S₃)| = 1 + 3 + 6 = 10
        let s3 = Group::symmetric(3);
        let all = s3.enumerate().unwrap();
        assert_eq!(homomorphisms(&s3, &all, &s3).unwrap().len(), 10);
        // trivial domain
        let triv = vec![s3.identity()];
        assert_eq!(homomorphisms(&s3, &triv, &Group::cyclic(3)).unwrap().len(), 1);
    }

    #[test]
    fn power() {
        let s3 = Group::symmetric(3);
        let c = perm(&[1, 2, 0]);
        assert_eq!(s3.pow(&c, &Integer::from(3i64)), s3.identity());
        assert_eq!(s3.pow(&c, &Integer::from(-1i64)), s3.inv(&c));
        assert_eq!(Group::Integers.pow(&Elem::int(3), &Integer::from(-4i64)), Elem::int(-12));
    }

    fn small_groups() -> Vec<Group> {
        vec![
            Group::cyclic(1),
            Group::cyclic(4),
            Group::cyclic(12),
            Group::symmetric(3),
            Group::symmetric(1),
            Group::product(vec![Group::cyclic(2), Group::cyclic(3)]),
            Group::product(vec![Group::cyclic(2), Group::symmetric(3)]),
        ]
    }

    #[test]
    fn exhaustive_axioms_small_groups() {
        for g in small_groups() {
            let els = g.enumerate().unwrap();
            let set: BTreeSet<_> = els.iter().cloned().collect();
            assert_eq!(set.len(), els.len(), "{g}: duplicates");
            for a in &els {
                assert_eq!(g.mul(a, &g.inv(a)), g.identity());
                assert_eq!(g.mul(&g.identity(), a), *a);
                for b in &els {
                    let ab = g.mul(a, b);
                    assert!(set.contains(&ab), "{g}: closure");
                    for c in &els {
                        assert_eq!(g.mul(&ab, c), g.mul(a, &g.mul(b, c)), "{g}: associativity");
                    }
                }
            }
            assert_eq!(g.generated_subgroup(&g.generators()).unwrap().len(), els.len());
        }
    }

    proptest! {
        #[test]
        fn integer_associativity(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
            let z = Group::Integers;
            let (a, b, c) = (Elem::int(a), Elem::int(b), Elem::int(c));
            prop_assert_eq!(z.mul(&z.mul(&a, &b), &c), z.mul(&a, &z.mul(&b, &c)));
        }

        #[test]
        fn s4_associativity(i in 0usize..24, j in 0usize..24, k in 0usize..24) {
            let g = Group::symmetric(4);
            let els = g.enumerate().unwrap();
            let (a, b, c) = (&els[i], &els[j], &els[k]);
            prop_assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
        }
    }
}

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::group::{Elem, Group};
use crate::integer::Integer;

use super::action::{Cycles, SetAction};
use super::CocycleError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// Finite G: `table[i][x] = φ(elements[i], x)`.
    Table(Vec<Vec<Elem>>),
    /// G = ℤⁿ: generating functions `xi[i][x] = φ(eᵢ, x)`, with telescoped
    /// products along every cycle of eᵢ (two full turns) for fast evaluation.
    Generating {
        xi: Vec<Vec<Elem>>,
        prefix: Vec<Vec<Vec<Elem>>>,
    },
}

/// A map φ: G×S → T, stored by table (finite G) or generating functions
/// (G = ℤⁿ). Construction checks shapes only; the cocycle identity is a
/// matter for [`super::validate_cocycle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    action: Arc<SetAction>,
    target: Group,
    repr: Repr,
}

impl Cocycle {
    /// Full table for a finite acting group, one row per element.
    pub fn from_table(
        action: Arc<SetAction>,
        target: Group,
        rows: Vec<(Elem, Vec<Elem>)>,
    ) -> Result<Cocycle, CocycleError> {
        let Some(elements) = action.elements() else {
            return Err(CocycleError::Unsupported(format!(
                "full tables for the infinite group {}",
                action.group()
            )));
        };
        let mut table: Vec<Option<Vec<Elem>>> = vec![None; elements.len()];
        for (g, vals) in rows {
            let i = action
                .element_index(&g)
                .ok_or_else(|| CocycleError::Table(format!("{g} is not in {}", action.group())))?;
            check_values(&target, action.size(), &vals)?;
            if table[i].replace(vals).is_some() {
                return Err(CocycleError::Table(format!("element {g} listed twice")));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| CocycleError::Table(format!("element {} missing", elements[i]))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cocycle {
            action,
            target,
            repr: Repr::Table(table),
        })
    }

    /// φ given on a generating set. For ℤⁿ these are the generating
    /// functions; for finite groups the table is completed with the cocycle
    /// identity, and inconsistent data is an error.
    pub fn from_generators(
        action: Arc<SetAction>,
        target: Group,
        gens: Vec<(Elem, Vec<Elem>)>,
    ) -> Result<Cocycle, CocycleError> {
        for (g, vals) in &gens {
            action.group().check(g)?;
            check_values(&target, action.size(), vals)?;
        }
        if let Some(cycles) = action.free_generators() {
            let basis = action.group().generators();
            let mut xi: Vec<Option<Vec<Elem>>> = vec![None; basis.len()];
            for (g, vals) in gens {
                let i = basis.iter().position(|b| *b == g).ok_or_else(|| {
                    CocycleError::Table(format!("{g} is not a standard generator"))
                })?;
                xi[i] = Some(vals);
            }
            let xi = xi
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| CocycleError::Table(format!("generator {} missing", basis[i]))))
                .collect::<Result<Vec<_>, _>>()?;
            let prefix = xi
                .iter()
                .zip(cycles)
                .map(|(x, c)| telescope(&target, x, c))
                .collect();
            return Ok(Cocycle {
                action,
                target,
                repr: Repr::Generating { xi, prefix },
            });
        }
        let group = action.group().clone();
        let size = action.size();
        let id = group.identity();
        let mut table: HashMap<Elem, Vec<Elem>> = HashMap::new();
        table.insert(id.clone(), vec![target.identity(); size]);
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for (s, vs) in &gens {
                let k = group.mul(s, &h);
                let row: Vec<Elem> = (0..size)
                    .map(|x| target.mul(&vs[action.act(&h, x)], &table[&h][x]))
                    .collect();
                match table.get(&k) {
                    Some(existing) if *existing != row => {
                        let x = existing.iter().zip(&row).position(|(a, b)| a != b).unwrap();
                        return Err(CocycleError::Inconsistent {
                            g: k.to_string(),
                            x,
                        });
                    }
                    Some(_) => {}
                    None => {
                        table.insert(k.clone(), row);
                        queue.push_back(k);
                    }
                }
            }
        }
        if Some(table.len() as u64) != group.order() {
            return Err(CocycleError::Table(format!("listed elements do not generate {group}")));
        }
        Cocycle::from_table(action, target, table.into_iter().collect())
    }

    /// G = ℤ with generating function ξ.
    pub fn generating(action: Arc<SetAction>, target: Group, xi: Vec<Elem>) -> Result<Cocycle, CocycleError> {
        let one = Elem::int(1);
        Cocycle::from_generators(action, target, vec![(one, xi)])
    }

    /// (g, x) ↦ g.
    pub fn trivial(action: Arc<SetAction>) -> Cocycle {
        let g = action.group().clone();
        let n = action.size();
        let gens = if action.is_free_abelian() {
            g.generators().into_iter().map(|s| (s.clone(), vec![s; n])).collect()
        } else {
            let els = action.elements().unwrap().to_vec();
            return Cocycle::from_table(
                action.clone(),
                g,
                els.into_iter().map(|e| (e.clone(), vec![e; n])).collect(),
            )
            .expect("trivial table");
        };
        Cocycle::from_generators(action, g, gens).expect("trivial generating data")
    }

    /// (g, x) ↦ identity of `target`.
    pub fn identity_valued(action: Arc<SetAction>, target: Group) -> Cocycle {
        let n = action.size();
        let id = target.identity();
        if action.is_free_abelian() {
            let gens = action.group().generators().into_iter().map(|s| (s, vec![id.clone(); n])).collect();
            Cocycle::from_generators(action, target, gens).expect("identity generating data")
        } else {
            let rows = action.elements().unwrap().iter().map(|e| (e.clone(), vec![id.clone(); n])).collect();
            Cocycle::from_table(action, target, rows).expect("identity table")
        }
    }

    /// Builds a table cocycle by evaluating `f` on every (g, x); finite G only.
    pub fn from_fn(
        action: Arc<SetAction>,
        target: Group,
        f: impl Fn(&Elem, usize) -> Elem,
    ) -> Result<Cocycle, CocycleError> {
        let n = action.size();
        if action.is_free_abelian() {
            let gens = action
                .group()
                .generators()
                .into_iter()
                .map(|s| {
                    let row = (0..n).map(|x| f(&s, x)).collect();
                    (s, row)
                })
                .collect();
            return Cocycle::from_generators(action, target, gens);
        }
        let rows = action
            .elements()
            .unwrap()
            .iter()
            .map(|g| (g.clone(), (0..n).map(|x| f(g, x)).collect()))
            .collect();
        Cocycle::from_table(action, target, rows)
    }

    pub fn action(&self) -> &Arc<SetAction> {
        &self.action
    }

    pub fn group(&self) -> &Group {
        self.action.group()
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn size(&self) -> usize {
        self.action.size()
    }

    pub fn is_generating(&self) -> bool {
        matches!(self.repr, Repr::Generating { .. })
    }

    /// Generating function of the i-th standard generator (G = ℤⁿ).
    pub fn generating_function(&self, i: usize) -> Option<&[Elem]> {
        match &self.repr {
            Repr::Generating { xi, .. } => xi.get(i).map(|v| v.as_slice()),
            Repr::Table(_) => None,
        }
    }

    /// ξ for G = ℤ.
    pub fn xi(&self) -> Option<&[Elem]> {
        match &self.repr {
            Repr::Generating { xi, .. } if xi.len() == 1 => Some(&xi[0]),
            _ => None,
        }
    }

    /// φ(g, x).
    pub fn eval(&self, g: &Elem, x: usize) -> Elem {
        self.evaluate(g, x).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn evaluate(&self, g: &Elem, x: usize) -> Result<Elem, CocycleError> {
        if x >= self.size() {
            return Err(CocycleError::Domain(x));
        }
        match &self.repr {
            Repr::Table(table) => {
                let i = self.action.element_index(g).ok_or_else(|| {
                    CocycleError::Group(crate::group::GroupError::Mismatch {
                        group: self.group().to_string(),
                        elem: format!("{g:?}"),
                    })
                })?;
                Ok(table[i][x].clone())
            }
            Repr::Generating { prefix, .. } => {
                let cycles = self.action.free_generators().unwrap();
                if let (Group::Integers, Elem::Int(n)) = (self.group(), g) {
                    return Ok(if n.is_zero() {
                        self.target.identity()
                    } else {
                        self.eval_along(&cycles[0], &prefix[0], n, x)
                    });
                }
                let coords = self.group().coordinates(g)?;
                let mut val = self.target.identity();
                let mut y = x;
                for i in (0..coords.len()).rev() {
                    let n = &coords[i];
                    if n.is_zero() {
                        continue;
                    }
                    let step = self.eval_along(&cycles[i], &prefix[i], n, y);
                    val = self.target.mul(&step, &val);
                    y = cycles[i].power(n, y);
                }
                Ok(val)
            }
        }
    }

    /// φ(n·e, x) along one generator: telescoping for n > 0, identity at 0,
    /// and φ(−n, x) = φ(n, τ⁻ⁿx)⁻¹.
    fn eval_along(&self, c: &Cycles, prefix: &[Vec<Elem>], n: &Integer, x: usize) -> Elem {
        let t = &self.target;
        if n.is_negative() {
            let m = -n;
            let y = c.power(n, x);
            return t.inv(&self.eval_along(c, prefix, &m, y));
        }
        let (id, pos) = c.slot[x];
        let p = &prefix[id as usize];
        let len = c.cycle_len(x);
        let short = |k: u64| -> Elem {
            // ξ(τ^{k−1}x)···ξ(x) for 0 ≤ k ≤ len
            let j = pos as usize;
            t.mul(&p[j + k as usize], &t.inv(&p[j]))
        };
        if let Some(k) = n.as_i64() {
            if (k as u64) <= len {
                return short(k as u64);
            }
        }
        let (q, r) = n.div_mod_floor(len);
        t.mul(&short(r), &t.pow(&short(len), &q))
    }

    /// The restriction to an invariant subset, re-indexed by position.
    pub fn restrict(&self, points: &[usize]) -> Result<Cocycle, CocycleError> {
        let action = Arc::new(self.action.restrict(points)?);
        let gens = if self.action.is_free_abelian() {
            self.group().generators()
        } else {
            self.action.elements().unwrap().to_vec()
        };
        let rows = gens
            .into_iter()
            .map(|g| {
                let vals = points.iter().map(|&x| self.eval(&g, x)).collect();
                (g, vals)
            })
            .collect();
        if self.action.is_free_abelian() {
            Cocycle::from_generators(action, self.target.clone(), rows)
        } else {
            Cocycle::from_table(action, self.target.clone(), rows)
        }
    }

    /// The same map over a new action on the same set (used when
    /// transporting along bijections).
    pub fn with_values(
        action: Arc<SetAction>,
        target: Group,
        f: impl Fn(&Elem, usize) -> Elem,
    ) -> Result<Cocycle, CocycleError> {
        Cocycle::from_fn(action, target, f)
    }

    /// Generator data in generator order: (element, values) pairs suitable
    /// for [`Cocycle::from_generators`].
    pub fn generator_values(&self) -> Vec<(Elem, Vec<Elem>)> {
        self.group()
            .generators()
            .into_iter()
            .map(|g| {
                let vals = (0..self.size()).map(|x| self.eval(&g, x)).collect();
                (g, vals)
            })
            .collect()
    }
}

fn check_values(target: &Group, size: usize, vals: &[Elem]) -> Result<(), CocycleError> {
    if vals.len() != size {
        return Err(CocycleError::Table(format!("expected {size} values, found {}", vals.len())));
    }
    for v in vals {
        target.check(v)?;
    }
    Ok(())
}

fn telescope(target: &Group, xi: &[Elem], c: &Cycles) -> Vec<Vec<Elem>> {
    c.cycles
        .iter()
        .map(|cycle| {
            let len = cycle.len();
            let mut p = Vec::with_capacity(2 * len + 1);
            p.push(target.identity());
            for k in 0..2 * len {
                let x = cycle[k % len] as usize;
                let next = target.mul(&xi[x], &p[k]);
                p.push(next);
            }
            p
        })
        .collect()
}

/// The induced action g·(x, t) = (g·x, φ(g,x)t) on S×T.
#[derive(Clone, Debug)]
pub struct InducedAction {
    cocycle: Cocycle,
}

impl InducedAction {
    pub fn act(&self, g: &Elem, point: &(usize, Elem)) -> (usize, Elem) {
        let (x, t) = point;
        let phi = self.cocycle.eval(g, *x);
        (self.cocycle.action().act(g, *x), self.cocycle.target().mul(&phi, t))
    }

    /// For finite T, the action on the finite set S×T with point
    /// `(x, t)` at index `x·|T| + index(t)`; validated by construction.
    pub fn to_set_action(&self) -> Result<(SetAction, Vec<Elem>), CocycleError> {
        let t_elems = self.cocycle.target().enumerate()?;
        let t_index: HashMap<&Elem, usize> = t_elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let n = self.cocycle.size() * t_elems.len();
        let point = |i: usize| (i / t_elems.len(), t_elems[i % t_elems.len()].clone());
        let image = |g: &Elem| -> Vec<usize> {
            (0..n)
                .map(|i| {
                    let (y, s) = self.act(g, &point(i));
                    y * t_elems.len() + t_index[&s]
                })
                .collect()
        };
        let action = self.cocycle.action();
        let set = if action.is_free_abelian() {
            let gens = action.group().generators().into_iter().map(|g| {
                let img = image(&g);
                (g, img)
            });
            SetAction::from_generators(action.group().clone(), n, gens.collect())?
        } else {
            let rows = action.elements().unwrap().iter().map(|g| (g.clone(), image(g))).collect();
            SetAction::from_table(action.group().clone(), n, rows)?
        };
        Ok((set, t_elems))
    }
}

/// g·(x, t) = (g·x, φ(g,x)t).
pub fn induced_product_action(phi: &Cocycle) -> InducedAction {
    InducedAction { cocycle: phi.clone() }
}

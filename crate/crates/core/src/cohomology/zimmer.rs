use std::collections::HashMap;
use std::sync::Arc;

use crate::cocycle::{Cocycle, SetAction};
use crate::group::{Elem, Group, Homomorphism};

use super::{same_action, CohomologyError, CohomologyWitness};

/// Left cosets G/H of a finite group with the translation action. Cosets are
/// ordered by their first element in the enumeration of G, so H itself is
/// coset 0.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub group: Group,
    pub subgroup: Vec<Elem>,
    pub cosets: Vec<Vec<Elem>>,
    pub action: Arc<SetAction>,
    coset_of: HashMap<Elem, usize>,
}

impl CosetSpace {
    pub fn coset_of(&self, g: &Elem) -> usize {
        self.coset_of[g]
    }

    pub const BASE: usize = 0;
}

pub fn coset_space(group: &Group, subgroup: &[Elem]) -> Result<CosetSpace, CohomologyError> {
    let elements = group.enumerate()?;
    let mut sub = group.generated_subgroup(subgroup)?;
    sub.sort();
    if sub.len() != subgroup.len() {
        return Err(CohomologyError::Precondition("the given elements do not form a subgroup".into()));
    }
    let mut coset_of: HashMap<Elem, usize> = HashMap::new();
    let mut cosets: Vec<Vec<Elem>> = Vec::new();
    for g in &elements {
        if coset_of.contains_key(g) {
            continue;
        }
        let mut c: Vec<Elem> = sub.iter().map(|h| group.mul(g, h)).collect();
        for k in &c {
            coset_of.insert(k.clone(), cosets.len());
        }
        c.sort();
        cosets.push(c);
    }
    let rows = elements
        .iter()
        .map(|g| {
            let img = cosets.iter().map(|c| coset_of[&group.mul(g, &c[0])]).collect();
            (g.clone(), img)
        })
        .collect();
    let action = Arc::new(SetAction::from_table(group.clone(), cosets.len(), rows)?);
    Ok(CosetSpace {
        group: group.clone(),
        subgroup: sub,
        cosets,
        action,
        coset_of,
    })
}

/// A coset space with a cross-section η: G/H → G, η(H) = identity.
#[derive(Clone, Debug)]
pub struct ZimmerData {
    pub space: CosetSpace,
    pub section: Vec<Elem>,
}

impl ZimmerData {
    /// The default section picks the first element of each coset in the
    /// enumeration of G (the identity for H itself).
    pub fn new(space: CosetSpace) -> ZimmerData {
        let elements = space.group.enumerate().expect("finite");
        let mut section: Vec<Option<Elem>> = vec![None; space.cosets.len()];
        for g in elements {
            let c = space.coset_of(&g);
            if section[c].is_none() {
                section[c] = Some(g);
            }
        }
        ZimmerData {
            section: section.into_iter().map(Option::unwrap).collect(),
            space,
        }
    }

    pub fn with_section(space: CosetSpace, section: Vec<Elem>) -> Result<ZimmerData, CohomologyError> {
        if section.len() != space.cosets.len() {
            return Err(CohomologyError::Precondition("section has the wrong length".into()));
        }
        if !space.group.is_identity(&section[CosetSpace::BASE]) {
            return Err(CohomologyError::Precondition("η(H) must be the identity".into()));
        }
        for (x, g) in section.iter().enumerate() {
            space.group.check(g)?;
            if space.coset_of(g) != x {
                return Err(CohomologyError::Precondition(format!("η({x})·H is not coset {x}")));
            }
        }
        Ok(ZimmerData { space, section })
    }

    /// φ₀(g, x) = η(gx)⁻¹·g·η(x) ∈ H.
    pub fn phi0(&self, g: &Elem, x: usize) -> Elem {
        let grp = &self.space.group;
        let gx = self.space.action.act(g, x);
        grp.mul(&grp.mul(&grp.inv(&self.section[gx]), g), &self.section[x])
    }
}

/// π_φ(h) = φ(h, H), checked to be a homomorphism.
pub fn zimmer_hom(phi: &Cocycle, data: &ZimmerData) -> Result<Homomorphism, CohomologyError> {
    if !same_action(phi.action(), &data.space.action) {
        return Err(CohomologyError::Precondition("cocycle is not over the coset action".into()));
    }
    let pi = Homomorphism {
        target: phi.target().clone(),
        map: data
            .space
            .subgroup
            .iter()
            .map(|h| (h.clone(), phi.eval(h, CosetSpace::BASE)))
            .collect(),
    };
    if !pi.is_homomorphism(&data.space.group) {
        return Err(CohomologyError::Precondition("φ(·, H) is not a homomorphism; φ is not a cocycle".into()));
    }
    Ok(pi)
}

/// π∘φ₀.
pub fn zimmer_cocycle(pi: &Homomorphism, data: &ZimmerData) -> Result<Cocycle, CohomologyError> {
    let keys: Vec<&Elem> = pi.map.keys().collect();
    if keys.len() != data.space.subgroup.len() || !keys.iter().zip(&data.space.subgroup).all(|(a, b)| *a == b) {
        return Err(CohomologyError::Precondition("homomorphism domain is not H".into()));
    }
    if !pi.is_homomorphism(&data.space.group) {
        return Err(CohomologyError::Precondition("not a homomorphism".into()));
    }
    Ok(Cocycle::from_fn(data.space.action.clone(), pi.target.clone(), |g, x| {
        pi.map[&data.phi0(g, x)].clone()
    })?)
}

/// τ(x) = φ(η(x), H)⁻¹, which carries φ to π_φ∘φ₀.
pub fn remark_witness(phi: &Cocycle, data: &ZimmerData) -> CohomologyWitness {
    let t = phi.target();
    CohomologyWitness::set(
        data.section
            .iter()
            .map(|eta| t.inv(&phi.eval(eta, CosetSpace::BASE)))
            .collect(),
    )
}

/// Given π_{φ′}(h) = t·π_φ(h)·t⁻¹ for all h, the witness
/// ψ(x) = φ′(η(x),H)·t·φ(η(x),H)⁻¹ carries φ to φ′. For abelian T the
/// element `t` is ignored.
pub fn zimmer_witness(
    phi: &Cocycle,
    phi2: &Cocycle,
    t: &Elem,
    data: &ZimmerData,
) -> Result<CohomologyWitness, CohomologyError> {
    let target = phi.target();
    if phi2.target() != target {
        return Err(CohomologyError::Precondition("cocycles have different targets".into()));
    }
    let t = if target.is_abelian() {
        target.identity()
    } else {
        target.check(t)?;
        t.clone()
    };
    let pi = zimmer_hom(phi, data)?;
    let pi2 = zimmer_hom(phi2, data)?;
    if pi.conjugate(&t) != pi2 {
        return Err(CohomologyError::Precondition(format!(
            "the homomorphisms are not conjugate by {t}"
        )));
    }
    Ok(CohomologyWitness::set(
        data.section
            .iter()
            .map(|eta| {
                let a = phi2.eval(eta, CosetSpace::BASE);
                let b = target.inv(&phi.eval(eta, CosetSpace::BASE));
                target.mul(&target.mul(&a, &t), &b)
            })
            .collect(),
    ))
}

use std::sync::Arc;

use crate::cocycle::{Cocycle, SetAction};
use crate::cohomology::{transitive_conjugacy, verify_cohomologous, Conjugacy};
use crate::group::{Elem, Group};
use crate::integer::Integer;

use super::{bouquet_system, ConstructionError, System};

/// Parameters of the EPK system (ℤ_a, σ_{a,b}, φ_{a,b}), defined by
/// bm + k = φ_{a,b}(m,k)·a + σ_{a,b}(m,k) with 0 ≤ σ < a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpkSystem {
    pub a: u64,
    pub b: i64,
    /// b = q·a + r with 0 ≤ r < a
    pub q: i64,
    pub r: u64,
    /// c = a − r
    pub c: u64,
    /// d = gcd(a, b), a′ = a/d, b′ = b/d
    pub d: u64,
    pub a1: u64,
    pub b1: i64,
}

impl EpkSystem {
    pub fn new(a: i64, b: i64) -> Result<EpkSystem, ConstructionError> {
        if a <= 0 {
            return Err(ConstructionError::Parameters(format!("a must be positive, got {a}")));
        }
        let a = a as u64;
        let q = b.div_euclid(a as i64);
        let r = b.rem_euclid(a as i64) as u64;
        let d = num_integer::gcd(a, b.unsigned_abs());
        Ok(EpkSystem {
            a,
            b,
            q,
            r,
            c: a - r,
            d,
            a1: a / d,
            b1: b / d as i64,
        })
    }

    /// (σ_{a,b}(m,k), φ_{a,b}(m,k)).
    pub fn divide(&self, m: &Integer, k: u64) -> (u64, Integer) {
        let total = &(&Integer::from(self.b) * m) + &Integer::from(k);
        let (phi, sigma) = total.div_mod_floor(self.a);
        (sigma, phi)
    }

    /// ξ(k) = q for k < c and q + 1 for k ≥ c.
    pub fn generating_function(&self) -> Vec<i64> {
        (0..self.a).map(|k| if k < self.c { self.q } else { self.q + 1 }).collect()
    }

    pub fn tau(&self) -> Vec<usize> {
        (0..self.a).map(|k| ((k + self.r) % self.a) as usize).collect()
    }

    pub fn cocycle(&self) -> Cocycle {
        let action = Arc::new(SetAction::integers(self.tau()).expect("translation is a permutation"));
        Cocycle::generating(
            action,
            Group::Integers,
            self.generating_function().into_iter().map(Elem::int).collect(),
        )
        .expect("generating data")
    }

    /// The system on the bouquet E_{ℤ_a}, edges labeled 0..a.
    pub fn system(&self) -> Result<System, ConstructionError> {
        bouquet_system(&self.cocycle(), None)
    }
}

/// One orbit i + dℤ_a of σ_{a,b}, with θ: k ↦ i + kd from ℤ_{a′}.
#[derive(Clone, Debug)]
pub struct EpkOrbit {
    pub orbit: Vec<usize>,
    pub theta: Vec<usize>,
    pub target: EpkSystem,
    /// The restricted cocycle, indexed by position in `orbit`.
    pub restricted: Cocycle,
    /// θ and ψ relating φ_{a′,b′} to `restricted` (θ in positions).
    pub conjugacy: Conjugacy,
    pub verified: bool,
}

/// Splits an EPK system into its d = gcd(a, b) orbits, each certified
/// cohomology conjugate to (ℤ_{a′}, σ_{a′,b′}, φ_{a′,b′}). For b = 0 every
/// point is its own orbit and the target is (ℤ₁, σ_{1,0}, φ_{1,0}).
pub fn epk_decompose(sys: &EpkSystem) -> Result<Vec<EpkOrbit>, ConstructionError> {
    let phi = sys.cocycle();
    let orbits = phi.action().orbits();
    debug_assert_eq!(orbits.len() as u64, sys.d);
    let target = EpkSystem::new(sys.a1 as i64, sys.b1)?;
    let tphi = target.cocycle();
    let mut out = Vec::with_capacity(orbits.len());
    for orbit in orbits {
        let restricted = phi.restrict(&orbit)?;
        let conj = transitive_conjugacy(&tphi, &restricted)?.ok_or_else(|| {
            ConstructionError::Invalid(format!("orbit {orbit:?} is not conjugate to the quotient system"))
        })?;
        let verified = verify_cohomologous(&conj.transported, &restricted, &conj.witness);
        let theta = conj.theta.iter().map(|&p| orbit[p]).collect();
        out.push(EpkOrbit {
            orbit,
            theta,
            target: target.clone(),
            restricted,
            conjugacy: conj,
            verified,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::signature;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| Elem::int(x)).collect()
    }

    #[test]
    fn generating_function_examples() {
        let s = EpkSystem::new(2, 1).unwrap();
        assert_eq!(s.generating_function(), vec![0, 1]);
        let zero = EpkSystem::new(5, 0).unwrap().cocycle();
        for m in -6..6 {
            for k in 0..5 {
                assert_eq!(zero.eval(&Elem::int(m), k), Elem::int(0));
            }
        }
        let diag = EpkSystem::new(4, 4).unwrap().cocycle();
        for m in -6..6 {
            for k in 0..4 {
                assert_eq!(diag.eval(&Elem::int(m), k), Elem::int(m));
            }
        }
        assert!(EpkSystem::new(0, 1).is_err());
        assert!(EpkSystem::new(-2, 1).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let parts = epk_decompose(&EpkSystem::new(4, 2).unwrap()).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].orbit, vec![0, 2]);
        assert_eq!(parts[1].orbit, vec![1, 3]);
        for p in &parts {
            assert_eq!((p.target.a, p.target.b), (2, 1));
            assert_eq!(signature(&p.restricted).unwrap(), Elem::int(1));
            assert!(p.verified);
        }
        assert_eq!(parts[1].theta, vec![1, 3]);
        let parts = epk_decompose(&EpkSystem::new(6, 4).unwrap()).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!((p.target.a, p.target.b), (3, 2));
            assert_eq!(signature(&p.restricted).unwrap(), Elem::int(2));
        }
        let single = epk_decompose(&EpkSystem::new(5, 3).unwrap()).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].theta, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn restricted_generating_function_matches_formula() {
        for a in 1..=12i64 {
            for b in 0..a {
                let s = EpkSystem::new(a, b).unwrap();
                let (a1, r1) = (s.a1 as usize, (s.b1.rem_euclid(s.a1 as i64)) as usize);
                for p in epk_decompose(&s).unwrap() {
                    let expect: Vec<i64> = (0..a1).map(|k| if k < a1 - r1 { s.q } else { s.q + 1 }).collect();
                    assert_eq!(p.restricted.xi().unwrap(), ints(&expect).as_slice());
                    // θ transports exactly, so the witness is trivial
                    assert_eq!(p.conjugacy.transported, p.restricted);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn division_identity(a in 1i64..13, b in -24i64..=24, m in -50i64..50, k in 0u64..12) {
            let s = EpkSystem::new(a, b).unwrap();
            let k = k % a as u64;
            let (sigma, phi) = s.divide(&Integer::from(m), k);
            prop_assert!(sigma < a as u64);
            prop_assert_eq!(Integer::from(b * m + k as i64), &(&phi * &Integer::from(a)) + &Integer::from(sigma));
            let c = s.cocycle();
            prop_assert_eq!(c.action().act(&Elem::int(m), k as usize), sigma as usize);
            prop_assert_eq!(c.eval(&Elem::int(m), k as usize), Elem::Int(phi));
        }
    }
}

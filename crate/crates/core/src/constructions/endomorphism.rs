use std::collections::HashMap;
use std::sync::Arc;

use crate::cocycle::{Cocycle, SetAction};
use crate::group::Group;
use crate::integer::Integer;

use super::ConstructionError;

/// A square integer matrix acting on column vectors of ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<IntMatrix, ConstructionError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(ConstructionError::Parameters("matrix must be square and nonempty".into()));
        }
        Ok(IntMatrix { rows })
    }

    pub fn scalar(n: usize, c: i64) -> IntMatrix {
        IntMatrix {
            rows: (0..n).map(|i| (0..n).map(|j| if i == j { c } else { 0 }).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[i128]) -> Vec<i128> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(&a, &x)| a as i128 * x).sum())
            .collect()
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> IntMatrix {
        IntMatrix {
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip_r)
                .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip_c).map(|(_, &x)| x).collect())
                .collect(),
        }
    }

    pub fn det(&self) -> i128 {
        match self.dim() {
            0 => 1,
            1 => self.rows[0][0] as i128,
            n => (0..n)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * self.rows[0][j] as i128 * self.minor(0, j).det()
                })
                .sum(),
        }
    }

    /// adj(A), so that A·adj(A) = det(A)·I.
    pub fn adjugate(&self) -> Vec<Vec<i128>> {
        let n = self.dim();
        if n == 1 {
            return vec![vec![1]];
        }
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * self.minor(j, i).det()
                    })
                    .collect()
            })
            .collect()
    }
}

struct Cosets {
    adj: Vec<Vec<i128>>,
    det: i128,
    modulus: i128,
}

impl Cosets {
    fn key(&self, v: &[i128]) -> Vec<i128> {
        self.adj
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, x)| a * x).sum::<i128>().rem_euclid(self.modulus))
            .collect()
    }

    /// A⁻¹·v for v ∈ Aℤⁿ.
    fn solve(&self, v: &[i128]) -> Vec<i128> {
        self.adj
            .iter()
            .map(|r| {
                let s: i128 = r.iter().zip(v).map(|(a, x)| a * x).sum();
                debug_assert_eq!(s % self.det, 0);
                s / self.det
            })
            .collect()
    }
}

/// G = ℤⁿ, ρ(m) = A·m with det A ≠ 0, τ(m) = B·m, and S_ρ a set of coset
/// representatives of ℤⁿ/Aℤⁿ containing 0 (the least |det A| box points in
/// lexicographic order when not given). Returns the representatives, the
/// action g·′x = s(τ(g)+x) and φ_τ(g,x) = ρ⁻¹(τ(g)+x − s(τ(g)+x)).
pub fn endomorphism_system(
    rho: &IntMatrix,
    tau: &IntMatrix,
    reps: Option<Vec<Vec<i64>>>,
) -> Result<(Vec<Vec<i64>>, Cocycle), ConstructionError> {
    let n = rho.dim();
    if tau.dim() != n {
        return Err(ConstructionError::Parameters("ρ and τ have different sizes".into()));
    }
    let det = rho.det();
    if det == 0 {
        return Err(ConstructionError::Parameters("ρ is not injective (det = 0)".into()));
    }
    let index = det.unsigned_abs();
    if index > 4096 {
        return Err(ConstructionError::Parameters(format!("|det ρ| = {index} is too large")));
    }
    let cos = Cosets {
        adj: rho.adjugate(),
        det,
        modulus: det.abs(),
    };
    let reps: Vec<Vec<i128>> = match reps {
        Some(r) => r.into_iter().map(|v| v.into_iter().map(i128::from).collect()).collect(),
        None => {
            let mut found: Vec<Vec<i128>> = Vec::new();
            let mut seen = std::collections::HashSet::new();
            let side = index as i128;
            let mut point = vec![0i128; n];
            'outer: loop {
                if seen.insert(cos.key(&point)) {
                    found.push(point.clone());
                    if found.len() as u128 == index {
                        break;
                    }
                }
                // next point of the box in lexicographic order
                let mut i = n;
                loop {
                    if i == 0 {
                        break 'outer;
                    }
                    i -= 1;
                    point[i] += 1;
                    if point[i] < side {
                        break;
                    }
                    point[i] = 0;
                }
            }
            found
        }
    };
    if reps.len() as u128 != index || reps.iter().any(|r| r.len() != n) {
        return Err(ConstructionError::Parameters(format!(
            "need exactly |det ρ| = {index} representatives in ℤ^{n}"
        )));
    }
    if reps.iter().all(|r| r.iter().any(|&x| x != 0)) {
        return Err(ConstructionError::Parameters("representatives must contain 0".into()));
    }
    let mut by_key: HashMap<Vec<i128>, usize> = HashMap::new();
    for (i, r) in reps.iter().enumerate() {
        if by_key.insert(cos.key(r), i).is_some() {
            return Err(ConstructionError::Parameters("two representatives share a coset".into()));
        }
    }
    let group = Group::free_abelian(n);
    let to_elem = |v: &[i128]| -> Result<crate::group::Elem, ConstructionError> {
        let coords = v
            .iter()
            .map(|&x| {
                i64::try_from(x)
                    .map(Integer::from)
                    .map_err(|_| ConstructionError::Parameters("coordinate overflow".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(group.from_coordinates(coords))
    };
    let mut images = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for (i, g) in group.generators().into_iter().enumerate() {
        let mut unit = vec![0i128; n];
        unit[i] = 1;
        let tg = tau.apply(&unit);
        let mut img = Vec::with_capacity(reps.len());
        let mut val = Vec::with_capacity(reps.len());
        for x in &reps {
            let y: Vec<i128> = tg.iter().zip(x).map(|(a, b)| a + b).collect();
            let s = by_key[&cos.key(&y)];
            let diff: Vec<i128> = y.iter().zip(&reps[s]).map(|(a, b)| a - b).collect();
            img.push(s);
            val.push(to_elem(&cos.solve(&diff))?);
        }
        images.push((g.clone(), img));
        values.push((g, val));
    }
    let action = Arc::new(SetAction::from_generators(group.clone(), reps.len(), images)?);
    let cocycle = Cocycle::from_generators(action, group, values)?;
    let reps = reps.into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
    Ok((reps, cocycle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::validate_cocycle;
    use crate::constructions::EpkSystem;
    use crate::group::Elem;

    #[test]
    fn recovers_epk() {
        for a in 2..7i64 {
            for b in -5..8i64 {
                let (reps, phi) = endomorphism_system(&IntMatrix::scalar(1, a), &IntMatrix::scalar(1, b), None).unwrap();
                assert_eq!(reps, (0..a).map(|k| vec![k]).collect::<Vec<_>>());
                let epk = EpkSystem::new(a, b).unwrap().cocycle();
                assert_eq!(phi.action().tau(), epk.action().tau());
                assert_eq!(phi.xi(), epk.xi());
            }
        }
        let (_, phi) = endomorphism_system(&IntMatrix::scalar(1, 2), &IntMatrix::scalar(1, 1), None).unwrap();
        assert_eq!(phi.xi().unwrap(), &[Elem::int(0), Elem::int(1)]);
    }

    #[test]
    fn rank_two_diagonal() {
        let a = IntMatrix::new(vec![vec![2, 0], vec![0, 1]]).unwrap();
        let (reps, phi) = endomorphism_system(&a, &IntMatrix::scalar(2, 1), None).unwrap();
        assert_eq!(reps, vec![vec![0, 0], vec![1, 0]]);
        assert!(validate_cocycle(&phi).is_valid());
        let g = phi.group().clone();
        let e1 = g.parse_elem("(1,0)").unwrap();
        let e2 = g.parse_elem("(0,1)").unwrap();
        assert_eq!(phi.action().act(&e1, 1), 0);
        assert_eq!(phi.eval(&e1, 1), g.parse_elem("(1,0)").unwrap());
        assert_eq!(phi.eval(&e2, 0), g.parse_elem("(0,1)").unwrap());
    }

    #[test]
    fn nondiagonal_matrix_is_valid() {
        let a = IntMatrix::new(vec![vec![1, 1], vec![-1, 2]]).unwrap();
        assert_eq!(a.det(), 3);
        let b = IntMatrix::new(vec![vec![0, 1], vec![1, 1]]).unwrap();
        let (reps, phi) = endomorphism_system(&a, &b, None).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(validate_cocycle(&phi).is_valid());
        // φ(g,x) = A⁻¹(Bg + x − s(Bg + x)) recomputed directly
        let g = phi.group().clone();
        for (i, gen) in g.generators().iter().enumerate() {
            for (x, rep) in reps.iter().enumerate() {
                let y = phi.action().act(gen, x);
                let v: Vec<i64> = (0..2).map(|r| b.rows[r][i] + rep[r] - reps[y][r]).collect();
                let w = g.coordinates(&phi.eval(gen, x)).unwrap();
                let back: Vec<i64> = (0..2)
                    .map(|r| (0..2).map(|c| a.rows[r][c] * w[c].as_i64().unwrap()).sum())
                    .collect();
                assert_eq!(back, v);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(endomorphism_system(&IntMatrix::scalar(1, 0), &IntMatrix::scalar(1, 1), None).is_err());
        assert!(endomorphism_system(&IntMatrix::scalar(1, 2), &IntMatrix::scalar(1, 1), Some(vec![vec![1], vec![3]])).is_err());
        assert!(endomorphism_system(&IntMatrix::scalar(1, 2), &IntMatrix::scalar(1, 1), Some(vec![vec![0], vec![2]])).is_err());
        assert!(endomorphism_system(&IntMatrix::scalar(1, 2), &IntMatrix::scalar(1, 1), Some(vec![vec![0], vec![-1]])).is_ok());
    }
}

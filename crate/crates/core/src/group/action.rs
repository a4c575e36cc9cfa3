use std::collections::VecDeque;

use rayon::prelude::*;

use super::abelian::{Character, FiniteAbelianGroup};
use super::finite::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// An action of `K` on `A` by automorphisms, stored as one integer matrix
/// per element of `K` acting on coordinate tuples modulo the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    rank: usize,
    matrices: Vec<Vec<i64>>,
}

impl Action {
    pub fn trivial(k: &FiniteGroup, a: &FiniteAbelianGroup) -> Self {
        let r = a.rank();
        let id = identity_matrix(r).concat();
        Self {
            rank: r,
            matrices: vec![id; k.order()],
        }
    }

    /// Extends generator matrices to all of `K` along the multiplication
    /// table, rejecting inconsistent assignments and non-generating sets.
    pub fn from_generators(
        k: &FiniteGroup,
        a: &FiniteAbelianGroup,
        gens: &[(usize, Vec<Vec<i64>>)],
    ) -> Result<Self> {
        let r = a.rank();
        let n = a.factors();
        let mut flat_gens = Vec::with_capacity(gens.len());
        for (g, rows) in gens {
            if *g >= k.order() {
                return Err(Error::InvalidAction(format!(
                    "generator {g} is not an element of K"
                )));
            }
            if rows.len() != r || rows.iter().any(|row| row.len() != r) {
                return Err(Error::InvalidAction(format!(
                    "matrix for generator {g} must be {r}x{r}"
                )));
            }
            let mut m: Vec<i64> = rows.iter().flatten().copied().collect();
            reduce_matrix(&mut m, n);
            for i in 0..r {
                for j in 0..r {
                    if (n[j] * m[i * r + j]).rem_euclid(n[i]) != 0 {
                        return Err(Error::InvalidAction(format!(
                            "matrix for generator {g}: entry ({i},{j}) does not define a map Z/{} -> Z/{}",
                            n[j], n[i]
                        )));
                    }
                }
            }
            flat_gens.push((*g, m));
        }

        let mut matrices: Vec<Option<Vec<i64>>> = vec![None; k.order()];
        let mut id = identity_matrix(r).concat();
        reduce_matrix(&mut id, n);
        matrices[k.identity()] = Some(id);
        let mut queue = VecDeque::from([k.identity()]);
        while let Some(x) = queue.pop_front() {
            let mx = matrices[x].clone().expect("queued elements are assigned");
            for (g, mg) in &flat_gens {
                let y = k.mul(*g, x);
                let mut my = int_matmul(mg, &mx, r);
                reduce_matrix(&mut my, n);
                match &matrices[y] {
                    None => {
                        matrices[y] = Some(my);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != my => {
                        return Err(Error::InvalidAction(format!(
                            "generator matrices are not a homomorphism: two words for element {y} act differently"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let matrices = matrices
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                m.ok_or_else(|| {
                    Error::InvalidAction(format!("generators do not reach element {k} of K"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rank: r,
            matrices: matrices.into_iter().map(|m| m.to_vec()).collect(),
        })
    }

    /// Row-major `rank × rank` matrix of `k`.
    pub fn matrix(&self, k: usize) -> &[i64] {
        &self.matrices[k]
    }

    pub fn apply_tuple(&self, a: &FiniteAbelianGroup, k: usize, x: &[i64]) -> Vec<i64> {
        let m = &self.matrices[k];
        let r = self.rank;
        let mut y: Vec<i64> = (0..r)
            .map(|i| (0..r).map(|j| m[i * r + j] * x[j]).sum())
            .collect();
        a.reduce(&mut y);
        y
    }

    /// `k · a` on element indices.
    pub fn apply(&self, a: &FiniteAbelianGroup, k: usize, x: usize) -> usize {
        a.index(&self.apply_tuple(a, k, &a.tuple(x)))
    }
}

fn identity_matrix(r: usize) -> Vec<Vec<i64>> {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn reduce_matrix(m: &mut [i64], factors: &[i64]) {
    let r = factors.len();
    for i in 0..r {
        for j in 0..r {
            m[i * r + j] = m[i * r + j].rem_euclid(factors[i]);
        }
    }
}

fn int_matmul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            for j in 0..r {
                out[i * r + j] += a[i * r + k] * b[k * r + j];
            }
        }
    }
    out
}

/// `k · χ`, defined by `(k·χ)(b) = χ(k⁻¹ · b)`.
pub fn act_on_character(
    k_group: &FiniteGroup,
    a: &FiniteAbelianGroup,
    action: &Action,
    k: usize,
    chi: &Character,
) -> Character {
    let m = action.matrix(k_group.inv(k));
    let r = a.rank();
    let n = a.factors();
    let l = a.exponent();
    let freq = (0..r)
        .map(|j| {
            // Phase of χ(M e_j) in units of 1/l; it is an n_j-th root of unity.
            let p: i64 = (0..r)
                .map(|i| (chi.freq[i] * m[i * r + j]).rem_euclid(n[i]) * (l / n[i]))
                .sum();
            let p = p.rem_euclid(l);
            debug_assert_eq!(p % (l / n[j]), 0);
            p / (l / n[j])
        })
        .collect();
    Character { freq }
}

/// The action of `K` on the enumerated dual `Â`, tabulated.
#[derive(Clone, Debug)]
pub struct DualAction {
    dual_order: usize,
    table: Vec<usize>,
}

/// A `K`-orbit in `Â` with its smallest-index member as representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl DualAction {
    pub fn new(
        k_group: &FiniteGroup,
        a: &FiniteAbelianGroup,
        action: &Action,
        dual: &[Character],
    ) -> Self {
        let dual_order = dual.len();
        let table = (0..k_group.order())
            .into_par_iter()
            .flat_map_iter(|k| {
                dual.iter()
                    .map(|chi| a.index(&act_on_character(k_group, a, action, k, chi).freq))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self { dual_order, table }
    }

    #[inline]
    pub fn act(&self, k: usize, chi: usize) -> usize {
        self.table[k * self.dual_order + chi]
    }

    /// Orbits of `K` on `Â`, ordered by representative index.
    pub fn orbits(&self, k_group: &FiniteGroup) -> Vec<Orbit> {
        let mut seen = vec![false; self.dual_order];
        let mut out = Vec::new();
        for chi in 0..self.dual_order {
            if seen[chi] {
                continue;
            }
            let mut members: Vec<usize> = (0..k_group.order()).map(|k| self.act(k, chi)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            out.push(Orbit {
                representative: chi,
                members,
            });
        }
        out
    }

    /// `K_χ = {k ∈ K : k·χ = χ}`.
    pub fn stabilizer(&self, k_group: &FiniteGroup, chi: usize) -> Subgroup {
        let elements: Vec<usize> = (0..k_group.order())
            .filter(|&k| self.act(k, chi) == chi)
            .collect();
        Subgroup::new(k_group, &elements).expect("stabilizers are subgroups")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian::dual_group;

    fn negation_on_z4() -> (FiniteGroup, FiniteAbelianGroup, Action) {
        let k = FiniteGroup::cyclic(2);
        let a = FiniteAbelianGroup::new(vec![4]).unwrap();
        let act = Action::from_generators(&k, &a, &[(1, vec![vec![-1]])]).unwrap();
        (k, a, act)
    }

    #[test]
    fn identity_acts_trivially_on_characters() {
        let (k, a, act) = negation_on_z4();
        for chi in dual_group(&a) {
            assert_eq!(act_on_character(&k, &a, &act, 0, &chi), chi);
        }
    }

    #[test]
    fn negation_maps_frequency_to_its_negative() {
        let (k, a, act) = negation_on_z4();
        for (j, chi) in dual_group(&a).iter().enumerate() {
            let moved = act_on_character(&k, &a, &act, 1, chi);
            assert_eq!(moved.freq[0], (4 - j as i64) % 4);
            // Pointwise: (k·χ)(b) = χ(k⁻¹·b).
            for b in 0..4 {
                let lhs = a.eval(&moved, b);
                let rhs = a.eval(chi, act.apply(&a, k.inv(1), b));
                assert!((lhs - rhs).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn orbits_and_stabilizers_of_negation() {
        let (k, a, act) = negation_on_z4();
        let dual = dual_group(&a);
        let da = DualAction::new(&k, &a, &act, &dual);
        let orbits = da.orbits(&k);
        let members: Vec<Vec<usize>> = orbits.iter().map(|o| o.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 3], vec![2]]);
        assert_eq!(orbits[1].representative, 1);
        assert_eq!(da.stabilizer(&k, 0).order(), 2);
        assert_eq!(da.stabilizer(&k, 1).order(), 1);
        assert_eq!(da.stabilizer(&k, 2).order(), 2);
    }

    #[test]
    fn trivial_action_gives_singleton_orbits() {
        let k = FiniteGroup::cyclic(3);
        let a = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let act = Action::trivial(&k, &a);
        let da = DualAction::new(&k, &a, &act, &dual_group(&a));
        assert!(da.orbits(&k).iter().all(|o| o.members.len() == 1));
    }

    #[test]
    fn inconsistent_generators_are_rejected() {
        let k = FiniteGroup::cyclic(2);
        let a = FiniteAbelianGroup::new(vec![5]).unwrap();
        // Multiplication by 2 has order 4 mod 5, not 2.
        let err = Action::from_generators(&k, &a, &[(1, vec![vec![2]])]).unwrap_err();
        assert!(err.to_string().contains("homomorphism"), "{err}");
        let k4 = FiniteGroup::cyclic(4);
        let err = Action::from_generators(&k4, &a, &[(2, vec![vec![4]])]).unwrap_err();
        assert!(err.to_string().contains("do not reach"), "{err}");
    }

    #[test]
    fn ill_defined_matrix_is_rejected() {
        let k = FiniteGroup::cyclic(1);
        let a = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let err =
            Action::from_generators(&k, &a, &[(0, vec![vec![1, 1], vec![0, 1]])]).unwrap_err();
        assert!(err.to_string().contains("does not define a map"), "{err}");
    }
}

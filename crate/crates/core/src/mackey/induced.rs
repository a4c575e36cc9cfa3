use std::sync::Arc;

use num_complex::Complex64;

use super::function::PartialFourier;
use crate::error::{Error, Result};
use crate::group::{CosetSystem, SemidirectGroup, Subgroup, UnitaryIrrep};
use crate::linalg::{CMatrix, ZERO};

/// `ind_{S⋉A}^G(μ ⊗ χ)` for a subgroup `S ⊆ K_χ`, realized on `ℓ²(K/S, μ)`
/// in the basis `(transversal index j, basis index α)` at position `j·d + α`.
#[derive(Clone, Debug)]
pub struct InducedRep {
    chi: usize,
    mu: UnitaryIrrep,
    cosets: CosetSystem,
    /// `t_j · χ` for each transversal element.
    moved: Vec<usize>,
}

impl InducedRep {
    pub fn new(g: &SemidirectGroup, chi: usize, mu: UnitaryIrrep) -> Result<Self> {
        if chi >= g.a_order() {
            return Err(Error::Input(format!("character index {chi} out of range")));
        }
        let stab = g.stabilizer(chi);
        if !mu.subgroup().is_subgroup_of(&stab) {
            return Err(Error::Precondition(format!(
                "subgroup {} is not contained in the stabilizer {} of character {}",
                mu.subgroup(),
                stab,
                g.character_label(chi)
            )));
        }
        let k_all: Vec<usize> = (0..g.k_order()).collect();
        let cosets = CosetSystem::new(g.k(), &k_all, mu.subgroup());
        let moved = cosets
            .transversal()
            .iter()
            .map(|&t| g.act_dual(t, chi))
            .collect();
        Ok(Self {
            chi,
            mu,
            cosets,
            moved,
        })
    }

    pub fn chi(&self) -> usize {
        self.chi
    }

    pub fn mu(&self) -> &UnitaryIrrep {
        &self.mu
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        self.mu.subgroup()
    }

    pub fn cosets(&self) -> &CosetSystem {
        &self.cosets
    }

    pub fn fiber_dim(&self) -> usize {
        self.mu.dim()
    }

    /// `D = d · [K:S]`.
    pub fn dim(&self) -> usize {
        self.cosets.len() * self.mu.dim()
    }

    /// For `k t_j = t_i s`, the pairs `(i, s)` indexed by `j`.
    pub fn k_pattern(&self, g: &SemidirectGroup, k: usize) -> Vec<(usize, usize)> {
        self.cosets
            .transversal()
            .iter()
            .map(|&t| self.cosets.decompose(g.k(), g.k().mul(k, t)))
            .collect()
    }

    /// `π(k, a) = π(k, 0) π(1, a)`: block `(i, j)` is `μ(s) · (t_j·χ)(a)`.
    pub fn matrix(&self, g: &SemidirectGroup, x: usize) -> CMatrix {
        let (k, a) = g.split(x);
        let d = self.mu.dim();
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (j, (i, s)) in self.k_pattern(g, k).into_iter().enumerate() {
            let phase = g.char_value(self.moved[j], a);
            m.add_to_block(i * d, j * d, self.mu.matrix(s), phase);
        }
        m
    }

    /// `π(f)` by the kernel formula:
    /// block `(i, j) = (1/|K|) Σ_{s∈S} f̂²(t_i s t_j⁻¹, t_j·χ) μ(s)`.
    pub fn fourier(&self, g: &SemidirectGroup, pf: &PartialFourier) -> CMatrix {
        let d = self.mu.dim();
        let kg = g.k();
        let t = self.cosets.transversal();
        let w = 1.0 / g.k_order() as f64;
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (i, &ti) in t.iter().enumerate() {
            for (j, &tj) in t.iter().enumerate() {
                let tj_inv = kg.inv(tj);
                for &s in self.subgroup().elements() {
                    let coeff = pf.get(kg.mul(kg.mul(ti, s), tj_inv), self.moved[j]);
                    if coeff != ZERO {
                        m.add_to_block(i * d, j * d, self.mu.matrix(s), coeff * w);
                    }
                }
            }
        }
        m
    }

    /// Isometry `J: ℓ²(K/S, μ) → ℓ²(K, ℂ^d)` with `J*J = I` and `JJ* = P_μ`:
    /// column block `j` carries `μ(s)* / √|S|` at row block `t_j s`.
    pub fn embedding(&self, g: &SemidirectGroup) -> CMatrix {
        let d = self.mu.dim();
        let sub = self.subgroup();
        let norm = Complex64::new(1.0 / (sub.order() as f64).sqrt(), 0.0);
        let mut j_mat = CMatrix::zeros(g.k_order() * d, self.dim());
        for (j, &t) in self.cosets.transversal().iter().enumerate() {
            for &s in sub.elements() {
                let x = g.k().mul(t, s);
                j_mat.add_to_block(x * d, j * d, &self.mu.matrix(s).adjoint(), norm);
            }
        }
        j_mat
    }
}

/// A cataloguing triple `(χ, K_χ, μ)`: an [`InducedRep`] whose subgroup is
/// the full stabilizer of `χ`.
#[derive(Clone, Debug)]
pub struct CataloguingTriple {
    rep: InducedRep,
    irrep_index: usize,
}

impl CataloguingTriple {
    /// `irrep_index` is the position of `mu` in the provider's list for `K_χ`.
    pub fn new(
        g: &SemidirectGroup,
        chi: usize,
        mu: UnitaryIrrep,
        irrep_index: usize,
    ) -> Result<Self> {
        let stab = g.stabilizer(chi);
        if **mu.subgroup() != stab {
            return Err(Error::Precondition(format!(
                "irrep lives on {} but the stabilizer of {} is {}",
                mu.subgroup(),
                g.character_label(chi),
                stab
            )));
        }
        Ok(Self {
            rep: InducedRep::new(g, chi, mu)?,
            irrep_index,
        })
    }

    pub fn chi(&self) -> usize {
        self.rep.chi()
    }

    pub fn stab(&self) -> &Arc<Subgroup> {
        self.rep.subgroup()
    }

    pub fn mu(&self) -> &UnitaryIrrep {
        self.rep.mu()
    }

    pub fn irrep_index(&self) -> usize {
        self.irrep_index
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn induced(&self) -> &InducedRep {
        &self.rep
    }
}

pub fn induced_rep(g: &SemidirectGroup, triple: &CataloguingTriple, x: usize) -> CMatrix {
    triple.induced().matrix(g, x)
}

pub fn fourier_block(
    g: &SemidirectGroup,
    pf: &PartialFourier,
    triple: &CataloguingTriple,
) -> CMatrix {
    triple.induced().fourier(g, pf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::irreps;
    use crate::mackey::{partial_fourier, GroupFunction};

    fn d4_triple(chi: usize, index: usize) -> (SemidirectGroup, CataloguingTriple) {
        let g = SemidirectGroup::builtin("dihedral:4").unwrap();
        let stab = g.stabilizer(chi);
        let mu = irreps(g.k(), &stab).unwrap().remove(index);
        let t = CataloguingTriple::new(&g, chi, mu, index).unwrap();
        (g, t)
    }

    #[test]
    fn identity_maps_to_identity() {
        let (g, t) = d4_triple(1, 0);
        assert_eq!(induced_rep(&g, &t, g.identity()), CMatrix::identity(2));
    }

    #[test]
    fn translations_are_diagonal_in_the_transversal_basis() {
        let (g, t) = d4_triple(1, 0);
        for a in 0..4 {
            let m = induced_rep(&g, &t, g.element(0, a));
            // Transversal {1, s}: diagonal entries χ(a) and (s·χ)(a) = conj χ(a).
            let chi_a = g.char_value(1, a);
            let expected = CMatrix::from_diagonal(&[chi_a, chi_a.conj()]);
            assert!(m.distance(&expected).unwrap() < 1e-15);
        }
    }

    #[test]
    fn trivial_triple_is_the_trivial_rep() {
        let (g, t) = d4_triple(0, 0);
        for x in 0..g.order() {
            assert_eq!(induced_rep(&g, &t, x), CMatrix::identity(1));
        }
    }

    #[test]
    fn delta_at_identity_gives_point_mass_times_identity() {
        let (g, t) = d4_triple(1, 0);
        let pf = partial_fourier(&g, &GroupFunction::delta(&g, g.identity()));
        let expected = CMatrix::identity(2).scale_real(0.5);
        assert_eq!(fourier_block(&g, &pf, &t), expected);
    }

    #[test]
    fn wrong_subgroup_is_rejected() {
        let g = SemidirectGroup::builtin("dihedral:4").unwrap();
        let full = crate::group::Subgroup::full(g.k());
        let mu = irreps(g.k(), &full).unwrap().remove(0);
        assert!(matches!(
            CataloguingTriple::new(&g, 1, mu.clone(), 0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            InducedRep::new(&g, 1, mu),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn embedding_is_an_isometry() {
        let (g, t) = d4_triple(2, 1);
        let j = t.induced().embedding(&g);
        let jj = j.adjoint().matmul(&j).unwrap();
        assert!(jj.distance(&CMatrix::identity(t.dim())).unwrap() < 1e-15);
    }
}

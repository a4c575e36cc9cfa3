//! Unitary irreducible representations of subgroups of a finite group.
//!
//! Abelian subgroups get their characters by extending along a generating
//! sequence with exact integer phases. Nonabelian subgroups are handled by
//! inducing the characters of an abelian normal subgroup and splitting each
//! induced representation with a random self-adjoint element of its
//! commutant.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::finite::{CosetSystem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{root_of_unity, CMatrix, ONE};

/// Tolerance used to group commutant eigenvalues and to accept a
/// representation as irreducible.
pub const SPLIT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct UnitaryIrrep {
    subgroup: Arc<Subgroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
    characters: Vec<Complex64>,
}

/// Worst-case defects of the representation axioms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IrrepDefects {
    pub multiplicativity: f64,
    pub unitarity: f64,
    /// `|(1/|H|) Σ |tr μ(h)|² − 1|`.
    pub irreducibility: f64,
}

impl UnitaryIrrep {
    /// `matrices` are aligned with `subgroup.elements()`.
    pub fn from_matrices(subgroup: Arc<Subgroup>, matrices: Vec<CMatrix>) -> Result<Self> {
        if matrices.len() != subgroup.order() {
            return Err(Error::Input(format!(
                "irrep needs {} matrices, got {}",
                subgroup.order(),
                matrices.len()
            )));
        }
        let dim = matrices.first().map_or(0, CMatrix::rows);
        if matrices.iter().any(|m| m.shape() != (dim, dim)) {
            return Err(Error::Input(
                "irrep matrices must share one square shape".into(),
            ));
        }
        let characters = matrices.iter().map(CMatrix::trace).collect();
        Ok(Self {
            subgroup,
            dim,
            matrices,
            characters,
        })
    }

    pub fn trivial(subgroup: Arc<Subgroup>) -> Self {
        let matrices = vec![CMatrix::identity(1); subgroup.order()];
        Self::from_matrices(subgroup, matrices).expect("well-formed")
    }

    pub fn subgroup(&self) -> &Arc<Subgroup> {
        &self.subgroup
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `μ(k)` for `k` in the owning subgroup.
    pub fn matrix(&self, k: usize) -> &CMatrix {
        let pos = self
            .subgroup
            .position(k)
            .unwrap_or_else(|| panic!("element {k} is not in subgroup {}", self.subgroup));
        &self.matrices[pos]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn character(&self, k: usize) -> Complex64 {
        self.characters[self.subgroup.position(k).expect("element of the subgroup")]
    }

    /// Characters aligned with the subgroup's sorted elements.
    pub fn characters(&self) -> &[Complex64] {
        &self.characters
    }

    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.characters.iter().all(|c| (c - ONE).norm() < 1e-12)
    }

    pub fn defects(&self, group: &FiniteGroup) -> IrrepDefects {
        let elems = self.subgroup.elements();
        let mut multiplicativity: f64 = 0.0;
        let mut unitarity: f64 = 0.0;
        let id = CMatrix::identity(self.dim);
        for (i, &a) in elems.iter().enumerate() {
            let ma = &self.matrices[i];
            let u = ma
                .adjoint()
                .matmul(ma)
                .expect("square")
                .sub(&id)
                .expect("square");
            unitarity = unitarity.max(u.max_abs());
            for (j, &b) in elems.iter().enumerate() {
                let prod = ma.matmul(&self.matrices[j]).expect("square");
                let direct = self.matrix(group.mul(a, b));
                multiplicativity =
                    multiplicativity.max(prod.sub(direct).expect("square").max_abs());
            }
        }
        IrrepDefects {
            multiplicativity,
            unitarity,
            irreducibility: (character_norm(&self.characters) - 1.0).abs(),
        }
    }
}

/// `(1/|H|) Σ |χ(h)|²`.
pub fn character_norm(chars: &[Complex64]) -> f64 {
    chars.iter().map(|c| c.norm_sqr()).sum::<f64>() / chars.len() as f64
}

/// `(1/|H|) Σ χ₁(h) conj(χ₂(h))`.
pub fn character_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y.conj())
        .sum::<Complex64>()
        / a.len() as f64
}

#[derive(Clone, Debug)]
pub struct IrrepProvider {
    /// Largest induced dimension `[H:N]` the splitter will attempt.
    pub max_induced_dim: usize,
    pub seed: u64,
}

impl Default for IrrepProvider {
    fn default() -> Self {
        Self {
            max_induced_dim: 64,
            seed: 0x6d61_636b_6579,
        }
    }
}

/// Complete list of irreps of `h` from the default provider.
pub fn irreps(group: &FiniteGroup, h: &Subgroup) -> Result<Vec<UnitaryIrrep>> {
    IrrepProvider::default().irreps(group, h)
}

impl IrrepProvider {
    /// The irreps of `h`, trivial first, then by dimension. `Σ d² = |H|`.
    pub fn irreps(&self, group: &FiniteGroup, h: &Subgroup) -> Result<Vec<UnitaryIrrep>> {
        let h = Arc::new(h.clone());
        if h.is_abelian(group) {
            return Ok(abelian_characters(group, &h));
        }
        self.monomial_irreps(group, &h)
    }

    fn monomial_irreps(&self, group: &FiniteGroup, h: &Arc<Subgroup>) -> Result<Vec<UnitaryIrrep>> {
        let normal = Arc::new(abelian_normal_subgroup(group, h));
        let index = h.order() / normal.order();
        if index > self.max_induced_dim {
            return Err(Error::IrrepProviderUnavailable {
                subgroup: h.to_string(),
                reason: format!(
                    "largest abelian normal subgroup found has index {index} > {}",
                    self.max_induced_dim
                ),
            });
        }
        let cosets = CosetSystem::new(group, h.elements(), &normal);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut found: Vec<Vec<CMatrix>> = Vec::new();
        let mut found_chars: Vec<Vec<Complex64>> = Vec::new();
        let mut dim_sq = 0;
        for lambda in abelian_characters(group, &normal) {
            if dim_sq == h.order() {
                break;
            }
            let induced = induce_matrices(group, h, &cosets, &lambda);
            for piece in split(&induced, &mut rng, h)? {
                let chars: Vec<Complex64> = piece.iter().map(CMatrix::trace).collect();
                let duplicate = found_chars
                    .iter()
                    .any(|c| (character_inner(c, &chars).re - 1.0).abs() < 1e-6);
                if !duplicate {
                    dim_sq += piece[0].rows() * piece[0].rows();
                    found.push(piece);
                    found_chars.push(chars);
                }
            }
        }
        if dim_sq != h.order() {
            return Err(Error::IrrepProviderUnavailable {
                subgroup: h.to_string(),
                reason: format!("splitting produced Σd² = {dim_sq}, expected {}", h.order()),
            });
        }
        let mut out: Vec<UnitaryIrrep> = found
            .into_iter()
            .map(|m| UnitaryIrrep::from_matrices(h.clone(), m))
            .collect::<Result<_>>()?;
        // Stable: discovery order breaks ties.
        out.sort_by_key(|r| (!r.is_trivial(), r.dim()));
        Ok(out)
    }
}

/// Characters of an abelian subgroup, built by extending along generators
/// chosen in element order. Phases are exact integers modulo `|H|`.
fn abelian_characters(group: &FiniteGroup, h: &Arc<Subgroup>) -> Vec<UnitaryIrrep> {
    let order = h.order() as i64;
    let mut members = vec![group.identity()];
    let mut pos: Vec<Option<usize>> = vec![None; group.order()];
    pos[group.identity()] = Some(0);
    let mut phases: Vec<Vec<i64>> = vec![vec![0]];
    for &g in h.elements() {
        if pos[g].is_some() {
            continue;
        }
        let mut power = g;
        let mut m = 1i64;
        while pos[power].is_none() {
            power = group.mul(power, g);
            m += 1;
        }
        let power_pos = pos[power].expect("loop exits on a member");
        let old_len = members.len();
        let mut gp = g;
        for _ in 1..m {
            for i in 0..old_len {
                let y = group.mul(members[i], gp);
                pos[y] = Some(members.len());
                members.push(y);
            }
            gp = group.mul(gp, g);
        }
        let mut next = Vec::with_capacity(phases.len() * m as usize);
        for c in &phases {
            let base = c[power_pos];
            debug_assert_eq!(base % m, 0);
            for t in 0..m {
                let pg = base / m + t * (order / m);
                let mut ext = Vec::with_capacity(members.len());
                for e in 0..m {
                    for &ci in c.iter().take(old_len) {
                        ext.push((ci + e * pg).rem_euclid(order));
                    }
                }
                next.push(ext);
            }
        }
        phases = next;
    }
    phases
        .into_iter()
        .map(|c| {
            let matrices = h
                .elements()
                .iter()
                .map(|&k| {
                    let z = root_of_unity(c[pos[k].expect("generated")], order);
                    CMatrix::new(1, 1, vec![z]).expect("finite")
                })
                .collect();
            UnitaryIrrep::from_matrices(h.clone(), matrices).expect("well-formed")
        })
        .collect()
}

/// Greedy abelian normal subgroup: adjoin normal closures of elements in
/// index order while the result stays abelian.
fn abelian_normal_subgroup(group: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut current = Subgroup::trivial(group);
    for &g in h.elements() {
        if current.contains(g) {
            continue;
        }
        let mut gens: Vec<usize> = current.elements().to_vec();
        gens.extend(h.elements().iter().map(|&x| group.conjugate(x, g)));
        let candidate = Subgroup::generated(group, &gens);
        if candidate.is_abelian(group) {
            current = candidate;
        }
    }
    current
}

/// `ind_N^H λ` realized on the coset transversal: `h t_j = t_i s` puts
/// `λ(s)` in block `(i, j)`.
fn induce_matrices(
    group: &FiniteGroup,
    h: &Subgroup,
    cosets: &CosetSystem,
    lambda: &UnitaryIrrep,
) -> Vec<CMatrix> {
    let c = cosets.len();
    let d = lambda.dim();
    h.elements()
        .iter()
        .map(|&x| {
            let mut m = CMatrix::zeros(c * d, c * d);
            for (j, &t) in cosets.transversal().iter().enumerate() {
                let (i, s) = cosets.decompose(group, group.mul(x, t));
                m.set_block(i * d, j * d, lambda.matrix(s));
            }
            m
        })
        .collect()
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut y = CMatrix::zeros(n, n);
    for r in 0..n {
        y[(r, r)] = Complex64::new(rng.sample(StandardNormal), 0.0);
        for c in r + 1..n {
            let z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            y[(r, c)] = z;
            y[(c, r)] = z.conj();
        }
    }
    y
}

/// Splits a unitary representation (matrices aligned with `h`) into
/// irreducible pieces, each returned in an orthonormal basis.
fn split(rep: &[CMatrix], rng: &mut ChaCha8Rng, h: &Subgroup) -> Result<Vec<Vec<CMatrix>>> {
    let n = rep[0].rows();
    let chars: Vec<Complex64> = rep.iter().map(CMatrix::trace).collect();
    if n == 1 || (character_norm(&chars) - 1.0).abs() < SPLIT_TOL {
        return Ok(vec![rep.to_vec()]);
    }
    for _attempt in 0..8 {
        let y = random_hermitian(n, rng);
        let mut x = CMatrix::zeros(n, n);
        for m in rep {
            let term = m.matmul(&y)?.matmul(&m.adjoint())?;
            x.axpy(ONE, &term)?;
        }
        let x = x.scale_real(1.0 / rep.len() as f64);
        let (vals, vecs) = x.hermitian_eigen()?;
        let scale = 1.0 + vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let mut clusters: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || vals[i] - vals[i - 1] > SPLIT_TOL * scale {
                clusters.push((start, i - start));
                start = i;
            }
        }
        if clusters.len() == 1 {
            continue;
        }
        let mut out = Vec::new();
        for (s, len) in clusters {
            let v = vecs.columns(s, len);
            let vh = v.adjoint();
            let sub: Vec<CMatrix> = rep
                .iter()
                .map(|m| vh.matmul(m).and_then(|t| t.matmul(&v)))
                .collect::<Result<_>>()?;
            out.extend(split(&sub, rng, h)?);
        }
        return Ok(out);
    }
    Err(Error::IrrepProviderUnavailable {
        subgroup: h.to_string(),
        reason: format!("commutant splitting of a {n}-dimensional representation did not converge"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_complete(group: &FiniteGroup, h: &Subgroup, reps: &[UnitaryIrrep]) {
        let sum: usize = reps.iter().map(|r| r.dim() * r.dim()).sum();
        assert_eq!(sum, h.order());
        for (i, a) in reps.iter().enumerate() {
            let d = a.defects(group);
            assert!(d.multiplicativity < 1e-12, "{d:?}");
            assert!(d.unitarity < 1e-12, "{d:?}");
            assert!(d.irreducibility < 1e-9, "{d:?}");
            for b in &reps[i + 1..] {
                assert!(character_inner(a.characters(), b.characters()).norm() < 1e-9);
            }
        }
        assert!(reps[0].is_trivial());
    }

    #[test]
    fn z2_has_two_characters() {
        let g = FiniteGroup::cyclic(2);
        let reps = irreps(&g, &Subgroup::full(&g)).unwrap();
        assert_eq!(reps.len(), 2);
        check_complete(&g, &Subgroup::full(&g), &reps);
    }

    #[test]
    fn sign_square_has_four_sign_characters() {
        let g = FiniteGroup::sign_cube(2);
        let h = Subgroup::full(&g);
        let reps = irreps(&g, &h).unwrap();
        assert_eq!(reps.len(), 4);
        for r in &reps {
            for &k in h.elements() {
                let v = r.character(k);
                assert!(v == ONE || v == -ONE);
            }
        }
        check_complete(&g, &h, &reps);
    }

    #[test]
    fn cyclic_characters_are_exact_roots() {
        let g = FiniteGroup::cyclic(12);
        let h = Subgroup::generated(&g, &[3]);
        let reps = irreps(&g, &h).unwrap();
        assert_eq!(reps.len(), 4);
        check_complete(&g, &h, &reps);
    }

    #[test]
    fn dihedral_subgroup_of_larger_group() {
        // D4 sits inside D8 as <r², s>.
        let g = FiniteGroup::dihedral(8);
        let h = Subgroup::generated(&g, &[2, 8]);
        assert_eq!(h.order(), 8);
        let reps = irreps(&g, &h).unwrap();
        let dims: Vec<usize> = reps.iter().map(UnitaryIrrep::dim).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        check_complete(&g, &h, &reps);
    }

    #[test]
    fn larger_nonabelian_groups_split_completely() {
        for n in [3, 5, 6] {
            let g = FiniteGroup::dihedral(n);
            let h = Subgroup::full(&g);
            let reps = irreps(&g, &h).unwrap();
            check_complete(&g, &h, &reps);
        }
    }

    #[test]
    fn provider_cap_reports_the_subgroup() {
        let g = FiniteGroup::dihedral(4);
        let provider = IrrepProvider {
            max_induced_dim: 1,
            ..IrrepProvider::default()
        };
        let err = provider.irreps(&g, &Subgroup::full(&g)).unwrap_err();
        match err {
            Error::IrrepProviderUnavailable { subgroup, .. } => {
                assert_eq!(subgroup, "{0,1,2,3,4,5,6,7}")
            }
            other => panic!("unexpected {other}"),
        }
    }
}

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::group::{character_inner, IrrepProvider, SemidirectGroup, Subgroup, UnitaryIrrep};
use crate::linalg::{CMatrix, ONE, ZERO};
use crate::mackey::{fourier_block, CataloguingTriple, InducedRep, PartialFourier};

/// An assignment of matrices to cataloguing triples.
pub trait OperatorField {
    /// `None` when the field has no value at `triple`.
    fn value(&self, triple: &CataloguingTriple) -> Option<CMatrix>;
}

/// `F(f)` evaluated entrywise.
pub struct FourierField<'a> {
    pub group: &'a SemidirectGroup,
    pub transform: PartialFourier,
}

impl OperatorField for FourierField<'_> {
    fn value(&self, triple: &CataloguingTriple) -> Option<CMatrix> {
        Some(fourier_block(self.group, &self.transform, triple))
    }
}

impl<F: Fn(&CataloguingTriple) -> Option<CMatrix>> OperatorField for F {
    fn value(&self, triple: &CataloguingTriple) -> Option<CMatrix> {
        self(triple)
    }
}

#[derive(Clone, Debug)]
pub struct LimitEntry {
    pub triple: CataloguingTriple,
    /// Multiplicity of `μ∞` in `ν|_{K′}`.
    pub multiplicity: usize,
}

/// `{(χ∞, K_{χ∞}, ν) : ν|_{K′} contains μ∞}`.
#[derive(Clone, Debug)]
pub struct LimitSet {
    pub chi: usize,
    pub mu_inf: UnitaryIrrep,
    pub entries: Vec<LimitEntry>,
}

impl LimitSet {
    pub fn k_prime(&self) -> &Arc<Subgroup> {
        self.mu_inf.subgroup()
    }
}

/// `ν ↦ ⟨ν|_{K′}, μ∞⟩` over the irreps of `K_{χ∞}`; entries with positive
/// multiplicity form the limit set.
pub fn limit_set(
    g: &SemidirectGroup,
    chi: usize,
    mu_inf: &UnitaryIrrep,
    provider: &IrrepProvider,
) -> Result<LimitSet> {
    let stab = g.stabilizer(chi);
    let k_prime = mu_inf.subgroup();
    if !k_prime.is_subgroup_of(&stab) {
        return Err(Error::Precondition(format!(
            "K′ = {k_prime} is not contained in the stabilizer {stab} of {}",
            g.character_label(chi)
        )));
    }
    let reps = provider.irreps(g.k(), &stab)?;
    let mut entries = Vec::new();
    for (index, nu) in reps.into_iter().enumerate() {
        let restricted: Vec<Complex64> = k_prime
            .elements()
            .iter()
            .map(|&h| nu.character(h))
            .collect();
        let ip = character_inner(&restricted, mu_inf.characters());
        let mult = ip.re.round();
        if (ip - mult).norm() > 1e-8 {
            return Err(Error::Precondition(format!(
                "restriction multiplicity {ip} is not an integer"
            )));
        }
        if mult >= 1.0 {
            entries.push(LimitEntry {
                triple: CataloguingTriple::new(g, chi, nu, index)?,
                multiplicity: mult as usize,
            });
        }
    }
    Ok(LimitSet {
        chi,
        mu_inf: mu_inf.clone(),
        entries,
    })
}

/// Orthonormal intertwiners `T: H_ν → ℓ²(K/K′, μ∞)` for each limit entry,
/// with `Σ_ν Σ_i T_i T_i* = I`.
#[derive(Clone, Debug)]
pub struct LimitDecomposition {
    rho: InducedRep,
    intertwiners: Vec<Vec<CMatrix>>,
}

const INTERTWINER_SEED: u64 = 0x01e7_e5e7;

/// Hilbert–Schmidt pairing normalized so that isometries have norm one.
fn schur_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.cols() as f64;
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        / n
}

/// Applies `ρ(k)` on the left of `x` using its block-monomial pattern.
fn monomial_left(pattern: &[(usize, usize)], mu: &UnitaryIrrep, x: &CMatrix) -> CMatrix {
    let d = mu.dim();
    let mut out = CMatrix::zeros(x.rows(), x.cols());
    for (j, &(i, s)) in pattern.iter().enumerate() {
        let block = mu
            .matrix(s)
            .matmul(&x.block(j * d, 0, d, x.cols()))
            .expect("square blocks");
        out.set_block(i * d, 0, &block);
    }
    out
}

impl LimitDecomposition {
    pub fn new(g: &SemidirectGroup, limit: &LimitSet) -> Result<Self> {
        let rho = InducedRep::new(g, limit.chi, limit.mu_inf.clone())?;
        let mut rng = ChaCha8Rng::seed_from_u64(INTERTWINER_SEED);
        let rho_moved: Vec<usize> = rho
            .cosets()
            .transversal()
            .iter()
            .map(|&t| g.act_dual(t, limit.chi))
            .collect();
        let rho_patterns: Vec<Vec<(usize, usize)>> =
            (0..g.k_order()).map(|k| rho.k_pattern(g, k)).collect();
        let mut intertwiners = Vec::new();
        let mut total = 0;
        for entry in &limit.entries {
            let pi = entry.triple.induced();
            let pi_moved: Vec<usize> = pi
                .cosets()
                .transversal()
                .iter()
                .map(|&t| g.act_dual(t, limit.chi))
                .collect();
            let (dr, dp) = (rho.dim(), pi.dim());
            let (d_rho, d_pi) = (rho.fiber_dim(), pi.fiber_dim());
            // Averaging over A keeps exactly the blocks whose characters agree.
            let mask = |r: usize, c: usize| rho_moved[r / d_rho] == pi_moved[c / d_pi];
            let pi_adjoints: Vec<CMatrix> = (0..g.k_order())
                .map(|k| pi.matrix(g, g.element(k, 0)).adjoint())
                .collect();
            let average = |x: &CMatrix| -> CMatrix {
                let mut acc = CMatrix::zeros(dr, dp);
                for k in 0..g.k_order() {
                    let left = monomial_left(&rho_patterns[k], rho.mu(), x);
                    acc.axpy(ONE, &left.matmul(&pi_adjoints[k]).expect("shapes"))
                        .expect("shapes");
                }
                acc.scale_real(1.0 / g.k_order() as f64)
            };
            let mut basis: Vec<CMatrix> = Vec::new();
            let mut attempts = 0;
            while basis.len() < entry.multiplicity {
                attempts += 1;
                if attempts > 4 * entry.multiplicity + 8 {
                    return Err(Error::Precondition(format!(
                        "found {} of {} intertwiners for limit entry {}",
                        basis.len(),
                        entry.multiplicity,
                        entry.triple.irrep_index()
                    )));
                }
                let x = CMatrix::from_fn(dr, dp, |r, c| {
                    if mask(r, c) {
                        Complex64::new(
                            StandardNormal.sample(&mut rng),
                            StandardNormal.sample(&mut rng),
                        )
                    } else {
                        ZERO
                    }
                });
                let mut t = average(&x);
                for b in &basis {
                    let c = schur_inner(b, &t);
                    t.axpy(-c, b)?;
                }
                let norm = schur_inner(&t, &t).re.sqrt();
                if norm > 1e-8 {
                    basis.push(t.scale_real(1.0 / norm));
                }
            }
            total += entry.multiplicity * dp;
            intertwiners.push(basis);
        }
        if total != rho.dim() {
            return Err(Error::Precondition(format!(
                "limit set covers dimension {total}, but ℓ²(K/K′, μ∞) has dimension {}",
                rho.dim()
            )));
        }
        Ok(Self { rho, intertwiners })
    }

    /// The realization of `ind_{K′⋉A}^G(μ∞ ⊗ χ∞)` being decomposed.
    pub fn induced(&self) -> &InducedRep {
        &self.rho
    }

    pub fn intertwiners(&self) -> &[Vec<CMatrix>] {
        &self.intertwiners
    }

    /// `U = [T_1 | T_2 | …]`, unitary.
    pub fn unitary(&self) -> CMatrix {
        let n = self.rho.dim();
        let mut u = CMatrix::zeros(n, n);
        let mut col = 0;
        for t in self.intertwiners.iter().flatten() {
            u.set_block(0, col, t);
            col += t.cols();
        }
        u
    }

    /// `Σ_ν Σ_i T_i F(ν) T_i*`, one value per limit entry.
    pub fn sigma(&self, values: &[CMatrix]) -> Result<CMatrix> {
        let n = self.rho.dim();
        let mut out = CMatrix::zeros(n, n);
        for (ts, value) in self.intertwiners.iter().zip(values) {
            for t in ts {
                out.axpy(ONE, &t.matmul(value)?.matmul(&t.adjoint())?)?;
            }
        }
        Ok(out)
    }
}

/// `σ_{μ∞,χ∞}(F|_L)` on `ℓ²(K/K′, μ∞)`.
pub fn sigma_limit(
    g: &SemidirectGroup,
    limit: &LimitSet,
    field: &dyn OperatorField,
) -> Result<CMatrix> {
    let decomposition = LimitDecomposition::new(g, limit)?;
    let values = field_values(g, limit, field)?;
    decomposition.sigma(&values)
}

pub(crate) fn field_values(
    g: &SemidirectGroup,
    limit: &LimitSet,
    field: &dyn OperatorField,
) -> Result<Vec<CMatrix>> {
    limit
        .entries
        .iter()
        .map(|e| {
            let name = || {
                format!(
                    "(χ = {}, irrep {} of {})",
                    g.character_label(e.triple.chi()),
                    e.triple.irrep_index(),
                    e.triple.stab()
                )
            };
            let v = field
                .value(&e.triple)
                .ok_or_else(|| Error::MissingLimitEntry(name()))?;
            if v.shape() != (e.triple.dim(), e.triple.dim()) {
                return Err(Error::DimensionMismatch {
                    op: "operator field value",
                    left_rows: v.rows(),
                    left_cols: v.cols(),
                    right_rows: e.triple.dim(),
                    right_cols: e.triple.dim(),
                });
            }
            Ok(v)
        })
        .collect()
}

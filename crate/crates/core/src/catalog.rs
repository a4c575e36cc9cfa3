//! The dual catalogue of a finite `G = K ⋉ A` and the algebra checks on the
//! Fourier transform over it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{IrrepProvider, SemidirectGroup};
use crate::linalg::CMatrix;
use crate::mackey::{
    fourier_block, partial_fourier, CataloguingTriple, GroupFunction, PartialFourier,
};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub triple: CataloguingTriple,
    pub orbit_size: usize,
}

#[derive(Clone, Debug)]
pub struct DualCatalog {
    pub entries: Vec<CatalogEntry>,
    pub group_order: usize,
}

impl DualCatalog {
    pub fn dim_square_sum(&self) -> usize {
        self.entries.iter().map(|e| e.triple.dim().pow(2)).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.dim_square_sum() == self.group_order
    }

    pub fn dims(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.triple.dim()).collect()
    }

    /// `F(f)` at every entry, in catalogue order.
    pub fn fourier(&self, g: &SemidirectGroup, pf: &PartialFourier) -> Vec<CMatrix> {
        self.entries
            .par_iter()
            .map(|e| fourier_block(g, pf, &e.triple))
            .collect()
    }

    pub fn summary(&self, g: &SemidirectGroup) -> CatalogSummary {
        let entries = self
            .entries
            .iter()
            .map(|e| EntrySummary {
                orbit_representative: g.dual()[e.triple.chi()].freq.clone(),
                orbit_size: e.orbit_size,
                stabilizer: e.triple.stab().elements().to_vec(),
                irrep_index: e.triple.irrep_index(),
                d_mu: e.triple.mu().dim(),
                dim: e.triple.dim(),
            })
            .collect();
        CatalogSummary {
            group: g.label().to_string(),
            group_order: self.group_order,
            k_order: g.k_order(),
            a_order: g.a_order(),
            k_table_validated: g.k().validated(),
            dim_square_sum: self.dim_square_sum(),
            complete: self.is_complete(),
            entries,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub orbit_representative: Vec<i64>,
    pub orbit_size: usize,
    pub stabilizer: Vec<usize>,
    pub irrep_index: usize,
    pub d_mu: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogSummary {
    pub group: String,
    pub group_order: usize,
    pub k_order: usize,
    pub a_order: usize,
    pub k_table_validated: bool,
    pub dim_square_sum: usize,
    pub complete: bool,
    pub entries: Vec<EntrySummary>,
}

/// One triple per (orbit representative, irrep of its stabilizer), sorted by
/// representative index and then irrep index.
pub fn build_catalog(g: &SemidirectGroup, provider: &IrrepProvider) -> Result<DualCatalog> {
    let mut entries = Vec::new();
    for orbit in g.orbits() {
        let chi = orbit.representative;
        let stab = g.stabilizer(chi);
        let reps = provider
            .irreps(g.k(), &stab)
            .map_err(|e| Error::UnsupportedStabilizer {
                character: g.character_label(chi),
                source: Box::new(e),
            })?;
        for (index, mu) in reps.into_iter().enumerate() {
            entries.push(CatalogEntry {
                triple: CataloguingTriple::new(g, chi, mu, index)?,
                orbit_size: orbit.members.len(),
            });
        }
    }
    Ok(DualCatalog {
        entries,
        group_order: g.order(),
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, defect: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            defect,
            tolerance,
            pass: defect <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub group_order: usize,
    pub entries: usize,
    pub trials: usize,
    pub seed: u64,
    pub k_table_validated: bool,
    /// `c` in the Plancherel weight `w_D = c·D`.
    pub plancherel_constant: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyTolerances {
    pub op: f64,
    pub exact: f64,
    pub plancherel_rel: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            op: 1e-9,
            exact: 1e-12,
            plancherel_rel: 1e-9,
        }
    }
}

/// Number of random functions used for the trace-separation rank test.
pub const SEPARATION_SAMPLES: usize = 64;

fn max_distance(a: &[CMatrix], b: &[CMatrix]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.distance(y).expect("matching entry shapes"))
        .fold(0.0, f64::max)
}

fn hs_weighted(blocks: &[CMatrix], catalog: &DualCatalog) -> f64 {
    blocks
        .iter()
        .zip(&catalog.entries)
        .map(|(m, e)| e.triple.dim() as f64 * m.hs_norm().powi(2))
        .sum()
}

/// Seeded checks of the Fourier transform over the catalogue: completeness,
/// the delta function, `F(f∗h) = F(f)F(h)`, `F(f*) = F(f)*`, the `L¹` bound,
/// Plancherel, and separation of entries by traces.
pub fn verify_algebra(
    g: &SemidirectGroup,
    catalog: &DualCatalog,
    trials: usize,
    seed: u64,
    tol: VerifyTolerances,
) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    checks.push(Check::new(
        "completeness",
        (catalog.dim_square_sum() as f64 - g.order() as f64).abs(),
        0.0,
    ));

    let w = 1.0 / g.k_order() as f64;
    let delta = GroupFunction::delta(g, g.identity());
    let fd = catalog.fourier(g, &partial_fourier(g, &delta));
    let delta_defect = fd
        .iter()
        .map(|m| {
            m.distance(&CMatrix::identity(m.rows()).scale_real(w))
                .expect("square")
        })
        .fold(0.0, f64::max);
    checks.push(Check::new("delta_identity", delta_defect, tol.exact));
    let plancherel_constant = delta.l2_norm_sq(g) / hs_weighted(&fd, catalog);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut hom, mut adj, mut l1, mut planch) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..trials {
        let f = GroupFunction::random(g, &mut rng);
        let h = GroupFunction::random(g, &mut rng);
        let ff = catalog.fourier(g, &partial_fourier(g, &f));
        let fh = catalog.fourier(g, &partial_fourier(g, &h));
        let fconv = catalog.fourier(g, &partial_fourier(g, &f.convolve(&h, g)));
        let fstar = catalog.fourier(g, &partial_fourier(g, &f.star(g)));
        let products: Vec<CMatrix> = ff
            .iter()
            .zip(&fh)
            .map(|(a, b)| a.matmul(b))
            .collect::<Result<_>>()?;
        hom = hom.max(max_distance(&fconv, &products));
        let adjoints: Vec<CMatrix> = ff.iter().map(CMatrix::adjoint).collect();
        adj = adj.max(max_distance(&fstar, &adjoints));
        let op_max = ff.iter().map(CMatrix::operator_norm).fold(0.0, f64::max);
        l1 = l1.max((op_max - f.l1_norm(g)).max(0.0));
        let norm2 = f.l2_norm_sq(g);
        planch =
            planch.max((norm2 - plancherel_constant * hs_weighted(&ff, catalog)).abs() / norm2);
    }
    checks.push(Check::new("homomorphism", hom, tol.op));
    checks.push(Check::new("adjoint", adj, tol.op));
    checks.push(Check::new("l1_bound", l1, tol.exact));
    checks.push(Check::new(
        "plancherel_relative",
        planch,
        tol.plancherel_rel,
    ));

    // Rows: entries; columns: tr F(f) for independent random f.
    let mut sep_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = catalog.entries.len();
    let mut traces = CMatrix::zeros(n, SEPARATION_SAMPLES);
    for col in 0..SEPARATION_SAMPLES {
        let f = GroupFunction::random(g, &mut sep_rng);
        for (row, m) in catalog
            .fourier(g, &partial_fourier(g, &f))
            .iter()
            .enumerate()
        {
            traces[(row, col)] = m.trace();
        }
    }
    let sv = traces.singular_values();
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > 1e-8 * top).count();
    checks.push(Check::new(
        "trace_separation_rank_deficit",
        (n - rank) as f64,
        0.0,
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        group: g.label().to_string(),
        group_order: g.order(),
        entries: n,
        trials,
        seed,
        k_table_validated: g.k().validated(),
        plancherel_constant,
        checks,
        pass,
    })
}

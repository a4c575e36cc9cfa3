use super::limit::{field_values, LimitDecomposition, LimitSet, OperatorField};
use super::{DecayRow, DecayTable, Perturbation};
use crate::error::{Error, Result};
use crate::group::{SemidirectGroup, UnitaryIrrep};
use crate::linalg::{CMatrix, ONE};
use crate::mackey::{projection_p, CataloguingTriple};

/// A finite net prefix `(χ_m, K_{χ_m}, μ_m)`, `m = 1..M`, with limit data
/// `(χ∞, K′, μ∞)`. All fibers share the dimension `d = dim μ∞`.
#[derive(Clone, Debug)]
pub struct FiniteNet {
    pub entries: Vec<CataloguingTriple>,
    pub limit: LimitSet,
}

impl FiniteNet {
    pub fn new(entries: Vec<CataloguingTriple>, limit: LimitSet) -> Result<Self> {
        let d = limit.mu_inf.dim();
        for (index, e) in entries.iter().enumerate() {
            if e.mu().dim() != d {
                return Err(Error::FiberDimension {
                    index: index + 1,
                    found: e.mu().dim(),
                    expected: d,
                });
            }
        }
        Ok(Self { entries, limit })
    }

    pub fn fiber_dim(&self) -> usize {
        self.limit.mu_inf.dim()
    }

    /// `J∞ σ(F|_L) J∞*` on `ℓ²(K, ℂ^d)`.
    pub fn limit_operator(
        &self,
        g: &SemidirectGroup,
        field: &dyn OperatorField,
    ) -> Result<CMatrix> {
        let decomposition = LimitDecomposition::new(g, &self.limit)?;
        let sigma = decomposition.sigma(&field_values(g, &self.limit, field)?)?;
        let j = decomposition.induced().embedding(g);
        j.matmul(&sigma)?.matmul(&j.adjoint())
    }

    /// `J_m F(μ_m, χ_m) J_m*` on `ℓ²(K, ℂ^d)`, optionally shifted.
    pub fn row_operator(
        &self,
        g: &SemidirectGroup,
        field: &dyn OperatorField,
        m: usize,
        perturbation: Option<&Perturbation>,
    ) -> Result<CMatrix> {
        let triple = &self.entries[m - 1];
        let value = field
            .value(triple)
            .ok_or_else(|| Error::MissingLimitEntry(format!("net entry {m}")))?;
        let j = triple.induced().embedding(g);
        let mut op = j.matmul(&value)?.matmul(&j.adjoint())?;
        if let Some(p) = perturbation.filter(|p| p.applies(m)) {
            let proj = projection_p(g.k(), triple.stab(), triple.mu())?;
            op.axpy(ONE * p.shift, &proj)?;
        }
        Ok(op)
    }
}

/// `‖J_m F(μ_m,χ_m) J_m* − J∞ σ(F|_L) J∞*‖_op` for `m = 1..M`.
pub fn condition3_defect(
    g: &SemidirectGroup,
    net: &FiniteNet,
    field: &dyn OperatorField,
    perturbation: Option<&Perturbation>,
) -> Result<DecayTable> {
    let limit = net.limit_operator(g, field)?;
    let mut table = DecayTable::new("finite")
        .with_meta("group", g.label())
        .with_meta("rows", net.entries.len())
        .with_meta("fiber_dim", net.fiber_dim())
        .with_meta("k_prime_order", net.limit.k_prime().order());
    for m in 1..=net.entries.len() {
        let row = net.row_operator(g, field, m, perturbation)?;
        table.rows.push(DecayRow {
            index: m as f64,
            defect: row.sub(&limit)?.operator_norm(),
            refinement_delta: None,
        });
    }
    Ok(table)
}

/// The stationary net repeating the limit entry `(χ, K_χ, μ)` `rows` times.
pub fn stationary_net(
    g: &SemidirectGroup,
    chi: usize,
    mu: UnitaryIrrep,
    rows: usize,
    provider: &crate::group::IrrepProvider,
) -> Result<FiniteNet> {
    let stab = g.stabilizer(chi);
    let index = provider
        .irreps(g.k(), &stab)?
        .iter()
        .position(|nu| character_match(nu, &mu))
        .ok_or_else(|| Error::Precondition("μ is not an irrep of the stabilizer".into()))?;
    let limit = super::limit_set(g, chi, &mu, provider)?;
    let triple = CataloguingTriple::new(g, chi, mu, index)?;
    FiniteNet::new(vec![triple; rows], limit)
}

fn character_match(a: &UnitaryIrrep, b: &UnitaryIrrep) -> bool {
    a.subgroup() == b.subgroup()
        && (crate::group::character_inner(a.characters(), b.characters()).re - 1.0).abs() < 1e-8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{irreps, IrrepProvider};
    use crate::mackey::{partial_fourier, GroupFunction};
    use crate::netconv::{FourierField, RowSelector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn stationary_net_has_zero_defect_and_perturbation_shows() {
        let g = SemidirectGroup::builtin("dihedral:4").unwrap();
        let stab = g.stabilizer(1);
        let mu = irreps(g.k(), &stab).unwrap().remove(0);
        let net = stationary_net(&g, 1, mu, 4, &IrrepProvider::default()).unwrap();
        let f = GroupFunction::random(&g, &mut ChaCha8Rng::seed_from_u64(5));
        let field = FourierField {
            group: &g,
            transform: partial_fourier(&g, &f),
        };
        let table = condition3_defect(&g, &net, &field, None).unwrap();
        assert!(table.defects().iter().all(|&d| d < 1e-10), "{table:?}");
        let p = Perturbation {
            shift: 0.5,
            rows: RowSelector::Odd,
        };
        let bad = condition3_defect(&g, &net, &field, Some(&p)).unwrap();
        let d = bad.defects();
        assert!((d[0] - 0.5).abs() < 1e-10 && d[1] < 1e-10);
    }
}

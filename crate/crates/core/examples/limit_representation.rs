//! Limit set and limit representation `σ` for `K′ ⊊ K_χ`.

use mackey_fields::group::{IrrepProvider, SemidirectGroup, Subgroup};
use mackey_fields::mackey::{partial_fourier, tau, GroupFunction, InducedRep};
use mackey_fields::netconv::{limit_set, sigma_limit, FourierField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mackey_fields::Result<()> {
    let g = SemidirectGroup::builtin("sign_cube:2")?;
    let provider = IrrepProvider::default();
    let chi = 0;
    let k_prime = Subgroup::generated(g.k(), &[1]);
    let mu_inf = provider.irreps(g.k(), &k_prime)?.remove(1);
    let limit = limit_set(&g, chi, &mu_inf, &provider)?;
    println!("K′ = {k_prime}, μ∞ #1; limit set:");
    for e in &limit.entries {
        println!(
            "  ν #{} of {} with multiplicity {}",
            e.triple.irrep_index(),
            e.triple.stab(),
            e.multiplicity
        );
    }
    let f = GroupFunction::random(&g, &mut ChaCha8Rng::seed_from_u64(5));
    let pf = partial_fourier(&g, &f);
    let field = FourierField {
        group: &g,
        transform: pf.clone(),
    };
    let sigma = sigma_limit(&g, &limit, &field)?;
    let j = InducedRep::new(&g, chi, mu_inf.clone())?.embedding(&g);
    let lifted = j.matmul(&sigma)?.matmul(&j.adjoint())?;
    let expected = tau(&g, &k_prime, &mu_inf, chi, &pf)?;
    println!(
        "‖J σ J* − τ_(μ∞,χ∞)(f)‖_op = {:.3e}",
        lifted.distance(&expected)?
    );
    Ok(())
}

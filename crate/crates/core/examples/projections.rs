//! `P_ν` and `τ_{ν,χ}(f)` for a subgroup `L` of a stabilizer, and the
//! identity `ind(f)∘P_ν = τ_{ν,χ}(f)`.

use mackey_fields::group::{irreps, SemidirectGroup, Subgroup};
use mackey_fields::mackey::{induced_operator, partial_fourier, projection_p, tau, GroupFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mackey_fields::Result<()> {
    let g = SemidirectGroup::builtin("square:3")?;
    let chi = 0;
    let l = Subgroup::generated(g.k(), &[2]);
    let f = GroupFunction::random(&g, &mut ChaCha8Rng::seed_from_u64(3));
    let pf = partial_fourier(&g, &f);
    for (i, nu) in irreps(g.k(), &l)?.iter().enumerate() {
        let p = projection_p(g.k(), &l, nu)?;
        let t = tau(&g, &l, nu, chi, &pf)?;
        let lhs = induced_operator(&g, chi, nu.dim(), &f).matmul(&p)?;
        println!(
            "L = {l}, ν #{i}: ‖P²−P‖ = {:.1e}, ‖P*−P‖ = {:.1e}, rank P = {:.0}, ‖ind(f)P − τ‖ = {:.1e}",
            p.matmul(&p)?.distance(&p)?,
            p.adjoint().distance(&p)?,
            p.trace().re,
            lhs.distance(&t)?
        );
    }
    Ok(())
}

//! Fourier transform of a delta and of a random function, entry by entry.

use mackey_fields::catalog::build_catalog;
use mackey_fields::group::{IrrepProvider, SemidirectGroup};
use mackey_fields::mackey::{fourier_block, partial_fourier, GroupFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mackey_fields::Result<()> {
    let g = SemidirectGroup::builtin("dihedral:4")?;
    let catalog = build_catalog(&g, &IrrepProvider::default())?;
    let x = g.element(1, 1);
    let delta = partial_fourier(&g, &GroupFunction::delta(&g, x));
    let f = GroupFunction::random(&g, &mut ChaCha8Rng::seed_from_u64(7));
    let pf = partial_fourier(&g, &f);
    for e in &catalog.entries {
        println!(
            "entry χ = {}, μ #{}",
            g.character_label(e.triple.chi()),
            e.triple.irrep_index()
        );
        println!("  F(δ_(1,1)) = {:?}", fourier_block(&g, &delta, &e.triple));
        println!(
            "  ‖F(f)‖_op = {:.6} ≤ ‖f‖₁ = {:.6}",
            fourier_block(&g, &pf, &e.triple).operator_norm(),
            f.l1_norm(&g)
        );
    }
    Ok(())
}

//! Catalogue of the dual of a semidirect product.
//!
//! `cargo run --example dual_catalog -- square:3`

use mackey_fields::catalog::build_catalog;
use mackey_fields::group::{IrrepProvider, SemidirectGroup};

fn main() -> mackey_fields::Result<()> {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "dihedral:4".into());
    let g = SemidirectGroup::load(&name)?;
    let catalog = build_catalog(&g, &IrrepProvider::default())?;
    println!(
        "{}: |K| = {}, |A| = {}",
        g.label(),
        g.k_order(),
        g.a_order()
    );
    for e in &catalog.entries {
        let t = &e.triple;
        println!(
            "  χ = {:<10} orbit {:>3}  |K_χ| = {:>2}  μ #{}  dim μ = {}  D = {}",
            g.character_label(t.chi()),
            e.orbit_size,
            t.stab().order(),
            t.irrep_index(),
            t.mu().dim(),
            t.dim()
        );
    }
    println!("ΣD² = {} (|G| = {})", catalog.dim_square_sum(), g.order());
    Ok(())
}

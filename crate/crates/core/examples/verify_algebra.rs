//! Seeded checks of the transform on a group with a nonabelian stabilizer.

use mackey_fields::catalog::{build_catalog, verify_algebra, VerifyTolerances};
use mackey_fields::group::{IrrepProvider, SemidirectGroup};

fn main() -> mackey_fields::Result<()> {
    let g = SemidirectGroup::builtin("square:3")?;
    let catalog = build_catalog(&g, &IrrepProvider::default())?;
    let report = verify_algebra(&g, &catalog, 10, 1, VerifyTolerances::default())?;
    for c in &report.checks {
        println!(
            "{:<32} {:.3e} (tol {:.0e}) {}",
            c.name,
            c.defect,
            c.tolerance,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    println!("Plancherel constant c = {}", report.plancherel_constant);
    Ok(())
}

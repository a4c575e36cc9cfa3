//! Shifting the field by `0.5·I` at odd rows must make the checker fail.

use mackey_fields::netconv::scenario::{
    run_scenario, NetTolerances, ScenarioConfig, ScenarioOverrides,
};
use mackey_fields::netconv::{Perturbation, RowSelector};

fn main() -> mackey_fields::Result<()> {
    let mut cfg = ScenarioConfig::load("finite")?;
    for shifted in [false, true] {
        if let (true, ScenarioConfig::Finite(c)) = (shifted, &mut cfg) {
            c.perturbation = Some(Perturbation {
                shift: 0.5,
                rows: RowSelector::Odd,
            });
        }
        let out = run_scenario(
            &cfg,
            &ScenarioOverrides::default(),
            NetTolerances::default(),
        )?;
        println!("shifted = {shifted}: defects {:?}", out.table.defects());
        for c in &out.checks {
            println!(
                "  {}: {:.3e} (tol {:.0e}) {}",
                c.name,
                c.defect,
                c.tolerance,
                if c.pass { "ok" } else { "FAIL" }
            );
        }
    }
    Ok(())
}

//! Condition-(3) defect of the motion group as `r → 0`.
//!
//! `cargo run --release --example motion_decay -- bessel:3:2`

use mackey_fields::netconv::motion::{default_radii, MotionPayload, MotionScenario};

fn main() -> mackey_fields::Result<()> {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "radial:1:2".into());
    let sc = MotionScenario {
        payload: MotionPayload::parse(&name)?,
        modes: 32,
        quadrature: 256,
        radii: default_radii(),
    };
    let out = sc.run(None)?;
    print!("{}", out.table.to_csv());
    for row in &out.per_character {
        let cells: Vec<String> = row
            .defects
            .iter()
            .map(|(l, d)| format!("λ={l}: {d:.3e}"))
            .collect();
        println!("r = {:<12} {}", row.radius, cells.join("  "));
    }
    for c in &out.checks {
        println!("{}: {:.3e} (tol {:.0e})", c.name, c.defect, c.tolerance);
    }
    Ok(())
}

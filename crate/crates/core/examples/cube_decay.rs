//! Condition-(3) defect along `χ_m` in the truncated sign cube.

use mackey_fields::netconv::cube::{CubePayload, CubeScenario};

fn main() -> mackey_fields::Result<()> {
    for payload in ["product:3:0", "product:8:1"] {
        let sc = CubeScenario::new(8, CubePayload::parse(payload)?)?;
        println!("{payload}");
        print!("{}", sc.decay_table(None).to_csv());
    }
    Ok(())
}

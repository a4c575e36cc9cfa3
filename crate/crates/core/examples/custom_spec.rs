//! A group given as JSON: `ℤ/3` acting on `(ℤ/7)` by multiplication by 2.

use mackey_fields::catalog::build_catalog;
use mackey_fields::group::{GroupSpec, IrrepProvider, SemidirectGroup};

const SPEC: &str = r#"{
  "invariant_factors": [7],
  "k": { "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]] },
  "action": [ { "element": 1, "matrix": [[2]] } ]
}"#;

fn main() -> mackey_fields::Result<()> {
    let g = SemidirectGroup::from_spec(&GroupSpec::from_json(SPEC)?)?;
    let catalog = build_catalog(&g, &IrrepProvider::default())?;
    println!(
        "{}: dims {:?}, ΣD² = {}",
        g.label(),
        catalog.dims(),
        catalog.dim_square_sum()
    );
    Ok(())
}

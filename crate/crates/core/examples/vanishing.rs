//! Vanishing at infinity: motion payload supported in `r ≤ 2`, the sign
//! cube, and a finite group.

use mackey_fields::netconv::cube::{CubePayload, CubeScenario};
use mackey_fields::netconv::motion::MotionPayload;
use mackey_fields::netconv::vanish::{cube_vanishing, finite_vanishing, motion_vanishing};

fn main() -> mackey_fields::Result<()> {
    let f = MotionPayload::Radial {
        radius: 2.0,
        power: 2.0,
    };
    let motion = motion_vanishing(&f, &[0.5, 1.0, 1.5, 2.0, 2.5, 4.0], 32, 256, 1e-15)?;
    let cube = cube_vanishing(
        &CubeScenario::new(
            6,
            CubePayload {
                depth: 3,
                beta: 0.0,
            },
        )?,
        1e-12,
    );
    for rep in [motion, cube, finite_vanishing("dihedral:4", 1e-12)] {
        println!(
            "{}: {} (vanishing from {:?})",
            rep.scenario, rep.note, rep.vanishing_from
        );
        for l in &rep.levels {
            println!(
                "  level {:<5} max {:.3e}  tail sup {:.3e}",
                l.level, l.level_max, l.tail_sup
            );
        }
    }
    Ok(())
}

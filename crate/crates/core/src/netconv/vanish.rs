//! Condition (2): `‖F(μ, χ)‖_op → 0` as `(μ, χ)` leaves every compact set,
//! measured along an escape filtration.

use serde::Serialize;

use super::cube::{stabilizer_free_bits, CubeScenario};
use super::motion::{motion_tau_matrix, MotionFunction};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VanishLevel {
    pub level: f64,
    /// Largest `‖F‖_op` among entries at exactly this level.
    pub level_max: f64,
    /// Largest `‖F‖_op` among entries at this level or beyond.
    pub tail_sup: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VanishReport {
    pub scenario: String,
    pub threshold: f64,
    /// `false` when the dual carries no escape filtration (finite groups).
    pub applicable: bool,
    pub note: String,
    pub levels: Vec<VanishLevel>,
    /// First level from which the tail supremum stays below the threshold.
    pub vanishing_from: Option<f64>,
    pub pass: bool,
}

fn report(scenario: &str, threshold: f64, mut levels: Vec<(f64, f64)>) -> VanishReport {
    levels.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<VanishLevel> = Vec::with_capacity(levels.len());
    let mut running = 0.0f64;
    for &(level, value) in levels.iter().rev() {
        running = running.max(value);
        out.push(VanishLevel {
            level,
            level_max: value,
            tail_sup: running,
        });
    }
    out.reverse();
    let vanishing_from = out
        .iter()
        .find(|l| l.tail_sup <= threshold)
        .map(|l| l.level);
    VanishReport {
        scenario: scenario.to_string(),
        threshold,
        applicable: true,
        note: String::new(),
        pass: vanishing_from.is_some(),
        levels: out,
        vanishing_from,
    }
}

/// Finite duals are discrete and finite, so condition (2) holds vacuously.
pub fn finite_vanishing(group: &str, threshold: f64) -> VanishReport {
    VanishReport {
        scenario: "finite".into(),
        threshold,
        applicable: false,
        note: format!("{group}: the dual is finite, so the escape filtration is trivial and condition (2) is vacuous"),
        levels: Vec::new(),
        vanishing_from: None,
        pass: true,
    }
}

/// Levels are radii; the entry at radius `r` is the whole operator `τ_r(f)`.
pub fn motion_vanishing(
    f: &dyn MotionFunction,
    radii: &[f64],
    modes: usize,
    quadrature: usize,
    threshold: f64,
) -> Result<VanishReport> {
    let levels = radii
        .iter()
        .map(|&r| Ok((r, motion_tau_matrix(r, f, modes, quadrature)?.max_abs())))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = report("motion", threshold, levels);
    rep.note = "level = radius; value = max |entry| of τ_r(f)".into();
    Ok(rep)
}

/// Levels are the highest coordinate on which `μ` is nontrivial (`0` for
/// trivial `μ`); entries range over `χ_m`, `m = 1..M`, and all characters
/// `μ` of `K_{χ_m}`.
pub fn cube_vanishing(scenario: &CubeScenario, threshold: f64) -> VanishReport {
    let mut by_level = vec![0.0f64; scenario.depth + 1];
    for m in 1..=scenario.depth {
        let free = stabilizer_free_bits(m, scenario.depth);
        for sel in 0..1usize << free.len() {
            let s_mask: usize = free
                .iter()
                .enumerate()
                .filter(|(i, _)| sel >> i & 1 == 1)
                .map(|(_, b)| 1usize << b)
                .sum();
            let level = usize::BITS as usize - s_mask.leading_zeros() as usize;
            let norm = scenario.fourier_entry(m, s_mask).operator_norm();
            by_level[level] = by_level[level].max(norm);
        }
    }
    let levels = by_level
        .into_iter()
        .enumerate()
        .map(|(l, v)| (l as f64, v))
        .collect();
    let mut rep = report("cube", threshold, levels);
    rep.note = "level = highest coordinate in the support of μ; entries (χ_m, μ), m = 1..M".into();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netconv::cube::CubePayload;
    use crate::netconv::motion::MotionPayload;

    #[test]
    fn tail_sup_is_monotone() {
        let rep = report("t", 0.1, vec![(2.0, 0.05), (1.0, 0.5), (3.0, 0.2)]);
        let tails: Vec<f64> = rep.levels.iter().map(|l| l.tail_sup).collect();
        assert_eq!(tails, vec![0.5, 0.2, 0.2]);
        assert_eq!(rep.vanishing_from, None);
    }

    #[test]
    fn compact_support_vanishes_past_the_radius() {
        let f = MotionPayload::Radial {
            radius: 1.0,
            power: 2.0,
        };
        let rep = motion_vanishing(&f, &[0.5, 1.5, 2.0], 4, 32, 1e-15).unwrap();
        assert_eq!(rep.vanishing_from, Some(1.5));
    }

    #[test]
    fn cube_vanishes_beyond_payload_depth() {
        let sc = CubeScenario::new(
            5,
            CubePayload {
                depth: 2,
                beta: 0.0,
            },
        )
        .unwrap();
        let rep = cube_vanishing(&sc, 1e-12);
        assert_eq!(rep.vanishing_from, Some(3.0));
    }

    #[test]
    fn finite_report_is_vacuous() {
        let rep = finite_vanishing("dihedral:4", 1e-6);
        assert!(rep.pass && !rep.applicable);
    }
}

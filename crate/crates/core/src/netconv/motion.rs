//! `SO(2) ⋉ ℝ²`. For radius `r > 0` the operator `τ_r(f)` acts on the
//! Fourier modes `e^{iqφ}`, `|q| ≤ N`, of `L²(S¹)`; at `r = 0` it degenerates
//! to convolution by `g(θ) = f̂²(θ, 0)`, diagonal in the same basis.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{DecayRow, DecayTable, Perturbation};
use crate::catalog::Check;
use crate::error::{Error, Result};
use crate::linalg::{root_of_unity, CMatrix, ZERO};

/// A function `f̂²(θ, ξ)` on `SO(2) × ℝ²`.
pub trait MotionFunction: Sync {
    fn eval(&self, theta: f64, xi: [f64; 2]) -> Complex64;

    /// Radius outside which `f̂²` vanishes, if known.
    fn support_radius(&self) -> Option<f64> {
        None
    }

    /// Lipschitz constant of `r ↦ ‖τ_r(f) − τ_0(f)‖`, if known.
    fn lipschitz(&self) -> Option<f64> {
        None
    }
}

/// Builtin payloads, all with radial profile `w(s) = max(0, 1 − s/R)^p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MotionPayload {
    /// `w(‖ξ‖)`.
    Radial {
        radius: f64,
        power: f64,
    },
    /// `e^{iθ} w(‖ξ‖)`.
    Mode1 {
        radius: f64,
        power: f64,
    },
    /// `w(‖ξ‖)(1 + cos θ) e^{iξ₁}`.
    Bessel {
        radius: f64,
        power: f64,
    },
    Zero,
}

pub const MOTION_PAYLOADS: &str = "radial:R:p, mode1:R:p, bessel:R:p, zero";

impl MotionPayload {
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::UnknownBuiltin {
            name: name.to_string(),
            valid: MOTION_PAYLOADS.into(),
        };
        let parts: Vec<&str> = name.split(':').collect();
        if parts == ["zero"] {
            return Ok(Self::Zero);
        }
        let [kind, r, p] = parts.as_slice() else {
            return Err(bad());
        };
        let radius: f64 = r.parse().map_err(|_| bad())?;
        let power: f64 = p.parse().map_err(|_| bad())?;
        if !(radius.is_finite() && radius > 0.0 && power.is_finite() && power >= 1.0) {
            return Err(bad());
        }
        match *kind {
            "radial" => Ok(Self::Radial { radius, power }),
            "mode1" => Ok(Self::Mode1 { radius, power }),
            "bessel" => Ok(Self::Bessel { radius, power }),
            _ => Err(bad()),
        }
    }

    fn profile(radius: f64, power: f64, s: f64) -> f64 {
        let t = 1.0 - s / radius;
        if t <= 0.0 {
            0.0
        } else {
            t.powf(power)
        }
    }
}

impl MotionFunction for MotionPayload {
    fn eval(&self, theta: f64, xi: [f64; 2]) -> Complex64 {
        let s = xi[0].hypot(xi[1]);
        match *self {
            Self::Radial { radius, power } => Self::profile(radius, power, s).into(),
            Self::Mode1 { radius, power } => {
                Complex64::from_polar(Self::profile(radius, power, s), theta)
            }
            Self::Bessel { radius, power } => {
                let w = Self::profile(radius, power, s);
                if w == 0.0 {
                    return ZERO;
                }
                Complex64::from_polar(w * (1.0 + theta.cos()), xi[0])
            }
            Self::Zero => ZERO,
        }
    }

    fn support_radius(&self) -> Option<f64> {
        match *self {
            Self::Radial { radius, .. }
            | Self::Mode1 { radius, .. }
            | Self::Bessel { radius, .. } => Some(radius),
            Self::Zero => Some(0.0),
        }
    }

    fn lipschitz(&self) -> Option<f64> {
        match *self {
            Self::Radial { radius, power } | Self::Mode1 { radius, power } => Some(power / radius),
            Self::Bessel { .. } => None,
            Self::Zero => Some(0.0),
        }
    }
}

fn check_grid(modes: usize, quadrature: usize) -> Result<()> {
    if modes == 0 {
        return Err(Error::Input("mode cutoff N must be at least 1".into()));
    }
    if quadrature < 2 * modes + 1 {
        return Err(Error::Input(format!(
            "quadrature {quadrature} cannot resolve {} modes",
            2 * modes + 1
        )));
    }
    Ok(())
}

fn angle(j: usize, n: usize) -> f64 {
    std::f64::consts::TAU * j as f64 / n as f64
}

/// `T_pq(r) = (2π)⁻² ∬ e^{−ipθ} f̂²(θ−φ, R_φ(r,0)) e^{iqφ} dθ dφ` for
/// `|p|, |q| ≤ N` by the trapezoidal rule on an `n × n` grid. Row and column
/// `p + N` hold mode `p`.
pub fn motion_tau_matrix(
    r: f64,
    f: &dyn MotionFunction,
    modes: usize,
    quadrature: usize,
) -> Result<CMatrix> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::NonPositiveRadius(r));
    }
    check_grid(modes, quadrature)?;
    let n = quadrature;
    let width = 2 * modes + 1;
    // g[l][p] = (1/n) Σ_j e^{−ipθ_j} f̂²(θ_j − φ_l, R_{φ_l}(r, 0)).
    let g: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|l| {
            let xi = [r * angle(l, n).cos(), r * angle(l, n).sin()];
            let samples: Vec<Complex64> = (0..n)
                .map(|j| f.eval(angle((j + n - l) % n, n), xi))
                .collect();
            (0..width)
                .map(|pi| {
                    let p = pi as i64 - modes as i64;
                    samples
                        .iter()
                        .enumerate()
                        .map(|(j, v)| root_of_unity(-p * j as i64, n as i64) * v)
                        .sum::<Complex64>()
                        / n as f64
                })
                .collect()
        })
        .collect();
    Ok(CMatrix::from_fn(width, width, |pi, qi| {
        let q = qi as i64 - modes as i64;
        g.iter()
            .enumerate()
            .map(|(l, row)| row[pi] * root_of_unity(q * l as i64, n as i64))
            .sum::<Complex64>()
            / n as f64
    }))
}

/// `diag(ĝ(p))`, `ĝ(p) = (1/n) Σ_j e^{−ipθ_j} f̂²(θ_j, 0)`.
pub fn motion_limit_operator(
    f: &dyn MotionFunction,
    modes: usize,
    quadrature: usize,
) -> Result<CMatrix> {
    check_grid(modes, quadrature)?;
    let n = quadrature;
    let samples: Vec<Complex64> = (0..n).map(|j| f.eval(angle(j, n), [0.0, 0.0])).collect();
    let diag: Vec<Complex64> = (-(modes as i64)..=modes as i64)
        .map(|p| {
            samples
                .iter()
                .enumerate()
                .map(|(j, v)| root_of_unity(-p * j as i64, n as i64) * v)
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    Ok(CMatrix::from_diagonal(&diag))
}

/// `‖(T(r) − ĝ(λ)) e_λ‖` for each listed mode `λ`.
pub fn per_character_defects(
    t: &CMatrix,
    limit: &CMatrix,
    modes: usize,
    lambdas: &[i64],
) -> Vec<(i64, f64)> {
    lambdas
        .iter()
        .filter(|l| l.unsigned_abs() as usize <= modes)
        .map(|&l| {
            let c = (l + modes as i64) as usize;
            let norm = (0..t.rows())
                .map(|r| (t[(r, c)] - limit[(r, c)]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            (l, norm)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct MotionScenario {
    pub payload: MotionPayload,
    pub modes: usize,
    pub quadrature: usize,
    pub radii: Vec<f64>,
}

/// `r = 2⁻¹, …, 2⁻⁸`.
pub fn default_radii() -> Vec<f64> {
    (1..=8).map(|k| 0.5f64.powi(k)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterDefects {
    pub radius: f64,
    pub defects: Vec<(i64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MotionOutcome {
    pub table: DecayTable,
    pub per_character: Vec<CharacterDefects>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Entry changes under quadrature doubling above this fail the refinement check.
pub const REFINEMENT_TOL: f64 = 1e-8;

impl MotionScenario {
    pub fn run(&self, perturbation: Option<&Perturbation>) -> Result<MotionOutcome> {
        let limit = motion_limit_operator(&self.payload, self.modes, self.quadrature)?;
        let limit_fine = motion_limit_operator(&self.payload, self.modes, 2 * self.quadrature)?;
        let limit_delta = limit.sub(&limit_fine)?.max_abs();
        let mut table = DecayTable::new("motion")
            .with_meta(
                "payload",
                serde_json::to_value(self.payload).expect("serializable"),
            )
            .with_meta("modes", self.modes)
            .with_meta("quadrature", self.quadrature);
        let mut per_character = Vec::new();
        let shift_matrix = CMatrix::identity(2 * self.modes + 1);
        for (i, &r) in self.radii.iter().enumerate() {
            let mut t = motion_tau_matrix(r, &self.payload, self.modes, self.quadrature)?;
            let mut t_fine = motion_tau_matrix(r, &self.payload, self.modes, 2 * self.quadrature)?;
            let entry_delta = t.sub(&t_fine)?.max_abs();
            if let Some(p) = perturbation.filter(|p| p.applies(i + 1)) {
                t.axpy(p.shift.into(), &shift_matrix)?;
                t_fine.axpy(p.shift.into(), &shift_matrix)?;
            }
            let defect = t.sub(&limit)?.operator_norm();
            let defect_fine = t_fine.sub(&limit_fine)?.operator_norm();
            let refinement = entry_delta
                .max(limit_delta)
                .max((defect - defect_fine).abs());
            table.rows.push(DecayRow {
                index: r,
                defect,
                refinement_delta: Some(refinement),
            });
            per_character.push(CharacterDefects {
                radius: r,
                defects: per_character_defects(&t, &limit, self.modes, &[-2, -1, 0, 1, 2]),
            });
        }
        let mut checks = vec![super::strict_decrease_check(&sorted_by_radius_desc(&table))];
        let refinement = table
            .rows
            .iter()
            .filter_map(|r| r.refinement_delta)
            .fold(0.0, f64::max);
        checks.push(Check::new(
            "quadrature_refinement",
            refinement,
            REFINEMENT_TOL,
        ));
        if let Some(lip) = self.payload.lipschitz() {
            let excess = table
                .rows
                .iter()
                .map(|row| row.defect - lip * row.index)
                .fold(f64::NEG_INFINITY, f64::max);
            checks.push(Check::new("lipschitz_excess", excess, REFINEMENT_TOL));
        }
        let pass = checks.iter().all(|c| c.pass);
        Ok(MotionOutcome {
            table,
            per_character,
            checks,
            pass,
        })
    }
}

/// Rows ordered from the largest radius down, the direction of convergence.
fn sorted_by_radius_desc(table: &DecayTable) -> DecayTable {
    let mut t = table.clone();
    t.rows.sort_by(|a, b| b.index.total_cmp(&a.index));
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_names() {
        assert_eq!(
            MotionPayload::parse("radial:2:2").unwrap(),
            MotionPayload::Radial {
                radius: 2.0,
                power: 2.0
            }
        );
        assert_eq!(MotionPayload::parse("zero").unwrap(), MotionPayload::Zero);
        let err = MotionPayload::parse("gauss:1").unwrap_err();
        assert!(err.to_string().contains("bessel:R:p"));
    }

    #[test]
    fn non_positive_radius_is_rejected() {
        let f = MotionPayload::Zero;
        assert!(matches!(
            motion_tau_matrix(0.0, &f, 2, 16),
            Err(Error::NonPositiveRadius(_))
        ));
        assert!(matches!(
            motion_tau_matrix(-1.0, &f, 2, 16),
            Err(Error::NonPositiveRadius(_))
        ));
    }

    #[test]
    fn zero_payload_gives_zero() {
        let f = MotionPayload::Zero;
        assert_eq!(motion_tau_matrix(0.3, &f, 2, 16).unwrap().max_abs(), 0.0);
        assert_eq!(motion_limit_operator(&f, 2, 16).unwrap().max_abs(), 0.0);
    }

    struct Cosine;
    impl MotionFunction for Cosine {
        fn eval(&self, theta: f64, _xi: [f64; 2]) -> Complex64 {
            theta.cos().into()
        }
    }

    #[test]
    fn cosine_limit_has_halves_at_plus_minus_one() {
        let l = motion_limit_operator(&Cosine, 3, 32).unwrap();
        for p in -3i64..=3 {
            let expected = if p.abs() == 1 { 0.5 } else { 0.0 };
            let i = (p + 3) as usize;
            assert!((l[(i, i)] - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn radial_payload_lives_on_mode_zero() {
        let f = MotionPayload::Radial {
            radius: 1.0,
            power: 2.0,
        };
        let t = motion_tau_matrix(0.25, &f, 3, 32).unwrap();
        let w = 0.75f64 * 0.75;
        for r in 0..7 {
            for c in 0..7 {
                let expected = if r == 3 && c == 3 { w } else { 0.0 };
                assert!((t[(r, c)] - expected).norm() < 1e-14);
            }
        }
    }
}

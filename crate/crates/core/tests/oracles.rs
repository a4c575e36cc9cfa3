//! Library results against independently computed values.

mod common;

use common::{group, random_function};
use mackey_fields::catalog::build_catalog;
use mackey_fields::group::{IrrepProvider, SemidirectGroup};
use mackey_fields::linalg::CMatrix;
use mackey_fields::mackey::{fourier_block, induced_rep, partial_fourier, tau, CataloguingTriple};
use mackey_fields::netconv::cube::{CubePayload, CubeScenario};
use mackey_fields::netconv::motion::{motion_limit_operator, motion_tau_matrix, MotionPayload};
use num_complex::Complex64;

/// `J_n(x)` from its power series.
fn bessel_j(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs();
    let mut term = (x / 2.0).powi(m as i32) / (1..=m).map(|k| k as f64).product::<f64>();
    let mut sum = 0.0;
    for k in 0..60u64 {
        sum += term;
        term *= -(x / 2.0).powi(2) / ((k + 1) as f64 * (k + 1 + m) as f64);
    }
    if n < 0 && m % 2 == 1 {
        -sum
    } else {
        sum
    }
}

#[test]
fn bessel_series_matches_tabulated_values() {
    assert!((bessel_j(0, 1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
    assert!((bessel_j(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-15);
    assert!((bessel_j(-1, 1.0) + 0.440_050_585_744_933_5).abs() < 1e-15);
}

#[test]
fn bessel_payload_matches_closed_form() {
    let (radius, power) = (3.0, 2.0);
    let f = MotionPayload::Bessel { radius, power };
    let modes = 4;
    let g_hat = |p: i64| match p {
        0 => 1.0,
        1 | -1 => 0.5,
        _ => 0.0,
    };
    for r in [0.25, 0.7, 1.3] {
        let w = (1.0 - r / radius).max(0.0).powf(power);
        let t = motion_tau_matrix(r, &f, modes, 128).unwrap();
        let mut worst = 0.0f64;
        for p in -(modes as i64)..=modes as i64 {
            for q in -(modes as i64)..=modes as i64 {
                let i_pow = Complex64::new(0.0, 1.0).powi((p - q) as i32);
                let expected = i_pow * (w * g_hat(p) * bessel_j(p - q, r));
                let got = t[((p + modes as i64) as usize, (q + modes as i64) as usize)];
                worst = worst.max((got - expected).norm());
            }
        }
        assert!(worst < 1e-12, "r = {r}: {worst:e}");
    }
}

#[test]
fn radial_limit_is_the_profile_at_the_origin() {
    let f = MotionPayload::Radial {
        radius: 1.0,
        power: 2.0,
    };
    let limit = motion_limit_operator(&f, 3, 64).unwrap();
    let mut expected = CMatrix::zeros(7, 7);
    expected[(3, 3)] = 1.0.into();
    assert!(limit.distance(&expected).unwrap() < 1e-15);
}

/// Cube payload `u` straight from the product formula.
fn cube_u(depth: usize, m_total: usize) -> Vec<f64> {
    (0..1usize << m_total)
        .map(|k| {
            let mut v = 1.0;
            for j in 0..depth.min(m_total) {
                let sign = if k >> j & 1 == 1 { -1.0 } else { 1.0 };
                v *= 1.0 + sign * 0.5f64.powi(j as i32 + 1);
            }
            v
        })
        .collect()
}

/// Norm of XOR convolution by `v` through the Walsh spectrum, summed naively.
fn xor_convolution_norm(v: &[f64]) -> f64 {
    (0..v.len())
        .map(|s| {
            v.iter()
                .enumerate()
                .map(|(k, x)| {
                    if (k & s).count_ones() % 2 == 0 {
                        *x
                    } else {
                        -*x
                    }
                })
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

fn cube_defect_oracle(m_total: usize, depth: usize, beta: f64, m: usize) -> f64 {
    let n = 1usize << m_total;
    let u = cube_u(depth, m_total);
    // Coordinates 1..=m carry angle 1/m; sign flips fix the angle only for m ≤ 2.
    let free: usize = if m <= 2 {
        n - 1
    } else {
        (n - 1) & !((1usize << m.min(m_total)) - 1)
    };
    let subgroup: Vec<usize> = (0..n).filter(|l| l & !free == 0).collect();
    let frac = {
        let r = 1 % m;
        r.min(m - r) as f64 / m as f64
    };
    let c = (-beta * m.min(m_total) as f64 * frac * frac).exp();
    let v: Vec<f64> = (0..n)
        .map(|k| {
            let avg = subgroup.iter().map(|l| u[k ^ l]).sum::<f64>() / subgroup.len() as f64;
            (c * avg - u[k]) / n as f64
        })
        .collect();
    xor_convolution_norm(&v)
}

#[test]
fn cube_defects_match_walsh_oracle() {
    for (depth, beta) in [(3, 0.0), (6, 1.0), (2, 0.5)] {
        let sc = CubeScenario::new(6, CubePayload { depth, beta }).unwrap();
        let got = sc.decay_table(None).defects();
        for (i, d) in got.iter().enumerate() {
            let expected = cube_defect_oracle(6, depth, beta, i + 1);
            assert!(
                (d - expected).abs() < 1e-12,
                "depth {depth}, β {beta}, m {}: {d} vs {expected}",
                i + 1
            );
        }
    }
}

#[test]
fn cube_all_coordinate_defects_have_closed_form_tail() {
    let sc = CubeScenario::new(
        8,
        CubePayload {
            depth: 8,
            beta: 1.0,
        },
    )
    .unwrap();
    let d = sc.decay_table(None).defects();
    for m in 3..=8usize {
        let expected = 1.0 - (-1.0 / m as f64).exp();
        assert!(
            (d[m - 1] - expected).abs() < 1e-12,
            "m {m}: {} vs {expected}",
            d[m - 1]
        );
    }
}

/// `tr ind(μ⊗χ)(g) = (1/|H|) Σ_{x : x⁻¹gx ∈ H} tr μ(s) χ(a)`, `x⁻¹gx = (s, a)`.
fn frobenius_character(g: &SemidirectGroup, triple: &CataloguingTriple, x: usize) -> Complex64 {
    let stab = triple.stab();
    let mut sum = Complex64::new(0.0, 0.0);
    for y in 0..g.order() {
        let conj = g.mul(g.mul(g.inv(y), x), y);
        let (s, a) = g.split(conj);
        if stab.contains(s) {
            sum += triple.mu().matrix(s).trace() * g.char_value(triple.chi(), a);
        }
    }
    sum / (stab.order() * g.a_order()) as f64
}

#[test]
fn induced_reps_are_unitary_homomorphisms_with_frobenius_characters() {
    for name in [
        "dihedral:4",
        "dihedral:5",
        "sign_cube:2",
        "square:3",
        "affine:5",
    ] {
        let g = group(name);
        let catalog = build_catalog(&g, &IrrepProvider::default()).unwrap();
        for e in &catalog.entries {
            let t = &e.triple;
            let mats: Vec<CMatrix> = (0..g.order()).map(|x| induced_rep(&g, t, x)).collect();
            for (x, m) in mats.iter().enumerate() {
                let id = CMatrix::identity(t.dim());
                assert!(m.matmul(&m.adjoint()).unwrap().distance(&id).unwrap() < 1e-12);
                let expected = frobenius_character(&g, t, x);
                assert!((m.trace() - expected).norm() < 1e-10, "{name} at {x}");
            }
            for x in (0..g.order()).step_by(7) {
                for y in (0..g.order()).step_by(5) {
                    let prod = mats[x].matmul(&mats[y]).unwrap();
                    assert!(prod.distance(&mats[g.mul(x, y)]).unwrap() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn embedding_compresses_tau_to_the_fourier_block() {
    for name in ["dihedral:4", "sign_cube:2", "square:3"] {
        let g = group(name);
        let catalog = build_catalog(&g, &IrrepProvider::default()).unwrap();
        let pf = partial_fourier(&g, &random_function(&g, 11));
        for e in &catalog.entries {
            let t = &e.triple;
            let j = t.induced().embedding(&g);
            let jj = j.adjoint().matmul(&j).unwrap();
            assert!(jj.distance(&CMatrix::identity(t.dim())).unwrap() < 1e-12);
            let full = tau(&g, t.stab(), t.mu(), t.chi(), &pf).unwrap();
            let compressed = j.adjoint().matmul(&full).unwrap().matmul(&j).unwrap();
            assert!(
                compressed.distance(&fourier_block(&g, &pf, t)).unwrap() < 1e-12,
                "{name}"
            );
        }
    }
}

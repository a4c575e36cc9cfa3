//! Truncation at depth `M` of `{±1}^∞ ⋉ ℤ^(∞)`. `K = {±1}^M` is stored as
//! bitmasks under XOR, bit `j` standing for coordinate `j+1`. The net
//! character `χ_m` has angle `1/m` turn on coordinates `≤ m` and `0` beyond.

use rayon::prelude::*;
use serde::Serialize;

use super::{DecayRow, DecayTable, Perturbation};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// `f̂²(k, χ) = u(k) · exp(−β Σ_j d(α_j)²)` with
/// `u(k) = Π_{j ≤ depth} (1 + 2^{−j} k_j)`, where `α_j` are the angles of
/// `χ` and `d` is the distance to the nearest integer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubePayload {
    pub depth: usize,
    pub beta: f64,
}

impl CubePayload {
    /// `product:depth:beta`, e.g. `product:3:0`.
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::UnknownBuiltin {
            name: name.to_string(),
            valid: "product:depth:beta".into(),
        };
        let parts: Vec<&str> = name.split(':').collect();
        match parts.as_slice() {
            ["product", depth, beta] => {
                let depth = depth.parse().map_err(|_| bad())?;
                let beta: f64 = beta.parse().map_err(|_| bad())?;
                if !beta.is_finite() || beta < 0.0 {
                    return Err(bad());
                }
                Ok(Self { depth, beta })
            }
            _ => Err(bad()),
        }
    }

    /// `u` on `{±1}^M`, indexed by bitmask.
    pub fn u_table(&self, m_total: usize) -> Vec<f64> {
        (0..1usize << m_total)
            .map(|k| {
                (0..self.depth.min(m_total))
                    .map(|j| {
                        let rho = 0.5f64.powi(j as i32 + 1);
                        if k >> j & 1 == 1 {
                            1.0 - rho
                        } else {
                            1.0 + rho
                        }
                    })
                    .product()
            })
            .collect()
    }

    /// The character factor at `χ_m`.
    pub fn chi_factor(&self, m: usize, m_total: usize) -> f64 {
        let d = nearest_integer_distance(1, m);
        let active = m.min(m_total) as f64;
        (-self.beta * active * d * d).exp()
    }
}

/// Distance from `num/den` to the nearest integer.
fn nearest_integer_distance(num: usize, den: usize) -> f64 {
    let r = num % den;
    r.min(den - r) as f64 / den as f64
}

/// Bits of `K_{χ_m}`: every bit when the angle `1/m` is fixed by a sign
/// flip (`m ≤ 2`), otherwise bits `m..M`.
pub fn stabilizer_free_bits(m: usize, m_total: usize) -> Vec<usize> {
    if m <= 2 {
        (0..m_total).collect()
    } else {
        (m.min(m_total)..m_total).collect()
    }
}

/// Averages `v` over the subgroup spanned by `bits`, one bit at a time.
fn average_over_bits(v: &[f64], bits: &[usize]) -> Vec<f64> {
    let mut out = v.to_vec();
    for &b in bits {
        let mask = 1usize << b;
        for k in 0..out.len() {
            if k & mask == 0 {
                let avg = 0.5 * (out[k] + out[k | mask]);
                out[k] = avg;
                out[k | mask] = avg;
            }
        }
    }
    out
}

fn xor_kernel(v: &[f64], scale: f64) -> CMatrix {
    let n = v.len();
    CMatrix::from_fn(n, n, |x, y| (v[x ^ y] * scale).into())
}

#[derive(Clone, Debug)]
pub struct CubeScenario {
    /// Truncation depth `M`.
    pub depth: usize,
    pub payload: CubePayload,
}

impl CubeScenario {
    pub fn new(depth: usize, payload: CubePayload) -> Result<Self> {
        if !(1..=10).contains(&depth) {
            return Err(Error::Input(format!(
                "cube depth must be in 1..=10, got {depth}"
            )));
        }
        Ok(Self { depth, payload })
    }

    fn size(&self) -> usize {
        1 << self.depth
    }

    /// `τ_{μ∞,χ∞}(f)`: convolution by `f̂²(·, 1) = u` with weight `1/|K|`.
    pub fn limit_operator(&self) -> CMatrix {
        xor_kernel(&self.payload.u_table(self.depth), 1.0 / self.size() as f64)
    }

    /// `τ_{μ_m,χ_m}(f)`: block `(x, y) = c_m/|K| · avg_{l ∈ K_{χ_m}} u(x l y)`.
    pub fn row_operator(&self, m: usize) -> CMatrix {
        let u = self.payload.u_table(self.depth);
        let avg = average_over_bits(&u, &stabilizer_free_bits(m, self.depth));
        xor_kernel(
            &avg,
            self.payload.chi_factor(m, self.depth) / self.size() as f64,
        )
    }

    /// `P_{μ_m}` for trivial `μ_m`: averaging over `K_{χ_m}`.
    pub fn projection(&self, m: usize) -> CMatrix {
        let mut e = vec![0.0; self.size()];
        e[0] = 1.0;
        xor_kernel(
            &average_over_bits(&e, &stabilizer_free_bits(m, self.depth)),
            1.0,
        )
    }

    pub fn decay_table(&self, perturbation: Option<&Perturbation>) -> DecayTable {
        let limit = self.limit_operator();
        let rows: Vec<DecayRow> = (1..=self.depth)
            .into_par_iter()
            .map(|m| {
                let mut op = self.row_operator(m);
                if let Some(p) = perturbation.filter(|p| p.applies(m)) {
                    op.axpy(p.shift.into(), &self.projection(m))
                        .expect("same shape");
                }
                DecayRow {
                    index: m as f64,
                    defect: op.sub(&limit).expect("same shape").operator_norm(),
                    refinement_delta: None,
                }
            })
            .collect();
        let mut table = DecayTable::new("cube")
            .with_meta("depth", self.depth)
            .with_meta("payload_depth", self.payload.depth)
            .with_meta("payload_beta", self.payload.beta);
        table.rows = rows;
        table
    }

    /// `F(μ, χ_m)` on `ℓ²(K/K_{χ_m}, μ)` for the character `μ = W_S` of
    /// `K_{χ_m}`, `S` a subset of the free bits given as a mask:
    /// block `(i, j) = c_m/|K| Σ_{s ∈ K_{χ_m}} u(t_i s t_j) W_S(s)`.
    pub fn fourier_entry(&self, m: usize, s_mask: usize) -> CMatrix {
        let u = self.payload.u_table(self.depth);
        let free = stabilizer_free_bits(m, self.depth);
        let free_mask: usize = free.iter().map(|b| 1usize << b).sum();
        let transversal: Vec<usize> = (0..self.size()).filter(|t| t & free_mask == 0).collect();
        let sub: Vec<usize> = (0..self.size()).filter(|s| s & !free_mask == 0).collect();
        let scale = self.payload.chi_factor(m, self.depth) / self.size() as f64;
        let n = transversal.len();
        CMatrix::from_fn(n, n, |i, j| {
            let sum: f64 = sub
                .iter()
                .map(|&s| {
                    let sign = if (s & s_mask).count_ones().is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    };
                    u[transversal[i] ^ s ^ transversal[j]] * sign
                })
                .sum();
            (sum * scale).into()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_payload() {
        assert_eq!(
            CubePayload::parse("product:3:0").unwrap(),
            CubePayload {
                depth: 3,
                beta: 0.0
            }
        );
        assert!(CubePayload::parse("product:3").is_err());
        assert!(CubePayload::parse("product:3:-1").is_err());
    }

    #[test]
    fn small_angles_have_full_stabilizer() {
        assert_eq!(stabilizer_free_bits(1, 4), vec![0, 1, 2, 3]);
        assert_eq!(stabilizer_free_bits(2, 4), vec![0, 1, 2, 3]);
        assert_eq!(stabilizer_free_bits(3, 4), vec![3]);
        assert!(stabilizer_free_bits(5, 4).is_empty());
    }

    #[test]
    fn projection_is_idempotent() {
        let sc = CubeScenario::new(
            4,
            CubePayload {
                depth: 2,
                beta: 0.0,
            },
        )
        .unwrap();
        for m in 1..=4 {
            let p = sc.projection(m);
            assert!(p.matmul(&p).unwrap().distance(&p).unwrap() < 1e-15);
        }
    }

    #[test]
    fn shallow_payload_is_exact_past_its_depth() {
        let sc = CubeScenario::new(
            5,
            CubePayload {
                depth: 2,
                beta: 0.0,
            },
        )
        .unwrap();
        let d = sc.decay_table(None).defects();
        assert!(d[2..].iter().all(|&x| x == 0.0), "{d:?}");
    }

    #[test]
    fn averaging_is_exact_on_invariant_vectors() {
        let v = vec![1.0, 1.0, 3.0, 3.0];
        assert_eq!(average_over_bits(&v, &[0]), v);
        assert_eq!(average_over_bits(&v, &[1]), vec![2.0; 4]);
    }
}

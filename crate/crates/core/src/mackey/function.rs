use num_complex::Complex64;
use rand::Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::SemidirectGroup;
use crate::linalg::{ONE, ZERO};

/// An element of the group algebra of `G = K ⋉ A`, stored densely at the
/// element indices of [`SemidirectGroup`].
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction {
    values: Vec<Complex64>,
}

/// One coefficient of a [`GroupFunction`] file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionEntry {
    pub k: usize,
    pub a: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

impl GroupFunction {
    pub fn zeros(g: &SemidirectGroup) -> Self {
        Self {
            values: vec![ZERO; g.order()],
        }
    }

    pub fn from_values(g: &SemidirectGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != g.order() {
            return Err(Error::Input(format!(
                "group function needs {} values, got {}",
                g.order(),
                values.len()
            )));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Input(
                "group function has a non-finite coefficient".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn delta(g: &SemidirectGroup, x: usize) -> Self {
        let mut f = Self::zeros(g);
        f.values[x] = ONE;
        f
    }

    /// I.i.d. complex standard normal coefficients (`E|f(x)|² = 1`).
    pub fn random(g: &SemidirectGroup, rng: &mut impl Rng) -> Self {
        let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid deviation");
        let values = (0..g.order())
            .map(|_| Complex64::new(rng.sample(normal), rng.sample(normal)))
            .collect();
        Self { values }
    }

    pub fn from_entries(g: &SemidirectGroup, entries: &[FunctionEntry]) -> Result<Self> {
        let mut f = Self::zeros(g);
        for (n, e) in entries.iter().enumerate() {
            if e.k >= g.k_order() {
                return Err(Error::Input(format!(
                    "entry {n}: k = {} is not an element of K",
                    e.k
                )));
            }
            if e.a.len() != g.a().rank() {
                return Err(Error::Input(format!(
                    "entry {n}: a has {} coordinates, expected {}",
                    e.a.len(),
                    g.a().rank()
                )));
            }
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::Input(format!(
                    "entry {n}: coefficient is not finite"
                )));
            }
            let x = g.element(e.k, g.a().index(&e.a));
            f.values[x] += Complex64::new(e.re, e.im);
        }
        Ok(f)
    }

    pub fn from_json(g: &SemidirectGroup, text: &str) -> Result<Self> {
        let entries: Vec<FunctionEntry> =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("group function: {e}")))?;
        Self::from_entries(g, &entries)
    }

    /// Nonzero coefficients as file entries.
    pub fn entries(&self, g: &SemidirectGroup) -> Vec<FunctionEntry> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .map(|(x, z)| {
                let (k, a) = g.split(x);
                FunctionEntry {
                    k,
                    a: g.a().tuple(a),
                    re: z.re,
                    im: z.im,
                }
            })
            .collect()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    /// `(f ∗ h)(x) = Σ_y w f(y) h(y⁻¹x)` with point mass `w = 1/|K|`.
    pub fn convolve(&self, h: &GroupFunction, g: &SemidirectGroup) -> GroupFunction {
        let w = 1.0 / g.k_order() as f64;
        let mut out = vec![ZERO; g.order()];
        for (y, &fy) in self.values.iter().enumerate() {
            if fy == ZERO {
                continue;
            }
            for (z, &hz) in h.values.iter().enumerate() {
                out[g.mul(y, z)] += fy * hz * w;
            }
        }
        GroupFunction { values: out }
    }

    /// `f*(x) = conj f(x⁻¹)`.
    pub fn star(&self, g: &SemidirectGroup) -> GroupFunction {
        let values = (0..g.order())
            .map(|x| self.values[g.inv(x)].conj())
            .collect();
        GroupFunction { values }
    }

    pub fn add(&self, other: &GroupFunction) -> GroupFunction {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        GroupFunction { values }
    }

    pub fn scale(&self, s: Complex64) -> GroupFunction {
        GroupFunction {
            values: self.values.iter().map(|z| z * s).collect(),
        }
    }

    /// `Σ_x w |f(x)|`.
    pub fn l1_norm(&self, g: &SemidirectGroup) -> f64 {
        self.values.iter().map(|z| z.norm()).sum::<f64>() / g.k_order() as f64
    }

    /// `Σ_x w |f(x)|²`.
    pub fn l2_norm_sq(&self, g: &SemidirectGroup) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / g.k_order() as f64
    }
}

/// `f̂²(k, χ) = Σ_a χ(a) f(k, a)`, tabulated at `k·|Â| + χ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFourier {
    dual_order: usize,
    table: Vec<Complex64>,
}

impl PartialFourier {
    pub fn get(&self, k: usize, chi: usize) -> Complex64 {
        self.table[k * self.dual_order + chi]
    }

    pub fn row(&self, k: usize) -> &[Complex64] {
        &self.table[k * self.dual_order..(k + 1) * self.dual_order]
    }
}

pub fn partial_fourier(g: &SemidirectGroup, f: &GroupFunction) -> PartialFourier {
    let na = g.a_order();
    let mut table = Vec::with_capacity(g.k_order() * na);
    for k in 0..g.k_order() {
        let row = &f.values()[k * na..(k + 1) * na];
        for chi in 0..na {
            let mut acc = ZERO;
            for (a, &v) in row.iter().enumerate() {
                if v != ZERO {
                    acc += g.char_value(chi, a) * v;
                }
            }
            table.push(acc);
        }
    }
    PartialFourier {
        dual_order: na,
        table,
    }
}

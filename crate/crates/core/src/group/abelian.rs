use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::root_of_unity;
use num_complex::Complex64;

/// `ℤ/n_1 × … × ℤ/n_r`, written additively. Elements are enumerated in
/// mixed-radix order with the last coordinate varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<i64>,
    lcm: i64,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n < 1) {
            return Err(Error::InvalidGroup(format!(
                "invariant factor {bad} must be >= 1"
            )));
        }
        let lcm = factors.iter().fold(1i64, |acc, &n| lcm(acc, n));
        Ok(Self { factors, lcm })
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    /// Least common multiple of the factors; every phase is a multiple of `1/lcm`.
    pub fn exponent(&self) -> i64 {
        self.lcm
    }

    pub fn tuple(&self, mut index: usize) -> Vec<i64> {
        let mut t = vec![0; self.factors.len()];
        for (slot, &n) in t.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as i64;
            index /= n as usize;
        }
        t
    }

    pub fn index(&self, tuple: &[i64]) -> usize {
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &n)| {
                acc * n as usize + x.rem_euclid(n) as usize
            })
    }

    pub fn reduce(&self, tuple: &mut [i64]) {
        for (x, &n) in tuple.iter_mut().zip(&self.factors) {
            *x = x.rem_euclid(n);
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let sum: Vec<i64> = ta.iter().zip(&tb).map(|(x, y)| x + y).collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t: Vec<i64> = self.tuple(a).iter().map(|x| -x).collect();
        self.index(&t)
    }

    /// Phase numerator `p` with `χ(a) = exp(2πi p / lcm)`.
    pub fn phase(&self, chi: &Character, a: &[i64]) -> i64 {
        chi.freq
            .iter()
            .zip(a)
            .zip(&self.factors)
            .map(|((&z, &x), &n)| (z * x).rem_euclid(n) * (self.lcm / n))
            .sum::<i64>()
            .rem_euclid(self.lcm)
    }

    pub fn eval(&self, chi: &Character, a: usize) -> Complex64 {
        root_of_unity(self.phase(chi, &self.tuple(a)), self.lcm)
    }
}

/// A character of a finite abelian group, identified by its frequency tuple:
/// `χ(a) = exp(2πi Σ z_i a_i / n_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub freq: Vec<i64>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.freq.iter().all(|&z| z == 0)
    }
}

/// All characters of `A`, in the same mixed-radix order as the elements, so
/// the trivial character comes first.
pub fn dual_group(a: &FiniteAbelianGroup) -> Vec<Character> {
    (0..a.order())
        .map(|i| Character { freq: a.tuple(i) })
        .collect()
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_characters_take_values_plus_minus_one() {
        let a = FiniteAbelianGroup::new(vec![2]).unwrap();
        let dual = dual_group(&a);
        assert_eq!(dual.len(), 2);
        assert!(dual[0].is_trivial());
        assert_eq!(a.eval(&dual[0], 1), Complex64::new(1.0, 0.0));
        assert_eq!(a.eval(&dual[1], 1), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn trivial_group_has_one_character() {
        let a = FiniteAbelianGroup::new(vec![]).unwrap();
        assert_eq!(a.order(), 1);
        assert_eq!(dual_group(&a).len(), 1);
    }

    #[test]
    fn characters_of_z4_x_z2_are_orthonormal() {
        let a = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let dual = dual_group(&a);
        assert_eq!(dual.len(), 8);
        for (i, x) in dual.iter().enumerate() {
            for (j, y) in dual.iter().enumerate() {
                let ip: Complex64 = (0..a.order())
                    .map(|g| a.eval(x, g) * a.eval(y, g).conj())
                    .sum::<Complex64>()
                    / a.order() as f64;
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - expected).norm() < 1e-12, "<{i},{j}> = {ip}");
            }
        }
    }

    #[test]
    fn characters_are_homomorphisms() {
        let a = FiniteAbelianGroup::new(vec![3, 6]).unwrap();
        for chi in dual_group(&a) {
            for x in 0..a.order() {
                for y in 0..a.order() {
                    let lhs = a.eval(&chi, a.add(x, y));
                    let rhs = a.eval(&chi, x) * a.eval(&chi, y);
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_zero_factor() {
        assert!(FiniteAbelianGroup::new(vec![3, 0]).is_err());
    }
}

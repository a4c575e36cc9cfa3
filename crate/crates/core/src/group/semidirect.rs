use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::abelian::{dual_group, gcd, Character, FiniteAbelianGroup};
use super::action::{Action, DualAction, Orbit};
use super::finite::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::root_of_unity;

const ADD_TABLE_LIMIT: usize = 2048;
const BUILTIN_SPECS: &str = "dihedral:n, sign_cube:m, cyclic:n, semicyclic:n:u, affine:p, square:n";

/// Serialized description of `G = K ⋉ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub invariant_factors: Vec<i64>,
    pub k: KSpec,
    /// Action matrices on generators of `K`. May be empty only when `K` or `A` is trivial.
    #[serde(default)]
    pub action: Vec<ActionGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KSpec {
    Builtin(String),
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionGenerator {
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

fn generator(element: usize, matrix: Vec<Vec<i64>>) -> ActionGenerator {
    ActionGenerator { element, matrix }
}

fn multiplicative_order(u: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(u, n) != 1 {
        return None;
    }
    let mut x = u.rem_euclid(n);
    let mut k = 1;
    while x != 1 {
        x = (x * u).rem_euclid(n);
        k += 1;
    }
    Some(k)
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl GroupSpec {
    /// Named specs:
    /// - `dihedral:n`: `ℤ₂` acting on `ℤ/n` by negation (order `2n`).
    /// - `sign_cube:m`: `{±1}^m` acting on `(ℤ/5)^m` by coordinate signs.
    /// - `cyclic:n`: `ℤ/n` with trivial `K`.
    /// - `semicyclic:n:u`: the cyclic group generated by multiplication by `u` on `ℤ/n`.
    /// - `affine:p`: the full unit group acting on `ℤ/p`, `p` prime.
    /// - `square:n`: the symmetry group of the square acting on `(ℤ/n)²`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownBuiltin {
            name: name.to_string(),
            valid: BUILTIN_SPECS.into(),
        };
        let parts: Vec<&str> = name.split(':').collect();
        let args: Vec<i64> = parts[1..]
            .iter()
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| unknown())?;
        let spec = match (parts[0], args.as_slice()) {
            ("dihedral", &[n]) if n >= 1 => Self {
                invariant_factors: vec![n],
                k: KSpec::Builtin("cyclic:2".into()),
                action: vec![generator(1, vec![vec![-1]])],
            },
            ("sign_cube", &[m]) if (1..=6).contains(&m) => {
                let m = m as usize;
                let action = (0..m)
                    .map(|j| {
                        let mat = (0..m)
                            .map(|r| {
                                (0..m)
                                    .map(|c| {
                                        if r != c {
                                            0
                                        } else if r == j {
                                            -1
                                        } else {
                                            1
                                        }
                                    })
                                    .collect()
                            })
                            .collect();
                        generator(1 << j, mat)
                    })
                    .collect();
                Self {
                    invariant_factors: vec![5; m],
                    k: KSpec::Builtin(format!("sign_cube:{m}")),
                    action,
                }
            }
            ("cyclic", &[n]) if n >= 1 => Self {
                invariant_factors: vec![n],
                k: KSpec::Builtin("cyclic:1".into()),
                action: vec![],
            },
            ("semicyclic", &[n, u]) if n >= 1 => {
                let ord = multiplicative_order(u, n).ok_or_else(unknown)?;
                Self {
                    invariant_factors: vec![n],
                    k: KSpec::Builtin(format!("cyclic:{ord}")),
                    action: vec![generator(1 % ord as usize, vec![vec![u.rem_euclid(n)]])],
                }
            }
            ("affine", &[p]) if is_prime(p) => {
                let g = (1..p)
                    .find(|&g| multiplicative_order(g, p) == Some(p - 1))
                    .ok_or_else(unknown)?;
                Self {
                    invariant_factors: vec![p],
                    k: KSpec::Builtin(format!("cyclic:{}", p - 1)),
                    action: vec![generator(1 % (p - 1) as usize, vec![vec![g]])],
                }
            }
            ("square", &[n]) if n >= 1 => Self {
                invariant_factors: vec![n, n],
                k: KSpec::Builtin("dihedral:4".into()),
                action: vec![
                    generator(1, vec![vec![0, -1], vec![1, 0]]),
                    generator(4, vec![vec![1, 0], vec![0, -1]]),
                ],
            },
            _ => return Err(unknown()),
        };
        Ok(spec)
    }

    /// Reads a spec from a JSON file, or resolves a builtin name when no such
    /// file exists.
    pub fn load(arg: &str) -> Result<Self> {
        let path = Path::new(arg);
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            Self::from_json(&text)
        } else {
            Self::builtin(arg)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("group spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }
}

/// `G = K ⋉ A` with law `(k,a)(h,b) = (kh, h⁻¹·a + b)`. Element `(k, a)`
/// has index `k·|A| + a`.
#[derive(Clone, Debug)]
pub struct SemidirectGroup {
    label: String,
    k: FiniteGroup,
    a: FiniteAbelianGroup,
    action: Action,
    dual: Vec<Character>,
    dual_action: DualAction,
    /// `k·a` tabulated at `k·|A| + a`.
    act_table: Vec<usize>,
    /// `a + b` at `a·|A| + b`, for small `A`.
    add_table: Option<Vec<usize>>,
    /// Phase numerators of `χ(a)` at `χ·|A| + a`, in units of `1/exponent`.
    phases: Vec<i64>,
    roots: Vec<Complex64>,
}

impl SemidirectGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let a = FiniteAbelianGroup::new(spec.invariant_factors.clone())?;
        let k = match &spec.k {
            KSpec::Builtin(name) => FiniteGroup::builtin(name)?,
            KSpec::Table(table) => FiniteGroup::from_table("table", table)?,
        };
        let gens: Vec<(usize, Vec<Vec<i64>>)> = spec
            .action
            .iter()
            .map(|g| (g.element, g.matrix.clone()))
            .collect();
        let action = if gens.is_empty() {
            if k.order() > 1 && a.order() > 1 {
                return Err(Error::InvalidAction(
                    "no action generators given; the trivial action needs none, but K and A are both nontrivial, \
                     so list generators explicitly (identity matrices for a direct product)"
                        .into(),
                ));
            }
            Action::trivial(&k, &a)
        } else {
            Action::from_generators(&k, &a, &gens)?
        };
        let label = match &spec.k {
            KSpec::Builtin(name) => format!("{name} ⋉ {:?}", spec.invariant_factors),
            KSpec::Table(t) => format!("table[{}] ⋉ {:?}", t.len(), spec.invariant_factors),
        };
        Ok(Self::new(label, k, a, action))
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let mut g = Self::from_spec(&GroupSpec::builtin(name)?)?;
        g.label = name.to_string();
        Ok(g)
    }

    /// A spec file, or a builtin name labelled by that name.
    pub fn load(arg: &str) -> Result<Self> {
        if Path::new(arg).exists() {
            Self::from_spec(&GroupSpec::load(arg)?)
        } else {
            Self::builtin(arg)
        }
    }

    pub fn new(label: String, k: FiniteGroup, a: FiniteAbelianGroup, action: Action) -> Self {
        let dual = dual_group(&a);
        let dual_action = DualAction::new(&k, &a, &action, &dual);
        let na = a.order();
        let act_table = (0..k.order())
            .flat_map(|kk| (0..na).map(move |x| (kk, x)))
            .map(|(kk, x)| action.apply(&a, kk, x))
            .collect();
        let tuples: Vec<Vec<i64>> = (0..na).map(|x| a.tuple(x)).collect();
        let phases = dual
            .iter()
            .flat_map(|chi| tuples.iter().map(|t| a.phase(chi, t)).collect::<Vec<_>>())
            .collect();
        let add_table =
            (na <= ADD_TABLE_LIMIT).then(|| (0..na * na).map(|i| a.add(i / na, i % na)).collect());
        let l = a.exponent();
        let roots = (0..l).map(|p| root_of_unity(p, l)).collect();
        Self {
            label,
            k,
            a,
            action,
            dual,
            dual_action,
            act_table,
            add_table,
            phases,
            roots,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn k(&self) -> &FiniteGroup {
        &self.k
    }

    pub fn a(&self) -> &FiniteAbelianGroup {
        &self.a
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn dual(&self) -> &[Character] {
        &self.dual
    }

    pub fn dual_action(&self) -> &DualAction {
        &self.dual_action
    }

    pub fn order(&self) -> usize {
        self.k.order() * self.a.order()
    }

    pub fn k_order(&self) -> usize {
        self.k.order()
    }

    pub fn a_order(&self) -> usize {
        self.a.order()
    }

    pub fn element(&self, k: usize, a: usize) -> usize {
        k * self.a.order() + a
    }

    pub fn split(&self, g: usize) -> (usize, usize) {
        (g / self.a.order(), g % self.a.order())
    }

    pub fn identity(&self) -> usize {
        self.element(self.k.identity(), 0)
    }

    /// `k · a` on element indices.
    pub fn act(&self, k: usize, a: usize) -> usize {
        self.act_table[k * self.a.order() + a]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (k, a) = self.split(x);
        let (h, b) = self.split(y);
        let moved = self.act(self.k.inv(h), a);
        self.element(self.k.mul(k, h), self.add(moved, b))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.a.order() + b],
            None => self.a.add(a, b),
        }
    }

    pub fn inv(&self, x: usize) -> usize {
        let (k, a) = self.split(x);
        self.element(self.k.inv(k), self.a.neg(self.act(k, a)))
    }

    /// `χ(a)` for character index `chi`.
    pub fn char_value(&self, chi: usize, a: usize) -> Complex64 {
        self.roots[self.phases[chi * self.a.order() + a] as usize]
    }

    /// `k · χ` on character indices.
    pub fn act_dual(&self, k: usize, chi: usize) -> usize {
        self.dual_action.act(k, chi)
    }

    pub fn orbits(&self) -> Vec<Orbit> {
        self.dual_action.orbits(&self.k)
    }

    pub fn stabilizer(&self, chi: usize) -> Subgroup {
        self.dual_action.stabilizer(&self.k, chi)
    }

    pub fn character_label(&self, chi: usize) -> String {
        format!("{:?}", self.dual[chi].freq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        for (name, order) in [
            ("dihedral:4", 8),
            ("sign_cube:2", 100),
            ("cyclic:6", 6),
            ("semicyclic:7:2", 21),
            ("affine:5", 20),
            ("square:3", 72),
        ] {
            assert_eq!(
                SemidirectGroup::builtin(name).unwrap().order(),
                order,
                "{name}"
            );
        }
    }

    #[test]
    fn unknown_builtin_lists_valid_names() {
        let err = GroupSpec::builtin("torus:3").unwrap_err();
        assert!(err.to_string().contains("semicyclic:n:u"), "{err}");
        assert!(GroupSpec::builtin("affine:6").is_err());
    }

    #[test]
    fn group_law_is_associative_with_inverses() {
        let g = SemidirectGroup::builtin("square:3").unwrap();
        for x in (0..g.order()).step_by(7) {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            assert_eq!(g.mul(g.inv(x), x), g.identity());
            for y in (0..g.order()).step_by(5) {
                for z in (0..g.order()).step_by(11) {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn spec_json_round_trips_exactly() {
        for name in ["dihedral:5", "sign_cube:2", "square:2"] {
            let spec = GroupSpec::builtin(name).unwrap();
            let text = spec.to_json();
            let back = GroupSpec::from_json(&text).unwrap();
            assert_eq!(back, spec);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn unknown_field_is_named() {
        let err = GroupSpec::from_json(
            r#"{"invariant_factors":[2],"k":{"builtin":"cyclic:1"},"actoin":[]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("actoin"), "{err}");
    }

    #[test]
    fn table_spec_matches_builtin() {
        let table = FiniteGroup::cyclic(2).table();
        let spec = GroupSpec {
            invariant_factors: vec![4],
            k: KSpec::Table(table),
            action: vec![generator(1, vec![vec![3]])],
        };
        let g = SemidirectGroup::from_spec(&spec).unwrap();
        let h = SemidirectGroup::builtin("dihedral:4").unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(g.mul(x, y), h.mul(x, y));
            }
        }
    }
}

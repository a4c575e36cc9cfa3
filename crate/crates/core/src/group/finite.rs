use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Tables above this order load without the O(n³) associativity check.
pub const VALIDATION_LIMIT: usize = 512;

/// A finite group given by its multiplication table. Elements are the
/// indices `0..order`, in load order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    validated: bool,
}

impl FiniteGroup {
    pub fn from_table(label: impl Into<String>, table: &[Vec<usize>]) -> Result<Self> {
        let label = label.into();
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "table row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!(
                    "table row {i} references element {bad} >= {n}"
                )));
            }
        }
        let mul: Vec<usize> = table.iter().flatten().copied().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mul[x * n + y] == identity && mul[y * n + x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            inv[x] = y;
        }
        let validated = n <= VALIDATION_LIMIT;
        if validated {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul[a * n + b];
                    for c in 0..n {
                        if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails for ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self {
            label,
            order: n,
            mul,
            inv,
            identity,
            validated,
        })
    }

    fn from_fn(label: String, n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mul: Vec<usize> = (0..n * n).map(|i| f(i / n, i % n)).collect();
        let inv = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| f(x, y) == 0)
                    .expect("builtin has inverses")
            })
            .collect();
        Self {
            label,
            order: n,
            mul,
            inv,
            identity: 0,
            validated: true,
        }
    }

    /// `ℤ/n`, generator `1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(format!("cyclic:{n}"), n, |a, b| (a + b) % n)
    }

    /// `{±1}^m`; bit `j` of an index set means coordinate `j+1` is `-1`.
    pub fn sign_cube(m: u32) -> Self {
        Self::from_fn(format!("sign_cube:{m}"), 1usize << m, |a, b| a ^ b)
    }

    /// Dihedral group of order `2n`: index `e*n + i` is `r^i s^e`, so `r` is
    /// element `1` and `s` is element `n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(format!("dihedral:{n}"), 2 * n, |x, y| {
            let (e, i) = (x / n, x % n);
            let (f, j) = (y / n, y % n);
            let rot = if e == 0 { (i + j) % n } else { (i + n - j) % n };
            ((e + f) % 2) * n + rot
        })
    }

    /// Named builtin tables: `cyclic:n`, `sign_cube:m`, `dihedral:n`.
    pub fn builtin(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownBuiltin {
            name: name.to_string(),
            valid: "cyclic:n, sign_cube:m, dihedral:n".into(),
        };
        let (kind, arg) = name.split_once(':').ok_or_else(unknown)?;
        let n: usize = arg.trim().parse().map_err(|_| unknown())?;
        match kind {
            "cyclic" if n >= 1 => Ok(Self::cyclic(n)),
            "sign_cube" if n <= 12 => Ok(Self::sign_cube(n as u32)),
            "dihedral" if n >= 1 => Ok(Self::dihedral(n)),
            _ => Err(unknown()),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// False when the table was too large for the associativity check.
    pub fn validated(&self) -> bool {
        self.validated
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

/// Left cosets `xN` of a subgroup `N` inside an ambient subgroup `H`,
/// with the smallest element index of each coset as its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSystem {
    transversal: Vec<usize>,
    coset_of: Vec<Option<usize>>,
}

impl CosetSystem {
    pub fn new(group: &FiniteGroup, ambient: &[usize], sub: &Subgroup) -> Self {
        let mut coset_of = vec![None; group.order()];
        let mut transversal = Vec::new();
        for &k in ambient {
            if coset_of[k].is_none() {
                let c = transversal.len();
                transversal.push(k);
                for &h in sub.elements() {
                    coset_of[group.mul(k, h)] = Some(c);
                }
            }
        }
        Self {
            transversal,
            coset_of,
        }
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn len(&self) -> usize {
        self.transversal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transversal.is_empty()
    }

    pub fn coset_of(&self, k: usize) -> Option<usize> {
        self.coset_of[k]
    }

    /// Writes `k = t_c · s` and returns `(c, s)`.
    pub fn decompose(&self, group: &FiniteGroup, k: usize) -> (usize, usize) {
        let c = self.coset_of[k].expect("element lies in the ambient group");
        (c, group.mul(group.inv(self.transversal[c]), k))
    }
}

/// A subgroup of a [`FiniteGroup`]: sorted element indices plus the fixed
/// transversal of its left cosets in the whole group.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
    cosets: CosetSystem,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if let Some(&bad) = elems.iter().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidGroup(format!(
                "subgroup element {bad} out of range"
            )));
        }
        let mut member = vec![false; group.order()];
        for &e in &elems {
            member[e] = true;
        }
        if !member[group.identity()] {
            return Err(Error::InvalidGroup(
                "subgroup must contain the identity".into(),
            ));
        }
        for &a in &elems {
            for &b in &elems {
                if !member[group.mul(a, b)] {
                    return Err(Error::InvalidGroup(format!(
                        "subset is not closed: {a}*{b} = {} is missing",
                        group.mul(a, b)
                    )));
                }
            }
        }
        Ok(Self::from_sorted(group, elems))
    }

    fn from_sorted(group: &FiniteGroup, elements: Vec<usize>) -> Self {
        let mut position = vec![None; group.order()];
        for (i, &e) in elements.iter().enumerate() {
            position[e] = Some(i);
        }
        let all: Vec<usize> = (0..group.order()).collect();
        let mut sub = Self {
            elements,
            position,
            cosets: CosetSystem {
                transversal: Vec::new(),
                coset_of: Vec::new(),
            },
        };
        sub.cosets = CosetSystem::new(group, &all, &sub);
        sub
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Self::from_sorted(group, (0..group.order()).collect())
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_sorted(group, vec![group.identity()])
    }

    /// The subgroup generated by `gens`.
    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        let mut member = vec![false; group.order()];
        member[group.identity()] = true;
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = group.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let elements = (0..group.order()).filter(|&k| member[k]).collect();
        Self::from_sorted(group, elements)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.position.get(k).is_some_and(Option::is_some)
    }

    /// Position of `k` in the sorted element list.
    pub fn position(&self, k: usize) -> Option<usize> {
        self.position.get(k).copied().flatten()
    }

    pub fn cosets(&self) -> &CosetSystem {
        &self.cosets
    }

    /// `[K : H]`.
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }

    pub fn is_abelian(&self, group: &FiniteGroup) -> bool {
        self.elements.iter().all(|&a| {
            self.elements
                .iter()
                .all(|&b| group.mul(a, b) == group.mul(b, a))
        })
    }

    /// Whether `self` is normalized by every element of `ambient`.
    pub fn is_normal_in(&self, group: &FiniteGroup, ambient: &Subgroup) -> bool {
        ambient.elements().iter().all(|&g| {
            self.elements
                .iter()
                .all(|&h| self.contains(group.conjugate(g, h)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate_as_groups() {
        for g in [
            FiniteGroup::cyclic(6),
            FiniteGroup::sign_cube(3),
            FiniteGroup::dihedral(4),
        ] {
            let reloaded = FiniteGroup::from_table("copy", &g.table()).unwrap();
            assert_eq!(reloaded.identity(), 0);
            assert!(reloaded.validated());
        }
    }

    #[test]
    fn dihedral_relations() {
        let d = FiniteGroup::dihedral(5);
        let (r, s) = (1, 5);
        assert_eq!(d.element_order(r), 5);
        assert_eq!(d.element_order(s), 2);
        assert_eq!(d.mul(d.mul(s, r), s), d.inv(r));
    }

    #[test]
    fn rejects_non_associative_table() {
        // A Latin square with identity 0 that is not a group table.
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("bad", &table).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn unknown_builtin_lists_valid_names() {
        let err = FiniteGroup::builtin("torus:3").unwrap_err().to_string();
        assert!(err.contains("sign_cube:m"));
    }

    #[test]
    fn subgroup_closure_and_transversal() {
        let d = FiniteGroup::dihedral(4);
        let rot = Subgroup::generated(&d, &[1]);
        assert_eq!(rot.elements(), &[0, 1, 2, 3]);
        assert_eq!(rot.index(), 2);
        assert_eq!(rot.cosets().transversal(), &[0, 4]);
        for k in 0..d.order() {
            let (c, s) = rot.cosets().decompose(&d, k);
            assert!(rot.contains(s));
            assert_eq!(d.mul(rot.cosets().transversal()[c], s), k);
        }
        assert!(rot.is_normal_in(&d, &Subgroup::full(&d)));
        assert!(Subgroup::new(&d, &[0, 1]).is_err());
        assert!(Subgroup::new(&d, &[1, 2, 3]).is_err());
    }
}

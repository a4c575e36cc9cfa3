use num_complex::Complex64;

use super::function::{GroupFunction, PartialFourier};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SemidirectGroup, Subgroup, UnitaryIrrep};
use crate::linalg::{CMatrix, ZERO};

fn check_irrep_of(nu: &UnitaryIrrep, l: &Subgroup) -> Result<()> {
    if **nu.subgroup() != *l {
        return Err(Error::Precondition(format!(
            "irrep of dimension {} lives on {}, not on {}",
            nu.dim(),
            nu.subgroup(),
            l
        )));
    }
    Ok(())
}

/// `P_ν φ(x) = (1/|L|) Σ_l ν(l) φ(xl)` on `ℓ²(K, ℂ^d)`, block `(x, xl)`.
pub fn projection_p(k: &FiniteGroup, l: &Subgroup, nu: &UnitaryIrrep) -> Result<CMatrix> {
    check_irrep_of(nu, l)?;
    let d = nu.dim();
    let w = Complex64::new(1.0 / l.order() as f64, 0.0);
    let mut p = CMatrix::zeros(k.order() * d, k.order() * d);
    for x in 0..k.order() {
        for &s in l.elements() {
            p.add_to_block(x * d, k.mul(x, s) * d, nu.matrix(s), w);
        }
    }
    Ok(p)
}

/// `τ_{ν,χ}(f)` on `ℓ²(K, ℂ^d)`:
/// block `(x, y) = (1/(|K||L|)) Σ_l f̂²(x l y⁻¹, y·χ) ν(l)`.
pub fn tau(
    g: &SemidirectGroup,
    l: &Subgroup,
    nu: &UnitaryIrrep,
    chi: usize,
    pf: &PartialFourier,
) -> Result<CMatrix> {
    check_irrep_of(nu, l)?;
    let stab = g.stabilizer(chi);
    if !l.is_subgroup_of(&stab) {
        return Err(Error::Precondition(format!(
            "L = {l} is not contained in the stabilizer {stab} of character {}",
            g.character_label(chi)
        )));
    }
    let kg = g.k();
    let d = nu.dim();
    let n = kg.order();
    let w = 1.0 / (n as f64 * l.order() as f64);
    let mut m = CMatrix::zeros(n * d, n * d);
    for x in 0..n {
        for y in 0..n {
            let y_inv = kg.inv(y);
            let ychi = g.act_dual(y, chi);
            for &s in l.elements() {
                let coeff = pf.get(kg.mul(kg.mul(x, s), y_inv), ychi);
                if coeff != ZERO {
                    m.add_to_block(x * d, y * d, nu.matrix(s), coeff * w);
                }
            }
        }
    }
    Ok(m)
}

/// `ind_{L⋉A}^G(ν⊗χ)(f)` extended to all of `ℓ²(K, ℂ^d)` as the group sum
/// `Σ_{(k,a)} w f(k,a) π̃(k,a)`, where `π̃(k,a)ξ(h) = χ(h⁻¹k·a) ξ(k⁻¹h)`.
pub fn induced_operator(g: &SemidirectGroup, chi: usize, d: usize, f: &GroupFunction) -> CMatrix {
    let kg = g.k();
    let n = kg.order();
    let w = 1.0 / n as f64;
    let mut m = CMatrix::zeros(n * d, n * d);
    for x in 0..g.order() {
        let fx = f.get(x);
        if fx == ZERO {
            continue;
        }
        let (k, a) = g.split(x);
        let ka = g.act(k, a);
        for h in 0..n {
            let col = kg.mul(kg.inv(k), h);
            let phase = g.char_value(g.act_dual(h, chi), ka);
            for alpha in 0..d {
                m[(h * d + alpha, col * d + alpha)] += fx * phase * w;
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{irreps, FiniteGroup};

    #[test]
    fn trivial_subgroup_gives_identity() {
        let k = FiniteGroup::cyclic(3);
        let l = Subgroup::trivial(&k);
        let nu = irreps(&k, &l).unwrap().remove(0);
        assert_eq!(projection_p(&k, &l, &nu).unwrap(), CMatrix::identity(3));
    }

    #[test]
    fn full_z2_averages_onto_constants() {
        let k = FiniteGroup::cyclic(2);
        let l = Subgroup::full(&k);
        let nu = irreps(&k, &l).unwrap().remove(0);
        let p = projection_p(&k, &l, &nu).unwrap();
        let half = Complex64::new(0.5, 0.0);
        assert_eq!(p, CMatrix::from_fn(2, 2, |_, _| half));
    }

    #[test]
    fn mismatched_irrep_is_rejected() {
        let k = FiniteGroup::cyclic(2);
        let nu = irreps(&k, &Subgroup::full(&k)).unwrap().remove(1);
        let err = projection_p(&k, &Subgroup::trivial(&k), &nu).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn tau_requires_l_inside_the_stabilizer() {
        let g = SemidirectGroup::builtin("dihedral:4").unwrap();
        let full = Subgroup::full(g.k());
        let nu = irreps(g.k(), &full).unwrap().remove(0);
        let pf = crate::mackey::partial_fourier(&g, &GroupFunction::delta(&g, 0));
        assert!(tau(&g, &full, &nu, 2, &pf).is_ok());
        assert!(matches!(
            tau(&g, &full, &nu, 1, &pf),
            Err(Error::Precondition(_))
        ));
    }
}

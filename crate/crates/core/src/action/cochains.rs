use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spectral::Operator;
use crate::algebra::{FourierElement, Mode, ThetaMatrix};
use crate::error::{ActionError, AlgebraError};
use crate::spin::{GammaSet, UnitaryElement, EPSILON_TERMS};

/// Largest accepted distance between the raw index pairing and an integer.
pub const INDEX_TOLERANCE: f64 = 1e-6;

fn same_size(a: &[&FourierElement]) -> Result<(), AlgebraError> {
    let n = a[0].size();
    match a.iter().find(|x| x.size() != n) {
        Some(x) => Err(AlgebraError::SizeMismatch { left: n, right: x.size() }),
        None => Ok(()),
    }
}

/// `φ₃(a⁰, a¹, a², a³) = (1/12) τ₀(a⁰[D,a¹][D,a²][D,a³]|D|^{−3})`.
///
/// With `[D,a] = −i δ_μa ⊗ γ^μ`, `tr(γ^λγ^μγ^ν) = 2iε^{λμν}` and the
/// residue `2π`, this reduces to
/// `−(π/3) ε^{λμν} tr τ(a⁰ δ_λa¹ δ_μa² δ_νa³)`.
pub fn phi3(
    a0: &FourierElement,
    a1: &FourierElement,
    a2: &FourierElement,
    a3: &FourierElement,
    theta: &ThetaMatrix,
) -> Result<Complex64, AlgebraError> {
    same_size(&[a0, a1, a2, a3])?;
    let d1: Vec<_> = (1..=3).map(|mu| a1.derive(mu)).collect();
    let d2: Vec<_> = (1..=3).map(|mu| a2.derive(mu)).collect();
    let d3: Vec<_> = (1..=3).map(|mu| a3.derive(mu)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for ([l, m, n], sign) in EPSILON_TERMS {
        if d1[l].is_zero() || d2[m].is_zero() || d3[n].is_zero() {
            continue;
        }
        let left = a0.weyl_product(&d1[l], theta)?.weyl_product(&d2[m], theta)?;
        acc += left.product_zero_mode(&d3[n])?.trace() * sign;
    }
    Ok(acc * (-PI / 3.0))
}

/// φ₁ vanishes identically on this triple: every term carries a single
/// gamma matrix, and `tr γ^μ = 0`.
pub fn phi1(_a0: &FourierElement, _a1: &FourierElement) -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Debug evaluation of the three τ₀-terms of φ₁,
///
/// ```text
/// τ₀(a⁰[D,a¹]|D|^{−1}),  τ₀(a⁰∇([D,a¹])|D|^{−3}),  τ₀(a⁰∇²([D,a¹])|D|^{−5}),
/// ```
///
/// as truncated lattice sums over `0 < ‖l‖∞ ≤ lattice_cutoff` of the
/// spin-traced diagonal blocks weighted by `|l|^{−p}`. Returns the modulus
/// of each sum; all three vanish because the spin trace does.
pub fn phi1_debug(
    a0: &FourierElement,
    a1: &FourierElement,
    theta: &ThetaMatrix,
    lattice_cutoff: i64,
) -> Result<[f64; 3], AlgebraError> {
    same_size(&[a0, a1])?;
    let gamma = GammaSet::standard();
    let comm = Operator::dirac_commutator(a1);
    let nabla = Operator::nabla(comm.clone());
    let nabla2 = Operator::nabla(nabla.clone());
    let terms = [(comm, 1.0), (nabla, 3.0), (nabla2, 5.0)];
    let mut out = [0.0; 3];
    for (slot, (inner, power)) in out.iter_mut().zip(terms) {
        let op = Operator::Product(vec![Operator::left(a0), inner]);
        let mut acc = Complex64::new(0.0, 0.0);
        for l in Mode::punctured_box(lattice_cutoff) {
            let w = (l.norm_sq() as f64).powf(-power / 2.0);
            acc += op.traced_diagonal(a0.size(), l, theta, &gamma) * w;
        }
        *slot = acc.norm();
    }
    Ok(out)
}

/// Output of [`index_pairing`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndexReport {
    pub index: i64,
    /// `φ₁(u*du) − φ₃(u*du du*du)` before rounding.
    pub raw: Complex64,
    /// `|raw − index|`.
    pub residual: f64,
}

/// `ind(PuP) = φ₁(u*du) − φ₃(u*dudu*du) = −φ₃(u*, u, u*, u)`, rounded to
/// the nearest integer.
pub fn index_pairing(u: &UnitaryElement) -> Result<IndexReport, ActionError> {
    index_pairing_with(u, INDEX_TOLERANCE)
}

pub fn index_pairing_with(u: &UnitaryElement, tolerance: f64) -> Result<IndexReport, ActionError> {
    let us = u.star();
    let uu = u.element();
    let raw = phi1(&us, uu) - phi3(&us, uu, &us, uu, u.theta())?;
    let index = raw.re.round();
    let residual = (raw - Complex64::new(index, 0.0)).norm();
    if residual > tolerance {
        return Err(ActionError::IndexResidual { raw: raw.re, residual, tolerance });
    }
    Ok(IndexReport { index: index as i64, raw, residual })
}

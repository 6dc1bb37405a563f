//! The Chern-Simons action on `M_N(A_Θ)`, the local-index cochains φ₁ and
//! φ₃, the index pairing, and the gauge-invariance check.
//!
//! Two evaluators of `S_CS` are provided:
//!
//! * [`action_zero_mode_oracle`] works at operator level:
//!   `S = −2π²k ε^{λμν} tr τ(A_λ δ_μA_ν + ⅔ A_λA_μA_ν)`, where the residue
//!   `res_{z=0} Σ_l |l|^{−3−2z} = 2π` has already been taken. Zero modes are
//!   allowed.
//! * [`action_coefficient_formula`] sums the Fourier coefficients directly
//!   and requires a field without zero modes.

mod cochains;
mod gauge;
pub mod spectral;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{FourierElement, Mode};
use crate::error::ActionError;
use crate::spin::{GaugeField, EPSILON_TERMS};

pub use cochains::{index_pairing, index_pairing_with, phi1, phi1_debug, phi3, IndexReport, INDEX_TOLERANCE};
pub use gauge::{check_gauge_invariance, GaugeCheckReport};

/// `res_{z=0} Σ_{l≠0} |l|^{−3−2z}` for the lattice `Z³`.
pub const RESIDUE_CONSTANT: f64 = 2.0 * PI;

/// Fields whose skew-adjointness is violated by more than this are rejected.
pub const SKEW_ADMISSION: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ActionMethod {
    CoefficientFormula,
    ZeroModeOracle,
}

/// Value of `S_CS(A)` split into its quadratic and cubic parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ActionReport {
    pub quadratic: Complex64,
    pub cubic: Complex64,
    pub total: Complex64,
    pub level: i64,
    pub residue_constant: f64,
    pub method: ActionMethod,
    pub size: usize,
    /// Largest `‖k‖∞` in the field's support.
    pub truncation: i64,
}

impl ActionReport {
    fn new(quadratic: Complex64, cubic: Complex64, level: i64, method: ActionMethod, field: &GaugeField) -> Self {
        ActionReport {
            quadratic,
            cubic,
            total: quadratic + cubic,
            level,
            residue_constant: RESIDUE_CONSTANT,
            method,
            size: field.size(),
            truncation: field.radius(),
        }
    }
}

fn admit(field: &GaugeField) -> Result<(), ActionError> {
    let skew = field.check_skew_with(SKEW_ADMISSION);
    if !skew.skew {
        return Err(ActionError::SkewViolation { worst: skew.worst });
    }
    Ok(())
}

/// `−2π²k`, the common prefactor after the spin trace and the residue.
fn prefactor(level: i64) -> f64 {
    -2.0 * PI * PI * level as f64
}

/// Evaluates `S_CS(A)` from the matrix coefficients `a^λ_q`:
///
/// ```text
/// quadratic = 2π²ik Σ_{q≠0} Σ_ij conj(a^{λ,ij}_q) M(q)_{λν} a^{ν,ij}_q,   M(q)_{λν} = ε^{λμν} q_μ
/// cubic     = −⅔·2π²k ε^{λμν} Σ_{q,r≠0, q≠r} e^{−(i/2) q·Θr} tr(a^λ_{−q} a^μ_{q−r} a^ν_r)
/// ```
///
/// Sums run over the stored support in lexicographic order of `(q, r)`.
pub fn action_coefficient_formula(field: &GaugeField, level: i64) -> Result<ActionReport, ActionError> {
    admit(field)?;
    if let Some(c) = (1..=3).find(|&l| field.component(l).has_zero_mode()) {
        return Err(ActionError::ZeroModePresent { component: c });
    }
    let comps = field.components();
    let support: BTreeSet<Mode> = comps.iter().flat_map(|c| c.support()).collect();

    let mut quad = Complex64::new(0.0, 0.0);
    for &q in &support {
        let qf = q.as_f64();
        for (lambda, a_l) in comps.iter().enumerate() {
            let Some(al) = a_l.coeff(q) else { continue };
            for (nu, a_n) in comps.iter().enumerate() {
                let m: f64 = (0..3).map(|mu| crate::spin::levi_civita(lambda, mu, nu) as f64 * qf[mu]).sum();
                if m == 0.0 {
                    continue;
                }
                let Some(an) = a_n.coeff(q) else { continue };
                let form: Complex64 = al.iter().zip(an.iter()).map(|(x, y)| x.conj() * y).sum();
                quad += form * m;
            }
        }
    }
    let quadratic = quad * Complex64::new(0.0, 2.0 * PI * PI * level as f64);

    let neg_support: BTreeSet<Mode> = support.iter().map(|&k| -k).collect();
    let theta = field.theta();
    let mut cub = Complex64::new(0.0, 0.0);
    for &q in &neg_support {
        for &r in &support {
            if q == r {
                continue;
            }
            let mut inner = Complex64::new(0.0, 0.0);
            for ([l, m, n], sign) in EPSILON_TERMS {
                let (Some(a), Some(b), Some(c)) = (comps[l].coeff(-q), comps[m].coeff(q - r), comps[n].coeff(r)) else {
                    continue;
                };
                inner += (a * b * c).trace() * sign;
            }
            if inner == Complex64::new(0.0, 0.0) {
                continue;
            }
            cub += inner * Complex64::from_polar(1.0, -0.5 * theta.pair(q, r));
        }
    }
    let cubic = cub * (prefactor(level) * 2.0 / 3.0);
    Ok(ActionReport::new(quadratic, cubic, level, ActionMethod::CoefficientFormula, field))
}

/// Evaluates `S_CS(A)` through twisted products and derivations, keeping
/// only the zero mode of the integrand. Valid with zero modes present.
pub fn action_zero_mode_oracle(field: &GaugeField, level: i64) -> Result<ActionReport, ActionError> {
    admit(field)?;
    let theta = field.theta();
    let comps = field.components();
    let derivs: Vec<Vec<FourierElement>> = comps.iter().map(|a| (1..=3).map(|mu| a.derive(mu)).collect()).collect();

    let mut quad = Complex64::new(0.0, 0.0);
    let mut cub = Complex64::new(0.0, 0.0);
    for ([l, m, n], sign) in EPSILON_TERMS {
        // derivs[n][m] = δ_μ A_ν
        quad += comps[l].product_zero_mode(&derivs[n][m])?.trace() * sign;
        let amn = comps[m].weyl_product(&comps[n], theta)?;
        cub += comps[l].product_zero_mode(&amn)?.trace() * sign;
    }
    let pf = prefactor(level);
    Ok(ActionReport::new(quad * pf, cub * (pf * 2.0 / 3.0), level, ActionMethod::ZeroModeOracle, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CMatrix, ThetaMatrix};
    use crate::spin::{random_field, RandomFieldParams};

    fn field(seed: u64, size: usize, support: i64, theta: ThetaMatrix, nzm: bool) -> GaugeField {
        random_field(&RandomFieldParams { size, support, seed, decay: 0.2, no_zero_mode: nzm }, theta)
    }

    fn rel(a: Complex64, b: Complex64, scale: f64) -> f64 {
        (a - b).norm() / (1.0 + scale)
    }

    #[test]
    fn zero_field_has_zero_action() {
        let z = GaugeField::zero(ThetaMatrix::golden(), 2);
        for r in [action_coefficient_formula(&z, 3).unwrap(), action_zero_mode_oracle(&z, 3).unwrap()] {
            assert_eq!(r.total, Complex64::new(0.0, 0.0));
        }
    }

    fn single_cross_mode(alpha: Complex64, beta: Complex64, theta: ThetaMatrix) -> GaugeField {
        let q = Mode::new(0, 0, 1);
        let one = |z: Complex64| CMatrix::from_element(1, 1, z);
        let a1 = FourierElement::from_coeffs(1, vec![(q, one(alpha)), (-q, one(-alpha.conj()))]).unwrap();
        let a2 = FourierElement::from_coeffs(1, vec![(q, one(beta)), (-q, one(-beta.conj()))]).unwrap();
        GaugeField::new(theta, [a1, a2, FourierElement::zero(1)]).unwrap()
    }

    #[test]
    fn single_cross_mode_quadratic() {
        let (alpha, beta, k) = (Complex64::new(1.0, 0.5), Complex64::new(0.25, -0.75), 3);
        let f = single_cross_mode(alpha, beta, ThetaMatrix::golden());
        let expected = -8.0 * PI * PI * k as f64 * (alpha * beta.conj()).im;
        let cf = action_coefficient_formula(&f, k).unwrap();
        let zo = action_zero_mode_oracle(&f, k).unwrap();
        assert_eq!(cf.cubic, Complex64::new(0.0, 0.0));
        assert_eq!(zo.cubic, Complex64::new(0.0, 0.0));
        assert!((cf.total - Complex64::new(expected, 0.0)).norm() <= 1e-12 * expected.abs());
        assert!((zo.total - Complex64::new(expected, 0.0)).norm() <= 1e-12 * expected.abs());
        assert!((expected + 21.0 * PI * PI).abs() <= 1e-12);
    }

    #[test]
    fn single_component_field_has_zero_action() {
        let f = field(4, 1, 2, ThetaMatrix::golden(), true);
        let only = GaugeField::new(*f.theta(), [FourierElement::zero(1), f.component(2).clone(), FourierElement::zero(1)]).unwrap();
        let r = action_coefficient_formula(&only, 5).unwrap();
        assert_eq!(r.quadratic, Complex64::new(0.0, 0.0));
        assert_eq!(r.cubic, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn evaluators_agree_and_are_real() {
        for (seed, theta) in [(1, ThetaMatrix::golden()), (2, ThetaMatrix::zero()), (3, ThetaMatrix::single_angle(0.9))] {
            let f = field(seed, 2, 2, theta, true);
            let cf = action_coefficient_formula(&f, 2).unwrap();
            let zo = action_zero_mode_oracle(&f, 2).unwrap();
            let s = zo.total.norm();
            assert!(rel(cf.quadratic, zo.quadratic, s) <= 1e-10);
            assert!(rel(cf.cubic, zo.cubic, s) <= 1e-10);
            assert!(zo.total.im.abs() <= 1e-9 * (1.0 + s));
            assert!(cf.total.im.abs() <= 1e-9 * (1.0 + s));
            assert!(cf.cubic.norm() > 0.0);
        }
    }

    #[test]
    fn homogeneity() {
        let f = field(7, 2, 1, ThetaMatrix::golden(), false);
        let a = action_zero_mode_oracle(&f, 1).unwrap();
        let b = action_zero_mode_oracle(&f.scaled(2.0), 1).unwrap();
        assert!((b.quadratic - a.quadratic * 4.0).norm() <= 1e-12 * (1.0 + b.quadratic.norm()));
        assert!((b.cubic - a.cubic * 8.0).norm() <= 1e-12 * (1.0 + b.cubic.norm()));
    }

    #[test]
    fn coefficient_formula_rejects_zero_modes_and_non_skew() {
        let f = field(8, 2, 1, ThetaMatrix::golden(), false);
        assert!(matches!(action_coefficient_formula(&f, 1), Err(ActionError::ZeroModePresent { .. })));
        assert!(action_zero_mode_oracle(&f, 1).is_ok());
        let mut comps = f.clone().into_components();
        comps[0] = comps[0].add(&FourierElement::identity(2)).unwrap();
        let bad = GaugeField::new(*f.theta(), comps).unwrap();
        assert!(matches!(action_zero_mode_oracle(&bad, 1), Err(ActionError::SkewViolation { .. })));
    }
}

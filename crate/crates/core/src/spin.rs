//! Spin structure of the triple: gamma matrices, gauge fields stored through
//! their skew-adjoint components `A_λ` (with `L(A) = −i A_λ ⊗ γ^λ`), unitary
//! gauge elements and the gauge action `A ↦ uAu* + u du*`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{random_matrix, CMatrix, FourierElement, Mode, ThetaMatrix};
use crate::error::FieldError;

/// Tolerance for `uu* = u*u = 1`, per coefficient entry.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Default tolerance of [`GaugeField::check_skew`].
pub const SKEW_TOLERANCE: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The hermitian Dirac matrices γ¹, γ², γ³ (the Pauli matrices).
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    gamma: [DMatrix<Complex64>; 3],
}

impl Default for GammaSet {
    fn default() -> Self {
        Self::standard()
    }
}

impl GammaSet {
    pub fn standard() -> Self {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        GammaSet {
            gamma: [
                DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
                DMatrix::from_row_slice(2, 2, &[z, -I, I, z]),
                DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
            ],
        }
    }

    /// `γ^mu`, `mu ∈ {1, 2, 3}`.
    pub fn gamma(&self, mu: usize) -> &DMatrix<Complex64> {
        &self.gamma[mu - 1]
    }

    /// Σ_μ tr(γ^μ) X_μ: the trace over C² of `Σ_μ X_μ ⊗ γ^μ`.
    pub fn spin_trace(&self, parts: &[FourierElement; 3]) -> FourierElement {
        let mut out = FourierElement::zero(parts[0].size());
        for (mu, x) in parts.iter().enumerate() {
            let t = self.gamma[mu].trace();
            out = out.axpy(t, x).expect("components share a size");
        }
        out
    }
}

/// Levi-Civita symbol on 0-based indices.
pub fn levi_civita(a: usize, b: usize, c: usize) -> i32 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// The six index triples with nonzero ε, paired with their sign, in a fixed
/// order.
pub const EPSILON_TERMS: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([0, 2, 1], -1.0),
    ([1, 0, 2], -1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([2, 1, 0], -1.0),
];

/// Result of [`GaugeField::check_skew`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SkewReport {
    pub skew: bool,
    /// Largest entry of `(a^λ_k)† + a^λ_{−k}` over all λ and k.
    pub worst: f64,
    pub tolerance: f64,
}

/// A gauge field `(A₁, A₂, A₃)` over a fixed Θ.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeField {
    theta: ThetaMatrix,
    components: [FourierElement; 3],
}

impl GaugeField {
    pub fn new(theta: ThetaMatrix, components: [FourierElement; 3]) -> Result<Self, FieldError> {
        let n = components[0].size();
        for c in &components[1..] {
            if c.size() != n {
                return Err(crate::error::AlgebraError::SizeMismatch { left: n, right: c.size() }.into());
            }
        }
        Ok(GaugeField { theta, components })
    }

    pub fn zero(theta: ThetaMatrix, size: usize) -> Self {
        let z = FourierElement::zero(size);
        GaugeField { theta, components: [z.clone(), z.clone(), z] }
    }

    pub fn theta(&self) -> &ThetaMatrix {
        &self.theta
    }

    pub fn size(&self) -> usize {
        self.components[0].size()
    }

    /// `A_λ`, `lambda ∈ {1, 2, 3}`.
    pub fn component(&self, lambda: usize) -> &FourierElement {
        &self.components[lambda - 1]
    }

    pub fn components(&self) -> &[FourierElement; 3] {
        &self.components
    }

    pub fn into_components(self) -> [FourierElement; 3] {
        self.components
    }

    /// True when no component has a coefficient at `k = 0`.
    pub fn has_no_zero_mode(&self) -> bool {
        self.components.iter().all(|c| !c.has_zero_mode())
    }

    /// Same field with every zero-mode coefficient dropped.
    pub fn without_zero_mode(&self) -> Self {
        let strip = |c: &FourierElement| {
            let mut c = c.clone();
            c.set_coeff(Mode::ZERO, CMatrix::zeros(c.size(), c.size())).expect("shape matches");
            c
        };
        GaugeField {
            theta: self.theta,
            components: [strip(&self.components[0]), strip(&self.components[1]), strip(&self.components[2])],
        }
    }

    pub fn scaled(&self, t: f64) -> Self {
        let c = Complex64::new(t, 0.0);
        GaugeField {
            theta: self.theta,
            components: [self.components[0].scale(c), self.components[1].scale(c), self.components[2].scale(c)],
        }
    }

    /// Verifies `star(A_λ) = −A_λ` for every λ.
    pub fn check_skew(&self) -> SkewReport {
        self.check_skew_with(SKEW_TOLERANCE)
    }

    pub fn check_skew_with(&self, tolerance: f64) -> SkewReport {
        let worst = self
            .components
            .iter()
            .map(|a| a.star().add(a).expect("same size").max_entry())
            .fold(0.0, f64::max);
        SkewReport { skew: worst <= tolerance, worst, tolerance }
    }

    pub fn max_entry_diff(&self, other: &GaugeField) -> f64 {
        self.components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| a.max_entry_diff(b))
            .fold(0.0, f64::max)
    }

    /// Largest `‖k‖∞` over all components.
    pub fn radius(&self) -> i64 {
        self.components.iter().map(FourierElement::radius).max().unwrap_or(0)
    }
}

/// Parameters of [`random_field`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomFieldParams {
    pub size: usize,
    /// Support box `‖k‖∞ ≤ support`.
    pub support: i64,
    pub seed: u64,
    /// Envelope `e^{−decay ‖k‖∞}` on the coefficient magnitudes.
    pub decay: f64,
    pub no_zero_mode: bool,
}

/// Deterministic random skew-adjoint gauge field.
///
/// Entries are standard normal times `e^{−decay ‖k‖∞}`, then each component
/// is replaced by `(A − A*)/2`.
pub fn random_field(params: &RandomFieldParams, theta: ThetaMatrix) -> GaugeField {
    assert!(params.size > 0 && params.support >= 1 && params.decay >= 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let half = Complex64::new(0.5, 0.0);
    let mut comps = Vec::with_capacity(3);
    for _ in 0..3 {
        let coeffs: Vec<_> = Mode::box_iter(params.support)
            .map(|k| {
                let env = (-params.decay * k.sup_norm() as f64).exp();
                (k, random_matrix(&mut rng, params.size, env))
            })
            .collect();
        let a = FourierElement::from_coeffs(params.size, coeffs).expect("well-formed");
        let mut skew = a.sub(&a.star()).expect("same size").scale(half);
        if params.no_zero_mode {
            skew.set_coeff(Mode::ZERO, CMatrix::zeros(params.size, params.size)).expect("shape");
        }
        comps.push(skew);
    }
    let comps: [FourierElement; 3] = comps.try_into().expect("three components");
    GaugeField::new(theta, comps).expect("shared size")
}

/// A unitary `u ∈ M_N(A_Θ)`, validated against its Θ.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryElement {
    u: FourierElement,
    theta: ThetaMatrix,
}

impl UnitaryElement {
    pub fn new(u: FourierElement, theta: ThetaMatrix) -> Result<Self, FieldError> {
        let violation = unitarity_violation(&u, &theta)?;
        if violation > UNITARITY_TOLERANCE {
            return Err(FieldError::NotUnitary { violation });
        }
        Ok(UnitaryElement { u, theta })
    }

    /// `U_m ⊗ I_N`.
    pub fn weyl(size: usize, m: Mode, theta: ThetaMatrix) -> Self {
        UnitaryElement { u: FourierElement::basis(size, m, Complex64::new(1.0, 0.0)), theta }
    }

    pub fn identity(size: usize, theta: ThetaMatrix) -> Self {
        Self::weyl(size, Mode::ZERO, theta)
    }

    /// A constant unitary matrix `1 ⊗ V`.
    pub fn constant(v: CMatrix, theta: ThetaMatrix) -> Result<Self, FieldError> {
        Self::new(FourierElement::from_matrix(Mode::ZERO, v), theta)
    }

    /// Haar-like random constant unitary from the QR factor of a Gaussian
    /// matrix.
    pub fn random_constant(size: usize, seed: u64, theta: ThetaMatrix) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_matrix(&mut rng, size, 1.0);
        let q = g.qr().q();
        Self::constant(q, theta).expect("QR factor is unitary")
    }

    /// `self · other`.
    pub fn compose(&self, other: &UnitaryElement) -> Result<Self, FieldError> {
        if self.theta != other.theta {
            return Err(FieldError::ThetaMismatch);
        }
        Self::new(self.u.weyl_product(&other.u, &self.theta)?, self.theta)
    }

    pub fn element(&self) -> &FourierElement {
        &self.u
    }

    pub fn theta(&self) -> &ThetaMatrix {
        &self.theta
    }

    pub fn size(&self) -> usize {
        self.u.size()
    }

    pub fn star(&self) -> FourierElement {
        self.u.star()
    }
}

/// Largest entry of `uu* − 1` and `u*u − 1`.
pub fn unitarity_violation(u: &FourierElement, theta: &ThetaMatrix) -> Result<f64, FieldError> {
    let one = FourierElement::identity(u.size());
    let us = u.star();
    let a = u.weyl_product(&us, theta)?.max_entry_diff(&one);
    let b = us.weyl_product(u, theta)?.max_entry_diff(&one);
    Ok(a.max(b))
}

/// Gamma-components of `[D, a]`: `(−i δ₁a, −i δ₂a, −i δ₃a)`.
pub fn dirac_commutator(a: &FourierElement) -> [FourierElement; 3] {
    let mi = Complex64::new(0.0, -1.0);
    [a.derive(1).scale(mi), a.derive(2).scale(mi), a.derive(3).scale(mi)]
}

/// `A^u_λ = u A_λ u* + u δ_λ(u*)`.
pub fn gauge_transform(field: &GaugeField, u: &UnitaryElement) -> Result<GaugeField, FieldError> {
    if field.theta != u.theta {
        return Err(FieldError::ThetaMismatch);
    }
    let theta = &field.theta;
    let us = u.star();
    let mut comps = Vec::with_capacity(3);
    for lambda in 1..=3 {
        let conj = u.u.weyl_product(field.component(lambda), theta)?.weyl_product(&us, theta)?;
        let shift = u.u.weyl_product(&us.derive(lambda), theta)?;
        comps.push(conj.add(&shift)?);
    }
    GaugeField::new(field.theta, comps.try_into().expect("three components"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(seed: u64, size: usize, support: i64) -> RandomFieldParams {
        RandomFieldParams { size, support, seed, decay: 0.3, no_zero_mode: false }
    }

    #[test]
    fn gamma_identities_are_exact() {
        let g = GammaSet::standard();
        let id = DMatrix::<Complex64>::identity(2, 2);
        for a in 1..=3 {
            assert_eq!(g.gamma(a).adjoint(), *g.gamma(a));
            assert_eq!(g.gamma(a) * g.gamma(a), id);
            assert_eq!(g.gamma(a).trace(), Complex64::new(0.0, 0.0));
            for b in 1..=3 {
                let anti = g.gamma(a) * g.gamma(b) + g.gamma(b) * g.gamma(a);
                let expected = if a == b { &id * Complex64::new(2.0, 0.0) } else { DMatrix::zeros(2, 2) };
                assert_eq!(anti, expected);
                for c in 1..=3 {
                    let t = (g.gamma(a) * g.gamma(b) * g.gamma(c)).trace();
                    let eps = levi_civita(a - 1, b - 1, c - 1) as f64;
                    assert_eq!(t, Complex64::new(0.0, 2.0 * eps));
                }
            }
        }
    }

    #[test]
    fn dirac_commutator_examples() {
        for c in dirac_commutator(&FourierElement::identity(2)) {
            assert!(c.is_zero());
        }
        let k = Mode::new(1, -2, 3);
        let a = FourierElement::basis(1, k, Complex64::new(1.0, 0.0));
        let d = dirac_commutator(&a);
        for mu in 1..=3 {
            assert_eq!(d[mu - 1].coeff(k).unwrap()[(0, 0)], Complex64::new(k.component(mu) as f64, 0.0));
        }
        let mut rng = <ChaCha8Rng as SeedableRng>::seed_from_u64(3);
        let r = FourierElement::random(&mut rng, 2, 1);
        assert!(GammaSet::standard().spin_trace(&dirac_commutator(&r)).is_zero());
    }

    #[test]
    fn random_field_is_deterministic_and_skew() {
        let p = params(11, 2, 2);
        let a = random_field(&p, ThetaMatrix::golden());
        assert_eq!(a, random_field(&p, ThetaMatrix::golden()));
        let r = a.check_skew();
        assert!(r.skew && r.worst <= 1e-15);
        let nz = random_field(&RandomFieldParams { no_zero_mode: true, ..p }, ThetaMatrix::golden());
        assert!(nz.has_no_zero_mode());
        assert!(!a.has_no_zero_mode());
    }

    #[test]
    fn skew_check_detects_perturbation() {
        let a = random_field(&params(5, 2, 1), ThetaMatrix::golden());
        let mut comps = a.clone().into_components();
        let k = Mode::new(1, 0, 0);
        let mut m = comps[1].coeff(k).unwrap().clone();
        m[(0, 1)] += Complex64::new(1e-6, 0.0);
        comps[1].set_coeff(k, m).unwrap();
        let bad = GaugeField::new(*a.theta(), comps).unwrap();
        let r = bad.check_skew();
        assert!(!r.skew);
        assert!((r.worst - 1e-6).abs() <= 1e-12);
        let z = GaugeField::zero(ThetaMatrix::zero(), 2).check_skew();
        assert!(z.skew && z.worst == 0.0);
    }

    #[test]
    fn decay_envelope_statistics() {
        // mean |entry| on the outer shell vs the unit shell over many seeds
        let (support, decay) = (3i64, 1.5);
        let (mut outer, mut inner, mut n_out, mut n_in) = (0.0, 0.0, 0usize, 0usize);
        for seed in 0..60 {
            let f = random_field(&RandomFieldParams { size: 2, support, seed, decay, no_zero_mode: true }, ThetaMatrix::zero());
            for c in f.components() {
                for (k, m) in c.iter() {
                    let s: f64 = m.iter().map(|z| z.norm()).sum();
                    match k.sup_norm() {
                        1 => {
                            inner += s;
                            n_in += m.len();
                        }
                        n if n == support => {
                            outer += s;
                            n_out += m.len();
                        }
                        _ => {}
                    }
                }
            }
        }
        let ratio = (outer / n_out as f64) / (inner / n_in as f64);
        let expected = (-decay * (support - 1) as f64).exp();
        assert!((ratio.ln() - expected.ln()).abs() < 0.05, "ratio {ratio} expected {expected}");
    }

    #[test]
    fn gauge_transform_examples() {
        let theta = ThetaMatrix::golden();
        let a = random_field(&params(1, 2, 1), theta);
        let id = UnitaryElement::identity(2, theta);
        assert!(gauge_transform(&a, &id).unwrap().max_entry_diff(&a) <= 1e-15);

        let m = Mode::new(1, -2, 2);
        let zero = GaugeField::zero(theta, 2);
        let t = gauge_transform(&zero, &UnitaryElement::weyl(2, m, theta)).unwrap();
        for lambda in 1..=3 {
            let expected = FourierElement::basis(2, Mode::ZERO, Complex64::new(0.0, -(m.component(lambda) as f64)));
            assert!(t.component(lambda).max_entry_diff(&expected) <= 1e-15);
        }

        let v = UnitaryElement::random_constant(2, 4, theta);
        let t = gauge_transform(&a, &v).unwrap();
        let vm = v.element().coeff(Mode::ZERO).unwrap().clone();
        for lambda in 1..=3 {
            let expected = a.component(lambda).left_mul_matrix(&vm).right_mul_matrix(&vm.adjoint());
            assert!(t.component(lambda).max_entry_diff(&expected) <= 1e-13);
        }
    }

    #[test]
    fn gauge_action_is_a_group_action_and_keeps_skew() {
        let theta = ThetaMatrix::single_angle(PI / 5.0);
        let a = random_field(&params(2, 2, 1), theta);
        let u = UnitaryElement::weyl(2, Mode::new(0, 1, -1), theta)
            .compose(&UnitaryElement::random_constant(2, 7, theta))
            .unwrap();
        let v = UnitaryElement::random_constant(2, 8, theta).compose(&UnitaryElement::weyl(2, Mode::new(1, 0, 0), theta)).unwrap();
        let lhs = gauge_transform(&gauge_transform(&a, &u).unwrap(), &v).unwrap();
        let rhs = gauge_transform(&a, &v.compose(&u).unwrap()).unwrap();
        assert!(lhs.max_entry_diff(&rhs) <= 1e-10);
        assert!(lhs.check_skew().skew);
        // gauge orbits leave the zero-mode-free class
        let nz = a.without_zero_mode();
        assert!(!gauge_transform(&nz, &UnitaryElement::weyl(2, Mode::new(1, 0, 0), theta)).unwrap().has_no_zero_mode());
    }

    #[test]
    fn non_unitary_is_rejected() {
        let theta = ThetaMatrix::zero();
        let u = FourierElement::basis(1, Mode::ZERO, Complex64::new(1.1, 0.0));
        assert!(matches!(UnitaryElement::new(u, theta), Err(FieldError::NotUnitary { .. })));
        let a = GaugeField::zero(theta, 1);
        let v = UnitaryElement::identity(1, ThetaMatrix::golden());
        assert_eq!(gauge_transform(&a, &v).unwrap_err(), FieldError::ThetaMismatch);
    }
}

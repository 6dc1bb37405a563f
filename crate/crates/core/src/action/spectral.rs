//! Literal operator model of the spectral triple on `H_τ ⊗ C^N ⊗ C²`.
//!
//! States are pairs of spinor components, each a Fourier series whose
//! coefficients are N×N matrices with only column 0 in use (a vector of
//! `C^N`). Operators act by explicit composition: left multiplication,
//! `D = −i δ_μ ⊗ γ^μ`, commutators and products. Nothing here uses the
//! closed-form reductions of the parent module, so it serves as an
//! independent check on them.

use num_complex::Complex64;

use crate::algebra::{CMatrix, FourierElement, Mode, ThetaMatrix};
use crate::spin::GammaSet;

/// A vector of `H_τ ⊗ C^N ⊗ C²`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorState {
    pub up: FourierElement,
    pub down: FourierElement,
}

impl SpinorState {
    /// `E_l ⊗ e_j ⊗ e_s`, with `j < N` and `s ∈ {0, 1}`.
    pub fn basis(size: usize, l: Mode, j: usize, s: usize) -> Self {
        let mut m = CMatrix::zeros(size, size);
        m[(j, 0)] = Complex64::new(1.0, 0.0);
        let v = FourierElement::from_matrix(l, m);
        let z = FourierElement::zero(size);
        if s == 0 {
            SpinorState { up: v, down: z }
        } else {
            SpinorState { up: z, down: v }
        }
    }

    fn component(&self, s: usize) -> &FourierElement {
        if s == 0 {
            &self.up
        } else {
            &self.down
        }
    }

    /// `⟨E_l ⊗ e_j ⊗ e_s, ψ⟩`.
    pub fn amplitude(&self, l: Mode, j: usize, s: usize) -> Complex64 {
        self.component(s).coeff(l).map(|m| m[(j, 0)]).unwrap_or_default()
    }

    fn sub(&self, o: &SpinorState) -> SpinorState {
        SpinorState { up: self.up.sub(&o.up).expect("size"), down: self.down.sub(&o.down).expect("size") }
    }
}

/// Operators on spinor states.
#[derive(Clone, Debug)]
pub enum Operator {
    /// `L(a) ⊗ I₂`.
    Left(FourierElement),
    /// `D = −i δ_μ ⊗ γ^μ`.
    Dirac,
    /// `X₁ X₂ ⋯ X_n` (the last factor acts first).
    Product(Vec<Operator>),
    /// `[X, Y]`.
    Commutator(Box<Operator>, Box<Operator>),
}

impl Operator {
    pub fn left(a: &FourierElement) -> Self {
        Operator::Left(a.clone())
    }

    pub fn dirac_squared() -> Self {
        Operator::Product(vec![Operator::Dirac, Operator::Dirac])
    }

    /// `[D, a]`.
    pub fn dirac_commutator(a: &FourierElement) -> Self {
        Operator::Commutator(Box::new(Operator::Dirac), Box::new(Operator::left(a)))
    }

    /// `∇(X) = [D², X]`.
    pub fn nabla(x: Operator) -> Self {
        Operator::Commutator(Box::new(Operator::dirac_squared()), Box::new(x))
    }

    pub fn apply(&self, psi: &SpinorState, theta: &ThetaMatrix, gamma: &GammaSet) -> SpinorState {
        match self {
            Operator::Left(a) => SpinorState {
                up: a.weyl_product(&psi.up, theta).expect("size"),
                down: a.weyl_product(&psi.down, theta).expect("size"),
            },
            Operator::Dirac => {
                let mi = Complex64::new(0.0, -1.0);
                let mut out = [FourierElement::zero(psi.up.size()), FourierElement::zero(psi.up.size())];
                for mu in 1..=3 {
                    let g = gamma.gamma(mu);
                    let d = [psi.up.derive(mu), psi.down.derive(mu)];
                    for (s, slot) in out.iter_mut().enumerate() {
                        for (t, dt) in d.iter().enumerate() {
                            let c = g[(s, t)];
                            if c != Complex64::new(0.0, 0.0) {
                                *slot = slot.axpy(mi * c, dt).expect("size");
                            }
                        }
                    }
                }
                let [up, down] = out;
                SpinorState { up, down }
            }
            Operator::Product(factors) => {
                let mut state = psi.clone();
                for f in factors.iter().rev() {
                    state = f.apply(&state, theta, gamma);
                }
                state
            }
            Operator::Commutator(x, y) => {
                let xy = x.apply(&y.apply(psi, theta, gamma), theta, gamma);
                let yx = y.apply(&x.apply(psi, theta, gamma), theta, gamma);
                xy.sub(&yx)
            }
        }
    }

    /// `Σ_{j,s} ⟨E_l ⊗ e_j ⊗ e_s, X E_l ⊗ e_j ⊗ e_s⟩`: the diagonal block of
    /// `X` at `l`, traced over `C^N ⊗ C²`.
    pub fn traced_diagonal(&self, size: usize, l: Mode, theta: &ThetaMatrix, gamma: &GammaSet) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..size {
            for s in 0..2 {
                let out = self.apply(&SpinorState::basis(size, l, j, s), theta, gamma);
                acc += out.amplitude(l, j, s);
            }
        }
        acc
    }
}

/// `(1/12) τ₀(a⁰[D,a¹][D,a²][D,a³]|D|^{−3})` evaluated from the diagonal
/// block at a single lattice point `l`.
///
/// The operator is a left multiplication tensored with gamma matrices, so
/// its diagonal block does not depend on `l`; the residue of
/// `Σ_l |l|^{−3−2z}` then contributes [`super::RESIDUE_CONSTANT`].
pub fn phi3_from_diagonal(a: [&FourierElement; 4], theta: &ThetaMatrix, l: Mode) -> Complex64 {
    let gamma = GammaSet::standard();
    let op = Operator::Product(vec![
        Operator::left(a[0]),
        Operator::dirac_commutator(a[1]),
        Operator::dirac_commutator(a[2]),
        Operator::dirac_commutator(a[3]),
    ]);
    op.traced_diagonal(a[0].size(), l, theta, &gamma) * (super::RESIDUE_CONSTANT / 12.0)
}

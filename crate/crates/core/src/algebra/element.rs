use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Mode, ThetaMatrix};
use crate::error::AlgebraError;

/// Dense complex N×N coefficient matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Coefficients whose largest entry modulus is below this are true zeros and
/// are dropped from the support.
pub const ZERO_THRESHOLD: f64 = 1e-300;

/// A finitely supported element `Σ_k a_k U_k` of `M_N(A_Θ)`, each `a_k` a
/// complex N×N matrix.
///
/// The support never stores an all-zero coefficient. Elements do not carry
/// Θ; operations that depend on it take it explicitly.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierElement {
    size: usize,
    coeffs: BTreeMap<Mode, CMatrix>,
}

pub(crate) fn max_modulus(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

fn check_size(a: &FourierElement, b: &FourierElement) -> Result<(), AlgebraError> {
    if a.size != b.size {
        return Err(AlgebraError::SizeMismatch { left: a.size, right: b.size });
    }
    Ok(())
}

impl FourierElement {
    pub fn zero(size: usize) -> Self {
        assert!(size > 0, "matrix size must be positive");
        FourierElement { size, coeffs: BTreeMap::new() }
    }

    /// The unit `1 ⊗ I_N`.
    pub fn identity(size: usize) -> Self {
        Self::from_matrix(Mode::ZERO, CMatrix::identity(size, size))
    }

    /// `c · U_k ⊗ I_N`.
    pub fn basis(size: usize, k: Mode, c: Complex64) -> Self {
        Self::from_matrix(k, CMatrix::identity(size, size) * c)
    }

    /// A single coefficient `m` at mode `k`.
    pub fn from_matrix(k: Mode, m: CMatrix) -> Self {
        assert!(m.is_square() && m.nrows() > 0, "coefficient must be a nonempty square matrix");
        let mut out = FourierElement::zero(m.nrows());
        if max_modulus(&m) >= ZERO_THRESHOLD {
            out.coeffs.insert(k, m);
        }
        out
    }

    /// Builds an element from `(mode, coefficient)` pairs, rejecting
    /// duplicates and shape mismatches.
    pub fn from_coeffs<I>(size: usize, coeffs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Mode, CMatrix)>,
    {
        if size == 0 {
            return Err(AlgebraError::ZeroSize);
        }
        let mut map = BTreeMap::new();
        for (k, m) in coeffs {
            if m.nrows() != size || m.ncols() != size {
                return Err(AlgebraError::CoefficientShape {
                    mode: k,
                    rows: m.nrows(),
                    cols: m.ncols(),
                    expected: size,
                });
            }
            match map.entry(k) {
                Entry::Occupied(_) => return Err(AlgebraError::DuplicateMode(k)),
                Entry::Vacant(v) => {
                    v.insert(m);
                }
            }
        }
        let mut out = FourierElement { size, coeffs: map };
        out.normalize();
        Ok(out)
    }

    /// Random element with i.i.d. standard normal entries on every mode of
    /// the box `‖k‖∞ ≤ radius`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, size: usize, radius: i64) -> Self {
        let coeffs = Mode::box_iter(radius).map(|k| (k, random_matrix(rng, size, 1.0)));
        Self::from_coeffs(size, coeffs).expect("well-formed by construction")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coeff(&self, k: Mode) -> Option<&CMatrix> {
        self.coeffs.get(&k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mode, &CMatrix)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Mode> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn has_zero_mode(&self) -> bool {
        self.coeffs.contains_key(&Mode::ZERO)
    }

    /// Largest `‖k‖∞` over the support (0 for the zero element).
    pub fn radius(&self) -> i64 {
        self.coeffs.keys().map(Mode::sup_norm).max().unwrap_or(0)
    }

    fn normalize(&mut self) {
        self.coeffs.retain(|_, m| max_modulus(m) >= ZERO_THRESHOLD);
    }

    /// Replaces (or removes, if zero) the coefficient at `k`.
    pub fn set_coeff(&mut self, k: Mode, m: CMatrix) -> Result<(), AlgebraError> {
        if m.nrows() != self.size || m.ncols() != self.size {
            return Err(AlgebraError::CoefficientShape {
                mode: k,
                rows: m.nrows(),
                cols: m.ncols(),
                expected: self.size,
            });
        }
        if max_modulus(&m) >= ZERO_THRESHOLD {
            self.coeffs.insert(k, m);
        } else {
            self.coeffs.remove(&k);
        }
        Ok(())
    }

    /// Drops every coefficient outside `‖k‖∞ ≤ radius`.
    pub fn truncated(&self, radius: i64) -> Self {
        FourierElement {
            size: self.size,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.sup_norm() <= radius)
                .map(|(k, m)| (*k, m.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &FourierElement) -> Result<Self, AlgebraError> {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &FourierElement) -> Result<Self, AlgebraError> {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    /// `self + alpha · other`.
    pub fn axpy(&self, alpha: Complex64, other: &FourierElement) -> Result<Self, AlgebraError> {
        check_size(self, other)?;
        let mut out = self.clone();
        for (k, m) in &other.coeffs {
            match out.coeffs.entry(*k) {
                Entry::Occupied(mut e) => *e.get_mut() += m * alpha,
                Entry::Vacant(e) => {
                    e.insert(m * alpha);
                }
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = FourierElement {
            size: self.size,
            coeffs: self.coeffs.iter().map(|(k, m)| (*k, m * c)).collect(),
        };
        out.normalize();
        out
    }

    /// Left multiplication of every coefficient by a constant matrix.
    pub fn left_mul_matrix(&self, m: &CMatrix) -> Self {
        let mut out = FourierElement {
            size: self.size,
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, m * a)).collect(),
        };
        out.normalize();
        out
    }

    /// Right multiplication of every coefficient by a constant matrix.
    pub fn right_mul_matrix(&self, m: &CMatrix) -> Self {
        let mut out = FourierElement {
            size: self.size,
            coeffs: self.coeffs.iter().map(|(k, a)| (*k, a * m)).collect(),
        };
        out.normalize();
        out
    }

    /// The twisted product `(ab)_n = Σ_{k+q=n} e^{−(i/2) k·Θq} a_k b_q`.
    ///
    /// Terms reach each output mode in lexicographic order of `(k, q)`. A
    /// phase of exactly zero angle is skipped, so at Θ = 0 this is the plain
    /// convolution bit-for-bit.
    pub fn weyl_product(&self, other: &FourierElement, theta: &ThetaMatrix) -> Result<Self, AlgebraError> {
        check_size(self, other)?;
        let mut acc: BTreeMap<Mode, CMatrix> = BTreeMap::new();
        for (k, ak) in &self.coeffs {
            for (q, bq) in &other.coeffs {
                let mut term = ak * bq;
                let angle = theta.pair(*k, *q);
                if angle != 0.0 {
                    term *= Complex64::from_polar(1.0, -0.5 * angle);
                }
                match acc.entry(*k + *q) {
                    Entry::Occupied(mut e) => *e.get_mut() += term,
                    Entry::Vacant(e) => {
                        e.insert(term);
                    }
                }
            }
        }
        let mut out = FourierElement { size: self.size, coeffs: acc };
        out.normalize();
        Ok(out)
    }

    /// Coefficient at mode 0 of `self · other`, without forming the product.
    ///
    /// Equal to `trace_tau(weyl_product(self, other))`; the phase at
    /// `q = −k` is exactly one.
    pub fn product_zero_mode(&self, other: &FourierElement) -> Result<CMatrix, AlgebraError> {
        check_size(self, other)?;
        let mut acc = CMatrix::zeros(self.size, self.size);
        for (k, ak) in &self.coeffs {
            if let Some(b) = other.coeffs.get(&-*k) {
                acc += ak * b;
            }
        }
        Ok(acc)
    }

    /// `(a*)_k = (a_{−k})^†`.
    pub fn star(&self) -> Self {
        FourierElement {
            size: self.size,
            coeffs: self.coeffs.iter().map(|(k, m)| (-*k, m.adjoint())).collect(),
        }
    }

    /// The canonical derivation `δ_μ(U_k) = i k_μ U_k`, `mu ∈ {1, 2, 3}`.
    pub fn derive(&self, mu: usize) -> Self {
        assert!((1..=3).contains(&mu), "derivation axis must be 1, 2 or 3");
        let mut out = FourierElement {
            size: self.size,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, m)| {
                    let km = k.component(mu) as f64;
                    (*k, m.map(|z| Complex64::new(-km * z.im, km * z.re)))
                })
                .collect(),
        };
        out.normalize();
        out
    }

    /// `τ(a) = a_0` as an N×N matrix (the partial trace over `A_Θ`).
    pub fn trace_tau(&self) -> CMatrix {
        self.coeffs
            .get(&Mode::ZERO)
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.size, self.size))
    }

    /// `τ ⊗ tr`, the full matrix trace of the zero mode.
    pub fn full_trace(&self) -> Complex64 {
        self.coeffs.get(&Mode::ZERO).map(|m| m.trace()).unwrap_or_default()
    }

    /// The normalized scalar trace `(1/N) tr τ(a)`.
    pub fn scalar_trace(&self) -> Complex64 {
        self.full_trace() / self.size as f64
    }

    /// Largest entrywise modulus of `self − other` over the union of
    /// supports.
    pub fn max_entry_diff(&self, other: &FourierElement) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, m) in &self.coeffs {
            worst = worst.max(match other.coeffs.get(k) {
                Some(o) => max_modulus(&(m - o)),
                None => max_modulus(m),
            });
        }
        for (k, o) in &other.coeffs {
            if !self.coeffs.contains_key(k) {
                worst = worst.max(max_modulus(o));
            }
        }
        worst
    }

    /// Largest entry modulus over all coefficients.
    pub fn max_entry(&self) -> f64 {
        self.coeffs.values().map(max_modulus).fold(0.0, f64::max)
    }
}

/// Free-function form of [`FourierElement::weyl_product`].
pub fn weyl_product(a: &FourierElement, b: &FourierElement, theta: &ThetaMatrix) -> Result<FourierElement, AlgebraError> {
    a.weyl_product(b, theta)
}

/// Complex N×N matrix with i.i.d. standard normal real and imaginary parts
/// scaled by `scale`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, size: usize, scale: f64) -> CMatrix {
    CMatrix::from_fn(size, size, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(scale * re, scale * im)
    })
}

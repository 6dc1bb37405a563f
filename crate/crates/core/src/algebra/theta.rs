use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::Mode;
use crate::error::AlgebraError;

/// The real skew-symmetric deformation matrix Θ (radians).
///
/// Skew-symmetry is checked exactly on construction, so `k·Θk` is exactly
/// zero for every `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 3]; 3]", into = "[[f64; 3]; 3]")]
pub struct ThetaMatrix {
    entries: [[f64; 3]; 3],
}

impl ThetaMatrix {
    pub fn new(entries: [[f64; 3]; 3]) -> Result<Self, AlgebraError> {
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(AlgebraError::ThetaNotFinite { row: i, col: j });
                }
                if v != -entries[j][i] {
                    return Err(AlgebraError::ThetaNotSkew { row: i, col: j });
                }
            }
        }
        Ok(ThetaMatrix { entries })
    }

    /// Builds Θ from its upper-triangular entries `(Θ₁₂, Θ₁₃, Θ₂₃)`.
    pub fn from_upper(t12: f64, t13: f64, t23: f64) -> Self {
        ThetaMatrix {
            entries: [[0.0, t12, t13], [-t12, 0.0, t23], [-t13, -t23, 0.0]],
        }
    }

    /// The commutative torus.
    pub fn zero() -> Self {
        Self::from_upper(0.0, 0.0, 0.0)
    }

    /// Only `Θ₁₂ = angle` is nonzero: a noncommutative 2-torus times a circle.
    pub fn single_angle(angle: f64) -> Self {
        Self::from_upper(angle, 0.0, 0.0)
    }

    /// `Θ/2π` with upper entries [`golden_rotation`](Self::golden_rotation).
    pub fn golden() -> Self {
        let [a, b, c] = Self::golden_rotation();
        Self::from_upper(2.0 * PI * a, 2.0 * PI * b, 2.0 * PI * c)
    }

    /// `(φ−1, √2−1, √3−1)`, φ the golden ratio.
    pub fn golden_rotation() -> [f64; 3] {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        [phi - 1.0, 2f64.sqrt() - 1.0, 3f64.sqrt() - 1.0]
    }

    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == 0.0)
    }

    /// The bilinear pairing `k·Θq = Σ_{ij} k_i Θ_ij q_j`.
    ///
    /// Evaluated as `Σ_{i<j} Θ_ij (k_i q_j − k_j q_i)` with exact integer
    /// minors, so `pair(k, k) == 0.0` and `pair(q, k) == -pair(k, q)` hold
    /// bit-for-bit.
    pub fn pair(&self, k: Mode, q: Mode) -> f64 {
        let (k, q) = (k.0, q.0);
        let e = &self.entries;
        let m12 = (k[0] * q[1] - k[1] * q[0]) as f64;
        let m13 = (k[0] * q[2] - k[2] * q[0]) as f64;
        let m23 = (k[1] * q[2] - k[2] * q[1]) as f64;
        e[0][1] * m12 + e[0][2] * m13 + e[1][2] * m23
    }
}

impl TryFrom<[[f64; 3]; 3]> for ThetaMatrix {
    type Error = AlgebraError;
    fn try_from(entries: [[f64; 3]; 3]) -> Result<Self, Self::Error> {
        ThetaMatrix::new(entries)
    }
}

impl From<ThetaMatrix> for [[f64; 3]; 3] {
    fn from(t: ThetaMatrix) -> Self {
        t.entries
    }
}

/// Free-function form of [`ThetaMatrix::pair`].
pub fn theta_pair(theta: &ThetaMatrix, k: Mode, q: Mode) -> f64 {
    theta.pair(k, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_skew() {
        let mut e = *ThetaMatrix::golden().entries();
        e[0][0] = 0.1;
        assert!(matches!(ThetaMatrix::new(e), Err(AlgebraError::ThetaNotSkew { row: 0, col: 0 })));
        let mut e = *ThetaMatrix::golden().entries();
        e[1][2] += 1e-15;
        assert!(ThetaMatrix::new(e).is_err());
    }

    #[test]
    fn single_entry_contraction() {
        let t = ThetaMatrix::single_angle(PI / 2.0);
        assert_eq!(t.pair(Mode::new(1, 0, 0), Mode::new(0, 1, 0)), PI / 2.0);
        assert_eq!(t.pair(Mode::new(0, 1, 0), Mode::new(1, 0, 0)), -PI / 2.0);
    }

    #[test]
    fn minor_form_matches_full_contraction() {
        let t = ThetaMatrix::golden();
        let e = t.entries();
        for k in Mode::box_iter(2) {
            for q in Mode::box_iter(1) {
                let (kf, qf) = (k.as_f64(), q.as_f64());
                let mut full = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        full += kf[i] * e[i][j] * qf[j];
                    }
                }
                assert!((full - t.pair(k, q)).abs() <= 1e-12, "{k} {q}");
            }
        }
    }

    fn mode() -> impl Strategy<Value = Mode> {
        prop::array::uniform3(-5i64..=5).prop_map(Mode)
    }

    proptest! {
        #[test]
        fn self_pairing_vanishes(k in mode(), a in -10.0f64..10.0, b in -10.0f64..10.0, c in -10.0f64..10.0) {
            let t = ThetaMatrix::from_upper(a, b, c);
            prop_assert_eq!(t.pair(k, k), 0.0);
        }

        #[test]
        fn pairing_is_antisymmetric(k in mode(), q in mode()) {
            let t = ThetaMatrix::golden();
            prop_assert_eq!(t.pair(k, q), -t.pair(q, k));
        }

        #[test]
        fn pairing_even_under_joint_negation(k in mode(), q in mode()) {
            let t = ThetaMatrix::golden();
            prop_assert_eq!(t.pair(-k, -q), t.pair(k, q));
        }
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Mode, ThetaMatrix};
use crate::error::LoopError;
use crate::spin::levi_civita;

/// Which form of the vertex couplings to use.
///
/// `Theorem` uses `N^{3/2}` and `sin(½ q·Θr)` on both vertices; `Box` uses
/// `N³` and `exp(−(i/2) q·Θr)` on the gauge vertex. Propagators agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Theorem,
    Box,
}

/// Couplings shared by every vertex and propagator of a diagram.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub level: i64,
    pub size: usize,
    pub theta: ThetaMatrix,
    pub convention: Convention,
}

impl Coupling {
    pub fn new(level: i64, size: usize, theta: ThetaMatrix, convention: Convention) -> Result<Self, LoopError> {
        if level == 0 {
            return Err(LoopError::ZeroLevel);
        }
        if size == 0 {
            return Err(LoopError::ZeroSize);
        }
        Ok(Coupling { level, size, theta, convention })
    }

    fn size_power(&self) -> f64 {
        match self.convention {
            Convention::Theorem => (self.size as f64).powf(1.5),
            Convention::Box => (self.size as f64).powi(3),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum VertexKind {
    /// `A_λ A_μ A_ν`, legs `(q, r−q, −r)`.
    GaugeTriple,
    /// `c A_μ c*`, legs `c: q`, `A: r−q`, `c*: −r`.
    GhostTriple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LegKind {
    Gauge,
    Ghost,
    AntiGhost,
}

impl VertexKind {
    pub fn legs(self) -> [LegKind; 3] {
        match self {
            VertexKind::GaugeTriple => [LegKind::Gauge; 3],
            VertexKind::GhostTriple => [LegKind::Ghost, LegKind::Gauge, LegKind::AntiGhost],
        }
    }
}

/// A vertex with its Fourier labels `(q, r)`; `q`, `r` and `q − r` are
/// nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSpec {
    pub kind: VertexKind,
    pub q: Mode,
    pub r: Mode,
}

impl VertexSpec {
    pub fn new(kind: VertexKind, q: Mode, r: Mode) -> Result<Self, LoopError> {
        if q.is_zero() || r.is_zero() || q == r {
            return Err(LoopError::ZeroMomentum);
        }
        Ok(VertexSpec { kind, q, r })
    }

    /// Incoming momentum of each leg, `(q, r − q, −r)`; they sum to zero.
    pub fn leg_momenta(&self) -> [Mode; 3] {
        leg_momenta(self.q, self.r)
    }
}

pub(crate) fn leg_momenta(q: Mode, r: Mode) -> [Mode; 3] {
    [q, r - q, -r]
}

/// Scalar part of a vertex factor (the tensor part is `ε^{λμν}` for the
/// gauge vertex and `q_μ` for the ghost vertex).
pub fn vertex_factor(v: &VertexSpec, coupling: &Coupling) -> Result<Complex64, LoopError> {
    if v.q.is_zero() || v.r.is_zero() || v.q == v.r {
        return Err(LoopError::ZeroMomentum);
    }
    Ok(vertex_scalar(v.kind, v.q, v.r, coupling))
}

pub(crate) fn vertex_scalar(kind: VertexKind, q: Mode, r: Mode, coupling: &Coupling) -> Complex64 {
    let angle = coupling.theta.pair(q, r);
    let npow = coupling.size_power();
    match (kind, coupling.convention) {
        (VertexKind::GaugeTriple, Convention::Theorem) => {
            Complex64::new(0.0, -2.0 * PI * PI * coupling.level as f64 * npow * (0.5 * angle).sin())
        }
        (VertexKind::GaugeTriple, Convention::Box) => {
            Complex64::new(0.0, -2.0 * PI * PI * coupling.level as f64 * npow) * Complex64::from_polar(1.0, -0.5 * angle)
        }
        (VertexKind::GhostTriple, _) => Complex64::new(0.0, -16.0 * PI.powi(3) * npow * (0.5 * angle).sin()),
    }
}

/// `G^{A_λ A_ν}(q) = (1/(8π²k)) ε^{λμν} q_μ / |q|²`, indexed `[λ−1][ν−1]`.
pub fn propagator_gauge(q: Mode, level: i64) -> Result<[[f64; 3]; 3], LoopError> {
    if q.is_zero() {
        return Err(LoopError::ZeroMomentum);
    }
    if level == 0 {
        return Err(LoopError::ZeroLevel);
    }
    Ok(gauge_propagator_unchecked(q, level))
}

pub(crate) fn gauge_propagator_unchecked(q: Mode, level: i64) -> [[f64; 3]; 3] {
    let qf = q.as_f64();
    let scale = 1.0 / (8.0 * PI * PI * level as f64 * q.norm_sq() as f64);
    let mut g = [[0.0; 3]; 3];
    for (l, row) in g.iter_mut().enumerate() {
        for (n, slot) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (mu, qm) in qf.iter().enumerate() {
                acc += levi_civita(l, mu, n) as f64 * qm;
            }
            *slot = acc * scale;
        }
    }
    g
}

/// `G^{cc*}(q) = (i/(8π³)) / |q|²`.
pub fn propagator_ghost(q: Mode) -> Result<Complex64, LoopError> {
    if q.is_zero() {
        return Err(LoopError::ZeroMomentum);
    }
    Ok(ghost_propagator_unchecked(q))
}

pub(crate) fn ghost_propagator_unchecked(q: Mode) -> Complex64 {
    Complex64::new(0.0, 1.0 / (8.0 * PI.powi(3) * q.norm_sq() as f64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PropagatorKind {
    Gauge,
    Ghost,
}

/// A propagator line with the momentum it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropagatorSpec {
    pub kind: PropagatorKind,
    pub momentum: Mode,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coupling(theta: ThetaMatrix, convention: Convention) -> Coupling {
        Coupling::new(3, 2, theta, convention).unwrap()
    }

    #[test]
    fn gauge_propagator_along_axis() {
        let k = 2;
        let g = propagator_gauge(Mode::new(0, 0, 1), k).unwrap();
        let mag = 1.0 / (8.0 * PI * PI * k as f64);
        for (l, row) in g.iter().enumerate() {
            for (n, &v) in row.iter().enumerate() {
                match (l, n) {
                    (0, 1) => assert!((v + mag).abs() <= 1e-18),
                    (1, 0) => assert!((v - mag).abs() <= 1e-18),
                    _ => assert_eq!(v, 0.0),
                }
            }
        }
        assert_eq!(propagator_gauge(Mode::ZERO, 1), Err(LoopError::ZeroMomentum));
        assert_eq!(propagator_gauge(Mode::new(1, 0, 0), 0), Err(LoopError::ZeroLevel));
    }

    #[test]
    fn ghost_propagator_values() {
        let v = propagator_ghost(Mode::new(1, 0, 0)).unwrap();
        assert_eq!(v, Complex64::new(0.0, 1.0 / (8.0 * PI.powi(3))));
        let a = propagator_ghost(Mode::new(0, 0, 1)).unwrap();
        let b = propagator_ghost(Mode::new(0, 0, 2)).unwrap();
        assert_eq!(b, a / 4.0);
        assert_eq!(propagator_ghost(Mode::ZERO), Err(LoopError::ZeroMomentum));
    }

    #[test]
    fn vertex_needs_nonzero_legs() {
        assert!(VertexSpec::new(VertexKind::GaugeTriple, Mode::ZERO, Mode::new(1, 0, 0)).is_err());
        assert!(VertexSpec::new(VertexKind::GaugeTriple, Mode::new(1, 0, 0), Mode::new(1, 0, 0)).is_err());
        let v = VertexSpec::new(VertexKind::GhostTriple, Mode::new(1, 0, 0), Mode::new(0, 1, 0)).unwrap();
        let legs = v.leg_momenta();
        assert_eq!(legs[0] + legs[1] + legs[2], Mode::ZERO);
    }

    #[test]
    fn zero_theta_kills_theorem_vertices() {
        let c = coupling(ThetaMatrix::zero(), Convention::Theorem);
        for q in Mode::punctured_box(1) {
            for r in Mode::punctured_box(1) {
                if q == r {
                    continue;
                }
                for kind in [VertexKind::GaugeTriple, VertexKind::GhostTriple] {
                    assert_eq!(vertex_factor(&VertexSpec::new(kind, q, r).unwrap(), &c).unwrap(), Complex64::new(0.0, 0.0));
                }
            }
        }
        let b = coupling(ThetaMatrix::zero(), Convention::Box);
        let v = VertexSpec::new(VertexKind::GaugeTriple, Mode::new(1, 0, 0), Mode::new(0, 1, 0)).unwrap();
        assert!(vertex_factor(&v, &b).unwrap().norm() > 0.0);
    }

    fn mode() -> impl Strategy<Value = Mode> {
        prop::array::uniform3(-4i64..=4).prop_map(Mode).prop_filter("nonzero", |m| !m.is_zero())
    }

    proptest! {
        #[test]
        fn gauge_propagator_parity(q in mode()) {
            let g = propagator_gauge(q, 3).unwrap();
            let gm = propagator_gauge(-q, 3).unwrap();
            for l in 0..3 {
                for n in 0..3 {
                    prop_assert_eq!(gm[l][n], -g[l][n]);
                    prop_assert_eq!(g[n][l], -g[l][n]);
                }
            }
        }

        #[test]
        fn ghost_propagator_is_even(q in mode()) {
            prop_assert_eq!(propagator_ghost(-q).unwrap(), propagator_ghost(q).unwrap());
        }

        #[test]
        fn vertex_sine_parity(q in mode(), r in mode()) {
            prop_assume!(q != r);
            for conv in [Convention::Theorem, Convention::Box] {
                let c = coupling(ThetaMatrix::golden(), conv);
                for kind in [VertexKind::GaugeTriple, VertexKind::GhostTriple] {
                    let v = vertex_factor(&VertexSpec::new(kind, q, r).unwrap(), &c).unwrap();
                    let vm = vertex_factor(&VertexSpec::new(kind, -q, -r).unwrap(), &c).unwrap();
                    prop_assert_eq!(v, vm);
                }
            }
            let th = ThetaMatrix::golden();
            prop_assert_eq!((0.5 * th.pair(q, r)).sin(), -(0.5 * th.pair(r, q)).sin());
        }
    }
}

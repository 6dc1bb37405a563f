use serde::{Deserialize, Serialize};

use super::Mode;

/// Finite-cutoff estimate of the diophantine constant of a vector `a ∈ R³`:
/// the minimum of `dist(q·a, Z) · ‖q‖∞^δ` over `0 < ‖q‖∞ ≤ cutoff`.
///
/// The norm is always the sup-norm of the integer vector `q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiophantineReport {
    pub vector: [f64; 3],
    pub delta: f64,
    pub cutoff: i64,
    pub norm: String,
    pub worst_constant: f64,
    pub witness_q: Mode,
    pub witness_m: i64,
}

impl DiophantineReport {
    /// Re-evaluates `|q·a − m| · ‖q‖∞^δ` at the stored witness.
    pub fn witness_value(&self) -> f64 {
        scaled_distance(&self.vector, self.witness_q, self.witness_m as f64, self.delta)
    }
}

fn dot(a: &[f64; 3], q: Mode) -> f64 {
    q.0[0] as f64 * a[0] + q.0[1] as f64 * a[1] + q.0[2] as f64 * a[2]
}

fn scaled_distance(a: &[f64; 3], q: Mode, m: f64, delta: f64) -> f64 {
    (dot(a, q) - m).abs() * (q.sup_norm() as f64).powf(delta)
}

/// Exhaustive scan of the punctured box. Ties keep the lexicographically
/// first `q`.
pub fn diophantine_diagnostic(a: [f64; 3], delta: f64, cutoff: i64) -> DiophantineReport {
    assert!(cutoff >= 1, "cutoff must be at least 1");
    assert!(delta > 0.0, "delta must be positive");
    let mut best: Option<(f64, Mode, f64)> = None;
    for q in Mode::box_iter(cutoff) {
        if q.is_zero() {
            continue;
        }
        let m = dot(&a, q).round();
        let v = scaled_distance(&a, q, m, delta);
        if best.is_none_or(|(b, _, _)| v < b) {
            best = Some((v, q, m));
        }
    }
    let (worst_constant, witness_q, m) = best.expect("punctured box is nonempty");
    DiophantineReport {
        vector: a,
        delta,
        cutoff,
        norm: "sup".to_string(),
        worst_constant,
        witness_q,
        witness_m: m as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_vector_is_degenerate() {
        let r = diophantine_diagnostic([0.0; 3], 1.0, 2);
        assert_eq!(r.worst_constant, 0.0);
        assert_eq!(r.witness_m, 0);
        assert_eq!(r.witness_value(), 0.0);
    }

    #[test]
    fn rational_vector_fails() {
        let r = diophantine_diagnostic([0.5, 0.0, 0.0], 1.0, 3);
        assert_eq!(r.worst_constant, 0.0);
        assert_eq!(r.witness_value(), 0.0);
        assert_eq!(r.witness_q.0[0] % 2, 0);
    }

    #[test]
    fn golden_vector_frozen_scan() {
        // frozen from an independent exhaustive scan (float64, same box)
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let a = [phi - 1.0, 2f64.sqrt() - 1.0, 3f64.sqrt() - 1.0];
        let r = diophantine_diagnostic(a, 4.0, 50);
        assert!(r.worst_constant > 0.0);
        assert!((r.worst_constant - 0.008918572841453809).abs() <= 1e-15);
        assert_eq!(r.witness_q, Mode::new(-6, -7, -6));
        assert_eq!(r.witness_m, -11);
        assert_eq!(r.witness_value(), r.worst_constant);
    }
}

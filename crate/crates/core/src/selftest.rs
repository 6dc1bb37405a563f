//! A fast, deterministic run of the main invariants at small sizes.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{
    action_coefficient_formula, action_zero_mode_oracle, check_gauge_invariance, index_pairing, phi1_debug,
};
use crate::algebra::{diophantine_diagnostic, FourierElement, Mode, ThetaMatrix};
use crate::io::{emit_field, parse_field};
use crate::loops::{
    expansion_term, two_loop_sum, vertex_factor, Channel, Convention, Coupling, LoopLimits, VertexKind, VertexSpec,
};
use crate::spin::{random_field, RandomFieldParams, UnitaryElement};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

type Outcome = Result<String, String>;
type CheckFn = fn() -> Outcome;

fn bound(name: &str, value: f64, tol: f64) -> Outcome {
    if value <= tol {
        Ok(format!("{name} {value:.2e} ≤ {tol:.0e}"))
    } else {
        Err(format!("{name} {value:.2e} > {tol:.0e}"))
    }
}

fn elements(seed: u64, count: usize) -> Vec<FourierElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| FourierElement::random(&mut rng, 2, 1)).collect()
}

fn associativity() -> Outcome {
    let th = ThetaMatrix::golden();
    let e = elements(1, 3);
    let l = e[0].weyl_product(&e[1], &th).and_then(|x| x.weyl_product(&e[2], &th)).map_err(|x| x.to_string())?;
    let r = e[1].weyl_product(&e[2], &th).and_then(|x| e[0].weyl_product(&x, &th)).map_err(|x| x.to_string())?;
    bound("max entry difference", l.max_entry_diff(&r), 1e-12)
}

fn leibniz() -> Outcome {
    let th = ThetaMatrix::single_angle(0.8);
    let e = elements(2, 2);
    let mut worst: f64 = 0.0;
    for mu in 1..=3 {
        let lhs = e[0].weyl_product(&e[1], &th).map_err(|x| x.to_string())?.derive(mu);
        let a = e[0].derive(mu).weyl_product(&e[1], &th).map_err(|x| x.to_string())?;
        let b = e[0].weyl_product(&e[1].derive(mu), &th).map_err(|x| x.to_string())?;
        worst = worst.max(lhs.max_entry_diff(&a.add(&b).map_err(|x| x.to_string())?));
    }
    bound("max entry difference", worst, 1e-12)
}

fn star_and_trace() -> Outcome {
    let th = ThetaMatrix::golden();
    let e = elements(3, 2);
    let ab = e[0].weyl_product(&e[1], &th).map_err(|x| x.to_string())?;
    let ba = e[1].weyl_product(&e[0], &th).map_err(|x| x.to_string())?;
    let bs_as = e[1].star().weyl_product(&e[0].star(), &th).map_err(|x| x.to_string())?;
    let star = ab.star().max_entry_diff(&bs_as);
    let cyc = (ab.full_trace() - ba.full_trace()).norm();
    bound("star and trace-cyclicity defect", star.max(cyc), 1e-12)
}

fn commutative_limit() -> Outcome {
    let zero = ThetaMatrix::zero();
    let c = Complex64::new(1.0, 0.0);
    for k in Mode::box_iter(1) {
        for q in Mode::box_iter(1) {
            let p = FourierElement::basis(1, k, c).weyl_product(&FourierElement::basis(1, q, c), &zero).unwrap();
            if p != FourierElement::basis(1, k + q, c) {
                return Err(format!("U_{k} U_{q} ≠ U_{{k+q}} at Θ = 0"));
            }
        }
    }
    let cp = Coupling::new(1, 1, zero, Convention::Theorem).map_err(|e| e.to_string())?;
    for kind in [VertexKind::GaugeTriple, VertexKind::GhostTriple] {
        let v = VertexSpec::new(kind, Mode::new(1, 2, 0), Mode::new(0, -1, 3)).map_err(|e| e.to_string())?;
        if vertex_factor(&v, &cp).map_err(|e| e.to_string())? != Complex64::new(0.0, 0.0) {
            return Err("vertex factor nonzero at Θ = 0".into());
        }
    }
    Ok("exact convolution and vanishing vertices".into())
}

fn field(seed: u64, nzm: bool) -> crate::spin::GaugeField {
    random_field(&RandomFieldParams { size: 2, support: 1, seed, decay: 0.3, no_zero_mode: nzm }, ThetaMatrix::golden())
}

fn oracle_equivalence() -> Outcome {
    let f = field(5, true);
    let a = action_coefficient_formula(&f, 2).map_err(|e| e.to_string())?;
    let b = action_zero_mode_oracle(&f, 2).map_err(|e| e.to_string())?;
    let scale = 1.0 + b.total.norm();
    let d = ((a.quadratic - b.quadratic).norm() / scale).max((a.cubic - b.cubic).norm() / scale);
    bound("relative difference", d, 1e-10)
}

fn gauge_invariance() -> Outcome {
    let f = field(6, false);
    let th = *f.theta();
    let mut worst: f64 = 0.0;
    for u in [UnitaryElement::random_constant(2, 1, th), UnitaryElement::weyl(2, Mode::new(1, -2, 1), th)] {
        let r = check_gauge_invariance(&f, &u, 3).map_err(|e| e.to_string())?;
        if r.index.index != 0 {
            return Err(format!("index {} for a trivial unitary", r.index.index));
        }
        worst = worst.max(r.relative_defect);
    }
    bound("relative defect", worst, 1e-8)
}

fn index_and_phi1() -> Outcome {
    let th = ThetaMatrix::golden();
    let r = index_pairing(&UnitaryElement::weyl(2, Mode::new(2, 0, -1), th)).map_err(|e| e.to_string())?;
    if r.index != 0 {
        return Err(format!("index {}", r.index));
    }
    let e = elements(7, 2);
    let d = phi1_debug(&e[0], &e[1], &th, 1).map_err(|e| e.to_string())?;
    bound("φ₁ debug terms", d.iter().cloned().fold(r.residual, f64::max), 1e-12)
}

fn two_loop() -> Outcome {
    let mut worst: f64 = 0.0;
    for conv in [Convention::Theorem, Convention::Box] {
        let c = Coupling::new(2, 2, ThetaMatrix::golden(), conv).map_err(|e| e.to_string())?;
        for ch in [Channel::AaaAaa, Channel::GhostGhost] {
            let r = two_loop_sum(2, &c, ch).map_err(|e| e.to_string())?;
            if r.gross_magnitude <= 0.0 {
                return Err(format!("{ch} has no nonzero terms"));
            }
            worst = worst.max(r.cancellation_ratio);
        }
    }
    bound("cancellation ratio", worst, 1e-12)
}

fn odd_terms() -> Outcome {
    let c = Coupling::new(1, 2, ThetaMatrix::golden(), Convention::Theorem).map_err(|e| e.to_string())?;
    for (n, m) in [(1, 0), (0, 1), (3, 0)] {
        let r = expansion_term(n, m, 2, &c, &LoopLimits::default()).map_err(|e| e.to_string())?;
        if !r.structurally_zero {
            return Err(format!("({n},{m}) has {} pairings", r.pairing_count));
        }
    }
    let mixed = two_loop_sum(2, &c, Channel::Mixed).map_err(|e| e.to_string())?;
    if mixed.pairing_count != 0 {
        return Err("mixed channel has pairings".into());
    }
    Ok("no pairings for (1,0), (0,1), (3,0) and the mixed channel".into())
}

fn diophantine() -> Outcome {
    let r = diophantine_diagnostic(ThetaMatrix::golden_rotation(), 4.0, 50);
    let frozen = 0.008918572841453809;
    if r.witness_q != Mode::new(-6, -7, -6) {
        return Err(format!("witness {}", r.witness_q));
    }
    bound("relative deviation from the frozen constant", (r.worst_constant / frozen - 1.0).abs(), 1e-12)
}

fn round_trip() -> Outcome {
    let f = field(9, false);
    let back = parse_field(&emit_field(&f)).map_err(|e| e.to_string())?;
    if back == f {
        Ok("bit-exact".into())
    } else {
        Err("field changed in a JSON round trip".into())
    }
}

pub fn run_selftest() -> SelftestReport {
    let suite: [(&str, CheckFn); 11] = [
        ("associativity", associativity),
        ("leibniz", leibniz),
        ("star and trace", star_and_trace),
        ("commutative limit", commutative_limit),
        ("action evaluators agree", oracle_equivalence),
        ("gauge invariance", gauge_invariance),
        ("index and phi1", index_and_phi1),
        ("two-loop cancellation", two_loop),
        ("odd terms", odd_terms),
        ("diophantine", diophantine),
        ("json round trip", round_trip),
    ];
    let checks: Vec<Check> = suite
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Check { name: (*name).into(), passed, detail }
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    SelftestReport { failed: checks.len() - passed, passed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes() {
        let r = run_selftest();
        for c in &r.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert_eq!(r.failed, 0);
    }
}

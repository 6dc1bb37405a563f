//! Gauge transformations `A ↦ uAu* + uδ(u*)` and the invariance of the
//! action up to `2πk·ind(u)`.

use nctorus::action::check_gauge_invariance;
use nctorus::algebra::{Mode, ThetaMatrix};
use nctorus::spin::{random_field, RandomFieldParams, UnitaryElement};

pub fn run() -> f64 {
    let theta = ThetaMatrix::single_angle(0.7);
    let a = random_field(&RandomFieldParams { size: 2, support: 1, seed: 8, decay: 0.2, no_zero_mode: false }, theta);
    let unitaries = [
        ("random constant", UnitaryElement::random_constant(2, 5, theta)),
        ("U_(2,-1,0)", UnitaryElement::weyl(2, Mode::new(2, -1, 0), theta)),
    ];
    let mut worst: f64 = 0.0;
    for (name, u) in &unitaries {
        let r = check_gauge_invariance(&a, u, 4).unwrap();
        println!(
            "{name:>16}: S(A) = {:.9}, S(A^u) = {:.9}, index {}, relative defect {:.1e}",
            r.before.total.re, r.after.total.re, r.index.index, r.relative_defect
        );
        worst = worst.max(r.relative_defect);
    }
    worst
}

fn main() {
    run();
}

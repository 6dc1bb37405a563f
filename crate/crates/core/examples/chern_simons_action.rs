//! The Chern-Simons action through both evaluators.

use nctorus::action::{action_coefficient_formula, action_zero_mode_oracle};
use nctorus::algebra::ThetaMatrix;
use nctorus::io::parse_field;
use nctorus::spin::{random_field, RandomFieldParams};

pub struct Summary {
    pub bundled_total: f64,
    pub relative_difference: f64,
}

pub fn run() -> Summary {
    let bundled = parse_field(include_str!("../data/single_cross_mode.json")).unwrap();
    let s = action_zero_mode_oracle(&bundled, 3).unwrap();
    println!("bundled single-cross-mode field, k = 3: S = {:.10} (−21π² = {:.10})", s.total.re, -21.0 * std::f64::consts::PI.powi(2));

    let params = RandomFieldParams { size: 2, support: 2, seed: 4, decay: 0.4, no_zero_mode: true };
    let a = random_field(&params, ThetaMatrix::golden());
    let cf = action_coefficient_formula(&a, 2).unwrap();
    let zo = action_zero_mode_oracle(&a, 2).unwrap();
    let scale = 1.0 + zo.total.norm();
    let relative_difference = ((cf.quadratic - zo.quadratic).norm() / scale).max((cf.cubic - zo.cubic).norm() / scale);
    println!("random field: quadratic {:.8}, cubic {:.8}", zo.quadratic, zo.cubic);
    println!("coefficient formula vs zero-mode oracle: {relative_difference:.2e}");

    Summary { bundled_total: s.total.re, relative_difference }
}

fn main() {
    run();
}

//! Finite-cutoff diophantine constants.

use nctorus::algebra::{diophantine_diagnostic, ThetaMatrix};

pub fn run() -> (f64, f64) {
    let golden = diophantine_diagnostic(ThetaMatrix::golden_rotation(), 4.0, 50);
    println!("golden rotation: worst constant {:.6e} at q = {}", golden.worst_constant, golden.witness_q);
    let rational = diophantine_diagnostic([0.5, 0.25, 0.0], 4.0, 50);
    println!("rational vector: worst constant {:.1e} at q = {}", rational.worst_constant, rational.witness_q);
    (golden.worst_constant, rational.worst_constant)
}

fn main() {
    run();
}

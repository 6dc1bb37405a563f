//! Arithmetic in the Weyl basis of `M_N(A_Θ)`: the commutation phase, the
//! involution, the trace and the commutative limit.

use nctorus::algebra::{FourierElement, Mode, ThetaMatrix};
use num_complex::Complex64;

pub struct Summary {
    pub phase_error: f64,
    pub trace_cyclicity: f64,
    pub commutative_exact: bool,
}

pub fn run() -> Summary {
    let theta = ThetaMatrix::golden();
    let one = Complex64::new(1.0, 0.0);
    let (k, q) = (Mode::new(1, 0, 0), Mode::new(0, 1, 0));
    let uk = FourierElement::basis(1, k, one);
    let uq = FourierElement::basis(1, q, one);

    // U_k U_q = e^{−i k·Θq} U_q U_k
    let kq = uk.weyl_product(&uq, &theta).unwrap();
    let qk = uq.weyl_product(&uk, &theta).unwrap();
    let ratio = kq.coeff(k + q).unwrap()[(0, 0)] / qk.coeff(k + q).unwrap()[(0, 0)];
    let expected = Complex64::from_polar(1.0, -theta.pair(k, q));
    let phase_error = (ratio - expected).norm();
    println!("U_k U_q / U_q U_k = {ratio:.12}, expected {expected:.12}");

    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
    let a = FourierElement::random(&mut rng, 2, 2);
    let b = FourierElement::random(&mut rng, 2, 2);
    let ab = a.weyl_product(&b, &theta).unwrap();
    let ba = b.weyl_product(&a, &theta).unwrap();
    let trace_cyclicity = (ab.full_trace() - ba.full_trace()).norm();
    println!("|tr τ(ab) − tr τ(ba)| = {trace_cyclicity:.2e}");
    println!("‖(ab)* − b*a*‖ = {:.2e}", ab.star().max_entry_diff(&b.star().weyl_product(&a.star(), &theta).unwrap()));

    let zero = ThetaMatrix::zero();
    let commutative_exact = Mode::box_iter(2).all(|m| {
        let p = FourierElement::basis(1, m, one).weyl_product(&uq, &zero).unwrap();
        p == FourierElement::basis(1, m + q, one)
    });
    println!("Θ = 0 products are exact convolutions: {commutative_exact}");

    Summary { phase_error, trace_cyclicity, commutative_exact }
}

fn main() {
    run();
}

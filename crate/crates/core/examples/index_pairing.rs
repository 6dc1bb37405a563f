//! The cochain φ₃ in closed form against a literal operator trace, and the
//! index pairing of trivial unitaries.

use nctorus::action::spectral::phi3_from_diagonal;
use nctorus::action::{index_pairing, phi1_debug, phi3};
use nctorus::algebra::{FourierElement, Mode, ThetaMatrix};
use nctorus::spin::UnitaryElement;
use rand::SeedableRng;

pub struct Summary {
    pub closed_vs_literal: f64,
    pub phi1_terms: [f64; 3],
    pub indices: Vec<i64>,
}

pub fn run() -> Summary {
    let theta = ThetaMatrix::golden();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
    let a: Vec<FourierElement> = (0..4).map(|_| FourierElement::random(&mut rng, 2, 1)).collect();
    let closed = phi3(&a[0], &a[1], &a[2], &a[3], &theta).unwrap();
    let literal = phi3_from_diagonal([&a[0], &a[1], &a[2], &a[3]], &theta, Mode::new(2, -1, 1));
    let closed_vs_literal = (closed - literal).norm();
    println!("φ₃ closed form {closed:.10}, operator trace {literal:.10}");

    let phi1_terms = phi1_debug(&a[0], &a[1], &theta, 1).unwrap();
    println!("φ₁ debug terms {:.1e} {:.1e} {:.1e}", phi1_terms[0], phi1_terms[1], phi1_terms[2]);

    let mut indices = Vec::new();
    for (name, u) in [
        ("identity", UnitaryElement::identity(2, theta)),
        ("constant", UnitaryElement::random_constant(2, 1, theta)),
        ("U_(1,1,-2)", UnitaryElement::weyl(2, Mode::new(1, 1, -2), theta)),
    ] {
        let r = index_pairing(&u).unwrap();
        println!("ind({name}) = {} (raw {:.2e})", r.index, r.raw);
        indices.push(r.index);
    }
    Summary { closed_vs_literal, phi1_terms, indices }
}

fn main() {
    run();
}

//! Wick pairings and fixed-order terms of the loop expansion.

use nctorus::algebra::ThetaMatrix;
use nctorus::loops::{enumerate_pairings, expansion_term, Convention, Coupling, LoopLimits, VertexKind};

pub fn run() -> Vec<(usize, usize, usize, bool)> {
    use VertexKind::{GaugeTriple as A, GhostTriple as C};
    for (label, vertices) in [("AAA AAA", vec![A, A]), ("AAA cAc*", vec![A, C]), ("cAc* cAc*", vec![C, C]), ("AAA ×4", vec![A; 4])] {
        let p = enumerate_pairings(&vertices);
        let negative = p.iter().filter(|x| x.sign < 0).count();
        println!("{label:>10}: {} pairings ({negative} with a closed ghost loop)", p.len());
    }

    let coupling = Coupling::new(1, 1, ThetaMatrix::golden(), Convention::Theorem).unwrap();
    let mut rows = Vec::new();
    for (n, m) in [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (3, 0), (2, 1)] {
        let r = expansion_term(n, m, 2, &coupling, &LoopLimits::default()).unwrap();
        println!(
            "(n, m) = ({n}, {m}): {} pairings, value {:.1e}, structurally zero: {}",
            r.pairing_count,
            r.value.norm(),
            r.structurally_zero
        );
        rows.push((n, m, r.pairing_count, r.structurally_zero));
    }
    rows
}

fn main() {
    run();
}

//! The two-loop coefficient: per-channel sums over `0 < ‖q‖∞, ‖r‖∞ ≤ Λ`
//! and the `(q, r) ↦ (−q, −r)` antisymmetry of the summands.

use nctorus::algebra::{Mode, ThetaMatrix};
use nctorus::loops::{two_loop_sum, two_loop_summands, Channel, Convention, Coupling};

pub fn run() -> f64 {
    let mut worst: f64 = 0.0;
    for convention in [Convention::Theorem, Convention::Box] {
        let coupling = Coupling::new(2, 2, ThetaMatrix::golden(), convention).unwrap();
        for channel in [Channel::AaaAaa, Channel::GhostGhost, Channel::Mixed] {
            let r = two_loop_sum(3, &coupling, channel).unwrap();
            println!(
                "{convention:>7} {channel:>11}: value {:.1e}, gross {:.3e}, ratio {:.1e}, {} pairings",
                r.value.norm(),
                r.gross_magnitude,
                r.cancellation_ratio,
                r.pairing_count
            );
            worst = worst.max(r.cancellation_ratio);
        }
    }

    let coupling = Coupling::new(2, 2, ThetaMatrix::golden(), Convention::Theorem).unwrap();
    let (q, r) = (Mode::new(1, 2, -1), Mode::new(-2, 0, 1));
    let plus = two_loop_summands(&coupling, Channel::All, q, r).unwrap();
    let minus = two_loop_summands(&coupling, Channel::All, -q, -r).unwrap();
    let odd = plus.elementary.iter().zip(&minus.elementary).all(|(a, b)| *a == -*b);
    println!("{} elementary terms at (q, r) are exact negatives of those at (−q, −r): {odd}", plus.elementary.len());
    worst
}

fn main() {
    run();
}

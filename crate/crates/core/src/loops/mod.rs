//! Perturbative loop expansion: Feynman rules, Wick pairings and the
//! truncated momentum sums.
//!
//! Vertices carry Fourier labels `(q, r)` and legs with incoming momenta
//! `(q, r − q, −r)`. A pairing joins legs on different vertices; every
//! propagator must see two leg momenta that cancel. Momentum sums run over
//! the sup-norm box `0 < ‖·‖∞ ≤ Λ`, which is closed under `p ↦ −p`, and are
//! accumulated orbit by orbit so that the cancellation under
//! `(q, r) ↦ (−q, −r)` is exact.

mod rules;
mod sum;
mod wick;

pub use rules::{
    propagator_gauge, propagator_ghost, vertex_factor, Convention, Coupling, LegKind, PropagatorKind, PropagatorSpec,
    VertexKind, VertexSpec,
};
pub use sum::{
    evaluate_pairings, expansion_term, two_loop_sum, two_loop_summands, Channel, LoopLimits, LoopReport, Summands,
    WickPairing,
};
pub use wick::{enumerate_pairings, enumerate_pairings_limited, enumerate_pairings_of, LegRef, Pairing};

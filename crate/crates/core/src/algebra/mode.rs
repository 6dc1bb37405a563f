use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A momentum label `k ∈ Z³`, indexing the Weyl element `U_k`.
///
/// Ordering is lexicographic on `(k1, k2, k3)`; every deterministic sum in
/// the crate iterates modes in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mode(pub [i64; 3]);

impl Mode {
    pub const ZERO: Mode = Mode([0, 0, 0]);

    pub const fn new(k1: i64, k2: i64, k3: i64) -> Self {
        Mode([k1, k2, k3])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// Component along axis `mu` (1-based, matching the derivation labels).
    pub fn component(&self, mu: usize) -> i64 {
        self.0[mu - 1]
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Euclidean norm squared `|k|²`.
    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn as_f64(&self) -> [f64; 3] {
        [self.0[0] as f64, self.0[1] as f64, self.0[2] as f64]
    }

    /// All modes with `‖k‖∞ ≤ radius`, in lexicographic order.
    pub fn box_iter(radius: i64) -> impl Iterator<Item = Mode> {
        let r = radius.max(0);
        (-r..=r).flat_map(move |a| (-r..=r).flat_map(move |b| (-r..=r).map(move |c| Mode([a, b, c]))))
    }

    /// Nonzero modes with `‖k‖∞ ≤ radius`, in lexicographic order.
    pub fn punctured_box(radius: i64) -> Vec<Mode> {
        Mode::box_iter(radius).filter(|m| !m.is_zero()).collect()
    }
}

impl Neg for Mode {
    type Output = Mode;
    fn neg(self) -> Mode {
        Mode([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Add for Mode {
    type Output = Mode;
    fn add(self, o: Mode) -> Mode {
        Mode([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Mode {
    type Output = Mode;
    fn sub(self, o: Mode) -> Mode {
        Mode([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl From<[i64; 3]> for Mode {
    fn from(k: [i64; 3]) -> Self {
        Mode(k)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

use serde::{Deserialize, Serialize};

use super::rules::{LegKind, VertexKind, VertexSpec};

/// A leg of a diagram: vertex position and slot (0, 1, 2) within it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LegRef {
    pub vertex: usize,
    pub slot: usize,
}

/// A complete contraction of the legs of a vertex list.
///
/// Each pair joins two legs on different vertices: two gauge legs, or a
/// ghost leg with an antighost leg. `sign` is `(−1)^{#closed ghost loops}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pairing {
    pub pairs: Vec<(LegRef, LegRef)>,
    pub sign: i32,
}

impl Pairing {
    /// Partner of each leg, indexed `[vertex][slot]`.
    pub fn partners(&self, vertex_count: usize) -> Vec<[LegRef; 3]> {
        let blank = LegRef { vertex: usize::MAX, slot: 0 };
        let mut out = vec![[blank; 3]; vertex_count];
        for &(a, b) in &self.pairs {
            out[a.vertex][a.slot] = b;
            out[b.vertex][b.slot] = a;
        }
        out
    }
}

fn compatible(a: LegKind, b: LegKind) -> bool {
    matches!(
        (a, b),
        (LegKind::Gauge, LegKind::Gauge) | (LegKind::Ghost, LegKind::AntiGhost) | (LegKind::AntiGhost, LegKind::Ghost)
    )
}

/// All pairings of the legs of `vertices`, in a fixed order.
///
/// Returns nothing when the gauge legs are odd in number or ghosts and
/// antighosts do not balance.
pub fn enumerate_pairings(vertices: &[VertexKind]) -> Vec<Pairing> {
    enumerate_pairings_limited(vertices, usize::MAX).unwrap_or_default()
}

/// Like [`enumerate_pairings`], giving up with `Err(count)` once more than
/// `ceiling` pairings have been found.
pub fn enumerate_pairings_limited(vertices: &[VertexKind], ceiling: usize) -> Result<Vec<Pairing>, usize> {
    let legs: Vec<(LegRef, LegKind)> = vertices
        .iter()
        .enumerate()
        .flat_map(|(v, k)| k.legs().into_iter().enumerate().map(move |(s, kind)| (LegRef { vertex: v, slot: s }, kind)))
        .collect();
    let count = |k: LegKind| legs.iter().filter(|(_, x)| *x == k).count();
    if count(LegKind::Gauge) % 2 == 1 || count(LegKind::Ghost) != count(LegKind::AntiGhost) {
        return Ok(Vec::new());
    }
    let mut used = vec![false; legs.len()];
    let mut current = Vec::with_capacity(legs.len() / 2);
    let mut out = Vec::new();
    recurse(&legs, &mut used, &mut current, &mut out, ceiling)?;
    for p in &mut out {
        p.sign = ghost_sign(vertices, &p.pairs);
    }
    Ok(out)
}

fn recurse(
    legs: &[(LegRef, LegKind)],
    used: &mut [bool],
    current: &mut Vec<(LegRef, LegRef)>,
    out: &mut Vec<Pairing>,
    ceiling: usize,
) -> Result<(), usize> {
    let Some(i) = used.iter().position(|u| !u) else {
        if out.len() >= ceiling {
            return Err(out.len() + 1);
        }
        out.push(Pairing { pairs: current.clone(), sign: 1 });
        return Ok(());
    };
    used[i] = true;
    let (a, ka) = legs[i];
    for j in i + 1..legs.len() {
        let (b, kb) = legs[j];
        if used[j] || a.vertex == b.vertex || !compatible(ka, kb) {
            continue;
        }
        used[j] = true;
        current.push((a, b));
        recurse(legs, used, current, out, ceiling)?;
        current.pop();
        used[j] = false;
    }
    used[i] = false;
    Ok(())
}

/// `(−1)^{cycles}`, counting the closed loops formed by ghost lines.
fn ghost_sign(vertices: &[VertexKind], pairs: &[(LegRef, LegRef)]) -> i32 {
    // next[v] = vertex reached by following the ghost leg of v to its partner
    let mut next = vec![usize::MAX; vertices.len()];
    for &(a, b) in pairs {
        let kind = |l: LegRef| vertices[l.vertex].legs()[l.slot];
        match (kind(a), kind(b)) {
            (LegKind::Ghost, LegKind::AntiGhost) => next[a.vertex] = b.vertex,
            (LegKind::AntiGhost, LegKind::Ghost) => next[b.vertex] = a.vertex,
            _ => {}
        }
    }
    let mut seen = vec![false; vertices.len()];
    let mut cycles = 0;
    for start in 0..vertices.len() {
        if seen[start] || next[start] == usize::MAX {
            continue;
        }
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = next[v];
        }
        cycles += 1;
    }
    if cycles % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Convenience wrapper taking full vertex specs.
pub fn enumerate_pairings_of(vertices: &[VertexSpec]) -> Vec<Pairing> {
    let kinds: Vec<VertexKind> = vertices.iter().map(|v| v.kind).collect();
    enumerate_pairings(&kinds)
}

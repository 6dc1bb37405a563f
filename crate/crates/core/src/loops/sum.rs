use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rules::{
    gauge_propagator_unchecked, ghost_propagator_unchecked, leg_momenta, vertex_scalar, Convention, Coupling, LegKind,
    PropagatorKind, PropagatorSpec, VertexKind, VertexSpec,
};
use super::wick::{enumerate_pairings_limited, LegRef, Pairing};
use crate::algebra::Mode;
use crate::error::LoopError;
use crate::spin::EPSILON_TERMS;

/// Vertex content of a two-vertex diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    #[serde(rename = "aaa-aaa")]
    AaaAaa,
    #[serde(rename = "ghost-ghost")]
    GhostGhost,
    #[serde(rename = "mixed")]
    Mixed,
    #[serde(rename = "all")]
    All,
}

impl Channel {
    /// `(gauge vertices, ghost vertices)`; `None` for [`Channel::All`].
    pub fn content(self) -> Option<(usize, usize)> {
        match self {
            Channel::AaaAaa => Some((2, 0)),
            Channel::GhostGhost => Some((0, 2)),
            Channel::Mixed => Some((1, 1)),
            Channel::All => None,
        }
    }

    fn parts(self) -> Vec<Channel> {
        match self {
            Channel::All => vec![Channel::AaaAaa, Channel::GhostGhost, Channel::Mixed],
            c => vec![c],
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::AaaAaa => "aaa-aaa",
            Channel::GhostGhost => "ghost-ghost",
            Channel::Mixed => "mixed",
            Channel::All => "all",
        })
    }
}

impl FromStr for Channel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "aaa-aaa" => Ok(Channel::AaaAaa),
            "ghost-ghost" => Ok(Channel::GhostGhost),
            "mixed" => Ok(Channel::Mixed),
            "all" => Ok(Channel::All),
            _ => Err(format!("unknown channel `{s}` (expected aaa-aaa, ghost-ghost, mixed or all)")),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Theorem => "theorem",
            Convention::Box => "box",
        })
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "theorem" => Ok(Convention::Theorem),
            "box" => Ok(Convention::Box),
            _ => Err(format!("unknown convention `{s}` (expected theorem or box)")),
        }
    }
}

/// Guards against combinatorial blow-up in [`expansion_term`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoopLimits {
    pub pairing_ceiling: usize,
    /// Bound on (momentum configurations × index assignments).
    pub work_ceiling: f64,
}

impl Default for LoopLimits {
    fn default() -> Self {
        LoopLimits { pairing_ceiling: 100_000, work_ceiling: 2e9 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LoopReport {
    /// Number of gauge vertices; `None` when several contents are summed.
    pub order: Option<usize>,
    /// Number of ghost vertices; `None` when several contents are summed.
    pub ghosts: Option<usize>,
    pub channel: Option<Channel>,
    pub cutoff: i64,
    pub level: i64,
    pub size: usize,
    pub convention: Convention,
    pub value: Complex64,
    pub term_count: u64,
    pub gross_magnitude: f64,
    pub cancellation_ratio: f64,
    pub pairing_count: usize,
    /// No admissible pairing exists, so the value is zero without any sum.
    pub structurally_zero: bool,
    /// Sum over configurations whose first vertex has `q` lexicographically
    /// positive.
    pub half_space_sum: Complex64,
    /// Sum over the mirror image of that half-space.
    pub mirror_sum: Complex64,
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    value: Complex64,
    plus: Complex64,
    minus: Complex64,
    gross: f64,
    terms: u64,
}

impl Tally {
    fn merge(&mut self, o: &Tally) {
        self.value += o.value;
        self.plus += o.plus;
        self.minus += o.minus;
        self.gross += o.gross;
        self.terms += o.terms;
    }
}

/// One pairing prepared for repeated evaluation.
struct Plan {
    kinds: Vec<VertexKind>,
    partners: Vec<[LegRef; 3]>,
    /// `sign / (n! m!)`.
    weight: f64,
    /// Index slot of each gauge leg, `usize::MAX` for ghost legs.
    slots: Vec<[usize; 3]>,
    gauge_slots: usize,
    gauge_pairs: Vec<(LegRef, LegRef)>,
    /// `(ghost leg, antighost leg)`.
    ghost_pairs: Vec<(LegRef, LegRef)>,
    /// Legs whose partner sits on an earlier vertex.
    known: Vec<[bool; 3]>,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

impl Plan {
    fn new(kinds: &[VertexKind], pairing: &Pairing, symmetry: f64) -> Self {
        let partners = pairing.partners(kinds.len());
        let mut slots = vec![[usize::MAX; 3]; kinds.len()];
        let mut gauge_slots = 0;
        for (v, k) in kinds.iter().enumerate() {
            for (s, leg) in k.legs().into_iter().enumerate() {
                if leg == LegKind::Gauge {
                    slots[v][s] = gauge_slots;
                    gauge_slots += 1;
                }
            }
        }
        let kind_of = |l: LegRef| kinds[l.vertex].legs()[l.slot];
        let mut gauge_pairs = Vec::new();
        let mut ghost_pairs = Vec::new();
        for &(a, b) in &pairing.pairs {
            match (kind_of(a), kind_of(b)) {
                (LegKind::Gauge, _) => gauge_pairs.push((a, b)),
                (LegKind::Ghost, _) => ghost_pairs.push((a, b)),
                _ => ghost_pairs.push((b, a)),
            }
        }
        let known = partners.iter().enumerate().map(|(v, p)| p.map(|l| l.vertex < v)).collect();
        Plan {
            kinds: kinds.to_vec(),
            partners,
            weight: pairing.sign as f64 * symmetry,
            slots,
            gauge_slots,
            gauge_pairs,
            ghost_pairs,
            known,
        }
    }

    fn leg_momentum(moms: &[(Mode, Mode)], l: LegRef) -> Mode {
        let (q, r) = moms[l.vertex];
        leg_momenta(q, r)[l.slot]
    }

    /// Estimated momentum configurations times index assignments.
    fn work(&self, box_len: f64) -> f64 {
        let configs: f64 = self
            .known
            .iter()
            .map(|k| match k.iter().filter(|x| **x).count() {
                0 => box_len * (box_len - 1.0),
                1 => box_len,
                _ => 1.0,
            })
            .product();
        let combos: f64 =
            self.kinds.iter().map(|k| if *k == VertexKind::GaugeTriple { 6.0 } else { 3.0 }).product();
        configs * combos
    }

    /// Value of one momentum configuration, and the sum of the moduli of
    /// its elementary terms (one per index assignment).
    fn evaluate(&self, moms: &[(Mode, Mode)], coupling: &Coupling, scratch: &mut Scratch) -> (Complex64, f64) {
        let mut scalar = Complex64::new(self.weight, 0.0);
        for (k, &(q, r)) in self.kinds.iter().zip(moms) {
            scalar *= vertex_scalar(*k, q, r, coupling);
        }
        if scalar == Complex64::new(0.0, 0.0) && !scratch.collect {
            return (scalar, 0.0);
        }
        for &(c, _) in &self.ghost_pairs {
            scalar *= ghost_propagator_unchecked(Self::leg_momentum(moms, c));
        }
        scratch.props.clear();
        for &(_, y) in &self.gauge_pairs {
            scratch.props.push(gauge_propagator_unchecked(Self::leg_momentum(moms, y), coupling.level));
        }
        scratch.idx.clear();
        scratch.idx.resize(self.gauge_slots, 0);
        let first = scratch.terms.len();
        let (sum, abs) = self.contract(0, moms, scratch, 1.0);
        for t in &mut scratch.terms[first..] {
            *t *= scalar;
        }
        (scalar * sum, scalar.norm() * abs)
    }

    fn contract(&self, v: usize, moms: &[(Mode, Mode)], scratch: &mut Scratch, weight: f64) -> (f64, f64) {
        if v == self.kinds.len() {
            let mut p = weight;
            for (g, &(x, y)) in scratch.props.iter().zip(&self.gauge_pairs) {
                p *= g[scratch.idx[self.slots[x.vertex][x.slot]]][scratch.idx[self.slots[y.vertex][y.slot]]];
            }
            if scratch.collect {
                scratch.terms.push(Complex64::new(p, 0.0));
            }
            return (p, p.abs());
        }
        let slots = self.slots[v];
        let (mut acc, mut abs) = (0.0, 0.0);
        let mut add = |(a, b): (f64, f64)| {
            acc += a;
            abs += b;
        };
        match self.kinds[v] {
            VertexKind::GaugeTriple => {
                for (perm, sign) in EPSILON_TERMS {
                    for s in 0..3 {
                        scratch.idx[slots[s]] = perm[s];
                    }
                    add(self.contract(v + 1, moms, scratch, weight * sign));
                }
            }
            VertexKind::GhostTriple => {
                let q = moms[v].0.as_f64();
                for (mu, &qm) in q.iter().enumerate() {
                    if qm == 0.0 {
                        continue;
                    }
                    scratch.idx[slots[1]] = mu;
                    add(self.contract(v + 1, moms, scratch, weight * qm));
                }
            }
        }
        (acc, abs)
    }

    /// Visits every momentum assignment of vertices `v..` consistent with
    /// the pairing and the vertices already fixed in `moms[..v]`.
    fn walk<F: FnMut(&[(Mode, Mode)])>(&self, v: usize, moms: &mut [(Mode, Mode)], modes: &[Mode], f: &mut F) {
        if v == self.kinds.len() {
            f(moms);
            return;
        }
        let required: [Option<Mode>; 3] = std::array::from_fn(|s| {
            self.known[v][s].then(|| -Self::leg_momentum(moms, self.partners[v][s]))
        });
        let ok = |q: Mode, r: Mode| !q.is_zero() && !r.is_zero() && q != r;
        let mut visit = |q: Mode, r: Mode, moms: &mut [(Mode, Mode)]| {
            let legs = leg_momenta(q, r);
            if ok(q, r) && required.iter().zip(legs).all(|(req, l)| req.is_none_or(|m| m == l)) {
                moms[v] = (q, r);
                self.walk(v + 1, moms, modes, f);
            }
        };
        match required {
            [None, None, None] => {
                for &q in modes {
                    for &r in modes {
                        visit(q, r, moms);
                    }
                }
            }
            [Some(q), None, None] => modes.iter().for_each(|&r| visit(q, r, moms)),
            [None, None, Some(mr)] => modes.iter().for_each(|&q| visit(q, -mr, moms)),
            [None, Some(p), None] => modes.iter().for_each(|&q| visit(q, q + p, moms)),
            [Some(q), Some(p), _] => visit(q, q + p, moms),
            [Some(q), None, Some(mr)] => visit(q, -mr, moms),
            [None, Some(p), Some(mr)] => visit(-mr - p, -mr, moms),
        }
    }

    /// Sums the orbits `{c, −c}` whose first vertex has `q = q0`.
    fn tally_at(&self, q0: Mode, coupling: &Coupling, modes: &[Mode]) -> Tally {
        let mut t = Tally::default();
        let mut scratch = Scratch::default();
        let mut moms = vec![(Mode::ZERO, Mode::ZERO); self.kinds.len()];
        let mut neg = moms.clone();
        for &r in modes {
            if r == q0 {
                continue;
            }
            moms[0] = (q0, r);
            self.walk(1, &mut moms, modes, &mut |m| {
                let (plus, gp) = self.evaluate(m, coupling, &mut scratch);
                for (slot, &(q, r)) in neg.iter_mut().zip(m) {
                    *slot = (-q, -r);
                }
                let (minus, gm) = self.evaluate(&neg, coupling, &mut scratch);
                t.value += plus + minus;
                t.plus += plus;
                t.minus += minus;
                t.gross += gp + gm;
                t.terms += 2;
            });
        }
        t
    }
}

#[derive(Default)]
struct Scratch {
    props: Vec<[[f64; 3]; 3]>,
    idx: Vec<usize>,
    /// Record every elementary term in `terms`.
    collect: bool,
    terms: Vec<Complex64>,
}

fn lex_positive(m: Mode) -> bool {
    m > Mode::ZERO
}

fn vertex_list(n: usize, m: usize) -> Vec<VertexKind> {
    let mut v = vec![VertexKind::GaugeTriple; n];
    v.extend(std::iter::repeat_n(VertexKind::GhostTriple, m));
    v
}

fn plans(n: usize, m: usize, limits: &LoopLimits) -> Result<Vec<Plan>, LoopError> {
    let kinds = vertex_list(n, m);
    let pairings = enumerate_pairings_limited(&kinds, limits.pairing_ceiling)
        .map_err(|count| LoopError::PairingCeiling { count, ceiling: limits.pairing_ceiling })?;
    let symmetry = 1.0 / (factorial(n) * factorial(m));
    Ok(pairings.iter().map(|p| Plan::new(&kinds, p, symmetry)).collect())
}

fn finish(n: usize, m: usize, cutoff: i64, coupling: &Coupling, pairing_count: usize, t: Tally) -> LoopReport {
    let ratio = if t.gross > 0.0 { (t.value.norm() / t.gross).min(1.0) } else { 0.0 };
    LoopReport {
        order: Some(n),
        ghosts: Some(m),
        channel: None,
        cutoff,
        level: coupling.level,
        size: coupling.size,
        convention: coupling.convention,
        value: t.value,
        term_count: t.terms,
        gross_magnitude: t.gross,
        cancellation_ratio: ratio,
        pairing_count,
        structurally_zero: pairing_count == 0,
        half_space_sum: t.plus,
        mirror_sum: t.minus,
    }
}

/// Full Wick evaluation of the term with `n` gauge vertices and `m` ghost
/// vertices.
///
/// Free loop momenta range over `0 < ‖·‖∞ ≤ cutoff`; momenta fixed by
/// conservation are not truncated. Each configuration is summed together
/// with its global negation, so the `(q, r) ↦ (−q, −r)` involution cancels
/// pairwise.
pub fn expansion_term(
    n: usize,
    m: usize,
    cutoff: i64,
    coupling: &Coupling,
    limits: &LoopLimits,
) -> Result<LoopReport, LoopError> {
    if cutoff < 1 {
        return Err(LoopError::CutoffTooSmall { min: 1, got: cutoff });
    }
    let plans = plans(n, m, limits)?;
    let modes: Vec<Mode> = Mode::punctured_box(cutoff);
    let work: f64 = plans.iter().map(|p| p.work(modes.len() as f64)).sum();
    if work > limits.work_ceiling {
        return Err(LoopError::WorkCeiling { estimate: work, ceiling: limits.work_ceiling });
    }
    let firsts: Vec<Mode> = modes.iter().copied().filter(|q| lex_positive(*q)).collect();
    let tasks: Vec<(usize, Mode)> = (0..plans.len()).flat_map(|p| firsts.iter().map(move |&q| (p, q))).collect();
    let parts: Vec<Tally> = tasks.par_iter().map(|&(p, q)| plans[p].tally_at(q, coupling, &modes)).collect();
    let mut total = Tally::default();
    for t in &parts {
        total.merge(t);
    }
    Ok(finish(n, m, cutoff, coupling, plans.len(), total))
}

/// The two-vertex (two-loop) contribution for the given channel, summed
/// over `0 < ‖q‖∞, ‖r‖∞ ≤ cutoff`, `q ≠ r`, with factor `1/2!`.
pub fn two_loop_sum(cutoff: i64, coupling: &Coupling, channel: Channel) -> Result<LoopReport, LoopError> {
    if cutoff < 2 {
        return Err(LoopError::CutoffTooSmall { min: 2, got: cutoff });
    }
    let mut reports = Vec::new();
    for part in channel.parts() {
        let (n, m) = part.content().expect("single channel");
        reports.push(expansion_term(n, m, cutoff, coupling, &LoopLimits::default())?);
    }
    let mut out = if reports.len() == 1 {
        reports.pop().expect("one report")
    } else {
        let mut t = Tally::default();
        let mut pairings = 0;
        for r in &reports {
            t.merge(&Tally {
                value: r.value,
                plus: r.half_space_sum,
                minus: r.mirror_sum,
                gross: r.gross_magnitude,
                terms: r.term_count,
            });
            pairings += r.pairing_count;
        }
        let mut all = finish(0, 0, cutoff, coupling, pairings, t);
        all.order = None;
        all.ghosts = None;
        all
    };
    out.channel = Some(channel);
    Ok(out)
}

/// Summands of a two-vertex channel with the first vertex at `(q, r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Summands {
    /// One fully contracted value per pairing, in pairing order.
    pub contracted: Vec<Complex64>,
    /// Every elementary term: pairing, then index assignment.
    pub elementary: Vec<Complex64>,
}

/// Channel `All` concatenates its parts.
pub fn two_loop_summands(coupling: &Coupling, channel: Channel, q: Mode, r: Mode) -> Result<Summands, LoopError> {
    VertexSpec::new(VertexKind::GaugeTriple, q, r)?;
    let mut contracted = Vec::new();
    let mut scratch = Scratch { collect: true, ..Scratch::default() };
    for part in channel.parts() {
        let (n, m) = part.content().expect("single channel");
        for plan in plans(n, m, &LoopLimits::default())? {
            let mut moms = vec![(Mode::ZERO, Mode::ZERO); plan.kinds.len()];
            moms[0] = (q, r);
            let mut acc = Complex64::new(0.0, 0.0);
            plan.walk(1, &mut moms, &[], &mut |c| acc += plan.evaluate(c, coupling, &mut scratch).0);
            contracted.push(acc);
        }
    }
    Ok(Summands { contracted, elementary: scratch.terms })
}

/// A pairing of a two-vertex channel evaluated at first-vertex labels
/// `(q, r)`, with the propagators it uses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WickPairing {
    pub vertices: Vec<VertexSpec>,
    pub pairs: Vec<(LegRef, LegRef)>,
    pub propagators: Vec<PropagatorSpec>,
    pub sign: i32,
    pub value: Complex64,
}

/// Evaluates every pairing of `(n, m)` with all vertex labels given.
/// Pairings inconsistent with the labels (a propagator whose two leg
/// momenta do not cancel) are skipped.
pub fn evaluate_pairings(vertices: &[VertexSpec], coupling: &Coupling) -> Vec<WickPairing> {
    let kinds: Vec<VertexKind> = vertices.iter().map(|v| v.kind).collect();
    let n = kinds.iter().filter(|k| **k == VertexKind::GaugeTriple).count();
    let symmetry = 1.0 / (factorial(n) * factorial(kinds.len() - n));
    let moms: Vec<(Mode, Mode)> = vertices.iter().map(|v| (v.q, v.r)).collect();
    let mut scratch = Scratch::default();
    let mut out = Vec::new();
    for pairing in enumerate_pairings_limited(&kinds, usize::MAX).unwrap_or_default() {
        let conserved = pairing
            .pairs
            .iter()
            .all(|&(a, b)| Plan::leg_momentum(&moms, a) + Plan::leg_momentum(&moms, b) == Mode::ZERO);
        if !conserved {
            continue;
        }
        let plan = Plan::new(&kinds, &pairing, symmetry);
        let propagators = pairing
            .pairs
            .iter()
            .map(|&(a, b)| {
                let kind = if kinds[a.vertex].legs()[a.slot] == LegKind::Gauge {
                    PropagatorKind::Gauge
                } else {
                    PropagatorKind::Ghost
                };
                PropagatorSpec { kind, momentum: Plan::leg_momentum(&moms, b) }
            })
            .collect();
        let value = plan.evaluate(&moms, coupling, &mut scratch).0;
        out.push(WickPairing { vertices: vertices.to_vec(), pairs: pairing.pairs, propagators, sign: pairing.sign, value });
    }
    out
}

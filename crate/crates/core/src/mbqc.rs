//! Measurement patterns on cluster states: extraction from graph-like
//! diagrams, the Deutsch-Jozsa patterns, the 6×6 lattice embedding, and
//! execution by post-selection or by sampling with byproduct correction.
//!
//! A qubit measured in the XY plane at angle `α` with outcome 0 is the
//! effect `⟨0| + e^{−iα}⟨1|`, drawn as a Z(α) spider. A qubit measured in
//! the computational basis with outcome 0 is drawn as a Z(0) spider capped
//! by an X(0) state.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::diagram::{EdgeKind, NodeId, Spider, SpiderKind, ZxDiagram};
use crate::error::{Error, Result};
use crate::oracle::{classify, parity_name, phase_polynomial, two_qubit_spider_angles, BooleanFunction, Verdict};
use crate::phase::Phase;
use crate::rewrite::{decouple_x_state, fuse_spiders, is_graph_like, local_complement};
use crate::tensor::{evaluate_with_stats, magnitude_bound, ZERO_FLOOR};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// XY-plane measurement at the qubit's angle.
    #[default]
    Xy,
    /// Computational-basis measurement; removes the qubit from the cluster.
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qubit {
    pub id: usize,
    pub angle: Phase,
    #[serde(default, skip_serializing_if = "is_xy")]
    pub basis: Basis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn is_xy(b: &Basis) -> bool {
    *b == Basis::Xy
}

impl Qubit {
    pub fn new(id: usize, angle: Phase) -> Qubit {
        Qubit { id, angle, basis: Basis::Xy, label: None }
    }

    pub fn labeled(id: usize, angle: Phase, label: impl Into<String>) -> Qubit {
        Qubit { label: Some(label.into()), ..Qubit::new(id, angle) }
    }

    pub fn z_basis(id: usize) -> Qubit {
        Qubit { basis: Basis::Z, ..Qubit::new(id, Phase::ZERO) }
    }
}

/// A cluster state plus one measurement per qubit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementPattern {
    qubits: Vec<Qubit>,
    edges: Vec<(usize, usize)>,
    order: Vec<usize>,
    readouts: Vec<usize>,
}

impl MeasurementPattern {
    /// Builds and validates a pattern. Edges are normalized to `(low, high)`
    /// and sorted; qubits are sorted by id.
    pub fn new(mut qubits: Vec<Qubit>, edges: Vec<(usize, usize)>, order: Vec<usize>, readouts: Vec<usize>) -> Result<MeasurementPattern> {
        qubits.sort_by_key(|q| q.id);
        let ids: BTreeSet<usize> = qubits.iter().map(|q| q.id).collect();
        if ids.len() != qubits.len() {
            return Err(Error::InvalidPattern("duplicate qubit id".into()));
        }
        let mut norm = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidPattern(format!("self-edge on qubit {a}")));
            }
            for v in [a, b] {
                if !ids.contains(&v) {
                    return Err(Error::InvalidPattern(format!("edge references unknown qubit {v}")));
                }
            }
            if !norm.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidPattern(format!("duplicate edge {a}-{b}")));
            }
        }
        let order_set: BTreeSet<usize> = order.iter().copied().collect();
        if order.len() != ids.len() || order_set != ids {
            return Err(Error::InvalidPattern("order must list every qubit exactly once".into()));
        }
        if let Some(r) = readouts.iter().find(|r| !ids.contains(r)) {
            return Err(Error::InvalidPattern(format!("readout {r} is not a qubit")));
        }
        Ok(MeasurementPattern { qubits, edges: norm.into_iter().collect(), order, readouts })
    }

    pub fn qubits(&self) -> &[Qubit] {
        &self.qubits
    }

    pub fn qubit(&self, id: usize) -> Option<&Qubit> {
        self.qubits.binary_search_by_key(&id, |q| q.id).ok().map(|i| &self.qubits[i])
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn readouts(&self) -> &[usize] {
        &self.readouts
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == id { Some(b) } else if b == id { Some(a) } else { None })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("pattern serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<MeasurementPattern> {
        let raw: MeasurementPattern = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        MeasurementPattern::new(raw.qubits, raw.edges, raw.order, raw.readouts)
    }

    /// DOT rendering of the cluster graph; edges are dashed like Hadamard
    /// edges in diagrams.
    pub fn to_dot(&self) -> String {
        pattern_to_diagram(self).to_dot()
    }
}

/// Reads a closed graph-like diagram as a pattern: spiders become qubits
/// measured at their phase, Hadamard edges become cluster edges.
pub fn pattern_from_graph_like(d: &ZxDiagram) -> Result<MeasurementPattern> {
    if !d.is_closed() {
        return Err(Error::NotGraphLike("diagram has open legs".into()));
    }
    if !is_graph_like(d) {
        return Err(Error::NotGraphLike("needs Z spiders joined by single Hadamard edges".into()));
    }
    let qubits: Vec<Qubit> = d
        .spiders()
        .map(|(id, s)| Qubit { id: id.0, angle: s.phase, basis: Basis::Xy, label: s.label.clone() })
        .collect();
    let edges = d.edges().map(|(_, e)| (e.a.0, e.b.0)).collect();
    let order: Vec<usize> = qubits.iter().map(|q| q.id).collect();
    MeasurementPattern::new(qubits, edges, order.clone(), order)
}

/// The closed diagram of a pattern with every measurement post-selected on
/// outcome 0. Spider ids equal qubit ids.
pub fn pattern_to_diagram(p: &MeasurementPattern) -> ZxDiagram {
    let mut d = ZxDiagram::empty();
    for q in &p.qubits {
        let phase = match q.basis {
            Basis::Xy => q.angle,
            Basis::Z => Phase::ZERO,
        };
        d.add_spider_at(NodeId(q.id), Spider { kind: SpiderKind::Z, phase, label: q.label.clone() });
    }
    for &(a, b) in &p.edges {
        d.add_edge(NodeId(a), NodeId(b), EdgeKind::Hadamard).expect("validated pattern");
    }
    for q in p.qubits.iter().filter(|q| q.basis == Basis::Z) {
        let cap = d.add_spider(SpiderKind::X, Phase::ZERO);
        d.add_edge(NodeId(q.id), cap, EdgeKind::Plain).expect("validated pattern");
    }
    d
}

/// Qubit names of the eleven-qubit pattern, in id order.
pub const DJ3_NAMES: [&str; 11] = ["T1", "T2", "T3", "T4", "T5", "M1", "M2", "M3", "B1", "B2", "B3"];

/// Cluster edges of the eleven-qubit pattern, as indices into [`DJ3_NAMES`].
pub const DJ3_EDGES: [(usize, usize); 12] = [
    (0, 1),
    (1, 2),
    (1, 8),
    (2, 6),
    (2, 3),
    (3, 4),
    (3, 10),
    (5, 6),
    (6, 7),
    (7, 9),
    (8, 9),
    (9, 10),
];

/// Parity term measured by each named qubit; `None` marks a fixed angle 0.
pub const DJ3_PARAMS: [Option<u32>; 11] = [
    Some(0b100),
    None,
    Some(0b001),
    None,
    Some(0b111),
    Some(0b010),
    None,
    Some(0b011),
    Some(0b101),
    None,
    Some(0b110),
];

/// The eleven-qubit cluster pattern of the three-bit algorithm, measured at
/// the phase-polynomial coefficients of `f`.
pub fn dj_pattern_3q(f: &BooleanFunction) -> Result<MeasurementPattern> {
    if f.n() != 3 {
        return Err(Error::Unsupported(format!("three-qubit pattern for n = {}", f.n())));
    }
    let poly = phase_polynomial(f)?;
    let qubits = DJ3_PARAMS
        .iter()
        .enumerate()
        .map(|(id, p)| match p {
            Some(mask) => Qubit::labeled(id, poly.coefficient(*mask), parity_name(*mask)),
            None => Qubit::new(id, Phase::ZERO),
        })
        .collect();
    let all: Vec<usize> = (0..11).collect();
    MeasurementPattern::new(qubits, DJ3_EDGES.to_vec(), all.clone(), all)
}

/// Two three-qubit chains measured at `(0, α₀, α₁)` and `(0, α₂, α₃)`.
pub fn dj_pattern_2q(f: &BooleanFunction) -> Result<MeasurementPattern> {
    let a = two_qubit_spider_angles(f)?;
    chains_2q(a)
}

/// The two-chain pattern for explicit angles.
pub fn chains_2q(a: [Phase; 4]) -> Result<MeasurementPattern> {
    let qubits = vec![
        Qubit::new(0, Phase::ZERO),
        Qubit::new(1, a[0]),
        Qubit::new(2, a[1]),
        Qubit::new(3, Phase::ZERO),
        Qubit::new(4, a[2]),
        Qubit::new(5, a[3]),
    ];
    MeasurementPattern::new(qubits, vec![(0, 1), (1, 2), (3, 4), (4, 5)], (0..6).collect(), vec![2, 5])
}

/// One qubit measured at `π·(f(0) ⊕ f(1))`.
pub fn dj_pattern_1q(f: &BooleanFunction) -> Result<MeasurementPattern> {
    if f.n() != 1 {
        return Err(Error::Unsupported(format!("one-qubit pattern for n = {}", f.n())));
    }
    classify(f)?;
    let angle = if f.value(0) != f.value(1) { Phase::PI } else { Phase::ZERO };
    MeasurementPattern::new(vec![Qubit::new(0, angle)], vec![], vec![0], vec![0])
}

/// The Deutsch-Jozsa pattern for n = 1, 2 or 3.
pub fn dj_pattern(f: &BooleanFunction) -> Result<MeasurementPattern> {
    match f.n() {
        1 => dj_pattern_1q(f),
        2 => dj_pattern_2q(f),
        3 => dj_pattern_3q(f),
        n => Err(Error::Unsupported(format!("patterns for n = {n}"))),
    }
}

/// Result of running a pattern.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PatternOutcome {
    pub verdict: Verdict,
    /// Post-selected amplitude (unnormalized diagram scalar).
    pub amplitude: Complex64,
    /// Bound on any amplitude of the same diagram; the zero floor is
    /// taken relative to it.
    pub magnitude_bound: f64,
    pub max_rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<ShotCounts>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ShotCounts {
    pub shots: u64,
    pub constant: u64,
    pub balanced: u64,
}

/// Evaluates the pattern with every outcome post-selected to 0. A nonzero
/// amplitude means every measurement can succeed, so `f` is constant.
pub fn run_postselected(p: &MeasurementPattern) -> PatternOutcome {
    let d = pattern_to_diagram(p);
    let (t, stats) = evaluate_with_stats(&d);
    let amplitude = t.scalar_value().expect("pattern diagrams are closed");
    let bound = magnitude_bound(&d);
    let verdict = if amplitude.norm() > ZERO_FLOOR * bound { Verdict::Constant } else { Verdict::Balanced };
    PatternOutcome { verdict, amplitude, magnitude_bound: bound, max_rank: stats.max_rank, shots: None }
}

/// Chains in measurement order. Every qubit after the first of its chain
/// must have exactly one earlier-measured neighbor, and each chain must
/// start at an end.
fn chains(p: &MeasurementPattern) -> Result<Vec<Vec<usize>>> {
    let mut seen = BTreeSet::new();
    let mut chain_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &q in &p.order {
        let nb = p.neighbors(q);
        if nb.len() > 2 {
            return Err(Error::NotChain(format!("qubit {q} has {} neighbors", nb.len())));
        }
        let earlier: Vec<usize> = nb.iter().copied().filter(|n| seen.contains(n)).collect();
        match earlier.as_slice() {
            [] => {
                if nb.len() > 1 {
                    return Err(Error::NotChain(format!("qubit {q} starts a chain in its middle")));
                }
                chain_of.insert(q, out.len());
                out.push(vec![q]);
            }
            [prev] => {
                let c = chain_of[prev];
                if out[c].last() != Some(prev) {
                    return Err(Error::NotChain(format!("qubit {q} branches off qubit {prev}")));
                }
                chain_of.insert(q, c);
                out[c].push(q);
            }
            _ => return Err(Error::NotChain(format!("qubit {q} closes a cycle"))),
        }
        seen.insert(q);
    }
    Ok(out)
}

/// Largest pattern [`run_sampled`] simulates as a state vector.
pub const MAX_SAMPLED_QUBITS: usize = 20;

/// Samples the pattern shot by shot on a state vector. Outcomes are random;
/// along each chain, an outcome `s` flips the sign of the next angle and
/// queues a Z correction on the qubit after that, and the corrected outcome
/// of each readout qubit is its raw outcome XOR the queued Z. All corrected
/// readouts zero means constant.
pub fn run_sampled(p: &MeasurementPattern, seed: u64, shots: u64) -> Result<PatternOutcome> {
    if p.qubits.iter().any(|q| q.basis != Basis::Xy) {
        return Err(Error::Unsupported("sampling needs XY-plane measurements".into()));
    }
    let chains = chains(p)?;
    if p.len() > MAX_SAMPLED_QUBITS {
        return Err(Error::Unsupported(format!("{} qubits exceed the sampling limit {MAX_SAMPLED_QUBITS}", p.len())));
    }
    let mut pos_in_chain = BTreeMap::new();
    for (c, chain) in chains.iter().enumerate() {
        for (k, &q) in chain.iter().enumerate() {
            pos_in_chain.insert(q, (c, k));
        }
    }
    let readouts: BTreeSet<usize> = p.readouts.iter().copied().collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut counts = ShotCounts::default();
    let initial = cluster_state(p);
    for _ in 0..shots {
        let mut state = initial.clone();
        let mut live: Vec<usize> = p.qubits.iter().map(|q| q.id).collect();
        // corrected outcomes per chain position
        let mut clean: Vec<Vec<bool>> = chains.iter().map(|c| vec![false; c.len()]).collect();
        let mut balanced = false;
        for &q in &p.order {
            let (c, k) = pos_in_chain[&q];
            let x_flip = k >= 1 && clean[c][k - 1];
            let z_flip = k >= 2 && clean[c][k - 2];
            let angle = p.qubit(q).unwrap().angle;
            let angle = if x_flip { -angle } else { angle };
            let pos = live.iter().position(|&l| l == q).unwrap();
            let raw = measure(&mut state, live.len(), pos, angle, &mut rng);
            live.remove(pos);
            clean[c][k] = raw ^ z_flip;
            if readouts.contains(&q) && clean[c][k] {
                balanced = true;
            }
        }
        counts.shots += 1;
        if balanced {
            counts.balanced += 1;
        } else {
            counts.constant += 1;
        }
    }
    let mut outcome = run_postselected(p);
    outcome.verdict = if counts.balanced > counts.constant { Verdict::Balanced } else { Verdict::Constant };
    outcome.shots = Some(counts);
    Ok(outcome)
}

/// `Π CZ |+⟩^{⊗n}` over qubits in id order (first id most significant).
fn cluster_state(p: &MeasurementPattern) -> Vec<Complex64> {
    let n = p.len();
    let index: BTreeMap<usize, usize> = p.qubits.iter().enumerate().map(|(i, q)| (q.id, i)).collect();
    let amp = (1.0 / (1u64 << n) as f64).sqrt();
    (0..1usize << n)
        .map(|s| {
            let bit = |q: usize| (s >> (n - 1 - index[&q])) & 1;
            let parity = p.edges.iter().filter(|&&(a, b)| bit(a) & bit(b) == 1).count();
            Complex64::new(if parity % 2 == 0 { amp } else { -amp }, 0.0)
        })
        .collect()
}

/// Measures qubit `pos` of an `n`-qubit state in the basis
/// `|0⟩ ± e^{iα}|1⟩`, samples the outcome, and removes the qubit.
fn measure(state: &mut Vec<Complex64>, n: usize, pos: usize, angle: Phase, rng: &mut StdRng) -> bool {
    let shift = n - 1 - pos;
    let low = (1usize << shift) - 1;
    let w = angle.unit().conj();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let project = |sign: f64| -> Vec<Complex64> {
        (0..state.len() / 2)
            .map(|r| {
                let i0 = ((r & !low) << 1) | (r & low);
                let i1 = i0 | (1 << shift);
                (state[i0] + w * sign * state[i1]) * h
            })
            .collect()
    };
    let plus = project(1.0);
    let p0: f64 = plus.iter().map(|z| z.norm_sqr()).sum();
    let outcome = rng.gen::<f64>() >= p0;
    let mut next = if outcome { project(-1.0) } else { plus };
    let norm: f64 = next.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in &mut next {
            *z /= norm;
        }
    }
    *state = next;
    outcome
}

/// Side length of the square lattice.
pub const LATTICE_SIDE: usize = 6;

/// Lattice cell of each qubit of the eleven-qubit pattern, by [`DJ3_NAMES`]
/// index.
pub const LATTICE_KEPT: [(usize, usize); 11] = [
    (0, 0),
    (1, 0),
    (1, 2),
    (3, 2),
    (3, 3),
    (0, 4),
    (1, 4),
    (4, 5),
    (5, 0),
    (5, 2),
    (4, 2),
];

/// Bridge cells measured at π/2. A bridge of one spare leaves −π/2 on both
/// ends; a bridge of three leaves a clean edge.
pub const LATTICE_SPARES: [(usize, usize); 13] = [
    (1, 1),
    (2, 2),
    (1, 3),
    (5, 1),
    (2, 0),
    (3, 0),
    (4, 0),
    (1, 5),
    (2, 5),
    (3, 5),
    (5, 5),
    (5, 4),
    (5, 3),
];

/// Multiples of π/2 added to kept qubits to cancel single-spare bridges.
const LATTICE_OFFSETS: [i64; 11] = [0, 1, 3, 1, 0, 0, 1, 0, 1, 1, 0];

pub fn lattice_id(row: usize, col: usize) -> usize {
    row * LATTICE_SIDE + col
}

/// The three-bit algorithm on a 6×6 cluster. Kept qubits carry the
/// eleven-qubit pattern's angles (plus bridge offsets), spares carry π/2,
/// and every other qubit is measured in the computational basis.
pub fn lattice_pattern_3q(f: &BooleanFunction) -> Result<MeasurementPattern> {
    let small = dj_pattern_3q(f)?;
    let mut qubits: BTreeMap<usize, Qubit> = BTreeMap::new();
    for (k, &(r, c)) in LATTICE_KEPT.iter().enumerate() {
        let q = small.qubit(k).unwrap();
        let id = lattice_id(r, c);
        let angle = q.angle + Phase::new(LATTICE_OFFSETS[k], 2);
        qubits.insert(id, Qubit { id, angle, basis: Basis::Xy, label: q.label.clone() });
    }
    for &(r, c) in &LATTICE_SPARES {
        let id = lattice_id(r, c);
        qubits.insert(id, Qubit::new(id, Phase::HALF_PI));
    }
    for id in 0..LATTICE_SIDE * LATTICE_SIDE {
        qubits.entry(id).or_insert_with(|| Qubit::z_basis(id));
    }
    let mut edges = Vec::new();
    for r in 0..LATTICE_SIDE {
        for c in 0..LATTICE_SIDE {
            if c + 1 < LATTICE_SIDE {
                edges.push((lattice_id(r, c), lattice_id(r, c + 1)));
            }
            if r + 1 < LATTICE_SIDE {
                edges.push((lattice_id(r, c), lattice_id(r + 1, c)));
            }
        }
    }
    let all: Vec<usize> = (0..LATTICE_SIDE * LATTICE_SIDE).collect();
    let readouts = LATTICE_KEPT.iter().map(|&(r, c)| lattice_id(r, c)).collect();
    MeasurementPattern::new(qubits.into_values().collect(), edges, all, readouts)
}

/// Reduces a lattice pattern back to the eleven-qubit cluster: qubits
/// measured in the computational basis are decoupled, then bridge spares
/// are removed by local complementation.
pub fn reduce_lattice(p: &MeasurementPattern) -> Result<MeasurementPattern> {
    if p.is_empty() {
        return Ok(p.clone());
    }
    if p.len() != LATTICE_SIDE * LATTICE_SIDE {
        return Err(Error::InvalidPattern(format!("expected a {LATTICE_SIDE}×{LATTICE_SIDE} lattice, got {} qubits", p.len())));
    }
    let spares: Vec<usize> = LATTICE_SPARES.iter().map(|&(r, c)| lattice_id(r, c)).collect();
    reduce_with_spares(p, &spares)
}

/// Decouples every computational-basis qubit, then repeatedly applies local
/// complementation to the spare whose phase is ±π/2 and that has the fewest
/// spare neighbors (lowest id on ties) until no spare remains.
pub fn reduce_with_spares(p: &MeasurementPattern, spares: &[usize]) -> Result<MeasurementPattern> {
    let mut d = pattern_to_diagram(p);
    let caps: Vec<NodeId> = d.spiders().filter(|(_, s)| s.kind == SpiderKind::X).map(|(id, _)| id).collect();
    for cap in caps {
        let step = decouple_x_state(&mut d, cap)?;
        for st in step.after {
            let n = d.neighbors(st)[0];
            fuse_spiders(&mut d, n, st)?;
        }
    }
    let mut left: BTreeSet<NodeId> = spares.iter().map(|&s| NodeId(s)).filter(|s| d.contains(*s)).collect();
    while !left.is_empty() {
        let pick = left
            .iter()
            .copied()
            .filter(|&s| d.spider(s).map(|sp| sp.phase.is_proper_clifford()).unwrap_or(false))
            .min_by_key(|&s| (d.neighbors(s).iter().filter(|n| left.contains(n)).count(), s));
        let Some(s) = pick else {
            let stuck = left.iter().next().unwrap();
            return Err(Error::ReductionStuck(stuck.to_string()));
        };
        local_complement(&mut d, s)?;
        left.remove(&s);
    }
    pattern_from_graph_like(&d)
}

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use zxmbqc::diagram::{EdgeKind, NodeId, SpiderKind, ZxDiagram};
use zxmbqc::rewrite::*;
use zxmbqc::{Circuit, Gate, Phase};

pub fn random_phase(rng: &mut StdRng) -> Phase {
    Phase::new(rng.gen_range(0..8), 4)
}

pub fn random_kind(rng: &mut StdRng) -> SpiderKind {
    if rng.gen_bool(0.5) {
        SpiderKind::Z
    } else {
        SpiderKind::X
    }
}

pub fn random_edge_kind(rng: &mut StdRng) -> EdgeKind {
    if rng.gen_bool(0.5) {
        EdgeKind::Plain
    } else {
        EdgeKind::Hadamard
    }
}

/// Random diagram with `1..=max_spiders` spiders, up to `max_legs` boundary
/// legs, and parallel edges allowed.
pub fn random_diagram(rng: &mut StdRng, max_spiders: usize, max_legs: usize) -> ZxDiagram {
    let n = rng.gen_range(1..=max_spiders);
    let mut d = ZxDiagram::empty();
    let ids: Vec<NodeId> = (0..n).map(|_| {
        let k = random_kind(rng);
        let p = random_phase(rng);
        d.add_spider(k, p)
    }).collect();
    if n > 1 {
        let m = rng.gen_range(0..=2 * n);
        for _ in 0..m {
            let a = *ids.choose(rng).unwrap();
            let b = *ids.choose(rng).unwrap();
            if a != b {
                let k = random_edge_kind(rng);
                d.add_edge(a, b, k).unwrap();
            }
        }
    }
    let legs = rng.gen_range(0..=max_legs);
    let split = rng.gen_range(0..=legs);
    let inputs = (0..split).map(|_| *ids.choose(rng).unwrap()).collect();
    let outputs = (split..legs).map(|_| *ids.choose(rng).unwrap()).collect();
    d.set_inputs(inputs);
    d.set_outputs(outputs);
    d
}

/// Random diagram with exactly `n_in` inputs and `n_out` outputs.
pub fn random_open_diagram(rng: &mut StdRng, max_spiders: usize, n_in: usize, n_out: usize) -> ZxDiagram {
    let mut d = random_diagram(rng, max_spiders, 0);
    let ids = d.node_ids();
    d.set_inputs((0..n_in).map(|_| *ids.choose(rng).unwrap()).collect());
    d.set_outputs((0..n_out).map(|_| *ids.choose(rng).unwrap()).collect());
    d
}

fn pick_z(d: &mut ZxDiagram, rng: &mut StdRng) -> NodeId {
    let zs: Vec<NodeId> = d.spiders().filter(|(_, s)| s.kind == SpiderKind::Z).map(|(id, _)| id).collect();
    match zs.choose(rng) {
        Some(&z) => z,
        None => {
            let p = random_phase(rng);
            d.add_spider(SpiderKind::Z, p)
        }
    }
}

type Site = Box<dyn FnOnce(&mut ZxDiagram) -> zxmbqc::Result<RewriteStep>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    ColorChange,
    Fuse,
    HadamardCancel,
    ExpandHadamard,
    CollapseHadamard,
    DecoupleState,
    LocalComplement,
    HadamardPair,
}

pub const RULES: [Rule; 8] = [
    Rule::ColorChange,
    Rule::Fuse,
    Rule::HadamardCancel,
    Rule::ExpandHadamard,
    Rule::CollapseHadamard,
    Rule::DecoupleState,
    Rule::LocalComplement,
    Rule::HadamardPair,
];

/// Builds a random diagram of at most ten spiders containing a legal site
/// for `rule`, applies the rule there, and returns the diagram before and
/// after.
pub fn plant_and_apply(rule: Rule, rng: &mut StdRng) -> (ZxDiagram, ZxDiagram) {
    let mut d = random_diagram(rng, 6, 3);
    let ids = d.node_ids();
    let any = |rng: &mut StdRng| *ids.choose(rng).unwrap();
    let site: Site = match rule {
        Rule::ColorChange => {
            let v = any(rng);
            Box::new(move |d| color_change(d, v))
        }
        Rule::Fuse => {
            let a = any(rng);
            let kind = d.spider(a).unwrap().kind;
            let p = random_phase(rng);
            let b = d.add_spider(kind, p);
            for _ in 0..rng.gen_range(1..=2) {
                d.add_edge(a, b, EdgeKind::Plain).unwrap();
            }
            let others: Vec<NodeId> = ids.iter().copied().filter(|&x| x != a).collect();
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(&o) = others.choose(rng) {
                    let k = random_edge_kind(rng);
                    d.add_edge(b, o, k).unwrap();
                }
            }
            if rng.gen_bool(0.3) {
                let mut outs = d.outputs().to_vec();
                outs.push(b);
                d.set_outputs(outs);
            }
            Box::new(move |d| fuse_spiders(d, a, b))
        }
        Rule::HadamardCancel => {
            let (n1, n2) = (any(rng), any(rng));
            let v = d.add_spider(SpiderKind::Z, Phase::ZERO);
            d.add_edge(v, n1, EdgeKind::Hadamard).unwrap();
            d.add_edge(v, n2, EdgeKind::Hadamard).unwrap();
            Box::new(move |d| hadamard_cancel(d, v))
        }
        Rule::ExpandHadamard | Rule::CollapseHadamard => {
            let a = any(rng);
            let b = {
                let k = random_kind(rng);
                let p = random_phase(rng);
                if rng.gen_bool(0.5) || ids.len() < 2 { d.add_spider(k, p) } else { *ids.iter().find(|&&x| x != a).unwrap() }
            };
            let e = d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
            if rule == Rule::ExpandHadamard {
                Box::new(move |d| expand_hadamard_edge(d, e))
            } else {
                let step = expand_hadamard_edge(&mut d, e).unwrap();
                let (z1, x, z2) = (step.after[0], step.after[1], step.after[2]);
                Box::new(move |d| collapse_hadamard_chain(d, z1, x, z2))
            }
        }
        Rule::DecoupleState => {
            let p = random_phase(rng);
            let z = d.add_spider(SpiderKind::Z, p);
            let x = d.add_spider(SpiderKind::X, Phase::ZERO);
            d.add_edge(x, z, EdgeKind::Plain).unwrap();
            for _ in 0..rng.gen_range(0..=3) {
                let k = random_edge_kind(rng);
                d.add_edge(z, any(rng), k).unwrap();
            }
            if rng.gen_bool(0.3) {
                let mut ins = d.inputs().to_vec();
                ins.push(z);
                d.set_inputs(ins);
            }
            Box::new(move |d| decouple_x_state(d, x))
        }
        Rule::LocalComplement => {
            let mut nbrs = Vec::new();
            for _ in 0..rng.gen_range(0..=4) {
                let z = pick_z(&mut d, rng);
                if !nbrs.contains(&z) {
                    nbrs.push(z);
                }
            }
            let phase = if rng.gen_bool(0.5) { Phase::HALF_PI } else { Phase::THREE_HALVES_PI };
            let v = d.add_spider(SpiderKind::Z, phase);
            for n in nbrs {
                d.add_edge(v, n, EdgeKind::Hadamard).unwrap();
            }
            Box::new(move |d| local_complement(d, v))
        }
        Rule::HadamardPair => {
            let a = pick_z(&mut d, rng);
            let p = random_phase(rng);
            let b = if rng.gen_bool(0.5) { d.add_spider(SpiderKind::Z, p) } else {
                let others: Vec<NodeId> = d.spiders().filter(|&(id, s)| s.kind == SpiderKind::Z && id != a).map(|(id, _)| id).collect();
                match others.choose(rng) { Some(&b) => b, None => d.add_spider(SpiderKind::Z, p) }
            };
            for _ in 0..rng.gen_range(2..=3) {
                d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
            }
            Box::new(move |d| cancel_hadamard_pair(d, a, b))
        }
    };
    let before = d.clone();
    site(&mut d).unwrap_or_else(|e| panic!("{rule:?} rejected its planted site: {e}"));
    (before, d)
}

/// Random circuit on `width` qubits with up to `depth` gates.
pub fn random_circuit(rng: &mut StdRng, width: usize, depth: usize) -> Circuit {
    let mut c = Circuit::new(width);
    for _ in 0..rng.gen_range(0..=depth) {
        let q = rng.gen_range(0..width);
        let g = match rng.gen_range(0..5) {
            0 => Gate::phase(q, random_phase(rng)),
            1 if width > 1 => {
                let t = (q + rng.gen_range(1..width)) % width;
                Gate::Cnot { control: q, target: t }
            }
            2 => Gate::Z(q),
            3 => Gate::Y(q),
            _ => Gate::H(q),
        };
        c.push(g).unwrap();
    }
    c
}

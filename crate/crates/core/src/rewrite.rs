//! Rewrite rules and the simplification pipeline that brings a closed
//! circuit translation into measurement form.
//!
//! Every rule mutates the diagram in place and returns a [`RewriteStep`].
//! Preconditions are checked before any mutation, so a failed rule leaves
//! the diagram untouched. Rules preserve the tensor up to a nonzero scalar.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diagram::{EdgeId, EdgeKind, NodeId, SpiderKind, ZxDiagram};
use crate::error::{Error, Result};
use crate::phase::Phase;

/// One applied rule: its name, the nodes it consumed or inspected, and the
/// nodes that exist afterwards as a result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub before: Vec<NodeId>,
    pub after: Vec<NodeId>,
}

impl RewriteStep {
    fn new(rule: &'static str, before: Vec<NodeId>, after: Vec<NodeId>) -> RewriteStep {
        RewriteStep { rule, before, after }
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

/// Toggles the color of `v` and the kind of every incident edge. Each
/// boundary leg of `v` is routed through a fresh Z(0) spider joined by a
/// Hadamard edge, so the open wire keeps its meaning.
pub fn color_change(d: &mut ZxDiagram, v: NodeId) -> Result<RewriteStep> {
    d.spider(v)?;
    for e in d.incident(v) {
        let edge = d.edge_mut(e)?;
        edge.kind = edge.kind.toggled();
    }
    let s = d.spider_mut(v)?;
    s.kind = s.kind.toggled();
    let mut after = vec![v];
    let legs = d.boundary_legs(v);
    for _ in 0..legs {
        let stub = d.add_spider(SpiderKind::Z, Phase::ZERO);
        d.add_edge(v, stub, EdgeKind::Hadamard)?;
        let (inputs, outputs) = d.boundary_mut();
        let slot = inputs.iter_mut().chain(outputs.iter_mut()).find(|b| **b == v).unwrap();
        *slot = stub;
        after.push(stub);
    }
    Ok(RewriteStep::new("color_change", vec![v], after))
}

/// Merges `b` into `a`. Both must have the same color and share at least
/// one plain edge; all plain edges between them disappear.
pub fn fuse_spiders(d: &mut ZxDiagram, a: NodeId, b: NodeId) -> Result<RewriteStep> {
    check_fusable(d, a, b)?;
    if d.edges_between(a, b).iter().any(|&e| d.edge(e).map(|e| e.kind) == Ok(EdgeKind::Hadamard)) {
        return Err(Error::WouldSelfLoop(a, b));
    }
    merge(d, a, b)?;
    Ok(RewriteStep::new("fuse", vec![a, b], vec![a]))
}

fn check_fusable(d: &ZxDiagram, a: NodeId, b: NodeId) -> Result<()> {
    let (ka, kb) = (d.spider(a)?.kind, d.spider(b)?.kind);
    if a == b {
        return Err(Error::NotAdjacent(a, b));
    }
    if ka != kb {
        return Err(Error::KindMismatch(a, b));
    }
    let plain = d.edges_between(a, b).into_iter().any(|e| d.edge(e).map(|e| e.kind) == Ok(EdgeKind::Plain));
    if !plain {
        return Err(Error::NotAdjacent(a, b));
    }
    Ok(())
}

/// Fusion that turns every Hadamard edge between `a` and `b` into a π phase
/// on the merged spider (a Hadamard self-loop on a Z spider).
fn fuse_absorbing(d: &mut ZxDiagram, a: NodeId, b: NodeId) -> Result<RewriteStep> {
    check_fusable(d, a, b)?;
    if d.spider(a)?.kind != SpiderKind::Z {
        return Err(fail("loop absorption needs Z spiders"));
    }
    let loops = d
        .edges_between(a, b)
        .into_iter()
        .filter(|&e| d.edge(e).map(|e| e.kind) == Ok(EdgeKind::Hadamard))
        .count();
    merge(d, a, b)?;
    if loops % 2 == 1 {
        d.spider_mut(a)?.phase += Phase::PI;
    }
    Ok(RewriteStep::new("fuse", vec![a, b], vec![a]))
}

fn merge(d: &mut ZxDiagram, a: NodeId, b: NodeId) -> Result<()> {
    let mut rehang = Vec::new();
    for e in d.incident(b) {
        let edge = d.remove_edge(e)?;
        let other = edge.other(b);
        if other != a {
            rehang.push((other, edge.kind));
        }
    }
    for (other, kind) in rehang {
        d.add_edge(a, other, kind)?;
    }
    let sb = d.remove_spider(b)?;
    let sa = d.spider_mut(a)?;
    sa.phase += sb.phase;
    sa.label = match (sa.label.take(), sb.label) {
        (Some(x), Some(y)) => Some(format!("{x}+{y}")),
        (x, y) => x.or(y),
    };
    let (inputs, outputs) = d.boundary_mut();
    for slot in inputs.iter_mut().chain(outputs.iter_mut()) {
        if *slot == b {
            *slot = a;
        }
    }
    Ok(())
}

/// Removes a phase-0 spider of degree 2 whose two edges are Hadamard,
/// joining its neighbors by a plain edge.
pub fn hadamard_cancel(d: &mut ZxDiagram, v: NodeId) -> Result<RewriteStep> {
    let s = d.spider(v)?;
    if !s.phase.is_zero() {
        return Err(fail(format!("node {v} has nonzero phase")));
    }
    if d.is_boundary(v) {
        return Err(fail(format!("node {v} is on the boundary")));
    }
    let inc = d.incident(v);
    if inc.len() != 2 {
        return Err(fail(format!("node {v} has degree {}", inc.len())));
    }
    let mut ends = Vec::new();
    for &e in &inc {
        let edge = d.edge(e)?;
        if edge.kind != EdgeKind::Hadamard {
            return Err(fail(format!("edge {e} at node {v} is not Hadamard")));
        }
        ends.push(edge.other(v));
    }
    d.remove_spider(v)?;
    if ends[0] != ends[1] {
        d.add_edge(ends[0], ends[1], EdgeKind::Plain)?;
    }
    ends.dedup();
    Ok(RewriteStep::new("hadamard_cancel", vec![v], ends))
}

/// Replaces Hadamard edge `e` with the chain Z(π/2)–X(π/2)–Z(π/2).
pub fn expand_hadamard_edge(d: &mut ZxDiagram, e: EdgeId) -> Result<RewriteStep> {
    let edge = *d.edge(e)?;
    if edge.kind != EdgeKind::Hadamard {
        return Err(fail(format!("edge {e} is not Hadamard")));
    }
    d.remove_edge(e)?;
    let z1 = d.add_spider(SpiderKind::Z, Phase::HALF_PI);
    let x = d.add_spider(SpiderKind::X, Phase::HALF_PI);
    let z2 = d.add_spider(SpiderKind::Z, Phase::HALF_PI);
    d.add_edge(edge.a, z1, EdgeKind::Plain)?;
    d.add_edge(z1, x, EdgeKind::Plain)?;
    d.add_edge(x, z2, EdgeKind::Plain)?;
    d.add_edge(z2, edge.b, EdgeKind::Plain)?;
    Ok(RewriteStep::new("expand_hadamard", vec![edge.a, edge.b], vec![z1, x, z2]))
}

/// Inverse of [`expand_hadamard_edge`].
pub fn collapse_hadamard_chain(d: &mut ZxDiagram, v1: NodeId, v2: NodeId, v3: NodeId) -> Result<RewriteStep> {
    let want = [(v1, SpiderKind::Z), (v2, SpiderKind::X), (v3, SpiderKind::Z)];
    for (v, kind) in want {
        let s = d.spider(v)?;
        if s.kind != kind || s.phase != Phase::HALF_PI || d.degree(v) != 2 || d.is_boundary(v) {
            return Err(fail(format!("node {v} is not a {kind:?}(π/2) chain link")));
        }
        if d.incident(v).iter().any(|&e| d.edge(e).map(|e| e.kind) != Ok(EdgeKind::Plain)) {
            return Err(fail(format!("node {v} has a non-plain edge")));
        }
    }
    if d.edges_between(v1, v2).len() != 1 || d.edges_between(v2, v3).len() != 1 {
        return Err(fail("nodes do not form a chain"));
    }
    let outer = |d: &ZxDiagram, v: NodeId, inner: NodeId| {
        d.incident(v).into_iter().map(|e| d.edge(e).unwrap().other(v)).find(|&n| n != inner)
    };
    let (Some(a), Some(b)) = (outer(d, v1, v2), outer(d, v3, v2)) else {
        return Err(fail("chain ends are not attached"));
    };
    if a == b || a == v3 || b == v1 {
        return Err(fail("collapsing would create a self-loop"));
    }
    for v in [v1, v2, v3] {
        d.remove_spider(v)?;
    }
    d.add_edge(a, b, EdgeKind::Hadamard)?;
    Ok(RewriteStep::new("collapse_hadamard", vec![v1, v2, v3], vec![a, b]))
}

/// Removes a phase-0 X state `x` together with the Z spider `z` it is
/// plugged into. Each remaining leg of `z` receives an X(0) state, or a Z(0)
/// state where the leg was a Hadamard edge.
pub fn decouple_x_state(d: &mut ZxDiagram, x: NodeId) -> Result<RewriteStep> {
    let s = d.spider(x)?;
    if s.kind != SpiderKind::X || !s.phase.is_zero() || d.is_boundary(x) {
        return Err(fail(format!("node {x} is not an X(0) state")));
    }
    let inc = d.incident(x);
    if inc.len() != 1 {
        return Err(fail(format!("node {x} has degree {}", inc.len())));
    }
    let edge = *d.edge(inc[0])?;
    let z = edge.other(x);
    if edge.kind != EdgeKind::Plain || d.spider(z)?.kind != SpiderKind::Z {
        return Err(fail(format!("node {x} is not plugged into a Z spider by a plain edge")));
    }
    let mut legs = Vec::new();
    for e in d.incident(z) {
        if e != inc[0] {
            let edge = d.edge(e)?;
            legs.push((edge.other(z), edge.kind));
        }
    }
    d.remove_spider(x)?;
    d.remove_spider(z)?;
    let mut after = Vec::new();
    for (n, kind) in legs {
        let state_kind = match kind {
            EdgeKind::Plain => SpiderKind::X,
            EdgeKind::Hadamard => SpiderKind::Z,
        };
        let st = d.add_spider(state_kind, Phase::ZERO);
        d.add_edge(n, st, EdgeKind::Plain)?;
        after.push(st);
    }
    let boundary = d.boundary_legs(z);
    for _ in 0..boundary {
        let st = d.add_spider(SpiderKind::X, Phase::ZERO);
        let (inputs, outputs) = d.boundary_mut();
        let slot = inputs.iter_mut().chain(outputs.iter_mut()).find(|b| **b == z).unwrap();
        *slot = st;
        after.push(st);
    }
    Ok(RewriteStep::new("decouple_x_state", vec![x, z], after))
}

/// Local complementation about a Z(±π/2) spider `v` whose edges are all
/// Hadamard edges to Z spiders: `v` is removed, Hadamard edges among its
/// neighbors are toggled, and each neighbor's phase moves by `−phase(v)`.
pub fn local_complement(d: &mut ZxDiagram, v: NodeId) -> Result<RewriteStep> {
    let s = d.spider(v)?;
    if s.kind != SpiderKind::Z || !s.phase.is_proper_clifford() {
        return Err(fail(format!("node {v} is not a Z(±π/2) spider")));
    }
    let shift = -s.phase;
    if d.is_boundary(v) {
        return Err(fail(format!("node {v} is on the boundary")));
    }
    let inc = d.incident(v);
    let mut nbrs = Vec::new();
    for &e in &inc {
        let edge = d.edge(e)?;
        let n = edge.other(v);
        if edge.kind != EdgeKind::Hadamard || d.spider(n)?.kind != SpiderKind::Z {
            return Err(fail(format!("edge {e} at node {v} is not a Hadamard edge to a Z spider")));
        }
        if nbrs.contains(&n) {
            return Err(fail(format!("node {v} has parallel edges to {n}")));
        }
        nbrs.push(n);
    }
    nbrs.sort();
    d.remove_spider(v)?;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            toggle_hadamard(d, a, b)?;
        }
        d.spider_mut(a)?.phase += shift;
    }
    Ok(RewriteStep::new("local_complement", vec![v], nbrs))
}

fn toggle_hadamard(d: &mut ZxDiagram, a: NodeId, b: NodeId) -> Result<()> {
    let existing = d
        .edges_between(a, b)
        .into_iter()
        .find(|&e| d.edge(e).map(|e| e.kind) == Ok(EdgeKind::Hadamard));
    match existing {
        Some(e) => {
            d.remove_edge(e)?;
        }
        None => {
            d.add_edge(a, b, EdgeKind::Hadamard)?;
        }
    }
    Ok(())
}

/// Removes two parallel Hadamard edges between Z spiders `a` and `b`.
pub fn cancel_hadamard_pair(d: &mut ZxDiagram, a: NodeId, b: NodeId) -> Result<RewriteStep> {
    if d.spider(a)?.kind != SpiderKind::Z || d.spider(b)?.kind != SpiderKind::Z {
        return Err(fail("parallel Hadamard edges cancel only between Z spiders"));
    }
    let hs: Vec<EdgeId> = d
        .edges_between(a, b)
        .into_iter()
        .filter(|&e| d.edge(e).map(|e| e.kind) == Ok(EdgeKind::Hadamard))
        .collect();
    if hs.len() < 2 {
        return Err(fail(format!("nodes {a} and {b} share fewer than two Hadamard edges")));
    }
    d.remove_edge(hs[0])?;
    d.remove_edge(hs[1])?;
    Ok(RewriteStep::new("hadamard_pair", vec![a, b], vec![a, b]))
}

/// Caps every boundary leg with a Z(0) spider (the `|+⟩` state or effect),
/// producing a closed diagram.
pub fn plug_plus_states(d: &ZxDiagram) -> ZxDiagram {
    let mut out = d.clone();
    let legs: Vec<NodeId> = d.inputs().iter().chain(d.outputs()).copied().collect();
    for v in legs {
        let cap = out.add_spider(SpiderKind::Z, Phase::ZERO);
        out.add_edge(v, cap, EdgeKind::Plain).expect("boundary spider exists");
    }
    out.set_inputs(Vec::new());
    out.set_outputs(Vec::new());
    out
}

/// Brings `d` into graph-like form: only Z spiders, joined only by single
/// Hadamard edges.
pub fn to_graph_like(d: &ZxDiagram) -> ZxDiagram {
    let mut d = d.clone();
    let mut trace = Vec::new();
    graph_like_in_place(&mut d, &mut trace);
    d
}

fn graph_like_in_place(d: &mut ZxDiagram, trace: &mut Vec<RewriteStep>) {
    let xs: Vec<NodeId> = d.spiders().filter(|(_, s)| s.kind == SpiderKind::X).map(|(id, _)| id).collect();
    for v in xs {
        trace.push(color_change(d, v).expect("node exists"));
    }
    fuse_plain_pairs(d, trace, |_, _, _| true);
    cancel_parallel(d, trace);
}

/// Fuses Z spiders joined by plain edges, lowest ids first, for as long as
/// `allow` permits.
fn fuse_plain_pairs(d: &mut ZxDiagram, trace: &mut Vec<RewriteStep>, allow: impl Fn(&ZxDiagram, NodeId, NodeId) -> bool) -> bool {
    let mut changed = false;
    loop {
        let pair = d
            .edges()
            .filter(|(_, e)| e.kind == EdgeKind::Plain)
            .map(|(_, e)| (e.a.min(e.b), e.a.max(e.b)))
            .filter(|&(a, b)| {
                let (sa, sb) = (d.spider(a).unwrap(), d.spider(b).unwrap());
                sa.kind == SpiderKind::Z && sb.kind == SpiderKind::Z && allow(d, a, b)
            })
            .min();
        let Some((a, b)) = pair else { return changed };
        trace.push(fuse_absorbing(d, a, b).expect("checked pair"));
        changed = true;
    }
}

fn cancel_parallel(d: &mut ZxDiagram, trace: &mut Vec<RewriteStep>) -> bool {
    let mut changed = false;
    loop {
        let mut seen = BTreeSet::new();
        let mut found = None;
        for (_, e) in d.edges() {
            if e.kind != EdgeKind::Hadamard {
                continue;
            }
            let key = (e.a.min(e.b), e.a.max(e.b));
            if !seen.insert(key) {
                found = Some(key);
                break;
            }
        }
        let Some((a, b)) = found else { return changed };
        match cancel_hadamard_pair(d, a, b) {
            Ok(step) => trace.push(step),
            Err(_) => return changed,
        }
        changed = true;
    }
}

/// Whether `d` has only Z spiders joined by single Hadamard edges.
pub fn is_graph_like(d: &ZxDiagram) -> bool {
    if d.spiders().any(|(_, s)| s.kind != SpiderKind::Z) {
        return false;
    }
    let mut seen = BTreeSet::new();
    d.edges().all(|(_, e)| e.kind == EdgeKind::Hadamard && seen.insert((e.a.min(e.b), e.a.max(e.b))))
}

/// The full simplification pipeline: plug open legs, go graph-like, then
/// repeatedly cancel phase-free Hadamard links and absorb trailing states.
///
/// Spiders carrying a label stand for oracle parameters. They are treated
/// symbolically: never removed, never merged with each other, and their
/// phases never discarded, so one variant's output has the same shape as
/// every other's.
pub fn simplify_mbqc(d: &ZxDiagram) -> (ZxDiagram, Vec<RewriteStep>) {
    let mut d = if d.is_closed() { d.clone() } else { plug_plus_states(d) };
    let mut trace = Vec::new();
    graph_like_in_place(&mut d, &mut trace);
    loop {
        if cancel_step(&mut d, &mut trace) {
            continue;
        }
        if absorb_step(&mut d, &mut trace) {
            continue;
        }
        break;
    }
    (d, trace)
}

fn labeled(d: &ZxDiagram, v: NodeId) -> bool {
    d.spider(v).map(|s| s.label.is_some()).unwrap_or(false)
}

/// One hadamard_cancel at the lowest eligible node, followed by fusing the
/// neighbors it joins.
fn cancel_step(d: &mut ZxDiagram, trace: &mut Vec<RewriteStep>) -> bool {
    let candidate = d.node_ids().into_iter().find(|&v| {
        let s = d.spider(v).unwrap();
        if s.label.is_some() || !s.phase.is_zero() || d.is_boundary(v) {
            return false;
        }
        let inc = d.incident(v);
        if inc.len() != 2 || inc.iter().any(|&e| d.edge(e).unwrap().kind != EdgeKind::Hadamard) {
            return false;
        }
        let n: Vec<NodeId> = inc.iter().map(|&e| d.edge(e).unwrap().other(v)).collect();
        n[0] != n[1] && !(labeled(d, n[0]) && labeled(d, n[1]))
    });
    let Some(v) = candidate else { return false };
    let step = hadamard_cancel(d, v).expect("checked candidate");
    let (a, b) = (step.after[0].min(step.after[1]), step.after[0].max(step.after[1]));
    trace.push(step);
    trace.push(fuse_absorbing(d, a, b).expect("joined by the new plain edge"));
    cancel_parallel(d, trace);
    true
}

/// Absorbs an unlabeled phase-0 leaf hanging off an unlabeled spider: the
/// leaf is recolored into an X(0) state, decoupled together with its
/// neighbor, and the resulting Z(0) states are fused into the neighbor's
/// former neighbors.
fn absorb_step(d: &mut ZxDiagram, trace: &mut Vec<RewriteStep>) -> bool {
    let candidate = d.node_ids().into_iter().find(|&v| {
        let s = d.spider(v).unwrap();
        if s.label.is_some() || !s.phase.is_zero() || d.is_boundary(v) {
            return false;
        }
        let inc = d.incident(v);
        if inc.len() != 1 {
            return false;
        }
        let e = d.edge(inc[0]).unwrap();
        let n = e.other(v);
        e.kind == EdgeKind::Hadamard && !labeled(d, n) && !d.is_boundary(n)
    });
    let Some(v) = candidate else { return false };
    trace.push(color_change(d, v).expect("node exists"));
    let step = decouple_x_state(d, v).expect("leaf is now an X(0) state");
    let states = step.after.clone();
    trace.push(step);
    for st in states {
        let n = d.neighbors(st)[0];
        trace.push(fuse_absorbing(d, n.min(st), n.max(st)).expect("state hangs on a plain edge"));
    }
    cancel_parallel(d, trace);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SpiderKind::{X, Z};
    use crate::tensor::{diagrams_equivalent, evaluate, equivalent_up_to_scalar};
    use num_complex::Complex64;

    fn assert_sound(before: &ZxDiagram, after: &ZxDiagram) {
        assert!(diagrams_equivalent(before, after, 1e-9).unwrap(), "rewrite changed semantics");
    }

    #[test]
    fn color_change_on_two_leg_x() {
        let mut d = ZxDiagram::empty();
        let a = d.add_spider(Z, Phase::ZERO);
        let x = d.add_spider(X, Phase::PI);
        let b = d.add_spider(Z, Phase::ZERO);
        d.add_edge(a, x, EdgeKind::Plain).unwrap();
        d.add_edge(x, b, EdgeKind::Plain).unwrap();
        d.set_inputs(vec![a]);
        d.set_outputs(vec![b]);
        let before = d.clone();
        color_change(&mut d, x).unwrap();
        assert_eq!(d.spider(x).unwrap().kind, Z);
        assert!(d.edges().all(|(_, e)| e.kind == EdgeKind::Hadamard));
        assert_sound(&before, &d);
        color_change(&mut d, x).unwrap();
        assert!(d.same_structure(&before));
    }

    #[test]
    fn color_change_boundary_stub() {
        let before = ZxDiagram::wire(X, Phase::new(1, 4));
        let mut d = before.clone();
        let step = color_change(&mut d, NodeId(0)).unwrap();
        assert_eq!(step.after.len(), 3);
        assert_sound(&before, &d);
    }

    #[test]
    fn isolated_spider_recolor_keeps_scalar() {
        let mut d = ZxDiagram::empty();
        let v = d.add_spider(X, Phase::HALF_PI);
        let before = evaluate(&d).scalar_value().unwrap();
        color_change(&mut d, v).unwrap();
        let after = evaluate(&d).scalar_value().unwrap();
        assert!((before - after).norm() < 1e-12);
        assert!((after - Complex64::new(1.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn fuse_adds_phases() {
        let mut d = ZxDiagram::empty();
        let a = d.add_spider(X, Phase::PI);
        let b = d.add_spider(X, Phase::PI);
        d.add_edge(a, b, EdgeKind::Plain).unwrap();
        d.add_edge(a, b, EdgeKind::Plain).unwrap();
        d.set_outputs(vec![a, b]);
        let before = d.clone();
        fuse_spiders(&mut d, a, b).unwrap();
        assert_eq!(d.num_spiders(), 1);
        assert_eq!(d.spider(a).unwrap().phase, Phase::ZERO);
        assert_eq!(d.outputs(), &[a, a]);
        assert_sound(&before, &d);
    }

    #[test]
    fn fuse_errors() {
        let mut d = ZxDiagram::empty();
        let a = d.add_spider(Z, Phase::ZERO);
        let b = d.add_spider(Z, Phase::ZERO);
        let x = d.add_spider(X, Phase::ZERO);
        d.add_edge(a, x, EdgeKind::Plain).unwrap();
        assert_eq!(fuse_spiders(&mut d, a, x), Err(Error::KindMismatch(a, x)));
        assert_eq!(fuse_spiders(&mut d, a, b), Err(Error::NotAdjacent(a, b)));
        d.add_edge(a, b, EdgeKind::Plain).unwrap();
        d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
        assert_eq!(fuse_spiders(&mut d, a, b), Err(Error::WouldSelfLoop(a, b)));
        assert_eq!(d.num_spiders(), 3);
    }

    #[test]
    fn hadamard_cancel_joins_neighbors() {
        let mut d = ZxDiagram::empty();
        let a = d.add_spider(Z, Phase::HALF_PI);
        let v = d.add_spider(Z, Phase::ZERO);
        let b = d.add_spider(X, Phase::PI);
        d.add_edge(a, v, EdgeKind::Hadamard).unwrap();
        d.add_edge(v, b, EdgeKind::Hadamard).unwrap();
        d.set_inputs(vec![a]);
        d.set_outputs(vec![b]);
        let before = d.clone();
        hadamard_cancel(&mut d, v).unwrap();
        assert_eq!(d.num_spiders(), 2);
        assert_eq!(d.edges().next().unwrap().1.kind, EdgeKind::Plain);
        assert_sound(&before, &d);

        let mut d = before.clone();
        d.spider_mut(v).unwrap().phase = Phase::PI;
        assert!(matches!(hadamard_cancel(&mut d, v), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn expand_collapse_round_trip() {
        let mut d = ZxDiagram::empty();
        let a = d.add_spider(Z, Phase::ZERO);
        let b = d.add_spider(Z, Phase::ZERO);
        let e = d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
        d.set_inputs(vec![a]);
        d.set_outputs(vec![b]);
        let before = d.clone();
        let step = expand_hadamard_edge(&mut d, e).unwrap();
        assert_sound(&before, &d);
        let h = Tensor::from_matrix(1, &[vec![one(), one()], vec![one(), -one()]]);
        assert!(equivalent_up_to_scalar(&evaluate(&d), &h, 1e-9).unwrap().0);
        collapse_hadamard_chain(&mut d, step.after[0], step.after[1], step.after[2]).unwrap();
        assert!(d.same_structure(&before));

        let mut d = before.clone();
        let step = expand_hadamard_edge(&mut d, e).unwrap();
        d.spider_mut(step.after[1]).unwrap().phase = Phase::PI;
        assert!(collapse_hadamard_chain(&mut d, step.after[0], step.after[1], step.after[2]).is_err());
    }

    use crate::tensor::Tensor;
    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn decouple_cases() {
        let mut d = ZxDiagram::empty();
        let x = d.add_spider(X, Phase::ZERO);
        let z = d.add_spider(Z, Phase::new(1, 4));
        d.add_edge(x, z, EdgeKind::Plain).unwrap();
        let before = evaluate(&d).scalar_value().unwrap();
        decouple_x_state(&mut d, x).unwrap();
        assert_eq!(d.num_spiders(), 0);
        // ⟨+|+⟩ + ⟨−|+⟩ restricted to Z(α) gives the weight of |0⟩ times two
        assert!((before - Complex64::new(2.0, 0.0)).norm() < 1e-12);

        let mut d = ZxDiagram::empty();
        let x = d.add_spider(X, Phase::ZERO);
        let z = d.add_spider(Z, Phase::new(3, 4));
        let p = d.add_spider(Z, Phase::ZERO);
        let q = d.add_spider(Z, Phase::HALF_PI);
        d.add_edge(x, z, EdgeKind::Plain).unwrap();
        d.add_edge(z, p, EdgeKind::Plain).unwrap();
        d.add_edge(z, q, EdgeKind::Hadamard).unwrap();
        d.set_outputs(vec![p, q]);
        let before = d.clone();
        let step = decouple_x_state(&mut d, x).unwrap();
        assert_eq!(d.spider(step.after[0]).unwrap().kind, X);
        assert_eq!(d.spider(step.after[1]).unwrap().kind, Z);
        assert_sound(&before, &d);

        let mut d = ZxDiagram::empty();
        let x = d.add_spider(X, Phase::ZERO);
        let z = d.add_spider(Z, Phase::ZERO);
        d.add_edge(x, z, EdgeKind::Hadamard).unwrap();
        assert!(decouple_x_state(&mut d, x).is_err());
    }

    #[test]
    fn local_complement_star() {
        let mut d = ZxDiagram::empty();
        let c = d.add_spider(Z, Phase::HALF_PI);
        let leaves: Vec<NodeId> = (0..4).map(|_| d.add_spider(Z, Phase::ZERO)).collect();
        for &l in &leaves {
            d.add_edge(c, l, EdgeKind::Hadamard).unwrap();
        }
        d.set_outputs(leaves.clone());
        let before = d.clone();
        local_complement(&mut d, c).unwrap();
        assert_eq!(d.num_edges(), 6);
        for &l in &leaves {
            assert_eq!(d.spider(l).unwrap().phase, Phase::THREE_HALVES_PI);
        }
        assert_sound(&before, &d);
    }

    #[test]
    fn local_complement_removes_existing_edge() {
        let mut d = ZxDiagram::empty();
        let c = d.add_spider(Z, Phase::THREE_HALVES_PI);
        let a = d.add_spider(Z, Phase::ZERO);
        let b = d.add_spider(Z, Phase::new(1, 4));
        d.add_edge(c, a, EdgeKind::Hadamard).unwrap();
        d.add_edge(c, b, EdgeKind::Hadamard).unwrap();
        d.add_edge(a, b, EdgeKind::Hadamard).unwrap();
        d.set_outputs(vec![a, b]);
        let before = d.clone();
        local_complement(&mut d, c).unwrap();
        assert_eq!(d.num_edges(), 0);
        assert_eq!(d.spider(a).unwrap().phase, Phase::HALF_PI);
        assert_sound(&before, &d);

        let mut d = ZxDiagram::empty();
        let c = d.add_spider(Z, Phase::HALF_PI);
        let a = d.add_spider(Z, Phase::ZERO);
        d.add_edge(c, a, EdgeKind::Plain).unwrap();
        assert!(local_complement(&mut d, c).is_err());
    }

    #[test]
    fn plugging() {
        let d = plug_plus_states(&ZxDiagram::new(1, 1));
        assert!(d.is_closed());
        let v = evaluate(&d).scalar_value().unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        let closed = ZxDiagram::empty();
        assert_eq!(plug_plus_states(&closed), closed);
    }

    #[test]
    fn graph_like_conversion() {
        let before = ZxDiagram::wire(X, Phase::new(1, 4));
        let g = to_graph_like(&before);
        assert!(is_graph_like(&g));
        assert_sound(&before, &g);
        assert_eq!(to_graph_like(&g), g);
    }

    #[test]
    fn simplify_two_chain() {
        let mut d = ZxDiagram::empty();
        let a = d.add_spider(Z, Phase::ZERO);
        let m = d.add_spider(Z, Phase::ZERO);
        let b = d.add_spider(Z, Phase::ZERO);
        d.add_edge(a, m, EdgeKind::Hadamard).unwrap();
        d.add_edge(m, b, EdgeKind::Hadamard).unwrap();
        let (out, trace) = simplify_mbqc(&d);
        assert!(is_graph_like(&out));
        assert!(!trace.is_empty());
        assert_sound(&d, &out);
        let (empty, trace) = simplify_mbqc(&ZxDiagram::empty());
        assert_eq!(empty.num_spiders(), 0);
        assert!(trace.is_empty());
    }
}

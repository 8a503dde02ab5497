//! ZX-diagrams: Z/X spiders joined by plain or Hadamard edges, with ordered
//! boundary legs.
//!
//! Boundaries are not separate node kinds. `inputs` and `outputs` are ordered
//! lists of spider ids, and each entry gives that spider one extra open leg.
//! A spider may appear in both lists (or several times in one list).
//!
//! Node and edge ids are handed out monotonically and never reused, so traces
//! recorded during rewriting keep pointing at the same objects.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::Phase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpiderKind {
    Z,
    X,
}

impl SpiderKind {
    pub fn toggled(self) -> SpiderKind {
        match self {
            SpiderKind::Z => SpiderKind::X,
            SpiderKind::X => SpiderKind::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    #[serde(rename = "plain")]
    Plain,
    #[serde(rename = "h")]
    Hadamard,
}

impl EdgeKind {
    pub fn toggled(self) -> EdgeKind {
        match self {
            EdgeKind::Plain => EdgeKind::Hadamard,
            EdgeKind::Hadamard => EdgeKind::Plain,
        }
    }
}

/// A spider. `label` optionally names the oracle parameter whose value the
/// phase carries; the simplifier treats labeled phases as unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spider {
    pub kind: SpiderKind,
    pub phase: Phase,
    pub label: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: NodeId,
    pub b: NodeId,
    pub kind: EdgeKind,
}

impl Edge {
    /// The endpoint opposite `v`.
    pub fn other(&self, v: NodeId) -> NodeId {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: NodeId) -> bool {
        self.a == v || self.b == v
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZxDiagram {
    spiders: BTreeMap<NodeId, Spider>,
    edges: BTreeMap<EdgeId, Edge>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    next_node: usize,
    next_edge: usize,
}

/// One violated structural invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    UnknownEndpoint { edge: EdgeId, node: NodeId },
    SelfLoop { edge: EdgeId, node: NodeId },
    DanglingInput { index: usize, node: NodeId },
    DanglingOutput { index: usize, node: NodeId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }
}

impl ZxDiagram {
    pub fn empty() -> ZxDiagram {
        ZxDiagram::default()
    }

    /// `n_in` input and `n_out` output spiders, all phase-0 Z. Input `i` and
    /// output `i` are joined by a plain edge for `i < min(n_in, n_out)`; any
    /// surplus boundary spiders are left as dangling wires.
    pub fn new(n_in: usize, n_out: usize) -> ZxDiagram {
        let mut d = ZxDiagram::empty();
        let ins: Vec<NodeId> = (0..n_in).map(|_| d.add_spider(SpiderKind::Z, Phase::ZERO)).collect();
        let outs: Vec<NodeId> = (0..n_out).map(|_| d.add_spider(SpiderKind::Z, Phase::ZERO)).collect();
        for (&a, &b) in ins.iter().zip(&outs) {
            d.add_edge(a, b, EdgeKind::Plain).expect("fresh distinct spiders");
        }
        d.inputs = ins;
        d.outputs = outs;
        d
    }

    /// A single wire carrying one spider, e.g. a phase gate.
    pub fn wire(kind: SpiderKind, phase: Phase) -> ZxDiagram {
        let mut d = ZxDiagram::empty();
        let v = d.add_spider(kind, phase);
        d.inputs.push(v);
        d.outputs.push(v);
        d
    }

    pub fn add_spider(&mut self, kind: SpiderKind, phase: Phase) -> NodeId {
        let id = NodeId(self.next_node);
        self.next_node += 1;
        self.spiders.insert(id, Spider { kind, phase, label: None });
        id
    }

    /// Inserts `spider` under a caller-chosen id that must be unused.
    pub(crate) fn add_spider_at(&mut self, id: NodeId, spider: Spider) {
        assert!(!self.spiders.contains_key(&id), "node id {id} already in use");
        self.next_node = self.next_node.max(id.0 + 1);
        self.spiders.insert(id, spider);
    }

    pub fn add_labeled_spider(&mut self, kind: SpiderKind, phase: Phase, label: impl Into<String>) -> NodeId {
        let id = self.add_spider(kind, phase);
        self.spiders.get_mut(&id).unwrap().label = Some(label.into());
        id
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId, kind: EdgeKind) -> Result<EdgeId> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        for v in [a, b] {
            if !self.spiders.contains_key(&v) {
                return Err(Error::UnknownNode(v));
            }
        }
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(id, Edge { a, b, kind });
        Ok(id)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<Edge> {
        self.edges.remove(&e).ok_or(Error::UnknownEdge(e))
    }

    /// Removes a spider and its incident edges. Boundary references are left
    /// untouched; callers that remove boundary spiders must fix the lists.
    pub fn remove_spider(&mut self, v: NodeId) -> Result<Spider> {
        let s = self.spiders.remove(&v).ok_or(Error::UnknownNode(v))?;
        self.edges.retain(|_, e| !e.touches(v));
        Ok(s)
    }

    pub fn spider(&self, v: NodeId) -> Result<&Spider> {
        self.spiders.get(&v).ok_or(Error::UnknownNode(v))
    }

    pub fn spider_mut(&mut self, v: NodeId) -> Result<&mut Spider> {
        self.spiders.get_mut(&v).ok_or(Error::UnknownNode(v))
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.spiders.contains_key(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(&e).ok_or(Error::UnknownEdge(e))
    }

    pub fn edge_mut(&mut self, e: EdgeId) -> Result<&mut Edge> {
        self.edges.get_mut(&e).ok_or(Error::UnknownEdge(e))
    }

    pub fn spiders(&self) -> impl Iterator<Item = (NodeId, &Spider)> + '_ {
        self.spiders.iter().map(|(&k, v)| (k, v))
    }

    pub fn node_ids(&self) -> Vec<NodeId> {
        self.spiders.keys().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().map(|(&k, v)| (k, v))
    }

    pub fn num_spiders(&self) -> usize {
        self.spiders.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn set_inputs(&mut self, inputs: Vec<NodeId>) {
        self.inputs = inputs;
    }

    pub fn set_outputs(&mut self, outputs: Vec<NodeId>) {
        self.outputs = outputs;
    }

    pub(crate) fn boundary_mut(&mut self) -> (&mut Vec<NodeId>, &mut Vec<NodeId>) {
        (&mut self.inputs, &mut self.outputs)
    }

    pub fn is_closed(&self) -> bool {
        self.inputs.is_empty() && self.outputs.is_empty()
    }

    /// Ids of edges incident to `v`, ascending.
    pub fn incident(&self, v: NodeId) -> Vec<EdgeId> {
        self.edges.iter().filter(|(_, e)| e.touches(v)).map(|(&id, _)| id).collect()
    }

    /// Ids of edges joining `a` and `b`.
    pub fn edges_between(&self, a: NodeId, b: NodeId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, e)| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map(|(&id, _)| id)
            .collect()
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: NodeId) -> Vec<NodeId> {
        let set: BTreeSet<NodeId> = self
            .edges
            .values()
            .filter(|e| e.touches(v))
            .map(|e| e.other(v))
            .collect();
        set.into_iter().collect()
    }

    /// Number of incident edges (boundary legs excluded).
    pub fn degree(&self, v: NodeId) -> usize {
        self.edges.values().filter(|e| e.touches(v)).count()
    }

    /// Number of boundary legs on `v`.
    pub fn boundary_legs(&self, v: NodeId) -> usize {
        self.inputs.iter().chain(&self.outputs).filter(|&&b| b == v).count()
    }

    pub fn is_boundary(&self, v: NodeId) -> bool {
        self.boundary_legs(v) > 0
    }

    /// Copies every spider and edge of `other` into `self` with fresh ids and
    /// returns the id map.
    fn absorb(&mut self, other: &ZxDiagram) -> BTreeMap<NodeId, NodeId> {
        let mut map = BTreeMap::new();
        for (&id, s) in &other.spiders {
            let new = NodeId(self.next_node);
            self.next_node += 1;
            self.spiders.insert(new, s.clone());
            map.insert(id, new);
        }
        for e in other.edges.values() {
            let id = EdgeId(self.next_edge);
            self.next_edge += 1;
            let remap = |v: NodeId| map.get(&v).copied().unwrap_or(v);
            self.edges.insert(id, Edge { a: remap(e.a), b: remap(e.b), kind: e.kind });
        }
        map
    }

    /// Sequential composition: `self` first, then `next`. Each output leg of
    /// `self` is joined to the matching input leg of `next` by a plain edge.
    pub fn compose(&self, next: &ZxDiagram) -> Result<ZxDiagram> {
        if self.outputs.len() != next.inputs.len() {
            return Err(Error::ArityMismatch {
                left: self.outputs.len(),
                right: next.inputs.len(),
            });
        }
        let mut d = self.clone();
        let map = d.absorb(next);
        for (&o, i) in self.outputs.iter().zip(&next.inputs) {
            d.add_edge(o, map[i], EdgeKind::Plain)?;
        }
        d.outputs = next.outputs.iter().map(|v| map[v]).collect();
        Ok(d)
    }

    /// Parallel composition; boundary lists are concatenated, `self` first.
    pub fn tensor_product(&self, other: &ZxDiagram) -> ZxDiagram {
        let mut d = self.clone();
        let map = d.absorb(other);
        d.inputs.extend(other.inputs.iter().map(|v| map[v]));
        d.outputs.extend(other.outputs.iter().map(|v| map[v]));
        d
    }

    pub fn validate(&self) -> ValidationReport {
        let mut findings = Vec::new();
        for (&id, e) in &self.edges {
            for v in [e.a, e.b] {
                if !self.spiders.contains_key(&v) {
                    findings.push(Finding::UnknownEndpoint { edge: id, node: v });
                }
            }
            if e.a == e.b {
                findings.push(Finding::SelfLoop { edge: id, node: e.a });
            }
        }
        for (index, &node) in self.inputs.iter().enumerate() {
            if !self.spiders.contains_key(&node) {
                findings.push(Finding::DanglingInput { index, node });
            }
        }
        for (index, &node) in self.outputs.iter().enumerate() {
            if !self.spiders.contains_key(&node) {
                findings.push(Finding::DanglingOutput { index, node });
            }
        }
        ValidationReport { findings }
    }

    /// Structural equality ignoring edge ids.
    pub fn same_structure(&self, other: &ZxDiagram) -> bool {
        let key = |d: &ZxDiagram| {
            let mut es: Vec<(NodeId, NodeId, EdgeKind)> = d
                .edges
                .values()
                .map(|e| (e.a.min(e.b), e.a.max(e.b), e.kind))
                .collect();
            es.sort_by_key(|&(a, b, k)| (a, b, k == EdgeKind::Hadamard));
            es
        };
        self.spiders == other.spiders
            && self.inputs == other.inputs
            && self.outputs == other.outputs
            && key(self) == key(other)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = DiagramDoc {
            spiders: self
                .spiders
                .iter()
                .map(|(&id, s)| SpiderDoc {
                    id,
                    kind: s.kind,
                    phase: s.phase,
                    label: s.label.clone(),
                })
                .collect(),
            edges: self
                .edges
                .values()
                .map(|e| EdgeDoc { a: e.a, b: e.b, kind: e.kind })
                .collect(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        };
        serde_json::to_value(doc).expect("diagram documents always serialize")
    }

    /// Parses the JSON document form. The result is not validated; call
    /// [`ZxDiagram::validate`] before evaluating untrusted input.
    pub fn from_json(value: &serde_json::Value) -> Result<ZxDiagram> {
        let doc: DiagramDoc =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut d = ZxDiagram::empty();
        for s in doc.spiders {
            if d.spiders.contains_key(&s.id) {
                return Err(Error::Parse(format!("duplicate spider id {}", s.id)));
            }
            d.spiders.insert(s.id, Spider { kind: s.kind, phase: s.phase, label: s.label });
            d.next_node = d.next_node.max(s.id.0 + 1);
        }
        for e in doc.edges {
            let id = EdgeId(d.next_edge);
            d.next_edge += 1;
            d.edges.insert(id, Edge { a: e.a, b: e.b, kind: e.kind });
        }
        d.inputs = doc.inputs;
        d.outputs = doc.outputs;
        Ok(d)
    }

    /// Graphviz rendering: Z spiders as ellipses, X spiders as boxes, both
    /// labeled with their phase; Hadamard edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph zx {\n");
        for (&id, s) in &self.spiders {
            let shape = match s.kind {
                SpiderKind::Z => "ellipse",
                SpiderKind::X => "box",
            };
            let mut text = s.phase.to_string();
            if let Some(l) = &s.label {
                let _ = write!(text, " [{l}]");
            }
            let _ = writeln!(out, "  n{} [shape={shape}, label=\"{text}\"];", id.0);
        }
        for (i, v) in self.inputs.iter().enumerate() {
            let _ = writeln!(out, "  in{i} [shape=point];\n  in{i} -- n{};", v.0);
        }
        for (i, v) in self.outputs.iter().enumerate() {
            let _ = writeln!(out, "  out{i} [shape=point];\n  n{} -- out{i};", v.0);
        }
        for e in self.edges.values() {
            let style = match e.kind {
                EdgeKind::Plain => "",
                EdgeKind::Hadamard => " [style=dashed, color=blue]",
            };
            let _ = writeln!(out, "  n{} -- n{}{style};", e.a.0, e.b.0);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct SpiderDoc {
    id: NodeId,
    kind: SpiderKind,
    phase: Phase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    a: NodeId,
    b: NodeId,
    kind: EdgeKind,
}

#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    spiders: Vec<SpiderDoc>,
    edges: Vec<EdgeDoc>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
}

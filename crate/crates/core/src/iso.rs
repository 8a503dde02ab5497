//! Graph isomorphism between diagrams and between patterns.

use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::UnGraph;

use crate::diagram::{EdgeKind, SpiderKind, ZxDiagram};
use crate::mbqc::MeasurementPattern;
use crate::phase::Phase;

type NodeKey = (SpiderKind, Option<Phase>, Option<String>);

fn diagram_graph(d: &ZxDiagram, phases: bool, labels: bool) -> UnGraph<NodeKey, EdgeKind> {
    let mut g = UnGraph::new_undirected();
    let mut index = std::collections::BTreeMap::new();
    for (id, s) in d.spiders() {
        let key = (s.kind, phases.then_some(s.phase), if labels { s.label.clone() } else { None });
        index.insert(id, g.add_node(key));
    }
    for (_, e) in d.edges() {
        g.add_edge(index[&e.a], index[&e.b], e.kind);
    }
    g
}

/// Whether two closed diagrams have isomorphic graphs, matching spider
/// colors and edge kinds, and optionally phases and labels.
pub fn diagrams_isomorphic(d1: &ZxDiagram, d2: &ZxDiagram, phases: bool, labels: bool) -> bool {
    if d1.num_spiders() != d2.num_spiders() || d1.num_edges() != d2.num_edges() {
        return false;
    }
    let g1 = diagram_graph(d1, phases, labels);
    let g2 = diagram_graph(d2, phases, labels);
    is_isomorphic_matching(&g1, &g2, |a, b| a == b, |a, b| a == b)
}

fn pattern_graph(p: &MeasurementPattern, angles: bool) -> UnGraph<Option<(Phase, Option<String>)>, ()> {
    let mut g = UnGraph::new_undirected();
    let mut index = std::collections::BTreeMap::new();
    for q in p.qubits() {
        index.insert(q.id, g.add_node(angles.then(|| (q.angle, q.label.clone()))));
    }
    for &(a, b) in p.edges() {
        g.add_edge(index[&a], index[&b], ());
    }
    g
}

/// Whether two patterns have isomorphic entanglement graphs; with `angles`,
/// measurement angles and labels must correspond too.
pub fn patterns_isomorphic(p1: &MeasurementPattern, p2: &MeasurementPattern, angles: bool) -> bool {
    if p1.len() != p2.len() || p1.edges().len() != p2.edges().len() {
        return false;
    }
    let g1 = pattern_graph(p1, angles);
    let g2 = pattern_graph(p2, angles);
    is_isomorphic_matching(&g1, &g2, |a, b| a == b, |_, _| true)
}

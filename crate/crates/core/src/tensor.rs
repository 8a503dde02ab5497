//! Dense tensor semantics for ZX-diagrams.
//!
//! A diagram is turned into a factor graph over binary variables:
//!
//! * every Z spider owns one variable shared by all of its legs, weighted
//!   `1` at 0 and `e^{iα}` at 1;
//! * every X spider owns a `±` variable with the same weights, and each of
//!   its legs gets a computational-basis variable tied to it by the
//!   unnormalized `⟨b|±⟩ = (−1)^{b·s}` factor;
//! * plain edges identify the two leg variables they join;
//! * Hadamard edges contribute `[[1, 1], [1, −1]]/√2` between their legs.
//!
//! Spiders are unnormalized and the Hadamard factor carries `1/√2`, so two
//! consecutive Hadamard edges compose to the identity exactly.
//!
//! Contraction is bucket elimination: spiders are visited in an
//! [`EliminationOrder`], and visiting a spider multiplies every factor that
//! touches one of its variables and sums those variables out.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::diagram::{EdgeKind, NodeId, SpiderKind, ZxDiagram};
use crate::error::{Error, Result};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Dense tensor with all index dimensions 2, stored row-major over the
/// output indices followed by the input indices (first index most
/// significant). Read as a matrix, rows are outputs and columns inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    outputs: usize,
    inputs: usize,
    data: Vec<Complex64>,
}

impl Tensor {
    pub fn new(outputs: usize, inputs: usize, data: Vec<Complex64>) -> Tensor {
        assert_eq!(data.len(), 1usize << (outputs + inputs), "tensor data length must be 2^rank");
        Tensor { outputs, inputs, data }
    }

    pub fn scalar(value: Complex64) -> Tensor {
        Tensor::new(0, 0, vec![value])
    }

    /// A `2^n × 2^n` matrix given row-major.
    pub fn from_matrix(n: usize, rows: &[Vec<Complex64>]) -> Tensor {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Tensor::new(n, n, data)
    }

    pub fn identity(n: usize) -> Tensor {
        let dim = 1usize << n;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Tensor::new(n, n, data)
    }

    pub fn diagonal(n: usize, diag: &[Complex64]) -> Tensor {
        let dim = 1usize << n;
        assert_eq!(diag.len(), dim);
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &v) in diag.iter().enumerate() {
            data[i * dim + i] = v;
        }
        Tensor::new(n, n, data)
    }

    pub fn rank(&self) -> usize {
        self.outputs + self.inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> usize {
        1 << self.outputs
    }

    pub fn cols(&self) -> usize {
        1 << self.inputs
    }

    /// Entry at (`row`, `col`) of the matrix view.
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols() + col]
    }

    /// The value of a rank-0 tensor.
    pub fn scalar_value(&self) -> Option<Complex64> {
        (self.rank() == 0).then(|| self.data[0])
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Tensor {
        Tensor::new(self.outputs, self.inputs, self.data.iter().map(|&z| z * c).collect())
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &Tensor) -> Result<Tensor> {
        if self.inputs != rhs.outputs {
            return Err(Error::ShapeMismatch { left: self.inputs, right: rhs.outputs });
        }
        let (n, k, m) = (self.rows(), self.cols(), rhs.cols());
        let mut data = vec![Complex64::new(0.0, 0.0); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..m {
                    data[i * m + j] += a * rhs.data[l * m + j];
                }
            }
        }
        Ok(Tensor::new(self.outputs, rhs.inputs, data))
    }

    /// Kronecker product with `self` as the more significant factor.
    pub fn kron(&self, rhs: &Tensor) -> Tensor {
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), rhs.rows(), rhs.cols());
        let cols = c1 * c2;
        let mut data = vec![Complex64::new(0.0, 0.0); r1 * r2 * cols];
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let a = self.data[i1 * c1 + j1];
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        data[(i1 * r2 + i2) * cols + j1 * c2 + j2] = a * rhs.data[i2 * c2 + j2];
                    }
                }
            }
        }
        Tensor::new(self.outputs + rhs.outputs, self.inputs + rhs.inputs, data)
    }

    pub fn adjoint(&self) -> Tensor {
        let (r, c) = (self.rows(), self.cols());
        let mut data = vec![Complex64::new(0.0, 0.0); r * c];
        for i in 0..r {
            for j in 0..c {
                data[j * r + i] = self.data[i * c + j].conj();
            }
        }
        Tensor::new(self.inputs, self.outputs, data)
    }
}

/// The order in which spiders are eliminated during contraction. Only
/// spiders that own at least one summed variable appear; boundary Z spiders
/// whose single variable stays open are never eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder(pub Vec<NodeId>);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ContractionStats {
    /// Largest rank of a product tensor formed during elimination.
    pub max_rank: usize,
}

type Var = usize;

#[derive(Clone, Debug)]
struct Factor {
    vars: Vec<Var>,
    data: Vec<Complex64>,
}

impl Factor {
    fn new(vars: Vec<Var>, data: Vec<Complex64>) -> Factor {
        debug_assert_eq!(data.len(), 1 << vars.len());
        let mut f = Factor { vars, data };
        f.dedup();
        f
    }

    /// Collapses repeated variables to their diagonal.
    fn dedup(&mut self) {
        let uniq: Vec<Var> = {
            let mut seen = Vec::new();
            for &v in &self.vars {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            seen
        };
        if uniq.len() == self.vars.len() {
            return;
        }
        let k = uniq.len();
        let mut data = vec![Complex64::new(0.0, 0.0); 1 << k];
        for (idx, slot) in data.iter_mut().enumerate() {
            let mut old = 0usize;
            for &v in &self.vars {
                let pos = uniq.iter().position(|&u| u == v).unwrap();
                let bit = (idx >> (k - 1 - pos)) & 1;
                old = (old << 1) | bit;
            }
            *slot = self.data[old];
        }
        self.vars = uniq;
        self.data = data;
    }

    fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// A diagram lowered to factors over binary variables.
struct Network {
    factors: Vec<Factor>,
    /// Owning spider of every (root) variable.
    owner: BTreeMap<Var, NodeId>,
    /// Variables that remain open, one per boundary position (outputs
    /// first, then inputs). Positions may share a variable.
    open: Vec<Var>,
}

impl Network {
    fn build(d: &ZxDiagram) -> Network {
        let mut owner_of: Vec<NodeId> = Vec::new();
        let fresh = |owner: NodeId, owner_of: &mut Vec<NodeId>| {
            owner_of.push(owner);
            owner_of.len() - 1
        };
        let one = Complex64::new(1.0, 0.0);
        let parity = vec![one, one, one, -one];

        let mut factors = Vec::new();
        let mut spider_var = BTreeMap::new();
        for (id, s) in d.spiders() {
            let v = fresh(id, &mut owner_of);
            spider_var.insert(id, v);
            factors.push(Factor { vars: vec![v], data: vec![one, s.phase.unit()] });
        }

        // The computational-basis variable of a fresh leg on spider `id`.
        let leg = |id: NodeId, owner_of: &mut Vec<NodeId>, factors: &mut Vec<Factor>| {
            let s = d.spider(id).expect("validated diagram");
            match s.kind {
                SpiderKind::Z => spider_var[&id],
                SpiderKind::X => {
                    let l = fresh(id, owner_of);
                    factors.push(Factor { vars: vec![l, spider_var[&id]], data: parity.clone() });
                    l
                }
            }
        };

        let mut merges = Vec::new();
        let mut hadamards = Vec::new();
        for (_, e) in d.edges() {
            let a = leg(e.a, &mut owner_of, &mut factors);
            let b = leg(e.b, &mut owner_of, &mut factors);
            match e.kind {
                EdgeKind::Plain => merges.push((a, b)),
                EdgeKind::Hadamard => hadamards.push((a, b)),
            }
        }
        let mut open = Vec::new();
        for &id in d.outputs().iter().chain(d.inputs()) {
            open.push(leg(id, &mut owner_of, &mut factors));
        }

        let mut uf = UnionFind { parent: (0..owner_of.len()).collect() };
        for (a, b) in merges {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra != rb {
                // keep the smaller-id owner as the root
                let (keep, drop) = if owner_of[ra] <= owner_of[rb] { (ra, rb) } else { (rb, ra) };
                uf.parent[drop] = keep;
            }
        }
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        for (a, b) in hadamards {
            factors.push(Factor { vars: vec![a, b], data: vec![h, h, h, -h] });
        }
        let factors = factors
            .into_iter()
            .map(|f| Factor::new(f.vars.iter().map(|&v| uf.find(v)).collect(), f.data))
            .collect();
        let open: Vec<Var> = open.into_iter().map(|v| uf.find(v)).collect();
        let mut owner = BTreeMap::new();
        for (v, &node) in owner_of.iter().enumerate() {
            if uf.find(v) == v {
                owner.insert(v, node);
            }
        }
        Network { factors, owner, open }
    }

    /// Summed variables grouped by owning spider.
    fn owned_summed(&self) -> BTreeMap<NodeId, Vec<Var>> {
        let open: BTreeSet<Var> = self.open.iter().copied().collect();
        let mut by_node: BTreeMap<NodeId, Vec<Var>> = BTreeMap::new();
        for (&v, &n) in &self.owner {
            if !open.contains(&v) {
                by_node.entry(n).or_default().push(v);
            }
        }
        by_node
    }

    /// Upper bound on the magnitude of any entry of the contracted tensor:
    /// the product of factor max-norms times the number of summed terms.
    fn magnitude_bound(&self) -> f64 {
        let summed = self.owner.len() - self.open.iter().collect::<BTreeSet<_>>().len();
        let prod: f64 = self.factors.iter().map(Factor::max_norm).product();
        prod * 2f64.powi(summed as i32)
    }

    /// Greedy order: repeatedly eliminate the spider whose bucket product
    /// has the smallest rank, breaking ties by fill-in, then by lowest id.
    fn greedy_order(&self) -> EliminationOrder {
        let mut owned = self.owned_summed();
        let mut scopes: Vec<BTreeSet<Var>> =
            self.factors.iter().map(|f| f.vars.iter().copied().collect()).collect();
        let mut order = Vec::new();
        while !owned.is_empty() {
            let mut best: Option<((usize, usize), NodeId)> = None;
            for (&node, vars) in &owned {
                let mut union: BTreeSet<Var> = BTreeSet::new();
                let mut existing = 0usize;
                for s in &scopes {
                    if vars.iter().any(|v| s.contains(v)) {
                        existing = existing.max(s.len());
                        union.extend(s.iter().copied());
                    }
                }
                union.extend(vars.iter().copied());
                let rank = union.len();
                let fill = (rank - vars.len()).saturating_sub(existing);
                let key = (rank, fill);
                if best.is_none_or(|(k, _)| key < k) {
                    best = Some((key, node));
                }
            }
            let (_, node) = best.expect("non-empty");
            let vars = owned.remove(&node).unwrap();
            let mut union = BTreeSet::new();
            scopes.retain(|s| {
                if vars.iter().any(|v| s.contains(v)) {
                    union.extend(s.iter().copied());
                    false
                } else {
                    true
                }
            });
            for v in &vars {
                union.remove(v);
            }
            scopes.push(union);
            order.push(node);
        }
        EliminationOrder(order)
    }

    fn contract(mut self, order: &EliminationOrder, outputs: usize, inputs: usize) -> (Tensor, ContractionStats) {
        let mut owned = self.owned_summed();
        let mut stats = ContractionStats::default();
        let mut sequence: Vec<NodeId> = order.0.iter().copied().filter(|n| owned.contains_key(n)).collect();
        // anything the caller left out is eliminated afterwards in id order
        let listed: BTreeSet<NodeId> = sequence.iter().copied().collect();
        sequence.extend(owned.keys().copied().filter(|n| !listed.contains(n)).collect::<Vec<_>>());
        for node in sequence {
            let Some(vars) = owned.remove(&node) else { continue };
            let (bucket, rest): (Vec<Factor>, Vec<Factor>) = std::mem::take(&mut self.factors)
                .into_iter()
                .partition(|f| f.vars.iter().any(|v| vars.contains(v)));
            self.factors = rest;
            let product = multiply(&bucket);
            stats.max_rank = stats.max_rank.max(product.vars.len());
            self.factors.push(sum_out(product, &vars));
        }
        let last = multiply(&self.factors);
        stats.max_rank = stats.max_rank.max(last.vars.len());
        (expand_open(&last, &self.open, outputs, inputs), stats)
    }
}

fn multiply(factors: &[Factor]) -> Factor {
    let mut vars: Vec<Var> = Vec::new();
    for f in factors {
        for &v in &f.vars {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    vars.sort_unstable();
    let k = vars.len();
    let positions: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| f.vars.iter().map(|v| vars.binary_search(v).unwrap()).collect())
        .collect();
    let mut data = vec![Complex64::new(1.0, 0.0); 1 << k];
    for (idx, slot) in data.iter_mut().enumerate() {
        for (f, pos) in factors.iter().zip(&positions) {
            let mut sub = 0usize;
            for &p in pos {
                sub = (sub << 1) | ((idx >> (k - 1 - p)) & 1);
            }
            *slot *= f.data[sub];
            if *slot == Complex64::new(0.0, 0.0) {
                break;
            }
        }
    }
    Factor { vars, data }
}

fn sum_out(f: Factor, summed: &[Var]) -> Factor {
    let k = f.vars.len();
    let keep: Vec<usize> = (0..k).filter(|&i| !summed.contains(&f.vars[i])).collect();
    let kk = keep.len();
    let mut data = vec![Complex64::new(0.0, 0.0); 1 << kk];
    for (idx, &z) in f.data.iter().enumerate() {
        let mut sub = 0usize;
        for &p in &keep {
            sub = (sub << 1) | ((idx >> (k - 1 - p)) & 1);
        }
        data[sub] += z;
    }
    Factor { vars: keep.iter().map(|&p| f.vars[p]).collect(), data }
}

fn expand_open(f: &Factor, open: &[Var], outputs: usize, inputs: usize) -> Tensor {
    let rank = open.len();
    let k = f.vars.len();
    let mut data = vec![Complex64::new(0.0, 0.0); 1 << rank];
    'entries: for (idx, slot) in data.iter_mut().enumerate() {
        let mut assignment: BTreeMap<Var, usize> = BTreeMap::new();
        for (pos, &v) in open.iter().enumerate() {
            let bit = (idx >> (rank - 1 - pos)) & 1;
            if *assignment.entry(v).or_insert(bit) != bit {
                continue 'entries;
            }
        }
        let mut sub = 0usize;
        for &v in &f.vars {
            sub = (sub << 1) | assignment[&v];
        }
        debug_assert!(sub < (1 << k));
        *slot = f.data[sub];
    }
    Tensor::new(outputs, inputs, data)
}

/// Contracts `d` to its dense tensor using the greedy elimination order.
pub fn evaluate(d: &ZxDiagram) -> Tensor {
    evaluate_with_stats(d).0
}

pub fn evaluate_with_stats(d: &ZxDiagram) -> (Tensor, ContractionStats) {
    let net = Network::build(d);
    let order = net.greedy_order();
    net.contract(&order, d.outputs().len(), d.inputs().len())
}

/// Contracts `d` following `order`.
pub fn evaluate_with_order(d: &ZxDiagram, order: &EliminationOrder) -> (Tensor, ContractionStats) {
    Network::build(d).contract(order, d.outputs().len(), d.inputs().len())
}

pub fn elimination_order(d: &ZxDiagram) -> EliminationOrder {
    Network::build(d).greedy_order()
}

/// Bound on the magnitude of any entry of `evaluate(d)`; zero verdicts are
/// taken relative to it.
pub fn magnitude_bound(d: &ZxDiagram) -> f64 {
    Network::build(d).magnitude_bound()
}

/// Relative floor below which a contracted value counts as zero.
pub const ZERO_FLOOR: f64 = 1e-9;

/// Whether `t1 = c·t2` for some nonzero `c`, within
/// `tol · max(‖t1‖∞, ‖t2‖∞)`. Returns the least-squares `c`. Two zero
/// tensors are equivalent with `c = 1`.
pub fn equivalent_up_to_scalar(t1: &Tensor, t2: &Tensor, tol: f64) -> Result<(bool, Complex64)> {
    if t1.outputs != t2.outputs || t1.inputs != t2.inputs {
        return Err(Error::ShapeMismatch { left: t1.rank(), right: t2.rank() });
    }
    let (n1, n2) = (t1.max_norm(), t2.max_norm());
    let m = n1.max(n2);
    if m == 0.0 {
        return Ok((true, Complex64::new(1.0, 0.0)));
    }
    if n1 <= tol * m || n2 <= tol * m {
        return Ok((false, Complex64::new(0.0, 0.0)));
    }
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (a, b) in t1.data.iter().zip(&t2.data) {
        num += b.conj() * a;
        den += b.norm_sqr();
    }
    let c = num / den;
    let resid = t1
        .data
        .iter()
        .zip(&t2.data)
        .map(|(a, b)| (a - c * b).norm())
        .fold(0.0, f64::max);
    Ok((resid <= tol * m, c))
}

/// Same as [`equivalent_up_to_scalar`], but tensors whose max-norm falls
/// below the given absolute floors count as zero.
pub fn equivalent_with_floor(t1: &Tensor, floor1: f64, t2: &Tensor, floor2: f64, tol: f64) -> Result<bool> {
    let z1 = t1.max_norm() <= floor1;
    let z2 = t2.max_norm() <= floor2;
    if z1 || z2 {
        if t1.rank() != t2.rank() {
            return Err(Error::ShapeMismatch { left: t1.rank(), right: t2.rank() });
        }
        return Ok(z1 && z2);
    }
    Ok(equivalent_up_to_scalar(t1, t2, tol)?.0)
}

/// Evaluates two diagrams and compares them up to a nonzero scalar, treating
/// values below [`ZERO_FLOOR`] times each diagram's magnitude bound as zero.
pub fn diagrams_equivalent(d1: &ZxDiagram, d2: &ZxDiagram, tol: f64) -> Result<bool> {
    let t1 = evaluate(d1);
    let t2 = evaluate(d2);
    equivalent_with_floor(&t1, ZERO_FLOOR * magnitude_bound(d1), &t2, ZERO_FLOOR * magnitude_bound(d2), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::SpiderKind::{X, Z};
    use crate::phase::Phase;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    fn state(kind: SpiderKind, phase: Phase) -> ZxDiagram {
        let mut d = ZxDiagram::empty();
        let v = d.add_spider(kind, phase);
        d.set_outputs(vec![v]);
        d
    }

    #[test]
    fn one_leg_states() {
        let t = evaluate(&state(Z, Phase::ZERO));
        assert_eq!(t.data(), &[c(1.0, 0.0), c(1.0, 0.0)]);
        let t = evaluate(&state(X, Phase::ZERO));
        assert!(close(t.data()[0], c(2.0, 0.0)) && close(t.data()[1], c(0.0, 0.0)));
        let t = evaluate(&state(Z, Phase::PI));
        assert!(close(t.data()[0], c(1.0, 0.0)) && close(t.data()[1], c(-1.0, 0.0)));
    }

    #[test]
    fn two_leg_z_is_diagonal_phase() {
        let alpha = Phase::new(1, 4);
        let t = evaluate(&ZxDiagram::wire(Z, alpha));
        assert_eq!(t.rank(), 2);
        assert!(close(t.at(0, 0), c(1.0, 0.0)));
        assert!(close(t.at(1, 1), alpha.unit()));
        assert!(close(t.at(0, 1), c(0.0, 0.0)) && close(t.at(1, 0), c(0.0, 0.0)));
    }

    #[test]
    fn empty_diagram_is_one() {
        assert_eq!(evaluate(&ZxDiagram::empty()).scalar_value(), Some(c(1.0, 0.0)));
    }

    #[test]
    fn closed_chain_scalar_ignores_middle_phase() {
        // Z(0) -H- Z(a0) -H- Z(a1), closed: value 1 + e^{i a1}.
        for (a0, a1) in [(Phase::ZERO, Phase::ZERO), (Phase::PI, Phase::HALF_PI), (Phase::new(1, 4), Phase::PI)] {
            let mut d = ZxDiagram::empty();
            let s = d.add_spider(Z, Phase::ZERO);
            let m = d.add_spider(Z, a0);
            let e = d.add_spider(Z, a1);
            d.add_edge(s, m, EdgeKind::Hadamard).unwrap();
            d.add_edge(m, e, EdgeKind::Hadamard).unwrap();
            let v = evaluate(&d).scalar_value().unwrap();
            assert!(close(v, c(1.0, 0.0) + a1.unit()), "{v} for {a0:?} {a1:?}");
        }
    }

    #[test]
    fn double_hadamard_is_identity_exactly() {
        let mut d = ZxDiagram::empty();
        let a = d.add_spider(Z, Phase::ZERO);
        let m = d.add_spider(Z, Phase::ZERO);
        let b = d.add_spider(Z, Phase::ZERO);
        d.add_edge(a, m, EdgeKind::Hadamard).unwrap();
        d.add_edge(m, b, EdgeKind::Hadamard).unwrap();
        d.set_inputs(vec![a]);
        d.set_outputs(vec![b]);
        // H·H with the middle spider as the shared index
        let t = evaluate(&d);
        let id = Tensor::identity(1);
        for (x, y) in t.data().iter().zip(id.data()) {
            assert!(close(*x, *y));
        }
    }

    #[test]
    fn repeated_boundary_spider() {
        // a Z spider listed as both input and output is the identity
        let t = evaluate(&ZxDiagram::wire(Z, Phase::ZERO));
        assert_eq!(t, Tensor::identity(1));
        // listed twice as an output it is the GHZ-like copy state
        let mut d = ZxDiagram::empty();
        let v = d.add_spider(Z, Phase::ZERO);
        d.set_outputs(vec![v, v]);
        let t = evaluate(&d);
        assert_eq!(t.data(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn star_center_goes_last() {
        let mut d = ZxDiagram::empty();
        let center = d.add_spider(Z, Phase::ZERO);
        for _ in 0..5 {
            let leaf = d.add_spider(Z, Phase::HALF_PI);
            d.add_edge(center, leaf, EdgeKind::Hadamard).unwrap();
        }
        let order = elimination_order(&d);
        assert_eq!(order.0.len(), 6);
        let pos = order.0.iter().position(|&v| v == center).unwrap();
        assert!(pos >= 4, "center eliminated at step {pos}");
    }

    #[test]
    fn path_rank_is_two() {
        let mut d = ZxDiagram::empty();
        let mut prev = d.add_spider(Z, Phase::ZERO);
        for i in 0..20 {
            let v = d.add_spider(Z, Phase::new(i, 4));
            d.add_edge(prev, v, EdgeKind::Hadamard).unwrap();
            prev = v;
        }
        let (_, stats) = evaluate_with_stats(&d);
        assert_eq!(stats.max_rank, 2);
    }

    #[test]
    fn equivalence_helper() {
        let v = Tensor::new(1, 0, vec![c(1.0, 0.0), c(0.0, 1.0)]);
        let w = v.scale(c(2.0, 0.0));
        let (ok, k) = equivalent_up_to_scalar(&w, &v, 1e-9).unwrap();
        assert!(ok && close(k, c(2.0, 0.0)));
        let u = Tensor::new(1, 0, vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(!equivalent_up_to_scalar(&v, &u, 1e-9).unwrap().0);
        let z = Tensor::new(1, 0, vec![c(0.0, 0.0); 2]);
        assert_eq!(equivalent_up_to_scalar(&z, &z, 1e-9).unwrap(), (true, c(1.0, 0.0)));
        assert!(!equivalent_up_to_scalar(&z, &v, 1e-9).unwrap().0);
        assert!(matches!(
            equivalent_up_to_scalar(&v, &Tensor::identity(1), 1e-9),
            Err(Error::ShapeMismatch { .. })
        ));
    }
}

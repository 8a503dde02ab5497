//! Gate-list circuits, a dense simulator, and the translation to ZX.
//!
//! Basis states are ordered with qubit 0 as the most significant bit, so
//! `|σ₀σ₁σ₂⟩` has index `4σ₀ + 2σ₁ + σ₂`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagram::{EdgeKind, NodeId, SpiderKind, ZxDiagram};
use crate::error::{Error, Result};
use crate::oracle::Verdict;
use crate::phase::Phase;
use crate::tensor::Tensor;

/// Widest circuit [`unitary`] will build.
pub const MAX_DENSE_WIDTH: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    /// `diag(1, e^{iα})`; `param` names the oracle parameter it carries.
    Phase { qubit: usize, phase: Phase, param: Option<String> },
    Cnot { control: usize, target: usize },
    Z(usize),
    Y(usize),
    H(usize),
}

impl Gate {
    pub fn phase(qubit: usize, phase: Phase) -> Gate {
        Gate::Phase { qubit, phase, param: None }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Phase { qubit, .. } | Gate::Z(qubit) | Gate::Y(qubit) | Gate::H(qubit) => vec![qubit],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    fn op(&self) -> &'static str {
        match self {
            Gate::Phase { .. } => "p",
            Gate::Cnot { .. } => "cnot",
            Gate::Z(_) => "z",
            Gate::Y(_) => "y",
            Gate::H(_) => "h",
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    op: String,
    qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    width: usize,
    gates: Vec<GateDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Circuit {
        Circuit { width, gates: Vec::new() }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        for q in g.qubits() {
            if q >= self.width {
                return Err(Error::InvalidCircuit(format!("qubit {q} out of range for width {}", self.width)));
            }
        }
        if let Gate::Cnot { control, target } = g {
            if control == target {
                return Err(Error::InvalidCircuit(format!("CNOT control and target are both {control}")));
            }
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = CircuitDoc {
            width: self.width,
            gates: self
                .gates
                .iter()
                .map(|g| GateDoc {
                    op: g.op().to_string(),
                    qubits: g.qubits(),
                    phase: match g {
                        Gate::Phase { phase, .. } => Some(*phase),
                        _ => None,
                    },
                    param: match g {
                        Gate::Phase { param, .. } => param.clone(),
                        _ => None,
                    },
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("circuit serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Circuit> {
        let doc: CircuitDoc = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut c = Circuit::new(doc.width);
        for g in doc.gates {
            let arity = |k: usize| {
                if g.qubits.len() == k {
                    Ok(())
                } else {
                    Err(Error::InvalidCircuit(format!("gate {:?} takes {k} qubit(s), got {}", g.op, g.qubits.len())))
                }
            };
            let gate = match g.op.to_ascii_lowercase().as_str() {
                "p" | "phase" => {
                    arity(1)?;
                    let phase = g.phase.ok_or_else(|| Error::InvalidCircuit("phase gate without phase".into()))?;
                    Gate::Phase { qubit: g.qubits[0], phase, param: g.param }
                }
                "cnot" | "cx" => {
                    arity(2)?;
                    Gate::Cnot { control: g.qubits[0], target: g.qubits[1] }
                }
                "z" => {
                    arity(1)?;
                    Gate::Z(g.qubits[0])
                }
                "y" => {
                    arity(1)?;
                    Gate::Y(g.qubits[0])
                }
                "h" => {
                    arity(1)?;
                    Gate::H(g.qubits[0])
                }
                other => return Err(Error::InvalidCircuit(format!("unknown gate {other:?}"))),
            };
            c.push(gate)?;
        }
        Ok(c)
    }
}

fn bit(index: usize, qubit: usize, width: usize) -> usize {
    (index >> (width - 1 - qubit)) & 1
}

/// Applies `g` to every column of the row-major `dim × dim` matrix `m`.
fn apply(g: &Gate, m: &mut [Complex64], width: usize) {
    let dim = 1usize << width;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match g {
        Gate::Phase { qubit, phase, .. } => {
            let u = phase.unit();
            for r in 0..dim {
                if bit(r, *qubit, width) == 1 {
                    for c in 0..dim {
                        m[r * dim + c] *= u;
                    }
                }
            }
        }
        Gate::Z(q) => {
            for r in 0..dim {
                if bit(r, *q, width) == 1 {
                    for c in 0..dim {
                        m[r * dim + c] = -m[r * dim + c];
                    }
                }
            }
        }
        Gate::Cnot { control, target } => {
            let mask = 1usize << (width - 1 - target);
            for r in 0..dim {
                if bit(r, *control, width) == 1 && bit(r, *target, width) == 0 {
                    for c in 0..dim {
                        m.swap(r * dim + c, (r | mask) * dim + c);
                    }
                }
            }
        }
        Gate::Y(q) => {
            // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩
            let mask = 1usize << (width - 1 - q);
            for r in 0..dim {
                if bit(r, *q, width) == 0 {
                    for c in 0..dim {
                        let (a, b) = (m[r * dim + c], m[(r | mask) * dim + c]);
                        m[r * dim + c] = -i * b;
                        m[(r | mask) * dim + c] = i * a;
                    }
                }
            }
        }
        Gate::H(q) => {
            let mask = 1usize << (width - 1 - q);
            let h = one * std::f64::consts::FRAC_1_SQRT_2;
            for r in 0..dim {
                if bit(r, *q, width) == 0 {
                    for c in 0..dim {
                        let (a, b) = (m[r * dim + c], m[(r | mask) * dim + c]);
                        m[r * dim + c] = h * (a + b);
                        m[(r | mask) * dim + c] = h * (a - b);
                    }
                }
            }
        }
    }
}

/// The dense unitary of `c`.
pub fn unitary(c: &Circuit) -> Result<Tensor> {
    if c.width > MAX_DENSE_WIDTH {
        return Err(Error::WidthTooLarge(c.width));
    }
    let mut m = Tensor::identity(c.width).data().to_vec();
    for g in &c.gates {
        apply(g, &mut m, c.width);
    }
    Ok(Tensor::new(c.width, c.width, m))
}

/// Translates `c` into a ZX-diagram: CNOT as a Z copy spider joined to an X
/// spider, phase gates as two-leg Z spiders, Y as X(π) followed by Z(π), and
/// Hadamard as a Hadamard edge. Parameter names become spider labels.
pub fn to_zx(c: &Circuit) -> ZxDiagram {
    let mut d = ZxDiagram::empty();
    let inputs: Vec<NodeId> = (0..c.width).map(|_| d.add_spider(SpiderKind::Z, Phase::ZERO)).collect();
    let mut front = inputs.clone();
    let mut pending = vec![EdgeKind::Plain; c.width];
    let attach = |d: &mut ZxDiagram, front: &mut Vec<NodeId>, pending: &mut Vec<EdgeKind>, q: usize, v: NodeId| {
        d.add_edge(front[q], v, pending[q]).expect("fresh spider");
        front[q] = v;
        pending[q] = EdgeKind::Plain;
    };
    for g in &c.gates {
        match g {
            Gate::Phase { qubit, phase, param } => {
                let v = match param {
                    Some(p) => d.add_labeled_spider(SpiderKind::Z, *phase, p.clone()),
                    None => d.add_spider(SpiderKind::Z, *phase),
                };
                attach(&mut d, &mut front, &mut pending, *qubit, v);
            }
            Gate::Z(q) => {
                let v = d.add_spider(SpiderKind::Z, Phase::PI);
                attach(&mut d, &mut front, &mut pending, *q, v);
            }
            Gate::Y(q) => {
                let x = d.add_spider(SpiderKind::X, Phase::PI);
                attach(&mut d, &mut front, &mut pending, *q, x);
                let z = d.add_spider(SpiderKind::Z, Phase::PI);
                attach(&mut d, &mut front, &mut pending, *q, z);
            }
            Gate::Cnot { control, target } => {
                let zc = d.add_spider(SpiderKind::Z, Phase::ZERO);
                attach(&mut d, &mut front, &mut pending, *control, zc);
                let xt = d.add_spider(SpiderKind::X, Phase::ZERO);
                attach(&mut d, &mut front, &mut pending, *target, xt);
                d.add_edge(zc, xt, EdgeKind::Plain).expect("fresh spiders");
            }
            Gate::H(q) => {
                pending[*q] = pending[*q].toggled();
            }
        }
    }
    let outputs: Vec<NodeId> = (0..c.width)
        .map(|q| {
            let v = d.add_spider(SpiderKind::Z, Phase::ZERO);
            d.add_edge(front[q], v, pending[q]).expect("fresh spider");
            v
        })
        .collect();
    d.set_inputs(inputs);
    d.set_outputs(outputs);
    d
}

/// Tolerance used when reading an amplitude as 0 or 1.
pub const VERDICT_TOL: f64 = 1e-9;

/// `⟨+…+|U|+…+⟩` with normalized `|+⟩` states.
pub fn plus_amplitude(c: &Circuit) -> Result<Complex64> {
    let u = unitary(c)?;
    let dim = u.rows() as f64;
    Ok(u.data().iter().sum::<Complex64>() / dim)
}

/// Runs the oracle on `|+…+⟩` and reads the x-basis outcome: amplitude of
/// magnitude one means constant, zero means balanced.
pub fn dj_run_circuit(oracle: &Circuit) -> Result<Verdict> {
    if !(1..=3).contains(&oracle.width) {
        return Err(Error::Unsupported(format!("oracle width {} (expected 1 to 3)", oracle.width)));
    }
    let a = plus_amplitude(oracle)?.norm();
    if (a - 1.0).abs() <= VERDICT_TOL {
        Ok(Verdict::Constant)
    } else if a <= VERDICT_TOL {
        Ok(Verdict::Balanced)
    } else {
        Err(Error::NotPromise(format!("|⟨+|U|+⟩| = {a:.12}")))
    }
}

//! Deutsch-Jozsa oracles compiled from circuits to measurement patterns by
//! ZX-diagram rewriting, with a tensor-network evaluator to check every
//! step.
//!
//! ```
//! use zxmbqc::{dj_pattern_3q, run_postselected, BooleanFunction, Verdict};
//!
//! let f = BooleanFunction::new(3, 23).unwrap();
//! let outcome = run_postselected(&dj_pattern_3q(&f).unwrap());
//! assert_eq!(outcome.verdict, Verdict::Balanced);
//! ```

pub mod circuit;
pub mod diagram;
pub mod error;
pub mod iso;
pub mod mbqc;
pub mod oracle;
pub mod phase;
pub mod rewrite;
pub mod sweep;
pub mod tensor;

pub use circuit::{dj_run_circuit, plus_amplitude, to_zx, unitary, Circuit, Gate};
pub use diagram::{EdgeId, EdgeKind, NodeId, Spider, SpiderKind, ZxDiagram};
pub use error::{Error, Result};
pub use iso::{diagrams_isomorphic, patterns_isomorphic};
pub use mbqc::{
    dj_pattern, dj_pattern_1q, dj_pattern_2q, dj_pattern_3q, lattice_pattern_3q, pattern_from_graph_like,
    pattern_to_diagram, reduce_lattice, run_postselected, run_sampled, Basis, MeasurementPattern, PatternOutcome,
    Qubit,
};
pub use oracle::{
    classify, count_balanced, enumerate_promise, oracle_circuit, oracle_circuit_3q, phase_polynomial, variant,
    BooleanFunction, Verdict,
};
pub use phase::Phase;
pub use rewrite::{simplify_mbqc, RewriteStep};
pub use tensor::{evaluate, Tensor};

//! Verification sweep over every promise function of a given width. Each
//! function is checked independently, so the sweep fans out over a rayon
//! pool when the `parallel` feature is on and runs in order otherwise.
//! Records always come back in enumeration order.

use serde::Serialize;

use crate::circuit::{dj_run_circuit, plus_amplitude, to_zx};
use crate::error::Result;
use crate::mbqc::{dj_pattern, lattice_pattern_3q, pattern_from_graph_like, run_postselected};
use crate::oracle::{classify, oracle_circuit, variant, BooleanFunction, Verdict};
use crate::rewrite::simplify_mbqc;

/// Outcome of checking one function through every execution path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VariantRecord {
    pub n: u32,
    pub variant: String,
    pub table: u64,
    pub bits: String,
    pub expected: Verdict,
    pub circuit: Option<Verdict>,
    /// `|⟨+…+|U|+…+⟩|`
    pub amplitude: f64,
    pub pattern: Option<Verdict>,
    /// Verdict of the pattern compiled from the circuit by rewriting.
    pub compiled: Option<Verdict>,
    /// Verdict of the 6×6 lattice pattern (three-bit functions only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Verdict>,
    pub agree: bool,
}

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order matches input order.
#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Maps `f` over `items` on the calling thread.
pub fn seq_map<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Promise functions of width `n` paired with their variant ids, in the
/// order variants are numbered.
pub fn variants(n: u32) -> Vec<(String, BooleanFunction)> {
    let names: Vec<String> = match n {
        1 => ["i", "ii", "iii", "iv"].iter().map(|s| s.to_string()).collect(),
        2 => ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii"].iter().map(|s| s.to_string()).collect(),
        3 => (1..=72).map(|k| k.to_string()).collect(),
        _ => Vec::new(),
    };
    names
        .into_iter()
        .map(|id| {
            let f = variant(n, &id).expect("listed variant exists");
            (id, f)
        })
        .collect()
}

/// Checks one function: circuit amplitude, hand-built pattern, the pattern
/// compiled by rewriting the circuit's diagram, and for n = 3 the lattice.
pub fn verify(id: &str, f: &BooleanFunction) -> Result<VariantRecord> {
    let expected = classify(f)?;
    let circuit = oracle_circuit(f)?;
    let amplitude = plus_amplitude(&circuit)?.norm();
    let circuit_verdict = dj_run_circuit(&circuit).ok();
    let pattern = dj_pattern(f).ok().map(|p| run_postselected(&p).verdict);
    let (simplified, _) = simplify_mbqc(&to_zx(&circuit));
    let compiled = pattern_from_graph_like(&simplified).ok().map(|p| run_postselected(&p).verdict);
    let lattice = if f.n() == 3 { lattice_pattern_3q(f).ok().map(|p| run_postselected(&p).verdict) } else { None };
    let agree = [circuit_verdict, pattern, compiled].iter().all(|v| *v == Some(expected))
        && lattice.is_none_or(|v| v == expected);
    Ok(VariantRecord {
        n: f.n(),
        variant: id.to_string(),
        table: f.table(),
        bits: f.bits(),
        expected,
        circuit: circuit_verdict,
        amplitude,
        pattern,
        compiled,
        lattice,
        agree,
    })
}

/// Verifies every variant of width `n` (1 to 3).
pub fn verify_all(n: u32) -> Vec<VariantRecord> {
    let vs = variants(n);
    par_map(&vs, |(id, f)| verify(id, f).expect("variants satisfy the promise"))
}

/// [`verify_all`] on the calling thread regardless of features.
pub fn verify_all_sequential(n: u32) -> Vec<VariantRecord> {
    let vs = variants(n);
    seq_map(&vs, |(id, f)| verify(id, f).expect("variants satisfy the promise"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_lists() {
        assert_eq!(variants(1).len(), 4);
        assert_eq!(variants(2).len(), 8);
        assert_eq!(variants(3).len(), 72);
        assert!(variants(4).is_empty());
        assert_eq!(variants(3)[3].1.table(), 23);
    }

    #[test]
    fn parallel_matches_sequential() {
        assert_eq!(verify_all(2), verify_all_sequential(2));
        assert_eq!(par_map(&[1, 2, 3], |x| x * 2), vec![2, 4, 6]);
    }
}

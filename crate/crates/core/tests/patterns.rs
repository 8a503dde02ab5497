use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::Value;
use zxmbqc::mbqc::*;
use zxmbqc::oracle::{phase_polynomial, variant};
use zxmbqc::rewrite::simplify_mbqc;
use zxmbqc::sweep::{variants, verify_all};
use zxmbqc::tensor::{equivalent_with_floor, ZERO_FLOOR};
use zxmbqc::{
    classify, diagrams_isomorphic, evaluate, oracle_circuit_3q, patterns_isomorphic, to_zx, BooleanFunction, Error,
    Phase, Verdict,
};

fn golden() -> Value {
    serde_json::from_str(include_str!("fixtures/dj3_measurement_form.json")).unwrap()
}

/// The fixture instantiated for `f`.
fn golden_pattern(f: &BooleanFunction) -> MeasurementPattern {
    let doc = golden();
    let poly = phase_polynomial(f).unwrap();
    let names: Vec<&str> = doc["qubits"].as_array().unwrap().iter().map(|q| q["name"].as_str().unwrap()).collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let qubits = doc["qubits"]
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
        .map(|(i, q)| match q["param"].as_str() {
            Some(p) => {
                let mask = (0..3).filter(|b| p.contains(&format!("x{b}"))).fold(0, |m, b| m | 1 << b);
                Qubit::labeled(i, poly.coefficient(mask), p)
            }
            None => Qubit::new(i, Phase::ZERO),
        })
        .collect();
    let edges = doc["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (index[e[0].as_str().unwrap()], index[e[1].as_str().unwrap()]))
        .collect();
    let all: Vec<usize> = (0..names.len()).collect();
    MeasurementPattern::new(qubits, edges, all.clone(), all).unwrap()
}

#[test]
fn fixture_matches_builtin_pattern() {
    let doc = golden();
    let names: Vec<&str> = doc["qubits"].as_array().unwrap().iter().map(|q| q["name"].as_str().unwrap()).collect();
    assert_eq!(names, DJ3_NAMES);
    for (id, f) in variants(3) {
        assert_eq!(golden_pattern(&f), dj_pattern_3q(&f).unwrap(), "variant {id}");
    }
}

#[test]
fn compiled_diagram_matches_fixture() {
    for (id, f) in variants(3) {
        let (d, trace) = simplify_mbqc(&to_zx(&oracle_circuit_3q(&f).unwrap()));
        assert!(!trace.is_empty());
        assert_eq!((d.num_spiders(), d.num_edges()), (11, 12));
        assert!(diagrams_isomorphic(&d, &pattern_to_diagram(&golden_pattern(&f)), true, true), "variant {id}");
    }
}

#[test]
fn extraction_examples() {
    let f = variant(3, "4").unwrap();
    let p = dj_pattern_3q(&f).unwrap();
    assert_eq!((p.len(), p.edges().len()), (11, 12));
    let back = pattern_from_graph_like(&pattern_to_diagram(&p)).unwrap();
    assert!(patterns_isomorphic(&back, &p, true));
    assert_eq!(back.order(), (0..11).collect::<Vec<_>>());

    let zero = dj_pattern_3q(&BooleanFunction::new(3, 0).unwrap()).unwrap();
    assert!(zero.qubits().iter().all(|q| q.angle.is_zero()));

    let a = Phase::new(3, 4);
    let one = MeasurementPattern::new(vec![Qubit::new(0, a)], vec![], vec![0], vec![0]).unwrap();
    let v = evaluate(&pattern_to_diagram(&one)).scalar_value().unwrap();
    assert!((v - (Complex64::new(1.0, 0.0) + a.unit())).norm() < 1e-12);
    assert_eq!(pattern_to_diagram(&MeasurementPattern::default()).num_spiders(), 0);
}

#[test]
fn pattern_json() {
    let p = chains_2q([Phase::ZERO, Phase::PI, Phase::ZERO, Phase::HALF_PI]).unwrap();
    let doc = p.to_json();
    assert_eq!(doc["qubits"][2]["angle"], "1");
    assert!(doc["qubits"][0].get("basis").is_none());
    assert_eq!(doc["edges"][0], serde_json::json!([0, 1]));
    assert_eq!(MeasurementPattern::from_json(&doc).unwrap(), p);
    let mut bad = doc.clone();
    bad["edges"].as_array_mut().unwrap().push(serde_json::json!([0, 9]));
    assert!(matches!(MeasurementPattern::from_json(&bad), Err(Error::InvalidPattern(_))));
}

#[test]
fn two_qubit_patterns() {
    let v = |id| dj_pattern_2q(&variant(2, id).unwrap()).unwrap();
    assert!(v("i").qubits().iter().all(|q| q.angle.is_zero()));
    let iii = v("iii");
    let chain1: Vec<Phase> = (0..3).map(|k| iii.qubit(k).unwrap().angle).collect();
    assert_eq!(chain1, [Phase::ZERO, Phase::ZERO, Phase::PI]);
    let vi = v("vi");
    assert_eq!(vi.qubits().iter().filter(|q| q.angle == Phase::PI).count(), 4);
    assert_eq!(run_postselected(&v("i")).verdict, Verdict::Constant);
    assert_eq!(run_postselected(&iii).verdict, Verdict::Balanced);
    assert_eq!(run_postselected(&v("iv")).verdict, Verdict::Balanced);
}

#[test]
fn one_qubit_pattern() {
    for id in ["i", "ii", "iii", "iv"] {
        let f = variant(1, id).unwrap();
        assert_eq!(run_postselected(&dj_pattern_1q(&f).unwrap()).verdict, classify(&f).unwrap());
    }
}

#[test]
fn three_qubit_runs() {
    let constant = dj_pattern_3q(&BooleanFunction::new(3, 255).unwrap()).unwrap();
    assert_eq!(run_postselected(&constant).verdict, Verdict::Constant);
    let balanced = dj_pattern_3q(&BooleanFunction::new(3, 23).unwrap()).unwrap();
    let out = run_postselected(&balanced);
    assert_eq!(out.verdict, Verdict::Balanced);
    assert!(out.amplitude.norm() <= ZERO_FLOOR * out.magnitude_bound);
    assert!(matches!(dj_pattern_3q(&BooleanFunction::new(3, 7).unwrap()), Err(Error::NotPromise(_))));
}

#[test]
fn zero_one_dichotomy() {
    let reference = run_postselected(&dj_pattern_3q(&BooleanFunction::new(3, 0).unwrap()).unwrap()).amplitude;
    for (id, f) in variants(3) {
        let a = run_postselected(&dj_pattern_3q(&f).unwrap()).amplitude.norm() / reference.norm();
        let want = if classify(&f).unwrap() == Verdict::Constant { 1.0 } else { 0.0 };
        assert!((a - want).abs() < 1e-9, "variant {id}: {a}");
    }
}

#[test]
fn sampled_chains() {
    for (id, f) in variants(2) {
        let p = dj_pattern_2q(&f).unwrap();
        let out = run_sampled(&p, 11, 200).unwrap();
        let counts = out.shots.unwrap();
        let expected = classify(&f).unwrap();
        let hits = if expected == Verdict::Constant { counts.constant } else { counts.balanced };
        assert_eq!(hits, 200, "variant {id}");
        assert_eq!(out.verdict, run_postselected(&p).verdict);
    }
    let f = variant(3, "4").unwrap();
    assert!(matches!(run_sampled(&dj_pattern_3q(&f).unwrap(), 1, 10), Err(Error::NotChain(_))));
    let a = run_sampled(&dj_pattern_2q(&variant(2, "v").unwrap()).unwrap(), 5, 50).unwrap();
    let b = run_sampled(&dj_pattern_2q(&variant(2, "v").unwrap()).unwrap(), 5, 50).unwrap();
    assert_eq!(a, b);
}

#[test]
fn lattice_patterns() {
    let zero = BooleanFunction::new(3, 0).unwrap();
    let p = lattice_pattern_3q(&zero).unwrap();
    assert_eq!(p.len(), 36);
    assert_eq!(p.edges().len(), 60);
    assert_eq!(p.order(), (0..36).collect::<Vec<_>>());
    assert_eq!(run_postselected(&p).verdict, Verdict::Constant);
    let balanced = lattice_pattern_3q(&BooleanFunction::new(3, 23).unwrap()).unwrap();
    let out = run_postselected(&balanced);
    assert_eq!(out.verdict, Verdict::Balanced);
    assert!(out.max_rank <= 12);
    assert!(reduce_lattice(&MeasurementPattern::default()).unwrap().is_empty());
}

#[test]
fn lattice_reduction() {
    for (id, f) in variants(3) {
        let lattice = lattice_pattern_3q(&f).unwrap();
        let reduced = reduce_lattice(&lattice).unwrap();
        assert_eq!(reduced.len(), 11);
        assert!(patterns_isomorphic(&reduced, &golden_pattern(&f), false), "variant {id}");
        assert!(patterns_isomorphic(&reduced, &golden_pattern(&f), true), "variant {id}");
        let (d1, d2) = (pattern_to_diagram(&lattice), pattern_to_diagram(&reduced));
        let (t1, t2) = (evaluate(&d1), evaluate(&d2));
        let f1 = ZERO_FLOOR * zxmbqc::tensor::magnitude_bound(&d1);
        let f2 = ZERO_FLOOR * zxmbqc::tensor::magnitude_bound(&d2);
        assert!(equivalent_with_floor(&t1, f1, &t2, f2, 1e-9).unwrap(), "variant {id}");
    }
}

#[test]
fn stuck_reduction() {
    let f = BooleanFunction::new(3, 0).unwrap();
    let mut doc = lattice_pattern_3q(&f).unwrap().to_json();
    let spare = lattice_id(1, 1);
    for q in doc["qubits"].as_array_mut().unwrap() {
        if q["id"] == spare {
            q["angle"] = "1/4".into();
        }
    }
    let p = MeasurementPattern::from_json(&doc).unwrap();
    assert!(matches!(reduce_lattice(&p), Err(Error::ReductionStuck(_))));
}

#[test]
fn full_sweep_agrees() {
    for n in 1..=3 {
        let records = verify_all(n);
        assert!(records.iter().all(|r| r.agree), "n = {n}");
        if n == 3 {
            assert!(records.iter().all(|r| r.lattice.is_some()));
        }
    }
}

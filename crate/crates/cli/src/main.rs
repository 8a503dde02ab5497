//! `zxmbqc`: classify Deutsch-Jozsa oracles, synthesize their circuits,
//! compile them to measurement patterns and check every step.
//!
//! Output is JSON on stdout (one document per run) unless `--human` is
//! given. Exit codes: 0 success, 1 promise violation, 2 usage or input
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use zxmbqc::mbqc::{chains_2q, lattice_pattern_3q, reduce_lattice, run_sampled};
use zxmbqc::oracle::{oracle_circuit, two_qubit_angle_circuit, two_qubit_spider_angles};
use zxmbqc::rewrite::simplify_mbqc;
use zxmbqc::sweep::verify_all;
use zxmbqc::{
    classify, dj_pattern, dj_run_circuit, pattern_from_graph_like, pattern_to_diagram, plus_amplitude,
    run_postselected, to_zx, variant, BooleanFunction, Circuit, Error, MeasurementPattern, PatternOutcome,
    ZxDiagram,
};

/// Seed used by `simulate --pattern --shots` when `--seed` is absent.
const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "zxmbqc", version, about = "Deutsch-Jozsa oracles from circuits to measurement patterns")]
struct Cli {
    /// Print aligned tables instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Constant or balanced.
    Classify(FunctionArgs),
    /// The oracle circuit as JSON.
    SynthCircuit {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite the oracle's diagram into a measurement pattern.
    CompileMbqc {
        #[command(flatten)]
        function: FunctionArgs,
        /// Compile this circuit file instead of a synthesized oracle.
        #[arg(long)]
        circuit: Option<PathBuf>,
        /// Include every applied rewrite.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a circuit on |+…+⟩ or a measurement pattern.
    Simulate {
        #[arg(long, conflicts_with = "pattern")]
        circuit: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Sample this many shots instead of post-selecting.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check every promise function of width n through every path.
    VerifyAll {
        #[arg(long)]
        n: u32,
    },
    /// The 6×6 lattice pattern, its verdict and its reduction.
    Lattice {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of a diagram or pattern.
    ExportDot {
        target: Target,
        #[command(flatten)]
        function: FunctionArgs,
        /// Render this pattern file (target `pattern`).
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Default)]
struct FunctionArgs {
    #[arg(long)]
    n: Option<u32>,
    /// Truth table, decimal or as 2ⁿ binary digits with f(0) first.
    #[arg(long, conflicts_with = "variant")]
    table: Option<String>,
    /// Variant id: i…viii for n ≤ 2, 1…72 for n = 3.
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// Circuit translation of the oracle.
    Oracle,
    /// The oracle diagram after simplification.
    Compiled,
    /// The hand-built measurement pattern (or `--pattern FILE`).
    Pattern,
    Lattice,
    /// The lattice after removing spare qubits.
    Reduced,
    Empty,
}

enum Failure {
    Promise(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NotPromise(_) => Failure::Promise(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl FunctionArgs {
    fn resolve(&self) -> Result<BooleanFunction, Failure> {
        let n = self.n.ok_or_else(|| usage("--n is required"))?;
        match (&self.table, &self.variant) {
            (Some(t), _) => Ok(BooleanFunction::parse(n, t).map_err(|e| usage(format!("--table: {e}")))?),
            (None, Some(v)) => Ok(variant(n, v).map_err(|e| usage(format!("--variant: {e}")))?),
            (None, None) => Err(usage("one of --table or --variant is required")),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Emits `doc` to `out` when given (and a short receipt on stdout), or
/// returns it for stdout.
fn deliver(doc: Value, out: &Option<PathBuf>) -> Outcome {
    match out {
        Some(p) => {
            write_out(p, &render_json(&doc))?;
            Ok(json!({ "written": p.display().to_string() }))
        }
        None => Ok(doc),
    }
}

fn outcome_json(o: &PatternOutcome) -> Value {
    let mut v = json!({
        "verdict": o.verdict,
        "amplitude": [o.amplitude.re, o.amplitude.im],
        "magnitude_bound": o.magnitude_bound,
        "max_rank": o.max_rank,
    });
    if let Some(s) = o.shots {
        v["shots"] = json!(s);
    }
    v
}

/// The circuit compiled for `f`: the labeled angle circuit for two bits, the
/// synthesized oracle otherwise.
fn compile_circuit(f: &BooleanFunction) -> Result<Circuit, Failure> {
    if f.n() == 2 {
        Ok(two_qubit_angle_circuit(two_qubit_spider_angles(f)?)?)
    } else {
        Ok(oracle_circuit(f)?)
    }
}

fn classify_cmd(args: &FunctionArgs) -> Outcome {
    let f = args.resolve()?;
    Ok(json!({ "verdict": classify(&f)? }))
}

fn synth_cmd(args: &FunctionArgs, out: &Option<PathBuf>) -> Outcome {
    let f = args.resolve()?;
    deliver(oracle_circuit(&f)?.to_json(), out)
}

fn compile_cmd(args: &FunctionArgs, circuit: &Option<PathBuf>, trace: bool, out: &Option<PathBuf>) -> Outcome {
    let c = match circuit {
        Some(path) => Circuit::from_json(&read_json(path)?)?,
        None => {
            let f = args.resolve()?;
            classify(&f)?;
            compile_circuit(&f)?
        }
    };
    let (d, steps) = simplify_mbqc(&to_zx(&c));
    let pattern = pattern_from_graph_like(&d)?;
    let mut doc = json!({
        "pattern": pattern.to_json(),
        "qubits": pattern.len(),
        "edges": pattern.edges().len(),
        "steps": steps.len(),
        "verdict": run_postselected(&pattern).verdict,
    });
    if trace {
        doc["trace"] = json!(steps);
    }
    deliver(doc, out)
}

fn simulate_cmd(circuit: &Option<PathBuf>, pattern: &Option<PathBuf>, shots: Option<u64>, seed: u64) -> Outcome {
    match (circuit, pattern) {
        (Some(path), None) => {
            let c = Circuit::from_json(&read_json(path)?)?;
            let a = plus_amplitude(&c)?;
            let verdict = dj_run_circuit(&c)?;
            Ok(json!({ "amplitude": [a.re, a.im], "magnitude": a.norm(), "verdict": verdict }))
        }
        (None, Some(path)) => {
            let p = MeasurementPattern::from_json(&read_json(path)?)?;
            let o = match shots {
                Some(s) => run_sampled(&p, seed, s)?,
                None => run_postselected(&p),
            };
            let mut v = outcome_json(&o);
            if shots.is_some() {
                v["seed"] = json!(seed);
            }
            Ok(v)
        }
        _ => Err(usage("one of --circuit or --pattern is required")),
    }
}

fn verify_cmd(n: u32) -> Outcome {
    if !(1..=3).contains(&n) {
        return Err(usage(format!("--n {n}: verify-all supports n = 1, 2, 3")));
    }
    let records = verify_all(n);
    let agree = records.iter().all(|r| r.agree);
    Ok(json!({ "n": n, "count": records.len(), "all_agree": agree, "records": records }))
}

fn lattice_cmd(args: &FunctionArgs, out: &Option<PathBuf>) -> Outcome {
    let f = args.resolve()?;
    if f.n() != 3 {
        return Err(usage("the lattice pattern needs --n 3"));
    }
    let p = lattice_pattern_3q(&f)?;
    let reduced = reduce_lattice(&p)?;
    let small = dj_pattern(&f)?;
    let doc = json!({
        "pattern": p.to_json(),
        "outcome": outcome_json(&run_postselected(&p)),
        "reduced": reduced.to_json(),
        "reduced_matches": zxmbqc::patterns_isomorphic(&reduced, &small, true),
    });
    deliver(doc, out)
}

fn dot_cmd(target: Target, args: &FunctionArgs, pattern: &Option<PathBuf>, out: &Option<PathBuf>) -> Outcome {
    let d: ZxDiagram = match target {
        Target::Empty => ZxDiagram::empty(),
        Target::Pattern if pattern.is_some() => {
            let path = pattern.as_ref().unwrap();
            pattern_to_diagram(&MeasurementPattern::from_json(&read_json(path)?)?)
        }
        Target::Oracle => to_zx(&compile_circuit(&args.resolve()?)?),
        Target::Compiled => simplify_mbqc(&to_zx(&compile_circuit(&args.resolve()?)?)).0,
        Target::Pattern => {
            let f = args.resolve()?;
            let p = if f.n() == 2 { chains_2q(two_qubit_spider_angles(&f)?)? } else { dj_pattern(&f)? };
            pattern_to_diagram(&p)
        }
        Target::Lattice => pattern_to_diagram(&lattice_pattern_3q(&args.resolve()?)?),
        Target::Reduced => pattern_to_diagram(&reduce_lattice(&lattice_pattern_3q(&args.resolve()?)?)?),
    };
    let dot = d.to_dot();
    let mut doc = json!({ "nodes": d.num_spiders(), "edges": d.num_edges() });
    match out {
        Some(p) => {
            write_out(p, &dot)?;
            doc["written"] = json!(p.display().to_string());
        }
        None => doc["dot"] = json!(dot),
    }
    Ok(doc)
}

/// Rounds every float to 12 significant digits so output is stable.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let r: f64 = format!("{x:.11e}").parse().unwrap();
            let r = if r == 0.0 { 0.0 } else { r };
            *v = serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn render_json(v: &Value) -> String {
    let mut v = v.clone();
    round_floats(&mut v);
    serde_json::to_string(&v).expect("values serialize")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => {
            let mut o = other.clone();
            round_floats(&mut o);
            o.to_string()
        }
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_human(v: &Value) -> String {
    let Value::Object(map) = v else { return cell(v) + "\n" };
    let mut out = String::new();
    let scalars: Vec<Vec<String>> = map
        .iter()
        .filter(|(_, x)| !x.is_array() && !x.is_object() || is_pair(x))
        .filter(|(k, _)| k.as_str() != "dot")
        .map(|(k, x)| vec![format!("{k}:"), cell(x)])
        .collect();
    out.push_str(&table(&scalars));
    if let Some(Value::Array(records)) = map.get("records") {
        out.push('\n');
        out.push_str(&records_table(records));
    }
    for key in ["pattern", "reduced"] {
        if let Some(Value::Object(p)) = map.get(key) {
            out.push_str(&format!("\n{key}:\n"));
            out.push_str(&pattern_table(p));
        }
    }
    if let Some(Value::Object(o)) = map.get("outcome") {
        out.push('\n');
        out.push_str(&render_human(&Value::Object(o.clone())));
    }
    if let Some(Value::String(dot)) = map.get("dot") {
        out.push('\n');
        out.push_str(dot);
    }
    out
}

fn is_pair(v: &Value) -> bool {
    matches!(v, Value::Array(a) if a.len() == 2 && a.iter().all(Value::is_number))
}

fn records_table(records: &[Value]) -> String {
    let Some(Value::Object(first)) = records.first() else { return String::new() };
    let keys: Vec<&String> = first.keys().collect();
    let mut rows = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for r in records {
        rows.push(keys.iter().map(|k| cell(r.get(k.as_str()).unwrap_or(&Value::Null))).collect());
    }
    table(&rows)
}

fn pattern_table(p: &Map<String, Value>) -> String {
    let mut rows = vec![vec!["id".to_string(), "angle".into(), "basis".into(), "label".into()]];
    for q in p.get("qubits").and_then(Value::as_array).into_iter().flatten() {
        rows.push(vec![
            cell(&q["id"]),
            cell(&q["angle"]),
            q.get("basis").map(cell).unwrap_or_else(|| "xy".into()),
            cell(q.get("label").unwrap_or(&Value::Null)),
        ]);
    }
    let edges: Vec<String> = p
        .get("edges")
        .and_then(Value::as_array)
        .into_iter()
        .flatten()
        .map(|e| format!("{}-{}", e[0], e[1]))
        .collect();
    format!("{}edges: {}\n", table(&rows), edges.join(" "))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify(f) => classify_cmd(f),
        Command::SynthCircuit { function, out } => synth_cmd(function, out),
        Command::CompileMbqc { function, circuit, trace, out } => compile_cmd(function, circuit, *trace, out),
        Command::Simulate { circuit, pattern, shots, seed } => simulate_cmd(circuit, pattern, *shots, *seed),
        Command::VerifyAll { n } => verify_cmd(*n),
        Command::Lattice { function, out } => lattice_cmd(function, out),
        Command::ExportDot { target, function, pattern, out } => dot_cmd(*target, function, pattern, out),
    }
}

fn main() -> ExitCode {
    let human = std::env::args().any(|a| a == "--human");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.kind().to_string();
            let detail = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            if human {
                eprintln!("{e}");
            } else {
                println!("{}", json!({ "error": detail, "kind": msg }));
            }
            return ExitCode::from(2);
        }
    };
    let (doc, code) = match run(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Promise(m)) => (json!({ "error": m }), 1),
        Err(Failure::Usage(m)) => (json!({ "error": m }), 2),
    };
    if cli.human {
        print!("{}", render_human(&doc));
    } else {
        println!("{}", render_json(&doc));
    }
    ExitCode::from(code)
}

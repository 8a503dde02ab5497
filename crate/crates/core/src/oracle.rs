//! Boolean functions under the constant-or-balanced promise and the phase
//! oracles that encode them.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{unitary, Circuit, Gate};
use crate::error::{Error, Result};
use crate::phase::Phase;
use crate::tensor::{equivalent_up_to_scalar, Tensor};

/// Largest input width a truth table can hold (2⁶ = 64 output bits).
pub const MAX_BITS: u32 = 6;

/// A truth table `f: {0,1}ⁿ → {0,1}`. Bit `2ⁿ − 1 − i` of `table` is
/// `f(i)`, where input `i` is read as `σ₀σ₁…` with `σ₀` most significant.
/// So `f(000), …, f(111) = 0,0,0,1,0,1,1,1` is `0b00010111 = 23`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BooleanFunction {
    n: u32,
    table: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Constant,
    Balanced,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "constant",
            Verdict::Balanced => "balanced",
        })
    }
}

impl BooleanFunction {
    pub fn new(n: u32, table: u64) -> Result<BooleanFunction> {
        if n == 0 || n > MAX_BITS {
            return Err(Error::Unsupported(format!("{n}-bit functions (supported: 1 to {MAX_BITS})")));
        }
        let size = 1u32 << n;
        if size < 64 && table >> size != 0 {
            return Err(Error::Parse(format!("table {table} does not fit {size} output bits")));
        }
        Ok(BooleanFunction { n, table })
    }

    /// Builds the table from `f(0), f(1), …` in input order.
    pub fn from_outputs(outputs: &[bool]) -> Result<BooleanFunction> {
        let size = outputs.len();
        if !size.is_power_of_two() || size < 2 {
            return Err(Error::Parse(format!("{size} outputs is not 2^n for n ≥ 1")));
        }
        let n = size.trailing_zeros();
        let table = outputs.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        BooleanFunction::new(n, table)
    }

    /// Parses a table given in decimal or as exactly 2ⁿ binary digits.
    pub fn parse(n: u32, s: &str) -> Result<BooleanFunction> {
        let s = s.trim();
        let size = 1usize.checked_shl(n).unwrap_or(0);
        let binary = s.strip_prefix("0b").map(|b| (b, true)).unwrap_or((s, s.len() == size));
        let table = if binary.1 && !binary.0.is_empty() && binary.0.chars().all(|c| c == '0' || c == '1') {
            u64::from_str_radix(binary.0, 2)
        } else {
            s.parse::<u64>()
        }
        .map_err(|_| Error::Parse(format!("invalid truth table {s:?}")))?;
        BooleanFunction::new(n, table)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn table(&self) -> u64 {
        self.table
    }

    pub fn size(&self) -> u32 {
        1 << self.n
    }

    /// `f(input)`.
    pub fn value(&self, input: usize) -> bool {
        (self.table >> (self.size() as usize - 1 - input)) & 1 == 1
    }

    pub fn outputs(&self) -> Vec<bool> {
        (0..self.size() as usize).map(|i| self.value(i)).collect()
    }

    pub fn ones(&self) -> u32 {
        self.table.count_ones()
    }

    /// The table as 2ⁿ binary digits, `f(0)` first.
    pub fn bits(&self) -> String {
        self.outputs().iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

pub fn classify(f: &BooleanFunction) -> Result<Verdict> {
    let ones = f.ones();
    if ones == 0 || ones == f.size() {
        Ok(Verdict::Constant)
    } else if ones == f.size() / 2 {
        Ok(Verdict::Balanced)
    } else {
        Err(Error::NotPromise(format!("{ones} of {} outputs are 1", f.size())))
    }
}

/// Number of balanced `n`-bit functions, `C(2ⁿ, 2ⁿ⁻¹)`.
pub fn count_balanced(n: u32) -> u64 {
    assert!((1..=MAX_BITS).contains(&n), "count_balanced supports 1 ≤ n ≤ {MAX_BITS}");
    let m = 1u64 << n;
    let k = m / 2;
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (m - i) as u128 / (i + 1) as u128;
    }
    c as u64
}

/// Every constant or balanced `n`-bit function, by ascending table.
pub fn enumerate_promise(n: u32) -> Vec<BooleanFunction> {
    assert!((1..=4).contains(&n), "enumeration supports 1 ≤ n ≤ 4");
    let size = 1u32 << n;
    (0..1u64 << size)
        .filter(|t| {
            let ones = t.count_ones();
            ones == 0 || ones == size || ones == size / 2
        })
        .map(|t| BooleanFunction { n, table: t })
        .collect()
}

/// Looks up a variant by its column name: roman numerals `i`… for n = 1, 2
/// and numbers `1`…`72` for n = 3 (constants first, then balanced functions
/// by ascending table).
pub fn variant(n: u32, id: &str) -> Result<BooleanFunction> {
    let id = id.trim().trim_matches(|c| c == '(' || c == ')').to_ascii_lowercase();
    let bad = || Error::Parse(format!("unknown variant {id:?} for n = {n}"));
    let table = match n {
        1 => match id.as_str() {
            "i" => 0b00,
            "ii" => 0b11,
            "iii" => 0b01,
            "iv" => 0b10,
            _ => return Err(bad()),
        },
        2 => {
            let names = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii"];
            let tables = [0b0000, 0b1111, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100];
            let k = names.iter().position(|&x| x == id).ok_or_else(bad)?;
            tables[k]
        }
        3 => {
            let k: usize = id.parse().map_err(|_| bad())?;
            let all = enumerate_promise(3);
            let mut ordered: Vec<BooleanFunction> = all.iter().copied().filter(|f| f.ones() % 8 == 0).collect();
            ordered.extend(all.iter().copied().filter(|f| f.ones() == 4));
            return ordered.get(k.wrapping_sub(1)).copied().ok_or_else(bad);
        }
        _ => return Err(bad()),
    };
    BooleanFunction::new(n, table)
}

/// A multilinear polynomial with integer coefficients; monomials are bit
/// masks over the variables (bit i stands for `xᵢ`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multilinear {
    pub terms: BTreeMap<u32, i64>,
}

impl Multilinear {
    fn constant(c: i64) -> Multilinear {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(0, c);
        }
        Multilinear { terms }
    }

    fn mul(&self, other: &Multilinear) -> Multilinear {
        let mut terms: BTreeMap<u32, i64> = BTreeMap::new();
        for (&m1, &c1) in &self.terms {
            for (&m2, &c2) in &other.terms {
                *terms.entry(m1 | m2).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, c| *c != 0);
        Multilinear { terms }
    }

    /// Value at `x` (bit i of `x` is `xᵢ`).
    pub fn eval(&self, x: u32) -> i64 {
        self.terms.iter().filter(|(&m, _)| m & x == m).map(|(_, &c)| c).sum()
    }
}

fn monomial_name(mask: u32) -> String {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for Multilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<u32> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
        for (k, m) in keys.into_iter().enumerate() {
            let c = self.terms[&m];
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (m, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => f.write_str(&monomial_name(m))?,
                _ => write!(f, "{mag}{}", monomial_name(m))?,
            }
        }
        Ok(())
    }
}

/// The Kronecker delta `δ_{σ,x} = Πᵢ (σᵢ ? xᵢ : 1 − xᵢ)` as a polynomial in
/// `x`. `point[i]` is `σᵢ`.
pub fn delta_polynomial(point: &[bool]) -> Multilinear {
    let mut p = Multilinear::constant(1);
    for (i, &s) in point.iter().enumerate() {
        let mut factor = BTreeMap::new();
        factor.insert(1u32 << i, if s { 1 } else { -1 });
        if !s {
            factor.insert(0, 1);
        }
        p = p.mul(&Multilinear { terms: factor });
    }
    p
}

/// `θ(x) = c_∅ + Σ_S c_S·(⊕_{i∈S} xᵢ)`, with subsets `S` as bit masks over
/// the input variables (bit i is `xᵢ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePolynomial {
    pub n: u32,
    pub constant: Phase,
    pub terms: BTreeMap<u32, Phase>,
}

impl PhasePolynomial {
    pub fn coefficient(&self, mask: u32) -> Phase {
        self.terms.get(&mask).copied().unwrap_or(Phase::ZERO)
    }

    /// `θ` at basis index `input` (σ₀ most significant).
    pub fn eval(&self, input: usize) -> Phase {
        let x = input_mask(input, self.n);
        self.terms
            .iter()
            .filter(|(&s, _)| (s & x).count_ones() % 2 == 1)
            .fold(self.constant, |acc, (_, &c)| acc + c)
    }
}

/// Parity name of a subset, e.g. `x0x2`.
pub fn parity_name(mask: u32) -> String {
    monomial_name(mask)
}

/// The variable mask of basis index `input`: bit i is `σᵢ`.
fn input_mask(input: usize, n: u32) -> u32 {
    (0..n).filter(|&i| input >> (n - 1 - i) & 1 == 1).fold(0, |m, i| m | 1 << i)
}

/// The exact phase polynomial with `e^{iθ(x)} = (−1)^{f(x)}`. Writing `f` in
/// the parity basis, `f(x) = f(0) − 2·Σ_{S≠∅} f̂(S)·(⊕_{i∈S} xᵢ)` with
/// `f̂(S) = 2⁻ⁿ Σ_x f(x)(−1)^{S·x}`, so `c_S = −2π f̂(S)` and `c_∅ = π f(0)`.
pub fn phase_polynomial(f: &BooleanFunction) -> Result<PhasePolynomial> {
    classify(f)?;
    if f.n() > 3 {
        return Err(Error::Unsupported(format!("phase polynomials for n = {}", f.n())));
    }
    let n = f.n();
    let size = f.size() as i64;
    let mut terms = BTreeMap::new();
    for s in 1u32..(1 << n) {
        let mut k = 0i64;
        for input in 0..size as usize {
            if f.value(input) {
                let par = (s & input_mask(input, n)).count_ones() % 2;
                k += if par == 0 { 1 } else { -1 };
            }
        }
        let c = Phase::new(-2 * k, size);
        if !c.is_zero() {
            terms.insert(s, c);
        }
    }
    let constant = if f.value(0) { Phase::PI } else { Phase::ZERO };
    Ok(PhasePolynomial { n, constant, terms })
}

/// Phase-gate parameters of the three-qubit oracle, in circuit order.
pub const ORACLE_PARAMS: [u32; 7] = [0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

/// The three-qubit phase oracle: each parity term is computed onto a wire
/// with CNOTs, phased, and uncomputed, so the circuit is diagonal with
/// entries `e^{iθ(x)}`. Phase gates are labeled with their parity name.
pub fn oracle_circuit_3q(f: &BooleanFunction) -> Result<Circuit> {
    if f.n() != 3 {
        return Err(Error::Unsupported(format!("three-qubit oracle for n = {}", f.n())));
    }
    let poly = phase_polynomial(f)?;
    let p = |qubit: usize, mask: u32| Gate::Phase {
        qubit,
        phase: poly.coefficient(mask),
        param: Some(parity_name(mask)),
    };
    let cx = |control, target| Gate::Cnot { control, target };
    Circuit::from_gates(
        3,
        vec![
            p(0, 0b001),
            p(1, 0b010),
            p(2, 0b100),
            cx(0, 1),
            cx(0, 2),
            p(1, 0b011),
            p(2, 0b101),
            cx(1, 2),
            p(2, 0b110),
            cx(0, 2),
            cx(0, 1),
            p(2, 0b111),
            cx(1, 2),
            cx(0, 2),
        ],
    )
}

/// Oracle circuit for any promise function with n ≤ 3, built from Pauli
/// gates for n ≤ 2 and from [`oracle_circuit_3q`] for n = 3.
pub fn oracle_circuit(f: &BooleanFunction) -> Result<Circuit> {
    classify(f)?;
    match f.n() {
        1 => {
            let mut c = Circuit::new(1);
            if f.value(0) != f.value(1) {
                c.push(Gate::Z(0))?;
            }
            Ok(c)
        }
        2 => {
            let (c0, a0, a1) = affine_2q(f);
            let mut c = Circuit::new(2);
            for (q, a) in [(0, a0), (1, a1)] {
                if a {
                    c.push(if c0 { Gate::Y(q) } else { Gate::Z(q) })?;
                }
            }
            Ok(c)
        }
        3 => oracle_circuit_3q(f),
        n => Err(Error::Unsupported(format!("oracle circuits for n = {n}"))),
    }
}

/// `f = c ⊕ a₀σ₀ ⊕ a₁σ₁`; every two-bit promise function has this form.
fn affine_2q(f: &BooleanFunction) -> (bool, bool, bool) {
    let c = f.value(0);
    (c, f.value(2) != c, f.value(1) != c)
}

/// Spider angles `(α₀, α₁, α₂, α₃)` of the two-qubit oracle drawn as
/// `X(α₀)Z(α₁)` on wire 0 and `X(α₂)Z(α₃)` on wire 1. A Z gate puts π on the
/// Z spider; a Y gate puts π on both spiders of its wire.
pub fn two_qubit_spider_angles(f: &BooleanFunction) -> Result<[Phase; 4]> {
    if f.n() != 2 {
        return Err(Error::Unsupported(format!("two-qubit angles for n = {}", f.n())));
    }
    classify(f)?;
    let (c, a0, a1) = affine_2q(f);
    let pi = |b: bool| if b { Phase::PI } else { Phase::ZERO };
    Ok([pi(a0 && c), pi(a0), pi(a1 && c), pi(a1)])
}

/// The angle rows of the two-bit variant table exactly as printed, columns
/// (i)…(viii) in the order of [`variant`]. Columns (iv) and (v) do not
/// implement their functions.
pub const PRINTED_TWO_QUBIT_ANGLES: [(&str, [u8; 4]); 8] = [
    ("i", [0, 0, 0, 0]),
    ("ii", [0, 0, 0, 0]),
    ("iii", [0, 1, 0, 0]),
    ("iv", [0, 0, 1, 0]),
    ("v", [1, 0, 1, 0]),
    ("vi", [1, 1, 1, 1]),
    ("vii", [0, 0, 1, 1]),
    ("viii", [1, 1, 0, 0]),
];

/// Whether `U|+…+⟩` is proportional to `Σ_σ (−1)^{f(σ)}|σ⟩`, the state the
/// algorithm needs before its final measurement. Unlike a diagonal check,
/// this accepts oracles that differ by bit flips acting trivially on `|+⟩`.
pub fn prepares_sign_state(c: &Circuit, f: &BooleanFunction) -> Result<bool> {
    if c.width() != f.n() as usize {
        return Err(Error::InvalidCircuit(format!("width {} for an {}-bit function", c.width(), f.n())));
    }
    let u = unitary(c)?;
    let out: Vec<Complex64> = (0..u.rows()).map(|r| (0..u.cols()).map(|col| u.at(r, col)).sum()).collect();
    let want: Vec<Complex64> = f.outputs().iter().map(|&b| Complex64::new(if b { -1.0 } else { 1.0 }, 0.0)).collect();
    let n = f.n() as usize;
    let (ok, _) = equivalent_up_to_scalar(&Tensor::new(n, 0, out), &Tensor::new(n, 0, want), 1e-9)?;
    Ok(ok)
}

/// Circuit for per-wire `X(α₀)Z(α₁) ⊗ X(α₂)Z(α₃)` with angles in {0, π}.
/// The Z spider acts first, then the X spider (a NOT when α = π). Phase
/// gates carry the parameter names `a0`…`a3`, so the compiled pattern keeps
/// every angle-carrying qubit.
pub fn two_qubit_angle_circuit(angles: [Phase; 4]) -> Result<Circuit> {
    let mut c = Circuit::new(2);
    let named = |qubit: usize, k: usize| Gate::Phase { qubit, phase: angles[k], param: Some(format!("a{k}")) };
    for q in 0..2 {
        c.push(named(q, 2 * q + 1))?;
        // X(α) = H Z(α) H
        c.push(Gate::H(q))?;
        c.push(named(q, 2 * q))?;
        c.push(Gate::H(q))?;
    }
    Ok(c)
}

//! State-vector checks on the explicit logical codewords.
//!
//! Basis kets are indexed with qubit 1 as the most significant bit, so the
//! ket `|10000⟩` is index 16. Paulis act with exact phases (`Y = iXZ`).
//!
//! The codeword tables use their own qubit and letter labeling. Registry
//! strings are carried over with the code's [`crate::code::CodewordFrame`] before they are
//! applied here.

use num_complex::Complex64;
use serde::Serialize;

use crate::code::{CodeName, CodeSpec, Syndrome};
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString};

/// Absolute tolerance for amplitude-level comparisons.
pub const DENSE_TOL: f64 = 1e-12;

const FIVE_ZERO: [&str; 16] = [
    "+00000", "+11000", "+01100", "+00110", "+00011", "+10001", "-01010", "-00101", "-10010",
    "-01001", "-10100", "-11110", "-01111", "-10111", "-11011", "-11101",
];

const FIVE_ONE: [&str; 16] = [
    "+11111", "+00111", "+10011", "+11001", "+11100", "+01110", "-10101", "-11010", "-01101",
    "-10110", "-01011", "-00001", "-10000", "-01000", "-00100", "-00010",
];

const SEVEN_ZERO: [&str; 8] = [
    "+0000000", "+0110011", "+1010101", "+1100110", "+0001111", "+0111100", "+1011010", "+1101001",
];

const SEVEN_ONE: [&str; 8] = [
    "+1111111", "+1001100", "+0101010", "+0011001", "+1110000", "+1000011", "+0100101", "+0010110",
];

/// A pure state on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn zero(n: usize) -> Self {
        DenseState {
            n,
            amps: vec![Complex64::new(0.0, 0.0); 1 << n],
        }
    }

    /// Superposition of signed basis kets such as `"-01010"`, each with
    /// amplitude `±scale`.
    pub fn from_signed_kets(kets: &[&str], scale: f64) -> Self {
        let n = kets[0].len() - 1;
        let mut s = DenseState::zero(n);
        for ket in kets {
            let (sign, bits) = ket.split_at(1);
            let idx = usize::from_str_radix(bits, 2).expect("binary ket label");
            let v = if sign == "-" { -scale } else { scale };
            s.amps[idx] += Complex64::new(v, 0.0);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude of the ket written as a bit string, qubit 1 first.
    pub fn amplitude(&self, ket: &str) -> Complex64 {
        self.amps[usize::from_str_radix(ket, 2).expect("binary ket label")]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &DenseState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Applies a Pauli string with exact phases.
    ///
    /// # Panics
    /// On a qubit-count mismatch.
    pub fn apply(&self, e: &PauliString) -> DenseState {
        assert_eq!(e.n(), self.n, "Pauli and state sizes differ");
        let (xmask, zmask) = ket_masks(e);
        let ny = (e.x_bits() & e.z_bits()).count_ones();
        let phase = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ][(ny % 4) as usize];
        let mut out = DenseState::zero(self.n);
        for (i, a) in self.amps.iter().enumerate() {
            let sign = if (i & zmask).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out.amps[i ^ xmask] = a * phase * sign;
        }
        out
    }
}

/// X and Z masks in ket-index bit order (qubit 1 = most significant).
fn ket_masks(e: &PauliString) -> (usize, usize) {
    let n = e.n();
    let (mut x, mut z) = (0usize, 0usize);
    for q in 1..=n {
        let (bx, bz) = e.letter(q).bits();
        x |= (bx as usize) << (n - q);
        z |= (bz as usize) << (n - q);
    }
    (x, z)
}

/// An explicit `2^n × 2^n` Pauli matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePauli {
    dim: usize,
    data: Vec<Complex64>,
}

impl DensePauli {
    /// Kronecker product of single-qubit matrices, qubit 1 leftmost.
    pub fn new(e: &PauliString) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let mut m = DensePauli {
            dim: 1,
            data: vec![one],
        };
        for q in 1..=e.n() {
            let f = match e.letter(q) {
                PauliLetter::I => [one, zero, zero, one],
                PauliLetter::X => [zero, one, one, zero],
                PauliLetter::Y => [zero, -i, i, zero],
                PauliLetter::Z => [one, zero, zero, -one],
            };
            let d = m.dim * 2;
            let mut data = vec![zero; d * d];
            for r in 0..m.dim {
                for c in 0..m.dim {
                    let v = m.data[r * m.dim + c];
                    for (k, fk) in f.iter().enumerate() {
                        data[(2 * r + k / 2) * d + 2 * c + k % 2] = v * fk;
                    }
                }
            }
            m = DensePauli { dim: d, data };
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn matmul(&self, other: &DensePauli) -> DensePauli {
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        DensePauli { dim: d, data }
    }

    pub fn apply(&self, s: &DenseState) -> DenseState {
        let d = self.dim;
        let mut out = DenseState::zero(s.n);
        for r in 0..d {
            out.amps[r] = (0..d).map(|c| self.data[r * d + c] * s.amps[c]).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &DensePauli) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let expect = if r == c { 1.0 } else { 0.0 };
                (self.entry(r, c) - Complex64::new(expect, 0.0)).norm() <= tol
            })
        })
    }
}

/// The two logical basis states of a code.
#[derive(Clone, Debug)]
pub struct Codewords {
    pub zero: DenseState,
    pub one: DenseState,
}

impl Codewords {
    pub fn five_qubit() -> Self {
        Codewords {
            zero: DenseState::from_signed_kets(&FIVE_ZERO, 0.25),
            one: DenseState::from_signed_kets(&FIVE_ONE, 0.25),
        }
    }

    pub fn seven_qubit() -> Self {
        let s = 1.0 / 8f64.sqrt();
        Codewords {
            zero: DenseState::from_signed_kets(&SEVEN_ZERO, s),
            one: DenseState::from_signed_kets(&SEVEN_ONE, s),
        }
    }

    /// Codewords matching a code's qubit count.
    pub fn for_code(code: &CodeSpec) -> Result<Self> {
        match code.n() {
            5 => Ok(Self::five_qubit()),
            7 => Ok(Self::seven_qubit()),
            _ => Err(Error::UnknownCode(code.name().to_string())),
        }
    }

    pub fn get(&self, logical: u8) -> &DenseState {
        if logical == 0 {
            &self.zero
        } else {
            &self.one
        }
    }

    /// `⟨i_L| e |j_L⟩` for a string in codeword labeling.
    pub fn matrix_element(&self, i: u8, e: &PauliString, j: u8) -> Complex64 {
        self.get(i).inner(&self.get(j).apply(e))
    }
}

/// Codeword `|logical_L⟩` of a built-in code.
pub fn build_codeword(name: CodeName, logical: u8) -> DenseState {
    let words = if name == CodeName::FiveQubit {
        Codewords::five_qubit()
    } else {
        Codewords::seven_qubit()
    };
    words.get(logical).clone()
}

#[derive(Clone, Debug, Serialize)]
pub struct FixingCheck {
    pub generator: PauliString,
    /// The generator in codeword labeling.
    pub applied: PauliString,
    pub logical: u8,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixingReport {
    pub checks: Vec<FixingCheck>,
}

impl FixingReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.max_deviation <= DENSE_TOL)
    }
}

/// Checks that every generator leaves both codewords unchanged.
pub fn check_stabilizer_fixing(code: &CodeSpec) -> Result<FixingReport> {
    let words = Codewords::for_code(code)?;
    let frame = code.codeword_frame();
    let mut checks = Vec::new();
    for g in code.generators() {
        let applied = frame.apply(g);
        for logical in [0u8, 1] {
            let w = words.get(logical);
            checks.push(FixingCheck {
                generator: *g,
                applied,
                logical,
                max_deviation: w.apply(&applied).max_abs_diff(w),
            });
        }
    }
    Ok(FixingReport { checks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KlViolationKind {
    /// `⟨i_L|E_l E_m|j_L⟩ ≠ 0` for `i ≠ j`.
    OffDiagonal { i: u8, j: u8 },
    /// `⟨0_L|E_l E_m|0_L⟩ ≠ ⟨1_L|E_l E_m|1_L⟩`.
    UnequalDiagonal,
}

#[derive(Clone, Debug, Serialize)]
pub struct KlViolation {
    pub l: usize,
    pub m: usize,
    pub kind: KlViolationKind,
    /// Offending overlap magnitude (or diagonal difference magnitude).
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct KlReport {
    pub pairs_checked: usize,
    pub violations: Vec<KlViolation>,
}

impl KlReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Largest off-diagonal overlap among the violations.
    pub fn max_off_diagonal(&self) -> f64 {
        self.violations
            .iter()
            .filter(|v| matches!(v.kind, KlViolationKind::OffDiagonal { .. }))
            .map(|v| v.value)
            .fold(0.0, f64::max)
    }
}

/// Knill–Laflamme conditions for a set of strings in codeword labeling.
pub fn check_kl_conditions(words: &Codewords, set: &[PauliString]) -> KlReport {
    let images: Vec<[DenseState; 2]> = set
        .iter()
        .map(|e| [words.zero.apply(e), words.one.apply(e)])
        .collect();
    let mut violations = Vec::new();
    for (l, vl) in images.iter().enumerate() {
        for (m, vm) in images.iter().enumerate() {
            for (i, j) in [(0u8, 1u8), (1, 0)] {
                let value = vl[i as usize].inner(&vm[j as usize]).norm();
                if value >= DENSE_TOL {
                    violations.push(KlViolation {
                        l,
                        m,
                        kind: KlViolationKind::OffDiagonal { i, j },
                        value,
                    });
                }
            }
            let value = (vl[0].inner(&vm[0]) - vl[1].inner(&vm[1])).norm();
            if value > DENSE_TOL {
                violations.push(KlViolation {
                    l,
                    m,
                    kind: KlViolationKind::UnequalDiagonal,
                    value,
                });
            }
        }
    }
    KlReport {
        pairs_checked: set.len() * set.len(),
        violations,
    }
}

/// Knill–Laflamme check of a code's own correctable set.
pub fn check_code_kl(code: &CodeSpec) -> Result<KlReport> {
    let words = Codewords::for_code(code)?;
    let frame = code.codeword_frame();
    let mapped: Vec<PauliString> = code
        .correctable_set()
        .iter()
        .map(|e| frame.apply(e))
        .collect();
    Ok(check_kl_conditions(&words, &mapped))
}

/// Largest deviation of the Gram matrix of `{E|ℓ_L⟩}` from the identity.
pub fn gram_deviation(code: &CodeSpec) -> Result<f64> {
    let words = Codewords::for_code(code)?;
    let frame = code.codeword_frame();
    let vectors: Vec<DenseState> = code
        .correctable_set()
        .iter()
        .flat_map(|e| {
            let m = frame.apply(e);
            [words.zero.apply(&m), words.one.apply(&m)]
        })
        .collect();
    let mut worst = 0.0f64;
    for (a, va) in vectors.iter().enumerate() {
        for (b, vb) in vectors.iter().enumerate() {
            let expect = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((va.inner(vb) - Complex64::new(expect, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// Syndrome read off from generator eigenvalues on `E|0_L⟩`.
pub fn dense_syndrome(code: &CodeSpec, e: &PauliString) -> Result<Syndrome> {
    let words = Codewords::for_code(code)?;
    let frame = code.codeword_frame();
    let state = words.zero.apply(&frame.apply(e));
    let mut value = 0u32;
    for g in code.generators() {
        let eig = state.inner(&state.apply(&frame.apply(g))).re;
        value = value << 1 | (eig < 0.0) as u32;
    }
    Ok(Syndrome::new(value, code.syndrome_len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_code, CodewordFrame};

    fn p(n: usize, s: &str) -> PauliString {
        PauliString::parse(n, s).unwrap()
    }

    #[test]
    fn codewords_are_orthonormal() {
        for w in [Codewords::five_qubit(), Codewords::seven_qubit()] {
            assert!((w.zero.norm() - 1.0).abs() < 1e-14);
            assert!((w.one.norm() - 1.0).abs() < 1e-14);
            assert!(w.zero.inner(&w.one).norm() < 1e-15);
        }
    }

    #[test]
    fn golden_amplitude_pins_ket_order() {
        let z = build_codeword(CodeName::FiveQubit, 0);
        assert_eq!(z.amplitude("11110"), Complex64::new(-0.25, 0.0));
        assert_eq!(z.amplitudes()[0b11110], Complex64::new(-0.25, 0.0));
        assert_eq!(z.amplitude("01111"), Complex64::new(-0.25, 0.0));
    }

    #[test]
    fn generators_fix_codewords() {
        for name in CodeName::ALL {
            let r = check_stabilizer_fixing(&build_code(name).unwrap()).unwrap();
            assert!(r.passed(), "{name}");
        }
        // The same operators in codeword labeling.
        let five = Codewords::five_qubit();
        let g = CodewordFrame::SwapXz.apply(&p(5, "X1Z2Z3X4"));
        assert!(five.zero.apply(&g).max_abs_diff(&five.zero) < DENSE_TOL);
        let seven = Codewords::seven_qubit();
        let g = p(7, "Z4Z5Z6Z7");
        assert!(seven.one.apply(&g).max_abs_diff(&seven.one) < DENSE_TOL);
        assert_eq!(seven.zero.apply(&PauliString::identity(7)), seven.zero);
    }

    #[test]
    fn kl_passes_for_bijective_sets() {
        for name in [CodeName::FiveQubit, CodeName::SevenQubitSet1] {
            let r = check_code_kl(&build_code(name).unwrap()).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.violations.first());
        }
    }

    #[test]
    fn kl_flags_aliased_set() {
        let r = check_code_kl(&build_code(CodeName::SevenQubitSet2).unwrap()).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn weight_three_counterexample() {
        let w = Codewords::seven_qubit();
        let x123 = p(7, "X1X2X3");
        let overlap = w.matrix_element(0, &x123, 1);
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
        let r = check_kl_conditions(&w, &[PauliString::identity(7), x123]);
        assert!(!r.passed());
        assert!((r.max_off_diagonal() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_matrix_is_identity_for_bijective_sets() {
        for name in [CodeName::FiveQubit, CodeName::SevenQubitSet1] {
            assert!(gram_deviation(&build_code(name).unwrap()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn dense_commutation_matches_syndromes() {
        for name in CodeName::ALL {
            let code = build_code(name).unwrap();
            for e in code.correctable_set() {
                assert_eq!(
                    dense_syndrome(&code, e).unwrap(),
                    code.syndrome_of(e).unwrap(),
                    "{e}"
                );
            }
        }
    }

    fn all_paulis(n: usize) -> Vec<PauliString> {
        (0..1u32 << (2 * n))
            .map(|v| PauliString::from_bits(n, v & ((1 << n) - 1), v >> n).unwrap())
            .collect()
    }

    #[test]
    fn symplectic_product_matches_matrix_commutation() {
        for n in 1..=2 {
            for u in all_paulis(n) {
                for v in all_paulis(n) {
                    let (mu, mv) = (DensePauli::new(&u), DensePauli::new(&v));
                    let commute = mu.matmul(&mv).max_abs_diff(&mv.matmul(&mu)) < 1e-15;
                    assert_eq!(commute, u.symplectic_product(&v) == 0, "{u} {v}");
                }
            }
        }
    }

    #[test]
    fn dense_paulis_square_to_identity_and_match_fast_path() {
        let state = Codewords::five_qubit().zero;
        for e in all_paulis(3) {
            let m = DensePauli::new(&e);
            assert!(m.matmul(&m).is_identity(1e-15));
        }
        for e in ["Y1", "X2Y3Z5", "Y1Y2Y3Y4Y5", "Z1X4"] {
            let e = p(5, e);
            assert!(
                DensePauli::new(&e)
                    .apply(&state)
                    .max_abs_diff(&state.apply(&e))
                    < 1e-15
            );
        }
    }

    #[test]
    fn y_is_i_x_z() {
        let y = DensePauli::new(&p(1, "Y1"));
        let xz = DensePauli::new(&p(1, "X1")).matmul(&DensePauli::new(&p(1, "Z1")));
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(y.entry(r, c), Complex64::new(0.0, 1.0) * xz.entry(r, c));
            }
        }
    }
}

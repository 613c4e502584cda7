//! Stabilizer code definitions, syndromes and the correction table.
//!
//! Generators are stored in the order of the check-matrix rows; syndrome bit
//! `j` (most significant first) is the commutation parity with generator `j`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::f2::RowSpace;
use crate::pauli::PauliString;

/// The three built-in code/correctable-set combinations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeName {
    FiveQubit,
    SevenQubitSet1,
    SevenQubitSet2,
}

impl CodeName {
    pub const ALL: [CodeName; 3] = [
        CodeName::FiveQubit,
        CodeName::SevenQubitSet1,
        CodeName::SevenQubitSet2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CodeName::FiveQubit => "five_qubit",
            CodeName::SevenQubitSet1 => "seven_qubit_set1",
            CodeName::SevenQubitSet2 => "seven_qubit_set2",
        }
    }

    pub fn n(self) -> usize {
        match self {
            CodeName::FiveQubit => 5,
            _ => 7,
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "five" | "five_qubit" | "513" => Ok(CodeName::FiveQubit),
            "seven_set1" | "seven_qubit_set1" | "set1" => Ok(CodeName::SevenQubitSet1),
            "seven_set2" | "seven_qubit_set2" | "set2" => Ok(CodeName::SevenQubitSet2),
            _ => Err(Error::UnknownCode(s.to_string())),
        }
    }
}

/// Relabeling that carries registry Pauli strings onto the qubit and letter
/// conventions of the explicit codeword tables in [`crate::dense`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodewordFrame {
    Identity,
    /// Exchange X and Z on every qubit.
    SwapXz,
    /// Map qubit `j` to qubit `n + 1 - j`.
    ReverseQubits,
}

impl CodewordFrame {
    pub fn apply(self, e: &PauliString) -> PauliString {
        match self {
            CodewordFrame::Identity => *e,
            CodewordFrame::SwapXz => e.swap_xz(),
            CodewordFrame::ReverseQubits => e.reverse_qubits(),
        }
    }
}

/// What to do when two correctable elements share a syndrome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollisionPolicy {
    /// Refuse to build the code.
    Reject,
    /// Keep every element; the first one listed becomes the table entry.
    Retain,
}

/// An `(n-k)`-bit syndrome. Bit 1 (generator 1) is the most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome {
    value: u32,
    len: u8,
}

impl Syndrome {
    /// # Panics
    /// If `value` does not fit in `len` bits or `len > 32`.
    pub fn new(value: u32, len: usize) -> Self {
        assert!(
            len <= 32 && (len == 32 || value >> len == 0),
            "syndrome value does not fit in {len} bits"
        );
        Syndrome {
            value,
            len: len as u8,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Commutation parity with generator `j` (1-based).
    pub fn bit(&self, j: usize) -> u8 {
        assert!(
            j >= 1 && j <= self.len(),
            "generator index {j} out of range"
        );
        (self.value >> (self.len() - j) & 1) as u8
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.len() {
            write!(f, "{}", self.bit(j))?;
        }
        Ok(())
    }
}

impl FromStr for Syndrome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > 32 || !s.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::ParseSyndrome(s.to_string()));
        }
        let value = u32::from_str_radix(s, 2).map_err(|_| Error::ParseSyndrome(s.to_string()))?;
        Ok(Syndrome::new(value, s.len()))
    }
}

impl Serialize for Syndrome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Correctable elements sharing one syndrome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyndromeCollision {
    pub syndrome: Syndrome,
    pub members: Vec<PauliString>,
}

/// An ordered pair of set elements whose product is undetectable but acts non-trivially.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetectabilityViolation {
    pub first: usize,
    pub second: usize,
    pub product: PauliString,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetectabilityReport {
    pub pairs_checked: usize,
    pub violations: Vec<DetectabilityViolation>,
}

impl DetectabilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A stabilizer code together with a designated correctable set.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    name: String,
    n: usize,
    k: usize,
    d: usize,
    generators: Vec<PauliString>,
    stabilizer: RowSpace,
    correctable: Vec<PauliString>,
    /// Indexed by syndrome value; holds positions in `correctable`, in listing order.
    table: Vec<Vec<usize>>,
    frame: CodewordFrame,
}

impl CodeSpec {
    /// Validates and assembles a code.
    ///
    /// The generators must be independent and pairwise commuting, and the
    /// correctable set must hold `2^(n-k)` elements including the identity.
    pub fn new(
        name: impl Into<String>,
        d: usize,
        generators: Vec<PauliString>,
        correctable: Vec<PauliString>,
        policy: CollisionPolicy,
        frame: CodewordFrame,
    ) -> Result<Self> {
        let n = generators
            .first()
            .map(PauliString::n)
            .ok_or(Error::DependentGenerators)?;
        for e in generators.iter().chain(&correctable) {
            if e.n() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: e.n(),
                });
            }
        }
        for (i, g) in generators.iter().enumerate() {
            for h in &generators[i + 1..] {
                if !g.commutes_with(h) {
                    return Err(Error::NonCommutingGenerators(g.to_string(), h.to_string()));
                }
            }
        }
        let stabilizer =
            RowSpace::spanned_by(generators.iter().map(PauliString::symplectic_vector));
        if stabilizer.rank() != generators.len() || generators.len() >= n {
            return Err(Error::DependentGenerators);
        }
        let r = generators.len();
        let expected = 1usize << r;
        if correctable.len() != expected {
            return Err(Error::CorrectableSetSize {
                expected,
                found: correctable.len(),
            });
        }
        if !correctable.iter().any(PauliString::is_identity) {
            return Err(Error::MissingIdentity);
        }
        let mut spec = CodeSpec {
            name: name.into(),
            n,
            k: n - r,
            d,
            generators,
            stabilizer,
            correctable,
            table: vec![Vec::new(); expected],
            frame,
        };
        for i in 0..spec.correctable.len() {
            let s = spec.syndrome_value(&spec.correctable[i]) as usize;
            if let (CollisionPolicy::Reject, Some(&first)) = (policy, spec.table[s].first()) {
                return Err(Error::SyndromeCollision {
                    first: spec.correctable[first].to_string(),
                    second: spec.correctable[i].to_string(),
                    syndrome: Syndrome::new(s as u32, r).to_string(),
                });
            }
            spec.table[s].push(i);
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn correctable_set(&self) -> &[PauliString] {
        &self.correctable
    }

    pub fn codeword_frame(&self) -> CodewordFrame {
        self.frame
    }

    pub fn syndrome_len(&self) -> usize {
        self.n - self.k
    }

    /// Check-matrix rows: the symplectic vectors `(a|b)` of the generators.
    pub fn check_matrix(&self) -> Vec<u64> {
        self.generators
            .iter()
            .map(PauliString::symplectic_vector)
            .collect()
    }

    /// Syndrome as a bare integer.
    ///
    /// # Panics
    /// If `e` has the wrong length.
    pub fn syndrome_value(&self, e: &PauliString) -> u32 {
        self.generators
            .iter()
            .fold(0u32, |acc, g| acc << 1 | g.symplectic_product(e) as u32)
    }

    pub fn syndrome_of(&self, e: &PauliString) -> Result<Syndrome> {
        if e.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: e.n(),
            });
        }
        Ok(Syndrome::new(self.syndrome_value(e), self.syndrome_len()))
    }

    /// The correction applied for syndrome `s`: the first listed correctable
    /// element carrying it, or `None` if no element does.
    ///
    /// # Panics
    /// If `s` has the wrong number of bits.
    pub fn recovery_for_syndrome(&self, s: Syndrome) -> Option<PauliString> {
        self.candidates_for_syndrome(s).first().copied()
    }

    /// Every correctable element carrying syndrome `s`, in listing order.
    pub fn candidates_for_syndrome(&self, s: Syndrome) -> Vec<PauliString> {
        assert_eq!(s.len(), self.syndrome_len(), "syndrome length mismatch");
        self.table[s.value() as usize]
            .iter()
            .map(|&i| self.correctable[i])
            .collect()
    }

    /// Positions in the correctable set, grouped by syndrome value.
    pub fn recovery_indices(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// True when every syndrome maps to exactly one correctable element.
    pub fn is_recovery_bijective(&self) -> bool {
        self.table.iter().all(|c| c.len() == 1)
    }

    pub fn collisions(&self) -> Vec<SyndromeCollision> {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .map(|(s, c)| SyndromeCollision {
                syndrome: Syndrome::new(s as u32, self.syndrome_len()),
                members: c.iter().map(|&i| self.correctable[i]).collect(),
            })
            .collect()
    }

    /// Syndromes not covered by any correctable element.
    pub fn uncovered_syndromes(&self) -> Vec<Syndrome> {
        (0..self.table.len())
            .filter(|&s| self.table[s].is_empty())
            .map(|s| Syndrome::new(s as u32, self.syndrome_len()))
            .collect()
    }

    /// Membership in the stabilizer group, decided by row reduction.
    pub fn is_in_stabilizer_group(&self, e: &PauliString) -> bool {
        e.n() == self.n && self.stabilizer.contains(e.symplectic_vector())
    }

    /// All `2^(n-k)` stabilizer elements.
    pub fn stabilizer_elements(&self) -> Vec<PauliString> {
        let m = (1u64 << self.n) - 1;
        self.stabilizer
            .elements()
            .into_iter()
            .map(|v| PauliString::from_bits(self.n, (v & m) as u32, (v >> self.n) as u32).unwrap())
            .collect()
    }

    /// Checks that every ordered pair of distinct elements has a product that
    /// is either detectable or a stabilizer.
    pub fn detectability_check(&self, set: &[PauliString]) -> Result<DetectabilityReport> {
        if let Some(e) = set.iter().find(|e| e.n() != self.n) {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: e.n(),
            });
        }
        let mut violations = Vec::new();
        let mut pairs_checked = 0;
        for (l, el) in set.iter().enumerate() {
            for (k, ek) in set.iter().enumerate() {
                if l == k {
                    continue;
                }
                pairs_checked += 1;
                let product = *el * *ek;
                if self.syndrome_value(&product) == 0 && !self.is_in_stabilizer_group(&product) {
                    violations.push(DetectabilityViolation {
                        first: l,
                        second: k,
                        product,
                    });
                }
            }
        }
        Ok(DetectabilityReport {
            pairs_checked,
            violations,
        })
    }

    /// Serializable summary for JSON export.
    pub fn export(&self) -> CodeExport {
        let recovery_table = (0..self.table.len())
            .map(|s| {
                let syndrome = Syndrome::new(s as u32, self.syndrome_len());
                let candidates = self.candidates_for_syndrome(syndrome);
                RecoveryEntry {
                    syndrome,
                    correction: candidates.first().copied(),
                    shadowed: candidates.iter().skip(1).copied().collect(),
                }
            })
            .collect();
        CodeExport {
            name: self.name.clone(),
            n: self.n,
            k: self.k,
            d: self.d,
            generators: self.generators.clone(),
            check_matrix: self
                .generators
                .iter()
                .map(PauliString::symplectic_text)
                .collect(),
            correctable_set: self.correctable.clone(),
            recovery_table,
            recovery_is_bijective: self.is_recovery_bijective(),
            syndrome_collisions: self.collisions(),
            codeword_frame: self.frame,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecoveryEntry {
    pub syndrome: Syndrome,
    pub correction: Option<PauliString>,
    /// Further correctable elements with the same syndrome, never applied.
    pub shadowed: Vec<PauliString>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeExport {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub generators: Vec<PauliString>,
    pub check_matrix: Vec<String>,
    pub correctable_set: Vec<PauliString>,
    pub recovery_table: Vec<RecoveryEntry>,
    pub recovery_is_bijective: bool,
    pub syndrome_collisions: Vec<SyndromeCollision>,
    pub codeword_frame: CodewordFrame,
}

const FIVE_GENERATORS: [&str; 4] = ["Z1Z2X3X5", "X1Z2Z3X4", "X2Z3Z4X5", "X1X3Z4Z5"];

const SEVEN_GENERATORS: [&str; 6] = [
    "Z1Z2Z3Z4", "Z1Z2Z5Z6", "Z1Z3Z5Z7", "X1X2X3X4", "X1X2X5X6", "X1X3X5X7",
];

const SET1_WEIGHT_TWO: [&str; 42] = [
    "X1Z2", "X1Z3", "X1Z4", "X1Z5", "X1Z6", "X1Z7", "Z1X2", "X2Z3", "X2Z4", "X2Z5", "X2Z6", "X2Z7",
    "Z1X3", "Z2X3", "X3Z4", "X3Z5", "X3Z6", "X3Z7", "Z1X4", "Z2X4", "Z3X4", "X4Z5", "X4Z6", "X4Z7",
    "Z1X5", "Z2X5", "Z3X5", "Z4X5", "X5Z6", "X5Z7", "Z1X6", "Z2X6", "Z3X6", "Z4X6", "Z5X6", "X6Z7",
    "Z1X7", "Z2X7", "Z3X7", "Z4X7", "Z5X7", "Z6X7",
];

const SET2_WEIGHT_TWO: [&str; 42] = [
    "Z1Z2", "Z1Z3", "Z1Z4", "Z1Z5", "Z1Z6", "Z1Z7", "Z2Z3", "Z2Z4", "Z2Z5", "Z2Z6", "Z2Z7", "Z3Z4",
    "Z3Z5", "Z3Z6", "Z3Z7", "Z4Z5", "Z4Z6", "Z4Z7", "Z5Z6", "Z5Z7", "Z6Z7", "Z1X2", "Z1X3", "Z1X4",
    "Z1X5", "Z1X6", "Z1X7", "Z2X3", "Z2X4", "Z2X5", "Z2X6", "Z2X7", "Z3X4", "Z3X5", "Z3X6", "Z3X7",
    "Z4X5", "Z4X6", "Z4X7", "Z5X6", "Z5X7", "Z6X7",
];

fn parse_all(n: usize, texts: &[&str]) -> Vec<PauliString> {
    texts
        .iter()
        .map(|t| PauliString::parse(n, t).expect("built-in Pauli text"))
        .collect()
}

/// Identity followed by every weight-one error, grouped X, then Y, then Z.
fn weight_at_most_one(n: usize) -> Vec<PauliString> {
    let mut out = vec![PauliString::identity(n)];
    for letter in "XYZ".chars() {
        for q in 1..=n {
            out.push(PauliString::parse(n, &format!("{letter}{q}")).unwrap());
        }
    }
    out
}

/// Builds one of the built-in codes.
///
/// The seven-qubit second set is built with [`CollisionPolicy::Retain`]
/// because several of its weight-two elements share syndromes; see
/// [`CodeSpec::collisions`].
pub fn build_code(name: CodeName) -> Result<CodeSpec> {
    match name {
        CodeName::FiveQubit => CodeSpec::new(
            name.as_str(),
            3,
            parse_all(5, &FIVE_GENERATORS),
            weight_at_most_one(5),
            CollisionPolicy::Reject,
            CodewordFrame::SwapXz,
        ),
        CodeName::SevenQubitSet1 | CodeName::SevenQubitSet2 => {
            let (extra, policy) = if name == CodeName::SevenQubitSet1 {
                (&SET1_WEIGHT_TWO, CollisionPolicy::Reject)
            } else {
                (&SET2_WEIGHT_TWO, CollisionPolicy::Retain)
            };
            let mut set = weight_at_most_one(7);
            set.extend(parse_all(7, extra));
            CodeSpec::new(
                name.as_str(),
                3,
                parse_all(7, &SEVEN_GENERATORS),
                set,
                policy,
                CodewordFrame::ReverseQubits,
            )
        }
    }
}

/// Tally of correctable-set weights, for quick structural checks.
pub fn weight_histogram(set: &[PauliString]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for e in set {
        *out.entry(e.weight()).or_insert(0) += 1;
    }
    out
}

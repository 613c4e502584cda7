//! Phase-free Pauli strings in the binary symplectic representation.
//!
//! A string on `n` qubits is stored as two `n`-bit words: the X-part and the
//! Z-part. Bit `j - 1` of each word refers to qubit `j`, and `Y` sets both.
//! Global phases are dropped, so multiplication is a componentwise XOR.

use std::fmt;
use std::ops::{Mul, MulAssign};

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported qubit count; each half must fit in a `u16`.
pub const MAX_QUBITS: usize = 16;

/// Single-qubit Pauli, indexed as 0 = I, 1 = X, 2 = Y, 3 = Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [
        PauliLetter::I,
        PauliLetter::X,
        PauliLetter::Y,
        PauliLetter::Z,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    /// `(x, z)` bits of the letter.
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Y => (true, true),
            PauliLetter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub fn symbol(self) -> char {
        ['I', 'X', 'Y', 'Z'][self.index()]
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }
}

/// An `n`-qubit Pauli operator modulo phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: u8,
    x: u16,
    z: u16,
}

fn mask(n: usize) -> u32 {
    (1u32 << n) - 1
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(Error::QubitCount(n))
    } else {
        Ok(())
    }
}

impl PauliString {
    /// Identity on `n` qubits.
    ///
    /// # Panics
    /// If `n` is outside `1..=16`.
    pub fn identity(n: usize) -> Self {
        assert!(
            (1..=MAX_QUBITS).contains(&n),
            "qubit count {n} is outside 1..=16"
        );
        PauliString {
            n: n as u8,
            x: 0,
            z: 0,
        }
    }

    /// Builds a string from raw X and Z words.
    pub fn from_bits(n: usize, x: u32, z: u32) -> Result<Self> {
        check_n(n)?;
        if (x | z) & !mask(n) != 0 {
            return Err(Error::StrayBits(n));
        }
        Ok(PauliString {
            n: n as u8,
            x: x as u16,
            z: z as u16,
        })
    }

    /// Builds a string from `(qubit, letter)` pairs with 1-based qubit indices.
    pub fn from_letters(n: usize, letters: &[(usize, PauliLetter)]) -> Result<Self> {
        check_n(n)?;
        let mut out = PauliString::identity(n);
        let mut seen = 0u32;
        for &(q, letter) in letters {
            if q == 0 || q > n {
                return Err(Error::QubitIndex { index: q, n });
            }
            let bit = 1u32 << (q - 1);
            if seen & bit != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            seen |= bit;
            let (bx, bz) = letter.bits();
            if bx {
                out.x |= bit as u16;
            }
            if bz {
                out.z |= bit as u16;
            }
        }
        Ok(out)
    }

    /// A single non-trivial letter on qubit `q` (1-based).
    pub fn single(n: usize, q: usize, letter: PauliLetter) -> Result<Self> {
        Self::from_letters(n, &[(q, letter)])
    }

    /// Builds a string from one letter per qubit, qubit 1 first.
    pub fn from_sequence(letters: &[PauliLetter]) -> Result<Self> {
        let n = letters.len();
        check_n(n)?;
        let (mut x, mut z) = (0u32, 0u32);
        for (j, letter) in letters.iter().enumerate() {
            let (bx, bz) = letter.bits();
            x |= (bx as u32) << j;
            z |= (bz as u32) << j;
        }
        Self::from_bits(n, x, z)
    }

    /// Parses the compact form used throughout the crate, e.g. `Z1X4`.
    /// `I` (or an empty string) denotes the identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        check_n(n)?;
        let bad = |reason: &str| Error::ParsePauli {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        if t.is_empty() || t == "I" {
            return Ok(PauliString::identity(n));
        }
        let mut letters = Vec::new();
        let mut chars = t.chars().peekable();
        while let Some(c) = chars.next() {
            let letter =
                PauliLetter::from_symbol(c).ok_or_else(|| bad("expected one of X, Y, Z"))?;
            if letter == PauliLetter::I {
                return Err(bad("identity letters cannot carry an index"));
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                digits.push(d);
                chars.next();
            }
            let q: usize = digits.parse().map_err(|_| bad("missing qubit index"))?;
            letters.push((q, letter));
        }
        Self::from_letters(n, &letters)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_bits(&self) -> u32 {
        self.x as u32
    }

    pub fn z_bits(&self) -> u32 {
        self.z as u32
    }

    /// Letter on qubit `q` (1-based).
    ///
    /// # Panics
    /// If `q` is outside `1..=n`.
    pub fn letter(&self, q: usize) -> PauliLetter {
        assert!(q >= 1 && q <= self.n(), "qubit {q} outside 1..={}", self.n);
        let bit = 1u16 << (q - 1);
        PauliLetter::from_bits(self.x & bit != 0, self.z & bit != 0)
    }

    pub fn letters(&self) -> Vec<PauliLetter> {
        (1..=self.n()).map(|q| self.letter(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// 0 if the operators commute, 1 if they anticommute.
    ///
    /// # Panics
    /// On a qubit-count mismatch.
    pub fn symplectic_product(&self, other: &PauliString) -> u8 {
        assert_eq!(
            self.n, other.n,
            "symplectic product of strings with different lengths"
        );
        (((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) & 1) as u8
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.symplectic_product(other) == 0
    }

    /// The symplectic vector `(a|b)` packed as `a | b << n`.
    pub fn symplectic_vector(&self) -> u64 {
        self.x as u64 | ((self.z as u64) << self.n)
    }

    /// Renders `(a|b)` as two `n`-character bit strings, qubit 1 leftmost.
    pub fn symplectic_text(&self) -> String {
        let bits = |w: u16| {
            (0..self.n())
                .map(|j| if w >> j & 1 == 1 { '1' } else { '0' })
                .collect::<String>()
        };
        format!("{}|{}", bits(self.x), bits(self.z))
    }

    /// Exchanges the X and Z parts on every qubit.
    pub fn swap_xz(&self) -> PauliString {
        PauliString {
            n: self.n,
            x: self.z,
            z: self.x,
        }
    }

    /// Relabels qubit `j` as qubit `n + 1 - j`.
    pub fn reverse_qubits(&self) -> PauliString {
        let shift = 16 - self.n as u32;
        PauliString {
            n: self.n,
            x: self.x.reverse_bits() >> shift,
            z: self.z.reverse_bits() >> shift,
        }
    }
}

impl Mul for PauliString {
    type Output = PauliString;

    /// Product modulo phase.
    ///
    /// # Panics
    /// On a qubit-count mismatch.
    fn mul(self, rhs: PauliString) -> PauliString {
        assert_eq!(self.n, rhs.n, "product of strings with different lengths");
        PauliString {
            n: self.n,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
        }
    }
}

impl MulAssign for PauliString {
    fn mul_assign(&mut self, rhs: PauliString) {
        *self = *self * rhs;
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        for q in 1..=self.n() {
            let letter = self.letter(q);
            if letter != PauliLetter::I {
                write!(f, "{}{}", letter.symbol(), q)?;
            }
        }
        Ok(())
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

//! The Markov-correlated depolarizing memory channel.
//!
//! Qubit 1 draws its error from the single-qubit distribution
//! `(1 - p, αx·p, αy·p, αz·p)`. Each later qubit repeats its predecessor's
//! error with extra weight `μ`: `P(k | j) = (1 - μ)·P(k) + μ·[k = j]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString};

/// Largest qubit count for which the full distribution is enumerated.
pub const MAX_ENUMERATION_QUBITS: usize = 10;

const ALPHA_SUM_TOL: f64 = 1e-12;

/// Fractions of the error probability assigned to X, Y and Z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Alphas {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Alphas {
    pub const SYMMETRIC: Alphas = Alphas {
        x: 1.0 / 3.0,
        y: 1.0 / 3.0,
        z: 1.0 / 3.0,
    };

    /// Dephasing-biased weights `(5, 1, 25) / 31`.
    pub const DEPHASING_BIASED: Alphas = Alphas {
        x: 5.0 / 31.0,
        y: 1.0 / 31.0,
        z: 25.0 / 31.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let a = Alphas { x, y, z };
        if ![x, y, z].iter().all(|v| v.is_finite() && *v >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "asymmetry weights must be finite and nonnegative, got {a:?}"
            )));
        }
        if (x + y + z - 1.0).abs() > ALPHA_SUM_TOL {
            return Err(Error::InvalidParams(format!(
                "asymmetry weights must sum to 1, got {}",
                x + y + z
            )));
        }
        Ok(a)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == Alphas::SYMMETRIC
    }
}

impl Default for Alphas {
    fn default() -> Self {
        Alphas::SYMMETRIC
    }
}

/// Error probability, memory degree and asymmetry of the channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    p: f64,
    mu: f64,
    alphas: Alphas,
}

fn unit_interval(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "{name} must lie in [0, 1], got {v}"
        )))
    }
}

impl ChannelParams {
    pub fn new(p: f64, mu: f64, alphas: Alphas) -> Result<Self> {
        unit_interval("p", p)?;
        unit_interval("mu", mu)?;
        let alphas = Alphas::new(alphas.x, alphas.y, alphas.z)?;
        Ok(ChannelParams { p, mu, alphas })
    }

    pub fn symmetric(p: f64, mu: f64) -> Result<Self> {
        Self::new(p, mu, Alphas::SYMMETRIC)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn alphas(&self) -> Alphas {
        self.alphas
    }

    pub fn is_symmetric(&self) -> bool {
        self.alphas.is_symmetric()
    }

    /// Same channel with a different error probability.
    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(p, self.mu, self.alphas)
    }

    /// Same channel with a different memory degree.
    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(self.p, mu, self.alphas)
    }

    pub fn single_prob(&self, k: PauliLetter) -> f64 {
        match k {
            PauliLetter::I => 1.0 - self.p,
            PauliLetter::X => self.alphas.x * self.p,
            PauliLetter::Y => self.alphas.y * self.p,
            PauliLetter::Z => self.alphas.z * self.p,
        }
    }

    /// Probability of error `k` given error `prev` on the preceding qubit.
    pub fn conditional_prob(&self, k: PauliLetter, prev: PauliLetter) -> f64 {
        let repeat = if k == prev { self.mu } else { 0.0 };
        (1.0 - self.mu) * self.single_prob(k) + repeat
    }

    /// Probability of a whole error sequence, qubit 1 first.
    ///
    /// # Panics
    /// If `letters` is empty.
    pub fn joint_prob(&self, letters: &[PauliLetter]) -> f64 {
        assert!(
            !letters.is_empty(),
            "joint probability of an empty sequence"
        );
        let mut prob = self.single_prob(letters[0]);
        for w in letters.windows(2) {
            prob *= self.conditional_prob(w[1], w[0]);
        }
        prob
    }

    pub fn string_prob(&self, e: &PauliString) -> f64 {
        self.joint_prob(&e.letters())
    }

    pub fn transition_table(&self) -> TransitionTable {
        let mut t = TransitionTable {
            start: [0.0; 4],
            step: [[0.0; 4]; 4],
        };
        for k in PauliLetter::ALL {
            t.start[k.index()] = self.single_prob(k);
            for j in PauliLetter::ALL {
                t.step[j.index()][k.index()] = self.conditional_prob(k, j);
            }
        }
        t
    }

    /// All `4^n` error strings with their probabilities.
    ///
    /// Entry `i` holds the string whose qubit-1 letter is the most significant
    /// base-4 digit of `i`.
    pub fn enumerate_distribution(&self, n: usize) -> Result<Vec<(PauliString, f64)>> {
        check_enumerable(n)?;
        let table = self.transition_table();
        Ok((0..1u32 << (2 * n))
            .map(|i| {
                let packed = packed_from_index(i, n);
                (packed_to_pauli(packed, n), table.packed_prob(packed, n))
            })
            .collect())
    }
}

pub(crate) fn check_enumerable(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_QUBITS {
        Err(Error::EnumerationTooLarge {
            n,
            max: MAX_ENUMERATION_QUBITS,
        })
    } else if n == 0 {
        Err(Error::QubitCount(0))
    } else {
        Ok(())
    }
}

/// Rewrites enumeration index `i` so that qubit `q` sits in bits `2(q-1)..2q`.
pub(crate) fn packed_from_index(i: u32, n: usize) -> u32 {
    (0..n).fold(0u32, |acc, q| {
        acc | ((i >> (2 * (n - 1 - q))) & 3) << (2 * q)
    })
}

/// Converts 2-bit-per-qubit letter indices into a Pauli string.
pub(crate) fn packed_to_pauli(packed: u32, n: usize) -> PauliString {
    let (mut x, mut z) = (0u32, 0u32);
    for q in 0..n {
        let (bx, bz) = PauliLetter::from_index((packed >> (2 * q) & 3) as usize)
            .unwrap()
            .bits();
        x |= (bx as u32) << q;
        z |= (bz as u32) << q;
    }
    PauliString::from_bits(n, x, z).expect("packed letters fit n qubits")
}

pub(crate) fn pauli_to_packed(e: &PauliString) -> u32 {
    (1..=e.n()).fold(0u32, |acc, q| {
        acc | (e.letter(q).index() as u32) << (2 * (q - 1))
    })
}

/// Start distribution and transition matrix of the chain, ready for fast
/// repeated evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionTable {
    /// Distribution of the qubit-1 error.
    pub start: [f64; 4],
    /// `step[j][k]` is the probability of `k` after `j`.
    pub step: [[f64; 4]; 4],
}

impl TransitionTable {
    /// Probability of letters packed two bits per qubit, qubit 1 lowest.
    pub fn packed_prob(&self, packed: u32, n: usize) -> f64 {
        let mut prev = (packed & 3) as usize;
        let mut prob = self.start[prev];
        for q in 1..n {
            let cur = (packed >> (2 * q) & 3) as usize;
            prob *= self.step[prev][cur];
            prev = cur;
        }
        prob
    }

    pub fn string_prob(&self, e: &PauliString) -> f64 {
        self.packed_prob(pauli_to_packed(e), e.n())
    }
}

#[cfg(test)]
mod tests {
    use super::PauliLetter::*;
    use super::*;
    use crate::sum::neumaier;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn single_probabilities() {
        let c = ChannelParams::symmetric(0.3, 0.0).unwrap();
        assert!(close(c.single_prob(X), 0.1, 1e-15));
        let c = ChannelParams::new(0.04, 0.0, Alphas::DEPHASING_BIASED).unwrap();
        assert!(close(c.single_prob(Z), 0.04 * 25.0 / 31.0, 1e-16));
        assert!(close(c.single_prob(Z), 0.0322580645, 1e-10));
    }

    #[test]
    fn conditional_probabilities() {
        let c = ChannelParams::symmetric(0.3, 0.5).unwrap();
        assert!(close(c.conditional_prob(X, X), 0.55, 1e-15));
        let c = ChannelParams::symmetric(0.3, 1.0).unwrap();
        assert_eq!(c.conditional_prob(Y, Y), 1.0);
        assert_eq!(c.conditional_prob(Y, Z), 0.0);
        let c = ChannelParams::symmetric(0.3, 0.0).unwrap();
        for k in PauliLetter::ALL {
            for j in PauliLetter::ALL {
                assert_eq!(c.conditional_prob(k, j), c.single_prob(k));
            }
        }
    }

    #[test]
    fn joint_probability_of_identity() {
        let c = ChannelParams::symmetric(0.1, 0.0).unwrap();
        assert!(close(c.joint_prob(&[I; 5]), 0.59049, 1e-15));
        let (p, mu) = (0.07, 0.35);
        let c = ChannelParams::symmetric(p, mu).unwrap();
        let p00 = (1.0 - mu) * (1.0 - p) + mu;
        assert!(close(c.joint_prob(&[I; 5]), p00.powi(4) * (1.0 - p), 1e-15));
    }

    #[test]
    fn enumeration_sizes_and_weight_counts() {
        let c = ChannelParams::symmetric(0.1, 0.2).unwrap();
        for n in [5usize, 7] {
            let d = c.enumerate_distribution(n).unwrap();
            assert_eq!(d.len(), 1 << (2 * n));
            let mut counts = vec![0usize; n + 1];
            for (e, _) in &d {
                counts[e.weight()] += 1;
            }
            for (m, &count) in counts.iter().enumerate() {
                let binom = (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(count, 3usize.pow(m as u32) * binom);
            }
        }
    }

    #[test]
    fn trivial_single_qubit_distribution() {
        let c = ChannelParams::symmetric(0.0, 0.4).unwrap();
        let d = c.enumerate_distribution(1).unwrap();
        let nonzero: Vec<_> = d.iter().filter(|(_, pr)| *pr != 0.0).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(nonzero[0].0, PauliString::identity(1));
        assert_eq!(nonzero[0].1, 1.0);
    }

    #[test]
    fn enumeration_is_refused_above_limit() {
        let c = ChannelParams::symmetric(0.1, 0.2).unwrap();
        assert!(matches!(
            c.enumerate_distribution(11),
            Err(Error::EnumerationTooLarge { n: 11, max: 10 })
        ));
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(ChannelParams::symmetric(1.5, 0.0).is_err());
        assert!(ChannelParams::symmetric(0.1, -0.1).is_err());
        assert!(ChannelParams::symmetric(f64::NAN, 0.0).is_err());
        assert!(Alphas::new(0.5, 0.5, 0.5).is_err());
        assert!(Alphas::new(-0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn packing_round_trips() {
        for i in 0..1u32 << 10 {
            let packed = packed_from_index(i, 5);
            let e = packed_to_pauli(packed, 5);
            assert_eq!(pauli_to_packed(&e), packed);
        }
        // The last qubit is the least significant enumeration digit.
        assert_eq!(
            packed_to_pauli(packed_from_index(1, 5), 5).to_string(),
            "X5"
        );
    }

    fn arb_params() -> impl Strategy<Value = ChannelParams> {
        (0.0..=1.0f64, 0.0..=1.0f64, 0.0..1.0f64, 0.0..1.0f64).prop_map(|(p, mu, u, v)| {
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            let alphas = Alphas::new(lo, hi - lo, 1.0 - lo - (hi - lo)).unwrap();
            ChannelParams::new(p, mu, alphas).unwrap()
        })
    }

    fn arb_letters(n: usize) -> impl Strategy<Value = Vec<PauliLetter>> {
        prop::collection::vec(
            (0usize..4).prop_map(|i| PauliLetter::from_index(i).unwrap()),
            n,
        )
    }

    proptest! {
        #[test]
        fn distribution_is_normalized(c in arb_params(), n in 1usize..=7) {
            let d = c.enumerate_distribution(n).unwrap();
            prop_assert!(close(neumaier(d.iter().map(|x| x.1)), 1.0, 1e-12));
        }

        #[test]
        fn conditional_rows_are_normalized(c in arb_params()) {
            for j in PauliLetter::ALL {
                let s: f64 = PauliLetter::ALL.iter().map(|&k| c.conditional_prob(k, j)).sum();
                prop_assert!(close(s, 1.0, 1e-14));
            }
        }

        #[test]
        fn table_matches_direct_product(c in arb_params(), letters in arb_letters(7)) {
            let e = PauliString::from_sequence(&letters).unwrap();
            prop_assert!(close(c.transition_table().string_prob(&e), c.joint_prob(&letters), 1e-16));
        }

        #[test]
        fn reversal_preserves_probability(c in arb_params(), letters in arb_letters(6)) {
            // The chain is stationary and satisfies detailed balance, so a
            // reversed sequence is exactly as likely.
            let rev: Vec<_> = letters.iter().rev().copied().collect();
            prop_assert!(close(c.joint_prob(&letters), c.joint_prob(&rev), 1e-15));
        }

        #[test]
        fn identity_string_grows_with_memory(p in 0.0..=1.0f64, mu in 0.0..1.0f64, dmu in 0.0..1.0f64) {
            let mu2 = mu + (1.0 - mu) * dmu;
            let a = ChannelParams::symmetric(p, mu).unwrap().joint_prob(&[I; 7]);
            let b = ChannelParams::symmetric(p, mu2).unwrap().joint_prob(&[I; 7]);
            prop_assert!(b >= a * (1.0 - 1e-14));
        }

        #[test]
        fn symmetric_weights_reproduce_symmetric_channel(p in 0.0..=1.0f64, mu in 0.0..=1.0f64) {
            let a = ChannelParams::symmetric(p, mu).unwrap().enumerate_distribution(4).unwrap();
            let b = ChannelParams::new(p, mu, Alphas::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap())
                .unwrap().enumerate_distribution(4).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

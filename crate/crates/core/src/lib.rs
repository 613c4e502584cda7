//! Exact analysis of the five-qubit and seven-qubit codes under a
//! Markov-correlated, optionally asymmetric, depolarizing memory channel.
//!
//! The crate is layered bottom-up:
//!
//! * [`pauli`] and [`f2`]: phase-free Pauli strings and GF(2) row reduction.
//! * [`code`]: code definitions, syndromes and the correction table.
//! * [`channel`]: the correlated channel as a distribution over Pauli strings.
//! * [`fidelity`]: exhaustive fidelity evaluation plus published polynomials.
//! * [`dense`]: state-vector checks on the explicit codewords.
//! * [`threshold`]: effectiveness regions and threshold curves.
//! * [`verify`]: the self-check suite run by `qecmem verify`.

pub mod channel;
pub mod code;
pub mod dense;
pub mod error;
pub mod f2;
pub mod fidelity;
pub mod pauli;
pub mod sum;
pub mod threshold;
pub mod verify;

pub use channel::{Alphas, ChannelParams, TransitionTable};
pub use code::{build_code, CodeName, CodeSpec, CodewordFrame, CollisionPolicy, Syndrome};
pub use error::{Error, Result};
pub use fidelity::{
    closed_form, entanglement_fidelity_exact, set_difference_identity, unencoded_fidelity,
    FidelityEngine, FidelityReport, Regime, SuccessRule,
};
pub use pauli::{PauliLetter, PauliString};
pub use threshold::{ThresholdCurve, ThresholdSweeper};

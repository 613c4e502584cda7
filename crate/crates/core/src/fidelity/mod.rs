//! Exact entanglement fidelity by exhaustive enumeration of error strings.
//!
//! Every one of the `4^n` error strings is classified once per code. Two
//! success rules are supported:
//!
//! * [`SuccessRule::DesignatedCorrection`] (default): a string counts as
//!   corrected iff it is itself an element of the correctable set, so that
//!   the recovery branch for that element returns the state exactly.
//! * [`SuccessRule::StabilizerCoset`]: a string counts iff the table
//!   correction for its syndrome times the string lies in the stabilizer
//!   group, which also credits strings that differ from a correctable element
//!   by a stabilizer.
//!
//! The published polynomials in [`closed_form`] use the first rule.

pub mod closed_form;

use serde::{Deserialize, Serialize};

pub use closed_form::{
    closed_form, set_difference_identity, unencoded_fidelity, ChainCoefficients, Regime,
};

use crate::channel::{
    check_enumerable, packed_from_index, packed_to_pauli, pauli_to_packed, ChannelParams,
};
use crate::code::{build_code, CodeName, CodeSpec, Syndrome};
use crate::error::Result;
use crate::sum::ordered_sum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuccessRule {
    #[default]
    DesignatedCorrection,
    StabilizerCoset,
}

/// Net effect of applying the table correction to an error string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NetAction {
    Identity = 0,
    Stabilizer = 1,
    /// Non-trivial logical operator, or no correction for the syndrome.
    Logical = 2,
}

/// Probability mass split by the net effect of the table correction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosetMasses {
    /// Strings that are themselves correctable elements.
    pub designated: f64,
    pub net_identity: f64,
    pub net_stabilizer: f64,
    pub net_logical: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub code: String,
    pub params: ChannelParams,
    pub rule: SuccessRule,
    pub fidelity_exact: f64,
    pub fidelity_closed_form: Option<f64>,
    pub failure_probability: f64,
    pub mass_logical_identity: f64,
    pub mass_logical_error: f64,
    pub coset_masses: CosetMasses,
    /// False when several correctable elements share a syndrome.
    pub recovery_is_bijective: bool,
}

/// Precomputed classification of all error strings for one code.
#[derive(Clone, Debug)]
pub struct FidelityEngine {
    code: String,
    code_name: Option<CodeName>,
    n: usize,
    rule: SuccessRule,
    bijective: bool,
    /// Packed strings grouped by `[is designated][net action]`.
    groups: [[Vec<u32>; 3]; 2],
}

impl FidelityEngine {
    pub fn new(code: &CodeSpec, rule: SuccessRule) -> Result<Self> {
        let n = code.n();
        check_enumerable(n)?;
        let mut groups: [[Vec<u32>; 3]; 2] = Default::default();
        for i in 0..1u32 << (2 * n) {
            let packed = packed_from_index(i, n);
            let e = packed_to_pauli(packed, n);
            let s = Syndrome::new(code.syndrome_value(&e), code.syndrome_len());
            let candidates = code.candidates_for_syndrome(s);
            let designated = candidates.contains(&e);
            let net = match candidates.first() {
                Some(&c) if c == e => NetAction::Identity,
                Some(&c) if code.is_in_stabilizer_group(&(c * e)) => NetAction::Stabilizer,
                _ => NetAction::Logical,
            };
            groups[designated as usize][net as usize].push(packed);
        }
        Ok(FidelityEngine {
            code: code.name().to_string(),
            code_name: code.name().parse().ok(),
            n,
            rule,
            bijective: code.is_recovery_bijective(),
            groups,
        })
    }

    /// Engine for a built-in code.
    pub fn for_code(name: CodeName, rule: SuccessRule) -> Result<Self> {
        Self::new(&build_code(name)?, rule)
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn code_name(&self) -> Option<CodeName> {
        self.code_name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> SuccessRule {
        self.rule
    }

    fn mass(&self, params: &ChannelParams, designated: &[usize], nets: &[usize]) -> f64 {
        let table = params.transition_table();
        let n = self.n;
        let mut parts = Vec::new();
        for &d in designated {
            for &a in nets {
                let group = &self.groups[d][a];
                parts.push(ordered_sum(group, |&s| table.packed_prob(s, n)));
            }
        }
        crate::sum::neumaier(parts)
    }

    /// Fidelity under the engine's rule.
    pub fn fidelity(&self, params: &ChannelParams) -> f64 {
        match self.rule {
            SuccessRule::DesignatedCorrection => self.mass(params, &[1], &[0, 1, 2]),
            SuccessRule::StabilizerCoset => self.mass(params, &[0, 1], &[0, 1]),
        }
    }

    /// `(1 − F) − p`: negative exactly where encoding beats a bare qubit.
    ///
    /// Evaluated as `unencoded − encoded` fidelity so that both sides carry
    /// the same rounding when the two coincide.
    pub fn failure_excess(&self, params: &ChannelParams) -> f64 {
        unencoded_fidelity(params) - self.fidelity(params)
    }

    pub fn coset_masses(&self, params: &ChannelParams) -> CosetMasses {
        CosetMasses {
            designated: self.mass(params, &[1], &[0, 1, 2]),
            net_identity: self.mass(params, &[0, 1], &[0]),
            net_stabilizer: self.mass(params, &[0, 1], &[1]),
            net_logical: self.mass(params, &[0, 1], &[2]),
        }
    }

    /// Correctable-set strings that the table never applies.
    pub fn shadowed_count(&self) -> usize {
        self.groups[1][1].len() + self.groups[1][2].len()
    }

    /// The packed strings counted as corrected under the engine's rule.
    pub fn success_strings(&self) -> Vec<crate::pauli::PauliString> {
        let (ds, nets): (&[usize], &[usize]) = match self.rule {
            SuccessRule::DesignatedCorrection => (&[1], &[0, 1, 2]),
            SuccessRule::StabilizerCoset => (&[0, 1], &[0, 1]),
        };
        let mut out = Vec::new();
        for &d in ds {
            for &a in nets {
                out.extend(
                    self.groups[d][a]
                        .iter()
                        .map(|&s| packed_to_pauli(s, self.n)),
                );
            }
        }
        out.sort_by_key(pauli_to_packed);
        out
    }

    pub fn report(&self, params: &ChannelParams) -> FidelityReport {
        let masses = self.coset_masses(params);
        let (identity, error) = match self.rule {
            SuccessRule::DesignatedCorrection => {
                (masses.designated, self.mass(params, &[0], &[0, 1, 2]))
            }
            SuccessRule::StabilizerCoset => (
                masses.net_identity + masses.net_stabilizer,
                masses.net_logical,
            ),
        };
        let fidelity_closed_form = self
            .code_name
            .and_then(|name| closed_form(name, Regime::of(params), params).ok());
        FidelityReport {
            code: self.code.clone(),
            params: *params,
            rule: self.rule,
            fidelity_exact: identity,
            fidelity_closed_form,
            failure_probability: 1.0 - identity,
            mass_logical_identity: identity,
            mass_logical_error: error,
            coset_masses: masses,
            recovery_is_bijective: self.bijective,
        }
    }
}

/// One-shot fidelity report under the default rule.
pub fn entanglement_fidelity_exact(
    code: &CodeSpec,
    params: &ChannelParams,
) -> Result<FidelityReport> {
    Ok(FidelityEngine::new(code, SuccessRule::default())?.report(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Alphas;
    use crate::pauli::PauliString;

    fn sym(p: f64, mu: f64) -> ChannelParams {
        ChannelParams::symmetric(p, mu).unwrap()
    }

    fn engine(name: CodeName) -> FidelityEngine {
        FidelityEngine::for_code(name, SuccessRule::DesignatedCorrection).unwrap()
    }

    #[test]
    fn perfect_and_hopeless_channels() {
        for name in CodeName::ALL {
            let e = engine(name);
            assert_eq!(e.fidelity(&sym(0.0, 0.3)), 1.0);
            assert!(e.fidelity(&sym(1.0, 0.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn five_qubit_memoryless_example() {
        let r = engine(CodeName::FiveQubit).report(&sym(0.1, 0.0));
        assert!((r.fidelity_exact - 0.91854).abs() < 1e-12);
        assert!((r.fidelity_closed_form.unwrap() - 0.91854).abs() < 1e-12);
    }

    #[test]
    fn report_masses_are_consistent() {
        let a = Alphas::new(0.2, 0.3, 0.5).unwrap();
        for name in CodeName::ALL {
            for rule in [
                SuccessRule::DesignatedCorrection,
                SuccessRule::StabilizerCoset,
            ] {
                let e = FidelityEngine::for_code(name, rule).unwrap();
                let r = e.report(&ChannelParams::new(0.13, 0.37, a).unwrap());
                assert!((r.mass_logical_identity + r.mass_logical_error - 1.0).abs() < 1e-12);
                assert_eq!(r.fidelity_exact, r.mass_logical_identity);
                let m = r.coset_masses;
                assert!((m.net_identity + m.net_stabilizer + m.net_logical - 1.0).abs() < 1e-12);
                assert!((0.0..=1.0).contains(&r.fidelity_exact));
            }
        }
    }

    #[test]
    fn fidelity_is_sum_over_correctable_set() {
        let params = sym(0.05, 0.2);
        for name in CodeName::ALL {
            let code = build_code(name).unwrap();
            let direct: f64 = code
                .correctable_set()
                .iter()
                .map(|e| params.string_prob(e))
                .sum();
            assert!((engine(name).fidelity(&params) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn coset_rule_credits_stabilizer_shifts() {
        let params = sym(0.1, 0.3);
        let five = build_code(CodeName::FiveQubit).unwrap();
        let coset = FidelityEngine::new(&five, SuccessRule::StabilizerCoset).unwrap();
        let r = coset.report(&params);
        assert!(r.coset_masses.net_stabilizer > 0.0);
        assert!((r.coset_masses.designated - r.coset_masses.net_identity).abs() < 1e-15);
        assert!(r.fidelity_exact > engine(CodeName::FiveQubit).fidelity(&params));
    }

    #[test]
    fn set2_has_shadowed_elements() {
        let e = engine(CodeName::SevenQubitSet2);
        assert_eq!(e.shadowed_count(), 64 - 43);
        assert_eq!(engine(CodeName::SevenQubitSet1).shadowed_count(), 0);
        let r = e.report(&sym(0.05, 0.2));
        assert!(!r.recovery_is_bijective);
        assert!(r.coset_masses.designated > r.coset_masses.net_identity);
    }

    #[test]
    fn success_strings_are_the_correctable_set() {
        for name in CodeName::ALL {
            let code = build_code(name).unwrap();
            let mut expect: Vec<PauliString> = code.correctable_set().to_vec();
            expect.sort_by_key(pauli_to_packed);
            assert_eq!(engine(name).success_strings(), expect);
        }
    }

    #[test]
    fn failure_excess_vanishes_under_full_memory() {
        for name in CodeName::ALL {
            let e = engine(name);
            for p in [0.01, 0.05, 0.11, 0.18] {
                assert_eq!(e.failure_excess(&sym(p, 1.0)), 0.0);
            }
        }
    }

    #[test]
    fn engine_refuses_large_codes() {
        use crate::code::{CodewordFrame, CollisionPolicy};
        let n = 11;
        let gens: Vec<PauliString> = (1..n)
            .map(|q| PauliString::parse(n, &format!("Z{q}Z{}", q + 1)).unwrap())
            .collect();
        let set: Vec<PauliString> = (0..1u32 << (n - 1))
            .map(|x| PauliString::from_bits(n, x, 0).unwrap())
            .collect();
        let code = CodeSpec::new(
            "repetition",
            1,
            gens,
            set,
            CollisionPolicy::Reject,
            CodewordFrame::Identity,
        )
        .unwrap();
        assert!(matches!(
            FidelityEngine::new(&code, SuccessRule::default()),
            Err(crate::error::Error::EnumerationTooLarge { n: 11, max: 10 })
        ));
    }
}

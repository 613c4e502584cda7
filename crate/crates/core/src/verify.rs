//! Self-check suite behind `qecmem verify`.
//!
//! Each check compares two independent computations, or a computation
//! against a fixed reference value, at a stated tolerance.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::channel::{Alphas, ChannelParams};
use crate::code::{build_code, CodeName};
use crate::dense::{
    check_code_kl, check_kl_conditions, check_stabilizer_fixing, gram_deviation, Codewords,
};
use crate::error::Result;
use crate::fidelity::closed_form::{
    five_qubit_memoryless, five_qubit_symmetric, seven_qubit_memoryless,
    seven_qubit_set1_symmetric, seven_qubit_set2_asymmetric, seven_qubit_set2_symmetric,
};
use crate::fidelity::{set_difference_identity, FidelityEngine, SuccessRule};
use crate::pauli::PauliString;
use crate::sum::neumaier;
use crate::threshold::{default_p_grid, linear_grid, ThresholdSweeper};

/// Tolerance for every fidelity-level equality.
pub const ORACLE_TOL: f64 = 1e-12;

pub const FIVE_QUBIT_GOLDEN: &str = include_str!("../golden/five_qubit_syndromes.txt");
pub const SEVEN_QUBIT_GOLDEN: &str = include_str!("../golden/seven_qubit_syndromes.txt");

/// Parses `PAULI SYNDROME` lines.
pub fn parse_golden(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            Some((it.next()?.to_string(), it.next()?.to_string()))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    /// Group the check belongs to, `1` through `9`.
    pub group: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(
    group: u8,
    name: impl Into<String>,
    passed: bool,
    detail: impl Into<String>,
) -> CheckOutcome {
    CheckOutcome {
        group,
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// The `(μ, p)` comparison grid: `μ ∈ {0, 0.1, …, 1}`, `p ∈ {0, 0.01, …, 0.2}`.
pub fn comparison_grid() -> Vec<(f64, f64)> {
    (0..=10)
        .flat_map(|i| (0..=20).map(move |j| (i as f64 / 10.0, j as f64 / 100.0)))
        .collect()
}

fn engine(name: CodeName) -> Result<FidelityEngine> {
    FidelityEngine::for_code(name, SuccessRule::DesignatedCorrection)
}

fn sym(p: f64, mu: f64) -> ChannelParams {
    ChannelParams::symmetric(p, mu).expect("grid point inside the unit square")
}

pub fn oracle_equivalence() -> Result<Vec<CheckOutcome>> {
    let cases: [(CodeName, Alphas, &str); 4] = [
        (
            CodeName::FiveQubit,
            Alphas::SYMMETRIC,
            "five_qubit symmetric",
        ),
        (
            CodeName::SevenQubitSet1,
            Alphas::SYMMETRIC,
            "seven_qubit_set1 symmetric",
        ),
        (
            CodeName::SevenQubitSet2,
            Alphas::SYMMETRIC,
            "seven_qubit_set2 symmetric",
        ),
        (
            CodeName::SevenQubitSet2,
            Alphas::DEPHASING_BIASED,
            "seven_qubit_set2 asymmetric",
        ),
    ];
    let mut out = Vec::new();
    for (name, alphas, label) in cases {
        let e = engine(name)?;
        let mut worst = 0.0f64;
        for (mu, p) in comparison_grid() {
            let params = ChannelParams::new(p, mu, alphas)?;
            let reference = match (name, alphas.is_symmetric()) {
                (CodeName::FiveQubit, _) => five_qubit_symmetric(mu, p),
                (CodeName::SevenQubitSet1, _) => seven_qubit_set1_symmetric(mu, p),
                (CodeName::SevenQubitSet2, true) => seven_qubit_set2_symmetric(mu, p),
                (CodeName::SevenQubitSet2, false) => seven_qubit_set2_asymmetric(mu, p, alphas),
            };
            worst = worst.max((e.fidelity(&params) - reference).abs());
        }
        out.push(outcome(
            1,
            format!("oracle equivalence, {label}"),
            worst <= ORACLE_TOL,
            format!("max |diff| = {worst:.3e} over 231 points"),
        ));
    }
    Ok(out)
}

/// Twenty error probabilities `0, 0.05, …, 0.95`.
pub fn memoryless_p_values() -> Vec<f64> {
    (0..20).map(|k| k as f64 * 0.05).collect()
}

type Polynomial = fn(f64) -> f64;

pub fn memoryless_pins() -> Result<Vec<CheckOutcome>> {
    let cases: [(CodeName, Polynomial); 2] = [
        (CodeName::FiveQubit, five_qubit_memoryless),
        (CodeName::SevenQubitSet1, seven_qubit_memoryless),
    ];
    let mut out = Vec::new();
    for (name, poly) in cases {
        let e = engine(name)?;
        let worst = memoryless_p_values()
            .into_iter()
            .map(|p| (e.fidelity(&sym(p, 0.0)) - poly(p)).abs())
            .fold(0.0, f64::max);
        out.push(outcome(
            2,
            format!("memoryless polynomial, {name}"),
            worst <= ORACLE_TOL,
            format!("max |diff| = {worst:.3e} over 20 values"),
        ));
    }
    Ok(out)
}

fn within(group: u8, name: &str, value: f64, target: f64, tol: f64) -> CheckOutcome {
    outcome(
        group,
        name,
        (value - target).abs() <= tol,
        format!("{value:.6e} (target {target:e} ± {tol:e})"),
    )
}

pub fn thresholds() -> Result<Vec<CheckOutcome>> {
    let s1 = ThresholdSweeper::for_code(CodeName::SevenQubitSet1, Alphas::SYMMETRIC)?;
    let s2 = ThresholdSweeper::for_code(CodeName::SevenQubitSet2, Alphas::SYMMETRIC)?;
    let five = ThresholdSweeper::for_code(CodeName::FiveQubit, Alphas::SYMMETRIC)?;
    let grid = default_p_grid();
    Ok(vec![
        within(
            3,
            "p_threshold(mu=0), seven_qubit_set1",
            s1.p_threshold_at_mu(0.0),
            7.63e-2,
            5e-4,
        ),
        within(
            3,
            "p_threshold(mu=0), seven_qubit_set2",
            s2.p_threshold_at_mu(0.0),
            7.63e-2,
            5e-4,
        ),
        within(
            3,
            "p_threshold(mu=0.29), seven_qubit_set2",
            s2.p_threshold_at_mu(0.29),
            1.95e-3,
            2e-4,
        ),
        within(
            3,
            "max effective mu, seven_qubit_set1",
            s1.mu_threshold_curve(&grid).max_threshold(),
            0.199,
            0.005,
        ),
        within(
            3,
            "max effective mu, seven_qubit_set2",
            s2.mu_threshold_curve(&grid).max_threshold(),
            0.29,
            0.01,
        ),
        within(
            3,
            "max effective mu, five_qubit",
            five.mu_threshold_curve(&grid).max_threshold(),
            0.33,
            0.01,
        ),
    ])
}

pub fn set_difference() -> Result<Vec<CheckOutcome>> {
    let mut worst = 0.0f64;
    let mut min_gap = f64::INFINITY;
    let mut min_term = f64::INFINITY;
    for (mu, p) in comparison_grid() {
        let params = sym(p, mu);
        let gap = seven_qubit_set2_symmetric(mu, p) - seven_qubit_set1_symmetric(mu, p);
        let term = set_difference_identity(&params)?;
        worst = worst.max((gap - term).abs());
        min_gap = min_gap.min(gap);
        min_term = min_term.min(term);
    }
    Ok(vec![
        outcome(
            4,
            "set difference identity",
            worst <= ORACLE_TOL,
            format!("max |diff| = {worst:.3e}"),
        ),
        outcome(
            4,
            "set difference is nonnegative",
            min_term >= 0.0 && min_gap >= -ORACLE_TOL,
            format!("min identity term = {min_term:.3e}, min closed-form gap = {min_gap:.3e}"),
        ),
    ])
}

/// Reproducible asymmetry triples drawn uniformly from the simplex.
pub fn random_alphas(seed: u64, count: usize) -> Vec<Alphas> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (u, v): (f64, f64) = (rng.gen(), rng.gen());
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            Alphas::new(lo, hi - lo, 1.0 - hi).expect("simplex point")
        })
        .collect()
}

pub fn five_qubit_invariance() -> Result<Vec<CheckOutcome>> {
    let e = engine(CodeName::FiveQubit)?;
    let mut worst = 0.0f64;
    for alphas in random_alphas(0x5eed, 10) {
        for (mu, p) in comparison_grid() {
            let asym = e.fidelity(&ChannelParams::new(p, mu, alphas)?);
            worst = worst.max((asym - e.fidelity(&sym(p, mu))).abs());
        }
    }
    Ok(vec![outcome(
        5,
        "five_qubit asymmetry invariance",
        worst <= ORACLE_TOL,
        format!("max |diff| = {worst:.3e} over 10 weight triples"),
    )])
}

pub fn kl_suite() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for name in CodeName::ALL {
        let r = check_code_kl(&build_code(name)?)?;
        let detail = match r.violations.first() {
            None => format!("{} pairs, no violations", r.pairs_checked),
            Some(v) => format!(
                "{} violations, first at ({}, {}) {:?} = {:.3}",
                r.violations.len(),
                v.l,
                v.m,
                v.kind,
                v.value
            ),
        };
        out.push(outcome(
            6,
            format!("Knill-Laflamme, {name}"),
            r.passed(),
            detail,
        ));
    }
    let words = Codewords::seven_qubit();
    let x123 = PauliString::parse(7, "X1X2X3")?;
    let r = check_kl_conditions(&words, &[PauliString::identity(7), x123]);
    let overlap = words.matrix_element(0, &x123, 1).norm();
    out.push(outcome(
        6,
        "Knill-Laflamme counterexample {I, X1X2X3}",
        !r.passed() && (overlap - 1.0).abs() <= ORACLE_TOL,
        format!(
            "fails as expected: {}; <0_L|X1X2X3|1_L> magnitude = {overlap:.15}",
            !r.passed()
        ),
    ));
    Ok(out)
}

pub fn golden_syndromes() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for (name, text) in [
        (CodeName::FiveQubit, FIVE_QUBIT_GOLDEN),
        (CodeName::SevenQubitSet1, SEVEN_QUBIT_GOLDEN),
    ] {
        let code = build_code(name)?;
        let entries = parse_golden(text);
        let mut mismatches = Vec::new();
        for (e, s) in &entries {
            let got = code
                .syndrome_of(&PauliString::parse(code.n(), e)?)?
                .to_string();
            if &got != s {
                mismatches.push(format!("{e}: {got} != {s}"));
            }
        }
        out.push(outcome(
            7,
            format!("golden syndromes, {}-qubit", code.n()),
            mismatches.is_empty(),
            format!(
                "{} entries, {} mismatches [{}]",
                entries.len(),
                mismatches.len(),
                mismatches.join("; ")
            ),
        ));
    }
    Ok(out)
}

pub fn structural_counts() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let params = sym(0.1, 0.3);
    for n in [5usize, 7] {
        let d = params.enumerate_distribution(n)?;
        let mut counts = vec![0usize; n + 1];
        for (e, _) in &d {
            counts[e.weight()] += 1;
        }
        let formula: Vec<usize> = (0..=n)
            .map(|m| 3usize.pow(m as u32) * (0..m).fold(1usize, |acc, i| acc * (n - i) / (i + 1)))
            .collect();
        let ok = counts == formula
            && d.len() == 1 << (2 * n)
            && formula.iter().sum::<usize>() == 1 << (2 * n);
        out.push(outcome(
            8,
            format!("weight counts, n = {n}"),
            ok,
            format!("{} strings, by weight {counts:?}", d.len()),
        ));
    }
    let mut rng = StdRng::seed_from_u64(0x0dd5);
    let alphas = random_alphas(0xa1fa, 50);
    let mut worst = 0.0f64;
    for a in alphas {
        let params = ChannelParams::new(rng.gen(), rng.gen(), a)?;
        for n in [5usize, 7] {
            let total = neumaier(params.enumerate_distribution(n)?.into_iter().map(|x| x.1));
            worst = worst.max((total - 1.0).abs());
        }
    }
    out.push(outcome(
        8,
        "normalization at 50 random draws",
        worst <= ORACLE_TOL,
        format!("max |sum - 1| = {worst:.3e}"),
    ));
    Ok(out)
}

pub fn orderings() -> Result<Vec<CheckOutcome>> {
    let five = engine(CodeName::FiveQubit)?;
    let s1 = engine(CodeName::SevenQubitSet1)?;
    let s2 = engine(CodeName::SevenQubitSet2)?;
    let mut out = Vec::new();

    let worst = comparison_grid()
        .into_iter()
        .filter(|(mu, _)| *mu > 0.0)
        .map(|(mu, p)| s2.fidelity(&sym(p, mu)) - s1.fidelity(&sym(p, mu)))
        .fold(f64::INFINITY, f64::min);
    out.push(outcome(
        9,
        "set2 fidelity >= set1 fidelity",
        worst >= 0.0,
        format!("min difference = {worst:.3e}"),
    ));

    for (name, e) in [
        (CodeName::FiveQubit, &five),
        (CodeName::SevenQubitSet1, &s1),
        (CodeName::SevenQubitSet2, &s2),
    ] {
        let mut checked = 0;
        let mut bad = Vec::new();
        for (mu, p) in comparison_grid() {
            let params = sym(p, mu);
            if e.failure_excess(&params) < 0.0 {
                checked += 1;
                if e.fidelity(&params) > e.fidelity(&sym(p, 0.0)) {
                    bad.push(format!("({mu}, {p})"));
                }
            }
        }
        out.push(outcome(
            9,
            format!("memory never helps inside the effective region, {name}"),
            bad.is_empty(),
            format!(
                "{checked} effective points, violations: [{}]",
                bad.join(", ")
            ),
        ));
    }

    let biased = ThresholdSweeper::new(s2.clone(), Alphas::DEPHASING_BIASED);
    let p = 4e-2;
    let mut bad = Vec::new();
    for mu in linear_grid(0.0, 0.199, 200) {
        let f_asym7 = biased.fidelity(mu, p);
        let f5 = five.fidelity(&sym(p, mu));
        let f_sym7 = s2.fidelity(&sym(p, mu));
        if !(f_asym7 >= f5 && f5 >= f_sym7) {
            bad.push(format!("{mu:.4}"));
        }
    }
    out.push(outcome(
        9,
        "biased seven-qubit >= five-qubit >= symmetric seven-qubit at p = 0.04",
        bad.is_empty(),
        format!(
            "200 points on mu in [0, 0.199], violations at [{}]",
            bad.join(", ")
        ),
    ));
    Ok(out)
}

/// Further consistency checks that are not tied to a single criterion.
pub fn structural_extras() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for name in CodeName::ALL {
        let code = build_code(name)?;
        let fix = check_stabilizer_fixing(&code)?;
        out.push(outcome(
            6,
            format!("generators fix codewords, {name}"),
            fix.passed(),
            format!("{} checks", fix.checks.len()),
        ));
        let r = code.detectability_check(code.correctable_set())?;
        out.push(outcome(
            6,
            format!("pairwise detectability, {name}"),
            r.passed(),
            format!(
                "{} ordered pairs, {} violations",
                r.pairs_checked,
                r.violations.len()
            ),
        ));
        let gram = gram_deviation(&code)?;
        out.push(outcome(
            6,
            format!("orthonormal error spaces, {name}"),
            gram <= ORACLE_TOL,
            format!("max Gram deviation = {gram:.3e}"),
        ));
    }
    Ok(out)
}

/// Every check, in group order.
pub fn run_all() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    out.extend(oracle_equivalence()?);
    out.extend(memoryless_pins()?);
    out.extend(thresholds()?);
    out.extend(set_difference()?);
    out.extend(five_qubit_invariance()?);
    out.extend(kl_suite()?);
    out.extend(structural_extras()?);
    out.extend(golden_syndromes()?);
    out.extend(structural_counts()?);
    out.extend(orderings()?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_has_231_points() {
        assert_eq!(comparison_grid().len(), 231);
        assert_eq!(memoryless_p_values().len(), 20);
    }

    #[test]
    fn random_alphas_are_valid_and_reproducible() {
        let a = random_alphas(7, 10);
        assert_eq!(a, random_alphas(7, 10));
        for x in a {
            assert!((x.x + x.y + x.z - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn golden_parsing() {
        assert_eq!(parse_golden(FIVE_QUBIT_GOLDEN).len(), 16);
        assert_eq!(parse_golden(SEVEN_QUBIT_GOLDEN).len(), 64);
    }
}

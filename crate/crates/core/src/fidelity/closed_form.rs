//! Published closed-form fidelity polynomials.
//!
//! Each polynomial is a list of rows, one per power of `μ` starting at `μ⁰`;
//! row entries are the coefficients of `p⁰, p¹, …` as exact fractions. They
//! are converted to `f64` only during evaluation.

use serde::{Deserialize, Serialize};

use crate::channel::{Alphas, ChannelParams};
use crate::code::CodeName;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Symmetric,
    Asymmetric,
}

impl Regime {
    pub fn of(params: &ChannelParams) -> Regime {
        if params.is_symmetric() {
            Regime::Symmetric
        } else {
            Regime::Asymmetric
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Symmetric => "symmetric",
            Regime::Asymmetric => "asymmetric",
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Frac(i64, i64);

impl Frac {
    fn value(self) -> f64 {
        self.0 as f64 / self.1 as f64
    }
}

const fn w(n: i64) -> Frac {
    Frac(n, 1)
}

const fn t(n: i64) -> Frac {
    Frac(n, 3)
}

const Z: Frac = Frac(0, 1);

fn horner(coeffs: &[Frac], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.value())
}

/// `Σ_k μ^k · row_k(p)`.
fn mu_series<const N: usize>(rows: &[[Frac; N]], mu: f64, p: f64) -> f64 {
    rows.iter()
        .rev()
        .fold(0.0, |acc, row| acc * mu + horner(row, p))
}

const FIVE_SYMMETRIC: [[Frac; 6]; 5] = [
    [w(1), Z, w(-10), w(20), w(-15), w(4)],
    [Z, w(-4), w(28), w(-60), w(52), w(-16)],
    [Z, w(3), w(-24), w(63), w(-66), w(24)],
    [Z, Z, w(6), w(-26), w(36), w(-16)],
    [Z, Z, Z, w(3), w(-7), w(4)],
];

const SEVEN_MEMORYLESS: [Frac; 8] = [w(1), Z, t(-49), t(140), t(-175), t(112), t(-35), t(4)];

const SEVEN_SET1: [[Frac; 8]; 7] = [
    SEVEN_MEMORYLESS,
    [Z, w(-6), t(154), t(-460), w(220), t(-490), t(178), w(-8)],
    [Z, w(5), t(-145), t(530), w(-310), t(835), t(-365), w(20)],
    [Z, Z, w(12), t(-232), w(192), t(-680), t(380), t(-80)],
    [Z, Z, t(4), t(14), w(-41), t(250), t(-205), w(20)],
    [Z, Z, Z, t(8), w(-4), t(-22), t(50), w(-8)],
    [Z, Z, Z, Z, t(4), t(-5), w(-1), t(4)],
];

const SEVEN_SET2: [[Frac; 8]; 7] = [
    SEVEN_MEMORYLESS,
    [Z, w(-4), t(124), t(-400), w(200), t(-460), t(172), w(-8)],
    [Z, t(5), w(-25), t(350), t(-710), w(235), t(-335), w(20)],
    [Z, t(4), t(-16), t(-40), t(272), t(-460), t(320), t(-80)],
    [Z, Z, t(16), t(-70), w(23), t(70), t(-145), w(20)],
    [Z, Z, Z, t(20), t(-64), w(16), t(20), w(-8)],
    [Z, Z, Z, Z, t(8), w(-5), w(1), t(4)],
];

// Seven-qubit second set under asymmetric noise, μ¹ … μ⁶. Each power splits
// into an α-free part, a part proportional to αz and a part proportional to
// αz² + αx·αz. The μ⁰ term is handled separately in product form.
const ASYM_BASE: [[Frac; 8]; 6] = [
    [Z, w(-6), w(66), w(-240), w(420), w(-390), w(186), w(-36)],
    [Z, w(5), w(-65), w(300), w(-650), w(725), w(-405), w(90)],
    [Z, Z, w(20), w(-160), w(480), w(-680), w(460), w(-120)],
    [Z, Z, Z, w(30), w(-165), w(330), w(-285), w(90)],
    [Z, Z, Z, Z, w(20), w(-74), w(90), w(-36)],
    [Z, Z, Z, Z, Z, w(5), w(-11), w(6)],
];

const ASYM_ALPHA_Z: [[Frac; 8]; 6] = [
    [Z, w(6), w(-30), w(60), w(-60), w(30), w(-6), Z],
    [Z, w(-10), w(70), w(-180), w(220), w(-130), w(30), Z],
    [Z, w(4), w(-52), w(192), w(-304), w(220), w(-60), Z],
    [Z, Z, w(12), w(-84), w(192), w(-180), w(60), Z],
    [Z, Z, Z, w(12), w(-52), w(70), w(-30), Z],
    [Z, Z, Z, Z, w(4), w(-10), w(6), Z],
];

const ASYM_PAIR: [[Frac; 8]; 6] = [
    [Z, Z, w(-66), w(390), w(-900), w(1020), w(-570), w(126)],
    [Z, Z, w(75), w(-555), w(1530), w(-2010), w(1275), w(-315)],
    [Z, Z, w(-36), w(372), w(-1296), w(2040), w(-1500), w(420)],
    [Z, Z, w(6), w(-114), w(558), w(-1110), w(975), w(-315)],
    [Z, Z, Z, w(12), w(-108), w(300), w(-330), w(126)],
    [Z, Z, Z, Z, w(6), w(-30), w(45), w(-21)],
];

/// Five-qubit fidelity, symmetric channel, expanded polynomial.
pub fn five_qubit_symmetric(mu: f64, p: f64) -> f64 {
    mu_series(&FIVE_SYMMETRIC, mu, p)
}

/// Seven-qubit fidelity with the first correctable set, symmetric channel.
pub fn seven_qubit_set1_symmetric(mu: f64, p: f64) -> f64 {
    mu_series(&SEVEN_SET1, mu, p)
}

/// Seven-qubit fidelity with the second correctable set, symmetric channel.
pub fn seven_qubit_set2_symmetric(mu: f64, p: f64) -> f64 {
    mu_series(&SEVEN_SET2, mu, p)
}

/// Seven-qubit fidelity with the second correctable set, arbitrary weights.
pub fn seven_qubit_set2_asymmetric(mu: f64, p: f64, alphas: Alphas) -> f64 {
    let pair = alphas.z * alphas.z + alphas.x * alphas.z;
    let q = 1.0 - p;
    let memoryless = q.powi(7) + 7.0 * p * q.powi(6) + 21.0 * p * p * q.powi(5) * pair;
    let correlated = mu
        * (mu_series(&ASYM_BASE, mu, p)
            + alphas.z * mu_series(&ASYM_ALPHA_Z, mu, p)
            + pair * mu_series(&ASYM_PAIR, mu, p));
    memoryless + correlated
}

/// Memoryless five-qubit fidelity, `4p⁵ − 15p⁴ + 20p³ − 10p² + 1`.
pub fn five_qubit_memoryless(p: f64) -> f64 {
    horner(&FIVE_SYMMETRIC[0], p)
}

/// Memoryless seven-qubit fidelity shared by both symmetric sets.
pub fn seven_qubit_memoryless(p: f64) -> f64 {
    horner(&SEVEN_MEMORYLESS, p)
}

/// Chain quantities that appear in the factored fidelity expressions.
///
/// `pij` is the probability of letter `i` following letter `j`; `pk` is the
/// qubit-1 probability of letter `k` (0 = I, 1 = X, 2 = Y, 3 = Z).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainCoefficients {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p20: f64,
    pub p30: f64,
    pub p11: f64,
    pub p31: f64,
    pub p33: f64,
}

impl ChainCoefficients {
    pub fn new(params: &ChannelParams) -> Self {
        let (p, mu, a) = (params.p(), params.mu(), params.alphas());
        let keep = 1.0 - mu;
        ChainCoefficients {
            p0: 1.0 - p,
            p1: a.x * p,
            p2: a.y * p,
            p3: a.z * p,
            p00: keep * (1.0 - p) + mu,
            p01: keep * (1.0 - p),
            p10: a.x * p * keep,
            p20: a.y * p * keep,
            p30: a.z * p * keep,
            p11: a.x * p * keep + mu,
            p31: a.z * p * keep,
            p33: a.z * p * keep + mu,
        }
    }
}

/// Factored forms, algebraically equal to the expanded polynomials.
pub mod factored {
    use super::ChainCoefficients;

    pub fn five_qubit_symmetric(c: &ChainCoefficients) -> f64 {
        c.p00.powi(4) * c.p0
            + 3.0
                * (2.0 * c.p00.powi(3) * c.p10 * c.p0 + 3.0 * c.p00.powi(2) * c.p01 * c.p10 * c.p0)
    }

    pub fn five_qubit_asymmetric(c: &ChainCoefficients) -> f64 {
        let after_clean = c.p10 + c.p20 + c.p30;
        c.p00.powi(4) * c.p0
            + c.p00.powi(3) * c.p0 * after_clean
            + 3.0 * c.p00.powi(2) * c.p01 * c.p0 * after_clean
            + c.p00.powi(3) * c.p01 * (c.p1 + c.p2 + c.p3)
    }

    pub fn seven_qubit_set1_symmetric(c: &ChainCoefficients) -> f64 {
        let (p00, p01, p10, p0) = (c.p00, c.p01, c.p10, c.p0);
        p00.powi(6) * p0
            + 6.0 * p00.powi(5) * p10 * p0
            + 15.0 * p00.powi(4) * p01 * p10 * p0
            + 6.0 * p00.powi(4) * p10 * p10 * p0
            + 24.0 * p00.powi(3) * p01 * p10 * p10 * p0
            + 12.0 * p00.powi(2) * p01 * p01 * p10 * p10 * p0
    }

    pub fn seven_qubit_set2_symmetric(c: &ChainCoefficients) -> f64 {
        let (p00, p01, p10, p11, p0) = (c.p00, c.p01, c.p10, c.p11, c.p0);
        p00.powi(6) * p0
            + 6.0 * p00.powi(5) * p10 * p0
            + 15.0 * p00.powi(4) * p01 * p10 * p0
            + 2.0 * p00.powi(4) * p10 * p0 * (p11 + 2.0 * p10)
            + 4.0 * p00.powi(3) * p01 * p10 * p0 * (5.0 * p10 + p11)
            + 12.0 * p00.powi(2) * p01 * p01 * p10 * p10 * p0
    }

    pub fn seven_qubit_set2_asymmetric(c: &ChainCoefficients) -> f64 {
        let (p00, p01, p0) = (c.p00, c.p01, c.p0);
        p00.powi(6) * p0
            + 2.0 * p00.powi(5) * p01 * (c.p1 + c.p2 + c.p3)
            + 5.0 * p00.powi(4) * p01 * p0 * (c.p10 + c.p20 + c.p30)
            + p00.powi(4) * p0 * (2.0 * c.p30 * c.p33 + c.p30 * c.p30 + 3.0 * c.p10 * c.p31)
            + p00.powi(3) * p01 * c.p30 * p0 * (8.0 * c.p30 + 4.0 * c.p33 + 12.0 * c.p10)
            + 6.0 * p00.powi(2) * p01 * p01 * c.p30 * p0 * (c.p30 + c.p10)
    }
}

/// Published fidelity for a built-in code.
///
/// The symmetric regime requires symmetric weights. The five-qubit code in the
/// asymmetric regime uses its factored form; the first seven-qubit set has no
/// asymmetric closed form.
pub fn closed_form(code: CodeName, regime: Regime, params: &ChannelParams) -> Result<f64> {
    let (mu, p) = (params.mu(), params.p());
    if regime == Regime::Symmetric && !params.is_symmetric() {
        return Err(Error::InvalidParams(
            "the symmetric closed form needs equal weights".into(),
        ));
    }
    match (code, regime) {
        (CodeName::FiveQubit, Regime::Symmetric) => Ok(five_qubit_symmetric(mu, p)),
        (CodeName::FiveQubit, Regime::Asymmetric) => Ok(factored::five_qubit_asymmetric(
            &ChainCoefficients::new(params),
        )),
        (CodeName::SevenQubitSet1, Regime::Symmetric) => Ok(seven_qubit_set1_symmetric(mu, p)),
        (CodeName::SevenQubitSet2, Regime::Symmetric) => Ok(seven_qubit_set2_symmetric(mu, p)),
        (CodeName::SevenQubitSet2, Regime::Asymmetric) => {
            Ok(seven_qubit_set2_asymmetric(mu, p, params.alphas()))
        }
        (CodeName::SevenQubitSet1, Regime::Asymmetric) => Err(Error::NoClosedForm {
            code: code.to_string(),
            regime: regime.as_str().into(),
        }),
    }
}

/// Gap between the two seven-qubit sets under symmetric noise,
/// `μ·(2·p00⁴·p10·p0 + 4·p00³·p01·p10·p0)`.
pub fn set_difference_identity(params: &ChannelParams) -> Result<f64> {
    if !params.is_symmetric() {
        return Err(Error::InvalidParams(
            "the set difference is defined for symmetric noise".into(),
        ));
    }
    let c = ChainCoefficients::new(params);
    let gap = c.p11 - c.p10;
    Ok(gap * (2.0 * c.p00.powi(4) * c.p10 * c.p0 + 4.0 * c.p00.powi(3) * c.p01 * c.p10 * c.p0))
}

/// Fidelity of a single unprotected qubit, `1 − p`.
pub fn unencoded_fidelity(params: &ChannelParams) -> f64 {
    1.0 - params.p()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> impl Iterator<Item = (f64, f64)> {
        (0..=10).flat_map(|i| (0..=20).map(move |j| (i as f64 / 10.0, j as f64 / 100.0)))
    }

    fn sym(p: f64, mu: f64) -> ChannelParams {
        ChannelParams::symmetric(p, mu).unwrap()
    }

    #[test]
    fn memoryless_pins() {
        assert!((five_qubit_memoryless(0.1) - 0.91854).abs() < 1e-15);
        for (mu, p) in grid().filter(|(mu, _)| *mu == 0.0) {
            assert!((five_qubit_symmetric(mu, p) - five_qubit_memoryless(p)).abs() < 1e-15);
            assert!((seven_qubit_set1_symmetric(mu, p) - seven_qubit_memoryless(p)).abs() < 1e-15);
            assert!((seven_qubit_set2_symmetric(mu, p) - seven_qubit_memoryless(p)).abs() < 1e-15);
        }
    }

    #[test]
    fn asymmetric_memoryless_form() {
        let a = Alphas::DEPHASING_BIASED;
        for p in [0.0, 0.03, 0.17, 0.5, 1.0] {
            let q: f64 = 1.0 - p;
            let expect = q.powi(7)
                + 7.0 * p * q.powi(6)
                + 21.0 * p * p * q.powi(5) * (a.z * a.z + a.x * a.z);
            assert_eq!(seven_qubit_set2_asymmetric(0.0, p, a), expect);
        }
    }

    #[test]
    fn factored_forms_agree_with_expansions() {
        let a = Alphas::DEPHASING_BIASED;
        for (mu, p) in grid() {
            let s = ChainCoefficients::new(&sym(p, mu));
            assert!(
                (factored::five_qubit_symmetric(&s) - five_qubit_symmetric(mu, p)).abs() < 1e-13
            );
            assert!(
                (factored::five_qubit_asymmetric(&s) - five_qubit_symmetric(mu, p)).abs() < 1e-13
            );
            assert!(
                (factored::seven_qubit_set1_symmetric(&s) - seven_qubit_set1_symmetric(mu, p))
                    .abs()
                    < 1e-13
            );
            assert!(
                (factored::seven_qubit_set2_symmetric(&s) - seven_qubit_set2_symmetric(mu, p))
                    .abs()
                    < 1e-13
            );
            assert!(
                (factored::seven_qubit_set2_asymmetric(&s) - seven_qubit_set2_symmetric(mu, p))
                    .abs()
                    < 1e-13
            );
            let c = ChainCoefficients::new(&ChannelParams::new(p, mu, a).unwrap());
            assert!(
                (factored::seven_qubit_set2_asymmetric(&c) - seven_qubit_set2_asymmetric(mu, p, a))
                    .abs()
                    < 1e-13
            );
        }
    }

    #[test]
    fn boundary_limits() {
        for i in 0..=10 {
            let mu = i as f64 / 10.0;
            for f in [
                five_qubit_symmetric,
                seven_qubit_set1_symmetric,
                seven_qubit_set2_symmetric,
            ] {
                assert!((f(mu, 0.0) - 1.0).abs() < 1e-13);
                assert!(f(mu, 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn set_difference_matches_polynomials() {
        for (mu, p) in grid() {
            let d = set_difference_identity(&sym(p, mu)).unwrap();
            let poly = seven_qubit_set2_symmetric(mu, p) - seven_qubit_set1_symmetric(mu, p);
            assert!((d - poly).abs() < 1e-12, "{mu} {p}");
            assert!(d >= 0.0);
        }
        assert_eq!(set_difference_identity(&sym(0.3, 0.0)).unwrap(), 0.0);
        assert_eq!(set_difference_identity(&sym(0.0, 0.4)).unwrap(), 0.0);
        assert!(set_difference_identity(&sym(0.05, 0.1)).unwrap() > 0.0);
    }

    #[test]
    fn closed_form_dispatch() {
        let biased = ChannelParams::new(0.1, 0.2, Alphas::DEPHASING_BIASED).unwrap();
        assert!(matches!(
            closed_form(CodeName::SevenQubitSet1, Regime::Asymmetric, &biased),
            Err(Error::NoClosedForm { .. })
        ));
        assert!(closed_form(CodeName::FiveQubit, Regime::Symmetric, &biased).is_err());
        let f = closed_form(CodeName::FiveQubit, Regime::Asymmetric, &biased).unwrap();
        assert!((f - five_qubit_symmetric(0.2, 0.1)).abs() < 1e-13);
    }

    #[test]
    fn unencoded() {
        assert_eq!(unencoded_fidelity(&sym(0.0, 0.5)), 1.0);
        assert_eq!(unencoded_fidelity(&sym(1.0, 0.5)), 0.0);
        assert!((unencoded_fidelity(&sym(0.3, 0.5)) - 0.7).abs() < 1e-16);
    }
}

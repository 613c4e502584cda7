//! Effectiveness regions and threshold curves.
//!
//! Encoding is effective at `(μ, p)` when the encoded failure probability
//! `1 − F` is below the bare-qubit error probability `p`. Thresholds are the
//! boundary of that region along a line of fixed `μ` or fixed `p`.
//!
//! Each line is first sampled at [`PRESCAN_POINTS`] points. The outermost
//! transition from effective to ineffective is then refined by bisection to
//! [`BISECTION_TOL`].

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{Alphas, ChannelParams};
use crate::code::CodeName;
use crate::error::Result;
use crate::fidelity::{FidelityEngine, Regime, SuccessRule};

pub const BISECTION_TOL: f64 = 1e-8;
pub const PRESCAN_POINTS: usize = 64;
/// Lower end of the logarithmic pre-scan in `p`.
pub const PRESCAN_P_MIN: f64 = 1e-9;

/// `count` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && count >= 2, "invalid log grid");
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| match i {
            0 => lo,
            _ if i == count - 1 => hi,
            _ => (a + (b - a) * i as f64 / (count - 1) as f64).exp(),
        })
        .collect()
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "invalid linear grid");
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Default `p` grid for threshold curves: 200 log-spaced points in `[1e-4, 0.2]`.
pub fn default_p_grid() -> Vec<f64> {
    log_grid(1e-4, 0.2, 200)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Abscissa {
    /// Samples are `(p, μ_threshold)`.
    P,
    /// Samples are `(μ, p_threshold)`.
    Mu,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdCurve {
    pub code: String,
    pub regime: Regime,
    pub alphas: Alphas,
    pub abscissa: Abscissa,
    pub samples: Vec<(f64, f64)>,
    pub bisection_tol: f64,
    pub prescan_points: usize,
    /// Indices `i` where the threshold rises from sample `i` to `i + 1`.
    /// Recorded for inspection only.
    pub monotonicity_flags: Vec<usize>,
}

impl ThresholdCurve {
    pub fn max_threshold(&self) -> f64 {
        self.samples.iter().map(|s| s.1).fold(0.0, f64::max)
    }
}

/// Threshold computations for one code and one set of asymmetry weights.
#[derive(Clone, Debug)]
pub struct ThresholdSweeper {
    engine: FidelityEngine,
    alphas: Alphas,
}

impl ThresholdSweeper {
    pub fn new(engine: FidelityEngine, alphas: Alphas) -> Self {
        ThresholdSweeper { engine, alphas }
    }

    pub fn for_code(name: CodeName, alphas: Alphas) -> Result<Self> {
        Ok(Self::new(
            FidelityEngine::for_code(name, SuccessRule::default())?,
            alphas,
        ))
    }

    pub fn engine(&self) -> &FidelityEngine {
        &self.engine
    }

    pub fn alphas(&self) -> Alphas {
        self.alphas
    }

    fn params(&self, mu: f64, p: f64) -> ChannelParams {
        ChannelParams::new(p, mu, self.alphas).expect("sweeps stay inside the unit square")
    }

    pub fn fidelity(&self, mu: f64, p: f64) -> f64 {
        self.engine.fidelity(&self.params(mu, p))
    }

    /// `(1 − F) − p`; negative inside the effectiveness region.
    pub fn excess(&self, mu: f64, p: f64) -> f64 {
        self.engine.failure_excess(&self.params(mu, p))
    }

    pub fn is_effective(&self, mu: f64, p: f64) -> bool {
        self.excess(mu, p) < 0.0
    }

    /// Largest `p` below which encoding is effective at memory `mu`, or 0.
    pub fn p_threshold_at_mu(&self, mu: f64) -> f64 {
        let scan = log_grid(PRESCAN_P_MIN, 1.0, PRESCAN_POINTS + 1);
        boundary(&scan[..PRESCAN_POINTS], 1.0, |p| self.excess(mu, p))
    }

    /// Largest `μ` for which encoding is effective at error probability `p`, or 0.
    pub fn mu_threshold_at_p(&self, p: f64) -> f64 {
        let scan: Vec<f64> = (0..PRESCAN_POINTS)
            .map(|k| k as f64 / PRESCAN_POINTS as f64)
            .collect();
        boundary(&scan, 1.0, |mu| self.excess(mu, p))
    }

    fn curve(&self, abscissa: Abscissa, samples: Vec<(f64, f64)>) -> ThresholdCurve {
        let monotonicity_flags = match abscissa {
            Abscissa::P => samples
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[1].1 > w[0].1 + BISECTION_TOL)
                .map(|(i, _)| i)
                .collect(),
            Abscissa::Mu => Vec::new(),
        };
        ThresholdCurve {
            code: self.engine.code().to_string(),
            regime: if self.alphas.is_symmetric() {
                Regime::Symmetric
            } else {
                Regime::Asymmetric
            },
            alphas: self.alphas,
            abscissa,
            samples,
            bisection_tol: BISECTION_TOL,
            prescan_points: PRESCAN_POINTS,
            monotonicity_flags,
        }
    }

    /// `μ_threshold(p)` over the grid, evaluated in parallel.
    pub fn mu_threshold_curve(&self, p_grid: &[f64]) -> ThresholdCurve {
        let samples = p_grid
            .par_iter()
            .map(|&p| (p, self.mu_threshold_at_p(p)))
            .collect();
        self.curve(Abscissa::P, samples)
    }

    /// `p_threshold(μ)` over the grid, evaluated in parallel.
    pub fn p_threshold_curve(&self, mu_grid: &[f64]) -> ThresholdCurve {
        let samples = mu_grid
            .par_iter()
            .map(|&mu| (mu, self.p_threshold_at_mu(mu)))
            .collect();
        self.curve(Abscissa::Mu, samples)
    }

    /// Rows `(μ, F)` at fixed `p`.
    pub fn fidelity_sweep(&self, p: f64, mu_grid: &[f64]) -> Vec<(f64, f64)> {
        mu_grid
            .par_iter()
            .map(|&mu| (mu, self.fidelity(mu, p)))
            .collect()
    }
}

/// Locates the outermost effective-to-ineffective transition of `g` along an
/// increasing scan, then bisects it. `end` closes the last scan interval.
fn boundary<F: Fn(f64) -> f64>(scan: &[f64], end: f64, g: F) -> f64 {
    let values: Vec<f64> = scan.iter().map(|&x| g(x)).collect();
    let last_effective = match values.iter().rposition(|&v| v < 0.0) {
        Some(i) => i,
        None => return 0.0,
    };
    let mut lo = scan[last_effective];
    let mut hi = scan.get(last_effective + 1).copied().unwrap_or(end);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

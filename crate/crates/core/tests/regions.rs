use qecmem_core::threshold::{default_p_grid, linear_grid, log_grid};
use qecmem_core::{Alphas, ChannelParams, CodeName, FidelityEngine, SuccessRule, ThresholdSweeper};

fn sweeper(name: CodeName, alphas: Alphas) -> ThresholdSweeper {
    ThresholdSweeper::for_code(name, alphas).unwrap()
}

#[test]
fn effectiveness_regions_are_nested() {
    let five = sweeper(CodeName::FiveQubit, Alphas::SYMMETRIC);
    let set1 = sweeper(CodeName::SevenQubitSet1, Alphas::SYMMETRIC);
    let set2 = sweeper(CodeName::SevenQubitSet2, Alphas::SYMMETRIC);
    let mut counts = [0usize; 3];
    for mu in linear_grid(0.0, 1.0, 41) {
        for p in log_grid(1e-4, 0.5, 41) {
            let flags = [
                set1.is_effective(mu, p),
                set2.is_effective(mu, p),
                five.is_effective(mu, p),
            ];
            assert!(!flags[0] || flags[1], "set1 without set2 at ({mu}, {p})");
            assert!(!flags[1] || flags[2], "set2 without five at ({mu}, {p})");
            for (c, f) in counts.iter_mut().zip(flags) {
                *c += f as usize;
            }
        }
    }
    assert!(counts[0] < counts[1] && counts[1] < counts[2], "{counts:?}");
}

#[test]
fn bias_enlarges_the_second_set_region() {
    let grid = default_p_grid();
    let sym = sweeper(CodeName::SevenQubitSet2, Alphas::SYMMETRIC).mu_threshold_curve(&grid);
    let biased =
        sweeper(CodeName::SevenQubitSet2, Alphas::DEPHASING_BIASED).mu_threshold_curve(&grid);
    for (s, b) in sym.samples.iter().zip(&biased.samples) {
        assert!(b.1 >= s.1, "p = {}: {} < {}", s.0, b.1, s.1);
    }
    assert!(biased.max_threshold() > sym.max_threshold());
}

#[test]
fn reported_thresholds_sit_on_the_boundary() {
    for name in CodeName::ALL {
        let s = sweeper(name, Alphas::SYMMETRIC);
        for (p, mu) in s.mu_threshold_curve(&log_grid(1e-3, 0.05, 9)).samples {
            if mu > 0.0 && mu < 1.0 {
                assert!(s.excess(mu, p).abs() <= 1e-7, "{name} p = {p}");
            }
        }
        for (mu, p) in s.p_threshold_curve(&linear_grid(0.0, 0.15, 7)).samples {
            if p > 0.0 {
                assert!(s.excess(mu, p).abs() <= 1e-7, "{name} mu = {mu}");
                assert!(!s.is_effective(mu, (p + 1e-6).min(1.0)));
            }
        }
    }
}

#[test]
fn threshold_curves_decrease_in_p() {
    // Recorded rather than required by the curve type; it does hold here.
    for name in CodeName::ALL {
        let curve = sweeper(name, Alphas::SYMMETRIC).mu_threshold_curve(&default_p_grid());
        assert!(
            curve.monotonicity_flags.is_empty(),
            "{name}: {:?}",
            curve.monotonicity_flags
        );
    }
}

#[test]
fn sweep_at_zero_memory_is_the_memoryless_value() {
    let s = sweeper(CodeName::FiveQubit, Alphas::SYMMETRIC);
    let engine =
        FidelityEngine::for_code(CodeName::FiveQubit, SuccessRule::DesignatedCorrection).unwrap();
    let rows = s.fidelity_sweep(0.04, &linear_grid(0.0, 0.33, 12));
    let at_zero = engine.fidelity(&ChannelParams::symmetric(0.04, 0.0).unwrap());
    assert_eq!(rows[0], (0.0, at_zero));
    let poly = |p: f64| 4.0 * p.powi(5) - 15.0 * p.powi(4) + 20.0 * p.powi(3) - 10.0 * p * p + 1.0;
    assert!((at_zero - poly(0.04)).abs() <= 1e-12);
    assert!(rows.windows(2).all(|w| w[1].1 <= w[0].1));
}

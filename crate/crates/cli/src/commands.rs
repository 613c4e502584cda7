use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use qecmem_core::threshold::{default_p_grid, linear_grid, log_grid, ThresholdCurve};
use qecmem_core::verify::{self, CheckOutcome};
use qecmem_core::{
    build_code, Alphas, ChannelParams, CodeName, FidelityEngine, SuccessRule, ThresholdSweeper,
};

use crate::args::{
    Axis, DistributionArgs, DumpCodeArgs, FidelityArgs, FiguresArgs, Spacing, ThresholdArgs,
    VerifyArgs,
};
use crate::error::CliError;
use crate::table::{number, Table};

/// Largest tolerated gap between the engine and a closed form.
pub const CROSS_CHECK_TOL: f64 = 1e-12;

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn params(p: f64, mu: f64, alphas: Alphas) -> Result<ChannelParams, CliError> {
    ChannelParams::new(p, mu, alphas).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn fidelity(args: &FidelityArgs) -> Result<(), CliError> {
    let params = params(args.p, args.mu, args.alphas.resolve()?)?;
    let rule = SuccessRule::from(args.rule);
    let report = FidelityEngine::for_code(args.code, rule)?.report(&params);
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    // The closed forms describe the designated-correction rule only.
    if let (SuccessRule::DesignatedCorrection, Some(reference)) =
        (rule, report.fidelity_closed_form)
    {
        let diff = (report.fidelity_exact - reference).abs();
        if diff > CROSS_CHECK_TOL {
            return Err(CliError::CrossCheck {
                diff,
                limit: CROSS_CHECK_TOL,
            });
        }
    }
    Ok(())
}

fn run_group(group: u8) -> qecmem_core::Result<Vec<CheckOutcome>> {
    let mut out = match group {
        1 => verify::oracle_equivalence()?,
        2 => verify::memoryless_pins()?,
        3 => verify::thresholds()?,
        4 => verify::set_difference()?,
        5 => verify::five_qubit_invariance()?,
        6 => {
            let mut v = verify::kl_suite()?;
            v.extend(verify::structural_extras()?);
            v
        }
        7 => verify::golden_syndromes()?,
        8 => verify::structural_counts()?,
        _ => verify::orderings()?,
    };
    out.retain(|o| o.group == group);
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let outcomes = match args.selection.group {
        Some(g) => run_group(g)?,
        None => verify::run_all()?,
    };
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let mut stdout = std::io::stdout().lock();
    if args.json {
        serde_json::to_writer_pretty(&mut stdout, &outcomes)?;
        writeln!(stdout)?;
    } else {
        for o in &outcomes {
            writeln!(
                stdout,
                "{} [{}] {}: {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.group,
                o.name,
                o.detail
            )?;
        }
        writeln!(
            stdout,
            "{} of {} checks passed",
            outcomes.len() - failed,
            outcomes.len()
        )?;
    }
    if failed > 0 {
        return Err(CliError::Verification {
            failed,
            total: outcomes.len(),
        });
    }
    Ok(())
}

fn grid(args: &ThresholdArgs) -> Result<Vec<f64>, CliError> {
    let (from, to, points, spacing) = match args.axis {
        Axis::P => (1e-4, 0.2, 200, Spacing::Log),
        Axis::Mu => (0.0, 1.0, 101, Spacing::Linear),
    };
    let from = args.from.unwrap_or(from);
    let to = args.to.unwrap_or(to);
    let points = args.points.unwrap_or(points);
    let spacing = args.spacing.unwrap_or(spacing);
    if points < 2 || from >= to {
        return Err(CliError::Usage(
            "the grid needs --from < --to and at least 2 points".into(),
        ));
    }
    match spacing {
        Spacing::Linear => Ok(linear_grid(from, to, points)),
        Spacing::Log if from > 0.0 => Ok(log_grid(from, to, points)),
        Spacing::Log => Err(CliError::Usage("a log grid needs --from > 0".into())),
    }
}

fn curve_columns(curve: &ThresholdCurve) -> [&'static str; 2] {
    match curve.abscissa {
        qecmem_core::threshold::Abscissa::P => ["p", "mu_threshold"],
        qecmem_core::threshold::Abscissa::Mu => ["mu", "p_threshold"],
    }
}

pub fn threshold(args: &ThresholdArgs) -> Result<(), CliError> {
    let sweeper = ThresholdSweeper::for_code(args.code, args.alphas.resolve()?)?;
    let grid = grid(args)?;
    let curve = match args.axis {
        Axis::P => sweeper.mu_threshold_curve(&grid),
        Axis::Mu => sweeper.p_threshold_curve(&grid),
    };
    let mut table = Table::new(&curve_columns(&curve));
    for &(x, t) in &curve.samples {
        table.row(&[number(x), number(t)]);
    }
    emit(args.out.as_deref(), &table.into_string())
}

pub fn dump_code(args: &DumpCodeArgs) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&build_code(args.code)?.export())?;
    text.push('\n');
    emit(args.out.as_deref(), &text)
}

pub fn distribution(args: &DistributionArgs) -> Result<(), CliError> {
    let params = params(args.p, args.mu, args.alphas.resolve()?)?;
    let mut table = Table::new(&["pauli", "probability"]);
    for (e, w) in params.enumerate_distribution(args.n as usize)? {
        table.row(&[e.to_string(), number(w)]);
    }
    emit(args.out.as_deref(), &table.into_string())
}

#[derive(Debug, Serialize)]
struct FigureEntry {
    figure: u8,
    file: String,
    title: String,
    columns: Vec<&'static str>,
    series: Vec<String>,
}

#[derive(Debug, Serialize)]
struct Manifest {
    schema: u32,
    figures: Vec<FigureEntry>,
}

/// Operating points of the fidelity-versus-memory plots.
const SWEEP_P_VALUES: [(f64, &str); 3] = [
    (4.33e-2, "p=4.33e-2"),
    (4e-2, "p=4e-2"),
    (3.67e-2, "p=3.67e-2"),
];
const SWEEP_POINTS: usize = 200;

fn threshold_figure(curves: &[(String, ThresholdCurve)]) -> String {
    let mut table = Table::new(&["series", "p", "mu_threshold"]);
    for (label, curve) in curves {
        for &(p, mu) in &curve.samples {
            table.row(&[label.clone(), number(p), number(mu)]);
        }
    }
    table.into_string()
}

/// A labelled list of `(μ, F)` rows.
type Series = (String, Vec<(f64, f64)>);

fn sweep_figure(series: &[Series]) -> String {
    let mut table = Table::new(&["series", "mu", "fidelity"]);
    for (label, rows) in series {
        for &(mu, f) in rows {
            table.row(&[label.clone(), number(mu), number(f)]);
        }
    }
    table.into_string()
}

fn sweeps_at_three_p(code: CodeName, mu_max: f64) -> Result<Vec<Series>, CliError> {
    let sweeper = ThresholdSweeper::for_code(code, Alphas::SYMMETRIC)?;
    let mu_grid = linear_grid(0.0, mu_max, SWEEP_POINTS);
    Ok(SWEEP_P_VALUES
        .iter()
        .map(|&(p, label)| (label.to_string(), sweeper.fidelity_sweep(p, &mu_grid)))
        .collect())
}

fn labels<T>(series: &[(String, T)]) -> Vec<String> {
    series.iter().map(|s| s.0.clone()).collect()
}

fn curves(codes: &[CodeName], alphas: Alphas) -> Result<Vec<(String, ThresholdCurve)>, CliError> {
    let grid = default_p_grid();
    codes
        .iter()
        .map(|&c| {
            Ok((
                c.to_string(),
                ThresholdSweeper::for_code(c, alphas)?.mu_threshold_curve(&grid),
            ))
        })
        .collect()
}

pub fn figures(args: &FiguresArgs) -> Result<(), CliError> {
    fs::create_dir_all(&args.out)?;
    let sym = Alphas::SYMMETRIC;
    let biased = Alphas::DEPHASING_BIASED;
    let mut entries = Vec::new();
    let mut write = |figure: u8,
                     file: &str,
                     title: &str,
                     columns: [&'static str; 3],
                     series: Vec<String>,
                     body: String| {
        fs::write(args.out.join(file), body)?;
        entries.push(FigureEntry {
            figure,
            file: file.into(),
            title: title.into(),
            columns: columns.to_vec(),
            series,
        });
        Ok::<(), CliError>(())
    };
    let threshold_columns = ["series", "p", "mu_threshold"];
    let sweep_columns = ["series", "mu", "fidelity"];

    let c = curves(&[CodeName::FiveQubit], sym)?;
    write(
        1,
        "fig1_five_qubit_threshold.csv",
        "five-qubit threshold curve, symmetric noise",
        threshold_columns,
        labels(&c),
        threshold_figure(&c),
    )?;

    let s = sweeps_at_three_p(CodeName::FiveQubit, 0.33)?;
    write(
        2,
        "fig2_five_qubit_fidelity.csv",
        "five-qubit fidelity versus memory",
        sweep_columns,
        labels(&s),
        sweep_figure(&s),
    )?;

    let s = sweeps_at_three_p(CodeName::SevenQubitSet1, 0.199)?;
    write(
        3,
        "fig3_seven_qubit_set1_fidelity.csv",
        "seven-qubit fidelity versus memory, first correctable set",
        sweep_columns,
        labels(&s),
        sweep_figure(&s),
    )?;

    let c = curves(
        &[
            CodeName::FiveQubit,
            CodeName::SevenQubitSet2,
            CodeName::SevenQubitSet1,
        ],
        sym,
    )?;
    write(
        4,
        "fig4_symmetric_thresholds.csv",
        "threshold curves, symmetric noise",
        threshold_columns,
        labels(&c),
        threshold_figure(&c),
    )?;

    let c = curves(&[CodeName::SevenQubitSet2, CodeName::FiveQubit], biased)?;
    write(
        5,
        "fig5_asymmetric_thresholds.csv",
        "threshold curves, weights (5/31, 1/31, 25/31)",
        threshold_columns,
        labels(&c),
        threshold_figure(&c),
    )?;

    let mu_grid = linear_grid(0.0, 0.199, SWEEP_POINTS);
    let p = 4e-2;
    let s = vec![
        (
            "seven_qubit_set2_asymmetric".to_string(),
            ThresholdSweeper::for_code(CodeName::SevenQubitSet2, biased)?
                .fidelity_sweep(p, &mu_grid),
        ),
        (
            "five_qubit".to_string(),
            ThresholdSweeper::for_code(CodeName::FiveQubit, sym)?.fidelity_sweep(p, &mu_grid),
        ),
        (
            "seven_qubit_set2_symmetric".to_string(),
            ThresholdSweeper::for_code(CodeName::SevenQubitSet2, sym)?.fidelity_sweep(p, &mu_grid),
        ),
    ];
    write(
        6,
        "fig6_asymmetry_comparison.csv",
        "fidelity versus memory at p = 0.04, symmetric and biased noise",
        sweep_columns,
        labels(&s),
        sweep_figure(&s),
    )?;

    let manifest = Manifest {
        schema: 1,
        figures: entries,
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(args.out.join("manifest.json"), text)?;
    Ok(())
}

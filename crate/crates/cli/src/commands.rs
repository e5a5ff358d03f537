//! The four subcommands. Each writes its table or report to `out`.

use std::io::Write;

use kgws::oracle::{
    pair_levels, residual_at_energy, shoot_levels, GridConfig, OracleReport, ResidualGrid,
};
use kgws::problem::ParamsFile;
use kgws::spectra::{evaluate_levels, schrodinger_state, GateDefect};
use kgws::wavefn::{build_wavefunction, sample, write_samples_csv, NormKind, WavefunctionSample};
use kgws::{BoundState, Branch, PotentialParams, Variant, C64};
use log::{debug, info, warn};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{Format, ScanArgs, SpectrumArgs, SweepAxis, VerifyArgs, WavefunctionArgs};
use crate::config::{echo, problem_file, ProblemFile};
use crate::error::{CliError, Result};
use crate::output::{csv_comment, csv_header, float, write_json};
use crate::presets::{default_range, preset, DEFAULT_STEPS};

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {jobs} worker threads: {e}")))
}

// ---------------------------------------------------------------- spectrum

#[derive(Debug, Serialize)]
struct SpectrumConfig {
    command: &'static str,
    problem: ParamsFile,
    nmax: usize,
    all_candidates: bool,
    nonrelativistic: bool,
}

#[derive(Debug, Serialize)]
struct SpectrumPayload<'a> {
    levels: &'a [BoundState],
    gate_defects: &'a [GateDefect],
}

pub const SPECTRUM_COLUMNS: &str = "n,branch,E_re,E_im,xi,b_signed,eps,physical,normalizable";

fn spectrum_row(st: &BoundState) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        st.n,
        st.branch.symbol(),
        float(st.energy.re),
        float(st.energy.im),
        float(st.xi.re),
        float(st.b_signed.re),
        float(st.eps.re),
        st.physical,
        st.normalizable
    )
}

pub fn spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<()> {
    let params = problem_file(&args.problem)?.resolve()?;
    let config = SpectrumConfig {
        command: "spectrum",
        problem: echo(&params),
        nmax: args.nmax,
        all_candidates: args.all_candidates,
        nonrelativistic: args.nonrelativistic,
    };
    let (mut levels, defects) = if args.nonrelativistic {
        let levels = (0..=args.nmax)
            .map(|n| schrodinger_state(&params, n))
            .collect::<kgws::Result<Vec<_>>>()?;
        (levels, Vec::new())
    } else {
        let spec = evaluate_levels(&params, args.nmax)?;
        (spec.levels, spec.defects)
    };
    if !args.all_candidates {
        levels.retain(|l| l.physical);
    }
    info!("{} levels, {} gate defects", levels.len(), defects.len());
    match args.output.format {
        Format::Json => write_json(
            out,
            &config,
            SpectrumPayload {
                levels: &levels,
                gate_defects: &defects,
            },
        ),
        Format::Csv => {
            csv_header(out, &config)?;
            if !defects.is_empty() {
                csv_comment(out, "gate_defects", serde_json::to_string(&defects)?)?;
            }
            writeln!(out, "{SPECTRUM_COLUMNS}")?;
            for st in &levels {
                writeln!(out, "{}", spectrum_row(st))?;
            }
            Ok(())
        }
    }
}

// ------------------------------------------------------------------ verify

#[derive(Debug, Serialize)]
struct VerifyConfig {
    command: &'static str,
    problem: ParamsFile,
    nmax: usize,
    grid: Option<GridConfig>,
    match_tol: f64,
    residual_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    perturb_closed_form: Option<f64>,
}

/// Residual of one emitted level.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualRow {
    pub n: usize,
    pub branch: Branch,
    #[serde(rename = "E")]
    pub energy: C64,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
struct VerifyPayload {
    shooting: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shooting_skipped: Option<String>,
    residuals: Vec<ResidualRow>,
    passed: bool,
}

fn shifted(st: &BoundState, delta: f64) -> BoundState {
    BoundState {
        energy: st.energy + delta,
        ..*st
    }
}

fn shooting_report(
    params: &PotentialParams,
    grid: &GridConfig,
    emitted: &[BoundState],
    delta: f64,
    tol: f64,
) -> Result<OracleReport> {
    let found = shoot_levels(params, grid)?;
    let (normalizable, other): (Vec<BoundState>, Vec<BoundState>) = emitted
        .iter()
        .map(|s| shifted(s, delta))
        .partition(|s| s.normalizable);
    let mut report = pair_levels(&found, &normalizable, tol, grid.tol_e);
    report.non_normalizable = other
        .iter()
        .map(|s| kgws::oracle::ClosedLevel {
            n: s.n,
            branch: s.branch,
            energy: s.energy.re,
        })
        .collect();
    Ok(report)
}

fn grid_for(args: &VerifyArgs, params: &PotentialParams) -> Result<GridConfig> {
    let mut grid = GridConfig::for_params(params);
    if let Some(points) = args.grid_points {
        grid.n_points = points;
    }
    if let Some(l) = args.l {
        grid.l = l;
    }
    grid.validate()?;
    Ok(grid)
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let params = problem_file(&args.problem)?.resolve()?;
    let delta = args.perturb.unwrap_or(0.0);
    let shoot = params.variant() == Variant::RealHermitian && params.q() > 0.0;
    let grid = if shoot {
        Some(grid_for(args, &params)?)
    } else {
        None
    };
    let config = VerifyConfig {
        command: "verify",
        problem: echo(&params),
        nmax: args.nmax,
        grid,
        match_tol: args.tol,
        residual_tol: args.residual_tol,
        perturb_closed_form: args.perturb,
    };
    let emitted: Vec<BoundState> = evaluate_levels(&params, args.nmax)?
        .emitted()
        .copied()
        .collect();
    let pool = thread_pool(args.jobs)?;
    let shooting = match &grid {
        Some(g) => {
            let every: Vec<BoundState> = evaluate_levels(&params, usize::MAX >> 1)?
                .emitted()
                .copied()
                .collect();
            Some(pool.install(|| shooting_report(&params, g, &every, delta, args.tol))?)
        }
        None => None,
    };
    let shooting_skipped =
        (!shoot).then(|| "shooting needs the real variant with q > 0".to_string());
    let rgrid = ResidualGrid::default();
    let residuals = pool.install(|| {
        emitted
            .par_iter()
            .map(|st| {
                let wf = build_wavefunction(&params, st)?;
                let residual = residual_at_energy(&params, st, &wf, st.energy + delta, &rgrid)?;
                Ok(ResidualRow {
                    n: st.n,
                    branch: st.branch,
                    energy: st.energy + delta,
                    residual,
                    passed: residual < args.residual_tol,
                })
            })
            .collect::<kgws::Result<Vec<_>>>()
    })?;
    let shooting_ok = shooting.as_ref().is_none_or(OracleReport::all_matched);
    let failed_residuals = residuals.iter().filter(|r| !r.passed).count();
    let passed = shooting_ok && failed_residuals == 0;
    debug!("shooting ok: {shooting_ok}, failed residuals: {failed_residuals}");
    let summary = match &shooting {
        Some(r) => format!(
            "{} unmatched closed-form, {} unmatched numeric, {failed_residuals} residual failures",
            r.unmatched_closed.len(),
            r.unmatched_numeric.len()
        ),
        None => format!("{failed_residuals} residual failures"),
    };
    write_json(
        out,
        &config,
        VerifyPayload {
            shooting,
            shooting_skipped,
            residuals,
            passed,
        },
    )?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Mismatch(summary))
    }
}

// -------------------------------------------------------------------- scan

#[derive(Debug, Serialize)]
struct ScanConfig {
    command: &'static str,
    preset: Option<String>,
    sweep: SweepAxis,
    from: f64,
    to: f64,
    steps: usize,
    nmax: usize,
    problem: ProblemFile,
}

/// One level at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub sweep_value: f64,
    pub n: usize,
    #[serde(rename = "E")]
    pub energy: C64,
    pub emitted: bool,
}

pub const SCAN_COLUMNS: &str = "sweep_value,n,E_re,E_im,emitted";

fn scan_point(
    base: &ProblemFile,
    axis: SweepAxis,
    value: f64,
    nmax: usize,
) -> Result<Vec<ScanRow>> {
    let mut problem = base.clone();
    match axis {
        SweepAxis::V0 => problem.v0 = Some(value),
        SweepAxis::Alpha => {
            problem.alpha = Some(value);
            problem.a = None;
        }
    }
    let params = problem.resolve()?;
    match evaluate_levels(&params, nmax) {
        Ok(spec) => Ok(spec
            .levels
            .iter()
            .filter(|l| l.energy.re.is_finite() && l.energy.im.is_finite())
            .map(|l| ScanRow {
                sweep_value: value,
                n: l.n,
                energy: l.energy,
                emitted: l.physical,
            })
            .collect()),
        Err(e @ kgws::Error::ConditionViolated { .. }) => {
            warn!("{axis:?} = {value}: {e}");
            Ok(Vec::new())
        }
        Err(e) => Err(e.into()),
    }
}

pub fn scan(args: &ScanArgs, out: &mut dyn Write) -> Result<()> {
    let preset = args.preset.as_deref().map(preset).transpose()?;
    let overrides = problem_file(&args.problem)?;
    let base = match &preset {
        Some(p) => p.problem.clone().overlay(&overrides),
        None => overrides,
    };
    let axis = args
        .sweep
        .or(preset.as_ref().map(|p| p.axis))
        .ok_or_else(|| CliError::Config("--sweep V0|alpha is required without --preset".into()))?;
    let (lo, hi) = default_range(axis);
    let (from, to) = (args.from.unwrap_or(lo), args.to.unwrap_or(hi));
    let steps = args.steps.unwrap_or(DEFAULT_STEPS);
    if steps == 0 || !from.is_finite() || !to.is_finite() {
        return Err(CliError::Config(format!(
            "sweep needs finite bounds and steps >= 1, got [{from}, {to}] in {steps} steps"
        )));
    }
    let nmax = args.nmax.or(preset.as_ref().map(|p| p.nmax)).unwrap_or(0);
    let config = ScanConfig {
        command: "scan",
        preset: preset.as_ref().map(|p| p.name.clone()),
        sweep: axis,
        from,
        to,
        steps,
        nmax,
        problem: base.clone(),
    };
    let values: Vec<f64> = (0..=steps)
        .map(|i| from + (to - from) * i as f64 / steps as f64)
        .collect();
    let pool = thread_pool(args.jobs)?;
    let rows: Vec<ScanRow> = pool
        .install(|| {
            values
                .par_iter()
                .map(|&v| scan_point(&base, axis, v, nmax))
                .collect::<Result<Vec<_>>>()
        })?
        .into_iter()
        .flatten()
        .collect();
    match args.output.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Rows<'a> {
                rows: &'a [ScanRow],
            }
            write_json(out, &config, Rows { rows: &rows })
        }
        Format::Csv => {
            csv_header(out, &config)?;
            writeln!(out, "{SCAN_COLUMNS}")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    float(r.sweep_value),
                    r.n,
                    float(r.energy.re),
                    float(r.energy.im),
                    r.emitted
                )?;
            }
            Ok(())
        }
    }
}

// ------------------------------------------------------------ wavefunction

#[derive(Debug, Serialize)]
struct WavefunctionConfig {
    command: &'static str,
    problem: ParamsFile,
    n: usize,
    branch: Branch,
    x_from: f64,
    x_to: f64,
    points: usize,
}

#[derive(Debug, Serialize)]
struct WavefunctionPayload<'a> {
    #[serde(rename = "E")]
    energy: C64,
    norm: C64,
    norm_kind: NormKind,
    residual: f64,
    samples: &'a [WavefunctionSample],
}

fn parse_branch(s: &str) -> Result<Branch> {
    match s {
        "+" | "plus" => Ok(Branch::Plus),
        "-" | "minus" => Ok(Branch::Minus),
        other => Err(CliError::Config(format!(
            "branch must be + or -, got '{other}'"
        ))),
    }
}

pub fn wavefunction(args: &WavefunctionArgs, out: &mut dyn Write) -> Result<()> {
    let params = problem_file(&args.problem)?.resolve()?;
    let branch = args.branch.as_deref().map(parse_branch).transpose()?;
    let spec = evaluate_levels(&params, args.n)?;
    let state = spec
        .emitted()
        .find(|s| s.n == args.n && branch.is_none_or(|b| b == s.branch))
        .copied()
        .ok_or_else(|| {
            CliError::Config(format!(
                "level n = {} is not emitted for this problem",
                args.n
            ))
        })?;
    let wf = build_wavefunction(&params, &state)?;
    let residual = kgws::oracle::residual_check(&params, &state, &wf, &ResidualGrid::default())?;
    let half = 10.0 / params.alpha();
    let (x_from, x_to) = (args.x_from.unwrap_or(-half), args.x_to.unwrap_or(half));
    if args.points < 2 || !(x_from < x_to) {
        return Err(CliError::Config(format!(
            "need x-from < x-to and at least 2 points, got [{x_from}, {x_to}] with {}",
            args.points
        )));
    }
    let samples = sample(&params, &wf, x_from, x_to, args.points);
    let config = WavefunctionConfig {
        command: "wavefunction",
        problem: echo(&params),
        n: args.n,
        branch: state.branch,
        x_from,
        x_to,
        points: args.points,
    };
    match args.output.format {
        Format::Json => write_json(
            out,
            &config,
            WavefunctionPayload {
                energy: state.energy,
                norm: wf.norm,
                norm_kind: wf.norm_kind,
                residual,
                samples: &samples,
            },
        ),
        Format::Csv => {
            csv_header(out, &config)?;
            csv_comment(
                out,
                "E",
                format!("{},{}", float(state.energy.re), float(state.energy.im)),
            )?;
            csv_comment(
                out,
                "norm",
                format!("{},{}", float(wf.norm.re), float(wf.norm.im)),
            )?;
            csv_comment(out, "norm_kind", format!("{:?}", wf.norm_kind))?;
            csv_comment(out, "residual", float(residual))?;
            let mut w = out;
            write_samples_csv(&mut w, &samples)?;
            Ok(())
        }
    }
}

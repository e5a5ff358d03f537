//! Named sweep configurations `fig1a` to `fig4b`.

use kgws::Variant;

use crate::args::SweepAxis;
use crate::config::ProblemFile;
use crate::error::{CliError, Result};

pub const V0_RANGE: (f64, f64) = (0.1, 10.0);
pub const ALPHA_RANGE: (f64, f64) = (0.1, 5.0);
pub const DEFAULT_STEPS: usize = 100;

/// A named sweep: fixed problem fields, sweep axis and level range.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    pub problem: ProblemFile,
    pub axis: SweepAxis,
    pub nmax: usize,
}

fn fixed(
    variant: Variant,
    q: f64,
    v0: Option<f64>,
    alpha: Option<f64>,
    a: Option<f64>,
) -> ProblemFile {
    ProblemFile {
        v0,
        q: Some(q),
        a,
        alpha,
        m: Some(1.0),
        r0: None,
        variant: Some(variant),
    }
}

/// Looks up a preset by name.
///
/// Ground-state presets (`fig1*`, `fig3*`) sweep `V0`; the three-level
/// presets (`fig2*`, `fig4*`) sweep `alpha`. Masses are `m = 1`.
pub fn preset(name: &str) -> Result<Preset> {
    use Variant::{PseudoHermitian as Pseudo, PtSymmetric as Pt};
    let (problem, axis, nmax) = match name {
        "fig1a" => (fixed(Pt, 1.0, None, Some(1.0), None), SweepAxis::V0, 0),
        "fig1b" => (fixed(Pt, -1.0, None, Some(1.0), None), SweepAxis::V0, 0),
        "fig2a" => (fixed(Pt, 1.0, Some(6.0), None, None), SweepAxis::Alpha, 2),
        "fig2b" => (fixed(Pt, -1.0, Some(2.0), None, None), SweepAxis::Alpha, 2),
        "fig3a" => (fixed(Pseudo, 1.0, None, None, Some(10.0)), SweepAxis::V0, 0),
        "fig3b" => (fixed(Pseudo, -1.0, None, Some(1.0), None), SweepAxis::V0, 0),
        "fig4a" => (
            fixed(Pseudo, 1.0, Some(2.0), None, None),
            SweepAxis::Alpha,
            2,
        ),
        "fig4b" => (
            fixed(Pseudo, -1.0, Some(4.0), None, None),
            SweepAxis::Alpha,
            2,
        ),
        other => {
            return Err(CliError::Config(format!(
                "unknown preset '{other}' (expected fig1a..fig4b)"
            )))
        }
    };
    Ok(Preset {
        name: name.to_string(),
        problem,
        axis,
        nmax,
    })
}

pub const PRESET_NAMES: [&str; 8] = [
    "fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b",
];

/// Default sweep range of an axis.
pub fn default_range(axis: SweepAxis) -> (f64, f64) {
    match axis {
        SweepAxis::V0 => V0_RANGE,
        SweepAxis::Alpha => ALPHA_RANGE,
    }
}

//! Independent numerical checks: Numerov shooting of the x-space equation for
//! the real variant, and finite-difference residuals of closed-form
//! eigenfunctions for every variant.

mod residual;
mod shooting;

pub use residual::{residual_at_energy, residual_check, schrodinger_check, ResidualGrid};
pub use shooting::{find_eigenvalues, mismatch};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{potential_value, PotentialParams, Variant};
use crate::spectra::{evaluate_levels, BoundState, Branch};

/// Relative tolerance for pairing numeric and closed-form levels.
pub const MATCH_REL_TOL: f64 = 1e-6;

/// Required smallness of `|V(±L) - V(±∞)|` relative to `|V0/q|`.
const BOUNDARY_DECAY: f64 = 1e-12;

/// Shooting grid and energy scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// Half-width of the x window around its center.
    pub l: f64,
    /// Odd number of grid points, at least 2001.
    pub n_points: usize,
    /// Matching abscissa, relative to the window center.
    pub match_x: f64,
    /// `(E_min, E_max, steps)` of the bracketing scan.
    pub e_scan: (f64, f64, usize),
    /// Absolute eigenvalue tolerance.
    pub tol_e: f64,
}

impl GridConfig {
    pub const MIN_POINTS: usize = 2001;

    /// Default grid for a real-variant problem: `L = 40/α`, 4001 points,
    /// scan over the window where both asymptotes decay.
    pub fn for_params(params: &PotentialParams) -> Self {
        let m = params.m();
        let far_left = -params.v_tilde();
        // both (E - V(-∞))² < m² and E² < m²
        let lo = (-m).max(far_left - m);
        let hi = m.min(far_left + m);
        let pad = 1e-9 * m;
        Self {
            l: 40.0 / params.alpha(),
            n_points: 4001,
            match_x: 0.0,
            e_scan: (lo + pad, hi - pad, 400),
            tol_e: 1e-10 * m,
        }
    }

    pub fn step(&self) -> f64 {
        2.0 * self.l / (self.n_points - 1) as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < Self::MIN_POINTS || self.n_points.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "grid needs an odd number of points >= {}, got {}",
                Self::MIN_POINTS,
                self.n_points
            )));
        }
        if !(self.l > 0.0 && self.match_x.abs() < self.l) {
            return Err(Error::InvalidParams(format!(
                "matching point {} must lie inside the half-width {}",
                self.match_x, self.l
            )));
        }
        let (lo, hi, steps) = self.e_scan;
        if !(lo < hi) || steps == 0 {
            return Err(Error::InvalidParams(format!(
                "empty energy scan [{lo}, {hi}]"
            )));
        }
        Ok(())
    }

    /// Widens `L` until the potential is within the boundary-decay tolerance
    /// of its asymptotes at both ends.
    pub fn enlarged_for_decay(mut self, params: &PotentialParams) -> Result<Self> {
        let scale = params.v_tilde().abs().max(f64::MIN_POSITIVE);
        let far_left = -params.v_tilde();
        for _ in 0..20 {
            let right = potential_value(params, self.l)?.norm();
            let left = (potential_value(params, -self.l)?.re - far_left).abs();
            if right.max(left) < BOUNDARY_DECAY * scale {
                return Ok(self);
            }
            self.l *= 1.5;
            self.n_points = 2 * ((self.n_points as f64 * 1.5) as usize / 2) + 1;
        }
        Err(Error::InvalidParams(
            "potential does not decay on the grid window".into(),
        ))
    }
}

/// One numerically found eigenvalue and its final mismatch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FoundLevel {
    #[serde(rename = "E")]
    pub energy: f64,
    pub residual: f64,
}

/// A closed-form level paired with a numeric one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub n: usize,
    pub branch: Branch,
    pub closed_form: f64,
    pub numeric: f64,
    pub rel_error: f64,
}

/// A closed-form level without a numeric partner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedLevel {
    pub n: usize,
    pub branch: Branch,
    #[serde(rename = "E")]
    pub energy: f64,
}

/// Outcome of a shooting run paired against closed-form levels.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OracleReport {
    pub found: Vec<FoundLevel>,
    pub matched: Vec<MatchedPair>,
    pub unmatched_closed: Vec<ClosedLevel>,
    pub unmatched_numeric: Vec<FoundLevel>,
    /// Physical closed-form levels left out of the pairing because their
    /// eigenfunction is not normalizable.
    pub non_normalizable: Vec<ClosedLevel>,
}

impl OracleReport {
    pub fn all_matched(&self) -> bool {
        self.unmatched_closed.is_empty() && self.unmatched_numeric.is_empty()
    }
}

fn closed_level(s: &BoundState) -> ClosedLevel {
    ClosedLevel {
        n: s.n,
        branch: s.branch,
        energy: s.energy.re,
    }
}

/// Pairs closed-form levels with numeric eigenvalues, nearest first, within
/// `rel_tol` relative to `max(|E|, floor)`.
pub fn pair_levels(
    found: &[FoundLevel],
    closed: &[BoundState],
    rel_tol: f64,
    floor: f64,
) -> OracleReport {
    let mut used = vec![false; found.len()];
    let mut report = OracleReport {
        found: found.to_vec(),
        ..OracleReport::default()
    };
    for st in closed {
        let e = st.energy.re;
        let best = found
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, f)| (i, (f.energy - e).abs() / e.abs().max(floor)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, rel)) if rel <= rel_tol => {
                used[i] = true;
                report.matched.push(MatchedPair {
                    n: st.n,
                    branch: st.branch,
                    closed_form: e,
                    numeric: found[i].energy,
                    rel_error: rel,
                });
            }
            _ => report.unmatched_closed.push(closed_level(st)),
        }
    }
    report.unmatched_numeric = found
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(f, _)| *f)
        .collect();
    report
}

/// `Q(E, x) = (E - V(x))² - m²` of the x-space equation.
pub fn kg_q(params: &PotentialParams, energy: f64, x: f64) -> f64 {
    match potential_value(params, x) {
        Ok(v) => {
            let d = energy - v.re;
            d * d - params.m() * params.m()
        }
        Err(_) => f64::NAN,
    }
}

/// Shoots the real-variant equation on the window centered at `R0` and
/// returns every eigenvalue in the scan, without pairing.
pub fn shoot_levels(params: &PotentialParams, grid: &GridConfig) -> Result<Vec<FoundLevel>> {
    if params.variant() != Variant::RealHermitian {
        return Err(Error::InvalidParams(
            "shooting is only defined for the real variant".into(),
        ));
    }
    if params.q() <= 0.0 {
        return Err(Error::InvalidParams(
            "shooting needs q > 0 (q < 0 puts a pole on the real axis)".into(),
        ));
    }
    let grid = grid.enlarged_for_decay(params)?;
    let r0 = params.r0();
    match find_eigenvalues(|e, r| kg_q(params, e, r - r0), r0, &grid) {
        Ok(found) => Ok(found),
        Err(Error::NoBracket { e_min, e_max }) => {
            log::debug!("no shooting bracket in [{e_min}, {e_max}]");
            Ok(Vec::new())
        }
        Err(e) => Err(e),
    }
}

/// Shoots the real-variant equation and pairs the roots with the physical,
/// normalizable closed-form levels; physical levels that are not
/// normalizable are listed separately.
pub fn shoot_real_eigenvalues(params: &PotentialParams, grid: &GridConfig) -> Result<OracleReport> {
    let found = shoot_levels(params, grid)?;
    let levels = evaluate_levels(params, usize::MAX >> 1)?;
    let (normalizable, other): (Vec<BoundState>, Vec<BoundState>) =
        levels.emitted().copied().partition(|s| s.normalizable);
    let mut report = pair_levels(&found, &normalizable, MATCH_REL_TOL, grid.tol_e);
    report.non_normalizable = other.iter().map(closed_level).collect();
    Ok(report)
}

//! Problem definition: parameters, potential variants, the x → s map and the
//! dimensionless Klein-Gordon quantities.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const I: C64 = C64::new(0.0, 1.0);

/// Relative size below which a potential denominator counts as a pole.
const POLE_TOL: f64 = 1e-12;

/// Parameter regime of the generalized Woods-Saxon potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// All parameters real.
    #[serde(rename = "real")]
    RealHermitian,
    /// α → iα.
    #[serde(rename = "pt")]
    PtSymmetric,
    /// V0 → iV0, q → iq.
    #[serde(rename = "nonpt")]
    NonPtNonHermitian,
    /// V0 → iV0, α → iα, q → iq.
    #[serde(rename = "pseudo")]
    PseudoHermitian,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::RealHermitian,
        Variant::PtSymmetric,
        Variant::NonPtNonHermitian,
        Variant::PseudoHermitian,
    ];

    /// Substitution applied to the real potential to obtain this variant.
    pub fn substitution(self) -> &'static str {
        match self {
            Variant::RealHermitian => "none",
            Variant::PtSymmetric => "alpha -> i*alpha",
            Variant::NonPtNonHermitian => "V0 -> i*V0, q -> i*q",
            Variant::PseudoHermitian => "V0 -> i*V0, alpha -> i*alpha, q -> i*q",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::RealHermitian => "real",
            Variant::PtSymmetric => "pt",
            Variant::NonPtNonHermitian => "nonpt",
            Variant::PseudoHermitian => "pseudo",
        }
    }

    fn complex_alpha(self) -> bool {
        matches!(self, Variant::PtSymmetric | Variant::PseudoHermitian)
    }

    fn complex_coupling(self) -> bool {
        matches!(self, Variant::NonPtNonHermitian | Variant::PseudoHermitian)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Variant::RealHermitian),
            "pt" => Ok(Variant::PtSymmetric),
            "nonpt" => Ok(Variant::NonPtNonHermitian),
            "pseudo" => Ok(Variant::PseudoHermitian),
            other => Err(Error::InvalidParams(format!("unknown variant '{other}'"))),
        }
    }
}

/// One problem instance. Immutable once built; `alpha` is always `1 / a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    v0: f64,
    q: f64,
    a: f64,
    alpha: f64,
    r0: f64,
    m: f64,
    variant: Variant,
}

impl PotentialParams {
    pub fn new(v0: f64, q: f64, a: f64, m: f64, variant: Variant) -> Result<Self> {
        if !(v0.is_finite() && q.is_finite() && a.is_finite() && m.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if a <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "diffuseness a must be > 0, got {a}"
            )));
        }
        if m <= 0.0 {
            return Err(Error::InvalidParams(format!("mass m must be > 0, got {m}")));
        }
        Ok(Self {
            v0,
            q,
            a,
            alpha: 1.0 / a,
            r0: 0.0,
            m,
            variant,
        })
    }

    /// Same as [`PotentialParams::new`] with the inverse diffuseness given instead of `a`.
    pub fn with_alpha(v0: f64, q: f64, alpha: f64, m: f64, variant: Variant) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParams(format!(
                "alpha must be > 0, got {alpha}"
            )));
        }
        Self::new(v0, q, 1.0 / alpha, m, variant)
    }

    pub fn with_r0(mut self, r0: f64) -> Result<Self> {
        if !r0.is_finite() {
            return Err(Error::InvalidParams("R0 must be finite".into()));
        }
        self.r0 = r0;
        Ok(self)
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn r0(&self) -> f64 {
        self.r0
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    /// Only s-waves are solved.
    pub fn l(&self) -> u32 {
        0
    }
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `V0 / q`, which is the same for every variant.
    pub fn v_tilde(&self) -> f64 {
        self.v0 / self.q
    }

    pub fn v0_eff(&self) -> C64 {
        if self.variant.complex_coupling() {
            I * self.v0
        } else {
            C64::from(self.v0)
        }
    }

    pub fn q_eff(&self) -> C64 {
        if self.variant.complex_coupling() {
            I * self.q
        } else {
            C64::from(self.q)
        }
    }

    pub fn alpha_eff(&self) -> C64 {
        if self.variant.complex_alpha() {
            I * self.alpha
        } else {
            C64::from(self.alpha)
        }
    }

    pub(crate) fn require_q_nonzero(&self) -> Result<()> {
        if self.q == 0.0 {
            Err(Error::InvalidParams(
                "q = 0 makes the closed-form spectra singular".into(),
            ))
        } else {
            Ok(())
        }
    }
}

/// `R0 = r0 A^{1/3}` for a nucleus of mass number `A`.
pub fn nuclear_radius(r0: f64, mass_number: f64) -> f64 {
    r0 * mass_number.cbrt()
}

/// Serialized problem definition shared by the CLI and test fixtures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsFile {
    #[serde(rename = "V0")]
    pub v0: f64,
    pub q: f64,
    pub a: f64,
    pub m: f64,
    #[serde(rename = "R0", default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<f64>,
    pub variant: Variant,
}

impl TryFrom<&ParamsFile> for PotentialParams {
    type Error = Error;

    fn try_from(file: &ParamsFile) -> Result<Self> {
        PotentialParams::new(file.v0, file.q, file.a, file.m, file.variant)?
            .with_r0(file.r0.unwrap_or(0.0))
    }
}

impl From<&PotentialParams> for ParamsFile {
    fn from(p: &PotentialParams) -> Self {
        ParamsFile {
            v0: p.v0,
            q: p.q,
            a: p.a,
            m: p.m,
            r0: Some(p.r0),
            variant: p.variant,
        }
    }
}

fn check_denominator(den: C64, scale: f64, x: f64) -> Result<()> {
    if den.norm() <= POLE_TOL * scale.max(1.0) || !den.is_finite() {
        Err(Error::pole(format!("x = {x}")))
    } else {
        Ok(())
    }
}

/// `V_q(x)` for the active variant, using each variant's explicit real form.
///
/// `x = r - R0`. Errors with [`Error::Pole`] where the denominator vanishes.
pub fn potential_value(params: &PotentialParams, x: f64) -> Result<C64> {
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!("x must be finite, got {x}")));
    }
    let (v0, q, ax) = (params.v0, params.q, params.alpha * x);
    match params.variant {
        Variant::RealHermitian => {
            // -V0 e^{-ax}/(1 + q e^{-ax}) = -V0/(e^{ax} + q)
            let den = if ax >= 0.0 {
                1.0 + q * (-ax).exp()
            } else {
                ax.exp() + q
            };
            if den.abs() <= POLE_TOL * (1.0 + q.abs()) {
                let location = if q < 0.0 { params.a * (-q).ln() } else { x };
                return Err(Error::pole(format!("x = {location}")));
            }
            let value = if ax >= 0.0 {
                -v0 * (-ax).exp() / den
            } else {
                -v0 / den
            };
            Ok(C64::from(value))
        }
        Variant::PtSymmetric => {
            let (s, c) = ax.sin_cos();
            let den = q * q + 2.0 * q * c + 1.0;
            check_denominator(C64::from(den), 1.0 + q * q, x)?;
            Ok(-v0 * C64::new(q + c, -s) / den)
        }
        Variant::NonPtNonHermitian => {
            // -V0 (q e^{-2ax} + i e^{-ax}) / (1 + q^2 e^{-2ax})
            let value = if ax >= 0.0 {
                let e = (-ax).exp();
                -v0 * C64::new(q * e * e, e) / (1.0 + q * q * e * e)
            } else {
                let e = ax.exp();
                -v0 * C64::new(q, e) / (e * e + q * q)
            };
            if !value.is_finite() {
                return Err(Error::pole(format!("x = {x}")));
            }
            Ok(value)
        }
        Variant::PseudoHermitian => {
            let (s, c) = ax.sin_cos();
            let den = q * q + 2.0 * q * s + 1.0;
            check_denominator(C64::from(den), 1.0 + q * q, x)?;
            Ok(-v0 * C64::new(q + s, c) / den)
        }
    }
}

/// `-V0' e' / (1 + q' e')` with `e' = exp(-α' x)` and the complexified
/// parameters substituted literally; used to cross-check [`potential_value`].
pub fn potential_by_substitution(params: &PotentialParams, x: f64) -> Result<C64> {
    let e = (-params.alpha_eff() * x).exp();
    let den = 1.0 + params.q_eff() * e;
    check_denominator(den, 1.0 + (params.q_eff() * e).norm(), x)?;
    Ok(-params.v0_eff() * e / den)
}

/// `s = (1 + q' exp(-α' x))^{-1}` with the variant's complexified `q'`, `α'`.
pub fn map_x_to_s(params: &PotentialParams, x: f64) -> Result<C64> {
    if !x.is_finite() {
        return Err(Error::InvalidParams(format!("x must be finite, got {x}")));
    }
    let q = params.q_eff();
    let ax = params.alpha_eff() * x;
    // exp(-ax) overflows for large negative real ax; use e^{ax}/(e^{ax} + q) there.
    let (num, den) = if ax.re < 0.0 {
        let e = ax.exp();
        (e, e + q)
    } else {
        (C64::from(1.0), 1.0 + q * (-ax).exp())
    };
    check_denominator(den, 1.0 + q.norm(), x)?;
    Ok(num / den)
}

/// `ds/dx = α' s (1 - s)`.
pub fn ds_dx(params: &PotentialParams, x: f64) -> Result<C64> {
    let s = map_x_to_s(params, x)?;
    Ok(params.alpha_eff() * s * (1.0 - s))
}

/// Pole locations of the real-variant potential (non-empty only for q < 0).
pub fn real_pole(params: &PotentialParams) -> Option<f64> {
    (params.q < 0.0).then(|| params.a * (-params.q).ln())
}

/// Period of the potential along x for the complex-α variants.
pub fn period(params: &PotentialParams) -> Option<f64> {
    params
        .variant
        .complex_alpha()
        .then(|| 2.0 * PI / params.alpha)
}

/// Dimensionless quantities of the transformed equation at energy `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessKg {
    /// `-(E² - m²)/α'²`
    pub eps2: C64,
    /// `2 E Ṽ0/α'²`
    pub beta2: C64,
    /// `Ṽ0²/α'²`
    pub gamma2: C64,
    /// `Ṽ0 = V0/q`
    pub vtilde: f64,
}

/// Evaluates the dimensionless set with the variant's `α'` (so `α'² = -α²` for
/// the complex-α variants). No physicality filtering.
pub fn dimensionless_kg(params: &PotentialParams, energy: C64) -> Result<DimensionlessKg> {
    params.require_q_nonzero()?;
    let alpha2 = params.alpha_eff() * params.alpha_eff();
    let vtilde = params.v_tilde();
    let m2 = params.m * params.m;
    Ok(DimensionlessKg {
        eps2: -(energy * energy - m2) / alpha2,
        beta2: 2.0 * energy * vtilde / alpha2,
        gamma2: C64::from(vtilde * vtilde) / alpha2,
        vtilde,
    })
}

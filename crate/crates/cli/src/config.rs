//! Merging of config files and flags into one effective problem.

use std::fs;
use std::path::Path;

use kgws::problem::ParamsFile;
use kgws::{PotentialParams, Variant};
use serde::{Deserialize, Serialize};

use crate::args::ProblemArgs;
use crate::error::{CliError, Result};

/// Problem fields as read from `--config`; every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(rename = "V0")]
    pub v0: Option<f64>,
    pub q: Option<f64>,
    pub a: Option<f64>,
    pub alpha: Option<f64>,
    pub m: Option<f64>,
    #[serde(rename = "R0")]
    pub r0: Option<f64>,
    pub variant: Option<Variant>,
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }

    /// Values of `other` replace the ones here. Setting one of `a`/`alpha`
    /// clears the other.
    pub fn overlay(mut self, other: &ProblemFile) -> Self {
        if other.a.is_some() || other.alpha.is_some() {
            self.a = other.a;
            self.alpha = other.alpha;
        }
        self.v0 = other.v0.or(self.v0);
        self.q = other.q.or(self.q);
        self.m = other.m.or(self.m);
        self.r0 = other.r0.or(self.r0);
        self.variant = other.variant.or(self.variant);
        self
    }

    /// Builds the parameters, filling `q = 1`, `a = 1`, `m = 1`, `R0 = 0`
    /// and the real variant where nothing was given. `V0` is required.
    pub fn resolve(&self) -> Result<PotentialParams> {
        let v0 = self
            .v0
            .ok_or_else(|| CliError::Config("V0 is required (flag --V0 or config file)".into()))?;
        if self.a.is_some() && self.alpha.is_some() {
            return Err(CliError::Config("give either a or alpha, not both".into()));
        }
        let q = self.q.unwrap_or(1.0);
        let m = self.m.unwrap_or(1.0);
        let variant = self.variant.unwrap_or(Variant::RealHermitian);
        let params = match (self.a, self.alpha) {
            (_, Some(alpha)) => PotentialParams::with_alpha(v0, q, alpha, m, variant)?,
            (a, None) => PotentialParams::new(v0, q, a.unwrap_or(1.0), m, variant)?,
        };
        Ok(params.with_r0(self.r0.unwrap_or(0.0))?)
    }
}

impl TryFrom<&ProblemArgs> for ProblemFile {
    type Error = CliError;

    fn try_from(args: &ProblemArgs) -> Result<Self> {
        let variant = args
            .variant
            .as_deref()
            .map(|s| s.parse::<Variant>())
            .transpose()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(ProblemFile {
            v0: args.v0,
            q: args.q,
            a: args.a,
            alpha: args.alpha,
            m: args.m,
            r0: args.r0,
            variant,
        })
    }
}

/// Config file (if any) overlaid with the flags.
pub fn problem_file(args: &ProblemArgs) -> Result<ProblemFile> {
    let base = match &args.config {
        Some(path) => ProblemFile::read(path)?,
        None => ProblemFile::default(),
    };
    Ok(base.overlay(&ProblemFile::try_from(args)?))
}

/// Effective problem echoed into output headers.
pub fn echo(params: &PotentialParams) -> ParamsFile {
    ParamsFile::from(params)
}

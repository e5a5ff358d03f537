//! Bound states of the s-wave Klein-Gordon equation for the generalized
//! Woods-Saxon potential `V(x) = -V0 e^{-αx} / (1 + q e^{-αx})`.
//!
//! The crate covers four parameter regimes (real, PT-symmetric, non-PT
//! non-Hermitian and pseudo-Hermitian), derives closed-form energies with a
//! generic Nikiforov-Uvarov engine, assembles Jacobi-polynomial
//! eigenfunctions, and checks everything against independent numerics:
//! a Numerov shooting solver in x-space and finite-difference residuals of
//! the transformed equation.
//!
//! Units are ħ = c = 1 throughout.

pub mod error;
pub mod nu;
pub mod oracle;
pub mod problem;
pub mod quad;
pub mod specfun;
pub mod spectra;
pub mod wavefn;

pub use error::{Error, Result};
pub use problem::{DimensionlessKg, PotentialParams, Variant};
pub use spectra::{BoundState, Branch, Equation, Spectrum};
pub use wavefn::WavefunctionSpec;

pub use num_complex::Complex64 as C64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

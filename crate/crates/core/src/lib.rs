//! Spontaneous emission of a uniformly moving two-level atom next to a
//! perfectly conducting plate.
//!
//! Two independent routes to the decay rate are provided:
//!
//! * [`quadrature`]: the golden-rule rate integrated over the full solid
//!   angle at finite atomic mass, with the exact emitted frequency and
//!   δ-function Jacobian from [`kinematics`] and the exact matrix elements
//!   from [`matrix`].
//! * [`closed_form`]: the analytic rates and first-order `1/m` corrections
//!   (total, Röntgen-only and recoil-only) for dipoles along x, y and z.
//!
//! [`analysis`] cross-validates the two, extracting the `1/m` slope of the
//! numerical rate by Richardson extrapolation.
//!
//! Units: `ħ = c = 1`, the transition frequency is fixed to `ω₀ = 1`, rates
//! are reported in units of the free-space rate `Γ₀`, and corrections in
//! units of `Γ₀ω₀/m`. The plate distance enters through `Z = 2zω₀`.
//!
//! The numerics are generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod closed_form;
mod error;
pub mod kinematics;
pub mod matrix;
pub mod output;
pub mod quadrature;
mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{compensated_sum, Real};

pub use basis::{completeness_residual, transverse_frame, unit_wavevector};
pub use closed_form::{
    breakdown, correction_recoil, correction_rontgen, correction_total, gamma0,
    gamma_boundary,
};
pub use kinematics::{conservation_residual, emitted_frequency, jacobian, shifts, Mechanisms};
pub use matrix::{f_exact, f_sum_first_order, DipoleAxis};
pub use quadrature::{gauss_legendre, rate_numeric, rate_numeric_fixed};

pub type Vec3 = basis::Vec3<f64>;
pub type CVec3 = basis::CVec3<f64>;
pub type TransverseFrame = basis::TransverseFrame<f64>;
pub type AtomConfig = kinematics::AtomConfig<f64>;
pub type EmissionKinematics = kinematics::EmissionKinematics<f64>;
pub type QuadratureSpec = quadrature::QuadratureSpec;
pub type Gamma0Params = closed_form::Gamma0Params<f64>;
pub type SlopeEstimate = analysis::SlopeEstimate<f64>;
pub type ScanRow = analysis::ScanRow<f64>;
pub type RateBreakdown = closed_form::RateBreakdown<f64>;

//! Analytic decay rates and first-order `1/m` corrections.
//!
//! Rates are in units of `Γ₀`, corrections in units of `Γ₀ω₀/m`. With
//! `q(Z) = (Z cos Z - sin Z)/Z³` and `s(Z) = sin Z / Z`:
//!
//! | quantity    | normal dipole (z)     | parallel dipole (x, y)          |
//! |-------------|-----------------------|---------------------------------|
//! | `Γ_b`       | `1 - 3q`              | `1 - 3(s + q)/2`                |
//! | total       | `-3(1 + s)/2`         | `-3(1 - cos Z/2 - s/2)/2`       |
//! | Röntgen     | `Γ_b`                 | `Γ_b`                           |
//! | recoil      | `-5/2 + 3q - 3s/2`    | `-5/2 + 3(cos Z + 3s + 2q)/4`   |
//!
//! Below [`SERIES_CROSSOVER`] the Taylor expansions are used instead, since
//! `q` loses about two digits per decade of `Z` to cancellation.

use crate::matrix::DipoleAxis;
use crate::{Error, Real, Result};

/// Below this `Z` every quantity is evaluated from its Taylor series.
pub const SERIES_CROSSOVER: f64 = 0.05;

// Taylor coefficients in powers of Z², lowest first.
const GB_NORMAL: [f64; 5] = [2.0, -1.0 / 10.0, 1.0 / 280.0, -1.0 / 15120.0, 1.0 / 1330560.0];
const GB_PARALLEL: [f64; 5] = [0.0, 1.0 / 5.0, -3.0 / 280.0, 1.0 / 3780.0, -1.0 / 266112.0];
const TOTAL_NORMAL: [f64; 5] = [-3.0, 1.0 / 4.0, -1.0 / 80.0, 1.0 / 3360.0, -1.0 / 241920.0];
const TOTAL_PARALLEL: [f64; 5] = [0.0, -1.0 / 2.0, 3.0 / 80.0, -1.0 / 840.0, 1.0 / 48384.0];
const RECOIL_NORMAL: [f64; 5] = [-5.0, 7.0 / 20.0, -9.0 / 560.0, 11.0 / 30240.0, -13.0 / 2661120.0];
const RECOIL_PARALLEL: [f64; 5] =
    [0.0, -7.0 / 10.0, 27.0 / 560.0, -11.0 / 7560.0, 13.0 / 532224.0];

/// Inputs of the free-space rate `Γ₀ = ω₀³ d² / (3π ε₀)` (`ħ = c = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gamma0Params<T> {
    pub omega0: T,
    pub d: T,
    pub epsilon0: T,
}

/// Fixed-atom rate and the three first-order corrections at one `Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBreakdown<T> {
    /// `Γ_b/Γ₀`.
    pub gamma_boundary: T,
    /// Total correction, units of `Γ₀ω₀/m`.
    pub c_total: T,
    /// Correction with only the Röntgen coupling, units of `Γ₀ω₀/m`.
    pub c_rontgen: T,
    /// Correction with only the photon recoil, units of `Γ₀ω₀/m`.
    pub c_recoil: T,
}

impl<T: Real> RateBreakdown<T> {
    /// `Γ/Γ₀ = Γ_b/Γ₀ + c_total/μ` to first order.
    pub fn rate(&self, mass_ratio: T) -> T {
        self.gamma_boundary + self.c_total / mass_ratio
    }

    pub fn additivity_residual(&self) -> T {
        (self.c_total - (self.c_rontgen + self.c_recoil)).abs()
    }
}

pub fn gamma0<T: Real>(params: &Gamma0Params<T>) -> Result<T> {
    for (name, value) in [
        ("omega0", params.omega0),
        ("d", params.d),
        ("epsilon0", params.epsilon0),
    ] {
        if !(value > T::zero()) {
            return Err(Error::NonPositiveParameter {
                name,
                value: value.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let w = params.omega0;
    Ok(w * w * w * params.d * params.d / (T::lit(3.0) * T::PI() * params.epsilon0))
}

fn series<T: Real>(coeffs: &[f64; 5], z: T) -> T {
    let z2 = z * z;
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * z2 + T::lit(c))
}

fn is_parallel(axis: DipoleAxis) -> bool {
    !matches!(axis, DipoleAxis::Z)
}

fn use_series<T: Real>(z: T) -> bool {
    z < T::lit(SERIES_CROSSOVER)
}

/// `(Z cos Z - sin Z)/Z³` and `sin Z / Z`.
fn q_and_sinc<T: Real>(z: T) -> (T, T) {
    let (s, c) = z.sin_cos();
    ((z * c - s) / (z * z * z), s / z)
}

/// `Γ_b/Γ₀` for an atom held fixed at `Z`.
pub fn gamma_boundary<T: Real>(axis: DipoleAxis, z: T) -> T {
    let parallel = is_parallel(axis);
    if use_series(z) {
        return series(if parallel { &GB_PARALLEL } else { &GB_NORMAL }, z);
    }
    let (q, s) = q_and_sinc(z);
    if parallel {
        T::one() - T::lit(1.5) * (s + q)
    } else {
        T::one() - T::lit(3.0) * q
    }
}

/// Total first-order correction, units of `Γ₀ω₀/m`.
pub fn correction_total<T: Real>(axis: DipoleAxis, z: T) -> T {
    let parallel = is_parallel(axis);
    if use_series(z) {
        return series(if parallel { &TOTAL_PARALLEL } else { &TOTAL_NORMAL }, z);
    }
    let s = z.sin() / z;
    let k = T::lit(-1.5);
    if parallel {
        let half = T::lit(0.5);
        k * (T::one() - half * z.cos() - half * s)
    } else {
        k * (T::one() + s)
    }
}

/// Röntgen-only correction; numerically equal to `Γ_b/Γ₀`.
pub fn correction_rontgen<T: Real>(axis: DipoleAxis, z: T) -> T {
    gamma_boundary(axis, z)
}

/// Recoil-only correction, units of `Γ₀ω₀/m`.
pub fn correction_recoil<T: Real>(axis: DipoleAxis, z: T) -> T {
    let parallel = is_parallel(axis);
    if use_series(z) {
        return series(if parallel { &RECOIL_PARALLEL } else { &RECOIL_NORMAL }, z);
    }
    let (q, s) = q_and_sinc(z);
    let base = T::lit(-2.5);
    if parallel {
        base + T::lit(0.75) * (z.cos() + T::lit(3.0) * s + T::lit(2.0) * q)
    } else {
        base + T::lit(3.0) * q - T::lit(1.5) * s
    }
}

pub fn breakdown<T: Real>(axis: DipoleAxis, z: T) -> RateBreakdown<T> {
    RateBreakdown {
        gamma_boundary: gamma_boundary(axis, z),
        c_total: correction_total(axis, z),
        c_rontgen: correction_rontgen(axis, z),
        c_recoil: correction_recoil(axis, z),
    }
}

//! Cross-checks between the quadrature and the closed forms.
//!
//! The numerical rate is `Γ/Γ₀ = Γ_b/Γ₀ + c/μ + O(1/μ²)`. Sampling
//! `s(μ) = μ (Γ/Γ₀ - Γ_b/Γ₀)` at a few large masses and eliminating the
//! `a/μ` term pairwise recovers the first-order coefficient `c`, which must
//! agree with [`correction_total`](crate::closed_form::correction_total) or,
//! with one mechanism switched off, with the Röntgen-only or recoil-only
//! correction.

use rayon::prelude::*;

use crate::closed_form::{breakdown, RateBreakdown};
use crate::kinematics::{AtomConfig, Mechanisms, NONRELATIVISTIC_LIMIT};
use crate::matrix::DipoleAxis;
use crate::quadrature::{rate_numeric_fixed_on, rate_numeric_with, QuadratureSpec, SphereGrid};
use crate::{Error, Real, Result};

/// Extrapolated first-order coefficient with the samples it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeEstimate<T> {
    /// `lim μ→∞ μ (Γ/Γ₀ - Γ_b/Γ₀)`.
    pub slope: T,
    /// Half the gap between the last two extrapolants, or the size of the
    /// extrapolation step when only two masses are given.
    pub error_estimate: T,
    pub mu_list: Vec<T>,
    /// `s(μ)` for each mass.
    pub samples: Vec<T>,
    /// Pairwise extrapolants over consecutive masses.
    pub extrapolants: Vec<T>,
}

impl<T: Real> SlopeEstimate<T> {
    /// `|slope - target| / max(|target|, 0.1)`.
    pub fn relative_deviation(&self, target: T) -> T {
        (self.slope - target).abs() / target.abs().max(T::lit(0.1))
    }
}

/// One row of a `Z` scan of the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow<T> {
    pub z: T,
    pub axis: DipoleAxis,
    pub gamma_boundary: T,
    pub c_total: T,
    pub c_rontgen: T,
    pub c_recoil: T,
}

impl<T: Real> ScanRow<T> {
    pub fn breakdown(&self) -> RateBreakdown<T> {
        RateBreakdown {
            gamma_boundary: self.gamma_boundary,
            c_total: self.c_total,
            c_rontgen: self.c_rontgen,
            c_recoil: self.c_recoil,
        }
    }
}

/// Richardson extrapolation under `s(μ) = s∞ + a/μ`.
pub fn richardson<T: Real>(mu_list: &[T], samples: &[T]) -> Result<SlopeEstimate<T>> {
    if mu_list.len() < 2 || mu_list.len() != samples.len() {
        return Err(Error::InvalidConfig(format!(
            "need at least two masses with one sample each, got {} masses and {} samples",
            mu_list.len(),
            samples.len()
        )));
    }
    if !mu_list.windows(2).all(|w| w[0] < w[1]) || !(mu_list[0] > T::zero()) {
        return Err(Error::InvalidConfig("masses must be positive and strictly increasing".into()));
    }
    let extrapolants: Vec<T> = mu_list
        .windows(2)
        .zip(samples.windows(2))
        .map(|(m, s)| (m[1] * s[1] - m[0] * s[0]) / (m[1] - m[0]))
        .collect();
    let slope = *extrapolants.last().expect("at least one pair");
    let error_estimate = match extrapolants.len() {
        1 => (slope - *samples.last().expect("non-empty")).abs(),
        n => (extrapolants[n - 1] - extrapolants[n - 2]).abs() * T::lit(0.5),
    };
    Ok(SlopeEstimate {
        slope,
        error_estimate,
        mu_list: mu_list.to_vec(),
        samples: samples.to_vec(),
        extrapolants,
    })
}

/// `|c_total - (c_rontgen + c_recoil)|` of the closed forms.
pub fn additivity_residual<T: Real>(axis: DipoleAxis, z: T) -> Result<T> {
    if !(z > T::zero()) {
        return Err(Error::InvalidConfig(format!("Z must be positive, got {z}")));
    }
    Ok(breakdown(axis, z).additivity_residual())
}

/// First-order slope of the full finite-mass rate at fixed `p/m`.
pub fn first_order_slope<T: Real>(
    axis: DipoleAxis,
    z: T,
    mu_list: &[T],
    velocity_ratio: T,
    spec: QuadratureSpec,
) -> Result<SlopeEstimate<T>> {
    slope_with(axis, z, mu_list, velocity_ratio, spec, Mechanisms::ALL)
}

/// First-order slope of an atom at rest with only the selected mechanisms.
pub fn rontgen_toggle_slope<T: Real>(
    axis: DipoleAxis,
    z: T,
    mu_list: &[T],
    spec: QuadratureSpec,
    include_rontgen: bool,
    include_recoil: bool,
) -> Result<SlopeEstimate<T>> {
    let mechanisms = Mechanisms { rontgen: include_rontgen, recoil: include_recoil };
    slope_with(axis, z, mu_list, T::zero(), spec, mechanisms)
}

pub fn slope_with<T: Real>(
    axis: DipoleAxis,
    z: T,
    mu_list: &[T],
    velocity_ratio: T,
    spec: QuadratureSpec,
    mechanisms: Mechanisms,
) -> Result<SlopeEstimate<T>> {
    if velocity_ratio.abs() > T::lit(NONRELATIVISTIC_LIMIT) {
        return Err(Error::InvalidConfig(format!(
            "p/m = {velocity_ratio} exceeds {NONRELATIVISTIC_LIMIT}"
        )));
    }
    let configs: Vec<AtomConfig<T>> = mu_list
        .iter()
        .map(|&mu| AtomConfig::with_velocity(mu, velocity_ratio, z))
        .collect::<Result<_>>()?;
    // the lightest mass has the tightest guard
    for cfg in &configs {
        cfg.check_guard()?;
    }
    let grid: SphereGrid<T> = spec.grid()?;
    let fixed = rate_numeric_fixed_on(axis, z, &grid)?;
    let samples: Vec<T> = configs
        .iter()
        .map(|cfg| {
            rate_numeric_with(axis, cfg, &grid, mechanisms)
                .map(|rate| cfg.mass_ratio() * (rate - fixed))
        })
        .collect::<Result<_>>()?;
    richardson(mu_list, &samples)
}

/// Closed-form breakdown on a strictly increasing grid of positive `Z`.
pub fn scan<T: Real>(axis: DipoleAxis, z_grid: &[T]) -> Result<Vec<ScanRow<T>>> {
    if z_grid.iter().any(|z| !(*z > T::zero()) || !z.is_finite()) {
        return Err(Error::InvalidConfig("scan grid must contain finite positive Z".into()));
    }
    if !z_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidConfig("scan grid must be strictly increasing".into()));
    }
    Ok(z_grid
        .par_iter()
        .map(|&z| {
            let b = breakdown(axis, z);
            ScanRow {
                z,
                axis,
                gamma_boundary: b.gamma_boundary,
                c_total: b.c_total,
                c_rontgen: b.c_rontgen,
                c_recoil: b.c_recoil,
            }
        })
        .collect())
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn linear_grid<T: Real>(start: T, stop: T, count: usize) -> Result<Vec<T>> {
    match count {
        0 => Err(Error::InvalidConfig("grid needs at least one point".into())),
        1 => Ok(vec![start]),
        _ => {
            let step = (stop - start) / T::count(count - 1);
            Ok((0..count)
                .map(|i| if i == count - 1 { stop } else { start + step * T::count(i) })
                .collect())
        }
    }
}

//! Energy-momentum conservation for the emission of one photon.
//!
//! With canonical momentum `p` along x and the photon leaving along `h`, the
//! argument of the energy δ-function is
//!
//! ```text
//! D(ω) = ω₀ - ω + (p h_x ω - ω²/2) / m
//! ```
//!
//! `D(0) = ω₀ > 0` and `D → -∞`, so there is exactly one positive root `ω₊`.
//! The continuum limit weights each direction by `1/G` with `G = |dD/dω|`
//! at `ω₊`. Everything is expressed with `ω₀ = 1`, `μ = m/ω₀`, `ρ = p/ω₀`.

use log::warn;

use crate::{Error, Real, Result};

/// Above this `|ρ/μ|` the atom is no longer slow and a warning is logged.
pub const NONRELATIVISTIC_LIMIT: f64 = 0.01;

/// Fraction of `μ` that `Z` may reach before first-order results lose meaning.
pub const GUARD_FRACTION: f64 = 0.01;

/// Physical parameters of the moving atom in units of `ω₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomConfig<T> {
    mass_ratio: T,
    momentum: T,
    distance: T,
}

impl<T: Real> AtomConfig<T> {
    /// `mass_ratio = m/ω₀`, `momentum = p/ω₀` (along x), `distance = Z = 2zω₀`.
    pub fn new(mass_ratio: T, momentum: T, distance: T) -> Result<Self> {
        if !(mass_ratio > T::zero()) || !mass_ratio.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "mass_ratio",
                value: mass_ratio.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !momentum.is_finite() {
            return Err(Error::InvalidConfig("momentum must be finite".into()));
        }
        if !(momentum.abs() < mass_ratio) {
            return Err(Error::InvalidConfig(format!(
                "|p/m| = {} must stay below 1",
                (momentum / mass_ratio).abs()
            )));
        }
        if !(distance >= T::zero()) || !distance.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "plate distance Z must be finite and non-negative, got {distance}"
            )));
        }
        let cfg = Self { mass_ratio, momentum, distance };
        if cfg.velocity_ratio().abs() > T::lit(NONRELATIVISTIC_LIMIT) {
            warn!(
                "p/m = {} exceeds {NONRELATIVISTIC_LIMIT}; the nonrelativistic treatment is doubtful",
                cfg.velocity_ratio()
            );
        }
        Ok(cfg)
    }

    /// Atom at rest with the given mass.
    pub fn at_rest(mass_ratio: T, distance: T) -> Result<Self> {
        Self::new(mass_ratio, T::zero(), distance)
    }

    /// Builds the configuration from `p/m` rather than `p/ω₀`.
    pub fn with_velocity(mass_ratio: T, velocity_ratio: T, distance: T) -> Result<Self> {
        Self::new(mass_ratio, velocity_ratio * mass_ratio, distance)
    }

    pub fn mass_ratio(&self) -> T {
        self.mass_ratio
    }

    pub fn momentum(&self) -> T {
        self.momentum
    }

    pub fn distance(&self) -> T {
        self.distance
    }

    pub fn velocity_ratio(&self) -> T {
        self.momentum / self.mass_ratio
    }

    /// Largest `Z` accepted by [`check_guard`](Self::check_guard).
    pub fn guard_limit(&self) -> T {
        T::lit(GUARD_FRACTION) * self.mass_ratio
    }

    pub fn check_guard(&self) -> Result<()> {
        if self.distance > self.guard_limit() {
            return Err(Error::GuardViolation {
                z: self.distance.to_f64().unwrap_or(f64::NAN),
                mass_ratio: self.mass_ratio.to_f64().unwrap_or(f64::NAN),
                limit: self.guard_limit().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }
}

/// Which `1/m` mechanisms enter the finite-mass rate.
///
/// The Doppler term stays on in every combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mechanisms {
    /// The velocity-dependent dipole/magnetic-field coupling inside the matrix elements.
    pub rontgen: bool,
    /// The `-ω²/2m` kinetic-energy cost in the conservation condition.
    pub recoil: bool,
}

impl Mechanisms {
    pub const ALL: Self = Self { rontgen: true, recoil: true };
    pub const RONTGEN_ONLY: Self = Self { rontgen: true, recoil: false };
    pub const RECOIL_ONLY: Self = Self { rontgen: false, recoil: true };
    pub const NONE: Self = Self { rontgen: false, recoil: false };
}

impl Default for Mechanisms {
    fn default() -> Self {
        Self::ALL
    }
}

/// Emitted frequency, Jacobian and the two shifts along one direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionKinematics<T> {
    pub omega_plus: T,
    pub jacobian: T,
    pub doppler: T,
    pub recoil: T,
}

impl<T: Real> EmissionKinematics<T> {
    pub fn solve(cfg: &AtomConfig<T>, h_x: T, mechanisms: Mechanisms) -> Self {
        let (omega_plus, jacobian) = if mechanisms.recoil {
            let w = emitted_frequency(cfg, h_x);
            (w, jacobian(cfg, w, h_x))
        } else {
            let g = T::one() - cfg.momentum * h_x / cfg.mass_ratio;
            (g.recip(), g)
        };
        let (doppler, recoil) = shifts(cfg, omega_plus, h_x);
        Self { omega_plus, jacobian, doppler, recoil }
    }
}

/// `D(ω) = 1 - ω + (ρ h_x ω - ω²/2)/μ`.
pub fn conservation_residual<T: Real>(cfg: &AtomConfig<T>, omega: T, h_x: T) -> T {
    let half = T::lit(0.5);
    T::one() - omega + (cfg.momentum * h_x * omega - half * omega * omega) / cfg.mass_ratio
}

/// The positive root `ω₊` of [`conservation_residual`].
pub fn emitted_frequency<T: Real>(cfg: &AtomConfig<T>, h_x: T) -> T {
    let two = T::lit(2.0);
    let a = cfg.mass_ratio - h_x * cfg.momentum;
    let disc = (a * a + two * cfg.mass_ratio).sqrt();
    if a >= T::zero() {
        two * cfg.mass_ratio / (a + disc)
    } else {
        disc - a
    }
}

/// `G = |dD/dω|` at `omega_plus`, i.e. `1 + (ω₊ - ρ h_x)/μ`.
pub fn jacobian<T: Real>(cfg: &AtomConfig<T>, omega_plus: T, h_x: T) -> T {
    T::one() + (omega_plus - cfg.momentum * h_x) / cfg.mass_ratio
}

/// Doppler shift `ρ h_x ω/μ` and recoil shift `ω²/(2μ)`, in units of `ω₀`.
pub fn shifts<T: Real>(cfg: &AtomConfig<T>, omega: T, h_x: T) -> (T, T) {
    let doppler = cfg.momentum * h_x * omega / cfg.mass_ratio;
    let recoil = omega * omega / (T::lit(2.0) * cfg.mass_ratio);
    (doppler, recoil)
}

//! Squared emission matrix elements including the Röntgen coupling.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::basis::{CVec3, TransverseFrame, Vec3};
use crate::kinematics::AtomConfig;
use crate::{Error, Real};

/// Orientation of the transition dipole. `Z` is normal to the plate, `X` is
/// the direction of motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DipoleAxis {
    X,
    Y,
    Z,
}

impl DipoleAxis {
    pub const ALL: [DipoleAxis; 3] = [DipoleAxis::X, DipoleAxis::Y, DipoleAxis::Z];

    pub fn as_str(self) -> &'static str {
        match self {
            DipoleAxis::X => "x",
            DipoleAxis::Y => "y",
            DipoleAxis::Z => "z",
        }
    }

    /// Component of `v` along this axis.
    pub fn component<T: Real>(self, v: &Vec3<T>) -> T {
        match self {
            DipoleAxis::X => v.x,
            DipoleAxis::Y => v.y,
            DipoleAxis::Z => v.z,
        }
    }

    /// Standing-wave factor at the atom: `cos²(φ)` for the normal dipole,
    /// `sin²(φ)` for the parallel ones, with `φ = k_z z`.
    pub fn position_factor<T: Real>(self, phase: T) -> T {
        match self {
            DipoleAxis::Z => phase.cos().powi(2),
            DipoleAxis::X | DipoleAxis::Y => phase.sin().powi(2),
        }
    }
}

impl fmt::Display for DipoleAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DipoleAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(DipoleAxis::X),
            "y" => Ok(DipoleAxis::Y),
            "z" => Ok(DipoleAxis::Z),
            other => Err(Error::InvalidConfig(format!("unknown dipole axis `{other}`"))),
        }
    }
}

/// Exact `F_λ(ω)` for both polarizations.
pub fn f_exact<T: Real>(
    axis: DipoleAxis,
    frame: &TransverseFrame<T>,
    cfg: &AtomConfig<T>,
    omega: T,
) -> [T; 2] {
    f_exact_with(axis, frame, cfg, omega, true)
}

/// [`f_exact`] with the Röntgen terms switched on or off. With `rontgen`
/// off only the bare electric-dipole projection `|(e_λ)_axis|²` remains.
pub fn f_exact_with<T: Real>(
    axis: DipoleAxis,
    frame: &TransverseFrame<T>,
    cfg: &AtomConfig<T>,
    omega: T,
    rontgen: bool,
) -> [T; 2] {
    let [(e1, b1), (e2, b2)] = frame.polarizations();
    let one = |e: &CVec3<T>, b: &CVec3<T>| {
        let bare = match axis {
            DipoleAxis::X => e.x,
            DipoleAxis::Y => e.y,
            DipoleAxis::Z => e.z,
        };
        if !rontgen {
            return bare.norm_sqr();
        }
        (bare + rontgen_amplitude(axis, &frame.h, b, cfg, omega)).norm_sqr()
    };
    [one(&e1, &b1), one(&e2, &b2)]
}

fn rontgen_amplitude<T: Real>(
    axis: DipoleAxis,
    h: &Vec3<T>,
    b: &CVec3<T>,
    cfg: &AtomConfig<T>,
    omega: T,
) -> Complex<T> {
    let half_w = omega * T::lit(0.5);
    let p = cfg.momentum();
    let m = cfg.mass_ratio();
    let amp = match axis {
        DipoleAxis::Z => b.y * (p - h.x * half_w) + b.x * (h.y * half_w),
        DipoleAxis::Y => -(b.z * (p - h.x * half_w) + b.x * (h.z * half_w)),
        DipoleAxis::X => -(b.z * (h.y * half_w) - b.y * (h.z * half_w)),
    };
    amp / m
}

/// `Σ_λ F_λ(ω)` expanded to first order in `1/m`.
pub fn f_sum_first_order<T: Real>(
    axis: DipoleAxis,
    h: &Vec3<T>,
    cfg: &AtomConfig<T>,
    omega: T,
) -> T {
    let two = T::lit(2.0);
    let m = cfg.mass_ratio();
    let p = cfg.momentum();
    let (hx2, hy2, hz2) = (h.x * h.x, h.y * h.y, h.z * h.z);
    match axis {
        DipoleAxis::Z => T::one() - hz2 + ((hx2 + hy2) * omega - two * p * h.x) / m,
        DipoleAxis::Y => T::one() - hy2 + ((hx2 + hz2) * omega - two * p * h.x) / m,
        DipoleAxis::X => T::one() - hx2 + (hy2 + hz2) * omega / m,
    }
}

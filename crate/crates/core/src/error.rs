use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The two-polarization basis divides by `sin θ` and is undefined on the z axis.
    #[error("polarization basis undefined at the pole (sin θ = {sin_theta:e})")]
    PoleSingularity { sin_theta: f64 },

    #[error("Gauss-Legendre order must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("invalid quadrature grid: {0}")]
    InvalidGrid(String),

    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// First-order results are only meaningful close to the plate, Z ≲ 0.01 μ.
    #[error("plate distance Z = {z} exceeds the validity guard {limit} for mass ratio {mass_ratio}")]
    GuardViolation { z: f64, mass_ratio: f64, limit: f64 },
}

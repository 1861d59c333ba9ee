//! Emission direction and the transverse polarization frame of the
//! plate-bounded mode functions.
//!
//! For a unit wavevector `h = (sinθ cosφ, sinθ sinφ, cosθ)` the two
//! polarizations are
//!
//! ```text
//! e1 = i (-h_y, h_x, 0) / h_∥
//! e2 = (-h_x h_z / h_∥, -h_y h_z / h_∥, h_∥),      h_∥ = sinθ
//! ```
//!
//! and the magnetic-field directions are `b_λ = h × e_λ`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::{Error, Real, Result};

/// Frames closer to the z axis than this (in `sin θ`) are rejected.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Promotes to a complex vector with zero imaginary parts.
    pub fn to_complex(self) -> CVec3<T> {
        CVec3::new(
            Complex::new(self.x, T::zero()),
            Complex::new(self.y, T::zero()),
            Complex::new(self.z, T::zero()),
        )
    }

    /// Cross product `self × v` of a real vector with a complex one.
    pub fn cross_complex(&self, v: &CVec3<T>) -> CVec3<T> {
        CVec3::new(
            v.z * self.y - v.y * self.z,
            v.x * self.z - v.z * self.x,
            v.y * self.x - v.x * self.y,
        )
    }

    /// Rotation by `angle` about the z axis.
    pub fn rotate_z(&self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y, self.z)
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
    pub z: Complex<T>,
}

impl<T: Real> CVec3<T> {
    pub fn new(x: Complex<T>, y: Complex<T>, z: Complex<T>) -> Self {
        Self { x, y, z }
    }

    pub fn to_array(self) -> [Complex<T>; 3] {
        [self.x, self.y, self.z]
    }

    /// Bilinear (unconjugated) product with a real vector.
    pub fn dot_real(&self, h: &Vec3<T>) -> Complex<T> {
        self.x * h.x + self.y * h.y + self.z * h.z
    }

    /// Hermitian norm `sqrt(Σ |v_i|²)`.
    pub fn norm(&self) -> T {
        (self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()).sqrt()
    }

    pub fn rotate_z(&self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(self.x * c - self.y * s, self.x * s + self.y * c, self.z)
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let a = self.to_array();
        let b = other.to_array();
        (0..3).fold(T::zero(), |m, i| m.max((a[i] - b[i]).norm()))
    }
}

/// Unit wavevector together with both polarization vectors and their
/// magnetic-field partners `h × e_λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseFrame<T> {
    pub h: Vec3<T>,
    pub e1: CVec3<T>,
    pub e2: CVec3<T>,
    pub b1: CVec3<T>,
    pub b2: CVec3<T>,
}

impl<T: Real> TransverseFrame<T> {
    /// Polarization vector `e_λ` for `λ ∈ {0, 1}`.
    pub fn polarizations(&self) -> [(CVec3<T>, CVec3<T>); 2] {
        [(self.e1, self.b1), (self.e2, self.b2)]
    }

    /// Builds the frame from `cos θ`, `sin θ ≥ 0` and the azimuth.
    ///
    /// Quadrature nodes are placed in `u = cos θ`, so this avoids an `acos`.
    pub fn from_cos_sin(cos_theta: T, sin_theta: T, phi: T) -> Result<Self> {
        if !(sin_theta >= T::lit(POLE_TOLERANCE)) {
            return Err(Error::PoleSingularity {
                sin_theta: sin_theta.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (sin_phi, cos_phi) = phi.sin_cos();
        let h = Vec3::new(sin_theta * cos_phi, sin_theta * sin_phi, cos_theta);
        let h_par = sin_theta;
        let zero = T::zero();
        let i = Complex::new(zero, T::one());
        let e1 = CVec3::new(i * (-h.y / h_par), i * (h.x / h_par), Complex::new(zero, zero));
        let e2 = Vec3::new(-h.x * h.z / h_par, -h.y * h.z / h_par, h_par).to_complex();
        let b1 = h.cross_complex(&e1);
        let b2 = h.cross_complex(&e2);
        Ok(Self { h, e1, e2, b1, b2 })
    }

    pub fn rotate_z(&self, angle: T) -> Self {
        Self {
            h: self.h.rotate_z(angle),
            e1: self.e1.rotate_z(angle),
            e2: self.e2.rotate_z(angle),
            b1: self.b1.rotate_z(angle),
            b2: self.b2.rotate_z(angle),
        }
    }
}

/// Unit vector along the wavevector with polar angle `theta` and azimuth `phi`.
pub fn unit_wavevector<T: Real>(theta: T, phi: T) -> Vec3<T> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Vec3::new(st * cp, st * sp, ct)
}

/// Transverse frame at `(theta, phi)`; fails within [`POLE_TOLERANCE`] of the poles.
pub fn transverse_frame<T: Real>(theta: T, phi: T) -> Result<TransverseFrame<T>> {
    let (st, ct) = theta.sin_cos();
    // θ outside [0, π] gives sin θ < 0 and is rejected together with the poles.
    TransverseFrame::from_cos_sin(ct, st, phi)
}

/// Max-abs residual of `Σ_λ (e_λ)_i (e_λ)*_j = δ_ij - h_i h_j`.
pub fn completeness_residual<T: Real>(frame: &TransverseFrame<T>) -> T {
    let h = frame.h.to_array();
    let e1 = frame.e1.to_array();
    let e2 = frame.e2.to_array();
    let mut worst = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            let sum = e1[i] * e1[j].conj() + e2[i] * e2[j].conj();
            let delta = if i == j { T::one() } else { T::zero() };
            let target = Complex::new(delta - h[i] * h[j], T::zero());
            worst = worst.max((sum - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn wavevector_at_pole_and_equator() {
        assert_eq!(unit_wavevector(0.0, 0.0), Vec3::new(0.0, 0.0, 1.0));
        let eq = unit_wavevector(FRAC_PI_2, 0.0);
        assert_abs_diff_eq!(eq.x, 1.0);
        assert_abs_diff_eq!(eq.z, 0.0, epsilon = 1e-16);
        let eq = unit_wavevector(FRAC_PI_2, FRAC_PI_2);
        assert_abs_diff_eq!(eq.x, 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(eq.y, 1.0);
    }

    #[test]
    fn equatorial_frame_is_axis_aligned() {
        let f = transverse_frame(FRAC_PI_2, 0.0).unwrap();
        let expect_e1 = CVec3::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0));
        let expect_e2 = CVec3::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        let expect_b2 = CVec3::new(c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
        assert!(f.e1.max_abs_diff(&expect_e1) < 1e-15);
        assert!(f.e2.max_abs_diff(&expect_e2) < 1e-15);
        assert!(f.b2.max_abs_diff(&expect_b2) < 1e-15);
        assert!(completeness_residual(&f) < 1e-15);
    }

    #[test]
    fn completeness_at_fixed_angles() {
        assert!(completeness_residual(&transverse_frame(FRAC_PI_3, 1.1).unwrap()) < 1e-14);
        assert!(completeness_residual(&transverse_frame(0.7, 2.3).unwrap()) < 1e-13);
    }

    #[test]
    fn pole_is_rejected() {
        assert!(matches!(
            transverse_frame(0.0, 0.3),
            Err(Error::PoleSingularity { .. })
        ));
        assert!(matches!(
            transverse_frame(PI, 0.3),
            Err(Error::PoleSingularity { .. })
        ));
        assert!(transverse_frame(1e-9, 0.3).is_ok());
    }

    #[test]
    fn single_precision_frame() {
        let f = transverse_frame(0.9f32, 2.0f32).unwrap();
        assert!(completeness_residual(&f) < 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn frame_invariants(theta in 1e-6..(PI - 1e-6), phi in 0.0..(2.0 * PI)) {
            let f = transverse_frame(theta, phi).unwrap();
            prop_assert!((f.h.norm() - 1.0).abs() < 1e-14);
            prop_assert!(f.e1.dot_real(&f.h).norm() < 1e-14);
            prop_assert!(f.e2.dot_real(&f.h).norm() < 1e-14);
            prop_assert!((f.e1.norm() - 1.0).abs() < 1e-14);
            prop_assert!((f.e2.norm() - 1.0).abs() < 1e-14);
            prop_assert!(f.b1.max_abs_diff(&f.h.cross_complex(&f.e1)) < 1e-14);
            prop_assert!((f.b1.norm() - 1.0).abs() < 1e-13);
            prop_assert!((f.b2.norm() - 1.0).abs() < 1e-13);
            prop_assert!(f.b1.dot_real(&f.h).norm() < 1e-13);
            prop_assert!(f.b2.dot_real(&f.h).norm() < 1e-13);
            prop_assert!(completeness_residual(&f) < 1e-13);
        }

        #[test]
        fn azimuthal_rotation_covariance(
            theta in 0.01..(PI - 0.01),
            phi in 0.0..(2.0 * PI),
            delta in -PI..PI,
        ) {
            let rotated = transverse_frame(theta, phi + delta).unwrap();
            let expect = transverse_frame(theta, phi).unwrap().rotate_z(delta);
            prop_assert!((rotated.h - expect.h).norm() < 1e-13);
            prop_assert!(rotated.e1.max_abs_diff(&expect.e1) < 1e-13);
            prop_assert!(rotated.e2.max_abs_diff(&expect.e2) < 1e-13);
            prop_assert!(rotated.b1.max_abs_diff(&expect.b1) < 1e-13);
            prop_assert!(rotated.b2.max_abs_diff(&expect.b2) < 1e-13);
        }
    }
}

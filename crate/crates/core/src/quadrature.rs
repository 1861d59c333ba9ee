//! Solid-angle integration of the golden-rule rate.
//!
//! The continuum-limit rate, normalized by the free-space rate `Γ₀`, is
//!
//! ```text
//! Γ/Γ₀ = 3/(4π) ∫ dΩ  ω₊³ Σ_λ F_λ(ω₊) / G(ω₊) · T(h_z ω₊ Z/2)
//! ```
//!
//! with `T = cos²` for a dipole normal to the plate and `T = sin²` for the
//! parallel ones. The sphere is discretized with Gauss-Legendre nodes in
//! `u = cos θ` and a uniform trapezoidal rule in `φ`. Node contributions are
//! evaluated in parallel and reduced in a fixed order, so results do not
//! depend on the thread count.

use std::f64::consts::PI;

use log::warn;
use rayon::prelude::*;

use crate::basis::TransverseFrame;
use crate::kinematics::{AtomConfig, EmissionKinematics, Mechanisms};
use crate::matrix::{f_exact_with, DipoleAxis};
use crate::{compensated_sum, Error, Real, Result};

/// Node counts of the product rule on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadratureSpec {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl QuadratureSpec {
    pub const DEFAULT: Self = Self { n_theta: 64, n_phi: 64 };
    /// Resolution used when extracting `1/m` slopes.
    pub const FINE: Self = Self { n_theta: 128, n_phi: 128 };

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 {
            return Err(Error::InvalidGrid(format!("n_theta must be >= 2, got {n_theta}")));
        }
        if n_phi < 4 {
            return Err(Error::InvalidGrid(format!("n_phi must be >= 4, got {n_phi}")));
        }
        Ok(Self { n_theta, n_phi })
    }

    pub fn node_count(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn grid<T: Real>(&self) -> Result<SphereGrid<T>> {
        SphereGrid::new(*self)
    }
}

/// One node of the sphere rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereNode<T> {
    pub cos_theta: T,
    pub sin_theta: T,
    pub phi: T,
    /// Gauss-Legendre weight times the azimuthal step.
    pub weight: T,
}

impl<T: Real> SphereNode<T> {
    pub fn frame(&self) -> Result<TransverseFrame<T>> {
        TransverseFrame::from_cos_sin(self.cos_theta, self.sin_theta, self.phi)
    }
}

/// Precomputed product rule; weights sum to `4π`.
#[derive(Debug, Clone)]
pub struct SphereGrid<T> {
    spec: QuadratureSpec,
    nodes: Vec<SphereNode<T>>,
}

impl<T: Real> SphereGrid<T> {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        let spec = QuadratureSpec::new(spec.n_theta, spec.n_phi)?;
        let (us, wus) = gauss_legendre_f64(spec.n_theta)?;
        let dphi = 2.0 * PI / spec.n_phi as f64;
        let mut nodes = Vec::with_capacity(spec.node_count());
        for (u, wu) in us.into_iter().zip(wus) {
            let s = ((1.0 - u) * (1.0 + u)).sqrt();
            for j in 0..spec.n_phi {
                nodes.push(SphereNode {
                    cos_theta: T::lit(u),
                    sin_theta: T::lit(s),
                    phi: T::lit(dphi * j as f64),
                    weight: T::lit(wu * dphi),
                });
            }
        }
        Ok(Self { spec, nodes })
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.spec
    }

    pub fn nodes(&self) -> &[SphereNode<T>] {
        &self.nodes
    }

    /// `∫ dΩ f` over the unit sphere.
    pub fn integrate<F>(&self, f: F) -> T
    where
        F: Fn(&SphereNode<T>) -> T + Sync,
    {
        let terms: Vec<T> = self.nodes.par_iter().map(|n| n.weight * f(n)).collect();
        compensated_sum(terms)
    }

    /// Like [`integrate`](Self::integrate) for integrands that need the polarization frame.
    pub fn try_integrate<F>(&self, f: F) -> Result<T>
    where
        F: Fn(&SphereNode<T>) -> Result<T> + Sync,
    {
        let terms: Vec<T> = self
            .nodes
            .par_iter()
            .map(|n| f(n).map(|v| n.weight * v))
            .collect::<Result<_>>()?;
        Ok(compensated_sum(terms))
    }
}

fn gauss_legendre_f64(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    // roots are symmetric; solve for the positive half with Newton on P_n
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes (ascending) and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> Result<(Vec<T>, Vec<T>)> {
    let (x, w) = gauss_legendre_f64(n)?;
    Ok((x.into_iter().map(T::lit).collect(), w.into_iter().map(T::lit).collect()))
}

/// Finite-mass rate `Γ/Γ₀` by quadrature.
pub fn rate_numeric<T: Real>(
    axis: DipoleAxis,
    cfg: &AtomConfig<T>,
    spec: QuadratureSpec,
) -> Result<T> {
    rate_numeric_with(axis, cfg, &spec.grid()?, Mechanisms::ALL)
}

/// Finite-mass rate on a prebuilt grid with selected `1/m` mechanisms.
pub fn rate_numeric_with<T: Real>(
    axis: DipoleAxis,
    cfg: &AtomConfig<T>,
    grid: &SphereGrid<T>,
    mechanisms: Mechanisms,
) -> Result<T> {
    if cfg.check_guard().is_err() {
        warn!(
            "Z = {} is beyond the near-plate guard {} for mass ratio {}",
            cfg.distance(),
            cfg.guard_limit(),
            cfg.mass_ratio()
        );
    }
    let half_z = cfg.distance() * T::lit(0.5);
    let integral = grid.try_integrate(|node| {
        let frame = node.frame()?;
        let kin = EmissionKinematics::solve(cfg, frame.h.x, mechanisms);
        let w = kin.omega_plus;
        let [f1, f2] = f_exact_with(axis, &frame, cfg, w, mechanisms.rontgen);
        let position = axis.position_factor(frame.h.z * w * half_z);
        Ok(w * w * w * (f1 + f2) / kin.jacobian * position)
    })?;
    Ok(integral * normalization())
}

/// Fixed-atom rate `Γ_b/Γ₀` by quadrature of the bare dipole pattern.
pub fn rate_numeric_fixed<T: Real>(axis: DipoleAxis, z: T, spec: QuadratureSpec) -> Result<T> {
    rate_numeric_fixed_on(axis, z, &spec.grid()?)
}

pub fn rate_numeric_fixed_on<T: Real>(axis: DipoleAxis, z: T, grid: &SphereGrid<T>) -> Result<T> {
    if !(z >= T::zero()) {
        return Err(Error::InvalidConfig(format!("plate distance Z must be non-negative, got {z}")));
    }
    let half_z = z * T::lit(0.5);
    let integral = grid.integrate(|node| {
        let (sp, cp) = node.phi.sin_cos();
        let h = crate::basis::Vec3::new(node.sin_theta * cp, node.sin_theta * sp, node.cos_theta);
        let along = axis.component(&h);
        (T::one() - along * along) * axis.position_factor(h.z * half_z)
    });
    Ok(integral * normalization())
}

fn normalization<T: Real>() -> T {
    T::lit(3.0) / (T::lit(4.0) * T::PI())
}

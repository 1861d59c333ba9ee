//! Self-check suite run by the `verify` command.
//!
//! Each check evaluates one invariant over a deterministic (seeded) sample
//! and records its worst-case value against a fixed threshold.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::linear_grid;
use crate::basis::{completeness_residual, TransverseFrame};
use crate::closed_form::{breakdown, gamma_boundary, SERIES_CROSSOVER};
use crate::kinematics::{conservation_residual, emitted_frequency, jacobian, AtomConfig};
use crate::matrix::{f_exact, f_sum_first_order, DipoleAxis};
use crate::quadrature::{rate_numeric_fixed_on, rate_numeric_with, QuadratureSpec, SphereGrid};
use crate::{Mechanisms, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub spec: QuadratureSpec,
    pub seed: u64,
    /// Random draws per randomized check.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { spec: QuadratureSpec::DEFAULT, seed: 42, samples: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn below(name: &'static str, worst: f64, threshold: f64) -> Self {
        Self { name, worst, threshold, passed: worst < threshold }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn random_frame(rng: &mut ChaCha8Rng) -> TransverseFrame<f64> {
    let u: f64 = rng.gen_range(-0.999_999..0.999_999);
    let phi = rng.gen_range(0.0..2.0 * PI);
    TransverseFrame::from_cos_sin(u, (1.0 - u * u).sqrt(), phi).expect("away from the poles")
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let grid: SphereGrid<f64> = opts.spec.grid()?;
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    let mut worst_ortho = 0.0f64;
    for _ in 0..opts.samples {
        let f = random_frame(&mut rng);
        worst = worst.max(completeness_residual(&f));
        worst_ortho = worst_ortho
            .max((f.h.norm() - 1.0).abs())
            .max(f.e1.dot_real(&f.h).norm())
            .max(f.e2.dot_real(&f.h).norm())
            .max(f.b1.dot_real(&f.h).norm())
            .max(f.b2.dot_real(&f.h).norm())
            .max((f.b1.norm() - 1.0).abs())
            .max((f.b2.norm() - 1.0).abs());
    }
    checks.push(CheckResult::below("frame completeness", worst, 1e-13));
    checks.push(CheckResult::below("frame orthonormality", worst_ortho, 1e-13));

    let mut worst_root = 0.0f64;
    let mut worst_jac = 0.0f64;
    for _ in 0..opts.samples {
        let mu = 10f64.powf(rng.gen_range(1.0..12.0));
        let v = rng.gen_range(-0.01..0.01);
        let h_x = rng.gen_range(-1.0..1.0);
        let cfg = AtomConfig::with_velocity(mu, v, 0.0)?;
        let w = emitted_frequency(&cfg, h_x);
        worst_root = worst_root.max(conservation_residual(&cfg, w, h_x).abs());
        if w <= 0.0 {
            worst_root = f64::INFINITY;
        }
        let step = 1e-5;
        let fd = (conservation_residual(&cfg, w + step, h_x)
            - conservation_residual(&cfg, w - step, h_x))
            / (2.0 * step);
        worst_jac = worst_jac.max((jacobian(&cfg, w, h_x) - fd.abs()).abs());
    }
    checks.push(CheckResult::below("emitted-frequency root residual", worst_root, 1e-12));
    checks.push(CheckResult::below("jacobian vs finite difference", worst_jac, 1e-8));

    // μ²·|ΣF_exact − first-order sum| must not depend on μ
    let mut worst_spread = 0.0f64;
    for _ in 0..opts.samples / 10 {
        let f = random_frame(&mut rng);
        let rho = rng.gen_range(-2.0..2.0);
        for axis in DipoleAxis::ALL {
            let scaled: Vec<f64> = [1e3, 1e4, 1e5]
                .iter()
                .map(|&mu| {
                    let cfg = AtomConfig::new(mu, rho, 0.0).expect("valid");
                    let [a, b] = f_exact(axis, &f, &cfg, 1.0);
                    mu * mu * (a + b - f_sum_first_order(axis, &f.h, &cfg, 1.0))
                })
                .collect();
            let hi = scaled.iter().cloned().fold(f64::MIN, f64::max);
            let lo = scaled.iter().cloned().fold(f64::MAX, f64::min);
            worst_spread = worst_spread.max(hi - lo);
        }
    }
    checks.push(CheckResult::below("matrix-element expansion", worst_spread, 1e-4));

    let mut worst_rel = 0.0f64;
    for axis in DipoleAxis::ALL {
        for k in 1..=100 {
            let z = 0.1 * k as f64;
            let want = gamma_boundary(axis, z);
            let got = rate_numeric_fixed_on(axis, z, &grid)?;
            worst_rel = worst_rel.max(((got - want) / want).abs());
        }
    }
    checks.push(CheckResult::below("fixed-atom oracle equivalence", worst_rel, 1e-9));

    let heavy = AtomConfig::at_rest(1e12, PI)?;
    let special = [
        (DipoleAxis::Z, 1.0 + 3.0 / (PI * PI)),
        (DipoleAxis::Y, 1.0 + 1.5 / (PI * PI)),
    ];
    let mut worst_special = 0.0f64;
    for (axis, want) in special {
        worst_special = worst_special
            .max((gamma_boundary(axis, PI) - want).abs())
            .max((rate_numeric_fixed_on(axis, PI, &grid)? - want).abs())
            .max((rate_numeric_with(axis, &heavy, &grid, Mechanisms::ALL)? - want).abs());
    }
    checks.push(CheckResult::below("special values at Z = π", worst_special, 1e-9));

    let mut worst_contact = 0.0f64;
    for axis in DipoleAxis::ALL {
        let b = breakdown(axis, 1e-6);
        let want = match axis {
            DipoleAxis::Z => [2.0f64, -3.0, 2.0, -5.0],
            _ => [0.0; 4],
        };
        for (got, want) in [b.gamma_boundary, b.c_total, b.c_rontgen, b.c_recoil].iter().zip(want) {
            worst_contact = worst_contact.max((got - want).abs());
        }
    }
    checks.push(CheckResult::below("contact limits", worst_contact, 1e-8));

    let zs = linear_grid(0.05, 50.0, 1000)?;
    let mut worst_add = 0.0f64;
    let mut worst_rontgen_sign = 0.0f64;
    let mut worst_recoil_sign = 0.0f64;
    for axis in DipoleAxis::ALL {
        for &z in &zs {
            let b = breakdown(axis, z);
            worst_add = worst_add.max(b.additivity_residual());
            if z <= 10.0 {
                worst_rontgen_sign = worst_rontgen_sign.max(-b.c_rontgen);
                worst_recoil_sign = worst_recoil_sign.max(b.c_recoil);
            }
        }
    }
    checks.push(CheckResult::below("additivity", worst_add, 1e-12));
    checks.push(CheckResult {
        name: "Röntgen correction non-negative",
        worst: worst_rontgen_sign,
        threshold: 0.0,
        passed: worst_rontgen_sign <= 0.0,
    });
    checks.push(CheckResult {
        name: "recoil correction non-positive",
        worst: worst_recoil_sign,
        threshold: 0.0,
        passed: worst_recoil_sign <= 0.0,
    });

    let mut worst_branch = 0.0f64;
    for axis in DipoleAxis::ALL {
        let below = breakdown(axis, SERIES_CROSSOVER * (1.0 - 1e-12));
        let above = breakdown(axis, SERIES_CROSSOVER);
        worst_branch = worst_branch
            .max((below.gamma_boundary - above.gamma_boundary).abs())
            .max((below.c_total - above.c_total).abs())
            .max((below.c_recoil - above.c_recoil).abs());
    }
    checks.push(CheckResult::below("series/direct crossover", worst_branch, 1e-12));

    let mut worst_xy = 0.0f64;
    for &z in &zs {
        let (x, y) = (breakdown(DipoleAxis::X, z), breakdown(DipoleAxis::Y, z));
        worst_xy = worst_xy
            .max((x.gamma_boundary - y.gamma_boundary).abs())
            .max((x.c_total - y.c_total).abs())
            .max((x.c_recoil - y.c_recoil).abs());
    }
    checks.push(CheckResult {
        name: "x/y degeneracy",
        worst: worst_xy,
        threshold: 0.0,
        passed: worst_xy == 0.0,
    });

    Ok(VerifyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run(&VerifyOptions::default()).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn other_seed_passes() {
        let opts = VerifyOptions { seed: 43, ..Default::default() };
        assert!(run(&opts).unwrap().all_passed());
    }

    #[test]
    fn coarse_grid_fails_oracle_equivalence() {
        let opts = VerifyOptions { spec: QuadratureSpec::new(8, 8).unwrap(), ..Default::default() };
        let report = run(&opts).unwrap();
        assert!(!report.all_passed());
        let oracle = report.checks.iter().find(|c| c.name == "fixed-atom oracle equivalence").unwrap();
        assert!(!oracle.passed);
    }
}

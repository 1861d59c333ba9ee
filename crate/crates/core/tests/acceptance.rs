//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mirror_emission::analysis::{linear_grid, scan, slope_with};
use mirror_emission::basis::TransverseFrame;
use mirror_emission::output::{correction_curves, render_svg, scan_csv_string};
use mirror_emission::quadrature::{rate_numeric_fixed_on, rate_numeric_with, QuadratureSpec};
use mirror_emission::{
    breakdown, completeness_residual, conservation_residual, emitted_frequency, gamma_boundary,
    rate_numeric, AtomConfig, DipoleAxis, Mechanisms, RateBreakdown,
};

const SLOPE_MASSES: [f64; 3] = [1e4, 2e4, 4e4];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn fixed_atom_oracle() -> Outcome {
    let start = Instant::now();
    let grid = QuadratureSpec::DEFAULT.grid::<f64>().unwrap();
    let mut worst = 0.0f64;
    for axis in DipoleAxis::ALL {
        for k in 1..=100 {
            let z = 0.1 * k as f64;
            let want = gamma_boundary(axis, z);
            let got = rate_numeric_fixed_on(axis, z, &grid).unwrap();
            worst = worst.max(((got - want) / want).abs());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-9 && elapsed < Duration::from_secs(1),
        format!("max rel err {worst:.2e} (< 1e-9), {:.3} s (< 1 s)", elapsed.as_secs_f64()),
    )
}

fn special_values() -> Outcome {
    let grid = QuadratureSpec::DEFAULT.grid::<f64>().unwrap();
    let heavy = AtomConfig::at_rest(1e12, PI).unwrap();
    let mut worst = 0.0f64;
    for (axis, want) in [(DipoleAxis::Z, 1.0 + 3.0 / (PI * PI)), (DipoleAxis::Y, 1.0 + 1.5 / (PI * PI))] {
        worst = worst
            .max((gamma_boundary(axis, PI) - want).abs())
            .max((rate_numeric_fixed_on(axis, PI, &grid).unwrap() - want).abs())
            .max((rate_numeric_with(axis, &heavy, &grid, Mechanisms::ALL).unwrap() - want).abs());
    }
    outcome(worst < 1e-9, format!("max abs err {worst:.2e} (< 1e-9), closed form, fixed and heavy-atom quadrature"))
}

fn contact_worst(b: &RateBreakdown, axis: DipoleAxis) -> f64 {
    let want = match axis {
        DipoleAxis::Z => [2.0, -3.0, 2.0, -5.0],
        _ => [0.0; 4],
    };
    [b.gamma_boundary, b.c_total, b.c_rontgen, b.c_recoil]
        .iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max)
}

fn contact_limits() -> Outcome {
    let worst = DipoleAxis::ALL
        .iter()
        .map(|&axis| contact_worst(&breakdown(axis, 1e-6), axis))
        .fold(0.0, f64::max);
    outcome(worst < 1e-8, format!("max abs err {worst:.2e} at Z = 1e-6 (< 1e-8)"))
}

fn additivity_grid() -> Vec<f64> {
    linear_grid(0.05, 50.0, 1000).unwrap()
}

fn additivity() -> Outcome {
    let zs = additivity_grid();
    let worst = DipoleAxis::ALL
        .iter()
        .flat_map(|&axis| zs.iter().map(move |&z| breakdown(axis, z).additivity_residual()))
        .fold(0.0, f64::max);
    outcome(worst < 1e-12, format!("max residual {worst:.2e} on {} points x 3 axes (< 1e-12)", zs.len()))
}

fn slope_recovery() -> Outcome {
    let start = Instant::now();
    let toggles = [
        (Mechanisms::ALL, "total"),
        (Mechanisms::RONTGEN_ONLY, "rontgen"),
        (Mechanisms::RECOIL_ONLY, "recoil"),
    ];
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for axis in DipoleAxis::ALL {
        for z in [0.5, 1.0, 2.0, 5.0] {
            let b = breakdown(axis, z);
            for (mech, label) in toggles {
                let target = match label {
                    "total" => b.c_total,
                    "rontgen" => b.c_rontgen,
                    _ => b.c_recoil,
                };
                let est = slope_with(axis, z, &SLOPE_MASSES, 0.0, QuadratureSpec::FINE, mech).unwrap();
                let dev = est.relative_deviation(target);
                if dev > worst {
                    worst = dev;
                    worst_at = format!("{axis}, Z = {z}, {label}");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-3 && elapsed < Duration::from_secs(30),
        format!(
            "max rel dev {worst:.2e} ({worst_at}) (< 1e-3), {:.2} s (< 30 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn signs() -> Outcome {
    let zs: Vec<f64> = additivity_grid().into_iter().filter(|&z| z <= 10.0).collect();
    let mut violations = 0usize;
    for axis in DipoleAxis::ALL {
        for &z in &zs {
            let b = breakdown(axis, z);
            violations += usize::from(b.c_rontgen < 0.0) + usize::from(b.c_recoil > 0.0);
        }
    }
    outcome(violations == 0, format!("{violations} sign violations on {} points x 3 axes", zs.len()))
}

/// The CSV with the `axis` column removed.
fn data_columns(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let mut fields: Vec<&str> = line.split(',').collect();
            fields.remove(1);
            fields.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn xy_symmetry() -> Outcome {
    let zs = linear_grid(0.01, 10.0, 1000).unwrap();
    let x = scan_csv_string(&scan(DipoleAxis::X, &zs).unwrap());
    let y = scan_csv_string(&scan(DipoleAxis::Y, &zs).unwrap());
    let identical = data_columns(&x) == data_columns(&y);

    let mu = 1e6;
    let cfg = AtomConfig::at_rest(mu, 1.0).unwrap();
    let gx = rate_numeric(DipoleAxis::X, &cfg, QuadratureSpec::DEFAULT).unwrap();
    let gy = rate_numeric(DipoleAxis::Y, &cfg, QuadratureSpec::DEFAULT).unwrap();
    let gap = (gx - gy).abs() * mu;
    outcome(
        identical && gap < 1e-2,
        format!("scan data columns identical: {identical}; |Γx − Γy|·μ = {gap:.2e} (< 1e-2)"),
    )
}

fn momentum_independence() -> Outcome {
    let spec = QuadratureSpec::FINE;
    let at_rest = slope_with(DipoleAxis::Z, 1.0, &SLOPE_MASSES, 0.0, spec, Mechanisms::ALL).unwrap();
    let moving = slope_with(DipoleAxis::Z, 1.0, &SLOPE_MASSES, 1e-4, spec, Mechanisms::ALL).unwrap();
    let dev = moving.relative_deviation(at_rest.slope);
    outcome(
        dev < 1e-3,
        format!("slope {:.9} vs {:.9}, rel dev {dev:.2e} (< 1e-3)", moving.slope, at_rest.slope),
    )
}

fn frames_and_roots() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst_frame = 0.0f64;
    for _ in 0..1000 {
        let u: f64 = rng.gen_range(-0.999_999..0.999_999);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let frame = TransverseFrame::from_cos_sin(u, (1.0 - u * u).sqrt(), phi).unwrap();
        worst_frame = worst_frame.max(completeness_residual(&frame));
    }
    let mut worst_root = 0.0f64;
    for _ in 0..1000 {
        let mu = 10f64.powf(rng.gen_range(1.0..12.0));
        let rho = mu * rng.gen_range(-0.01..0.01);
        let h_x = rng.gen_range(-1.0..1.0);
        let cfg = AtomConfig::new(mu, rho, 0.0).unwrap();
        let w = emitted_frequency(&cfg, h_x);
        let r = if w > 0.0 { conservation_residual(&cfg, w, h_x).abs() } else { f64::INFINITY };
        worst_root = worst_root.max(r);
    }
    outcome(
        worst_frame < 1e-13 && worst_root < 1e-12,
        format!("completeness {worst_frame:.2e} (< 1e-13), |D(ω₊)| {worst_root:.2e} (< 1e-12)"),
    )
}

fn scan_properties() -> Outcome {
    let mut zs = vec![1e-6];
    zs.extend(linear_grid(0.01, 10.0, 1000).unwrap());
    let mut ok = true;
    let mut worst_add = 0.0f64;
    let mut worst_contact = 0.0f64;
    let mut curves_ok = true;
    for axis in DipoleAxis::ALL {
        let rows = scan(axis, &zs).unwrap();
        worst_contact = worst_contact.max(contact_worst(&rows[0].breakdown(), axis));
        for row in &rows {
            let b = row.breakdown();
            worst_add = worst_add.max(b.additivity_residual());
            ok &= b.c_rontgen >= 0.0 && b.c_recoil <= 0.0;
        }
        let curves = correction_curves(&rows);
        let svg = render_svg("scan", &curves);
        curves_ok &= curves.len() == 3 && svg.matches("<polyline").count() == 3;
    }
    let passed = ok && worst_add < 1e-12 && worst_contact < 1e-8 && curves_ok;
    outcome(
        passed,
        format!(
            "3 curves: {curves_ok}; contact {worst_contact:.2e}; additivity {worst_add:.2e}; signs hold: {ok}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("fixed-atom oracle equivalence", fixed_atom_oracle),
        ("special values at Z = π", special_values),
        ("contact limits", contact_limits),
        ("additivity", additivity),
        ("first-order slope recovery", slope_recovery),
        ("correction signs", signs),
        ("x/y symmetry", xy_symmetry),
        ("momentum independence", momentum_independence),
        ("frame and root properties", frames_and_roots),
        ("scan property set", scan_properties),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name}: {}", i + 1, o.detail);
        failures += usize::from(!o.passed);
    }
    println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

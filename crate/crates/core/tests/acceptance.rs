//! Acceptance suite. Each test prints one `PASS`/`FAIL` line and then
//! asserts the same verdict. Run with
//! `cargo test -p wigner-ks --test acceptance -- --nocapture --test-threads=1`.

use std::time::{Duration, Instant};

use wigner_ks::hydrogen::{
    assemble_level, build_hydrogen_problem, build_oscillator4d_problem, hw_upper_block_numerator,
    hydrogen_energy, map_to_hydrogen, oscillator4d_energy, residual_halving, substitution_identity,
    ChannelSpec, SpinChannel,
};
use wigner_ks::ks::sample_invariants;
use wigner_ks::spectral::lowest_eigenvalues;
use wigner_ks::wigner::{
    build_state, mixed_basis, rayleigh_quotient, sector_problem, verify_osp12,
    verify_wh_algebra, wigner_energy, wigner_energy_exact, Residual,
};
use wigner_ks::{RadialGrid, WignerParams, DEFAULT_SEED};

const SECTOR_TOL: f64 = 5e-3;
const OSC4D_TOL: f64 = 5e-3;
const HYDROGEN_TOL: f64 = 2e-3;
const RESIDUAL_TOL: f64 = 1e-5;
const RATIO_RANGE: (f64, f64) = (3.0, 5.0);
const KS_TOL: f64 = 1e-12;
const MAPPING_TOL: f64 = 5e-3;
const SUBSTITUTION_TOL: f64 = 1e-12;

const OSC_X_MAX: f64 = 12.0;
const OSC_N: usize = 4000;
const HYDROGEN_N: usize = 6000;
const HYDROGEN_X_MAX: f64 = 100.0;
/// Base grid for the residual criterion; two halvings follow.
const RESIDUAL_N: usize = 32000;
/// `ρ_max = RESIDUAL_X_MAX_BASE + 20·N`. The Dirichlet cut leaves a term
/// `u(ρ_max)/(2h²)` that grows under refinement, so the box must be wide
/// enough for it to stay below the O(h²) part on the finest grid.
const RESIDUAL_X_MAX_BASE: f64 = 60.0;

fn report(id: u32, name: &str, passed: bool, elapsed: Duration, budget: Option<Duration>, detail: String) {
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let verdict = if passed && in_time { "PASS" } else { "FAIL" };
    let budget = budget.map_or(String::new(), |b| format!(" / budget {:.0?}", b));
    println!("[{verdict}] {id}. {name}: {detail} ({:.2?}{budget})", elapsed);
    assert!(passed, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} exceeded its time budget");
}

#[test]
fn c1_wigner_rayleigh_quotients() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for ell in 0..=2 {
        let p = WignerParams::from_integer(ell).unwrap();
        for n in 0..=6 {
            let psi = build_state(&p, n).unwrap();
            let q = rayleigh_quotient(&p, &psi).unwrap();
            checked += 1;
            if q != wigner_energy_exact(&p, n) {
                mismatches.push(format!("l={ell} n={n}: {q}"));
            }
        }
    }
    report(
        1,
        "exact Rayleigh quotients equal l+3/2+n",
        mismatches.is_empty(),
        start.elapsed(),
        Some(Duration::from_secs(5)),
        format!("{checked} states, mismatches {mismatches:?}"),
    );
}

#[test]
fn c2_algebra_closure() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut relations = 0;
    for ell in 0..=3 {
        let p = WignerParams::from_integer(ell).unwrap();
        let basis = mixed_basis(&p);
        assert_eq!(basis.len(), 10);
        let mut reports = verify_wh_algebra(&p, &basis);
        reports.extend(verify_osp12(&p, &basis));
        for r in &reports {
            relations += 1;
            let exact_zero = matches!(&r.residual, Residual::Exact(poly) if poly.is_zero());
            if !(r.passed && exact_zero) {
                failures.push(format!("l={ell} {}", r.relation));
            }
        }
    }
    report(
        2,
        "WH algebra and osp(1|2) residuals vanish exactly",
        failures.is_empty(),
        start.elapsed(),
        Some(Duration::from_secs(5)),
        format!("{relations} relation checks on 10-state bases, failures {failures:?}"),
    );
}

#[test]
fn c3_sector_spectra() {
    let start = Instant::now();
    let grid = RadialGrid::dirichlet(OSC_X_MAX, OSC_N).unwrap();
    let mut worst = 0.0f64;
    for ell in 0..=2 {
        let vals = lowest_eigenvalues(&sector_problem(ell as f64), &grid, 4).unwrap();
        for (m, v) in vals.iter().enumerate() {
            worst = worst.max((v - wigner_energy(ell as f64, 2 * m as u32)).abs());
        }
    }
    report(
        3,
        "grid spectra of H-(l) match l+3/2+2m",
        worst <= SECTOR_TOL,
        start.elapsed(),
        Some(Duration::from_secs(10)),
        format!("max error {worst:.3e} <= {SECTOR_TOL:e}"),
    );
}

#[test]
fn c4_constrained_oscillator() {
    let start = Instant::now();
    let grid = RadialGrid::dirichlet(OSC_X_MAX, OSC_N).unwrap();
    let mut worst = 0.0f64;
    for ell in 0..=2 {
        let problem = build_oscillator4d_problem(&ChannelSpec::bosonic(ell, SpinChannel::Plus)).unwrap();
        let vals = lowest_eigenvalues(&problem, &grid, 3).unwrap();
        for (m, v) in vals.iter().enumerate() {
            worst = worst.max((v - oscillator4d_energy(ell, m as u32)).abs());
        }
    }
    report(
        4,
        "4D oscillator channels match 2l+2+2m",
        worst <= OSC4D_TOL,
        start.elapsed(),
        Some(Duration::from_secs(20)),
        format!("max error {worst:.3e} <= {OSC4D_TOL:e}"),
    );
}

#[test]
fn c5_hydrogen_spectrum() {
    let start = Instant::now();
    let grid = RadialGrid::dirichlet(HYDROGEN_X_MAX, HYDROGEN_N).unwrap();
    let mut worst = 0.0f64;
    let mut formula_ok = true;
    for ell in 0..=2u32 {
        let levels = (4 - ell) as usize;
        let vals = lowest_eigenvalues(&build_hydrogen_problem(ell), &grid, levels).unwrap();
        for (m, v) in vals.iter().enumerate() {
            let n = ell + m as u32 + 1;
            worst = worst.max((v - n as f64).abs());
            for z in [1.0, 2.0, 3.0] {
                let mapped = map_to_hydrogen(2.0 * n as f64, z, 0.0).unwrap();
                formula_ok &= mapped.e_a == -z * z / (2.0 * (n * n) as f64);
                formula_ok &= mapped.e_a == hydrogen_energy(z, n);
            }
        }
    }
    for n in 1..=4 {
        let level = assemble_level(1.0, n).unwrap();
        formula_ok &= level.len() == n as usize && level.iter().all(|l| l.energy == hydrogen_energy(1.0, n));
    }
    report(
        5,
        "hydrogen grid eigenvalues give lambda = N",
        worst <= HYDROGEN_TOL && formula_ok,
        start.elapsed(),
        Some(Duration::from_secs(30)),
        format!("max |lambda - N| {worst:.3e} <= {HYDROGEN_TOL:e}, energy formula exact: {formula_ok}"),
    );
}

#[test]
fn c6_eigenfunction_residuals() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut ratios = (f64::INFINITY, f64::NEG_INFINITY);
    for ell in 0..=3u32 {
        for m in 0..=3u32 {
            let n = ell + m + 1;
            let grid = RadialGrid::dirichlet(RESIDUAL_X_MAX_BASE + 20.0 * n as f64, RESIDUAL_N).unwrap();
            let (coarse, fine, ratio) = residual_halving(ell, m, &grid).unwrap();
            let (_, _, ratio2) = residual_halving(ell, m, &grid.refined()).unwrap();
            worst = worst.max(coarse).max(fine);
            for r in [ratio, ratio2] {
                ratios = (ratios.0.min(r), ratios.1.max(r));
            }
        }
    }
    let in_range = ratios.0 >= RATIO_RANGE.0 && ratios.1 <= RATIO_RANGE.1;
    report(
        6,
        "closed-form residuals are small and second order",
        worst <= RESIDUAL_TOL && in_range,
        start.elapsed(),
        None,
        format!(
            "max residual {worst:.3e} <= {RESIDUAL_TOL:e} (n = {RESIDUAL_N}), halving ratios in [{:.3}, {:.3}]",
            ratios.0, ratios.1
        ),
    );
}

#[test]
fn c7_ks_invariants() {
    let start = Instant::now();
    let summary = sample_invariants(100_000, DEFAULT_SEED);
    let worst = summary.max_deviation();
    report(
        7,
        "KS invariants over 1e5 seeded samples",
        summary.samples == 100_000 && worst <= KS_TOL,
        start.elapsed(),
        Some(Duration::from_secs(5)),
        format!(
            "norm {:.1e}, projection {:.1e}, omega {:.1e}, su2 {:.1e}; max {worst:.1e} <= {KS_TOL:e}",
            summary.four_norm.max(summary.projected_norm).max(summary.spinor_norm),
            summary.projection_mismatch,
            summary.omega_drift,
            summary.su2_drift
        ),
    );
}

#[test]
fn c8_mapping_identity() {
    let start = Instant::now();
    let osc_grid = RadialGrid::dirichlet(OSC_X_MAX, OSC_N).unwrap();
    let hyd_grid = RadialGrid::dirichlet(HYDROGEN_X_MAX, HYDROGEN_N).unwrap();
    let mut worst_gap = 0.0f64;
    let mut worst_pointwise = 0.0f64;
    for ell in 0..=2u32 {
        let problem = build_oscillator4d_problem(&ChannelSpec::bosonic(ell, SpinChannel::Plus)).unwrap();
        let e = lowest_eigenvalues(&problem, &osc_grid, 3).unwrap();
        let l = lowest_eigenvalues(&build_hydrogen_problem(ell), &hyd_grid, 3).unwrap();
        for m in 0..3 {
            worst_gap = worst_gap.max((l[m] - e[m] / 2.0).abs());
            let seed = DEFAULT_SEED + (ell * 3 + m as u32) as u64;
            worst_pointwise = worst_pointwise.max(substitution_identity(ell, m as u32, 100, 4.0, seed));
        }
    }
    report(
        8,
        "oscillator and hydrogen problems agree under s^2 = rho",
        worst_gap <= MAPPING_TOL && worst_pointwise <= SUBSTITUTION_TOL,
        start.elapsed(),
        None,
        format!(
            "max |lambda - E/2| {worst_gap:.3e} <= {MAPPING_TOL:e}, pointwise {worst_pointwise:.1e} <= {SUBSTITUTION_TOL:e}"
        ),
    );
}

#[test]
fn c9_block_coefficient() {
    let start = Instant::now();
    let bad: Vec<u32> = (0..=10)
        .filter(|&ell| ChannelSpec::bosonic(ell, SpinChannel::Plus).centrifugal_numerator() != hw_upper_block_numerator(ell))
        .collect();
    report(
        9,
        "4l(l+1)+3/4 = (2l+1/2)(2l+3/2) exactly",
        bad.is_empty(),
        start.elapsed(),
        None,
        format!("l = 0..=10, mismatches {bad:?}"),
    );
}

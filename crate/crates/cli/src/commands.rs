use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use num::ToPrimitive;
use wigner_ks::hydrogen::{
    angular_l2_check, build_hydrogen_problem, build_oscillator4d_problem, constraint_reduction_check,
    hw_upper_block_numerator, hydrogen_energy, hydrogen_x_max, map_to_hydrogen, oscillator4d_energy,
    substitution_identity, ChannelSpec, HydrogenError, MappingResult, SpinChannel,
};
use wigner_ks::ks::sample_invariants;
use wigner_ks::special::{spherical_harmonic, RadialEigenfunction, RadialKind};
use wigner_ks::spectral::{discretize, EigenPair, GridMeta, SpectrumRow};
use wigner_ks::wigner::{
    build_state, ell_from_f64, mixed_basis, rayleigh_quotient, sector_problem, verify_osp12,
    verify_wh_algebra, wigner_energy, AlgebraReport, Residual,
};
use wigner_ks::{RadialGrid, SpectrumReport, SpinorPoly, SturmLiouvilleProblem, WignerParams};

use crate::args::{Channel, Method, RadialArg, SpectrumKind, Suite};
use crate::config::{RunConfig, DEFAULT_OSC_X_MAX};
use crate::output::{float, opt_float, Report, Table};
use crate::CliError;

pub const SPECTRUM_FD_TOL: f64 = 5e-3;
pub const HYDROGEN_TOL: f64 = 2e-3;
pub const MAPPING_TOL: f64 = 5e-3;
pub const KS_TOL: f64 = 1e-12;
const SUBSTITUTION_TOL: f64 = 1e-12;
const ANGULAR_TOL: f64 = 1e-5;
const CONSTRAINT_STEP: f64 = 1e-3;
const CONSTRAINT_SAMPLES: usize = 200;
const DEFAULT_LEVELS: usize = 4;
const DEFAULT_KS_SAMPLES: usize = 100_000;

fn grid(length: f64, n: usize) -> Result<RadialGrid, CliError> {
    RadialGrid::dirichlet(length, n).map_err(|e| CliError::Usage(e.to_string()))
}

fn solve(problem: &SturmLiouvilleProblem, grid: &RadialGrid, k: usize, seed: u64) -> Result<Vec<(EigenPair, f64)>, CliError> {
    if k > grid.n {
        return Err(CliError::Usage(format!("{k} levels requested on a {}-point grid", grid.n)));
    }
    let disc = discretize(problem, grid)?;
    let pairs = disc.solve_seeded(k, seed)?;
    Ok(pairs
        .into_iter()
        .map(|p| {
            let r = disc.relative_residual(p.value, &p.vector);
            (p, r)
        })
        .collect())
}

impl Report for SpectrumReport {
    fn table(&self) -> Table {
        let with_residual = self.rows.iter().any(|r| r.residual.is_some());
        let with_energy = self.rows.iter().any(|r| r.energy.is_some());
        let mut header = vec!["level", "numeric", "analytic", "abs_error"];
        if with_residual {
            header.push("residual");
        }
        if with_energy {
            header.extend(["principal", "energy"]);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![r.level.to_string(), float(r.numeric), float(r.analytic), float(r.abs_error)];
                if with_residual {
                    row.push(opt_float(r.residual));
                }
                if with_energy {
                    row.push(r.principal.map(|n| n.to_string()).unwrap_or_default());
                    row.push(opt_float(r.energy));
                }
                row
            })
            .collect();
        Table { header, rows }
    }

    fn passed(&self) -> bool {
        SpectrumReport::passed(self)
    }
}

pub fn spectrum(kind: SpectrumKind, cfg: &RunConfig) -> Result<SpectrumReport, CliError> {
    let levels = cfg.levels.unwrap_or(DEFAULT_LEVELS);
    if levels == 0 {
        return Err(CliError::Usage("--levels must be at least 1".into()));
    }
    match kind {
        SpectrumKind::Wigner => wigner_spectrum(levels, cfg),
        SpectrumKind::Oscillator4d => oscillator_spectrum(levels, cfg),
        SpectrumKind::Hydrogen => hydrogen_spectrum(levels, cfg),
    }
}

fn wigner_spectrum(levels: usize, cfg: &RunConfig) -> Result<SpectrumReport, CliError> {
    let ell = cfg.ell.unwrap_or(0.0);
    if !(ell.is_finite() && ell > -1.0) {
        return Err(CliError::Usage(format!("--ell must exceed -1, got {ell}")));
    }
    let method = cfg.method.unwrap_or(Method::Exact);
    let label = format!("H(l={ell})");
    match method {
        Method::Exact => {
            let integer = cfg.integer_ell()?;
            let params = WignerParams::from_integer(integer as i64)?;
            let rows = (0..levels as u32)
                .into_par_iter()
                .map(|n| {
                    let psi = build_state(&params, n)?;
                    let q = rayleigh_quotient(&params, &psi)?;
                    let numeric = q.to_f64().unwrap_or(f64::NAN);
                    Ok(SpectrumRow::new(n, numeric, wigner_energy(ell, n)))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(SpectrumReport {
                kind: "wigner".into(),
                label,
                method: "exact".into(),
                tolerance: cfg.tolerance.unwrap_or(0.0),
                grid: None,
                rows,
            })
        }
        Method::Fd => {
            let g = grid(cfg.x_max.unwrap_or(DEFAULT_OSC_X_MAX), cfg.grid_n)?;
            let per_sector = levels.div_ceil(2);
            let bosonic = solve(&sector_problem(ell), &g, per_sector, cfg.seed)?;
            let fermionic = solve(&sector_problem(ell + 1.0), &g, levels / 2, cfg.seed)?;
            let rows = (0..levels)
                .map(|n| {
                    let (pair, residual) = if n % 2 == 0 { &bosonic[n / 2] } else { &fermionic[n / 2] };
                    let mut row = SpectrumRow::new(n as u32, pair.value, wigner_energy(ell, n as u32));
                    row.residual = Some(*residual);
                    row
                })
                .collect();
            Ok(SpectrumReport {
                kind: "wigner".into(),
                label,
                method: "fd".into(),
                tolerance: cfg.tolerance.unwrap_or(SPECTRUM_FD_TOL),
                grid: Some(GridMeta::from(&g)),
                rows,
            })
        }
    }
}

fn oscillator_spectrum(levels: usize, cfg: &RunConfig) -> Result<SpectrumReport, CliError> {
    fd_only(cfg)?;
    let ell = cfg.integer_ell()?;
    let spin = match cfg.channel.unwrap_or(Channel::Plus) {
        Channel::Plus => SpinChannel::Plus,
        Channel::Minus => SpinChannel::Minus,
    };
    let ch = ChannelSpec::bosonic(ell, spin);
    let problem = build_oscillator4d_problem(&ch)?;
    let g = grid(cfg.x_max.unwrap_or(DEFAULT_OSC_X_MAX), cfg.grid_n)?;
    let rows = solve(&problem, &g, levels, cfg.seed)?
        .into_iter()
        .enumerate()
        .map(|(m, (pair, residual))| {
            let mut row = SpectrumRow::new(m as u32, pair.value, ch.analytic_energy(m as u32));
            row.residual = Some(residual);
            row
        })
        .collect();
    Ok(SpectrumReport {
        kind: "oscillator4d".into(),
        label: problem.label.clone(),
        method: "fd".into(),
        tolerance: cfg.tolerance.unwrap_or(SPECTRUM_FD_TOL),
        grid: Some(GridMeta::from(&g)),
        rows,
    })
}

fn hydrogen_spectrum(levels: usize, cfg: &RunConfig) -> Result<SpectrumReport, CliError> {
    fd_only(cfg)?;
    let ell = cfg.integer_ell()?;
    let z = cfg.z();
    let tolerance = cfg.tolerance.unwrap_or(HYDROGEN_TOL);
    let n_max = ell + levels as u32;
    let problem = build_hydrogen_problem(ell);
    let g = grid(cfg.x_max.unwrap_or_else(|| hydrogen_x_max(n_max)), cfg.grid_n)?;
    let rows = solve(&problem, &g, levels, cfg.seed)?
        .into_iter()
        .enumerate()
        .map(|(m, (pair, residual))| {
            let n = ell + m as u32 + 1;
            let mapped = match map_to_hydrogen(2.0 * pair.value, z, tolerance) {
                Ok(r) | Err(HydrogenError::NonIntegerLambda(r)) => r,
                Err(e) => return Err(CliError::from(e)),
            };
            let mut row = SpectrumRow::new(m as u32, pair.value, n as f64);
            row.residual = Some(residual);
            row.principal = Some(mapped.n);
            row.energy = Some(mapped.e_a);
            Ok(row)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SpectrumReport {
        kind: "hydrogen".into(),
        label: format!("{} Z={z}", problem.label),
        method: "fd".into(),
        tolerance,
        grid: Some(GridMeta::from(&g)),
        rows,
    })
}

fn fd_only(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.method == Some(Method::Exact) {
        return Err(CliError::Usage("--method exact is only available for the wigner spectrum".into()));
    }
    Ok(())
}

/// One line of a verification suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub suite: String,
    pub relation: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl CheckRow {
    fn numeric(suite: &str, relation: &str, value: f64, tolerance: f64, detail: String) -> Self {
        Self {
            suite: suite.into(),
            relation: relation.into(),
            value,
            tolerance,
            passed: value <= tolerance,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping: Option<MappingResult>,
}

impl Report for VerifyReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["suite", "relation", "value", "tolerance", "passed", "detail"],
            rows: self
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.clone(),
                        c.relation.clone(),
                        float(c.value),
                        float(c.tolerance),
                        c.passed.to_string(),
                        c.detail.clone(),
                    ]
                })
                .collect(),
        }
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn max_coefficient(p: &SpinorPoly) -> f64 {
    p.upper
        .coeffs()
        .iter()
        .chain(p.lower.coeffs())
        .map(|c| c.to_f64().abs())
        .fold(0.0, f64::max)
}

fn algebra_rows(suite: &str, ell: f64, reports: Vec<AlgebraReport>) -> Vec<CheckRow> {
    reports
        .into_iter()
        .map(|r| {
            let (value, detail) = match &r.residual {
                Residual::Exact(p) if p.is_zero() => (0.0, format!("exact zero on {} states, l={ell}", r.checked)),
                Residual::Exact(p) => (max_coefficient(p), format!("residual {p}")),
                Residual::Numeric(v) => (v.abs(), format!("numeric residual {v}")),
            };
            CheckRow {
                suite: suite.into(),
                relation: r.relation,
                value,
                tolerance: 0.0,
                passed: r.passed,
                detail,
            }
        })
        .collect()
}

fn wigner_params(cfg: &RunConfig) -> Result<(f64, WignerParams), CliError> {
    let ell = cfg.ell.unwrap_or(0.0);
    let exact = ell_from_f64(ell).ok_or_else(|| CliError::Usage(format!("--ell {ell} is not a finite number")))?;
    Ok((ell, WignerParams::new(exact)?))
}

pub fn verify(suite: Suite, cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let mut checks = Vec::new();
    let mut mapping = None;
    let run_algebra = matches!(suite, Suite::Algebra | Suite::All);
    let run_osp = matches!(suite, Suite::Osp12 | Suite::All);
    if run_algebra || run_osp {
        let (ell, params) = wigner_params(cfg)?;
        let basis = mixed_basis(&params);
        if run_algebra {
            checks.extend(algebra_rows("algebra", ell, verify_wh_algebra(&params, &basis)));
        }
        if run_osp {
            checks.extend(algebra_rows("osp12", ell, verify_osp12(&params, &basis)));
        }
    }
    if matches!(suite, Suite::Ks | Suite::All) {
        checks.extend(ks_checks(cfg));
    }
    if matches!(suite, Suite::Mapping | Suite::All) {
        let (rows, result) = mapping_checks(cfg)?;
        checks.extend(rows);
        mapping = Some(result);
    }
    let name = match suite {
        Suite::Algebra => "algebra",
        Suite::Osp12 => "osp12",
        Suite::Ks => "ks",
        Suite::Mapping => "mapping",
        Suite::All => "all",
    };
    Ok(VerifyReport {
        suite: name.into(),
        seed: cfg.seed,
        checks,
        mapping,
    })
}

fn ks_checks(cfg: &RunConfig) -> Vec<CheckRow> {
    let samples = cfg.samples.unwrap_or(DEFAULT_KS_SAMPLES);
    let s = sample_invariants(samples, cfg.seed);
    let detail = format!("{} samples, seed {}", s.samples, cfg.seed);
    let mut rows: Vec<CheckRow> = [
        ("sum y^2 = s^2", s.four_norm),
        ("z^dagger z = s^2", s.spinor_norm),
        ("|rho| = s^2", s.projected_norm),
        ("z^dagger sigma z = spherical form", s.projection_mismatch),
        ("rho independent of omega", s.omega_drift),
        ("omega -> omega + 2pi flips z, keeps rho", s.fiber_sign),
        ("z^dagger z invariant under SU(2)", s.su2_drift),
    ]
    .into_iter()
    .map(|(relation, v)| CheckRow::numeric("ks", relation, v, KS_TOL, detail.clone()))
    .collect();

    let y10 = |t: f64, p: f64| spherical_harmonic(1, 0, t, p).map(|y| y.re).unwrap_or(f64::NAN);
    let y22 = |t: f64, p: f64| spherical_harmonic(2, 2, t, p).map(|y| y.re).unwrap_or(f64::NAN);
    let step = format!("{CONSTRAINT_SAMPLES} points, step {CONSTRAINT_STEP}");
    rows.push(CheckRow::numeric(
        "ks",
        "omega terms vanish on constant",
        constraint_reduction_check(|_, _| 1.0, CONSTRAINT_SAMPLES, CONSTRAINT_STEP),
        0.0,
        step.clone(),
    ));
    rows.push(CheckRow::numeric(
        "ks",
        "omega terms vanish on Y_1^0",
        constraint_reduction_check(y10, CONSTRAINT_SAMPLES, CONSTRAINT_STEP),
        1e-6,
        step.clone(),
    ));
    rows.push(CheckRow::numeric(
        "ks",
        "omega terms vanish on Re Y_2^2",
        constraint_reduction_check(y22, CONSTRAINT_SAMPLES, CONSTRAINT_STEP),
        1e-5,
        step,
    ));
    rows
}

fn mapping_checks(cfg: &RunConfig) -> Result<(Vec<CheckRow>, MappingResult), CliError> {
    let ell = cfg.integer_ell()?;
    let m = cfg.m.unwrap_or(0);
    let z = cfg.z();
    let tolerance = cfg.tolerance.unwrap_or(MAPPING_TOL);
    let n = ell + m + 1;
    let e_osc = oscillator4d_energy(ell, m);
    let result = match map_to_hydrogen(e_osc, z, tolerance) {
        Ok(r) | Err(HydrogenError::NonIntegerLambda(r)) => r,
        Err(e) => return Err(e.into()),
    };
    let summary = format!(
        "E_osc={} lambda={} N={} E_a={} alpha={}",
        result.e_osc, result.lambda, result.n, result.e_a, result.alpha
    );
    let mut rows = vec![
        CheckRow::numeric("mapping", "lambda = E_osc/2 is an integer", result.lambda_defect, tolerance, summary),
        CheckRow::numeric(
            "mapping",
            "E_a = -Z^2/(2N^2)",
            (result.e_a - hydrogen_energy(z, n)).abs(),
            0.0,
            format!("N = l+m+1 = {n}"),
        ),
        CheckRow::numeric(
            "mapping",
            "lambda = Z/sqrt(-2E_a)",
            (result.lambda_from_energy() - result.lambda).abs(),
            1e-12,
            String::new(),
        ),
    ];

    let osc_grid = grid(DEFAULT_OSC_X_MAX, cfg.grid_n)?;
    let hyd_grid = grid(hydrogen_x_max(n), cfg.grid_n)?;
    let level = m as usize + 1;
    let ch = ChannelSpec::bosonic(ell, SpinChannel::Plus);
    let (osc, hyd) = rayon::join(
        || solve(&build_oscillator4d_problem(&ch)?, &osc_grid, level, cfg.seed),
        || solve(&build_hydrogen_problem(ell), &hyd_grid, level, cfg.seed),
    );
    let (e_fd, l_fd) = (osc?[m as usize].0.value, hyd?[m as usize].0.value);
    rows.push(CheckRow::numeric(
        "mapping",
        "grid lambda = grid E_osc / 2",
        (l_fd - e_fd / 2.0).abs(),
        tolerance,
        format!("E_grid={e_fd} lambda_grid={l_fd} n={}", cfg.grid_n),
    ));
    rows.push(CheckRow::numeric(
        "mapping",
        "R(s) = psi(rho = s^2)",
        substitution_identity(ell, m, 100, 4.0, cfg.seed),
        SUBSTITUTION_TOL,
        "100 seeded points".into(),
    ));
    let angular = (-(ell as i32)..=ell as i32)
        .map(|mz| angular_l2_check(ell, mz, 100))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0, f64::max);
    rows.push(CheckRow::numeric(
        "mapping",
        "L^2 Y = l(l+1) Y",
        angular,
        ANGULAR_TOL,
        "theta in [0.2, pi-0.2]".into(),
    ));
    let block_equal = ch.centrifugal_numerator() == hw_upper_block_numerator(ell);
    rows.push(CheckRow {
        suite: "mapping".into(),
        relation: "4l(l+1)+3/4 = (2l+1/2)(2l+3/2)".into(),
        value: if block_equal { 0.0 } else { 1.0 },
        tolerance: 0.0,
        passed: block_equal,
        detail: format!("exact, value {}", ch.centrifugal_numerator()),
    });
    Ok((rows, result))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenMeta {
    pub kind: RadialKind,
    pub ell: u32,
    pub m: u32,
    pub eigenvalue: f64,
    pub analytic_eigenvalue: f64,
    pub scale: f64,
    pub seed: u64,
    pub grid: GridMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenRow {
    pub x: f64,
    pub analytic: f64,
    pub numeric: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionReport {
    pub meta: EigenMeta,
    pub rows: Vec<EigenRow>,
}

impl Report for EigenfunctionReport {
    fn table(&self) -> Table {
        Table {
            header: vec!["x", "analytic", "numeric", "abs_diff"],
            rows: self
                .rows
                .iter()
                .map(|r| vec![float(r.x), float(r.analytic), float(r.numeric), float(r.abs_diff)])
                .collect(),
        }
    }

    fn passed(&self) -> bool {
        true
    }
}

/// Piecewise-linear interpolation of nodal values; linear extrapolation
/// below the first node and a linear drop to zero at the Dirichlet end.
fn interpolate(grid: &RadialGrid, values: &[f64], x: f64) -> f64 {
    let n = values.len();
    let end = grid.length();
    if x >= end {
        return 0.0;
    }
    if x >= grid.x_max {
        return values[n - 1] * (end - x) / grid.h;
    }
    let t = (x - grid.x_min) / grid.h;
    let j = (t.floor().max(0.0) as usize).min(n - 2);
    let frac = t - j as f64;
    values[j] + (values[j + 1] - values[j]) * frac
}

pub fn eigenfunction(kind: RadialArg, cfg: &RunConfig) -> Result<EigenfunctionReport, CliError> {
    let ell = cfg.integer_ell()?;
    let m = cfg.m.unwrap_or(0);
    let points = cfg.points.unwrap_or(100);
    if points < 2 {
        return Err(CliError::Usage(format!("--points must be at least 2, got {points}")));
    }
    let (kind, problem, default_range, default_x_max, analytic_value, power) = match kind {
        RadialArg::Oscillator4d => (
            RadialKind::Oscillator4D,
            build_oscillator4d_problem(&ChannelSpec::bosonic(ell, SpinChannel::Plus))?,
            (0.0, 5.0),
            DEFAULT_OSC_X_MAX,
            oscillator4d_energy(ell, m),
            1.5,
        ),
        RadialArg::Hydrogen => (
            RadialKind::Hydrogen,
            build_hydrogen_problem(ell),
            (0.0, 20.0),
            hydrogen_x_max(ell + m + 1),
            (ell + m + 1) as f64,
            1.0,
        ),
    };
    let (start, end) = cfg.range.unwrap_or(default_range);
    let g = grid(cfg.x_max.unwrap_or(default_x_max.max(end)), cfg.grid_n)?;
    let pairs = solve(&problem, &g, m as usize + 1, cfg.seed)?;
    let pair = &pairs[m as usize].0;
    // u = x^power · f, so divide it back out.
    let nodal: Vec<f64> = g
        .nodes()
        .iter()
        .zip(&pair.vector)
        .map(|(x, u)| u / x.powf(power))
        .collect();
    let exact = RadialEigenfunction::new(kind, ell, m);
    let xs: Vec<f64> = (1..=points)
        .map(|i| start + (end - start) * i as f64 / points as f64)
        .collect();
    let analytic: Vec<f64> = xs.iter().map(|&x| exact.eval(x)).collect();
    let raw: Vec<f64> = xs.iter().map(|&x| interpolate(&g, &nodal, x)).collect();
    let num: f64 = analytic.iter().zip(&raw).map(|(a, r)| a * r).sum();
    let den: f64 = raw.iter().map(|r| r * r).sum();
    let scale = if den > 0.0 { num / den } else { 0.0 };
    let rows = xs
        .iter()
        .zip(analytic.iter().zip(&raw))
        .map(|(&x, (&a, &r))| {
            let numeric = scale * r;
            EigenRow {
                x,
                analytic: a,
                numeric,
                abs_diff: (a - numeric).abs(),
            }
        })
        .collect();
    Ok(EigenfunctionReport {
        meta: EigenMeta {
            kind,
            ell,
            m,
            eigenvalue: pair.value,
            analytic_eigenvalue: analytic_value,
            scale,
            seed: cfg.seed,
            grid: GridMeta::from(&g),
        },
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapReport {
    pub tolerance: f64,
    pub passed: bool,
    pub result: MappingResult,
}

impl Report for MapReport {
    fn table(&self) -> Table {
        let r = &self.result;
        Table {
            header: vec!["e_osc", "z", "lambda", "n", "lambda_defect", "e_a", "alpha", "passed"],
            rows: vec![vec![
                float(r.e_osc),
                float(r.z),
                float(r.lambda),
                r.n.to_string(),
                float(r.lambda_defect),
                float(r.e_a),
                float(r.alpha),
                self.passed.to_string(),
            ]],
        }
    }

    fn passed(&self) -> bool {
        self.passed
    }
}

pub fn map(cfg: &RunConfig) -> Result<MapReport, CliError> {
    let e_osc = match (cfg.e_osc, cfg.ell) {
        (Some(e), _) => e,
        (None, Some(_)) => oscillator4d_energy(cfg.integer_ell()?, cfg.m.unwrap_or(0)),
        (None, None) => return Err(CliError::Usage("map needs --e-osc or --ell/--m".into())),
    };
    let tolerance = cfg.tolerance.unwrap_or(MAPPING_TOL);
    match map_to_hydrogen(e_osc, cfg.z(), tolerance) {
        Ok(result) => Ok(MapReport {
            tolerance,
            passed: true,
            result,
        }),
        Err(HydrogenError::NonIntegerLambda(result)) => {
            eprintln!(
                "warning: lambda = {} is {} away from N = {}",
                result.lambda, result.lambda_defect, result.n
            );
            Ok(MapReport {
                tolerance,
                passed: false,
                result,
            })
        }
        Err(HydrogenError::NonPositive { name, value }) => {
            Err(CliError::Usage(format!("{name} must be positive, got {value}")))
        }
        Err(e) => Err(e.into()),
    }
}

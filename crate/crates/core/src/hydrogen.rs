//! Constrained 4D oscillator channels and their `s² = ρ` image, the
//! hydrogen-like radial problem.
//!
//! Radial operators are reduced to Sturm–Liouville form before they reach the
//! grid solver. In 4D, `u = s^(3/2) R` turns
//! `½[−(R″ + 3R′/s) + 4q/s² R + s² R]` into `−½u″ + [s²/2 + (4q + 3/4)/(2s²)] u`.
//! In 3D, `u = ρψ` turns the hydrogen form into
//! `−½u″ + [ℓ(ℓ+1)/(2ρ²) + 1/8] u = λ u/(2ρ)`.

use std::f64::consts::PI;
use std::fmt;

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{rat, ratio};
use crate::ks::{ks_project, spinor_from_four, FourVector, PhaseConvention};
use crate::special::{spherical_harmonic, RadialEigenfunction, RadialKind, SpecialError};
use crate::spectral::{discretize, RadialGrid, SpectralError, SturmLiouvilleProblem};
use crate::DEFAULT_SEED;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HydrogenError {
    #[error("the fermionic sector has no hydrogen channel; use the y₋ spin channel")]
    FermionicSector,
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("principal quantum number must be at least 1")]
    ZeroPrincipal,
    #[error("λ = {} is {} away from the nearest integer", .0.lambda, .0.lambda_defect)]
    NonIntegerLambda(MappingResult),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Upper (bosonic) or lower (fermionic) block of the super Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Bosonic,
    Fermionic,
}

/// Spin-spherical channel `y₊` or `y₋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinChannel {
    Plus,
    Minus,
}

impl fmt::Display for SpinChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinChannel::Plus => write!(f, "y+"),
            SpinChannel::Minus => write!(f, "y-"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub ell: u32,
    pub spin_channel: SpinChannel,
    pub sector: Sector,
}

impl ChannelSpec {
    pub fn new(ell: u32, spin_channel: SpinChannel, sector: Sector) -> Self {
        Self {
            ell,
            spin_channel,
            sector,
        }
    }

    pub fn bosonic(ell: u32, spin_channel: SpinChannel) -> Self {
        Self::new(ell, spin_channel, Sector::Bosonic)
    }

    /// σ·L eigenvalue: `ℓ` on `y₊`, `−(ℓ+2)` on `y₋`.
    pub fn sigma_l(&self) -> i64 {
        let l = self.ell as i64;
        match self.spin_channel {
            SpinChannel::Plus => l,
            SpinChannel::Minus => -(l + 2),
        }
    }

    /// `q = σ·L (σ·L + 1)`.
    pub fn q(&self) -> i64 {
        let k = self.sigma_l();
        k * (k + 1)
    }

    /// `ℓ` on `y₊`, `ℓ + 1` on `y₋`; the orbital label that `q` belongs to.
    pub fn effective_ell(&self) -> u32 {
        match self.spin_channel {
            SpinChannel::Plus => self.ell,
            SpinChannel::Minus => self.ell + 1,
        }
    }

    /// `4q + 3/4`.
    pub fn centrifugal_numerator(&self) -> BigRational {
        rat(4 * self.q()) + ratio(3, 4)
    }

    /// `(4q + 3/4)/2`, the coefficient of `1/s²` after `u = s^(3/2) R`.
    pub fn centrifugal_coefficient(&self) -> BigRational {
        self.centrifugal_numerator() * ratio(1, 2)
    }

    /// `2ℓ' + 2 + 2m` with `ℓ'` the effective orbital label.
    pub fn analytic_energy(&self, m: u32) -> f64 {
        oscillator4d_energy(self.effective_ell(), m)
    }
}

/// `(2ℓ+½)(2ℓ+3/2)`, the upper-block barrier numerator of the super Wigner
/// Hamiltonian at parameter `2ℓ + ½`.
pub fn hw_upper_block_numerator(ell: u32) -> BigRational {
    let two_l = rat(2 * ell as i64);
    (&two_l + ratio(1, 2)) * (&two_l + ratio(3, 2))
}

/// Half of [`hw_upper_block_numerator`].
pub fn hw_upper_block_coefficient(ell: u32) -> BigRational {
    hw_upper_block_numerator(ell) * ratio(1, 2)
}

/// `2ℓ + 2 + 2m`.
pub fn oscillator4d_energy(ell: u32, m: u32) -> f64 {
    (2 * ell + 2 + 2 * m) as f64
}

/// `−Z²/(2N²)`.
pub fn hydrogen_energy(z: f64, n: u32) -> f64 {
    let n = n as f64;
    -z * z / (2.0 * n * n)
}

/// `V(s) = s²/2 + (4q + 3/4)/(2s²)`.
pub fn build_oscillator4d_problem(ch: &ChannelSpec) -> Result<SturmLiouvilleProblem, HydrogenError> {
    if ch.sector == Sector::Fermionic {
        return Err(HydrogenError::FermionicSector);
    }
    let c = crate::exact::rat_to_f64(&ch.centrifugal_coefficient());
    Ok(SturmLiouvilleProblem::new(
        format!("oscillator4d l={} {}", ch.ell, ch.spin_channel),
        move |s| 0.5 * s * s + c / (s * s),
    ))
}

/// `−½u″ + [ℓ(ℓ+1)/(2ρ²) + 1/8] u = λ w u` with `w = 1/(2ρ)`.
pub fn build_hydrogen_problem(ell: u32) -> SturmLiouvilleProblem {
    let barrier = 0.5 * (ell * (ell + 1)) as f64;
    SturmLiouvilleProblem::new(format!("hydrogen l={ell}"), move |r| barrier / (r * r) + 0.125)
        .with_weight(|r| 0.5 / r)
}

/// Default outer radius for hydrogen levels up to `n_max`: `max(60, 40 + 20·N)`.
pub fn hydrogen_x_max(n_max: u32) -> f64 {
    (40.0 + 20.0 * n_max as f64).max(60.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HydrogenLevel {
    pub z: f64,
    pub n: u32,
    pub ell: u32,
    pub m: u32,
    pub energy: f64,
}

/// Oscillator energy carried over to the hydrogen problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MappingResult {
    pub e_osc: f64,
    pub z: f64,
    pub lambda: f64,
    pub n: u32,
    /// `|λ − N|`.
    pub lambda_defect: f64,
    pub e_a: f64,
    pub alpha: f64,
}

impl MappingResult {
    /// `Z/√(−2E_a)`, which recovers `N`.
    pub fn lambda_from_energy(&self) -> f64 {
        self.z / (-2.0 * self.e_a).sqrt()
    }
}

/// `λ = E_osc/2`, `N = round(λ)`, `E_a = −Z²/(2N²)`, `α = √(−8E_a)`.
///
/// A defect above `tolerance` is reported as [`HydrogenError::NonIntegerLambda`]
/// carrying the full result.
pub fn map_to_hydrogen(e_osc: f64, z: f64, tolerance: f64) -> Result<MappingResult, HydrogenError> {
    if !(e_osc.is_finite() && e_osc > 0.0) {
        return Err(HydrogenError::NonPositive { name: "E_osc", value: e_osc });
    }
    if !(z.is_finite() && z > 0.0) {
        return Err(HydrogenError::NonPositive { name: "Z", value: z });
    }
    let lambda = e_osc / 2.0;
    let n = (lambda.round() as u32).max(1);
    let e_a = hydrogen_energy(z, n);
    let result = MappingResult {
        e_osc,
        z,
        lambda,
        n,
        lambda_defect: (lambda - n as f64).abs(),
        e_a,
        alpha: (-8.0 * e_a).sqrt(),
    };
    if result.lambda_defect > tolerance {
        Err(HydrogenError::NonIntegerLambda(result))
    } else {
        Ok(result)
    }
}

/// The `N` pairs `(ℓ, m = N−1−ℓ)` sharing the energy `−Z²/(2N²)`.
pub fn assemble_level(z: f64, n: u32) -> Result<Vec<HydrogenLevel>, HydrogenError> {
    if n == 0 {
        return Err(HydrogenError::ZeroPrincipal);
    }
    let energy = hydrogen_energy(z, n);
    Ok((0..n)
        .map(|ell| HydrogenLevel {
            z,
            n,
            ell,
            m: n - 1 - ell,
            energy,
        })
        .collect())
}

/// `‖(A − λW)u‖/‖u‖` for the sampled closed-form `u = ρψ` at `λ = ℓ+m+1`.
pub fn residual_check(ell: u32, m: u32, grid: &RadialGrid) -> Result<f64, HydrogenError> {
    let disc = discretize(&build_hydrogen_problem(ell), grid)?;
    let psi = RadialEigenfunction::new(RadialKind::Hydrogen, ell, m);
    let u: Vec<f64> = grid.nodes().iter().map(|&r| r * psi.eval(r)).collect();
    Ok(disc.relative_residual((ell + m + 1) as f64, &u))
}

/// Residual at `grid` and at half spacing, and their ratio.
pub fn residual_halving(ell: u32, m: u32, grid: &RadialGrid) -> Result<(f64, f64, f64), HydrogenError> {
    let coarse = residual_check(ell, m, grid)?;
    let fine = residual_check(ell, m, &grid.refined())?;
    Ok((coarse, fine, coarse / fine))
}

/// 4D point at unit radius for the half-angle parametrization.
fn unit_four(theta: f64, phi: f64, omega: f64) -> FourVector {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let minus = (phi - omega) / 2.0;
    let plus = (phi + omega) / 2.0;
    FourVector([c * minus.cos(), c * minus.sin(), s * plus.cos(), s * plus.sin()])
}

/// Pulls `f(θ, φ)` back to the 3-sphere through the KS projection, so the
/// ω-dependence is whatever the map leaves behind.
fn lifted<F: Fn(f64, f64) -> f64>(f: &F, theta: f64, phi: f64, omega: f64) -> f64 {
    let z = spinor_from_four(&unit_four(theta, phi, omega), PhaseConvention::Conjugated);
    let (t, p) = ks_project(&z).angles();
    f(t, p)
}

/// Max over seeded sample points of the gap between the full angular bracket
/// (with its ω-derivative terms) applied to the lifted `f`, and the restricted
/// bracket applied to `f` itself. Both use central differences with step `h`.
pub fn constraint_reduction_check<F>(test_fn: F, samples: usize, h: f64) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let points: Vec<(f64, f64, f64)> = (0..samples)
        .map(|_| {
            (
                rng.gen_range(0.2..PI - 0.2),
                rng.gen_range(0.0..2.0 * PI),
                rng.gen_range(0.0..4.0 * PI),
            )
        })
        .collect();
    let h2 = h * h;
    points
        .par_iter()
        .map(|&(t, p, w)| {
            let g = |t: f64, p: f64, w: f64| lifted(&test_fn, t, p, w);
            let sin = t.sin();
            let polar = |f: &dyn Fn(f64) -> f64| {
                ((t + h / 2.0).sin() * (f(t + h) - f(t)) - (t - h / 2.0).sin() * (f(t) - f(t - h)))
                    / (h2 * sin)
            };
            let full_theta = polar(&|x| g(x, p, w));
            let full_phi = (g(t, p + h, w) - 2.0 * g(t, p, w) + g(t, p - h, w)) / (h2 * sin * sin);
            let d_ww = (g(t, p, w + h) - 2.0 * g(t, p, w) + g(t, p, w - h)) / h2;
            let d_pw = (g(t, p + h, w + h) - g(t, p + h, w - h) - g(t, p - h, w + h)
                + g(t, p - h, w - h))
                / (4.0 * h2);
            let full = full_theta + full_phi + (2.0 * t.cos() * d_pw + d_ww) / (sin * sin);

            let restricted_theta = polar(&|x| test_fn(x, p));
            let restricted_phi =
                (test_fn(t, p + h) - 2.0 * test_fn(t, p) + test_fn(t, p - h)) / (h2 * sin * sin);
            (full - restricted_theta - restricted_phi).abs()
        })
        .reduce(|| 0.0, f64::max)
}

/// Max over `θ ∈ [0.2, π−0.2]` of `|L²Y − l(l+1)Y|`, relative to
/// `max |l(l+1)Y|`; the polar part by central differences, the azimuthal part
/// as `mz²/sin²θ`. Returns the absolute error when `l = 0`.
pub fn angular_l2_check(l: u32, mz: i32, samples: usize) -> Result<f64, HydrogenError> {
    const STEP: f64 = 1e-3;
    spherical_harmonic(l, mz, 1.0, 0.0)?;
    let theta_part = |t: f64| spherical_harmonic(l, mz, t, 0.0).map(|y| y.re).unwrap_or(0.0);
    let eigen = (l * (l + 1)) as f64;
    let m2 = (mz * mz) as f64;
    let count = samples.max(2);
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for i in 0..count {
        let t = 0.2 + (PI - 0.4) * i as f64 / (count - 1) as f64;
        let sin = t.sin();
        let y = theta_part(t);
        let polar = ((t + STEP / 2.0).sin() * (theta_part(t + STEP) - y)
            - (t - STEP / 2.0).sin() * (y - theta_part(t - STEP)))
            / (STEP * STEP * sin);
        let l2 = -polar + m2 / (sin * sin) * y;
        worst = worst.max((l2 - eigen * y).abs());
        scale = scale.max((eigen * y).abs());
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

/// Max over seeded points `s ∈ (0, s_max)` of the gap between the 4D radial
/// eigenfunction at `s` and the hydrogen one at `ρ = s²`.
pub fn substitution_identity(ell: u32, m: u32, points: usize, s_max: f64, seed: u64) -> f64 {
    let osc = RadialEigenfunction::new(RadialKind::Oscillator4D, ell, m);
    let hyd = RadialEigenfunction::new(RadialKind::Hydrogen, ell, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..points)
        .map(|_| {
            let s: f64 = rng.gen_range(0.0..s_max);
            let a = osc.eval(s);
            let b = hyd.eval(s * s);
            (a - b).abs() / a.abs().max(b.abs()).max(1.0)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::lowest_eigenvalues;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn channel_eigenvalues() {
        let plus = ChannelSpec::bosonic(2, SpinChannel::Plus);
        let minus = ChannelSpec::bosonic(2, SpinChannel::Minus);
        assert_eq!((plus.sigma_l(), plus.q()), (2, 6));
        assert_eq!((minus.sigma_l(), minus.q()), (-4, 12));
        assert_eq!(ChannelSpec::bosonic(0, SpinChannel::Minus).q(), 2);
        assert_eq!(minus.effective_ell(), 3);
        assert_eq!(minus.analytic_energy(0), 8.0);
    }

    #[test]
    fn block_coefficient_matches() {
        for ell in 0..=10 {
            let ch = ChannelSpec::bosonic(ell, SpinChannel::Plus);
            assert_eq!(ch.centrifugal_numerator(), hw_upper_block_numerator(ell));
            assert_eq!(ch.centrifugal_coefficient(), hw_upper_block_coefficient(ell));
        }
        assert_eq!(hw_upper_block_numerator(0), ratio(3, 4));
        assert_eq!(hw_upper_block_numerator(1), ratio(35, 4));
    }

    #[test]
    fn energies() {
        assert_eq!(oscillator4d_energy(0, 0), 2.0);
        assert_eq!(oscillator4d_energy(1, 2), 8.0);
        for l in 0..5 {
            for m in 0..5 {
                assert_eq!(oscillator4d_energy(l, m) % 2.0, 0.0);
            }
        }
        assert_eq!(hydrogen_energy(1.0, 1), -0.5);
        assert_eq!(hydrogen_energy(1.0, 2), -0.125);
        assert_eq!(hydrogen_energy(2.0, 2), -0.5);
    }

    #[test]
    fn oscillator_channels_on_grid() {
        let grid = RadialGrid::dirichlet(12.0, 4000).unwrap();
        let cases = [
            (ChannelSpec::bosonic(0, SpinChannel::Plus), vec![2.0, 4.0]),
            (ChannelSpec::bosonic(1, SpinChannel::Plus), vec![4.0]),
            (ChannelSpec::bosonic(0, SpinChannel::Minus), vec![4.0]),
        ];
        for (ch, expected) in cases {
            let vals = lowest_eigenvalues(&build_oscillator4d_problem(&ch).unwrap(), &grid, expected.len()).unwrap();
            for (v, e) in vals.iter().zip(&expected) {
                assert!(close(*v, *e, 5e-3), "{ch:?}: {v} vs {e}");
            }
        }
        let f = ChannelSpec::new(0, SpinChannel::Minus, Sector::Fermionic);
        assert_eq!(build_oscillator4d_problem(&f).unwrap_err(), HydrogenError::FermionicSector);
    }

    #[test]
    fn hydrogen_on_grid() {
        let grid = RadialGrid::dirichlet(60.0, 6000).unwrap();
        let vals = lowest_eigenvalues(&build_hydrogen_problem(0), &grid, 3).unwrap();
        for (k, v) in vals.iter().enumerate() {
            assert!(close(*v, (k + 1) as f64, 2e-3), "{v}");
        }
        let p = lowest_eigenvalues(&build_hydrogen_problem(1), &grid, 1).unwrap();
        assert!(close(p[0], 2.0, 2e-3));
    }

    #[test]
    fn mapping_examples() {
        let r = map_to_hydrogen(2.0, 1.0, 1e-9).unwrap();
        assert_eq!((r.lambda, r.n, r.e_a, r.alpha), (1.0, 1, -0.5, 2.0));
        assert_eq!(r.lambda_from_energy(), 1.0);
        let r = map_to_hydrogen(8.0, 1.0, 1e-9).unwrap();
        assert_eq!((r.n, r.e_a), (4, -1.0 / 32.0));
        assert_eq!(map_to_hydrogen(2.0, 2.0, 1e-9).unwrap().e_a, -2.0);
        match map_to_hydrogen(3.0, 1.0, 1e-3) {
            Err(HydrogenError::NonIntegerLambda(r)) => assert_eq!(r.lambda_defect, 0.5),
            other => panic!("{other:?}"),
        }
        assert!(map_to_hydrogen(-1.0, 1.0, 1e-3).is_err());
        assert!(map_to_hydrogen(2.0, 0.0, 1e-3).is_err());
    }

    #[test]
    fn levels() {
        let one = assemble_level(1.0, 1).unwrap();
        assert_eq!((one.len(), one[0].ell, one[0].m), (1, 0, 0));
        let three: Vec<(u32, u32)> = assemble_level(1.0, 3).unwrap().iter().map(|l| (l.ell, l.m)).collect();
        assert_eq!(three, vec![(0, 2), (1, 1), (2, 0)]);
        let four = assemble_level(1.5, 4).unwrap();
        assert_eq!(four.len(), 4);
        assert!(four.iter().all(|l| l.energy == -1.5 * 1.5 / 32.0 && l.ell + l.m + 1 == 4));
        assert_eq!(assemble_level(1.0, 0), Err(HydrogenError::ZeroPrincipal));
    }

    #[test]
    fn residual_is_second_order() {
        // Leading truncation term of the three-point Laplacian is h²/24·u⁗,
        // and for u = ρ e^(−ρ/2), u⁗ = e^(−ρ/2)(ρ/16 − 1/2).
        let grid = RadialGrid::dirichlet(60.0, 4000).unwrap();
        let r = residual_check(0, 0, &grid).unwrap();
        let nodes = grid.nodes();
        let u4: f64 = nodes.iter().map(|r| ((-r / 2.0).exp() * (r / 16.0 - 0.5)).powi(2)).sum();
        let u: f64 = nodes.iter().map(|r| (r * (-r / 2.0).exp()).powi(2)).sum();
        let predicted = grid.h * grid.h / 24.0 * (u4 / u).sqrt();
        assert!((r / predicted - 1.0).abs() < 1e-2, "{r} vs {predicted}");
        let fine = RadialGrid::dirichlet(60.0, 8000).unwrap();
        assert!(residual_check(0, 0, &fine).unwrap() <= 1e-6);
        assert!(residual_check(2, 1, &grid).unwrap() <= 1e-5);
        let (_, _, ratio) = residual_halving(0, 3, &RadialGrid::dirichlet(80.0, 4000).unwrap()).unwrap();
        assert!((3.0..=5.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn constraint_reduction() {
        assert_eq!(constraint_reduction_check(|_, _| 1.0, 50, 1e-3), 0.0);
        let y10 = |t: f64, p: f64| spherical_harmonic(1, 0, t, p).unwrap().re;
        assert!(constraint_reduction_check(y10, 200, 1e-3) <= 1e-6);
        let y22 = |t: f64, p: f64| spherical_harmonic(2, 2, t, p).unwrap().re;
        assert!(constraint_reduction_check(y22, 200, 1e-3) <= 1e-5);
    }

    #[test]
    fn angular_eigenvalues() {
        assert_eq!(angular_l2_check(0, 0, 100).unwrap(), 0.0);
        assert!(angular_l2_check(1, 0, 100).unwrap() <= 1e-6);
        assert!(angular_l2_check(2, 1, 100).unwrap() <= 1e-5);
        assert!(angular_l2_check(3, -2, 100).unwrap() <= 1e-5);
        assert!(angular_l2_check(1, 2, 10).is_err());
    }

    #[test]
    fn substitution_holds() {
        for ell in 0..=3 {
            for m in 0..=3 {
                assert!(substitution_identity(ell, m, 100, 4.0, DEFAULT_SEED) <= 1e-12);
            }
        }
    }

    #[test]
    fn mapped_spectra_agree() {
        let osc_grid = RadialGrid::dirichlet(12.0, 4000).unwrap();
        let hyd_grid = RadialGrid::dirichlet(100.0, 10000).unwrap();
        for ell in 0..=1 {
            let e = lowest_eigenvalues(
                &build_oscillator4d_problem(&ChannelSpec::bosonic(ell, SpinChannel::Plus)).unwrap(),
                &osc_grid,
                2,
            )
            .unwrap();
            let l = lowest_eigenvalues(&build_hydrogen_problem(ell), &hyd_grid, 2).unwrap();
            for (e, l) in e.iter().zip(&l) {
                assert!(close(*l, e / 2.0, 5e-3), "{l} vs {e}/2");
            }
        }
    }
}

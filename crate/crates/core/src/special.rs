//! Special functions: generalized Laguerre polynomials, spherical harmonics
//! and the closed-form radial eigenfunctions of the 4D oscillator and the
//! hydrogen atom.

use std::f64::consts::PI;

use num::complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialError {
    #[error("Laguerre parameter must exceed -1, got {0}")]
    LaguerreAlpha(f64),
    #[error("|m| = {mz} exceeds degree l = {l}")]
    OrderExceedsDegree { l: u32, mz: i32 },
    #[error("polar angle {0} outside [0, π]")]
    PolarAngle(f64),
}

/// `L^α_m(x)` by the upward three-term recurrence
/// `(k+1)L_{k+1} = (2k+1+α−x)L_k − (k+α)L_{k−1}`.
pub fn laguerre(alpha: f64, m: u32, x: f64) -> Result<f64, SpecialError> {
    if alpha <= -1.0 || alpha.is_nan() {
        return Err(SpecialError::LaguerreAlpha(alpha));
    }
    Ok(laguerre_unchecked(alpha, m, x))
}

fn laguerre_unchecked(alpha: f64, m: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut curr = 1.0 + alpha - x;
    for k in 1..m {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadialKind {
    /// `R(s) = s^(2ℓ) e^(−s²/2) L^(2ℓ+1)_m(s²)`
    Oscillator4D,
    /// `ψ(ρ) = ρ^ℓ e^(−ρ/2) L^(2ℓ+1)_m(ρ)`
    Hydrogen,
}

/// Unnormalized closed-form radial eigenfunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialEigenfunction {
    pub ell: u32,
    pub m: u32,
    pub kind: RadialKind,
}

impl RadialEigenfunction {
    pub fn new(kind: RadialKind, ell: u32, m: u32) -> Self {
        Self { ell, m, kind }
    }

    /// Value at `t` (`s` for the oscillator, `ρ` for hydrogen).
    pub fn eval(&self, t: f64) -> f64 {
        let alpha = (2 * self.ell + 1) as f64;
        match self.kind {
            RadialKind::Oscillator4D => {
                let rho = t * t;
                t.powi(2 * self.ell as i32) * (-0.5 * rho).exp() * laguerre_unchecked(alpha, self.m, rho)
            }
            RadialKind::Hydrogen => {
                t.powi(self.ell as i32) * (-0.5 * t).exp() * laguerre_unchecked(alpha, self.m, t)
            }
        }
    }

    /// Power of the radial variable in the volume element: `s³ ds` in 4D,
    /// `ρ² dρ` in 3D.
    pub fn measure_power(&self) -> i32 {
        match self.kind {
            RadialKind::Oscillator4D => 3,
            RadialKind::Hydrogen => 2,
        }
    }

    /// Numerical norm `(∫₀^t_max f(t)² t^k dt)^(1/2)` by composite Simpson.
    pub fn norm(&self, t_max: f64, intervals: usize) -> f64 {
        let n = intervals + intervals % 2;
        let h = t_max / n as f64;
        let k = self.measure_power();
        let g = |t: f64| {
            let f = self.eval(t);
            f * f * t.powi(k)
        };
        let mut sum = g(0.0) + g(t_max);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * g(i as f64 * h);
        }
        (sum * h / 3.0).sqrt()
    }
}

/// Associated Legendre `P_l^m(x)` for `m ≥ 0` with the Condon–Shortley
/// phase, by upward recurrence in `l`.
pub fn associated_legendre(l: u32, m: u32, x: f64) -> f64 {
    if m > l {
        return 0.0;
    }
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

fn ylm_norm(l: u32, m: u32) -> f64 {
    // sqrt((2l+1)/(4π) · (l−m)!/(l+m)!) without forming factorials
    let ratio: f64 = ((l - m + 1)..=(l + m)).map(|k| 1.0 / k as f64).product();
    ((2 * l + 1) as f64 / (4.0 * PI) * ratio).sqrt()
}

/// Orthonormal `Y_l^m(θ, φ)` with the Condon–Shortley phase.
pub fn spherical_harmonic(l: u32, mz: i32, theta: f64, phi: f64) -> Result<Complex64, SpecialError> {
    if mz.unsigned_abs() > l {
        return Err(SpecialError::OrderExceedsDegree { l, mz });
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(SpecialError::PolarAngle(theta));
    }
    let m = mz.unsigned_abs();
    let value = ylm_norm(l, m) * associated_legendre(l, m, theta.cos());
    let y = Complex64::from_polar(value, m as f64 * phi);
    Ok(if mz < 0 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        y.conj() * sign
    } else {
        y
    })
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` (Newton iteration on `P_n`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `∫ f(θ,φ) dΩ` with a Gauss–Legendre rule in `cos θ` and the trapezoid
/// rule in `φ` (exact for trigonometric polynomials below `n_phi`).
pub fn sphere_quadrature<F>(n_theta: usize, n_phi: usize, f: F) -> Complex64
where
    F: Fn(f64, f64) -> Complex64,
{
    let (nodes, weights) = gauss_legendre(n_theta);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(&weights) {
        let theta = x.acos();
        for j in 0..n_phi {
            total += f(theta, j as f64 * dphi) * (w * dphi);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: f64, k: u32) -> f64 {
        (0..k).map(|i| (n - i as f64) / (i + 1) as f64).product()
    }

    /// Series `Σ_k (−1)^k C(m+α, m−k) x^k / k!`.
    fn laguerre_series(alpha: f64, m: u32, x: f64) -> f64 {
        let mut sum = 0.0;
        let mut xk_over_kfact = 1.0;
        for k in 0..=m {
            if k > 0 {
                xk_over_kfact *= x / k as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * binomial(m as f64 + alpha, m - k) * xk_over_kfact;
        }
        sum
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(2.5, 0, 3.7).unwrap(), 1.0);
        assert_eq!(laguerre(1.0, 1, 1.0).unwrap(), 1.0);
        assert!((laguerre(3.0, 2, 0.0).unwrap() - 10.0).abs() < 1e-14);
        assert!((laguerre_series(3.0, 2, 0.0) - 10.0).abs() < 1e-14);
        assert_eq!(laguerre(-1.0, 2, 1.0), Err(SpecialError::LaguerreAlpha(-1.0)));
    }

    #[test]
    fn laguerre_matches_series() {
        for alpha in [1.0, 3.0, 5.0] {
            for m in 0..=8 {
                for i in 0..=60 {
                    let x = 0.5 * i as f64;
                    let rec = laguerre(alpha, m, x).unwrap();
                    let ser = laguerre_series(alpha, m, x);
                    let scale = ser.abs().max(1.0);
                    assert!((rec - ser).abs() <= 1e-10 * scale, "α={alpha} m={m} x={x}: {rec} vs {ser}");
                }
            }
        }
    }

    #[test]
    fn radial_examples() {
        let h00 = RadialEigenfunction::new(RadialKind::Hydrogen, 0, 0);
        assert!((h00.eval(2.0) - (-1.0f64).exp()).abs() < 1e-15);
        let h01 = RadialEigenfunction::new(RadialKind::Hydrogen, 0, 1);
        assert_eq!(h01.eval(2.0), 0.0);
        let o10 = RadialEigenfunction::new(RadialKind::Oscillator4D, 1, 0);
        assert!((o10.eval(1.0) - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn hydrogen_nodes_count_radial_index() {
        for ell in 0..4 {
            for m in 0..5 {
                let f = RadialEigenfunction::new(RadialKind::Hydrogen, ell, m);
                let rho_max = 4.0 * (ell + m + 1) as f64 + 20.0;
                let n = 20_000;
                let mut changes = 0;
                let mut prev = f.eval(rho_max / n as f64);
                for i in 2..=n {
                    let v = f.eval(rho_max * i as f64 / n as f64);
                    if v != 0.0 && prev != 0.0 && v.signum() != prev.signum() {
                        changes += 1;
                    }
                    if v != 0.0 {
                        prev = v;
                    }
                }
                assert_eq!(changes, m, "ℓ={ell} m={m}");
            }
        }
    }

    #[test]
    fn radial_norm_of_ground_states() {
        // ∫ ρ² e^(−ρ) dρ = 2, ∫ s³ e^(−s²) ds = 1/2
        let h = RadialEigenfunction::new(RadialKind::Hydrogen, 0, 0);
        assert!((h.norm(60.0, 20_000) - 2f64.sqrt()).abs() < 1e-10);
        let o = RadialEigenfunction::new(RadialKind::Oscillator4D, 0, 0);
        assert!((o.norm(12.0, 20_000) - 0.5f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(64);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        let x10: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((x10 - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn spherical_harmonic_examples() {
        let y00 = spherical_harmonic(0, 0, 1.1, 2.2).unwrap();
        assert!((y00.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15 && y00.im == 0.0);
        assert!(spherical_harmonic(1, 0, PI / 2.0, 0.3).unwrap().norm() < 1e-16);
        assert!(spherical_harmonic(1, 2, 0.3, 0.3).is_err());
        assert!(spherical_harmonic(1, 0, -0.1, 0.3).is_err());
        // Y₁¹ = −√(3/8π) sinθ e^(iφ)
        let y11 = spherical_harmonic(1, 1, 0.7, 0.4).unwrap();
        let expected = Complex64::from_polar(-(3.0 / (8.0 * PI)).sqrt() * 0.7f64.sin(), 0.4);
        assert!((y11 - expected).norm() < 1e-15);
    }

    #[test]
    fn y21_is_normalized() {
        let norm = sphere_quadrature(64, 64, |t, p| {
            let y = spherical_harmonic(2, 1, t, p).unwrap();
            Complex64::new(y.norm_sqr(), 0.0)
        });
        assert!((norm.re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gram_matrix_is_identity() {
        let mut labels = Vec::new();
        for l in 0..=3u32 {
            for m in -(l as i32)..=(l as i32) {
                labels.push((l, m));
            }
        }
        for &(l1, m1) in &labels {
            for &(l2, m2) in &labels {
                let g = sphere_quadrature(32, 16, |t, p| {
                    spherical_harmonic(l1, m1, t, p).unwrap().conj() * spherical_harmonic(l2, m2, t, p).unwrap()
                });
                let expected = if (l1, m1) == (l2, m2) { 1.0 } else { 0.0 };
                assert!((g - Complex64::new(expected, 0.0)).norm() < 1e-8, "({l1},{m1}) ({l2},{m2})");
            }
        }
    }
}

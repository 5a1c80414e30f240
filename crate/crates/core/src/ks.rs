//! Kustaanheimo–Stiefel geometry.
//!
//! A point of ℝ⁴ is written in hyperspherical coordinates `(s, θ, φ, ω)` with
//! half angles, packed into an SU(2) spinor `(z₁, z₂)`, and projected to ℝ³
//! with the Pauli bilinear `ρᵢ = z†σᵢz`. The projection forgets the fiber
//! angle `ω` and squares the radius: `|ρ| = s²`.
//!
//! Phase convention: with `z₁ = y₁ + i·y₂` the product `z₁*z₂` carries the
//! phase `e^(iω)` instead of `e^(iφ)`, so `ρ₁, ρ₂` would follow `ω` and ignore
//! `φ`. [`PhaseConvention::Conjugated`] (the default) uses `z₁ = y₁ − i·y₂`,
//! which gives `z₁*z₂ = (s²/2) sinθ e^(iφ)` and the usual spherical form of
//! `ρ`. [`PhaseConvention::Literal`] keeps the other pairing for comparison.

use std::f64::consts::PI;

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KsError {
    #[error("{name} = {value} outside [{min}, {max}]")]
    Range {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("matrix is not in SU(2): |U†U − 1| = {unitarity:.3e}, |det U − 1| = {det:.3e}")]
    NotUnitary { unitarity: f64, det: f64 },
}

/// `(s, θ, φ, ω)` with `s ≥ 0`, `θ ∈ [0, π]`, `φ ∈ [0, 2π]`, `ω ∈ [0, 4π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperCoords {
    s: f64,
    theta: f64,
    phi: f64,
    omega: f64,
}

fn check(name: &'static str, value: f64, min: f64, max: f64) -> Result<(), KsError> {
    if value >= min && value <= max {
        Ok(())
    } else {
        Err(KsError::Range {
            name,
            value,
            min,
            max,
        })
    }
}

impl HyperCoords {
    pub fn new(s: f64, theta: f64, phi: f64, omega: f64) -> Result<Self, KsError> {
        check("s", s, 0.0, f64::INFINITY)?;
        check("theta", theta, 0.0, PI)?;
        check("phi", phi, 0.0, 2.0 * PI)?;
        check("omega", omega, 0.0, 4.0 * PI)?;
        Ok(Self {
            s,
            theta,
            phi,
            omega,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self, KsError> {
        Self::new(self.s, self.theta, self.phi, omega)
    }

    /// Uniform sample with `s ∈ [0, s_max]` and every angle over its range.
    pub fn sample<R: Rng>(rng: &mut R, s_max: f64) -> Self {
        Self {
            s: rng.gen_range(0.0..=s_max),
            theta: rng.gen_range(0.0..=PI),
            phi: rng.gen_range(0.0..=2.0 * PI),
            omega: rng.gen_range(0.0..=4.0 * PI),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|y| y * y).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorZ {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl SpinorZ {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Self { z1, z2 }
    }

    /// `z†z = |z₁|² + |z₂|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.z1, -self.z2)
    }

    pub fn apply(&self, u: &Su2Matrix) -> Self {
        let m = &u.0;
        Self::new(
            m[0][0] * self.z1 + m[0][1] * self.z2,
            m[1][0] * self.z1 + m[1][1] * self.z2,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThreeVector(pub [f64; 3]);

impl ThreeVector {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|r| r * r).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ThreeVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Polar and azimuthal angles, `φ` folded into `[0, 2π)`.
    pub fn angles(&self) -> (f64, f64) {
        let [x, y, z] = self.0;
        let r = self.norm();
        let theta = if r == 0.0 { 0.0 } else { (z / r).clamp(-1.0, 1.0).acos() };
        let phi = y.atan2(x).rem_euclid(2.0 * PI);
        (theta, phi)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConvention {
    /// `z₁ = y₁ − i y₂`; reproduces `ρ = s²(sinθ cosφ, sinθ sinφ, cosθ)`.
    #[default]
    Conjugated,
    /// `z₁ = y₁ + i y₂` as literally paired with the half-angle formulas.
    Literal,
}

/// The half-angle parametrization of ℝ⁴.
pub fn to_cartesian4(c: &HyperCoords) -> FourVector {
    let (ct, st) = ((c.theta / 2.0).cos(), (c.theta / 2.0).sin());
    let minus = (c.phi - c.omega) / 2.0;
    let plus = (c.phi + c.omega) / 2.0;
    FourVector([
        c.s * ct * minus.cos(),
        c.s * ct * minus.sin(),
        c.s * st * plus.cos(),
        c.s * st * plus.sin(),
    ])
}

/// `z₁ = s cos(θ/2) e^(−i(φ−ω)/2)`, `z₂ = s sin(θ/2) e^(i(φ+ω)/2)`.
pub fn to_spinor(c: &HyperCoords) -> SpinorZ {
    to_spinor_with(c, PhaseConvention::Conjugated)
}

pub fn to_spinor_with(c: &HyperCoords, convention: PhaseConvention) -> SpinorZ {
    spinor_from_four(&to_cartesian4(c), convention)
}

/// Pack Cartesian 4D components into a spinor.
pub fn spinor_from_four(y: &FourVector, convention: PhaseConvention) -> SpinorZ {
    let y = y.0;
    let z1 = match convention {
        PhaseConvention::Conjugated => Complex64::new(y[0], -y[1]),
        PhaseConvention::Literal => Complex64::new(y[0], y[1]),
    };
    SpinorZ::new(z1, Complex64::new(y[2], y[3]))
}

/// `ρᵢ = Σ_ab z*_a (σᵢ)_ab z_b`.
pub fn ks_project(z: &SpinorZ) -> ThreeVector {
    let cross = z.z1.conj() * z.z2;
    ThreeVector([
        2.0 * cross.re,
        2.0 * cross.im,
        z.z1.norm_sqr() - z.z2.norm_sqr(),
    ])
}

/// `ρ = s²` along `(sinθ cosφ, sinθ sinφ, cosθ)`.
pub fn spherical3(c: &HyperCoords) -> ThreeVector {
    let rho = c.s * c.s;
    ThreeVector([
        rho * c.theta.sin() * c.phi.cos(),
        rho * c.theta.sin() * c.phi.sin(),
        rho * c.theta.cos(),
    ])
}

/// A 2×2 complex matrix expected to lie in SU(2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2Matrix(pub [[Complex64; 2]; 2]);

impl Su2Matrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self([[one, zero], [zero, one]])
    }

    /// `diag(e^(iα), e^(−iα))`.
    pub fn phase(alpha: f64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self([
            [Complex64::from_polar(1.0, alpha), zero],
            [zero, Complex64::from_polar(1.0, -alpha)],
        ])
    }

    /// `[[a+ib, c+id], [−c+id, a−ib]]` from a unit quaternion `(a, b, c, d)`.
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let [a, b, c, d] = q;
        Self([
            [Complex64::new(a, b), Complex64::new(c, d)],
            [Complex64::new(-c, d), Complex64::new(a, -b)],
        ])
    }

    /// Uniform on SU(2): a normalized Gaussian 4-vector.
    pub fn sample<R: Rng>(rng: &mut R) -> Self {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-6 {
                return Self::from_quaternion(q.map(|x| x / n));
            }
        }
    }

    /// `(max |U†U − 1|, |det U − 1|)`.
    pub fn defects(&self) -> (f64, f64) {
        let m = &self.0;
        let mut unitarity: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let entry = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
                let target = if i == j { 1.0 } else { 0.0 };
                unitarity = unitarity.max((entry - target).norm());
            }
        }
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        (unitarity, (det - 1.0).norm())
    }
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // Box–Muller; one variate per call is plenty here
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// `|(Uz)†(Uz) − z†z|` after checking `U ∈ SU(2)` to `1e−12`.
pub fn su2_invariance_check(z: &SpinorZ, u: &Su2Matrix) -> Result<f64, KsError> {
    let (unitarity, det) = u.defects();
    if unitarity > 1e-12 || det > 1e-12 {
        return Err(KsError::NotUnitary { unitarity, det });
    }
    Ok((z.apply(u).norm_sqr() - z.norm_sqr()).abs())
}

/// Maximum deviations found by [`sample_invariants`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KsInvariantSummary {
    pub samples: usize,
    /// `max |Σyᵢ² − s²|`
    pub four_norm: f64,
    /// `max ||z|² − s²|`
    pub spinor_norm: f64,
    /// `max ||ρ| − s²|`
    pub projected_norm: f64,
    /// `max |ks_project(to_spinor(c)) − spherical3(c)|∞`
    pub projection_mismatch: f64,
    /// `max |ρ(ω) − ρ(ω′)|∞` at fixed `(s, θ, φ)`
    pub omega_drift: f64,
    /// `max |z(ω+2π) + z(ω)|` and the matching `ρ` difference
    pub fiber_sign: f64,
    /// `max |(Uz)†(Uz) − z†z|`
    pub su2_drift: f64,
}

impl KsInvariantSummary {
    pub fn max_deviation(&self) -> f64 {
        [
            self.four_norm,
            self.spinor_norm,
            self.projected_norm,
            self.projection_mismatch,
            self.omega_drift,
            self.fiber_sign,
            self.su2_drift,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn merge(self, o: Self) -> Self {
        Self {
            samples: self.samples + o.samples,
            four_norm: self.four_norm.max(o.four_norm),
            spinor_norm: self.spinor_norm.max(o.spinor_norm),
            projected_norm: self.projected_norm.max(o.projected_norm),
            projection_mismatch: self.projection_mismatch.max(o.projection_mismatch),
            omega_drift: self.omega_drift.max(o.omega_drift),
            fiber_sign: self.fiber_sign.max(o.fiber_sign),
            su2_drift: self.su2_drift.max(o.su2_drift),
        }
    }
}

const SHARD: usize = 4096;
const S_MAX: f64 = 2.0;

/// Check every geometric invariant on `samples` seeded random points.
///
/// Samples are cut into fixed-size shards, each driven by its own ChaCha
/// stream, so the result does not depend on the thread count.
pub fn sample_invariants(samples: usize, seed: u64) -> KsInvariantSummary {
    let shards = samples.div_ceil(SHARD);
    (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard as u64);
            let count = SHARD.min(samples - shard * SHARD);
            let mut acc = KsInvariantSummary::default();
            for _ in 0..count {
                acc = acc.merge(check_one(&mut rng));
            }
            acc
        })
        .reduce(KsInvariantSummary::default, KsInvariantSummary::merge)
}

fn check_one<R: Rng>(rng: &mut R) -> KsInvariantSummary {
    let c = HyperCoords::sample(rng, S_MAX);
    let s2 = c.s * c.s;
    let z = to_spinor(&c);
    let rho = ks_project(&z);

    let other = c
        .with_omega(rng.gen_range(0.0..=4.0 * PI))
        .expect("sampled ω is in range");
    let omega_drift = rho.max_abs_diff(&ks_project(&to_spinor(&other)));

    let fiber_sign = if c.omega <= 2.0 * PI {
        let shifted = c.with_omega(c.omega + 2.0 * PI).expect("ω + 2π ≤ 4π");
        let zs = to_spinor(&shifted);
        let flip = (zs.z1 + z.z1).norm().max((zs.z2 + z.z2).norm());
        flip.max(rho.max_abs_diff(&ks_project(&zs)))
    } else {
        0.0
    };

    let u = Su2Matrix::sample(rng);
    let su2_drift = su2_invariance_check(&z, &u).expect("sampled matrix is special unitary");

    KsInvariantSummary {
        samples: 1,
        four_norm: (to_cartesian4(&c).norm_sqr() - s2).abs(),
        spinor_norm: (z.norm_sqr() - s2).abs(),
        projected_norm: (rho.norm() - s2).abs(),
        projection_mismatch: rho.max_abs_diff(&spherical3(&c)),
        omega_drift,
        fiber_sign,
        su2_drift,
    }
}

/// Spread of `ρ` over `ω ∈ [0, 4π]` at fixed `(s, θ, φ)` under a convention.
pub fn omega_spread(c: &HyperCoords, convention: PhaseConvention, steps: usize) -> f64 {
    let base = ks_project(&to_spinor_with(c, convention));
    (0..=steps)
        .map(|k| {
            let omega = 4.0 * PI * k as f64 / steps as f64;
            let moved = c.with_omega(omega).expect("ω in range");
            base.max_abs_diff(&ks_project(&to_spinor_with(&moved, convention)))
        })
        .fold(0.0, f64::max)
}

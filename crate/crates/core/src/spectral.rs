//! Grid eigensolver for radial Sturm–Liouville problems.
//!
//! `−½u″ + V(x)u = λ w(x) u` on a uniform grid with Dirichlet ends becomes a
//! symmetric tridiagonal pencil `A u = λ W u` with diagonal `W`. The lowest
//! eigenvalues come from bisection on Sturm sign counts and the eigenvectors
//! from two steps of inverse iteration. Eigenvalues are independent, so they
//! are extracted in parallel over a shared read-only system.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::DEFAULT_SEED;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("{what} is not finite at x = {x}")]
    SingularPotential { what: &'static str, x: f64 },
    #[error("diagonal has {diag} entries but off-diagonal has {off}")]
    ShapeMismatch { diag: usize, off: usize },
    #[error("requested {requested} eigenvalues from a system of size {size}")]
    TooManyEigenvalues { requested: usize, size: usize },
    #[error("bisection cannot be bracketed: non-finite matrix entries")]
    ConvergenceFailure,
    #[error("weight entry {index} is {value}, expected > 0")]
    NonPositiveWeight { index: usize, value: f64 },
}

/// `n` equally spaced nodes `x_j = x_min + j·h`, `h = (x_max − x_min)/(n − 1)`,
/// with implicit Dirichlet points at `x_min − h` and `x_max + h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
    pub h: f64,
}

impl RadialGrid {
    /// Interior nodes of the interval `(0, length)`: `h = length/(n+1)`,
    /// `x_min = h`, `x_max = length − h`.
    pub fn dirichlet(length: f64, n: usize) -> Result<Self, SpectralError> {
        if !(length.is_finite() && length > 0.0) {
            return Err(SpectralError::InvalidGrid(format!("length {length}")));
        }
        if n < 2 {
            return Err(SpectralError::InvalidGrid(format!("{n} nodes")));
        }
        let h = length / (n + 1) as f64;
        Ok(Self {
            x_min: h,
            x_max: length - h,
            n,
            h,
        })
    }

    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self, SpectralError> {
        if n < 2 || !(x_min.is_finite() && x_max.is_finite() && x_max > x_min && x_min > 0.0) {
            return Err(SpectralError::InvalidGrid(format!(
                "x_min = {x_min}, x_max = {x_max}, n = {n}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n,
            h: (x_max - x_min) / (n - 1) as f64,
        })
    }

    pub fn node(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Right Dirichlet point `x_max + h`.
    pub fn length(&self) -> f64 {
        self.x_max + self.h
    }

    /// Same interval with half the spacing.
    pub fn refined(&self) -> Self {
        let h = self.h / 2.0;
        Self {
            x_min: self.x_min - h,
            x_max: self.x_max + h,
            n: 2 * self.n + 1,
            h,
        }
    }
}

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `−½u″ + V(x)u = λ w(x) u` with Dirichlet ends; `w ≡ 1` when absent.
#[derive(Clone)]
pub struct SturmLiouvilleProblem {
    pub label: String,
    potential: ScalarFn,
    weight: Option<ScalarFn>,
}

impl fmt::Debug for SturmLiouvilleProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SturmLiouvilleProblem")
            .field("label", &self.label)
            .field("weighted", &self.weight.is_some())
            .finish()
    }
}

impl SturmLiouvilleProblem {
    pub fn new(label: impl Into<String>, potential: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            potential: Arc::new(potential),
            weight: None,
        }
    }

    pub fn with_weight(mut self, weight: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.weight = Some(Arc::new(weight));
        self
    }

    pub fn potential(&self, x: f64) -> f64 {
        (self.potential)(x)
    }

    pub fn weight(&self, x: f64) -> Option<f64> {
        self.weight.as_ref().map(|w| w(x))
    }

    pub fn is_weighted(&self) -> bool {
        self.weight.is_some()
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalSystem {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self, SpectralError> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(SpectralError::ShapeMismatch {
                diag: diag.len(),
                off: off.len(),
            });
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    fn is_finite(&self) -> bool {
        self.diag.iter().chain(&self.off).all(|v| v.is_finite())
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = self.off.get(i).map_or(0.0, |e| e.abs());
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.len() {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = self.off.get(i).map_or(0.0, |e| e.abs());
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, x: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE
            * self
                .off
                .iter()
                .map(|e| e * e)
                .fold(1.0, f64::max);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - x - e * e / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection down to
    /// adjacent floating-point numbers; the lower end of the final bracket is
    /// returned, so `sturm_count` there equals `index`.
    pub fn bisect(&self, index: usize) -> Result<f64, SpectralError> {
        if !self.is_finite() {
            return Err(SpectralError::ConvergenceFailure);
        }
        let (mut lo, hi0) = self.gershgorin();
        let mut hi = hi0 + 2.0 * f64::EPSILON * hi0.abs().max(lo.abs()) + f64::MIN_POSITIVE;
        for _ in 0..4096 {
            let mid = lo + (hi - lo) / 2.0;
            if mid <= lo || mid >= hi {
                return Ok(lo);
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(SpectralError::ConvergenceFailure)
    }

    /// Solve `(T − shift·I) x = rhs` by Gaussian elimination with partial
    /// pivoting; exactly singular pivots are nudged to `ε‖T‖`.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = f64::EPSILON * self.norm_inf().max(f64::MIN_POSITIVE);
        let mut d: Vec<f64> = self.diag.iter().map(|v| v - shift).collect();
        if n == 1 {
            let piv = if d[0] == 0.0 { tiny } else { d[0] };
            return vec![rhs[0] / piv];
        }
        let mut dl = self.off.clone();
        let mut du = self.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n - 1];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        let mut b = rhs.to_vec();
        for i in 0..n - 1 {
            if swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= dl[i] * b[i];
        }
        b[n - 1] /= d[n - 1];
        b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
        b
    }

    /// Two inverse-iteration steps at `lambda` from a seeded random start.
    fn eigenvector(&self, lambda: f64, seed: u64, stream: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut v: Vec<f64> = (0..self.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            v = self.solve_shifted(lambda, &v);
            normalize(&mut v);
        }
        fix_sign(&mut v);
        v
    }
}

fn normalize(v: &mut [f64]) {
    let norm = l2(v);
    if norm > 0.0 && norm.is_finite() {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// First non-negligible entry positive.
fn fix_sign(v: &mut [f64]) {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-8 * peak) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

pub(crate) fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit 2-norm, first significant entry positive.
    pub vector: Vec<f64>,
}

/// `k` smallest eigenpairs with the crate's default seed.
pub fn eigen_lowest(sys: &TridiagonalSystem, k: usize) -> Result<Vec<EigenPair>, SpectralError> {
    eigen_lowest_seeded(sys, k, DEFAULT_SEED)
}

pub fn eigen_lowest_seeded(
    sys: &TridiagonalSystem,
    k: usize,
    seed: u64,
) -> Result<Vec<EigenPair>, SpectralError> {
    if k > sys.len() {
        return Err(SpectralError::TooManyEigenvalues {
            requested: k,
            size: sys.len(),
        });
    }
    (0..k)
        .into_par_iter()
        .map(|i| {
            let value = sys.bisect(i)?;
            let vector = sys.eigenvector(value, seed, i as u64);
            Ok(EigenPair { value, vector })
        })
        .collect()
}

/// `A u = λ W u` through `W^(−1/2) A W^(−1/2)`; eigenvectors are mapped back
/// with `W^(−1/2)` and renormalized.
pub fn eigen_generalized(
    sys: &TridiagonalSystem,
    weight: &[f64],
    k: usize,
) -> Result<Vec<EigenPair>, SpectralError> {
    eigen_generalized_seeded(sys, weight, k, DEFAULT_SEED)
}

pub fn eigen_generalized_seeded(
    sys: &TridiagonalSystem,
    weight: &[f64],
    k: usize,
    seed: u64,
) -> Result<Vec<EigenPair>, SpectralError> {
    if weight.len() != sys.len() {
        return Err(SpectralError::ShapeMismatch {
            diag: sys.len(),
            off: weight.len(),
        });
    }
    if let Some((index, &value)) = weight
        .iter()
        .enumerate()
        .find(|(_, w)| !(w.is_finite() && **w > 0.0))
    {
        return Err(SpectralError::NonPositiveWeight { index, value });
    }
    let inv_sqrt: Vec<f64> = weight.iter().map(|w| 1.0 / w.sqrt()).collect();
    let diag = sys
        .diag
        .iter()
        .zip(weight)
        .map(|(d, w)| d / w)
        .collect();
    let off = sys
        .off
        .iter()
        .enumerate()
        .map(|(i, e)| e / (weight[i] * weight[i + 1]).sqrt())
        .collect();
    let congruent = TridiagonalSystem::new(diag, off)?;
    let mut pairs = eigen_lowest_seeded(&congruent, k, seed)?;
    for pair in &mut pairs {
        pair.vector
            .iter_mut()
            .zip(&inv_sqrt)
            .for_each(|(v, s)| *v *= s);
        normalize(&mut pair.vector);
    }
    Ok(pairs)
}

/// A problem sampled on a grid: `A` plus the optional weight diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Discretized {
    pub grid: RadialGrid,
    pub system: TridiagonalSystem,
    pub weight: Option<Vec<f64>>,
}

impl Discretized {
    pub fn solve(&self, k: usize) -> Result<Vec<EigenPair>, SpectralError> {
        self.solve_seeded(k, DEFAULT_SEED)
    }

    pub fn solve_seeded(&self, k: usize, seed: u64) -> Result<Vec<EigenPair>, SpectralError> {
        match &self.weight {
            Some(w) => eigen_generalized_seeded(&self.system, w, k, seed),
            None => eigen_lowest_seeded(&self.system, k, seed),
        }
    }

    /// `(A − λW) u`.
    pub fn residual_vector(&self, lambda: f64, u: &[f64]) -> Vec<f64> {
        let au = self.system.apply(u);
        au.iter()
            .enumerate()
            .map(|(i, a)| {
                let w = self.weight.as_ref().map_or(1.0, |w| w[i]);
                a - lambda * w * u[i]
            })
            .collect()
    }

    /// `‖(A − λW) u‖ / ‖u‖`.
    pub fn relative_residual(&self, lambda: f64, u: &[f64]) -> f64 {
        l2(&self.residual_vector(lambda, u)) / l2(u)
    }
}

/// Central differences: `d_j = 1/h² + V(x_j)`, `e_j = −1/(2h²)`.
pub fn discretize(problem: &SturmLiouvilleProblem, grid: &RadialGrid) -> Result<Discretized, SpectralError> {
    let inv_h2 = 1.0 / (grid.h * grid.h);
    let nodes = grid.nodes();
    let mut diag = Vec::with_capacity(grid.n);
    for &x in &nodes {
        let v = problem.potential(x);
        if !v.is_finite() {
            return Err(SpectralError::SingularPotential { what: "potential", x });
        }
        diag.push(inv_h2 + v);
    }
    let weight = if problem.is_weighted() {
        let mut w = Vec::with_capacity(grid.n);
        for &x in &nodes {
            let value = problem.weight(x).unwrap_or(1.0);
            if !value.is_finite() {
                return Err(SpectralError::SingularPotential { what: "weight", x });
            }
            w.push(value);
        }
        Some(w)
    } else {
        None
    };
    let off = vec![-0.5 * inv_h2; grid.n - 1];
    Ok(Discretized {
        grid: *grid,
        system: TridiagonalSystem::new(diag, off)?,
        weight,
    })
}

/// Lowest `k` eigenvalues of a problem on a grid.
pub fn lowest_eigenvalues(
    problem: &SturmLiouvilleProblem,
    grid: &RadialGrid,
    k: usize,
) -> Result<Vec<f64>, SpectralError> {
    let disc = discretize(problem, grid)?;
    Ok(disc.solve(k)?.into_iter().map(|p| p.value).collect())
}

/// `(λ(h) − λ(h/2)) / (λ(h/2) − λ(h/4))` per level; ≈ 4 for a second-order
/// scheme.
pub fn halving_ratios(
    problem: &SturmLiouvilleProblem,
    grid: &RadialGrid,
    k: usize,
) -> Result<Vec<f64>, SpectralError> {
    let fine = grid.refined();
    let finer = fine.refined();
    let a = lowest_eigenvalues(problem, grid, k)?;
    let b = lowest_eigenvalues(problem, &fine, k)?;
    let c = lowest_eigenvalues(problem, &finer, k)?;
    Ok((0..k).map(|i| (a[i] - b[i]) / (b[i] - c[i])).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    pub n: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub h: f64,
}

impl From<&RadialGrid> for GridMeta {
    fn from(g: &RadialGrid) -> Self {
        Self {
            n: g.n,
            x_min: g.x_min,
            x_max: g.x_max,
            h: g.h,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub level: u32,
    pub numeric: f64,
    pub analytic: f64,
    pub abs_error: f64,
    /// `‖Au − λWu‖/‖u‖` for grid eigenpairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    /// Principal quantum number for hydrogen rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<u32>,
    /// Mapped physical energy for hydrogen rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
}

impl SpectrumRow {
    pub fn new(level: u32, numeric: f64, analytic: f64) -> Self {
        Self {
            level,
            numeric,
            analytic,
            abs_error: (numeric - analytic).abs(),
            residual: None,
            principal: None,
            energy: None,
        }
    }
}

/// Computed eigenvalues next to their closed-form references.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub kind: String,
    pub label: String,
    pub method: String,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridMeta>,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumReport {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.numeric).collect()
    }

    pub fn max_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.abs_error <= self.tolerance)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].numeric < w[1].numeric)
    }
}

//! Verification toolkit for the Wigner–Heisenberg oscillator algebra and the
//! Kustaanheimo–Stiefel correspondence between the constrained 4D isotropic
//! oscillator and the hydrogen atom.
//!
//! The crate is layered:
//!
//! - [`exact`]: Gaussian-damped polynomials with coefficients in ℚ(√2) and
//!   half-line moments in ℚ(√π), so ladder-operator identities are checked as
//!   exact equalities.
//! - [`wigner`]: the super-realized ladder operators `a±(ℓ+1)`, the super
//!   Wigner Hamiltonian, the WH algebra and osp(1|2) closure checks, and
//!   ladder-built eigenstates.
//! - [`special`]: generalized Laguerre polynomials, spherical harmonics and
//!   the closed-form radial eigenfunctions.
//! - [`ks`]: hyperspherical coordinates, the spinor form and the KS bilinear
//!   projection to 3D.
//! - [`spectral`]: uniform-grid Sturm–Liouville discretization and a
//!   bisection / inverse-iteration eigensolver for symmetric tridiagonal
//!   (optionally diagonally weighted) systems.
//! - [`hydrogen`]: the 4D oscillator channels, the `s² = ρ` map to the
//!   hydrogen radial problem, and the identities tying the two together.

pub mod exact;
pub mod hydrogen;
pub mod ks;
pub mod special;
pub mod spectral;
pub mod wigner;

pub use exact::{ExtScalar, GaussianPoly, Moment, MomentScalar, SpinorPoly};
pub use spectral::{RadialGrid, SpectrumReport, SturmLiouvilleProblem, TridiagonalSystem};
pub use wigner::{LadderOp, LadderSign, WignerParams};

/// Default seed for every randomized routine in the crate.
pub const DEFAULT_SEED: u64 = 42;

//! Super-realized Wigner–Heisenberg ladder operators.
//!
//! For a parameter `ℓ` with `ℓ + 1 > 0` the operators are
//!
//! ```text
//! a±(ℓ+1) = (1/√2) { ±d/dx ± (ℓ+1)/x · Σ₃ − x } Σ₁
//! ```
//!
//! acting on two-component states. Both `±` signs follow the operator's sign.
//! The Hamiltonian `H = ½{a+, a−}` is block diagonal with blocks `H₋(ℓ)` and
//! `H₋(ℓ+1)`, where `H₋(ℓ) = ½(−d²/dx² + x² + ℓ(ℓ+1)/x²)`.

use num::{BigRational, One, Signed, ToPrimitive};
use thiserror::Error;

use crate::exact::{rat, ratio, ExactError, ExtScalar, GaussianPoly, Moment, SpinorPoly};
use crate::spectral::SturmLiouvilleProblem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WignerError {
    #[error("ℓ + 1 must be positive, got ℓ = {0}")]
    NonPositiveShift(BigRational),
    #[error("the ground state x^(ℓ+1) needs an integer ℓ, got ℓ = {0}")]
    NonIntegerEll(BigRational),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("expectation value is not a rational multiple of the norm")]
    IrrationalQuotient,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `ℓ` and the derived Wigner parameter `c = 2(ℓ+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WignerParams {
    ell: BigRational,
}

impl WignerParams {
    pub fn new(ell: BigRational) -> Result<Self, WignerError> {
        if (&ell + BigRational::one()).is_positive() {
            Ok(Self { ell })
        } else {
            Err(WignerError::NonPositiveShift(ell))
        }
    }

    pub fn from_integer(ell: i64) -> Result<Self, WignerError> {
        Self::new(rat(ell))
    }

    pub fn ell(&self) -> &BigRational {
        &self.ell
    }

    pub fn ell_f64(&self) -> f64 {
        self.ell.to_f64().unwrap_or(f64::NAN)
    }

    /// `ℓ + 1`, the argument written inside `a±(ℓ+1)`.
    pub fn shift(&self) -> BigRational {
        &self.ell + BigRational::one()
    }

    /// Wigner parameter `c = 2(ℓ+1)`.
    pub fn c(&self) -> BigRational {
        self.shift() * rat(2)
    }

    /// Parameters for `ℓ + 1`.
    pub fn next(&self) -> Self {
        Self {
            ell: self.shift(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderSign {
    Raising,
    Lowering,
}

impl LadderSign {
    fn unit(self) -> BigRational {
        match self {
            LadderSign::Raising => rat(1),
            LadderSign::Lowering => rat(-1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderOp {
    pub sign: LadderSign,
    pub params: WignerParams,
}

impl LadderOp {
    pub fn raising(params: &WignerParams) -> Self {
        Self {
            sign: LadderSign::Raising,
            params: params.clone(),
        }
    }

    pub fn lowering(params: &WignerParams) -> Self {
        Self {
            sign: LadderSign::Lowering,
            params: params.clone(),
        }
    }

    pub fn apply(&self, psi: &SpinorPoly) -> SpinorPoly {
        apply_ladder(self, psi)
    }
}

/// Exact action of `a±(ℓ+1)`.
///
/// After the Σ₁ swap, the upper component gets `(±d/dx ± (ℓ+1)/x − x)/√2`
/// and the lower one `(±d/dx ∓ (ℓ+1)/x − x)/√2`.
pub fn apply_ladder(op: &LadderOp, psi: &SpinorPoly) -> SpinorPoly {
    let s = op.sign.unit();
    let k = op.params.shift();
    let swapped = psi.sigma1();
    let branch = |f: &GaussianPoly, sigma3: i64| -> GaussianPoly {
        let deriv = f.differentiate().scale_rational(&s);
        let centrifugal = f.div_x().scale_rational(&(&s * &k * rat(sigma3)));
        let confining = f.mul_x();
        (&(&deriv + &centrifugal) - &confining).scale(&ExtScalar::inv_sqrt2())
    };
    SpinorPoly::new(branch(&swapped.upper, 1), branch(&swapped.lower, -1))
}

fn raise(params: &WignerParams, psi: &SpinorPoly) -> SpinorPoly {
    apply_ladder(&LadderOp::raising(params), psi)
}

fn lower(params: &WignerParams, psi: &SpinorPoly) -> SpinorPoly {
    apply_ladder(&LadderOp::lowering(params), psi)
}

/// `H(ℓ+1) = ½(a+a− + a−a+)`, composed from ladder applications.
pub fn apply_hamiltonian(params: &WignerParams, psi: &SpinorPoly) -> SpinorPoly {
    let up_down = raise(params, &lower(params, psi));
    let down_up = lower(params, &raise(params, psi));
    (&up_down + &down_up).scale_rational(&ratio(1, 2))
}

/// `H₋(ℓ) f = ½(−f″ + x² f + ℓ(ℓ+1)/x² f)`.
pub fn sector_hamiltonian(ell: &BigRational, f: &GaussianPoly) -> GaussianPoly {
    let barrier = ell * (ell + BigRational::one());
    let kinetic = -&f.differentiate().differentiate();
    let sum = &(&kinetic + &f.shift(2)) + &f.shift(-2).scale_rational(&barrier);
    sum.scale_rational(&ratio(1, 2))
}

/// The explicit block form `diag(H₋(ℓ), H₋(ℓ+1))`.
pub fn apply_hamiltonian_explicit(params: &WignerParams, psi: &SpinorPoly) -> SpinorPoly {
    SpinorPoly::new(
        sector_hamiltonian(params.ell(), &psi.upper),
        sector_hamiltonian(&params.shift(), &psi.lower),
    )
}

/// `Ψ₀ = (x^(ℓ+1) e^(−x²/2), 0)`, the state annihilated by `a−`.
pub fn ground_state(params: &WignerParams) -> Result<SpinorPoly, WignerError> {
    let shift = params.shift();
    if !shift.is_integer() {
        return Err(WignerError::NonIntegerEll(params.ell().clone()));
    }
    let power = shift.to_integer().to_i64().expect("ℓ fits in i64");
    Ok(SpinorPoly::upper_only(GaussianPoly::monomial(
        power,
        ExtScalar::integer(1),
    )))
}

/// `(a+)ⁿ Ψ₀`, unnormalized.
pub fn build_state(params: &WignerParams, n: u32) -> Result<SpinorPoly, WignerError> {
    let mut psi = ground_state(params)?;
    for _ in 0..n {
        psi = raise(params, &psi);
    }
    Ok(psi)
}

/// `⟨ψ, Hψ⟩ / ⟨ψ, ψ⟩` as an exact rational.
pub fn rayleigh_quotient(
    params: &WignerParams,
    psi: &SpinorPoly,
) -> Result<BigRational, WignerError> {
    let norm: Moment = psi.inner(psi)?;
    if norm.is_zero() {
        return Err(WignerError::ZeroNorm);
    }
    let energy = psi.inner(&apply_hamiltonian(params, psi))?;
    energy.ratio(&norm).ok_or(WignerError::IrrationalQuotient)
}

/// `E_n = ℓ + 3/2 + n`.
pub fn wigner_energy(ell: f64, n: u32) -> f64 {
    ell + 1.5 + n as f64
}

/// Exact `E_n = ℓ + 3/2 + n`.
pub fn wigner_energy_exact(params: &WignerParams, n: u32) -> BigRational {
    params.ell() + ratio(3, 2) + rat(n as i64)
}

/// Sector energies: `E₀ + 2m` for `H₋(ℓ)` and `E₀ + 2m + 1` for
/// `H₊(ℓ) = H₋(ℓ+1)`, with `E₀ = ℓ + 3/2`.
pub fn sector_energy(ell: f64, sector: crate::hydrogen::Sector, m: u32) -> f64 {
    match sector {
        crate::hydrogen::Sector::Bosonic => wigner_energy(ell, 2 * m),
        crate::hydrogen::Sector::Fermionic => wigner_energy(ell, 2 * m + 1),
    }
}

/// `H₋(ℓ)` as a grid problem: `V(x) = x²/2 + ℓ(ℓ+1)/(2x²)`.
pub fn sector_problem(ell: f64) -> SturmLiouvilleProblem {
    let barrier = 0.5 * ell * (ell + 1.0);
    SturmLiouvilleProblem::new(format!("H-(l={ell})"), move |x| 0.5 * x * x + barrier / (x * x))
}

/// Residual of one algebra relation.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Exact(SpinorPoly),
    Numeric(f64),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Exact(p) => p.is_zero(),
            Residual::Numeric(v) => *v == 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraReport {
    pub relation: String,
    /// First nonzero residual over the basis, or zero when all vanish.
    pub residual: Residual,
    pub checked: usize,
    pub passed: bool,
}

impl AlgebraReport {
    fn exact(relation: &str, residuals: impl IntoIterator<Item = SpinorPoly>) -> Self {
        let mut checked = 0;
        let mut first_bad = None;
        for r in residuals {
            checked += 1;
            if first_bad.is_none() && !r.is_zero() {
                first_bad = Some(r);
            }
        }
        let passed = first_bad.is_none();
        Self {
            relation: relation.to_string(),
            residual: Residual::Exact(first_bad.unwrap_or_default()),
            checked,
            passed,
        }
    }
}

/// The WH relations on every basis state:
/// `[H,a±] = ±a±`, `[a−,a+] = 1 + 2(ℓ+1)Σ₃`, `{Σ₃,a±} = 0`, `R² = 1`.
pub fn verify_wh_algebra(params: &WignerParams, basis: &[SpinorPoly]) -> Vec<AlgebraReport> {
    let h = |psi: &SpinorPoly| apply_hamiltonian(params, psi);
    let up = |psi: &SpinorPoly| raise(params, psi);
    let down = |psi: &SpinorPoly| lower(params, psi);
    let deformation = params.c();

    let ladder = basis.iter().flat_map(|psi| {
        let plus = &(&h(&up(psi)) - &up(&h(psi))) - &up(psi);
        let minus = &(&h(&down(psi)) - &down(&h(psi))) + &down(psi);
        [plus, minus]
    });
    let commutator = basis.iter().map(|psi| {
        let lhs = &down(&up(psi)) - &up(&down(psi));
        let rhs = psi + &psi.sigma3().scale_rational(&deformation);
        &lhs - &rhs
    });
    let anticommutator = basis.iter().flat_map(|psi| {
        [
            &up(psi).sigma3() + &up(&psi.sigma3()),
            &down(psi).sigma3() + &down(&psi.sigma3()),
        ]
    });
    let reflection = basis.iter().map(|psi| &psi.sigma3().sigma3() - psi);

    vec![
        AlgebraReport::exact("[H,a±] = ±a±", ladder.collect::<Vec<_>>()),
        AlgebraReport::exact("[a−,a+] = 1 + 2(ℓ+1)Σ₃", commutator.collect::<Vec<_>>()),
        AlgebraReport::exact("{Σ₃,a±} = 0", anticommutator.collect::<Vec<_>>()),
        AlgebraReport::exact("R² = 1", reflection.collect::<Vec<_>>()),
    ]
}

/// osp(1|2) closure with `J± = (a±)²`: `[H,J±] = ±2J±`.
pub fn verify_osp12(params: &WignerParams, basis: &[SpinorPoly]) -> Vec<AlgebraReport> {
    let h = |psi: &SpinorPoly| apply_hamiltonian(params, psi);
    let j_plus = |psi: &SpinorPoly| raise(params, &raise(params, psi));
    let j_minus = |psi: &SpinorPoly| lower(params, &lower(params, psi));
    let two = rat(2);

    let plus = basis.iter().map(|psi| {
        let comm = &h(&j_plus(psi)) - &j_plus(&h(psi));
        &comm - &j_plus(psi).scale_rational(&two)
    });
    let minus = basis.iter().map(|psi| {
        let comm = &h(&j_minus(psi)) - &j_minus(&h(psi));
        &comm + &j_minus(psi).scale_rational(&two)
    });
    vec![
        AlgebraReport::exact("[H,J+] = 2J+", plus.collect::<Vec<_>>()),
        AlgebraReport::exact("[H,J−] = −2J−", minus.collect::<Vec<_>>()),
    ]
}

/// Ten states of mixed Σ₃-parity. For integer `ℓ` the first three are the
/// ladder states `Ψ₀, Ψ₁, Ψ₂`; the rest are generic Gaussian-damped
/// polynomials, including ones with both components populated.
pub fn mixed_basis(params: &WignerParams) -> Vec<SpinorPoly> {
    let g = GaussianPoly::from_ints;
    let mut basis: Vec<SpinorPoly> = (0..3)
        .filter_map(|n| build_state(params, n).ok())
        .collect();
    let generic = [
        SpinorPoly::upper_only(g(1, &[1])),
        SpinorPoly::lower_only(g(2, &[1])),
        SpinorPoly::new(g(2, &[1]), g(3, &[1])),
        SpinorPoly::new(g(1, &[1, 0, -2]), g(1, &[3])),
        SpinorPoly::new(
            GaussianPoly::monomial(4, ExtScalar::sqrt2()),
            g(1, &[-1, 2]),
        ),
        SpinorPoly::lower_only(GaussianPoly::new(
            3,
            vec![ExtScalar::new(ratio(1, 3), ratio(-1, 2)), ExtScalar::integer(5)],
        )),
        SpinorPoly::new(g(5, &[7, 0, 1]), g(2, &[0, -4, 0, 1])),
        SpinorPoly::upper_only(g(3, &[2, -1, 0, 1])),
        SpinorPoly::new(g(6, &[1]), g(6, &[-1])),
        SpinorPoly::new(g(1, &[1, 1, 1]), g(1, &[1, -1, 1])),
    ];
    basis.extend(generic);
    basis.truncate(10);
    basis
}

/// Lower block of `H(ℓ)` on `(0, f)` minus the upper block of `H(ℓ+1)` on
/// `(f, 0)`, both through the ladder composition; zero when `H₊(ℓ) = H₋(ℓ+1)`.
pub fn sector_shift_residual(params: &WignerParams, f: &GaussianPoly) -> GaussianPoly {
    let lower_block = apply_hamiltonian(params, &SpinorPoly::lower_only(f.clone())).lower;
    let upper_block =
        apply_hamiltonian(&params.next(), &SpinorPoly::upper_only(f.clone())).upper;
    &lower_block - &upper_block
}

/// `1 + 2(ℓ+1)Σ₃` applied to `ψ`.
pub fn deformed_identity(params: &WignerParams, psi: &SpinorPoly) -> SpinorPoly {
    psi + &psi.sigma3().scale_rational(&params.c())
}

/// Convenience: whether every report passed.
pub fn all_passed(reports: &[AlgebraReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// `ℓ` as an exact rational from a float given with at most 6 decimals.
pub fn ell_from_f64(ell: f64) -> Option<BigRational> {
    let scaled = (ell * 1e6).round();
    if (scaled / 1e6 - ell).abs() > 1e-12 || !scaled.is_finite() {
        return None;
    }
    Some(ratio(scaled as i64, 1_000_000))
}

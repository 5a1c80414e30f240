//! Exact closed-form algebra for Gaussian-damped polynomials.
//!
//! A [`GaussianPoly`] is `e^(−x²/2) · Σₖ cₖ x^(p+k)` with coefficients in
//! ℚ(√2). Differentiation, multiplication and division by `x` keep this form,
//! so the first-order ladder operators act on it without rounding. Inner
//! products on the half line reduce to the moments
//! `M(n) = ∫₀^∞ xⁿ e^(−x²) dx`, which live in ℚ(√π).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("divergent half-line integral: term pair with total power {power}")]
    DivergentIntegral { power: i64 },
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_to_f64(q: &BigRational) -> f64 {
    // numer/denom individually overflow f64 for deep ladder towers
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = q.numer().bits().max(q.denom().bits()) as i64 - 900;
            let (n, d) = if shift > 0 {
                (q.numer() >> shift as usize, q.denom() >> shift as usize)
            } else {
                (q.numer().clone(), q.denom().clone())
            };
            n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(f64::INFINITY)
        }
    }
}

/// An element `r1 + r2·√2` of ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExtScalar {
    r1: BigRational,
    r2: BigRational,
}

impl ExtScalar {
    pub fn new(r1: BigRational, r2: BigRational) -> Self {
        Self { r1, r2 }
    }

    pub fn rational(q: BigRational) -> Self {
        Self {
            r1: q,
            r2: BigRational::zero(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(rat(n))
    }

    /// `√2`.
    pub fn sqrt2() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        Self::new(BigRational::zero(), ratio(1, 2))
    }

    pub fn r1(&self) -> &BigRational {
        &self.r1
    }

    pub fn r2(&self) -> &BigRational {
        &self.r2
    }

    pub fn is_rational(&self) -> bool {
        self.r2.is_zero()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.r1 * q, &self.r2 * q)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.r1) + rat_to_f64(&self.r2) * std::f64::consts::SQRT_2
    }
}

impl Zero for ExtScalar {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.r1.is_zero() && self.r2.is_zero()
    }
}

impl One for ExtScalar {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl From<BigRational> for ExtScalar {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for ExtScalar {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl<'a> Add<&'a ExtScalar> for &'a ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: &ExtScalar) -> ExtScalar {
        ExtScalar::new(&self.r1 + &rhs.r1, &self.r2 + &rhs.r2)
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: ExtScalar) -> ExtScalar {
        &self + &rhs
    }
}

impl AddAssign<&ExtScalar> for ExtScalar {
    fn add_assign(&mut self, rhs: &ExtScalar) {
        self.r1 += &rhs.r1;
        self.r2 += &rhs.r2;
    }
}

impl<'a> Sub<&'a ExtScalar> for &'a ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: &ExtScalar) -> ExtScalar {
        ExtScalar::new(&self.r1 - &rhs.r1, &self.r2 - &rhs.r2)
    }
}

impl Sub for ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: ExtScalar) -> ExtScalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a ExtScalar> for &'a ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: &ExtScalar) -> ExtScalar {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = rat(2);
        ExtScalar::new(
            &self.r1 * &rhs.r1 + &two * &self.r2 * &rhs.r2,
            &self.r1 * &rhs.r2 + &self.r2 * &rhs.r1,
        )
    }
}

impl Mul for ExtScalar {
    type Output = ExtScalar;
    fn mul(self, rhs: ExtScalar) -> ExtScalar {
        &self * &rhs
    }
}

impl Neg for &ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar::new(-&self.r1, -&self.r2)
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        -&self
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.r1.is_zero(), self.r2.is_zero()) {
            (_, true) => write!(f, "{}", self.r1),
            (true, false) => write!(f, "{}·√2", self.r2),
            (false, false) => write!(f, "({} + {}·√2)", self.r1, self.r2),
        }
    }
}

/// An element `q1 + qpi·√π`; exact values of half-line Gaussian moments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MomentScalar {
    pub q1: BigRational,
    pub qpi: BigRational,
}

impl MomentScalar {
    pub fn new(q1: BigRational, qpi: BigRational) -> Self {
        Self { q1, qpi }
    }

    pub fn is_zero(&self) -> bool {
        self.q1.is_zero() && self.qpi.is_zero()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.q1 * q, &self.qpi * q)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.q1) + rat_to_f64(&self.qpi) * std::f64::consts::PI.sqrt()
    }
}

impl AddAssign<&MomentScalar> for MomentScalar {
    fn add_assign(&mut self, rhs: &MomentScalar) {
        self.q1 += &rhs.q1;
        self.qpi += &rhs.qpi;
    }
}

impl fmt::Display for MomentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√π", self.q1, self.qpi)
    }
}

/// `M(n) = ∫₀^∞ xⁿ e^(−x²) dx` from `M(0) = √π/2`, `M(1) = 1/2`,
/// `M(n) = (n−1)/2 · M(n−2)`.
pub fn half_line_moment(n: u32) -> MomentScalar {
    let (mut value, start) = if n % 2 == 0 {
        (MomentScalar::new(BigRational::zero(), ratio(1, 2)), 0)
    } else {
        (MomentScalar::new(ratio(1, 2), BigRational::zero()), 1)
    };
    let mut k = start + 2;
    while k <= n {
        value = value.scale(&ratio(k as i64 - 1, 2));
        k += 2;
    }
    value
}

/// Result of a half-line inner product: `base + √2·root2`, both parts in ℚ(√π).
///
/// The √2 part vanishes whenever both arguments carry matching normalizations,
/// which is the case for every state built by the ladder operators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Moment {
    pub base: MomentScalar,
    pub root2: MomentScalar,
}

impl Moment {
    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.root2.is_zero()
    }

    /// The value as a [`MomentScalar`] when no √2 component survived.
    pub fn narrow(&self) -> Option<MomentScalar> {
        self.root2.is_zero().then(|| self.base.clone())
    }

    pub fn to_f64(&self) -> f64 {
        self.base.to_f64() + std::f64::consts::SQRT_2 * self.root2.to_f64()
    }

    /// Exact rational `r` with `self = r·other`, if the two are rationally
    /// proportional component by component.
    pub fn ratio(&self, other: &Moment) -> Option<BigRational> {
        let num = [&self.base.q1, &self.base.qpi, &self.root2.q1, &self.root2.qpi];
        let den = [
            &other.base.q1,
            &other.base.qpi,
            &other.root2.q1,
            &other.root2.qpi,
        ];
        let pivot = den.iter().position(|d| !d.is_zero())?;
        let r = num[pivot] / den[pivot];
        num.iter()
            .zip(den.iter())
            .all(|(n, d)| **n == &r * *d)
            .then_some(r)
    }
}

impl AddAssign<&Moment> for Moment {
    fn add_assign(&mut self, rhs: &Moment) {
        self.base += &rhs.base;
        self.root2 += &rhs.root2;
    }
}

impl fmt::Display for Moment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root2.is_zero() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{} + √2·({})", self.base, self.root2)
        }
    }
}

/// `e^(−x²/2) · Σₖ cₖ x^(offset+k)`.
///
/// Zero coefficients at either end are trimmed on construction, so equality is
/// structural equality. The zero function has no coefficients and offset 0.
/// Negative offsets are allowed; only final states are expected to be
/// admissible (see [`GaussianPoly::is_admissible`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianPoly {
    offset: i64,
    coeffs: Vec<ExtScalar>,
}

impl GaussianPoly {
    pub fn new(offset: i64, coeffs: Vec<ExtScalar>) -> Self {
        let mut poly = Self { offset, coeffs };
        poly.trim();
        poly
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff · x^power · e^(−x²/2)`.
    pub fn monomial(power: i64, coeff: ExtScalar) -> Self {
        Self::new(power, vec![coeff])
    }

    /// Integer coefficients for consecutive powers starting at `offset`.
    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        Self::new(offset, coeffs.iter().map(|&c| ExtScalar::integer(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[ExtScalar] {
        &self.coeffs
    }

    /// Highest power present, `None` for the zero function.
    pub fn top_power(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `x^power` (zero when absent).
    pub fn coeff(&self, power: i64) -> ExtScalar {
        let idx = power - self.offset;
        if idx < 0 {
            return ExtScalar::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(ExtScalar::zero)
    }

    /// `(power, coefficient)` pairs, including interior zeros.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExtScalar)> {
        let offset = self.offset;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, c)| (offset + k as i64, c))
    }

    /// Vanishes at the origin: zero, or lowest power at least 1.
    pub fn is_admissible(&self) -> bool {
        self.is_zero() || self.offset >= 1
    }

    pub fn scale(&self, c: &ExtScalar) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|x| x.scale(q)).collect())
    }

    /// Multiply by `x^k` for any integer `k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul_x(&self) -> Self {
        self.shift(1)
    }

    pub fn div_x(&self) -> Self {
        self.shift(-1)
    }

    /// Exact `d/dx`, using `d/dx[x^q e^(−x²/2)] = (q x^(q−1) − x^(q+1)) e^(−x²/2)`.
    pub fn differentiate(&self) -> Self {
        let Some(top) = self.top_power() else {
            return Self::zero();
        };
        let low = self.offset - 1;
        let mut out = vec![ExtScalar::zero(); (top + 1 - low + 1) as usize];
        for (q, c) in self.terms() {
            if !q.is_zero() {
                out[(q - 1 - low) as usize] += &c.scale(&rat(q));
            }
            out[(q + 1 - low) as usize] += &(-c);
        }
        Self::new(low, out)
    }

    /// Exact half-line inner product `∫₀^∞ f(x) g(x) dx`.
    pub fn inner(&self, other: &GaussianPoly) -> Result<Moment, ExactError> {
        let mut acc = Moment::default();
        for (p, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in other.terms() {
                if b.is_zero() {
                    continue;
                }
                let power = p + q;
                if power < 0 {
                    return Err(ExactError::DivergentIntegral { power });
                }
                let m = half_line_moment(power as u32);
                let prod = a * b;
                acc.base += &m.scale(prod.r1());
                acc.root2 += &m.scale(prod.r2());
            }
        }
        Ok(acc)
    }

    /// Floating evaluation at `x > 0`; Horner on the polynomial part.
    pub fn eval(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let poly = self
            .coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64());
        poly * x.powi(self.offset as i32) * (-0.5 * x * x).exp()
    }
}

impl<'a> Add<&'a GaussianPoly> for &'a GaussianPoly {
    type Output = GaussianPoly;
    fn add(self, rhs: &GaussianPoly) -> GaussianPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.offset.min(rhs.offset);
        let high = self.top_power().max(rhs.top_power()).unwrap_or(low);
        let mut out = vec![ExtScalar::zero(); (high - low + 1) as usize];
        for (p, c) in self.terms().chain(rhs.terms()) {
            out[(p - low) as usize] += c;
        }
        GaussianPoly::new(low, out)
    }
}

impl Add for GaussianPoly {
    type Output = GaussianPoly;
    fn add(self, rhs: GaussianPoly) -> GaussianPoly {
        &self + &rhs
    }
}

impl Neg for &GaussianPoly {
    type Output = GaussianPoly;
    fn neg(self) -> GaussianPoly {
        GaussianPoly {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for GaussianPoly {
    type Output = GaussianPoly;
    fn neg(self) -> GaussianPoly {
        -&self
    }
}

impl<'a> Sub<&'a GaussianPoly> for &'a GaussianPoly {
    type Output = GaussianPoly;
    fn sub(self, rhs: &GaussianPoly) -> GaussianPoly {
        self + &(-rhs)
    }
}

impl Sub for GaussianPoly {
    type Output = GaussianPoly;
    fn sub(self, rhs: GaussianPoly) -> GaussianPoly {
        &self - &rhs
    }
}

impl fmt::Display for GaussianPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        write!(f, "(")?;
        for (p, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match p {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}·x")?,
                _ => write!(f, "{c}·x^{p}")?,
            }
        }
        write!(f, ")·e^(-x²/2)")
    }
}

/// Σ₃-parity of a two-component state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Upper component only, Σ₃ = +1.
    Even,
    /// Lower component only, Σ₃ = −1.
    Odd,
}

/// Two-component state `(upper, lower)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SpinorPoly {
    pub upper: GaussianPoly,
    pub lower: GaussianPoly,
}

impl SpinorPoly {
    pub fn new(upper: GaussianPoly, lower: GaussianPoly) -> Self {
        Self { upper, lower }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn upper_only(f: GaussianPoly) -> Self {
        Self::new(f, GaussianPoly::zero())
    }

    pub fn lower_only(f: GaussianPoly) -> Self {
        Self::new(GaussianPoly::zero(), f)
    }

    pub fn is_zero(&self) -> bool {
        self.upper.is_zero() && self.lower.is_zero()
    }

    pub fn is_admissible(&self) -> bool {
        self.upper.is_admissible() && self.lower.is_admissible()
    }

    /// `None` for the zero state and for mixed states.
    pub fn parity(&self) -> Option<Parity> {
        match (self.upper.is_zero(), self.lower.is_zero()) {
            (false, true) => Some(Parity::Even),
            (true, false) => Some(Parity::Odd),
            _ => None,
        }
    }

    /// Σ₁: swap components.
    pub fn sigma1(&self) -> Self {
        Self::new(self.lower.clone(), self.upper.clone())
    }

    /// Σ₃ = diag(1, −1); the reflection operator R of the algebra.
    pub fn sigma3(&self) -> Self {
        Self::new(self.upper.clone(), -&self.lower)
    }

    pub fn scale(&self, c: &ExtScalar) -> Self {
        Self::new(self.upper.scale(c), self.lower.scale(c))
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        Self::new(self.upper.scale_rational(q), self.lower.scale_rational(q))
    }

    /// Sum of the component inner products.
    pub fn inner(&self, other: &SpinorPoly) -> Result<Moment, ExactError> {
        let mut acc = self.upper.inner(&other.upper)?;
        acc += &self.lower.inner(&other.lower)?;
        Ok(acc)
    }

    pub fn eval(&self, x: f64) -> (f64, f64) {
        (self.upper.eval(x), self.lower.eval(x))
    }
}

impl<'a> Add<&'a SpinorPoly> for &'a SpinorPoly {
    type Output = SpinorPoly;
    fn add(self, rhs: &SpinorPoly) -> SpinorPoly {
        SpinorPoly::new(&self.upper + &rhs.upper, &self.lower + &rhs.lower)
    }
}

impl Add for SpinorPoly {
    type Output = SpinorPoly;
    fn add(self, rhs: SpinorPoly) -> SpinorPoly {
        &self + &rhs
    }
}

impl<'a> Sub<&'a SpinorPoly> for &'a SpinorPoly {
    type Output = SpinorPoly;
    fn sub(self, rhs: &SpinorPoly) -> SpinorPoly {
        SpinorPoly::new(&self.upper - &rhs.upper, &self.lower - &rhs.lower)
    }
}

impl Sub for SpinorPoly {
    type Output = SpinorPoly;
    fn sub(self, rhs: SpinorPoly) -> SpinorPoly {
        &self - &rhs
    }
}

impl Neg for &SpinorPoly {
    type Output = SpinorPoly;
    fn neg(self) -> SpinorPoly {
        SpinorPoly::new(-&self.upper, -&self.lower)
    }
}

impl fmt::Display for SpinorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.upper, self.lower)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly_strategy() -> impl Strategy<Value = GaussianPoly> {
        (
            -2i64..4,
            prop::collection::vec((-5i64..6, -5i64..6, 1i64..4), 0..6),
        )
            .prop_map(|(offset, cs)| {
                GaussianPoly::new(
                    offset,
                    cs.into_iter()
                        .map(|(a, b, d)| ExtScalar::new(ratio(a, d), ratio(b, d)))
                        .collect(),
                )
            })
    }

    fn admissible_strategy() -> impl Strategy<Value = GaussianPoly> {
        poly_strategy().prop_map(|f| if f.offset() < 1 { f.shift(1 - f.offset()) } else { f })
    }

    #[test]
    fn scalar_field_closure() {
        let s = ExtScalar::sqrt2();
        assert_eq!(&s * &s, ExtScalar::integer(2));
        assert_eq!(&ExtScalar::inv_sqrt2() * &s, ExtScalar::one());
        let a = ExtScalar::new(ratio(1, 3), ratio(-2, 5));
        assert_eq!(&(&a + &a) - &a, a);
    }

    #[test]
    fn trimming_canonicalizes() {
        let f = GaussianPoly::from_ints(-1, &[0, 0, 3, 0, 0]);
        assert_eq!(f.offset(), 1);
        assert_eq!(f.coeffs().len(), 1);
        assert!(GaussianPoly::from_ints(4, &[0, 0]).is_zero());
        assert_eq!(GaussianPoly::from_ints(4, &[0]), GaussianPoly::zero());
    }

    #[test]
    fn derivative_examples() {
        // x e → (1 − x²) e
        let f = GaussianPoly::from_ints(1, &[1]);
        assert_eq!(f.differentiate(), GaussianPoly::from_ints(0, &[1, 0, -1]));
        // e → −x e
        let g = GaussianPoly::from_ints(0, &[1]);
        assert_eq!(g.differentiate(), GaussianPoly::from_ints(1, &[-1]));
        // x³ e → (3x² − x⁴) e
        let h = GaussianPoly::from_ints(3, &[1]);
        let dh = h.differentiate();
        assert_eq!(dh, GaussianPoly::from_ints(2, &[3, 0, -1]));
        let x = 0.7;
        let step = 1e-5;
        let fd = (h.eval(x + step) - h.eval(x - step)) / (2.0 * step);
        assert!((fd - dh.eval(x)).abs() < 1e-8);
    }

    #[test]
    fn shift_examples() {
        let f = GaussianPoly::from_ints(1, &[1]);
        assert_eq!(f.mul_x(), GaussianPoly::from_ints(2, &[1]));
        assert_eq!(GaussianPoly::from_ints(2, &[1]).div_x(), f);
        assert!(GaussianPoly::zero().mul_x().is_zero());
    }

    #[test]
    fn moment_recurrence() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_eq!(half_line_moment(0), MomentScalar::new(rat(0), ratio(1, 2)));
        assert_eq!(half_line_moment(1), MomentScalar::new(ratio(1, 2), rat(0)));
        assert_eq!(half_line_moment(2), MomentScalar::new(rat(0), ratio(1, 4)));
        // M(5) = Γ(3)/2 = 1, M(6) = 15√π/16
        assert_eq!(half_line_moment(5), MomentScalar::new(rat(1), rat(0)));
        assert!((half_line_moment(6).to_f64() - 15.0 * sqrt_pi / 16.0).abs() < 1e-14);
    }

    #[test]
    fn inner_examples() {
        let e = GaussianPoly::from_ints(0, &[1]);
        let xe = GaussianPoly::from_ints(1, &[1]);
        assert_eq!(e.inner(&e).unwrap().narrow().unwrap(), half_line_moment(0));
        assert_eq!(
            xe.inner(&xe).unwrap().narrow().unwrap(),
            MomentScalar::new(rat(0), ratio(1, 4))
        );
        assert_eq!(
            xe.inner(&e).unwrap().narrow().unwrap(),
            MomentScalar::new(ratio(1, 2), rat(0))
        );
    }

    #[test]
    fn inner_keeps_unpaired_sqrt2() {
        let a = GaussianPoly::monomial(1, ExtScalar::sqrt2());
        let b = GaussianPoly::from_ints(1, &[1]);
        let m = a.inner(&b).unwrap();
        assert!(m.narrow().is_none());
        assert!((m.to_f64() - std::f64::consts::SQRT_2 * std::f64::consts::PI.sqrt() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn divergent_inner_is_rejected() {
        let f = GaussianPoly::from_ints(-1, &[1]);
        let g = GaussianPoly::from_ints(0, &[1]);
        assert_eq!(
            f.inner(&g),
            Err(ExactError::DivergentIntegral { power: -1 })
        );
    }

    #[test]
    fn eval_examples() {
        let xe = GaussianPoly::from_ints(1, &[1]);
        assert!((xe.eval(1.0) - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(GaussianPoly::zero().eval(3.3), 0.0);
        let f = GaussianPoly::from_ints(0, &[2, 0, -1]);
        assert!(f.eval(std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn rat_to_f64_survives_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let q = BigRational::new(big.clone() * BigInt::from(3), big * BigInt::from(4));
        assert!((rat_to_f64(&q) - 0.75).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn canonical_commutator(f in poly_strategy()) {
            // d/dx(x f) − x f' = f
            let lhs = &f.mul_x().differentiate() - &f.differentiate().mul_x();
            prop_assert_eq!(lhs, f);
        }

        #[test]
        fn shifts_are_inverse(f in poly_strategy(), k in -3i64..4) {
            prop_assert_eq!(f.shift(k).shift(-k), f.clone());
            prop_assert_eq!(f.mul_x().div_x(), f);
        }

        #[test]
        fn derivative_is_linear(f in poly_strategy(), g in poly_strategy(), a in -4i64..5) {
            let c = ExtScalar::new(rat(a), ratio(1, 3));
            let lhs = (&f.scale(&c) + &g).differentiate();
            let rhs = &f.differentiate().scale(&c) + &g.differentiate();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inner_symmetric_positive(f in admissible_strategy(), g in admissible_strategy()) {
            prop_assert_eq!(f.inner(&g).unwrap(), g.inner(&f).unwrap());
            if !f.is_zero() {
                prop_assert!(f.inner(&f).unwrap().to_f64() > 0.0);
            }
        }

        #[test]
        fn eval_matches_finite_difference(f in poly_strategy(), x in 0.3f64..3.0) {
            let h = 1e-4;
            let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
            let exact = f.differentiate().eval(x);
            prop_assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()));
        }
    }
}

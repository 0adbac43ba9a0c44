//! Floating-point BC₁ objects: measure, weights, the orthogonal functions
//! `Q^{(k)}_{n,±}`, the Opdam eigenfunction, c-functions, and closed-form
//! transforms.

pub mod variants;

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::exact::AlgebraParams;
use crate::specfun::{
    gauss_2f1, hyp_terminating, jacobi_poly, ln_gamma, ln_gamma_real, pochhammer, HypSpec, C64,
};
use crate::{Error, Parity, Result};

/// Multiplicities `b` (root `2ε`), `ι` (twice that of `4ε`) and weight
/// exponent `σ`, validated so that `w_σ ∈ L²(dμ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BC1Params {
    pub b: f64,
    pub iota: f64,
    pub sigma: f64,
}

impl BC1Params {
    /// Requires `b > 0`, `ι > 0`, `σ > ι + b`.
    pub fn new(b: f64, iota: f64, sigma: f64) -> Result<Self> {
        if !(b.is_finite() && iota.is_finite() && sigma.is_finite()) {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        if !(b > 0.0 && iota > 0.0) {
            return Err(Error::Domain(format!("multiplicities must be positive (b = {b}, iota = {iota})")));
        }
        if !(sigma > iota + b) {
            return Err(Error::Domain(format!("sigma = {sigma} must exceed iota + b = {}", iota + b)));
        }
        Ok(Self { b, iota, sigma })
    }

    /// Like [`BC1Params::new`] and additionally `σ > 2(ι + b)`.
    pub fn for_transform(b: f64, iota: f64, sigma: f64) -> Result<Self> {
        let p = Self::new(b, iota, sigma)?;
        p.check_transform_domain()?;
        Ok(p)
    }

    pub fn from_exact(p: &AlgebraParams) -> Self {
        let (b, iota, sigma) = p.as_f64();
        Self { b, iota, sigma }
    }

    pub fn check_transform_domain(&self) -> Result<()> {
        if self.sigma > 2.0 * (self.iota + self.b) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "transforms need sigma > 2(iota + b) = {}, got {}",
                2.0 * (self.iota + self.b),
                self.sigma
            )))
        }
    }

    pub fn rho(&self) -> f64 {
        self.b + self.iota
    }

    pub fn sigma0(&self) -> f64 {
        self.sigma - self.rho() - 1.0
    }

    pub fn delta0(&self) -> f64 {
        0.5 * (self.iota - 1.0) + self.b
    }

    pub fn delta1(&self) -> f64 {
        self.delta0() + 1.0
    }

    /// `δ₀` for even functions, `δ₁` for odd ones.
    pub fn delta(&self, parity: Parity) -> f64 {
        match parity {
            Parity::Even => self.delta0(),
            Parity::Odd => self.delta1(),
        }
    }
}

impl fmt::Display for BC1Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={} iota={} sigma={}", self.b, self.iota, self.sigma)
    }
}

/// Label of `Q^{(k)}_{n,±}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QSpec {
    pub n: u32,
    pub k: u32,
    pub parity: Parity,
}

impl QSpec {
    pub fn new(n: u32, k: u32, parity: Parity) -> Self {
        Self { n, k, parity }
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} parity={}", self.n, self.k, self.parity)
    }
}

/// `λ = iν` on the spectral half-axis, `ν > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralPoint {
    nu: f64,
}

impl SpectralPoint {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu > 0.0 {
            Ok(Self { nu })
        } else {
            Err(Error::Domain(format!("spectral point needs finite nu > 0, got {nu}")))
        }
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn lambda(&self) -> C64 {
        C64::new(0.0, self.nu)
    }
}

/// `(ℱ₁f(λ), ℱ₋₁f(λ))`
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct TransformValue {
    pub plus: C64,
    pub minus: C64,
}

impl TransformValue {
    pub fn new(plus: C64, minus: C64) -> Self {
        Self { plus, minus }
    }

    /// `max(|Δ₁|, |Δ₋₁|)`
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.plus - other.plus).norm().max((self.minus - other.minus).norm())
    }

    /// `max |Δ_±| / max |other_±|`
    pub fn rel_diff(&self, other: &Self) -> f64 {
        let scale = other.plus.norm().max(other.minus.norm());
        if scale == 0.0 {
            self.max_abs_diff(other)
        } else {
            self.max_abs_diff(other) / scale
        }
    }

    /// `|ℱ₁|² + |ℱ₋₁|²`
    pub fn norm_sqr(&self) -> f64 {
        self.plus.norm_sqr() + self.minus.norm_sqr()
    }
}

impl Add for TransformValue {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.plus + rhs.plus, self.minus + rhs.minus)
    }
}

impl Sub for TransformValue {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.plus - rhs.plus, self.minus - rhs.minus)
    }
}

impl Mul<f64> for TransformValue {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        Self::new(self.plus * rhs, self.minus * rhs)
    }
}

/// Which Pochhammer shift the odd-case sum of the `k > 0` transform uses in
/// `(n + σ₀ + δ + 2k + 1)_m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum OddSeriesShift {
    Delta0,
    #[default]
    Delta1,
}

impl fmt::Display for OddSeriesShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OddSeriesShift::Delta0 => "delta0",
            OddSeriesShift::Delta1 => "delta1",
        })
    }
}

/// Selector for [`lm_poly_eval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmKind {
    L,
    M,
}

impl FromStr for LmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "L" | "l" => Ok(LmKind::L),
            "M" | "m" => Ok(LmKind::M),
            other => Err(Error::Parse(format!("expected L or M, got {other:?}"))),
        }
    }
}

/// `ln cosh t`, exact in the tails.
fn ln_cosh(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `2^{2b+ι} |sinh t|^{2b} |sinh 2t|^ι`
pub fn mu_density(p: &BC1Params, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    (2.0f64).powf(2.0 * p.b + p.iota) * t.sinh().abs().powf(2.0 * p.b) * (2.0 * t).sinh().abs().powf(p.iota)
}

/// `w_{σ+2m,k}(t) = cosh^{-(σ+2m)} t · tanh^{2k} t`
pub fn weight_eval(p: &BC1Params, m: u32, k: u32, t: f64) -> f64 {
    let e = p.sigma + 2.0 * f64::from(m);
    (-e * ln_cosh(t)).exp() * t.tanh().powi(2 * k as i32)
}

/// `Q^{(k)}_{n,±}(t) = w_{σ,k}(t) P_n^{(σ₀, δ+2k)}(2tanh²t - 1) tanh^ε t`
pub fn q_eval(p: &BC1Params, spec: QSpec, t: f64) -> Result<f64> {
    let beta = p.delta(spec.parity) + 2.0 * f64::from(spec.k);
    let th = t.tanh();
    let jac = jacobi_poly(spec.n, p.sigma0(), beta, 2.0 * th * th - 1.0)?;
    let v = weight_eval(p, 0, spec.k, t) * jac;
    Ok(if spec.parity.is_odd() { v * th } else { v })
}

/// `‖Q^{(k)}_{n,±}‖²` in `L²(dμ)`:
/// `2^{2(ι+b)} Γ(n+α+1) Γ(n+β+1) / (n! (2n+α+β+1) Γ(n+α+β+1))` with
/// `α = σ₀`, `β = δ + 2k`.
pub fn q_norm_sq_closed(p: &BC1Params, spec: QSpec) -> Result<f64> {
    if !(p.sigma > p.iota + p.b) {
        return Err(Error::Domain(format!("norms need sigma > iota + b, got {p}")));
    }
    let (alpha, beta) = (p.sigma0(), p.delta(spec.parity) + 2.0 * f64::from(spec.k));
    let n = f64::from(spec.n);
    let ln = 2.0 * p.rho() * std::f64::consts::LN_2 + ln_gamma_real(n + alpha + 1.0)? + ln_gamma_real(n + beta + 1.0)?
        - ln_gamma_real(n + 1.0)?
        - ln_gamma_real(n + alpha + beta + 1.0)?;
    Ok(ln.exp() / (2.0 * n + alpha + beta + 1.0))
}

/// Opdam eigenfunction, `D G(λ,·) = λ G(λ,·)` and `G(λ, 0) = 1`:
///
/// `G = ₂F₁(A, B; C; -sinh²t) + sinh(2t) · A/(2C) · ₂F₁(A+1, B+1; C+1; -sinh²t)`
///
/// with `A = (λ+ρ)/2`, `B = (ρ-λ)/2`, `C = b + (ι+1)/2`. Entire in `λ`;
/// `G(-ρ, ·) = 1`.
pub fn eigenfunction(p: &BC1Params, lambda: C64, t: f64) -> Result<C64> {
    let rho = p.rho();
    let a = (lambda + rho) * 0.5;
    let b = (rho - lambda) * 0.5;
    let c = C64::new(p.b + 0.5 * (p.iota + 1.0), 0.0);
    let x = -t.sinh().powi(2);
    let even = gauss_2f1(a, b, c, x)?;
    if a == C64::new(0.0, 0.0) || t == 0.0 {
        return Ok(even);
    }
    let odd = gauss_2f1(a + 1.0, b + 1.0, c + 1.0, x)? * a / (c * 2.0);
    Ok(even + odd * (2.0 * t).sinh())
}

fn gamma_quotient(num: &[C64], den: &[C64]) -> Result<C64> {
    let mut ln = C64::new(0.0, 0.0);
    for z in num {
        ln += ln_gamma(*z)?;
    }
    for z in den {
        ln -= ln_gamma(*z)?;
    }
    let v = ln.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("Gamma quotient exp({ln}) is not finite")))
    }
}

/// `c(λ) = Γ(λ) Γ(λ/2 + b/2) / (Γ(λ + b) Γ(λ/2 + b/2 + ι/2))`
pub fn c_function(p: &BC1Params, lambda: C64) -> Result<C64> {
    let h = lambda * 0.5 + 0.5 * p.b;
    gamma_quotient(&[lambda, h], &[lambda + p.b, h + 0.5 * p.iota])
}

/// `c₋₁(λ) = Γ(λ+1) Γ(λ/2 + b/2 + 1) / (Γ(λ + b + 1) Γ(λ/2 + b/2 + ι/2 + 1))`
pub fn c_minus1(p: &BC1Params, lambda: C64) -> Result<C64> {
    let h = lambda * 0.5 + 0.5 * p.b + 1.0;
    gamma_quotient(&[lambda + 1.0, h], &[lambda + p.b + 1.0, h + 0.5 * p.iota])
}

/// Spectral density `(2π)^{-1} c₋₁(ρ)² / |c(iν)|²` against `dν`.
pub fn muhat_density(p: &BC1Params, sp: SpectralPoint) -> Result<f64> {
    let c0 = c_minus1(p, C64::new(p.rho(), 0.0))?.re;
    let c = c_function(p, sp.lambda())?;
    Ok(c0 * c0 / (2.0 * std::f64::consts::PI * c.norm_sqr()))
}

/// Spherical transform of `w_σ`:
///
/// `2^{2ρ} Γ((ι+1+2b)/2) Γ(σ/2-ρ) / Γ((σ+1-ι)/2) · Π_± Γ((σ-ρ±λ)/2) / Γ((σ-ρ±ρ)/2)`
pub fn w_tilde(p: &BC1Params, lambda: C64) -> Result<C64> {
    p.check_transform_domain()?;
    let rho = p.rho();
    let h = 0.5 * (p.sigma - rho);
    let r = |x: f64| C64::new(x, 0.0);
    let q = gamma_quotient(
        &[r(0.5 * (p.iota + 1.0) + p.b), r(0.5 * p.sigma - rho), lambda * 0.5 + h, -lambda * 0.5 + h],
        &[r(0.5 * (p.sigma + 1.0 - p.iota)), r(h + 0.5 * rho), r(h - 0.5 * rho)],
    )?;
    Ok(q * (2.0 * rho * std::f64::consts::LN_2).exp())
}

/// `𝒬⁽⁰⁾_{n,±}(x)`, the Rodrigues polynomial with `𝒬(D) w_σ = Q⁽⁰⁾_{n,±}`.
pub fn rodrigues_poly_eval(p: &BC1Params, n: u32, parity: Parity, x: C64) -> Result<C64> {
    let s0 = p.sigma0();
    let r = |v: f64| C64::new(v, 0.0);
    let h = 0.5 * (p.sigma - p.rho());
    let top = match parity {
        Parity::Even => 0.5 * p.sigma,
        Parity::Odd => 0.5 * p.sigma + 1.0,
    };
    let spec = HypSpec::new(
        vec![r(-f64::from(n)), r(f64::from(n) + s0 + p.delta(parity) + 1.0), x * 0.5 + h, -x * 0.5 + h],
        vec![r(s0 + 1.0), r(top), r(0.5 * (p.sigma + 1.0 - p.iota))],
    )?;
    let lead = pochhammer(r(s0 + 1.0), n) / pochhammer(r(1.0), n);
    let v = lead * hyp_terminating(&spec, r(1.0))?;
    Ok(match parity {
        Parity::Even => v,
        Parity::Odd => -v * (x + p.rho()) / p.sigma,
    })
}

/// `L_{k,m}(x)` or `M_{k,m}(x)`:
/// `₃F₂(-k, (σ-ρ+x)/2+m, (σ-ρ-x)/2+m; σ/2+m (+1 for M), (σ+1-ι)/2+m; 1)`.
pub fn lm_poly_eval(p: &BC1Params, which: LmKind, k: u32, m: u32, x: C64) -> Result<C64> {
    let r = |v: f64| C64::new(v, 0.0);
    let mf = f64::from(m);
    let h = 0.5 * (p.sigma - p.rho()) + mf;
    let top = 0.5 * p.sigma + mf + if which == LmKind::M { 1.0 } else { 0.0 };
    let spec = HypSpec::new(
        vec![r(-f64::from(k)), x * 0.5 + h, -x * 0.5 + h],
        vec![r(top), r(0.5 * (p.sigma + 1.0 - p.iota) + mf)],
    )?;
    hyp_terminating(&spec, r(1.0))
}

fn nonzero(v: C64, what: &str) -> Result<C64> {
    if v == C64::new(0.0, 0.0) {
        Err(Error::Degenerate(format!("{what} vanishes")))
    } else {
        Ok(v)
    }
}

/// The polynomial `P` with `ℱ±₁ Q^{(k)}_{n,±}(λ) = P(±λ) w̃_σ(λ)`.
///
/// `k = 0` is the terminating ₄F₃; `k > 0` sums `B_{m,σ} L_{k,m}` (even) or
/// `(x+ρ) B_{m,σ} M_{k,m}` (odd) with the Jacobi coefficients.
pub fn transform_multiplier(p: &BC1Params, spec: QSpec, x: C64, shift: OddSeriesShift) -> Result<C64> {
    if spec.k == 0 {
        return rodrigues_poly_eval(p, spec.n, spec.parity, x);
    }
    let r = |v: f64| C64::new(v, 0.0);
    let (n, k) = (f64::from(spec.n), f64::from(spec.k));
    let s0 = p.sigma0();
    let delta = match (spec.parity, shift) {
        (Parity::Even, _) | (Parity::Odd, OddSeriesShift::Delta0) => p.delta0(),
        (Parity::Odd, OddSeriesShift::Delta1) => p.delta1(),
    };
    let h = 0.5 * (p.sigma - p.rho());
    let half_s = 0.5 * p.sigma;
    let half_si = 0.5 * (p.sigma + 1.0 - p.iota);
    let mut sum = C64::new(0.0, 0.0);
    for m in 0..=spec.n {
        let coeff = pochhammer(r(-n), m) * pochhammer(r(n + s0 + delta + 2.0 * k + 1.0), m)
            / (nonzero(pochhammer(r(s0 + 1.0), m), "(σ₀+1)_m")? * pochhammer(r(1.0), m));
        let bern = pochhammer(x * 0.5 + h, m) * pochhammer(-x * 0.5 + h, m);
        let term = match spec.parity {
            Parity::Even => {
                let norm = nonzero(pochhammer(r(half_s), m) * pochhammer(r(half_si), m), "b_{m,σ}")?;
                bern * lm_poly_eval(p, LmKind::L, spec.k, m, x)? / norm
            }
            Parity::Odd => {
                let norm = -p.sigma * pochhammer(r(half_s + 1.0), m) * pochhammer(r(half_si), m);
                let norm = nonzero(norm, "odd shift constant")?;
                (x + p.rho()) * bern * lm_poly_eval(p, LmKind::M, spec.k, m, x)? / norm
            }
        };
        sum += coeff * term;
    }
    Ok(sum * pochhammer(r(s0 + 1.0), spec.n) / pochhammer(r(1.0), spec.n))
}

/// Closed-form `(ℱ₁Q, ℱ₋₁Q)` at an arbitrary `λ`.
pub fn closed_transform_at(p: &BC1Params, spec: QSpec, lambda: C64, shift: OddSeriesShift) -> Result<TransformValue> {
    let w = w_tilde(p, lambda)?;
    let plus = transform_multiplier(p, spec, lambda, shift)?;
    let minus = if spec.parity.is_odd() { transform_multiplier(p, spec, -lambda, shift)? } else { plus };
    Ok(TransformValue::new(plus * w, minus * w))
}

/// Closed-form transform on the spectral axis, odd sums with `δ₁`.
pub fn closed_transform(p: &BC1Params, spec: QSpec, sp: SpectralPoint) -> Result<TransformValue> {
    closed_transform_at(p, spec, sp.lambda(), OddSeriesShift::Delta1)
}

//! Formulas exactly as commonly printed, kept so reports can quantify how
//! far they sit from the forms that pass the checks. Nothing in the main
//! pipeline calls these.

use super::{gamma_quotient, BC1Params, SpectralPoint};
use crate::specfun::{gauss_2f1, gauss_2f1_deriv, ln_gamma_real, C64};
use crate::{Error, Parity, Result};

/// `₂F₁(A, B; C; -sinh²t) + sinh(2t)/(λ+ρ) · ₂F₁'(A, B; C; -sinh²t)`.
/// Does not satisfy the eigen-equation; pole at `λ = -ρ`.
pub fn eigenfunction_printed(p: &BC1Params, lambda: C64, t: f64) -> Result<C64> {
    let rho = p.rho();
    let denom = lambda + rho;
    if denom == C64::new(0.0, 0.0) {
        return Err(Error::Pole("lambda = -rho".into()));
    }
    let a = denom * 0.5;
    let b = (rho - lambda) * 0.5;
    let c = C64::new(p.b + 0.5 * (p.iota + 1.0), 0.0);
    let x = -t.sinh().powi(2);
    Ok(gauss_2f1(a, b, c, x)? + gauss_2f1_deriv(a, b, c, x)? * (2.0 * t).sinh() / denom)
}

/// `c` with `b` in place of `b/2` in the half-argument Gammas.
pub fn c_function_printed(p: &BC1Params, lambda: C64) -> Result<C64> {
    let h = lambda * 0.5 + p.b;
    gamma_quotient(&[lambda, h], &[lambda + p.b, h + 0.5 * p.iota])
}

pub fn c_minus1_printed(p: &BC1Params, lambda: C64) -> Result<C64> {
    let h = lambda * 0.5 + p.b + 1.0;
    gamma_quotient(&[lambda + 1.0, h], &[lambda + p.b + 1.0, h + 0.5 * p.iota])
}

pub fn muhat_density_printed(p: &BC1Params, sp: SpectralPoint) -> Result<f64> {
    let c0 = c_minus1_printed(p, C64::new(p.rho(), 0.0))?.re;
    let c = c_function_printed(p, sp.lambda())?;
    Ok(c0 * c0 / (2.0 * std::f64::consts::PI * c.norm_sqr()))
}

/// `w̃_σ` with `Γ(σ/2 + ι + b)` in place of `Γ(σ/2 - ι - b)`.
pub fn w_tilde_printed(p: &BC1Params, lambda: C64) -> Result<C64> {
    let ratio = (ln_gamma_real(0.5 * p.sigma + p.rho())? - ln_gamma_real(0.5 * p.sigma - p.rho())?).exp();
    Ok(super::w_tilde(p, lambda)? * ratio)
}

/// Norm with `Γ(n + σ₀)` in place of `Γ(n + σ₀ + 1)`.
pub fn q_norm_sq_printed(p: &BC1Params, n: u32, k: u32, parity: Parity) -> Result<f64> {
    let spec = super::QSpec::new(n, k, parity);
    let nf = f64::from(n);
    Ok(super::q_norm_sq_closed(p, spec)? / (nf + p.sigma0()))
}

//! Double-precision special functions: Gamma, Pochhammer symbols, Gauss
//! `₂F₁` on the negative axis, terminating `pFq` sums and Jacobi polynomials.

mod gamma;
mod hypergeometric;

pub use gamma::{gamma_complex, gamma_real, ln_gamma, ln_gamma_real};
pub use hypergeometric::{gauss_2f1, gauss_2f1_deriv, gauss_2f1_series, hyp_terminating, HypSpec};
pub use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// `(a)_m` for complex `a`.
pub fn pochhammer(a: C64, m: u32) -> C64 {
    (0..m).fold(C64::new(1.0, 0.0), |acc, j| acc * (a + f64::from(j)))
}

pub fn pochhammer_real(a: f64, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (a + f64::from(j)))
}

/// `P_n^{(α,β)}(x)`.
///
/// Summed as `Σ_s C(n+α, n-s) C(n+β, s) ((x-1)/2)^s ((x+1)/2)^{n-s}`. This
/// equals `(α+1)_n/n! ₂F₁(-n, n+α+β+1; α+1; (1-x)/2)` but never divides by
/// `(α+1)_m` and loses far less to cancellation on `[-1, 1]`.
pub fn jacobi_poly(n: u32, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    if !(alpha.is_finite() && beta.is_finite() && x.is_finite()) {
        return Err(Error::Domain(format!("jacobi_poly({n}, {alpha}, {beta}, {x}) has non-finite input")));
    }
    let (lo, hi) = (0.5 * (x - 1.0), 0.5 * (x + 1.0));
    let nf = f64::from(n);
    let sum = (0..=n)
        .map(|s| {
            let sf = f64::from(s);
            let c_alpha = pochhammer_real(alpha + sf + 1.0, n - s) / pochhammer_real(1.0, n - s);
            let c_beta = pochhammer_real(nf + beta - sf + 1.0, s) / pochhammer_real(1.0, s);
            c_alpha * c_beta * lo.powi(s as i32) * hi.powi((n - s) as i32)
        })
        .sum();
    Ok(sum)
}

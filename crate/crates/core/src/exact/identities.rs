use num_traits::One;

use super::operator::{
    bernstein_const, bernstein_poly, l_poly, m_poly, odd_bernstein_const, rodrigues_poly, OperatorPoly,
};
use super::{factorial, int, pochhammer, pochhammer_divisor, AlgebraParams, Monomial, Rat, SigmaSpan};
use crate::{Parity, Result};

/// `w_{σ+2m,k} · tanh^ε` expanded as `Σ_j (-k)_j/j! cosh^{-(σ+2m+2j)} tanh^ε`.
pub fn weight_span(params: &AlgebraParams, m: u32, k: u32, odd: bool) -> SigmaSpan {
    let mut s = SigmaSpan::zero(params);
    let minus_k = int(-i64::from(k));
    for j in 0..=k {
        let c = pochhammer(&minus_k, j) / factorial(j);
        let mono = if odd { Monomial::odd(m + j) } else { Monomial::even(m + j) };
        s.add_term(mono, c);
    }
    s
}

/// `(B_{m,σ}(D) w_σ, b_{m,σ} w_{σ+2m})`
pub fn bernstein_even(params: &AlgebraParams, m: u32) -> (SigmaSpan, SigmaSpan) {
    let lhs = bernstein_poly(params, m).apply(&SigmaSpan::weight(params));
    let rhs = SigmaSpan::monomial(params, Monomial::even(m), bernstein_const(params, m));
    (lhs, rhs)
}

/// `((D + ρ) B_{m,σ}(D) w_σ, (-σ)(σ/2+1)_m((σ+1-ι)/2)_m w_{σ+2m} tanh)`
pub fn bernstein_odd(params: &AlgebraParams, m: u32) -> (SigmaSpan, SigmaSpan) {
    let op = &OperatorPoly::linear(params.rho(), Rat::one()) * &bernstein_poly(params, m);
    let lhs = op.apply(&SigmaSpan::weight(params));
    let rhs = SigmaSpan::monomial(params, Monomial::odd(m), odd_bernstein_const(params, m));
    (lhs, rhs)
}

/// `(B_{m,σ}(D) L_{k,m}(D) w_σ, b_{m,σ} w_{σ+2m,k})`
pub fn shifted_weight_even(params: &AlgebraParams, m: u32, k: u32) -> Result<(SigmaSpan, SigmaSpan)> {
    let op = &bernstein_poly(params, m) * &l_poly(params, k, m)?;
    let lhs = op.apply(&SigmaSpan::weight(params));
    let rhs = weight_span(params, m, k, false).scaled(&bernstein_const(params, m));
    Ok((lhs, rhs))
}

/// `((D + ρ) B_{m,σ}(D) M_{k,m}(D) w_σ, (-σ)(σ/2+1)_m((σ+1-ι)/2)_m w_{σ+2m,k} tanh)`
pub fn shifted_weight_odd(params: &AlgebraParams, m: u32, k: u32) -> Result<(SigmaSpan, SigmaSpan)> {
    let op = &(&OperatorPoly::linear(params.rho(), Rat::one()) * &bernstein_poly(params, m))
        * &m_poly(params, k, m)?;
    let lhs = op.apply(&SigmaSpan::weight(params));
    let rhs = weight_span(params, m, k, true).scaled(&odd_bernstein_const(params, m));
    Ok((lhs, rhs))
}

/// `Q^{(k)}_{n,±}` expanded directly from the terminating Jacobi series in
/// `cosh^{-2} t`:
/// `w_{σ,k} P_n^{(σ₀, δ+2k)}(2tanh²t - 1) tanh^ε`.
pub fn direct_q_span(params: &AlgebraParams, n: u32, k: u32, parity: Parity) -> Result<SigmaSpan> {
    let sigma0 = params.sigma0();
    let delta = match parity {
        Parity::Even => params.delta0(),
        Parity::Odd => params.delta1(),
    };
    let lower = &sigma0 + Rat::one();
    let upper = int(i64::from(n)) + &sigma0 + delta + int(2 * i64::from(k)) + Rat::one();
    let prefactor = pochhammer(&lower, n) / factorial(n);
    let mut acc = SigmaSpan::zero(params);
    for m in 0..=n {
        let c = pochhammer(&int(-i64::from(n)), m) * pochhammer(&upper, m)
            / (pochhammer_divisor(&lower, m, "σ₀ + 1")? * factorial(m));
        acc = &acc + &weight_span(params, m, k, parity.is_odd()).scaled(&(c * &prefactor));
    }
    Ok(acc)
}

/// `Q^{(k)}_{n,±}` built as an operator polynomial in `D` applied to `w_σ`.
pub fn rodrigues_span(params: &AlgebraParams, n: u32, k: u32, parity: Parity) -> Result<SigmaSpan> {
    Ok(rodrigues_poly(params, n, k, parity)?.apply(&SigmaSpan::weight(params)))
}

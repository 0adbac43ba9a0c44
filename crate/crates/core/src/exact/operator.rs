use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{factorial, int, pochhammer, pochhammer_divisor, AlgebraParams, Rat, SigmaSpan};
use crate::{Parity, Result};

/// Polynomial in the Cherednik operator, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPoly {
    coeffs: Vec<Rat>,
}

impl OperatorPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// `c0 + c1·x`
    pub fn linear(c0: Rat, c1: Rat) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// `P(D) f`, Horner style.
    pub fn apply(&self, f: &SigmaSpan) -> SigmaSpan {
        let mut acc = SigmaSpan::zero(f.base());
        for c in self.coeffs.iter().rev() {
            acc = &acc.cherednik() + &f.scaled(c);
        }
        acc
    }
}

impl Add for &OperatorPoly {
    type Output = OperatorPoly;

    fn add(self, rhs: &OperatorPoly) -> OperatorPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rat::zero();
        OperatorPoly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &OperatorPoly {
    type Output = OperatorPoly;

    fn mul(self, rhs: &OperatorPoly) -> OperatorPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return OperatorPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        OperatorPoly::from_coeffs(out)
    }
}

/// `Π_{j<m} ((σ-ρ+x)/2 + s + j)((σ-ρ-x)/2 + s + j)`, the product of the
/// two Pochhammer factors shifted by `s`.
fn paired_pochhammer(params: &AlgebraParams, shift: &Rat, m: u32) -> OperatorPoly {
    let half = super::rat(1, 2);
    let centre = (params.sigma() - params.rho()) * &half + shift;
    let mut acc = OperatorPoly::one();
    for j in 0..m {
        let c = &centre + int(i64::from(j));
        // (c + x/2)(c - x/2) = c² - x²/4
        let factor = OperatorPoly::from_coeffs(vec![&c * &c, Rat::zero(), super::rat(-1, 4)]);
        acc = &acc * &factor;
    }
    acc
}

/// `B_{m,σ}(x) = Π_± ((σ - ρ ± x)/2)_m`
pub fn bernstein_poly(params: &AlgebraParams, m: u32) -> OperatorPoly {
    paired_pochhammer(params, &Rat::zero(), m)
}

/// `b_{m,σ} = (σ/2)_m ((σ+1-ι)/2)_m`
pub fn bernstein_const(params: &AlgebraParams, m: u32) -> Rat {
    pochhammer(&half_sigma(params), m) * pochhammer(&half_sigma_iota(params), m)
}

/// `(-σ)(σ/2 + 1)_m ((σ+1-ι)/2)_m`, the constant of the odd shift formula.
pub fn odd_bernstein_const(params: &AlgebraParams, m: u32) -> Rat {
    -(params.sigma().clone())
        * pochhammer(&(half_sigma(params) + Rat::one()), m)
        * pochhammer(&half_sigma_iota(params), m)
}

fn half_sigma(params: &AlgebraParams) -> Rat {
    params.sigma() / int(2)
}

fn half_sigma_iota(params: &AlgebraParams) -> Rat {
    (params.sigma() + Rat::one() - params.iota()) / int(2)
}

/// Terminating `₃F₂(-k, (σ-ρ+x)/2 + m, (σ-ρ-x)/2 + m; top + m, (σ+1-ι)/2 + m; 1)`.
fn shifted_3f2(params: &AlgebraParams, k: u32, m: u32, top: Rat) -> Result<OperatorPoly> {
    let shift = int(i64::from(m));
    let top = top + &shift;
    let second = half_sigma_iota(params) + &shift;
    let mut acc = OperatorPoly::zero();
    for j in 0..=k {
        let denom = pochhammer_divisor(&top, j, "top + m")?
            * pochhammer_divisor(&second, j, "(σ+1-ι)/2 + m")?
            * factorial(j);
        let coeff = pochhammer(&int(-i64::from(k)), j) / denom;
        acc = &acc + &paired_pochhammer(params, &shift, j).scaled(&coeff);
    }
    Ok(acc)
}

/// `L_{k,m}(x)`: with it, `B_{m,σ}(D) L_{k,m}(D) w_σ = b_{m,σ} w_{σ+2m,k}`.
pub fn l_poly(params: &AlgebraParams, k: u32, m: u32) -> Result<OperatorPoly> {
    shifted_3f2(params, k, m, half_sigma(params))
}

/// `M_{k,m}(x)`: the odd companion of [`l_poly`], denominator `σ/2 + 1 + m`.
pub fn m_poly(params: &AlgebraParams, k: u32, m: u32) -> Result<OperatorPoly> {
    shifted_3f2(params, k, m, half_sigma(params) + Rat::one())
}

/// The polynomial `P` with `P(D) w_σ = Q^{(k)}_{n,±1}`.
///
/// For `k = 0` this is the terminating ₄F₃ expanded term by term; for
/// `k > 0` each term additionally carries `L_{k,m}` (even) or `M_{k,m}` (odd).
pub fn rodrigues_poly(params: &AlgebraParams, n: u32, k: u32, parity: Parity) -> Result<OperatorPoly> {
    let sigma0 = params.sigma0();
    let delta = match parity {
        Parity::Even => params.delta0(),
        Parity::Odd => params.delta1(),
    };
    let upper = int(i64::from(n)) + &sigma0 + delta + int(2 * i64::from(k)) + Rat::one();
    let lower = &sigma0 + Rat::one();
    let prefactor = pochhammer(&lower, n) / factorial(n);

    let mut acc = OperatorPoly::zero();
    for m in 0..=n {
        let hyp = pochhammer(&int(-i64::from(n)), m) * pochhammer(&upper, m)
            / (pochhammer_divisor(&lower, m, "σ₀ + 1")? * factorial(m));
        let term = match parity {
            Parity::Even => {
                let norm = nonzero(bernstein_const(params, m), "b_{m,σ}")?;
                &bernstein_poly(params, m) * &l_poly(params, k, m)?.scaled(&(hyp / norm))
            }
            Parity::Odd => {
                let norm = nonzero(odd_bernstein_const(params, m), "odd shift constant")?;
                let shifted = OperatorPoly::linear(params.rho(), Rat::one());
                &(&shifted * &bernstein_poly(params, m)) * &m_poly(params, k, m)?.scaled(&(hyp / norm))
            }
        };
        acc = &acc + &term;
    }
    Ok(acc.scaled(&prefactor))
}

fn nonzero(r: Rat, what: &str) -> Result<Rat> {
    if r.is_zero() {
        Err(crate::Error::Degenerate(format!("{what} vanishes")))
    } else {
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Monomial};

    fn reference() -> AlgebraParams {
        AlgebraParams::from_ratios((1, 1), (1, 1), (6, 1)).unwrap()
    }

    #[test]
    fn identity_polynomial_is_identity() {
        let p = reference();
        let f = SigmaSpan::normalize(&p, [(0, 1, rat(2, 3)), (2, 0, int(5))]);
        assert_eq!(OperatorPoly::one().apply(&f), f);
        assert!(OperatorPoly::zero().apply(&f).is_zero());
    }

    #[test]
    fn shifted_d_lowers_to_odd_monomial() {
        let p = reference();
        let d_plus_rho = OperatorPoly::linear(p.rho(), Rat::one());
        for m in 0..4 {
            let e = SigmaSpan::monomial(&p, Monomial::even(m), Rat::one());
            let want = SigmaSpan::monomial(&p, Monomial::odd(m), -(p.sigma() + int(2 * i64::from(m))));
            assert_eq!(d_plus_rho.apply(&e), want);
        }
    }

    #[test]
    fn bernstein_degree_and_first_shift() {
        let p = reference();
        for m in 0..5 {
            assert_eq!(bernstein_poly(&p, m).degree(), Some(2 * m as usize));
        }
        let lhs = bernstein_poly(&p, 1).apply(&SigmaSpan::weight(&p));
        let c = (p.sigma() / int(2)) * ((p.sigma() + int(1) - p.iota()) / int(2));
        assert_eq!(lhs, SigmaSpan::monomial(&p, Monomial::even(1), c));
    }

    #[test]
    fn l_and_m_reduce_to_one_at_k_zero() {
        let p = reference();
        for m in 0..4 {
            assert_eq!(l_poly(&p, 0, m).unwrap(), OperatorPoly::one());
            assert_eq!(m_poly(&p, 0, m).unwrap(), OperatorPoly::one());
        }
    }

    #[test]
    fn l_one_m_two_term_expansion() {
        let p = AlgebraParams::from_ratios((1, 2), (2, 1), (8, 1)).unwrap();
        let m = 2u32;
        let l = l_poly(&p, 1, m).unwrap();
        // 1 - ((σ-ρ+x)/2 + m)((σ-ρ-x)/2 + m) / ((σ/2 + m)((σ+1-ι)/2 + m))
        for x in [int(0), rat(3, 2), int(-4)] {
            let c = (p.sigma() - p.rho()) / int(2) + int(2);
            let num = (&c + &x / int(2)) * (&c - &x / int(2));
            let den = (p.sigma() / int(2) + int(2)) * ((p.sigma() + int(1) - p.iota()) / int(2) + int(2));
            assert_eq!(l.eval(&x), int(1) - num / den);
        }
    }

    #[test]
    fn rodrigues_degrees() {
        let p = reference();
        for n in 0..5 {
            assert_eq!(rodrigues_poly(&p, n, 0, Parity::Even).unwrap().degree(), Some(2 * n as usize));
            assert_eq!(rodrigues_poly(&p, n, 0, Parity::Odd).unwrap().degree(), Some(2 * n as usize + 1));
        }
        assert_eq!(rodrigues_poly(&p, 0, 0, Parity::Even).unwrap(), OperatorPoly::one());
        // -(ρ + x)/σ
        assert_eq!(
            rodrigues_poly(&p, 0, 0, Parity::Odd).unwrap(),
            OperatorPoly::linear(rat(-2, 6), rat(-1, 6))
        );
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{int, to_f64, AlgebraParams, Rat};

/// `cosh^{-(σ+2·shift)}(t) · tanh^{odd as u8}(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub shift: u32,
    pub odd: bool,
}

impl Monomial {
    pub fn even(shift: u32) -> Self {
        Self { shift, odd: false }
    }

    pub fn odd(shift: u32) -> Self {
        Self { shift, odd: true }
    }
}

/// One entry of the JSON export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanTerm {
    pub m: u32,
    pub eps: u8,
    pub num: String,
    pub den: String,
}

/// Finite rational combination `Σ c_{m,ε} cosh^{-(σ+2m)}(t) tanh^ε(t)` in
/// normal form: `ε ∈ {0, 1}` and no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSpan {
    base: AlgebraParams,
    terms: BTreeMap<Monomial, Rat>,
}

impl SigmaSpan {
    pub fn zero(base: &AlgebraParams) -> Self {
        Self { base: base.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(base: &AlgebraParams, mono: Monomial, coeff: Rat) -> Self {
        let mut s = Self::zero(base);
        s.add_term(mono, coeff);
        s
    }

    /// `w_σ = cosh^{-σ}`
    pub fn weight(base: &AlgebraParams) -> Self {
        Self::monomial(base, Monomial::even(0), Rat::one())
    }

    /// Build a span from raw `(m, j, c)` triples meaning
    /// `c · cosh^{-(σ+2m)} tanh^j`, reducing `tanh² = 1 - cosh^{-2}`.
    pub fn normalize<I>(base: &AlgebraParams, raw: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Rat)>,
    {
        let mut s = Self::zero(base);
        for (m, j, c) in raw {
            let (q, odd) = (j / 2, j % 2 == 1);
            // tanh^{2q} = Σ_i (-1)^i C(q,i) cosh^{-2i}
            for i in 0..=q {
                let mut coeff = Rat::from_integer(binomial(BigInt::from(q), BigInt::from(i))) * &c;
                if i % 2 == 1 {
                    coeff = -coeff;
                }
                s.add_term(Monomial { shift: m + i, odd }, coeff);
            }
        }
        s
    }

    pub fn base(&self) -> &AlgebraParams {
        &self.base
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: Monomial) -> Rat {
        self.terms.get(&mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Number of nonzero terms; see [`Self::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Rat::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.base);
        }
        Self {
            base: self.base.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Largest coefficient gap `max |c_a - c_b|` against another span.
    pub fn max_abs_diff(&self, other: &Self) -> Rat {
        (self - other).terms.values().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        let sigma = to_f64(self.base.sigma());
        let (sech, tanh) = (1.0 / t.cosh(), t.tanh());
        self.terms
            .iter()
            .map(|(mono, c)| {
                let v = sech.powf(sigma + 2.0 * f64::from(mono.shift)) * to_f64(c);
                if mono.odd {
                    v * tanh
                } else {
                    v
                }
            })
            .sum()
    }

    /// Exact `D f` for the Cherednik operator
    /// `D = ∂ + 2ι(1 - e^{-4t})^{-1}(1 - s) + 2b(1 - e^{-2t})^{-1}(1 - s) - ρ`.
    ///
    /// With `a = σ + 2m`, `E_m = cosh^{-a}` and `O_m = cosh^{-a} tanh`:
    ///
    /// ```text
    /// D E_m = -ρ E_m - a O_m
    /// D O_m = (2ρ - a) E_m + ρ O_m + (a + 1 - ι) E_{m+1}
    /// ```
    ///
    /// The odd rule uses `tanh/(1-e^{-4t}) = 1/2 + tanh/2 - cosh^{-2}/4` and
    /// `tanh/(1-e^{-2t}) = (1 + tanh)/2`.
    pub fn cherednik(&self) -> Self {
        let rho = self.base.rho();
        let sigma = self.base.sigma();
        let iota = self.base.iota();
        let mut out = Self::zero(&self.base);
        for (mono, c) in &self.terms {
            let a = sigma + int(2 * i64::from(mono.shift));
            let m = mono.shift;
            if mono.odd {
                out.add_term(Monomial::even(m), (int(2) * &rho - &a) * c);
                out.add_term(Monomial::odd(m), &rho * c);
                out.add_term(Monomial::even(m + 1), (&a + Rat::one() - iota) * c);
            } else {
                out.add_term(Monomial::even(m), -(&rho * c));
                out.add_term(Monomial::odd(m), -(a * c));
            }
        }
        out
    }

    pub fn to_terms(&self) -> Vec<SpanTerm> {
        self.terms
            .iter()
            .map(|(mono, c)| SpanTerm {
                m: mono.shift,
                eps: u8::from(mono.odd),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_terms()).expect("span terms serialize")
    }
}

impl Add for &SigmaSpan {
    type Output = SigmaSpan;

    fn add(self, rhs: &SigmaSpan) -> SigmaSpan {
        assert_eq!(self.base, rhs.base, "spans over different parameters");
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, c.clone());
        }
        out
    }
}

impl Sub for &SigmaSpan {
    type Output = SigmaSpan;

    fn sub(self, rhs: &SigmaSpan) -> SigmaSpan {
        assert_eq!(self.base, rhs.base, "spans over different parameters");
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, -c.clone());
        }
        out
    }
}

impl fmt::Display for SigmaSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let tag = if mono.odd { 'O' } else { 'E' };
            write!(f, "({c})·{tag}{}", mono.shift)?;
        }
        Ok(())
    }
}

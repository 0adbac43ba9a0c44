//! Exact rational engine for the Cherednik operator on the `cosh/tanh`
//! monomial family.

mod identities;
mod operator;
mod span;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use identities::{
    bernstein_even, bernstein_odd, direct_q_span, rodrigues_span, shifted_weight_even,
    shifted_weight_odd, weight_span,
};
pub use operator::{
    bernstein_const, bernstein_poly, l_poly, m_poly, odd_bernstein_const, rodrigues_poly,
    OperatorPoly,
};
pub use span::{Monomial, SigmaSpan, SpanTerm};

pub type Rat = BigRational;

/// Parse `"p/q"` or an integer into an exact rational. Decimal notation is
/// rejected so that exact computations never see a rounded value.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational \"p/q\" or integer, got {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |x: &str, signed: bool| {
        let body = if signed { x.strip_prefix(['-', '+']).unwrap_or(x) } else { x };
        !body.is_empty() && body.bytes().all(|c| c.is_ascii_digit())
    };
    if !digits(num, true) || !digits(den, false) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rising factorial `(a)_m`.
pub fn pochhammer(a: &Rat, m: u32) -> Rat {
    let mut acc = Rat::one();
    let mut x = a.clone();
    for _ in 0..m {
        acc *= &x;
        x += Rat::one();
    }
    acc
}

/// `(a)_m`, failing when it vanishes (used wherever it divides).
pub(crate) fn pochhammer_divisor(a: &Rat, m: u32, what: &str) -> Result<Rat> {
    let p = pochhammer(a, m);
    if p.is_zero() {
        Err(Error::Degenerate(format!("({what})_{m} = 0 with {what} = {a}")))
    } else {
        Ok(p)
    }
}

pub fn factorial(n: u32) -> Rat {
    pochhammer(&Rat::one(), n)
}

pub fn to_f64(r: &Rat) -> f64 {
    // Ratio<BigInt> has a correctly rounded ToPrimitive impl.
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Exact multiplicities `b`, `ι` and base weight exponent `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    b: Rat,
    iota: Rat,
    sigma: Rat,
}

impl AlgebraParams {
    /// Requires `b > 0`, `ι > 0` and `σ > ι + b`.
    pub fn new(b: Rat, iota: Rat, sigma: Rat) -> Result<Self> {
        if !b.is_positive() || !iota.is_positive() {
            return Err(Error::Domain(format!("multiplicities must be positive (b = {b}, iota = {iota})")));
        }
        if sigma <= &iota + &b {
            return Err(Error::Domain(format!("sigma = {sigma} must exceed iota + b = {}", &iota + &b)));
        }
        Ok(Self { b, iota, sigma })
    }

    pub fn parse(b: &str, iota: &str, sigma: &str) -> Result<Self> {
        Self::new(parse_rat(b)?, parse_rat(iota)?, parse_rat(sigma)?)
    }

    /// Shorthand for tests and fixed grids: `(b_num/b_den, ...)`.
    pub fn from_ratios(b: (i64, i64), iota: (i64, i64), sigma: (i64, i64)) -> Result<Self> {
        Self::new(rat(b.0, b.1), rat(iota.0, iota.1), rat(sigma.0, sigma.1))
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn iota(&self) -> &Rat {
        &self.iota
    }

    pub fn sigma(&self) -> &Rat {
        &self.sigma
    }

    pub fn rho(&self) -> Rat {
        &self.b + &self.iota
    }

    /// `σ - (ι + b + 1)`
    pub fn sigma0(&self) -> Rat {
        &self.sigma - self.rho() - Rat::one()
    }

    /// `(ι - 1)/2 + b`
    pub fn delta0(&self) -> Rat {
        (&self.iota - Rat::one()) / int(2) + &self.b
    }

    pub fn delta1(&self) -> Rat {
        self.delta0() + Rat::one()
    }

    pub fn as_f64(&self) -> (f64, f64, f64) {
        (to_f64(&self.b), to_f64(&self.iota), to_f64(&self.sigma))
    }
}

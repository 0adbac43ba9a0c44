use std::cmp::Ordering;

use num_complex::Complex64;

use crate::{Error, Result};

const SERIES_EPS: f64 = 1e-17;
const SERIES_CAP: usize = 100_000;
const TAYLOR_CAP: usize = 2_000;
/// Largest `z` handled by the plain series after the Pfaff map.
const SERIES_SWITCH: f64 = 0.5;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Parameters of a terminating `pFq`. `n` is the termination index: the
/// smallest `n` with some numerator parameter equal to `-n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypSpec {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
    n: u32,
}

fn canonical(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

impl HypSpec {
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        let n = num
            .iter()
            .filter(|a| is_nonpositive_integer(**a))
            .map(|a| -a.re)
            .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
            .ok_or_else(|| Error::Domain("no numerator parameter is a non-positive integer".into()))?;
        let (mut num, mut den) = (num, den);
        canonical(&mut num);
        canonical(&mut den);
        Ok(Self { num, den, n: n as u32 })
    }

    /// Real-parameter convenience constructor.
    pub fn real(num: &[f64], den: &[f64]) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(c(num), c(den))
    }

    pub fn termination(&self) -> u32 {
        self.n
    }
}

/// Finite sum `Σ_{m=0}^{n} Π(a)_m / Π(b)_m · x^m / m!`.
///
/// Parameters are held in canonical order, so the result is bit-identical
/// under any permutation of either list.
pub fn hyp_terminating(spec: &HypSpec, arg: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 0..spec.n {
        let k = f64::from(m);
        let mut ratio = arg / (k + 1.0);
        for a in &spec.num {
            ratio *= a + k;
        }
        for b in &spec.den {
            let d = b + k;
            if d == Complex64::new(0.0, 0.0) {
                return Err(Error::Degenerate(format!("denominator parameter {b} vanishes at index {m}")));
            }
            ratio /= d;
        }
        term *= ratio;
        sum += term;
    }
    Ok(sum)
}

/// Plain Gauss series with its `z`-derivative, for `|z| < 1`.
fn series_with_deriv(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<(Complex64, Complex64)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..SERIES_CAP {
        let k = n as f64;
        // term_{n+1}·(n+1)/z is the derivative contribution, computed before z is applied.
        let step = (a + k) * (b + k) / ((c + k) * (k + 1.0));
        dsum += term * step * (k + 1.0);
        term *= step * z;
        sum += term;
        if term.norm() <= SERIES_EPS * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                return Ok((sum, dsum));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::SlowConvergence { terms: SERIES_CAP })
}

/// Direct Gauss series `₂F₁(a, b; c; z)` for `|z| < 1`.
pub fn gauss_2f1_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    check_c(c)?;
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!("series needs |z| < 1, got {z}")));
    }
    series_with_deriv(a, b, c, z).map(|(f, _)| f)
}

fn check_c(c: Complex64) -> Result<()> {
    if is_nonpositive_integer(c) {
        Err(Error::Pole(format!("c = {} is a non-positive integer", c.re)))
    } else {
        Ok(())
    }
}

/// Continue `(H, H_u)` of a solution of
/// `u(1-u)H'' + (c - (a+b+1)u)H' - abH = 0` from `u0` to `target`, with
/// Taylor steps of at most half the distance to the singular point `0`.
fn taylor_continue(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    u0: f64,
    target: f64,
    mut h0: Complex64,
    mut h1: Complex64,
) -> Result<Complex64> {
    let mut u = u0;
    while u != target {
        let h = (target - u).max(-0.5 * u);
        let mut s_prev = h0;
        let mut s_cur = h1 * h;
        let (mut value, mut deriv) = (s_prev + s_cur, s_cur);
        let lin = 1.0 - 2.0 * u;
        let damp = u * (1.0 - u);
        let ab1 = a + b + 1.0;
        let mut quiet = 0;
        let mut converged = false;
        for n in 0..TAYLOR_CAP {
            let k = n as f64;
            let s_next = (-(k + 1.0) * (lin * k + c - ab1 * u) * s_cur * h + (a + k) * (b + k) * s_prev * h * h)
                / (damp * (k + 2.0) * (k + 1.0));
            value += s_next;
            deriv += s_next * (k + 2.0);
            s_prev = s_cur;
            s_cur = s_next;
            if s_next.norm() <= SERIES_EPS * value.norm() {
                quiet += 1;
                if quiet == 3 {
                    converged = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if !converged {
            return Err(Error::SlowConvergence { terms: TAYLOR_CAP });
        }
        h0 = value;
        h1 = deriv / h;
        u += h;
        if (u - target).abs() <= 1e-300 {
            u = target;
        }
    }
    Ok(h0)
}

/// `₂F₁(a, b; c; x)` for real `x ≤ 0`.
///
/// Pfaff maps `x` to `z = x/(x-1) ∈ [0, 1)`. The series runs directly for
/// `z ≤ 1/2`; beyond, the transformed function is carried from `z = 1/2`
/// along its ODE in `u = 1 - z = 1/(1-x)`, so `u` stays exact even when
/// `z` rounds to `1`.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    check_c(c)?;
    if !(x <= 0.0) {
        return Err(Error::Domain(format!("gauss_2f1 needs x <= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let b2 = c - b;
    let prefactor = (-a * (1.0 - x).ln()).exp();
    let u_target = 1.0 / (1.0 - x);
    let z = -x * u_target;
    let h = if z <= SERIES_SWITCH {
        series_with_deriv(a, b2, c, z)?.0
    } else {
        let (f, df) = series_with_deriv(a, b2, c, SERIES_SWITCH)?;
        // d/du = -d/dz; in u the ODE keeps its form with c' = a + b + 1 - c.
        taylor_continue(a, b2, a + b2 + 1.0 - c, 1.0 - SERIES_SWITCH, u_target, f, -df)?
    };
    let v = prefactor * h;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonConvergence(format!("2F1({a}, {b}; {c}; {x}) is not finite")))
    }
}

/// `d/dx ₂F₁(a, b; c; x) = (ab/c) ₂F₁(a+1, b+1; c+1; x)`.
pub fn gauss_2f1_deriv(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    check_c(c)?;
    let ab = a * b;
    if ab == Complex64::new(0.0, 0.0) {
        return Ok(ab);
    }
    Ok(ab / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, x)?)
}

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;

// Godfrey's coefficients for g = 607/128.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest argument with a finite `Γ(x)` in double precision.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `sin(πx)` with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    let (r, sign) = if r > 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let s = if r < 0.25 {
        (PI * r).sin()
    } else if r < 0.75 {
        (PI * (0.5 - r)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * s
}

fn lanczos_sum_real(z: f64) -> f64 {
    LANCZOS[1..].iter().enumerate().fold(LANCZOS[0], |acc, (i, c)| acc + c / (z + (i + 1) as f64))
}

fn lanczos_sum(z: Complex64) -> Complex64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(Complex64::new(LANCZOS[0], 0.0), |acc, (i, c)| acc + c / (z + (i + 1) as f64))
}

/// `Γ(x)` for real `x`.
///
/// Positive integers up to 171 are exact products. Elsewhere Lanczos with
/// the power split so that `t^{x-1/2}` never overflows early.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("gamma pole at {x}")));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(format!("gamma({x}) exceeds the double range")));
    }
    if x.fract() == 0.0 && x <= 171.0 {
        return Ok((1..x as u32).fold(1.0, |acc, k| acc * f64::from(k)));
    }
    if x < 0.5 {
        return Ok(PI / (sin_pi(x) * gamma_real(1.0 - x)?));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (z + 0.5));
    Ok((2.0 * PI).sqrt() * lanczos_sum_real(z) * half * (half * (-t).exp()))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok((PI / sin_pi(x)).ln() - ln_gamma_real(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum_real(z).ln())
}

/// `ln sin(w)` stable for large `|Im w|`; any branch.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im.abs() < 30.0 {
        w.sin().ln()
    } else if w.im > 0.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        -i * w + (i * 0.5).ln() + (1.0 - (2.0 * i * w).exp()).ln()
    } else {
        // sin w = (1/(2i)) e^{iw} (1 - e^{-2iw})
        i * w - (2.0 * i).ln() + (1.0 - (-2.0 * i * w).exp()).ln()
    }
}

/// A logarithm of `Γ(z)`. The branch is not the principal one off the
/// positive axis; `exp` of the result is always `Γ(z)`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite {z}")));
    }
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole(format!("gamma pole at {}", z.re)));
    }
    if z.re < 0.5 {
        let reflected = ln_gamma(1.0 - z)?;
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin(PI * z) - reflected);
    }
    let w = z - 1.0;
    let t = w + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (w + 0.5) * t.ln() - t + lanczos_sum(w).ln())
}

/// `Γ(z)` for complex `z`; real arguments take the [`gamma_real`] path.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        return gamma_real(z.re).map(|g| Complex64::new(g, 0.0));
    }
    let v = ln_gamma(z)?.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("gamma({z}) exceeds the double range")))
    }
}

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::{Error, Result};

/// Quadrature settings shared by the real-line and spectral rules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    /// Target relative tolerance.
    pub tol: f64,
    /// Minimum real-line truncation `T`; `∫_ℝ` becomes `∫_{-T}^{T}`.
    pub t_max: f64,
    /// Finest tanh-sinh level: step `2^{-max_level}`.
    pub max_level: u32,
    /// Spectral truncation `Λ`.
    pub spectral_cutoff: f64,
    /// Bisection depth limit for spectral panels.
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { tol: 1e-10, t_max: 12.0, max_level: 9, spectral_cutoff: 40.0, max_depth: 24 }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Result<Self> {
        let cfg = Self { tol, ..Self::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Domain(format!("tolerance must lie in (0, 1), got {}", self.tol)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::Domain(format!("truncation must be positive, got {}", self.t_max)));
        }
        if !(self.spectral_cutoff > 0.0 && self.spectral_cutoff.is_finite()) {
            return Err(Error::Domain(format!("spectral cutoff must be positive, got {}", self.spectral_cutoff)));
        }
        Ok(())
    }

    /// Truncation for an integrand decaying like `e^{-decay·|t|}`: the
    /// neglected tail sits below `tol` relative to an `O(1)` integral.
    /// Never below `t_max`, never above `4·t_max`.
    pub fn horizon(&self, decay: f64) -> f64 {
        if decay <= 0.0 {
            return 4.0 * self.t_max;
        }
        ((self.tol.recip().ln() + 8.0) / decay).clamp(self.t_max, 4.0 * self.t_max)
    }
}

const S_RANGE: f64 = 3.5;
const MIN_LEVEL: u32 = 3;
const NOISE_FLOOR: f64 = 1e3 * f64::EPSILON;

/// Node `t ∈ (0, T)` and weight `dt/ds` of the map
/// `t = T / (1 + e^{-π sinh s})`, with both logistic halves kept exact.
fn ts_node(s: f64, big_t: f64) -> (f64, f64) {
    let u = std::f64::consts::PI * s.sinh();
    let (lo, hi) = if u < 0.0 {
        let e = u.exp();
        (e / (1.0 + e), 1.0 / (1.0 + e))
    } else {
        let e = (-u).exp();
        (1.0 / (1.0 + e), e / (1.0 + e))
    };
    // dt/du = T σ(1-σ); du/ds = π cosh s
    (big_t * lo, big_t * lo * hi * 2.0 * FRAC_PI_2 * s.cosh())
}

/// Abscissae of tanh-sinh level `level`, excluding those of coarser levels.
fn level_nodes(level: u32) -> Vec<f64> {
    let h = 0.5f64.powi(level as i32);
    let n = (S_RANGE / h).floor() as i64;
    if level == 0 {
        (-n..=n).map(|i| i as f64 * h).collect()
    } else {
        (-n..=n).filter(|i| i % 2 != 0).map(|i| i as f64 * h).collect()
    }
}

/// `∫_{-T}^{T} f(t) dt` for vector-valued `f` with `dim` components,
/// folded as `∫_0^T (f(t) + f(-t)) dt`, so odd components vanish exactly.
///
/// Levels halve the step until every component satisfies
/// `|I_L - I_{L-1}| ≤ tol · Σ|w f|`, plus a rounding floor tied to the
/// largest component so that components which cancel to zero settle.
pub fn integrate_symmetric<F>(dim: usize, big_t: f64, cfg: &QuadConfig, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    let mut sum = vec![0.0; dim];
    let mut abs_sum = vec![0.0; dim];
    let mut prev: Option<Vec<f64>> = None;
    for level in 0..=cfg.max_level.max(MIN_LEVEL) {
        let evals: Vec<Result<(f64, Vec<f64>)>> = level_nodes(level)
            .into_par_iter()
            .map(|s| {
                let (t, w) = ts_node(s, big_t);
                if w == 0.0 || t == 0.0 {
                    return Ok((0.0, vec![0.0; dim]));
                }
                let a = f(t)?;
                let b = f(-t)?;
                if a.len() != dim || b.len() != dim {
                    return Err(Error::Domain(format!("integrand returned {} values, expected {dim}", a.len())));
                }
                Ok((w, a.iter().zip(&b).map(|(x, y)| x + y).collect()))
            })
            .collect();
        for e in evals {
            let (w, v) = e?;
            for ((s, a), x) in sum.iter_mut().zip(abs_sum.iter_mut()).zip(&v) {
                *s += w * x;
                *a += (w * x).abs();
            }
        }
        let h = 0.5f64.powi(level as i32);
        let current: Vec<f64> = sum.iter().map(|s| s * h).collect();
        if let Some(p) = &prev {
            let noise = NOISE_FLOOR * h * abs_sum.iter().cloned().fold(0.0, f64::max);
            let converged = current
                .iter()
                .zip(p)
                .zip(&abs_sum)
                .all(|((c, q), a)| (c - q).abs() <= cfg.tol * a * h + noise);
            if level >= MIN_LEVEL && converged {
                return Ok(current);
            }
            if current.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonConvergence("integrand produced a non-finite value".into()));
            }
        }
        prev = Some(current);
    }
    Err(Error::NonConvergence(format!(
        "tanh-sinh refinement did not settle to {} within level {}",
        cfg.tol, cfg.max_level
    )))
}

/// Scalar form of [`integrate_symmetric`] over `[-t_max, t_max]`.
pub fn integrate_real_line<F>(f: F, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    integrate_symmetric(1, cfg.t_max, cfg, |t| f(t).map(|v| vec![v])).map(|v| v[0])
}

const GL_ORDER: usize = 20;

/// 20-point Gauss–Legendre nodes and weights on `[-1, 1]` by Newton's
/// method on `P_20`.
fn gauss_legendre() -> &'static [(f64, f64); GL_ORDER] {
    static RULE: OnceLock<[(f64, f64); GL_ORDER]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut rule = [(0.0, 0.0); GL_ORDER];
        for (i, node) in rule.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            *node = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

fn gl_panel<F>(f: &F, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let mut s = 0.0;
    for &(x, w) in gauss_legendre() {
        s += w * f(mid + half * x)?;
    }
    Ok(s * half)
}

fn adapt<F>(f: &F, a: f64, b: f64, whole: f64, floor: f64, cfg: &QuadConfig, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let (left, right) = (gl_panel(f, a, m)?, gl_panel(f, m, b)?);
    let refined = left + right;
    if (refined - whole).abs() <= cfg.tol * refined.abs().max(floor) {
        return Ok(refined);
    }
    if depth >= cfg.max_depth {
        return Err(Error::NonConvergence(format!("Gauss-Legendre panel [{a}, {b}] did not settle")));
    }
    Ok(adapt(f, a, m, left, floor, cfg, depth + 1)? + adapt(f, m, b, right, floor, cfg, depth + 1)?)
}

/// Adaptive 20-point Gauss–Legendre on `[a, b]`. Nodes are interior, so an
/// integrand singular only at the endpoints is never sampled there.
///
/// The interval is first cut into `panels` equal pieces adapted in
/// parallel; pieces are summed in order, so the result is deterministic.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, panels: usize, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let coarse: Vec<Result<f64>> =
        (0..panels).into_par_iter().map(|i| gl_panel(&f, a + i as f64 * width, a + (i + 1) as f64 * width)).collect();
    let coarse = coarse.into_iter().collect::<Result<Vec<f64>>>()?;
    let floor = coarse.iter().map(|v| v.abs()).sum::<f64>() / panels as f64;
    let pieces: Vec<Result<f64>> = (0..panels)
        .into_par_iter()
        .map(|i| {
            let lo = a + i as f64 * width;
            adapt(&f, lo, lo + width, coarse[i], floor, cfg, 0)
        })
        .collect();
    pieces.into_iter().try_fold(0.0, |acc, p| p.map(|v| acc + v))
}

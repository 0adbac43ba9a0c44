//! Quadrature realizations of the transform and the checks built on them:
//! Gram matrices, forward transforms against closed forms, spectral norms
//! against `L²(dμ)` norms, and the eigen-equation residual.

mod quad;

pub use quad::{integrate_interval, integrate_real_line, integrate_symmetric, QuadConfig};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::model::{
    closed_transform_at, eigenfunction, mu_density, muhat_density, q_eval, q_norm_sq_closed, w_tilde,
    weight_eval, BC1Params, OddSeriesShift, QSpec, SpectralPoint, TransformValue,
};
use crate::report::VerificationReport;
use crate::specfun::C64;
use crate::{Parity, Result};

/// Real-valued integrand on `ℝ` that may fail.
pub type RealFn<'a> = &'a (dyn Fn(f64) -> Result<f64> + Sync);

pub const GRAM_TOL: f64 = 1e-8;
pub const TRANSFORM_TOL: f64 = 1e-6;
pub const WTILDE_TOL: f64 = 1e-8;
pub const PLANCHEREL_TOL: f64 = 1e-4;
pub const EIGEN_TOL: f64 = 1e-6;

/// Spectral panels cut before adaptive refinement.
const SPECTRAL_PANELS: usize = 16;

/// Closed values below this fraction of the same function's largest value on the
/// grid are treated as roots: deviations there are measured against the
/// floor, not the vanishing value itself.
pub const ROOT_FLOOR: f64 = 1e-8;

fn with_params(r: VerificationReport, p: &BC1Params) -> VerificationReport {
    r.param("b", p.b).param("iota", p.iota).param("sigma", p.sigma)
}

/// `(ℱ₁f_j(λ), ℱ₋₁f_j(λ))` for several `f_j` in one pass, with
/// `ℱ±₁f(λ) = ∫ f(t) G(±λ, -t) dμ(t)` over `[-T, T]`.
///
/// The eigenfunction is evaluated once per node and shared by all `f_j`.
pub fn forward_transform_many(
    p: &BC1Params,
    fs: &[RealFn<'_>],
    lambda: C64,
    big_t: f64,
    cfg: &QuadConfig,
) -> Result<Vec<TransformValue>> {
    let dim = 4 * fs.len();
    let raw = integrate_symmetric(dim, big_t, cfg, |t| {
        let mu = mu_density(p, t);
        if mu == 0.0 {
            return Ok(vec![0.0; dim]);
        }
        let gp = eigenfunction(p, lambda, -t)?;
        let gm = eigenfunction(p, -lambda, -t)?;
        let mut out = Vec::with_capacity(dim);
        for f in fs {
            let v = f(t)? * mu;
            out.extend([v * gp.re, v * gp.im, v * gm.re, v * gm.im]);
        }
        Ok(out)
    })?;
    Ok(raw.chunks(4).map(|c| TransformValue::new(C64::new(c[0], c[1]), C64::new(c[2], c[3]))).collect())
}

/// Forward transform of a single function over `[-t_max, t_max]`.
pub fn forward_transform(p: &BC1Params, f: RealFn<'_>, lambda: C64, cfg: &QuadConfig) -> Result<TransformValue> {
    Ok(forward_transform_many(p, &[f], lambda, cfg.t_max, cfg)?[0])
}

/// Quadrature transforms of `Q^{(k)}_{n,±}` for each spec at `λ`.
pub fn q_transforms(p: &BC1Params, specs: &[QSpec], lambda: C64, cfg: &QuadConfig) -> Result<Vec<TransformValue>> {
    p.check_transform_domain()?;
    let fns: Vec<Box<dyn Fn(f64) -> Result<f64> + Sync>> =
        specs.iter().map(|&s| Box::new(move |t| q_eval(p, s, t)) as Box<dyn Fn(f64) -> Result<f64> + Sync>).collect();
    let refs: Vec<RealFn<'_>> = fns.iter().map(|b| b.as_ref()).collect();
    let big_t = cfg.horizon(p.sigma - p.rho() - lambda.re.abs());
    forward_transform_many(p, &refs, lambda, big_t, cfg)
}

/// `G[i][j] = ∫ Q_i Q_j dμ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramMatrix {
    pub specs: Vec<QSpec>,
    pub entries: Vec<Vec<f64>>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.specs.len()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.entries[i][i]).collect()
    }

    /// `max_{i≠j} |G_ij| / √(G_ii G_jj)`
    pub fn max_offdiag_rel(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j {
                    let scale = (self.entries[i][i] * self.entries[j][j]).abs().sqrt();
                    worst = worst.max(self.entries[i][j].abs() / scale);
                }
            }
        }
        worst
    }

    /// Row-major CSV with a header row of column indices, 17 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i");
        for j in 0..self.dim() {
            write!(s, ",{j}").unwrap();
        }
        s.push('\n');
        for (i, row) in self.entries.iter().enumerate() {
            write!(s, "{i}").unwrap();
            for v in row {
                write!(s, ",{v:.16e}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// Gram matrix of arbitrary `Q` functions; upper triangle integrated in a
/// single vector quadrature and mirrored.
pub fn gram_matrix_specs(p: &BC1Params, specs: &[QSpec], cfg: &QuadConfig) -> Result<GramMatrix> {
    let n = specs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let big_t = cfg.horizon(2.0 * (p.sigma - p.rho()));
    let raw = integrate_symmetric(pairs.len(), big_t, cfg, |t| {
        let mu = mu_density(p, t);
        let q = specs.iter().map(|&s| q_eval(p, s, t)).collect::<Result<Vec<f64>>>()?;
        Ok(pairs.iter().map(|&(i, j)| q[i] * q[j] * mu).collect())
    })?;
    let mut entries = vec![vec![0.0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(raw) {
        entries[i][j] = v;
        entries[j][i] = v;
    }
    Ok(GramMatrix { specs: specs.to_vec(), entries })
}

/// Gram matrix of `Q^{(k)}_{0..=n_max, parity}`.
pub fn gram_matrix(p: &BC1Params, n_max: u32, k: u32, parity: Parity, cfg: &QuadConfig) -> Result<GramMatrix> {
    let specs: Vec<QSpec> = (0..=n_max).map(|n| QSpec::new(n, k, parity)).collect();
    gram_matrix_specs(p, &specs, cfg)
}

/// `∫ f g dμ`
pub fn inner_product(p: &BC1Params, f: RealFn<'_>, g: RealFn<'_>, cfg: &QuadConfig) -> Result<f64> {
    integrate_real_line(|t| Ok(f(t)? * g(t)? * mu_density(p, t)), cfg)
}

/// Gram matrix against the closed norms: off-diagonal and diagonal
/// deviations both relative, tolerance [`GRAM_TOL`].
pub fn gram_report(p: &BC1Params, n_max: u32, k: u32, parity: Parity, cfg: &QuadConfig) -> VerificationReport {
    let mut r = with_params(VerificationReport::new(format!("gram k={k} parity={parity}"), GRAM_TOL), p)
        .param("n_max", n_max)
        .param("k", k)
        .param("parity", parity.sign());
    match gram_matrix(p, n_max, k, parity, cfg) {
        Ok(g) => {
            let off = g.max_offdiag_rel();
            r.record(off * g.diagonal().iter().cloned().fold(0.0, f64::max), off);
            for (i, d) in g.diagonal().into_iter().enumerate() {
                match q_norm_sq_closed(p, g.specs[i]) {
                    Ok(c) => r.record((d - c).abs(), (d - c).abs() / c),
                    Err(e) => r.fail(e.to_string()),
                }
            }
            r.add_note(format!("diagonal[0] = {:.12}, max off-diagonal rel = {off:.2e}", g.entries[0][0]));
        }
        Err(e) => r.fail(e.to_string()),
    }
    r
}

/// Truncated spectral integral and the size of the next stretch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralNorm {
    /// `∫_0^Λ (|F₁(iν)|² + |F₋₁(iν)|²) dμ̂(ν)`
    pub value: f64,
    /// Same integrand over `[Λ, 2Λ]`.
    pub tail: f64,
}

impl SpectralNorm {
    /// `true` when the tail estimate exceeds the tolerance relative to the value.
    pub fn truncation_dominated(&self, tol: f64) -> bool {
        self.tail > tol * self.value.abs()
    }
}

pub fn spectral_norm_sq<F>(p: &BC1Params, transform: F, cfg: &QuadConfig) -> Result<SpectralNorm>
where
    F: Fn(SpectralPoint) -> Result<TransformValue> + Sync,
{
    let integrand = |nu: f64| -> Result<f64> {
        let sp = SpectralPoint::new(nu)?;
        Ok(transform(sp)?.norm_sqr() * muhat_density(p, sp)?)
    };
    let lam = cfg.spectral_cutoff;
    let value = integrate_interval(integrand, 0.0, lam, SPECTRAL_PANELS, cfg)?;
    let tail = integrate_interval(integrand, lam, 2.0 * lam, SPECTRAL_PANELS, cfg)?;
    Ok(SpectralNorm { value, tail })
}

/// Spectral norm of the closed-form transform against the closed `L²(dμ)`
/// norm. The note carries the calibration ratio `‖Q‖² / ‖ℱQ‖²`.
pub fn plancherel_check(p: &BC1Params, spec: QSpec, cfg: &QuadConfig) -> VerificationReport {
    let mut r = with_params(VerificationReport::new(format!("plancherel {spec}"), PLANCHEREL_TOL), p)
        .param("n", spec.n)
        .param("k", spec.k)
        .param("parity", spec.parity.sign())
        .param("cutoff", cfg.spectral_cutoff);
    let run = || -> Result<(SpectralNorm, f64)> {
        p.check_transform_domain()?;
        let s = spectral_norm_sq(p, |sp| closed_transform_at(p, spec, sp.lambda(), OddSeriesShift::Delta1), cfg)?;
        Ok((s, q_norm_sq_closed(p, spec)?))
    };
    match run() {
        Ok((s, want)) => {
            let dev = (s.value - want).abs();
            r.record(dev, dev / want);
            r.add_note(format!("calibration {}, tail {:.2e}", want / s.value, s.tail));
            if s.truncation_dominated(PLANCHEREL_TOL) {
                r.add_note("truncation-dominated");
            }
        }
        Err(e) => r.fail(e.to_string()),
    }
    r
}

/// Quadrature transform and closed forms at one spectral point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TransformComparison {
    pub spec: QSpec,
    pub nu: f64,
    pub quadrature: TransformValue,
    pub closed: TransformValue,
    /// Odd `k > 0` sum with `δ₀` instead of `δ₁`.
    pub closed_delta0: Option<TransformValue>,
    /// Largest closed component of this spec over the compared grid.
    pub scale: f64,
}

impl TransformComparison {
    fn rel_to(&self, closed: &TransformValue) -> f64 {
        let local = closed.plus.norm().max(closed.minus.norm());
        let denom = local.max(ROOT_FLOOR * self.scale);
        if denom == 0.0 {
            self.quadrature.max_abs_diff(closed)
        } else {
            self.quadrature.max_abs_diff(closed) / denom
        }
    }

    pub fn rel_dev(&self) -> f64 {
        self.rel_to(&self.closed)
    }

    pub fn rel_dev_delta0(&self) -> Option<f64> {
        self.closed_delta0.map(|c| self.rel_to(&c))
    }
}

/// One quadrature per `ν` (all specs share the eigenfunction values),
/// compared with the closed forms.
pub fn compare_transforms(
    p: &BC1Params,
    specs: &[QSpec],
    nus: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<TransformComparison>> {
    let mut out = Vec::with_capacity(specs.len() * nus.len());
    for &nu in nus {
        let sp = SpectralPoint::new(nu)?;
        let quad = q_transforms(p, specs, sp.lambda(), cfg)?;
        for (&spec, &quadrature) in specs.iter().zip(&quad) {
            let closed = closed_transform_at(p, spec, sp.lambda(), OddSeriesShift::Delta1)?;
            let closed_delta0 = if spec.parity.is_odd() && spec.k > 0 {
                Some(closed_transform_at(p, spec, sp.lambda(), OddSeriesShift::Delta0)?)
            } else {
                None
            };
            out.push(TransformComparison { spec, nu, quadrature, closed, closed_delta0, scale: 0.0 });
        }
    }
    for (i, &spec) in specs.iter().enumerate() {
        let scale = out
            .iter()
            .skip(i)
            .step_by(specs.len())
            .map(|c| c.closed.plus.norm().max(c.closed.minus.norm()))
            .fold(0.0, f64::max);
        for c in out.iter_mut().skip(i).step_by(specs.len()) {
            debug_assert_eq!(c.spec, spec);
            c.scale = scale;
        }
    }
    Ok(out)
}

/// Report over a set of comparisons, tolerance [`TRANSFORM_TOL`].
pub fn transform_report(name: &str, p: &BC1Params, comps: &[TransformComparison]) -> VerificationReport {
    let mut r = with_params(VerificationReport::new(name, TRANSFORM_TOL), p);
    for c in comps {
        r.record(c.quadrature.max_abs_diff(&c.closed), c.rel_dev());
    }
    r
}

/// Quadrature against closed form for one spec over a `ν` grid.
pub fn verify_transform(p: &BC1Params, spec: QSpec, nus: &[f64], cfg: &QuadConfig) -> VerificationReport {
    match compare_transforms(p, &[spec], nus, cfg) {
        Ok(c) => transform_report(&format!("transform {spec}"), p, &c),
        Err(e) => {
            let mut r = with_params(VerificationReport::new(format!("transform {spec}"), TRANSFORM_TOL), p);
            r.fail(e.to_string());
            r
        }
    }
}

/// Largest deviations of the two odd-sum variants; the smaller wins.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShiftOutcome {
    pub delta0_max_rel: f64,
    pub delta1_max_rel: f64,
    pub winner: OddSeriesShift,
}

/// `None` if no comparison involves an odd `k > 0` spec.
pub fn odd_shift_outcome(comps: &[TransformComparison]) -> Option<ShiftOutcome> {
    let mut d0: Option<f64> = None;
    let mut d1: f64 = 0.0;
    for c in comps {
        if let Some(dev0) = c.rel_dev_delta0() {
            d0 = Some(d0.unwrap_or(0.0).max(dev0));
            d1 = d1.max(c.rel_dev());
        }
    }
    d0.map(|d0| ShiftOutcome {
        delta0_max_rel: d0,
        delta1_max_rel: d1,
        winner: if d1 <= d0 { OddSeriesShift::Delta1 } else { OddSeriesShift::Delta0 },
    })
}

/// `∫ w_σ G(±λ, -t) dμ` against `w̃_σ(λ)` at each `λ` (both components).
pub fn wtilde_check(p: &BC1Params, lambdas: &[C64], cfg: &QuadConfig) -> VerificationReport {
    let mut r = with_params(VerificationReport::new("wtilde", WTILDE_TOL), p);
    let weight = |t: f64| Ok(weight_eval(p, 0, 0, t));
    for &lambda in lambdas {
        let run = || -> Result<(TransformValue, C64)> {
            let closed = w_tilde(p, lambda)?;
            let big_t = cfg.horizon(p.sigma - p.rho() - lambda.re.abs());
            let quad = forward_transform_many(p, &[&weight], lambda, big_t, cfg)?[0];
            Ok((quad, closed))
        };
        match run() {
            Ok((quad, closed)) => {
                let dev = quad.max_abs_diff(&TransformValue::new(closed, closed));
                r.record(dev, dev / closed.norm());
            }
            Err(e) => r.fail(e.to_string()),
        }
    }
    r
}

/// `|(D G(λ,·))(t) - λ G(λ, t)|` with `∂_t` by a 5-point stencil and the
/// reflection terms evaluated exactly; also returns `G(λ, t)`.
pub fn eigen_residual(p: &BC1Params, lambda: C64, t: f64) -> Result<(f64, C64)> {
    let g = |s: f64| eigenfunction(p, lambda, s);
    let h = 1e-3;
    let d = (g(t - 2.0 * h)? - g(t + 2.0 * h)? + (g(t + h)? - g(t - h)?) * 8.0) / (12.0 * h);
    let (gt, gm) = (g(t)?, g(-t)?);
    let jump = gt - gm;
    let dg = d + jump * (2.0 * p.iota / (1.0 - (-4.0 * t).exp()) + 2.0 * p.b / (1.0 - (-2.0 * t).exp())) - gt * p.rho();
    Ok(((dg - gt * lambda).norm(), gt))
}

/// Eigen-equation over a `ν × t` grid; deviation `|DG - λG| / (1 + |G|)`,
/// tolerance [`EIGEN_TOL`].
pub fn eigen_check(p: &BC1Params, nus: &[f64], ts: &[f64]) -> VerificationReport {
    let mut r = with_params(VerificationReport::new("eigen", EIGEN_TOL), p);
    let grid: Vec<(f64, f64)> = nus.iter().flat_map(|&nu| ts.iter().map(move |&t| (nu, t))).collect();
    let results: Vec<Result<(f64, C64)>> =
        grid.par_iter().map(|&(nu, t)| eigen_residual(p, C64::new(0.0, nu), t)).collect();
    for res in results {
        match res {
            Ok((dev, g)) => r.record(dev, dev / (1.0 + g.norm())),
            Err(e) => r.fail(e.to_string()),
        }
    }
    r
}

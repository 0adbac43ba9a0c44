//! Named verification suites over one parameter point.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::exact::{self, to_f64, AlgebraParams, SigmaSpan};
use crate::model::{variants, BC1Params, QSpec, SpectralPoint};
use crate::report::VerificationReport;
use crate::specfun::C64;
use crate::transform::{self, QuadConfig};
use crate::{Error, Parity, Result};

/// Spectral points used by the transform and `w̃` suites.
pub const NU_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
/// `ν` values of the eigen-equation grid.
pub const EIGEN_NUS: [f64; 3] = [0.5, 1.0, 2.0];
/// Largest shift index of the Bernstein suite.
pub const BERNSTEIN_M_MAX: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Bernstein,
    Rodrigues,
    Eigen,
    Gram,
    Wtilde,
    Transform,
    Plancherel,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Bernstein, Suite::Rodrigues, Suite::Eigen, Suite::Gram, Suite::Wtilde, Suite::Transform, Suite::Plancherel];

    /// Suites decided in rational arithmetic.
    pub fn is_exact(self) -> bool {
        matches!(self, Suite::Bernstein | Suite::Rodrigues | Suite::All)
    }

    /// Suites that need `σ > 2(ι + b)`.
    pub fn needs_transform_domain(self) -> bool {
        matches!(self, Suite::Wtilde | Suite::Transform | Suite::Plancherel | Suite::All)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Bernstein => "bernstein",
            Suite::Rodrigues => "rodrigues",
            Suite::Eigen => "eigen",
            Suite::Gram => "gram",
            Suite::Wtilde => "wtilde",
            Suite::Transform => "transform",
            Suite::Plancherel => "plancherel",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Required by the exact suites.
    pub exact: Option<AlgebraParams>,
    pub params: BC1Params,
    pub n_max: u32,
    pub k_max: u32,
    pub quad: QuadConfig,
}

impl SuiteConfig {
    pub fn from_exact(p: AlgebraParams, n_max: u32, k_max: u32) -> Self {
        Self { params: BC1Params::from_exact(&p), exact: Some(p), n_max, k_max, quad: QuadConfig::default() }
    }

    fn exact_params(&self) -> Result<&AlgebraParams> {
        self.exact.as_ref().ok_or_else(|| Error::Parse("exact suites need rational parameters \"p/q\"".into()))
    }
}

fn timed(mut f: impl FnMut() -> Vec<VerificationReport>) -> Vec<VerificationReport> {
    let start = Instant::now();
    let mut out = f();
    let per = start.elapsed().as_secs_f64() / out.len().max(1) as f64;
    for r in &mut out {
        r.seconds = per;
    }
    out
}

fn exact_report(name: &str, p: &AlgebraParams) -> VerificationReport {
    VerificationReport::new(name, 0.0)
        .param("b", p.b().to_string())
        .param("iota", p.iota().to_string())
        .param("sigma", p.sigma().to_string())
}

fn record_spans(r: &mut VerificationReport, lhs: &SigmaSpan, rhs: &SigmaSpan) {
    let d = to_f64(&lhs.max_abs_diff(rhs));
    r.record(d, d);
}

/// Shift formulas `B_{m,σ}(D)w_σ = b_{m,σ}w_{σ+2m}` and the odd companion,
/// `m ≤ 6`.
pub fn bernstein_suite(p: &AlgebraParams) -> Vec<VerificationReport> {
    timed(|| {
        let mut even = exact_report("bernstein_even", p).param("m_max", BERNSTEIN_M_MAX);
        let mut odd = exact_report("bernstein_odd", p).param("m_max", BERNSTEIN_M_MAX);
        let pairs: Vec<_> =
            (0..=BERNSTEIN_M_MAX).into_par_iter().map(|m| (exact::bernstein_even(p, m), exact::bernstein_odd(p, m))).collect();
        for ((le, re), (lo, ro)) in &pairs {
            record_spans(&mut even, le, re);
            record_spans(&mut odd, lo, ro);
        }
        vec![even, odd]
    })
}

fn exact_pairs<F>(name: &str, p: &AlgebraParams, n_max: u32, k_max: u32, f: F) -> VerificationReport
where
    F: Fn(u32, u32) -> Result<(SigmaSpan, SigmaSpan)> + Sync,
{
    let mut r = exact_report(name, p).param("n_max", n_max).param("k_max", k_max);
    let grid: Vec<(u32, u32)> = (0..=n_max).flat_map(|n| (0..=k_max).map(move |k| (n, k))).collect();
    let results: Vec<_> = grid.par_iter().map(|&(n, k)| f(n, k)).collect();
    for res in results {
        match res {
            Ok((l, rr)) => record_spans(&mut r, &l, &rr),
            Err(e) => r.fail(e.to_string()),
        }
    }
    r
}

/// `L`/`M` shift identities for `m ≤ n_max`, `k ≤ k_max`, and Rodrigues
/// against direct expansion for `n ≤ n_max`, `k ≤ k_max`.
pub fn rodrigues_suite(p: &AlgebraParams, n_max: u32, k_max: u32) -> Vec<VerificationReport> {
    timed(|| {
        vec![
            exact_pairs("shift_weight_even", p, n_max, k_max, |m, k| exact::shifted_weight_even(p, m, k)),
            exact_pairs("shift_weight_odd", p, n_max, k_max, |m, k| exact::shifted_weight_odd(p, m, k)),
            exact_pairs("rodrigues_even", p, n_max, k_max, |n, k| {
                Ok((exact::rodrigues_span(p, n, k, Parity::Even)?, exact::direct_q_span(p, n, k, Parity::Even)?))
            }),
            exact_pairs("rodrigues_odd", p, n_max, k_max, |n, k| {
                Ok((exact::rodrigues_span(p, n, k, Parity::Odd)?, exact::direct_q_span(p, n, k, Parity::Odd)?))
            }),
        ]
    })
}

/// 20 equally spaced points of `[0.1, 2]`.
pub fn eigen_t_grid() -> Vec<f64> {
    (0..20).map(|i| 0.1 + 0.1 * f64::from(i)).collect()
}

pub fn eigen_suite(p: &BC1Params) -> Vec<VerificationReport> {
    timed(|| vec![transform::eigen_check(p, &EIGEN_NUS, &eigen_t_grid())])
}

pub fn gram_suite(p: &BC1Params, n_max: u32, k_max: u32, cfg: &QuadConfig) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        for parity in Parity::BOTH {
            out.extend(timed(|| vec![transform::gram_report(p, n_max, k, parity, cfg)]));
        }
    }
    out
}

/// `w̃_σ` at `λ = 0`, `λ = ρ` and `λ = iν` for `ν` in [`NU_GRID`].
pub fn wtilde_suite(p: &BC1Params, cfg: &QuadConfig) -> Vec<VerificationReport> {
    let mut lambdas = vec![C64::new(0.0, 0.0), C64::new(p.rho(), 0.0)];
    lambdas.extend(NU_GRID.iter().map(|&nu| C64::new(0.0, nu)));
    timed(|| vec![transform::wtilde_check(p, &lambdas, cfg)])
}

/// Quadrature against closed forms for `n ≤ n_max`, `k ≤ k_max`, both
/// parities, on [`NU_GRID`]; one report per `(k, parity)` plus the odd-sum
/// shift comparison.
pub fn transform_suite(p: &BC1Params, n_max: u32, k_max: u32, cfg: &QuadConfig) -> Vec<VerificationReport> {
    let start = Instant::now();
    let specs: Vec<QSpec> = (0..=k_max)
        .flat_map(|k| Parity::BOTH.into_iter().flat_map(move |par| (0..=n_max).map(move |n| QSpec::new(n, k, par))))
        .collect();
    let comps = match transform::compare_transforms(p, &specs, &NU_GRID, cfg) {
        Ok(c) => c,
        Err(e) => {
            let mut r = VerificationReport::new("transform", transform::TRANSFORM_TOL)
                .param("b", p.b)
                .param("iota", p.iota)
                .param("sigma", p.sigma);
            r.fail(e.to_string());
            return vec![r.with_seconds(start.elapsed().as_secs_f64())];
        }
    };
    let mut out = Vec::new();
    for k in 0..=k_max {
        for parity in Parity::BOTH {
            let sel: Vec<_> = comps.iter().filter(|c| c.spec.k == k && c.spec.parity == parity).cloned().collect();
            let r = transform::transform_report(&format!("transform k={k} parity={parity}"), p, &sel)
                .param("n_max", n_max)
                .param("k", k)
                .param("parity", parity.sign());
            out.push(r);
        }
    }
    if let Some(o) = transform::odd_shift_outcome(&comps) {
        let mut r = VerificationReport::new("odd_series_shift", transform::TRANSFORM_TOL)
            .param("b", p.b)
            .param("iota", p.iota)
            .param("sigma", p.sigma);
        r.record(o.delta1_max_rel, o.delta1_max_rel);
        r.add_note(format!(
            "delta1 max rel {:.3e}, delta0 max rel {:.3e}, selected {}",
            o.delta1_max_rel, o.delta0_max_rel, o.winner
        ));
        out.push(r);
    }
    let per = start.elapsed().as_secs_f64() / out.len() as f64;
    out.into_iter().map(|r| r.with_seconds(per)).collect()
}

pub fn plancherel_suite(p: &BC1Params, n_max: u32, k_max: u32, cfg: &QuadConfig) -> Vec<VerificationReport> {
    let specs: Vec<QSpec> = (0..=k_max)
        .flat_map(|k| Parity::BOTH.into_iter().flat_map(move |par| (0..=n_max).map(move |n| QSpec::new(n, k, par))))
        .collect();
    specs.iter().flat_map(|&s| timed(|| vec![transform::plancherel_check(p, s, cfg)])).collect()
}

/// Run one suite (or all) over the configured point.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    if suite.is_exact() {
        cfg.exact_params()?;
    }
    if suite.needs_transform_domain() {
        cfg.params.check_transform_domain()?;
    }
    let p = &cfg.params;
    Ok(match suite {
        Suite::Bernstein => bernstein_suite(cfg.exact_params()?),
        Suite::Rodrigues => rodrigues_suite(cfg.exact_params()?, cfg.n_max, cfg.k_max),
        Suite::Eigen => eigen_suite(p),
        Suite::Gram => gram_suite(p, cfg.n_max, cfg.k_max, &cfg.quad),
        Suite::Wtilde => wtilde_suite(p, &cfg.quad),
        Suite::Transform => transform_suite(p, cfg.n_max, cfg.k_max, &cfg.quad),
        Suite::Plancherel => plancherel_suite(p, cfg.n_max.min(2), cfg.k_max.min(1), &cfg.quad),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, cfg)?);
            }
            out
        }
    })
}

/// How far a printed formula lies from its checked replacement.
#[derive(Clone, Debug, PartialEq)]
pub struct PrintedDeviation {
    pub formula: &'static str,
    pub max_rel_dev: f64,
}

/// Deviations of the printed forms in [`variants`] measured by the same
/// oracles that the main suites use.
pub fn printed_form_deviations(p: &BC1Params, cfg: &QuadConfig) -> Result<Vec<PrintedDeviation>> {
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for &nu in &EIGEN_NUS {
        for &t in &eigen_t_grid() {
            let lambda = C64::new(0.0, nu);
            let g = |s: f64| variants::eigenfunction_printed(p, lambda, s);
            let h = 1e-3;
            let d = (g(t - 2.0 * h)? - g(t + 2.0 * h)? + (g(t + h)? - g(t - h)?) * 8.0) / (12.0 * h);
            let (gt, gm) = (g(t)?, g(-t)?);
            let dg = d + (gt - gm) * (2.0 * p.iota / (1.0 - (-4.0 * t).exp()) + 2.0 * p.b / (1.0 - (-2.0 * t).exp()))
                - gt * p.rho();
            worst = worst.max((dg - gt * lambda).norm() / (1.0 + gt.norm()));
        }
    }
    out.push(PrintedDeviation { formula: "eigenfunction with 1/(lambda+rho)", max_rel_dev: worst });

    let zero = C64::new(0.0, 0.0);
    let printed = variants::w_tilde_printed(p, zero)?;
    let good = crate::model::w_tilde(p, zero)?;
    out.push(PrintedDeviation { formula: "w_tilde with Gamma(sigma/2+iota+b)", max_rel_dev: ((printed - good) / good).norm() });

    let mut worst: f64 = 0.0;
    for parity in Parity::BOTH {
        let spec = QSpec::new(0, 0, parity);
        let good = crate::model::q_norm_sq_closed(p, spec)?;
        let printed = variants::q_norm_sq_printed(p, 0, 0, parity)?;
        worst = worst.max((printed - good).abs() / good);
    }
    out.push(PrintedDeviation { formula: "norm with Gamma(n+sigma0)", max_rel_dev: worst });

    // n = 0 alone can coincide by accident (it does at (1, 1, 6)).
    let mut worst: f64 = 0.0;
    for n in 0..=2 {
        for parity in Parity::BOTH {
            let spec = QSpec::new(n, 1, parity);
            let want = crate::model::q_norm_sq_closed(p, spec)?;
            let value = transform::integrate_interval(
                |nu| {
                    let sp = SpectralPoint::new(nu)?;
                    Ok(crate::model::closed_transform(p, spec, sp)?.norm_sqr() * variants::muhat_density_printed(p, sp)?)
                },
                0.0,
                cfg.spectral_cutoff,
                16,
                cfg,
            )?;
            worst = worst.max((value - want).abs() / want);
        }
    }
    out.push(PrintedDeviation { formula: "spectral density with b in c(lambda)", max_rel_dev: worst });
    Ok(out)
}

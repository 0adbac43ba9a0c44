//! Parameter and grid parsing shared by every subcommand.

use std::fmt;

use cherednik_bc1::exact::{parse_rat, AlgebraParams};
use cherednik_bc1::model::BC1Params;
use cherednik_bc1::transform::QuadConfig;
use cherednik_bc1::Error;

/// Largest grid the CLI will materialize.
const MAX_GRID: usize = 1_000_000;

/// Why a run stopped early. `Usage` maps to exit 2, `Eval` to exit 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Eval(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Eval(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Eval(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Eval(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Eval(format!("output: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Eval(format!("output: {e}"))
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// Parameters as given on the command line. `exact` is present only when
/// all three parse as rationals.
#[derive(Clone, Debug)]
pub struct Params {
    pub exact: Option<AlgebraParams>,
    pub float: BC1Params,
}

fn is_decimal(s: &str) -> bool {
    let s = s.trim();
    s.contains(['.', 'e', 'E']) && s.parse::<f64>().is_ok()
}

fn parse_one(name: &str, s: &str) -> Outcome<(Option<cherednik_bc1::exact::Rat>, f64)> {
    match parse_rat(s) {
        Ok(r) => {
            let v = cherednik_bc1::exact::to_f64(&r);
            Ok((Some(r), v))
        }
        Err(_) if is_decimal(s) => {
            let v: f64 = s.trim().parse().map_err(|_| Failure::Usage(format!("--{name}: bad number {s:?}")))?;
            Ok((None, v))
        }
        Err(_) => Err(Failure::Usage(format!("--{name}: expected \"p/q\", an integer or a decimal, got {s:?}"))),
    }
}

impl Params {
    pub fn parse(b: &str, iota: &str, sigma: &str) -> Outcome<Self> {
        let (rb, fb) = parse_one("b", b)?;
        let (ri, fi) = parse_one("iota", iota)?;
        let (rs, fs) = parse_one("sigma", sigma)?;
        let float = BC1Params::new(fb, fi, fs)?;
        let exact = match (rb, ri, rs) {
            (Some(b), Some(i), Some(s)) => Some(AlgebraParams::new(b, i, s)?),
            _ => None,
        };
        Ok(Self { exact, float })
    }

    pub fn exact(&self) -> Outcome<&AlgebraParams> {
        self.exact
            .as_ref()
            .ok_or_else(|| Failure::Usage("exact computations need rational parameters \"p/q\", not decimals".into()))
    }

    pub fn transform_domain(&self) -> Outcome<&BC1Params> {
        self.float.check_transform_domain()?;
        Ok(&self.float)
    }
}

/// `a:b:step` (inclusive of `b` up to rounding) or a single value.
pub fn parse_grid(flag: &str, s: &str) -> Outcome<Vec<f64>> {
    let bad = |why: &str| Failure::Usage(format!("--{flag} {s:?}: {why}"));
    let nums: Vec<f64> = s
        .split(':')
        .map(|x| x.trim().parse::<f64>().map_err(|_| bad("expected a:b:step or a number")))
        .collect::<Outcome<_>>()?;
    if nums.iter().any(|x| !x.is_finite()) {
        return Err(bad("values must be finite"));
    }
    match nums[..] {
        [x] => Ok(vec![x]),
        [a, b, step] => {
            if step <= 0.0 || b < a {
                return Err(bad("need a <= b and step > 0"));
            }
            let count = ((b - a) / step + 1e-9).floor() + 1.0;
            if count > MAX_GRID as f64 {
                return Err(bad("grid too large"));
            }
            Ok((0..count as usize).map(|i| a + i as f64 * step).collect())
        }
        _ => Err(bad("expected a:b:step or a number")),
    }
}

/// Quadrature settings: `--tol` wins over `CHEREDNIK_TOL`.
pub fn quad_config(tol: Option<f64>) -> Outcome<QuadConfig> {
    let tol = match tol {
        Some(t) => Some(t),
        None => match std::env::var("CHEREDNIK_TOL") {
            Ok(s) => Some(s.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("CHEREDNIK_TOL: bad number {s:?}")))?),
            Err(_) => None,
        },
    };
    match tol {
        Some(t) => Ok(QuadConfig::with_tol(t)?),
        None => Ok(QuadConfig::default()),
    }
}

/// Sizes the global rayon pool from `CHEREDNIK_THREADS` when set.
pub fn init_threads() -> Outcome<()> {
    let Ok(s) = std::env::var("CHEREDNIK_THREADS") else {
        return Ok(());
    };
    let n: usize = s
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("CHEREDNIK_THREADS: expected a positive integer, got {s:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Eval(format!("thread pool: {e}")))
}

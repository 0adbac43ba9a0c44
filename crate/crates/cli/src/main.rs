//! `cherednik`: evaluation, export and verification front end.
//!
//! Exit codes: 0 success, 1 evaluation or verification failure, 2 usage
//! or configuration error.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::Params;

#[derive(Debug, Parser)]
#[command(name = "cherednik", version, about = "Rank-one Cherednik-Opdam transforms: evaluation, export and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Multiplicity b, as "p/q", an integer, or a decimal.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    b: String,
    /// Multiplicity iota.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    iota: String,
    /// Weight exponent sigma.
    #[arg(long, default_value = "6", allow_hyphen_values = true)]
    sigma: String,
    /// Quadrature tolerance; overrides CHEREDNIK_TOL.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct SpecArgs {
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// +1 (even) or -1 (odd).
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    parity: String,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    /// Q(t) on a t-grid.
    Q,
    /// G(i nu, t) on a t-grid at a single nu.
    G,
    /// Spherical transform of the weight on a nu-grid.
    Wtilde,
    /// Measure density on a t-grid.
    Mu,
    /// Spectral density on a nu-grid.
    Muhat,
    /// Exact Rodrigues expansion of Q as JSON terms.
    Span,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one function over a grid.
    Eval {
        #[arg(long, value_enum)]
        what: What,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        spec: SpecArgs,
        /// t-grid "a:b:step" or a single value.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// nu-grid "a:b:step" or a single value.
        #[arg(long)]
        nu: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Gram matrix of Q_0..Q_{n-max} as CSV, with a JSON comparison of the
    /// diagonal against the closed norms.
    Gram {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        parity: String,
        #[command(flatten)]
        out: OutArgs,
        /// JSON report file; stderr when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Quadrature transform of Q against the closed form on a nu-grid.
    Transform {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "0.25:4:0.25")]
        nu: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite and write JSON reports.
    Verify {
        /// bernstein, rodrigues, eigen, gram, wtilde, transform, plancherel or all.
        suite: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
        #[command(flatten)]
        out: OutArgs,
        /// Write 0 for runtimes so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// c-function, spectral density and the Plancherel integrand of Q on a
    /// nu-grid.
    SpectralDensity {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "0.1:10:0.1")]
        nu: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

impl ParamArgs {
    fn parse(&self) -> input::Outcome<Params> {
        Params::parse(&self.b, &self.iota, &self.sigma)
    }
}

fn run(cli: Cli) -> input::Outcome<bool> {
    input::init_threads()?;
    match cli.command {
        Command::Eval { what, params, spec, t, nu, format, out } => {
            // No quadrature here; the override is still validated.
            input::quad_config(params.tol)?;
            let p = params.parse()?;
            let spec = commands::qspec(spec.n, spec.k, &spec.parity)?;
            commands::eval(what, &p, spec, t.as_deref(), nu.as_deref(), format, out.out.as_deref())?;
            Ok(true)
        }
        Command::Gram { params, n_max, k, parity, out, report, no_timing } => {
            let quad = input::quad_config(params.tol)?;
            let p = params.parse()?;
            let spec = commands::qspec(0, k, &parity)?;
            commands::gram(&p, n_max, spec, &quad, out.out.as_deref(), report.as_deref(), no_timing)
        }
        Command::Transform { params, spec, nu, out } => {
            let quad = input::quad_config(params.tol)?;
            let p = params.parse()?;
            let spec = commands::qspec(spec.n, spec.k, &spec.parity)?;
            commands::transform(&p, spec, &nu, &quad, out.out.as_deref())
        }
        Command::Verify { suite, params, n_max, k_max, out, no_timing } => {
            let quad = input::quad_config(params.tol)?;
            let p = params.parse()?;
            commands::verify(&suite, p, n_max, k_max, quad, out.out.as_deref(), no_timing)
        }
        Command::SpectralDensity { params, spec, nu, out } => {
            input::quad_config(params.tol)?;
            let p = params.parse()?;
            let spec = commands::qspec(spec.n, spec.k, &spec.parity)?;
            commands::spectral_density(&p, spec, &nu, out.out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

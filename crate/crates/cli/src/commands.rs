use std::io::Write;
use std::path::Path;
use std::time::Instant;

use cherednik_bc1::exact::rodrigues_span;
use cherednik_bc1::model::{
    c_function, closed_transform, eigenfunction, mu_density, muhat_density, q_eval, w_tilde, QSpec, SpectralPoint,
};
use cherednik_bc1::report::reports_to_json;
use cherednik_bc1::specfun::C64;
use cherednik_bc1::suites::{run_suite, Suite, SuiteConfig};
use cherednik_bc1::transform::{compare_transforms, gram_matrix, gram_report, transform_report, QuadConfig};
use cherednik_bc1::Parity;
use serde_json::{Map, Value};

use crate::input::{parse_grid, Failure, Outcome, Params};
use crate::{Format, What};

pub fn qspec(n: u32, k: u32, parity: &str) -> Outcome<QSpec> {
    let parity: Parity = parity.parse()?;
    Ok(QSpec::new(n, k, parity))
}

fn sink(out: Option<&Path>) -> Outcome<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_text(out: Option<&Path>, text: &str) -> Outcome<()> {
    let mut w = sink(out)?;
    w.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Numeric table; every row has `header.len()` entries.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Floats with 17 significant digits.
    fn write_csv(&self, out: Option<&Path>) -> Outcome<()> {
        let mut w = csv::Writer::from_writer(sink(out)?);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, &v)| (h.to_string(), serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("table serializes")
    }

    fn write(&self, format: Format, out: Option<&Path>) -> Outcome<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => write_text(out, &self.to_json()),
        }
    }
}

fn required<'a>(flag: &str, v: Option<&'a str>, what: &str) -> Outcome<&'a str> {
    v.ok_or_else(|| Failure::Usage(format!("--what {what} needs --{flag}")))
}

pub fn eval(
    what: What,
    p: &Params,
    spec: QSpec,
    t: Option<&str>,
    nu: Option<&str>,
    format: Format,
    out: Option<&Path>,
) -> Outcome<()> {
    let table = match what {
        What::Q => {
            let mut tab = Table::new(&["t", "q"]);
            for t in parse_grid("t", required("t", t, "q")?)? {
                tab.push(vec![t, q_eval(&p.float, spec, t)?]);
            }
            tab
        }
        What::G => {
            let ts = parse_grid("t", required("t", t, "g")?)?;
            let nus = parse_grid("nu", required("nu", nu, "g")?)?;
            let [nu] = nus[..] else {
                return Err(Failure::Usage("--what g takes a single --nu value".into()));
            };
            let mut tab = Table::new(&["t", "re", "im"]);
            for t in ts {
                let g = eigenfunction(&p.float, C64::new(0.0, nu), t)?;
                tab.push(vec![t, g.re, g.im]);
            }
            tab
        }
        What::Wtilde => {
            let p = p.transform_domain()?;
            let mut tab = Table::new(&["nu", "re", "im"]);
            for nu in parse_grid("nu", required("nu", nu, "wtilde")?)? {
                let w = w_tilde(p, C64::new(0.0, nu))?;
                tab.push(vec![nu, w.re, w.im]);
            }
            tab
        }
        What::Mu => {
            let mut tab = Table::new(&["t", "mu"]);
            for t in parse_grid("t", required("t", t, "mu")?)? {
                tab.push(vec![t, mu_density(&p.float, t)]);
            }
            tab
        }
        What::Muhat => {
            let mut tab = Table::new(&["nu", "muhat"]);
            for nu in parse_grid("nu", required("nu", nu, "muhat")?)? {
                tab.push(vec![nu, muhat_density(&p.float, SpectralPoint::new(nu)?)?]);
            }
            tab
        }
        What::Span => {
            let span = rodrigues_span(p.exact()?, spec.n, spec.k, spec.parity)?;
            return match format {
                Format::Json => write_text(out, &span.to_json()),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(sink(out)?);
                    w.write_record(["m", "eps", "num", "den"])?;
                    for term in span.to_terms() {
                        w.write_record([term.m.to_string(), term.eps.to_string(), term.num, term.den])?;
                    }
                    w.flush()?;
                    Ok(())
                }
            };
        }
    };
    table.write(format, out)
}

pub fn gram(
    p: &Params,
    n_max: u32,
    spec: QSpec,
    quad: &QuadConfig,
    out: Option<&Path>,
    report: Option<&Path>,
    no_timing: bool,
) -> Outcome<bool> {
    let start = Instant::now();
    let g = gram_matrix(&p.float, n_max, spec.k, spec.parity, quad)?;
    let mut r = gram_report(&p.float, n_max, spec.k, spec.parity, quad);
    r.seconds = if no_timing { 0.0 } else { start.elapsed().as_secs_f64() };
    write_text(out, &g.to_csv())?;
    match report {
        Some(path) => write_text(Some(path), &r.to_json())?,
        None => eprintln!("{}", r.to_json()),
    }
    Ok(r.pass)
}

pub fn transform(p: &Params, spec: QSpec, nu: &str, quad: &QuadConfig, out: Option<&Path>) -> Outcome<bool> {
    let fp = p.transform_domain()?;
    let nus = parse_grid("nu", nu)?;
    let comps = compare_transforms(fp, &[spec], &nus, quad)?;
    let mut tab = Table::new(&[
        "nu",
        "quad_plus_re",
        "quad_plus_im",
        "quad_minus_re",
        "quad_minus_im",
        "closed_plus_re",
        "closed_plus_im",
        "closed_minus_re",
        "closed_minus_im",
        "rel_dev",
    ]);
    for c in &comps {
        let (q, k) = (c.quadrature, c.closed);
        tab.push(vec![
            c.nu,
            q.plus.re,
            q.plus.im,
            q.minus.re,
            q.minus.im,
            k.plus.re,
            k.plus.im,
            k.minus.re,
            k.minus.im,
            c.rel_dev(),
        ]);
    }
    tab.write_csv(out)?;
    let r = transform_report(&format!("transform {spec}"), fp, &comps);
    eprintln!("{r}");
    Ok(r.pass)
}

pub fn verify(
    suite: &str,
    p: Params,
    n_max: u32,
    k_max: u32,
    quad: QuadConfig,
    out: Option<&Path>,
    no_timing: bool,
) -> Outcome<bool> {
    let suite: Suite = suite.parse()?;
    let cfg = SuiteConfig { exact: p.exact, params: p.float, n_max, k_max, quad };
    let mut reports = run_suite(suite, &cfg)?;
    if no_timing {
        for r in &mut reports {
            r.seconds = 0.0;
        }
    }
    write_text(out, &reports_to_json(&reports))?;
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!("{r}");
    }
    let pass = reports.iter().all(|r| r.pass);
    eprintln!("{suite}: {} of {} checks pass", reports.iter().filter(|r| r.pass).count(), reports.len());
    Ok(pass)
}

pub fn spectral_density(p: &Params, spec: QSpec, nu: &str, out: Option<&Path>) -> Outcome<()> {
    let fp = p.transform_domain()?;
    let mut tab = Table::new(&["nu", "c_re", "c_im", "muhat", "plancherel_integrand"]);
    for nu in parse_grid("nu", nu)? {
        let sp = SpectralPoint::new(nu)?;
        let c = c_function(fp, sp.lambda())?;
        let d = muhat_density(fp, sp)?;
        tab.push(vec![nu, c.re, c.im, d, closed_transform(fp, spec, sp)?.norm_sqr() * d]);
    }
    tab.write_csv(out)
}

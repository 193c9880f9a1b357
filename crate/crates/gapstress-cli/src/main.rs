//! Command-line surface for the gapstress library.
//!
//! Subcommands: `constants` (normalization record), `field` (grid of exact
//! stress, singular tensor, and residual), `boundary` (rim hoop-stress sweep),
//! `blowup` (max-stress growth across a gap-width ladder), `convergence`
//! (truncation ladder vs boundary-traction residual).
//!
//! Exit status: 0 success, 1 numerical failure, 2 usage error. All numeric
//! output uses fixed 17-significant-digit formatting so identical invocations
//! produce byte-identical files.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use gapstress::asymptotic::{blowup_constant, q_asymptotic, sigma_star};
use gapstress::exact::{
    constant_k, constant_p, q_series, sigma1_boundary_tt, sigma1_components, total_stress,
    CoefficientTable,
};
use gapstress::geometry::CartesianPoint;
use gapstress::{GapGeometry, Region, Truncation, DEFAULT_MAX_TERMS};

/// Accuracy used for the normalization integral regardless of --tol: it is a
/// single cheap quadrature and its value is recorded in every report.
const I0_TOL: f64 = 1e-12;

/// Traction residual threshold reported as series closure.
const CLOSURE_TARGET: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "gapstress",
    about = "Stress field around two nearly touching circular holes",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the geometry and normalization constants as a JSON record.
    Constants(ConstantsArgs),
    /// Evaluate exact stress, singular tensor, and residual on a grid.
    Field(FieldArgs),
    /// Sweep the hole rim: hoop stress two ways plus the q profile.
    Boundary(BoundaryArgs),
    /// Fit the blow-up rate of max stress across a gap-width ladder.
    Blowup(BlowupArgs),
    /// Truncation ladder: boundary-traction residual vs series length.
    Convergence(ConvergenceArgs),
}

#[derive(Args)]
struct ConstantsArgs {
    /// Hole radius.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Gap width between the holes.
    #[arg(long)]
    eps: f64,
    /// Series tail tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output path (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FieldArgs {
    /// Hole radius.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Gap width between the holes.
    #[arg(long)]
    eps: f64,
    /// Series tail tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Grid spec "x0:x1:nx,y0:y1:ny".
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Output path (standard output if omitted); with --out a
    /// PATH.meta.json provenance sidecar is written as well.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct BoundaryArgs {
    /// Hole radius.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Gap width between the holes.
    #[arg(long)]
    eps: f64,
    /// Series tail tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Sweep spec "t0:t1:nt" (default: full rim, 361 points).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Output path (standard output if omitted); with --out a
    /// PATH.meta.json provenance sidecar is written as well.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct BlowupArgs {
    /// Hole radius.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Comma-separated gap widths, at least 4 spanning at least 2 decades.
    #[arg(long)]
    eps_list: String,
    /// Series tail tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output path (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Hole radius.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Gap width between the holes.
    #[arg(long)]
    eps: f64,
    /// Finest series tail tolerance of the ladder.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output path (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into() }
    }

    fn numeric(msg: impl Into<String>) -> Self {
        Fail { code: 1, msg: msg.into() }
    }
}

impl From<gapstress::Error> for Fail {
    fn from(e: gapstress::Error) -> Self {
        Fail::numeric(e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::numeric(format!("io error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Constants(a) => cmd_constants(a),
        Cmd::Field(a) => cmd_field(a),
        Cmd::Boundary(a) => cmd_boundary(a),
        Cmd::Blowup(a) => cmd_blowup(a),
        Cmd::Convergence(a) => cmd_convergence(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            eprintln!("gapstress: {}", fail.msg);
            ExitCode::from(fail.code)
        }
    }
}

/// 17 significant digits: enough to round-trip any f64, fixed width class.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// Truncation budget: --tol plus the GAPSTRESS_MAX_TERMS cap override.
fn truncation(tol: f64) -> Result<Truncation, Fail> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Fail::usage("--tol must be positive and finite"));
    }
    let cap = match std::env::var("GAPSTRESS_MAX_TERMS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Fail::usage(format!("GAPSTRESS_MAX_TERMS is not a count: {v:?}")))?,
        Err(std::env::VarError::NotPresent) => DEFAULT_MAX_TERMS,
        Err(e) => return Err(Fail::usage(format!("GAPSTRESS_MAX_TERMS unreadable: {e}"))),
    };
    if cap == 0 {
        return Err(Fail::usage("GAPSTRESS_MAX_TERMS must be at least 1"));
    }
    Ok(Truncation::with_cap(tol, cap))
}

fn geometry(r: f64, eps: f64) -> Result<GapGeometry, Fail> {
    GapGeometry::new(r, eps).map_err(|e| Fail::usage(e.to_string()))
}

/// Parse "a:b:n" into an inclusive linspace spec.
fn parse_range(spec: &str) -> Result<(f64, f64, usize), Fail> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Fail::usage(format!("range spec {spec:?} is not \"lo:hi:count\"")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Fail::usage(format!("bad range endpoint {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Fail::usage(format!("bad range endpoint {:?}", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| Fail::usage(format!("bad range count {:?}", parts[2])))?;
    if !(lo.is_finite() && hi.is_finite()) || n == 0 {
        return Err(Fail::usage(format!("range spec {spec:?} needs finite endpoints and count >= 1")));
    }
    Ok((lo, hi, n))
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), Fail> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

/// Provenance sidecar next to a data file: PATH.meta.json.
fn write_sidecar(path: &PathBuf, meta: &Value) -> Result<(), Fail> {
    let mut sidecar = path.clone().into_os_string();
    sidecar.push(".meta.json");
    let mut text = serde_json::to_string_pretty(meta).expect("json serialization");
    text.push('\n');
    std::fs::write(PathBuf::from(sidecar), text)?;
    Ok(())
}

fn json_report(out: &Option<PathBuf>, report: &Value) -> Result<(), Fail> {
    let mut text = serde_json::to_string_pretty(report).expect("json serialization");
    text.push('\n');
    write_output(out, &text)
}

fn cmd_constants(a: ConstantsArgs) -> Result<u8, Fail> {
    let trunc = truncation(a.tol)?;
    let geom = geometry(a.r, a.eps)?;
    let s = geom.boundary_coordinate();
    let i0 = blowup_constant(I0_TOL)?;
    let k = constant_k(s, &trunc)?;
    let p = constant_p(s, &trunc)?;
    let report = json!({
        "r": a.r,
        "eps": a.eps,
        "s": s,
        "alpha": geom.alpha(),
        "i0": i0,
        "p": p,
        "k": k,
        "k_i0_s2": k * i0 * s * s,
        "tol": a.tol,
    });
    json_report(&a.out, &report)?;
    Ok(0)
}

/// One evaluated grid point; numeric columns are None outside the exterior
/// closure or when evaluation fails.
struct FieldRow {
    x: f64,
    y: f64,
    bipolar: Option<(f64, f64)>,
    stress: Option<(f64, f64, f64, f64, f64, f64, f64)>,
    region: &'static str,
}

fn field_row(
    geom: &GapGeometry,
    table: &CoefficientTable,
    i0: f64,
    p: CartesianPoint,
) -> FieldRow {
    let bipolar = geom.to_bipolar(p).ok().map(|b| (b.zeta, b.theta));
    let region = geom.classify_region(p, 1e-12);
    let region_name = match region {
        Region::Hole1 => "hole1",
        Region::Hole2 => "hole2",
        Region::Boundary => "boundary",
        Region::Exterior => "exterior",
    };
    if matches!(region, Region::Hole1 | Region::Hole2) {
        return FieldRow { x: p.x, y: p.y, bipolar, stress: None, region: region_name };
    }
    let evaluated = total_stress(geom, table, p)
        .and_then(|sigma| sigma_star(geom, p, i0).map(|star| (sigma, star)));
    match evaluated {
        Ok((sigma, star)) => {
            let residual = sigma.sub(&star).fro_norm();
            FieldRow {
                x: p.x,
                y: p.y,
                bipolar,
                stress: Some((sigma.c11, sigma.c12, sigma.c22, star.c11, star.c12, star.c22, residual)),
                region: region_name,
            }
        }
        Err(_) => FieldRow { x: p.x, y: p.y, bipolar, stress: None, region: "error" },
    }
}

fn field_csv(rows: &[FieldRow]) -> String {
    let mut text =
        String::from("x,y,zeta,theta,sxx,sxy,syy,star_xx,star_xy,star_yy,residual_fro,region\n");
    for row in rows {
        let (zeta, theta) = match row.bipolar {
            Some((z, t)) => (fmt_f(z), fmt_f(t)),
            None => (String::new(), String::new()),
        };
        let stress = match row.stress {
            Some((sxx, sxy, syy, txx, txy, tyy, res)) => format!(
                "{},{},{},{},{},{},{}",
                fmt_f(sxx), fmt_f(sxy), fmt_f(syy), fmt_f(txx), fmt_f(txy), fmt_f(tyy), fmt_f(res)
            ),
            None => ",,,,,,".into(),
        };
        let _ = writeln!(
            text,
            "{},{},{},{},{},{}",
            fmt_f(row.x), fmt_f(row.y), zeta, theta, stress, row.region
        );
    }
    text
}

fn field_json(rows: &[FieldRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let (zeta, theta) = match row.bipolar {
                Some((z, t)) => (json!(z), json!(t)),
                None => (Value::Null, Value::Null),
            };
            let mut v = json!({
                "x": row.x,
                "y": row.y,
                "zeta": zeta,
                "theta": theta,
                "region": row.region,
            });
            if let Some((sxx, sxy, syy, txx, txy, tyy, res)) = row.stress {
                v["sxx"] = json!(sxx);
                v["sxy"] = json!(sxy);
                v["syy"] = json!(syy);
                v["star_xx"] = json!(txx);
                v["star_xy"] = json!(txy);
                v["star_yy"] = json!(tyy);
                v["residual_fro"] = json!(res);
            }
            v
        })
        .collect();
    json!({ "rows": rows })
}

fn cmd_field(a: FieldArgs) -> Result<u8, Fail> {
    let trunc = truncation(a.tol)?;
    let geom = geometry(a.r, a.eps)?;
    let s = geom.boundary_coordinate();
    let specs: Vec<&str> = a.grid.split(',').collect();
    if specs.len() != 2 {
        return Err(Fail::usage(format!(
            "--grid {:?} is not \"x0:x1:nx,y0:y1:ny\"",
            a.grid
        )));
    }
    let (x0, x1, nx) = parse_range(specs[0])?;
    let (y0, y1, ny) = parse_range(specs[1])?;
    let xs = linspace(x0, x1, nx);
    let ys = linspace(y0, y1, ny);

    let table = CoefficientTable::build(s, &trunc)?;
    let i0 = blowup_constant(I0_TOL)?;

    // Scanline order (y outer, x inner); parallel evaluation keeps the
    // ordering because the index map is collected positionally.
    let rows: Vec<FieldRow> = (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let p = CartesianPoint { x: xs[idx % nx], y: ys[idx / nx] };
            field_row(&geom, &table, i0, p)
        })
        .collect();
    let failed = rows.iter().filter(|r| r.region == "error").count();

    let content = match a.format {
        Format::Csv => field_csv(&rows),
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&field_json(&rows)).expect("json");
            text.push('\n');
            text
        }
    };
    write_output(&a.out, &content)?;
    if let Some(path) = &a.out {
        let meta = json!({
            "command": "field",
            "r": a.r,
            "eps": a.eps,
            "s": s,
            "alpha": geom.alpha(),
            "tol": a.tol,
            "max_terms": trunc.max_terms,
            "terms": table.terms(),
            "tail_bound": table.tail_bound(),
            "i0": i0,
            "grid": a.grid,
            "format": match a.format { Format::Csv => "csv", Format::Json => "json" },
            "rows": rows.len(),
            "failed_rows": failed,
        });
        write_sidecar(path, &meta)?;
    }
    if failed > 0 {
        eprintln!("gapstress: {failed} grid point(s) failed to evaluate");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_boundary(a: BoundaryArgs) -> Result<u8, Fail> {
    let trunc = truncation(a.tol)?;
    let geom = geometry(a.r, a.eps)?;
    let s = geom.boundary_coordinate();
    let (t0, t1, nt) = match &a.theta {
        Some(spec) => parse_range(spec)?,
        None => (-std::f64::consts::PI, std::f64::consts::PI, 361),
    };
    let thetas = linspace(t0, t1, nt);
    let table = CoefficientTable::build(s, &trunc)?;

    // Hoop stress on the rim zeta = s, written two independent ways, plus the
    // far-gap profile q and its closed-form approximant.
    let rows: Result<Vec<(f64, f64, f64, f64, f64)>, gapstress::Error> = thetas
        .par_iter()
        .map(|&theta| {
            let closed = sigma1_boundary_tt(&table, theta, &trunc)?;
            let b = gapstress::BipolarPoint { zeta: s, theta };
            let recombined = sigma1_components(&table, b)?.tt();
            let q = q_series(s, theta, &trunc)?;
            Ok((theta, closed, recombined, q, q_asymptotic(s, theta)))
        })
        .collect();
    let rows = rows?;

    let content = match a.format {
        Format::Csv => {
            let mut text =
                String::from("theta,hoop_closed_form,hoop_recombined,q_series,q_asymptotic\n");
            for (theta, closed, recombined, q, qa) in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{}",
                    fmt_f(*theta), fmt_f(*closed), fmt_f(*recombined), fmt_f(*q), fmt_f(*qa)
                );
            }
            text
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(theta, closed, recombined, q, qa)| {
                    json!({
                        "theta": theta,
                        "hoop_closed_form": closed,
                        "hoop_recombined": recombined,
                        "q_series": q,
                        "q_asymptotic": qa,
                    })
                })
                .collect();
            let mut text =
                serde_json::to_string_pretty(&json!({ "rows": rows })).expect("json");
            text.push('\n');
            text
        }
    };
    write_output(&a.out, &content)?;
    if let Some(path) = &a.out {
        let meta = json!({
            "command": "boundary",
            "r": a.r,
            "eps": a.eps,
            "s": s,
            "alpha": geom.alpha(),
            "rim": "zeta = +s",
            "tol": a.tol,
            "max_terms": trunc.max_terms,
            "terms": table.terms(),
            "tail_bound": table.tail_bound(),
            "theta": a.theta.clone().unwrap_or_else(|| format!("{t0}:{t1}:{nt}")),
            "format": match a.format { Format::Csv => "csv", Format::Json => "json" },
            "rows": rows.len(),
        });
        write_sidecar(path, &meta)?;
    }
    Ok(0)
}

/// Default blow-up study window: [-2 sqrt(r eps), 2 sqrt(r eps)]^2, 101x101,
/// intersected with the exterior closure (|zeta| <= s).
fn gap_window_max(geom: &GapGeometry, table: &CoefficientTable) -> Result<f64, Fail> {
    let s = geom.boundary_coordinate();
    let half = 2.0 * (geom.radius() * geom.gap_width()).sqrt();
    let grid = linspace(-half, half, 101);
    let max = (0..101 * 101)
        .into_par_iter()
        .map(|idx| -> Result<f64, Fail> {
            let p = CartesianPoint { x: grid[idx % 101], y: grid[idx / 101] };
            let b = match geom.to_bipolar(p) {
                Ok(b) => b,
                Err(_) => return Ok(0.0),
            };
            if b.zeta.abs() > s {
                return Ok(0.0);
            }
            Ok(total_stress(geom, table, p)?.fro_norm())
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    Ok(max)
}

fn cmd_blowup(a: BlowupArgs) -> Result<u8, Fail> {
    let trunc = truncation(a.tol)?;
    let mut eps_list = Vec::new();
    for tok in a.eps_list.split(',') {
        let eps: f64 = tok
            .trim()
            .parse()
            .map_err(|_| Fail::usage(format!("bad eps value {tok:?} in --eps-list")))?;
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Fail::usage(format!("eps values must be positive, got {tok:?}")));
        }
        eps_list.push(eps);
    }
    if eps_list.len() < 4 {
        return Err(Fail::usage(format!(
            "--eps-list needs at least 4 values, got {}",
            eps_list.len()
        )));
    }
    let lo = eps_list.iter().cloned().fold(f64::MAX, f64::min);
    let hi = eps_list.iter().cloned().fold(f64::MIN, f64::max);
    if hi / lo < 100.0 {
        return Err(Fail::usage(format!(
            "--eps-list must span at least 2 decades, got {:.3} decades",
            (hi / lo).log10()
        )));
    }

    let i0 = blowup_constant(I0_TOL)?;
    let origin = CartesianPoint { x: 0.0, y: 0.0 };
    let mut rows = Vec::new();
    let mut ln_eps = Vec::new();
    let mut ln_max = Vec::new();
    for &eps in &eps_list {
        let geom = geometry(a.r, eps)?;
        let table = CoefficientTable::build(geom.boundary_coordinate(), &trunc)?;
        let max_norm = gap_window_max(&geom, &table)?;
        let syy = total_stress(&geom, &table, origin)?.c22;
        let prefactor = syy * eps.sqrt() * i0 / (2.0 * a.r.sqrt());
        rows.push(json!({
            "eps": eps,
            "max_norm": max_norm,
            "origin_syy": syy,
            "prefactor_ratio": prefactor,
        }));
        ln_eps.push(eps.ln());
        ln_max.push(max_norm.ln());
    }
    let slope = least_squares_slope(&ln_eps, &ln_max);
    let report = json!({
        "r": a.r,
        "tol": a.tol,
        "i0": i0,
        "grid": "101x101 over [-2 sqrt(r eps), 2 sqrt(r eps)]^2, exterior only",
        "rows": rows,
        "slope": slope,
    });
    json_report(&a.out, &report)?;
    Ok(0)
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        num += (x - xbar) * (y - ybar);
        den += (x - xbar) * (x - xbar);
    }
    num / den
}

/// Max traction residual on both rims: the perturbation series must give
/// sigma^zz = -1 and sigma^zt = 0 there, so any deviation is truncation error.
fn traction_residual(table: &CoefficientTable, s: f64) -> Result<f64, Fail> {
    let max = (0..200usize)
        .into_par_iter()
        .map(|i| -> Result<f64, Fail> {
            let theta = -std::f64::consts::PI
                + (i as f64 + 0.5) * 2.0 * std::f64::consts::PI / 200.0;
            let mut worst = 0.0f64;
            for zeta in [s, -s] {
                let c = sigma1_components(table, gapstress::BipolarPoint { zeta, theta })?;
                worst = worst.max((c.zz + 1.0).abs()).max(c.zt.abs());
            }
            Ok(worst)
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    Ok(max)
}

fn cmd_convergence(a: ConvergenceArgs) -> Result<u8, Fail> {
    let trunc_finest = truncation(a.tol)?;
    let geom = geometry(a.r, a.eps)?;
    let s = geom.boundary_coordinate();

    // Explicit term-count ladder spanning the decaying regime. On the rim
    // the n-th term scales like e^{-ns} (the hyperbolic factors peak there),
    // so the residual behaves like K e^{-Ns} until it hits the rounding
    // floor: rungs run from N ~ ln(K)/(2s) (residual O(1)) across roughly
    // ten decades, plus two oversized rungs that expose the floor.
    let k = constant_k(s, &trunc_finest).map_err(Fail::from)?;
    let n_start = ((k.ln().max(0.0)) / (2.0 * s)).ceil() as usize;
    let n_span = (23.0 / s).ceil() as usize;
    let mut rungs: Vec<usize> = (0..=7).map(|j| (n_start + n_span * j / 7).max(8)).collect();
    rungs.push((n_start + n_span + (n_span / 8).max(4)).max(9));
    rungs.push((n_start + n_span + (n_span / 4).max(8)).max(10));
    rungs.dedup();

    let mut rows = Vec::new();
    let mut measured: Vec<(usize, f64)> = Vec::new();
    let mut closure_terms: Option<usize> = None;
    for &n in &rungs {
        let table = CoefficientTable::build_with_terms(s, n, &trunc_finest)?;
        let residual = traction_residual(&table, s)?;
        if residual <= CLOSURE_TARGET && closure_terms.is_none() {
            closure_terms = Some(n);
        }
        rows.push(json!({
            "terms": n,
            "max_traction_residual": residual,
        }));
        measured.push((n, residual));
    }

    // Fit the geometric rate over rungs clearly above the rounding floor.
    let floor = measured.iter().map(|&(_, r)| r).fold(f64::MAX, f64::min);
    let mut ns = Vec::new();
    let mut ln_resid = Vec::new();
    for &(n, r) in &measured {
        if r > 100.0 * floor {
            ns.push(n as f64);
            ln_resid.push(r.ln());
        }
    }

    // Doubling the series length beyond the finest tolerance must leave the
    // field unchanged at the probe points (converged-series stability).
    let table_ref = CoefficientTable::build(s, &trunc_finest)?;
    let table_double =
        CoefficientTable::build_with_terms(s, 2 * table_ref.terms(), &trunc_finest)?;
    let mut stability = 0.0f64;
    for zeta in [0.0, 0.5 * s, -0.4 * s] {
        for theta in [0.0, 0.3, 2.0, std::f64::consts::PI] {
            let b = gapstress::BipolarPoint { zeta, theta };
            let c1 = sigma1_components(&table_ref, b)?;
            let c2 = sigma1_components(&table_double, b)?;
            stability = stability
                .max((c1.zz - c2.zz).abs())
                .max((c1.zt - c2.zt).abs())
                .max((c1.diff_tt_zz - c2.diff_tt_zz).abs());
        }
    }

    let decay_rate = if ns.len() >= 2 { -least_squares_slope(&ns, &ln_resid) } else { f64::NAN };
    let report = json!({
        "r": a.r,
        "eps": a.eps,
        "s": s,
        "tol": a.tol,
        "tol_terms": table_ref.terms(),
        "rows": rows,
        "closure_target": CLOSURE_TARGET,
        "closure_terms": closure_terms,
        "decay_rate_per_term": decay_rate,
        "model_rate_per_term": s,
        "rate_over_model": decay_rate / s,
        "doubled_terms": table_double.terms(),
        "doubling_field_change": stability,
    });
    json_report(&a.out, &report)?;
    Ok(0)
}

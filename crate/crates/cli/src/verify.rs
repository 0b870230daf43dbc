use std::fs;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use su11poly::kernels::{
    check_identity_with, default_grid, grid_check, parse_grid, random_grid, CheckReport,
    GridReport, GridSummary, IdentityId, Params, Truncation,
};

use crate::output::{report_csv, report_text};
use crate::{CliError, Format, Outcome, OutputArgs};

#[derive(Args, Debug)]
pub struct TruncArgs {
    /// Override the Gauss or trapezoid rule size.
    #[arg(long)]
    quad_points: Option<usize>,
    /// Term budget for power series.
    #[arg(long)]
    max_terms: Option<usize>,
}

impl TruncArgs {
    fn truncation(&self) -> Result<Truncation, CliError> {
        let mut t = Truncation::default();
        if let Some(p) = self.quad_points {
            if p == 0 {
                return Err(CliError::Usage("--quad-points must be positive".into()));
            }
            t.quad_points = Some(p);
        }
        if let Some(m) = self.max_terms {
            t.max_terms = m;
        }
        Ok(t)
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    id: String,
    /// `default`, `random`, or a path to a grid file.
    #[arg(long, default_value = "default")]
    grid: String,
    /// Number of points for `--grid random`.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Seed for `--grid random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to the identity's registered tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    trunc: TruncArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct QuadArgs {
    /// One of lem41, jg5c, jg5d, awj.
    #[arg(long)]
    id: String,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    f: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    #[arg(long = "a-im", allow_negative_numbers = true)]
    a_im: Option<f64>,
    #[arg(long = "b-im", allow_negative_numbers = true)]
    b_im: Option<f64>,
    #[arg(long = "c-im", allow_negative_numbers = true)]
    c_im: Option<f64>,
    #[arg(long = "d-im", allow_negative_numbers = true)]
    d_im: Option<f64>,
    #[arg(long = "f-im", allow_negative_numbers = true)]
    f_im: Option<f64>,
    #[arg(long = "g-im", allow_negative_numbers = true)]
    g_im: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lam: Option<f64>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    trunc: TruncArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[command(flatten)]
    trunc: TruncArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn identity(name: &str) -> Result<IdentityId, CliError> {
    name.parse()
        .map_err(|e: su11poly::Error| CliError::Usage(e.to_string()))
}

fn tolerance(id: IdentityId, tol: Option<f64>) -> Result<f64, CliError> {
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => {
            Err(CliError::Usage(format!("--tol must be positive, got {t}")))
        }
        Some(t) => Ok(t),
        None => Ok(id.identity().default_tol),
    }
}

/// 0 when everything passed, 2 when a point was outside its domain, 1 otherwise.
fn exit_code(s: &GridSummary) -> u8 {
    if s.domain_errors > 0 {
        2
    } else if s.passed == s.total {
        0
    } else {
        1
    }
}

fn render_grid(report: &GridReport, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => report_csv(&report.reports)?,
        Format::Text => {
            let mut s: String = report.reports.iter().map(report_text).collect();
            s.push_str(&summary_line(&report.identity, &report.summary));
            s
        }
    })
}

fn summary_line(id: &str, s: &GridSummary) -> String {
    format!(
        "{id}: {}/{} passed, {} failed, {} domain errors, {} numeric errors, max rel residual {:e}\n",
        s.passed, s.total, s.failed, s.domain_errors, s.numeric_errors, s.max_rel_residual
    )
}

pub fn run_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let id = identity(&args.id)?;
    let tol = tolerance(id, args.tol)?;
    let trunc = args.trunc.truncation()?;
    let points = match args.grid.as_str() {
        "default" => parse_grid(default_grid(id))?,
        "random" => random_grid(id, args.points, args.seed),
        path => {
            let text = fs::read_to_string(PathBuf::from(path))
                .map_err(|e| CliError::Usage(format!("cannot read grid '{path}': {e}")))?;
            parse_grid(&text)?
        }
    };
    let report = grid_check(id, &points, tol, &trunc);
    Ok(Outcome {
        text: render_grid(&report, args.out.format)?,
        code: exit_code(&report.summary),
    })
}

pub fn run_quad(args: &QuadArgs) -> Result<Outcome, CliError> {
    let id = identity(&args.id)?;
    if !matches!(
        id,
        IdentityId::Lem41 | IdentityId::Jg5c | IdentityId::Jg5d | IdentityId::Awj
    ) {
        return Err(CliError::Usage(format!(
            "{id} is not a quadrature identity; use verify"
        )));
    }
    let tol = tolerance(id, args.tol)?;
    let mut params = Params::new();
    let reals = [
        ("a", args.a),
        ("b", args.b),
        ("c", args.c),
        ("d", args.d),
        ("f", args.f),
        ("g", args.g),
        ("a_im", args.a_im),
        ("b_im", args.b_im),
        ("c_im", args.c_im),
        ("d_im", args.d_im),
        ("f_im", args.f_im),
        ("g_im", args.g_im),
        ("q", args.q),
        ("rho", args.rho),
        ("lam", args.lam),
    ];
    let nats = [("j", args.j), ("m", args.m), ("n", args.n)];
    for (name, v) in reals {
        if let Some(v) = v {
            params.insert(name, v);
        }
    }
    for (name, v) in nats {
        if let Some(v) = v {
            params.insert(name, v as f64);
        }
    }
    let report = check_identity_with(id, &params, tol, &args.trunc.truncation()?)?;
    let code = if report.pass { 0 } else { 1 };
    Ok(Outcome {
        text: render_single(&report, args.out.format)?,
        code,
    })
}

fn render_single(report: &CheckReport, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => report_csv(std::slice::from_ref(report))?,
        Format::Text => report_text(report),
    })
}

#[derive(Serialize)]
struct SuiteEntry<'a> {
    identity: &'a str,
    tol: f64,
    summary: &'a GridSummary,
}

pub fn run_suite(args: &SuiteArgs) -> Result<Outcome, CliError> {
    let trunc = args.trunc.truncation()?;
    let reports: Vec<(GridReport, f64)> = IdentityId::ALL
        .iter()
        .map(|&id| {
            let tol = id.identity().default_tol;
            Ok((
                grid_check(id, &parse_grid(default_grid(id))?, tol, &trunc),
                tol,
            ))
        })
        .collect::<Result<_, CliError>>()?;
    let code = reports
        .iter()
        .map(|(r, _)| exit_code(&r.summary))
        .max()
        .unwrap_or(0);
    let text = match args.out.format {
        Format::Json => {
            let entries: Vec<SuiteEntry> = reports
                .iter()
                .map(|(r, tol)| SuiteEntry {
                    identity: &r.identity,
                    tol: *tol,
                    summary: &r.summary,
                })
                .collect();
            serde_json::to_string_pretty(&entries).expect("suite serializes") + "\n"
        }
        Format::Csv => {
            let all: Vec<CheckReport> = reports.into_iter().flat_map(|(r, _)| r.reports).collect();
            report_csv(&all)?
        }
        Format::Text => reports
            .iter()
            .map(|(r, _)| summary_line(&r.identity, &r.summary))
            .collect(),
    };
    Ok(Outcome { text, code })
}

use clap::{Args, ValueEnum};
use serde::Serialize;
use su11poly::orthopoly::{eval_detailed, eval_mu, Method, MuPoint, PolyFamily};
use su11poly::Scalar;

use crate::output::{complex_text, csv_string, num};
use crate::{CliError, Format, Outcome, OutputArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Laguerre,
    Meixner,
    #[value(alias = "mp")]
    MeixnerPollaczek,
    Jacobi,
    Hahn,
    #[value(alias = "chahn")]
    ContinuousHahn,
    Hermite,
    #[value(alias = "al-salam-chihara")]
    Asc,
    #[value(alias = "askey-wilson")]
    Aw,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Hypergeometric,
    Recurrence,
    /// q-families only.
    ProductSeries,
    Both,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Degrees, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Evaluation points, comma separated; for q-families this is μ.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    x: Vec<f64>,
    /// Angles θ with μ = cos θ, q-families only.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    theta: Vec<f64>,
    #[arg(long, value_enum, default_value_t = MethodArg::Recurrence)]
    method: MethodArg,
    #[command(flatten)]
    params: FamilyParams,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Default)]
struct FamilyParams {
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    #[arg(long = "a-im", allow_negative_numbers = true)]
    a_im: Option<f64>,
    #[arg(long = "b-im", allow_negative_numbers = true)]
    b_im: Option<f64>,
    #[arg(long = "c-im", allow_negative_numbers = true)]
    c_im: Option<f64>,
    #[arg(long = "d-im", allow_negative_numbers = true)]
    d_im: Option<f64>,
    /// Hahn's N.
    #[arg(long = "big-n")]
    big_n: Option<usize>,
    #[arg(long)]
    q: Option<f64>,
}

impl FamilyParams {
    fn given(&self) -> Vec<&'static str> {
        let opts = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("lambda", self.lambda),
            ("phi", self.phi),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("a-im", self.a_im),
            ("b-im", self.b_im),
            ("c-im", self.c_im),
            ("d-im", self.d_im),
            ("big-n", self.big_n.map(|v| v as f64)),
            ("q", self.q),
        ];
        opts.iter()
            .filter(|(_, v)| v.is_some())
            .map(|(k, _)| *k)
            .collect()
    }
}

/// Required and optional flags per family.
fn schema(f: FamilyName) -> (&'static [&'static str], &'static [&'static str]) {
    match f {
        FamilyName::Laguerre => (&["alpha"], &[]),
        FamilyName::Meixner => (&["beta", "c"], &[]),
        FamilyName::MeixnerPollaczek => (&["lambda", "phi"], &[]),
        FamilyName::Jacobi => (&["a", "b"], &[]),
        FamilyName::Hahn => (&["a", "b", "big-n"], &[]),
        FamilyName::ContinuousHahn => (&["a", "b", "c", "d"], &["a-im", "b-im", "c-im", "d-im"]),
        FamilyName::Hermite => (&[], &[]),
        FamilyName::Asc => (&["a", "b", "q"], &["a-im", "b-im"]),
        FamilyName::Aw => (
            &["a", "b", "c", "d", "q"],
            &["a-im", "b-im", "c-im", "d-im"],
        ),
    }
}

fn family(name: FamilyName, p: &FamilyParams) -> Result<PolyFamily, CliError> {
    let (required, optional) = schema(name);
    let label = name
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    for flag in p.given() {
        if !required.contains(&flag) && !optional.contains(&flag) {
            return Err(CliError::Usage(format!(
                "--{flag} is not a parameter of family {label}"
            )));
        }
    }
    for flag in required {
        if !p.given().contains(flag) {
            return Err(CliError::Usage(format!("family {label} needs --{flag}")));
        }
    }
    let r = |v: Option<f64>| v.unwrap_or(0.0);
    let z = |re: Option<f64>, im: Option<f64>| Scalar::new(r(re), r(im));
    let fam = match name {
        FamilyName::Laguerre => PolyFamily::Laguerre { alpha: r(p.alpha) },
        FamilyName::Meixner => PolyFamily::Meixner {
            beta: r(p.beta),
            c: r(p.c),
        },
        FamilyName::MeixnerPollaczek => PolyFamily::MeixnerPollaczek {
            lambda: r(p.lambda),
            phi: r(p.phi),
        },
        FamilyName::Jacobi => PolyFamily::Jacobi {
            a: r(p.a),
            b: r(p.b),
        },
        FamilyName::Hahn => PolyFamily::Hahn {
            a: r(p.a),
            b: r(p.b),
            n: p.big_n.unwrap_or(0),
        },
        FamilyName::ContinuousHahn => PolyFamily::ContinuousHahn {
            a: z(p.a, p.a_im),
            b: z(p.b, p.b_im),
            c: z(p.c, p.c_im),
            d: z(p.d, p.d_im),
        },
        FamilyName::Hermite => PolyFamily::Hermite,
        FamilyName::Asc => PolyFamily::AlSalamChihara {
            a: z(p.a, p.a_im),
            b: z(p.b, p.b_im),
            q: r(p.q),
        },
        FamilyName::Aw => PolyFamily::AskeyWilson {
            a: z(p.a, p.a_im),
            b: z(p.b, p.b_im),
            c: z(p.c, p.c_im),
            d: z(p.d, p.d_im),
            q: r(p.q),
        },
    };
    fam.validate()?;
    Ok(fam)
}

#[derive(Debug, Serialize)]
struct EvalRow {
    family: &'static str,
    n: usize,
    x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    method: &'static str,
    value: [f64; 2],
    cancellation: f64,
}

pub fn run(args: &EvalArgs) -> Result<Outcome, CliError> {
    let fam = family(args.family, &args.params)?;
    let q_family = matches!(
        fam,
        PolyFamily::AlSalamChihara { .. } | PolyFamily::AskeyWilson { .. }
    );
    if !args.theta.is_empty() && !q_family {
        return Err(CliError::Usage(
            "--theta applies to the q-families asc and aw only".into(),
        ));
    }
    if !args.theta.is_empty() && !args.x.is_empty() {
        return Err(CliError::Usage(
            "give either --x or --theta, not both".into(),
        ));
    }
    let points: Vec<(f64, Option<f64>, MuPoint)> = if args.theta.is_empty() {
        if args.x.is_empty() {
            return Err(CliError::Usage("need --x or --theta".into()));
        }
        args.x
            .iter()
            .map(|&x| (x, None, MuPoint::from_mu(x.into())))
            .collect()
    } else {
        args.theta
            .iter()
            .map(|&t| (t.cos(), Some(t), MuPoint::from_theta(t)))
            .collect()
    };
    let methods: &[Method] = match args.method {
        MethodArg::Hypergeometric => &[Method::Hypergeometric],
        MethodArg::Recurrence => &[Method::Recurrence],
        MethodArg::ProductSeries if !q_family => {
            return Err(CliError::Usage(
                "--method product-series applies to asc and aw only".into(),
            ))
        }
        MethodArg::ProductSeries => &[Method::ProductSeries],
        MethodArg::Both => &[Method::Hypergeometric, Method::Recurrence],
    };
    let mut rows = Vec::new();
    for &n in &args.n {
        for &(x, theta, point) in &points {
            for &m in methods {
                let v = if q_family {
                    eval_mu(&fam, n, point, m)?
                } else {
                    eval_detailed(&fam, n, x.into(), m)?
                };
                rows.push(EvalRow {
                    family: fam.name(),
                    n,
                    x,
                    theta,
                    method: m.name(),
                    value: [v.value.re, v.value.im],
                    cancellation: v.cancellation,
                });
            }
        }
    }
    let text = match args.out.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let header = [
                "family",
                "n",
                "x",
                "theta",
                "method",
                "value_re",
                "value_im",
                "cancellation",
            ];
            let records = rows.iter().map(|r| {
                vec![
                    r.family.to_string(),
                    r.n.to_string(),
                    num(r.x),
                    r.theta.map(num).unwrap_or_default(),
                    r.method.to_string(),
                    num(r.value[0]),
                    num(r.value[1]),
                    num(r.cancellation),
                ]
            });
            csv_string(&header, records)?
        }
        Format::Text => rows
            .iter()
            .map(|r| {
                let at = match r.theta {
                    Some(t) => format!("theta={t}"),
                    None => format!("x={}", r.x),
                };
                format!(
                    "{} n={} {} {}: {}\n",
                    r.family,
                    r.n,
                    at,
                    r.method,
                    complex_text(r.value)
                )
            })
            .collect(),
    };
    Ok(Outcome { text, code: 0 })
}

use clap::{Args, ValueEnum};
use serde::Serialize;
use su11poly::numerics::tridiag_eigenvalues;
use su11poly::qsu11::{ysa_matrix, QRepLabel};
use su11poly::su11::{hamiltonian_matrix, HamiltonianKind, RepLabel};

use crate::output::{csv_string, num};
use crate::{CliError, Format, Outcome, OutputArgs};

const MAX_DIM: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    X2,
    Xphi,
    Xc,
    Ysa,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    op: Operator,
    #[arg(long)]
    k: f64,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Serialize)]
struct Level {
    index: usize,
    eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation: Option<f64>,
}

fn only(args: &SpectrumArgs, allowed: &[&str]) -> Result<(), CliError> {
    let given = [
        ("phi", args.phi.is_some()),
        ("c", args.c.is_some()),
        ("q", args.q.is_some()),
        ("s", args.s.is_some()),
    ];
    for (name, set) in given {
        if set && !allowed.contains(&name) {
            return Err(CliError::Usage(format!(
                "--{name} is not a parameter of this operator"
            )));
        }
    }
    Ok(())
}

fn need(v: Option<f64>, name: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("this operator needs --{name}")))
}

pub fn run(args: &SpectrumArgs) -> Result<Outcome, CliError> {
    if args.dim == 0 || args.dim > MAX_DIM {
        return Err(CliError::Usage(format!(
            "--dim must be in 1..={MAX_DIM}, got {}",
            args.dim
        )));
    }
    let (matrix, xc) = match args.op {
        Operator::X2 => {
            only(args, &[])?;
            (
                hamiltonian_matrix(HamiltonianKind::X2, RepLabel::new(args.k)?, args.dim)?,
                None,
            )
        }
        Operator::Xphi => {
            only(args, &["phi"])?;
            let kind = HamiltonianKind::Xphi {
                phi: need(args.phi, "phi")?,
            };
            (
                hamiltonian_matrix(kind, RepLabel::new(args.k)?, args.dim)?,
                None,
            )
        }
        Operator::Xc => {
            only(args, &["c"])?;
            let c = need(args.c, "c")?;
            (
                hamiltonian_matrix(HamiltonianKind::Xc { c }, RepLabel::new(args.k)?, args.dim)?,
                Some(c),
            )
        }
        Operator::Ysa => {
            only(args, &["q", "s"])?;
            let label = QRepLabel::new(args.k, need(args.q, "q")?, need(args.s, "s")?)?;
            (ysa_matrix(label, args.dim)?, None)
        }
    };
    let mut values = tridiag_eigenvalues(&matrix)?;
    let levels: Vec<Level> = match xc {
        // the discrete spectrum (c − 1/c)(k + m) is negative and sits at the
        // top of the truncation, so list it from the largest eigenvalue down
        Some(c) => {
            values.reverse();
            values
                .iter()
                .enumerate()
                .map(|(m, &v)| {
                    let p = (c - 1.0 / c) * (args.k + m as f64);
                    Level {
                        index: m,
                        eigenvalue: v,
                        predicted: Some(p),
                        deviation: Some((v - p).abs()),
                    }
                })
                .collect()
        }
        None => values
            .iter()
            .enumerate()
            .map(|(i, &v)| Level {
                index: i,
                eigenvalue: v,
                predicted: None,
                deviation: None,
            })
            .collect(),
    };
    let text = match args.out.format {
        Format::Json => serde_json::to_string_pretty(&levels).expect("levels serialize") + "\n",
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
            let records = levels.iter().map(|l| {
                vec![
                    l.index.to_string(),
                    num(l.eigenvalue),
                    opt(l.predicted),
                    opt(l.deviation),
                ]
            });
            csv_string(&["index", "eigenvalue", "predicted", "deviation"], records)?
        }
        Format::Text => levels
            .iter()
            .map(|l| match (l.predicted, l.deviation) {
                (Some(p), Some(d)) => format!(
                    "{:>5} {:>24} {:>24} {:e}\n",
                    l.index,
                    num(l.eigenvalue),
                    num(p),
                    d
                ),
                _ => format!("{:>5} {:>24}\n", l.index, num(l.eigenvalue)),
            })
            .collect(),
    };
    Ok(Outcome { text, code: 0 })
}

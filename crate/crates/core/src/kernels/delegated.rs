//! Identities whose two sides come from the su(1,1) and U_q(su(1,1)) modules.

use super::{Args, IdentityId, SideValue, Truncation};
use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::orthopoly::MuPoint;
use crate::qsu11::{q_expansion_residual, QExpansionCheck};
use crate::su11::{
    alpha_from_c, convolution_sides, exp_j2_column, exp_j2_reference, HamiltonianKind, RepLabel,
};

const TAIL_ROWS: usize = 10;

fn conv_kind(id: IdentityId, args: &Args) -> Result<HamiltonianKind> {
    let kind = match id {
        IdentityId::ConvX2 => HamiltonianKind::X2,
        IdentityId::ConvXphi => HamiltonianKind::Xphi {
            phi: args.real("phi"),
        },
        IdentityId::ConvXc => HamiltonianKind::Xc { c: args.real("c") },
        _ => unreachable!("not a convolution identity"),
    };
    kind.validate()?;
    Ok(kind)
}

fn conv(id: IdentityId, args: &Args) -> Result<(Scalar, Scalar)> {
    let kind = conv_kind(id, args)?;
    convolution_sides(
        kind,
        args.real("k1"),
        args.real("k2"),
        args.nat("j"),
        args.nat("n"),
        args.real("x1"),
        args.real("x2"),
    )
}

fn qexp(args: &Args) -> Result<QExpansionCheck> {
    let (z1, z2) = (args.complex("z1"), args.complex("z2"));
    for (name, z) in [("z1", z1), ("z2", z2)] {
        if z.norm() > 0.3 {
            return Err(Error::domain(format!(
                "QEXP needs |{name}| <= 0.3, got {}",
                z.norm()
            )));
        }
    }
    q_expansion_residual(
        args.real("k1"),
        args.real("k2"),
        args.real("q"),
        args.real("s"),
        MuPoint::from_theta(args.real("theta1")),
        MuPoint::from_theta(args.real("theta2")),
        z1,
        z2,
        args.nat("jmax"),
        args.nat("nmax"),
    )
}

struct Expj2 {
    k: RepLabel,
    c: f64,
    m: usize,
    dim: usize,
}

fn expj2_args(args: &Args) -> Result<Expj2> {
    let c = args.real("c");
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::domain(format!("EXPJ2 needs 0 < c < 1, got {c}")));
    }
    let (m, dim) = (args.nat("m"), args.nat("dim"));
    if dim <= TAIL_ROWS {
        return Err(Error::domain(format!(
            "EXPJ2 needs dim > {TAIL_ROWS}, got {dim}"
        )));
    }
    if m >= dim - TAIL_ROWS {
        return Err(Error::domain(format!(
            "EXPJ2 needs m < dim - {TAIL_ROWS}, got m = {m}, dim = {dim}"
        )));
    }
    Ok(Expj2 {
        k: RepLabel::new(args.real("k"))?,
        c,
        m,
        dim,
    })
}

/// For EXPJ2 the standalone sides are the diagonal entry `(m, m)`.
pub(super) fn closed(id: IdentityId, args: &Args) -> Result<Scalar> {
    match id {
        IdentityId::Qexp => Ok(qexp(args)?.uncoupled),
        IdentityId::Expj2 => {
            let p = expj2_args(args)?;
            Ok(exp_j2_reference(p.k, p.c, p.m, p.m)?.into())
        }
        _ => Ok(conv(id, args)?.1),
    }
}

pub(super) fn series(id: IdentityId, args: &Args, _trunc: &Truncation) -> Result<SideValue> {
    match id {
        IdentityId::Qexp => {
            let check = qexp(args)?;
            let terms = (args.nat("jmax") + 1) * (args.nat("nmax") + 1);
            Ok(SideValue {
                value: check.expansion,
                terms,
                tail_bound: check.last_j_term + check.last_n_term,
            })
        }
        IdentityId::Expj2 => {
            let p = expj2_args(args)?;
            let col = exp_j2_column(p.k, alpha_from_c(p.c), p.m, p.dim)?;
            Ok(SideValue {
                value: col.values[p.m].into(),
                terms: p.dim,
                tail_bound: col.tail_mass,
            })
        }
        _ => {
            let terms = args.nat("n") + args.nat("j") + 1;
            Ok(SideValue {
                value: conv(id, args)?.0,
                terms,
                tail_bound: 0.0,
            })
        }
    }
}

/// Column `m` of the truncated exponential against the closed form over rows
/// clear of the truncation edge; returns the worst entry as (matrix, closed form).
pub(super) fn expj2_worst_entry(args: &Args) -> Result<(SideValue, Scalar)> {
    let p = expj2_args(args)?;
    let col = exp_j2_column(p.k, alpha_from_c(p.c), p.m, p.dim)?;
    let mut worst = (f64::NEG_INFINITY, 0.0, 0.0);
    for n in 0..p.dim - TAIL_ROWS {
        let reference = exp_j2_reference(p.k, p.c, p.m, n)?;
        let got = col.values[n];
        let diff = (got - reference).abs();
        let scale = got.abs().max(reference.abs());
        let metric = if scale < super::ABSOLUTE_FLOOR {
            diff
        } else {
            diff / scale
        };
        if metric > worst.0 {
            worst = (metric, got, reference);
        }
    }
    let lhs = SideValue {
        value: worst.1.into(),
        terms: p.dim,
        tail_bound: col.tail_mass,
    };
    Ok((lhs, worst.2.into()))
}

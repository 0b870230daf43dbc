//! Integral identities: Gauss or trapezoid quadrature against closed forms.

use std::f64::consts::PI;

use super::{Args, IdentityId, SideValue, Truncation};
use crate::error::{Error, Result};
use crate::hyperseries::{hyp1f1, qpoch_inf_value, w87, TruncationPolicy};
use crate::numerics::{gauss_rule, ln_gamma, QuadRule, Scalar, WeightFamily};
use crate::orthopoly::{aw_h, aw_norm, aw_weight_theta, eval, meixner_scaled, Method, PolyFamily};

/// Largest polynomial degree accepted by the Gauss-rule identities.
const MAX_INDEX: usize = 30;

pub(super) fn closed(id: IdentityId, args: &Args) -> Result<Scalar> {
    match id {
        IdentityId::Lem41 => {
            let (a, b, c, j) = lem41_args(args)?;
            let jf = j as f64;
            let ln = (a + b + 1.0) * 2f64.ln() + ln_gamma(a + jf + 1.0)? + ln_gamma(b + jf + 1.0)?
                - ln_gamma(jf + 1.0)?
                - ln_gamma(a + b + 2.0 * jf + 2.0)?
                - c;
            let f = hyp1f1(
                (b + jf + 1.0).into(),
                (a + b + 2.0 * jf + 2.0).into(),
                (2.0 * c).into(),
            )?;
            Ok(f * ln.exp() * (2.0 * c).powi(j as i32))
        }
        IdentityId::Jg5c => {
            let (a, rho, m, n) = jg5c_args(args)?;
            let (mf, nf) = (m as f64, n as f64);
            let g = (rho - 1.0) / (rho + 1.0);
            let ln = ln_gamma(a + nf + 1.0)? - ln_gamma(nf + 1.0)? + ln_gamma(a + 1.0 + mf)?
                - ln_gamma(a + 1.0)?
                - ln_gamma(mf + 1.0)?
                + (a + 1.0) * (2.0 / (rho + 1.0)).ln();
            Ok((sign(m) * ln.exp() * meixner_scaled(n, m, a + 1.0, g)).into())
        }
        IdentityId::Jg5d => {
            let (lam, m, n) = jg5d_args(args)?;
            let (mf, nf) = (m as f64, n as f64);
            let l2 = lam * lam;
            let g = (1.0 - l2) / (1.0 + l2);
            let ln = 0.5 * (2.0 * PI / (1.0 + l2)).ln()
                + ln_gamma(2.0 * mf + 1.0)?
                + ln_gamma(2.0 * nf + 1.0)?
                - ln_gamma(mf + 1.0)?
                - ln_gamma(nf + 1.0)?;
            Ok((sign(m) * ln.exp() * meixner_scaled(n, m, 0.5, g)).into())
        }
        IdentityId::Awj => {
            let p = awj_args(args)?;
            let Awj {
                a,
                b,
                c,
                d,
                f,
                g,
                q,
            } = p;
            let inf = |u: Scalar| qpoch_inf_value(u, q);
            let num = inf(a * g)? * inf(b * g)? * inf(c * g)? * inf(d * f)? * inf(a * b * c * f)?;
            let den = inf(a * f)? * inf(b * f)? * inf(g / a)? * inf(g / b)? * inf(a * b * c * g)?;
            if den.norm() == 0.0 {
                return Err(Error::pole("AWJ product denominator vanishes"));
            }
            let w = w87(
                a * b * c * g / q,
                a * b,
                a * c,
                b * c,
                g / d,
                g / f,
                q,
                d * f,
                &TruncationPolicy::default(),
            )?;
            Ok(num / den * w.value)
        }
        _ => unreachable!("not an integral identity"),
    }
}

pub(super) fn quadrature(id: IdentityId, args: &Args, trunc: &Truncation) -> Result<SideValue> {
    match id {
        IdentityId::Lem41 => {
            let (a, b, c, j) = lem41_args(args)?;
            let family = PolyFamily::Jacobi { a, b };
            let npts = trunc.quad_points.unwrap_or((j + 40).max(64));
            gauss_side(WeightFamily::Jacobi { a, b }, npts, |r| {
                Ok(eval(&family, j, r.into(), Method::Recurrence)? * (c * r).exp())
            })
        }
        IdentityId::Jg5c => {
            let (a, rho, m, n) = jg5c_args(args)?;
            let family = PolyFamily::Laguerre { alpha: a };
            let s = 2.0 / (rho + 1.0);
            let scale = s.powf(a + 1.0);
            let npts = trunc.quad_points.unwrap_or(m + n + 20);
            gauss_side(WeightFamily::Laguerre { alpha: a }, npts, |t| {
                let lm = eval(&family, m, (rho * s * t).into(), Method::Recurrence)?;
                let ln = eval(&family, n, (s * t).into(), Method::Recurrence)?;
                Ok(lm * ln * scale)
            })
        }
        IdentityId::Jg5d => {
            let (lam, m, n) = jg5d_args(args)?;
            let s = (2.0 / (1.0 + lam * lam)).sqrt();
            let npts = trunc.quad_points.unwrap_or(m + n + 20);
            gauss_side(WeightFamily::Hermite, npts, |u| {
                let hm = eval(
                    &PolyFamily::Hermite,
                    2 * m,
                    (lam * s * u).into(),
                    Method::Recurrence,
                )?;
                let hn = eval(
                    &PolyFamily::Hermite,
                    2 * n,
                    (s * u).into(),
                    Method::Recurrence,
                )?;
                Ok(hm * hn * s)
            })
        }
        IdentityId::Awj => {
            let p = awj_args(args)?;
            let Awj {
                a,
                b,
                c,
                d,
                f,
                g,
                q,
            } = p;
            let params = [a, b, c, d];
            let h0 = 1.0 / aw_norm(0, params, q)?;
            let inf = |u: Scalar| qpoch_inf_value(u, q);
            let pre = h0 * inf(c * f)? * inf(d * f)? / (inf(g / a)? * inf(g / b)?);
            let npts = trunc.quad_points.unwrap_or(trunc.trapezoid_points);
            let side = gauss_side(WeightFamily::TrapezoidTheta, npts, |theta| {
                Ok(aw_h(theta, g, q)? / aw_h(theta, f, q)? * aw_weight_theta(theta, params, q)?)
            })?;
            Ok(SideValue {
                value: side.value * pre,
                tail_bound: side.tail_bound * pre.norm(),
                ..side
            })
        }
        _ => unreachable!("not an integral identity"),
    }
}

/// Integrates `f` against the weight with `npts` nodes. The tail bound is the
/// change from a rule with three quarters of the nodes.
fn gauss_side(
    family: WeightFamily,
    npts: usize,
    f: impl Fn(f64) -> Result<Scalar>,
) -> Result<SideValue> {
    let run = |rule: &QuadRule| -> Result<Scalar> {
        let mut err = None;
        let v = rule.integrate(|x| {
            f(x).unwrap_or_else(|e| {
                err.get_or_insert(e);
                Scalar::new(0.0, 0.0)
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    };
    let value = run(&gauss_rule(family, npts)?)?;
    let coarse = run(&gauss_rule(family, (3 * npts / 4).max(1))?)?;
    Ok(SideValue {
        value,
        terms: npts,
        tail_bound: (value - coarse).norm(),
    })
}

fn sign(m: usize) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_index(v: usize, name: &str) -> Result<usize> {
    if v > MAX_INDEX {
        return Err(Error::domain(format!(
            "{name} must be at most {MAX_INDEX}, got {v}"
        )));
    }
    Ok(v)
}

fn lem41_args(args: &Args) -> Result<(f64, f64, f64, usize)> {
    let (a, b) = (args.real("a"), args.real("b"));
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::domain(format!(
            "LEM41 needs a, b > -1, got ({a}, {b})"
        )));
    }
    Ok((a, b, args.real("c"), check_index(args.nat("j"), "j")?))
}

fn jg5c_args(args: &Args) -> Result<(f64, f64, usize, usize)> {
    let (a, rho) = (args.real("a"), args.real("rho"));
    if !(a > -1.0) {
        return Err(Error::domain(format!("JG5C needs a > -1, got {a}")));
    }
    if !(rho > 1.0) {
        return Err(Error::domain(format!("JG5C needs rho > 1, got {rho}")));
    }
    Ok((
        a,
        rho,
        check_index(args.nat("m"), "m")?,
        check_index(args.nat("n"), "n")?,
    ))
}

fn jg5d_args(args: &Args) -> Result<(f64, usize, usize)> {
    Ok((
        args.real("lam"),
        check_index(args.nat("m"), "m")?,
        check_index(args.nat("n"), "n")?,
    ))
}

#[derive(Clone, Copy)]
struct Awj {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    f: Scalar,
    g: Scalar,
    q: f64,
}

fn awj_args(args: &Args) -> Result<Awj> {
    let q = args.real("q");
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("AWJ needs 0 < q < 1, got {q}")));
    }
    let p = Awj {
        a: args.complex("a"),
        b: args.complex("b"),
        c: args.complex("c"),
        d: args.complex("d"),
        f: args.complex("f"),
        g: args.complex("g"),
        q,
    };
    for (name, v) in [
        ("a", p.a),
        ("b", p.b),
        ("c", p.c),
        ("d", p.d),
        ("f", p.f),
        ("g", p.g),
    ] {
        if !(v.norm() < 1.0 && v.norm() > 0.0) {
            return Err(Error::domain(format!(
                "AWJ needs 0 < |{name}| < 1, got {}",
                v.norm()
            )));
        }
    }
    Ok(p)
}

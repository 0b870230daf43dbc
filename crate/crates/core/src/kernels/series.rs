//! Generating functions and Poisson kernels: truncated power series against
//! closed forms.

use std::f64::consts::PI;

use super::{Args, IdentityId, SideValue, Truncation};
use crate::error::{Error, Result};
use crate::hyperseries::{hyp1f1, hyp2f1, phi32_lower_zero_scaled, qpoch_inf_value};
use crate::numerics::{gamma, CompensatedSum, Scalar, ONE};
use crate::orthopoly::meixner_scaled;

pub(super) fn closed(id: IdentityId, args: &Args) -> Result<Scalar> {
    match id {
        IdentityId::GfLag => {
            let (k, x, z) = gf_lag_args(args)?;
            Ok((ONE - z).powf(-2.0 * k) * (x * z / (z - 1.0)).exp())
        }
        IdentityId::GfMp => {
            let (k, x, phi, z) = gf_mp_args(args)?;
            let e = Scalar::from_polar(1.0, phi);
            let ix = Scalar::new(0.0, x);
            let v = (ONE - e * z).powc(-k + ix) * (ONE - z / e).powc(-k - ix);
            Ok(v / gamma(2.0 * k)?)
        }
        IdentityId::GfMei => {
            let (k, c, x, z) = gf_mei_args(args)?;
            Ok((ONE - z / c).powi(x as i32) * (ONE - c * z).powf(-(x as f64) - 2.0 * k))
        }
        IdentityId::Ser1 => {
            let (a, b, x, y, z) = ser1_args(args)?;
            let u = ONE - z + y * z;
            let w = x * y * z / ((ONE - z) * u);
            let pre = ((a - b) * (ONE - z).ln() - a * u.ln() + x * z / (z - 1.0)).exp();
            Ok(pre * hyp1f1(a.into(), b.into(), w)?)
        }
        IdentityId::Ser2 => {
            let (a, b, c, x, y, z) = ser2_args(args)?;
            let u = ONE - z + x * z;
            let v = ONE - z + y * z;
            let w = x * y * z / (u * v);
            // log form: for large a the factors over- and underflow separately
            let pre = (-a * u.ln() - b * v.ln() + (a + b - c) * (ONE - z).ln()).exp();
            Ok(pre * hyp2f1(a.into(), b.into(), c.into(), w)?)
        }
        IdentityId::Qser2 => {
            let p = qser2_args(args)?;
            qser2_closed(&p)
        }
        _ => unreachable!("not a series identity"),
    }
}

pub(super) fn series(id: IdentityId, args: &Args, trunc: &Truncation) -> Result<SideValue> {
    match id {
        IdentityId::GfLag => {
            let (k, x, z) = gf_lag_args(args)?;
            let alpha = 2.0 * k - 1.0;
            let mut rec = ThreeTerm::new(1.0, 1.0 + alpha - x);
            power_series("GF-LAG", z, trunc, |n| {
                let m = n as f64 - 1.0;
                Ok(rec
                    .next(|p0, p1| {
                        ((2.0 * m + alpha + 1.0 - x) * p1 - (m + alpha) * p0) / (m + 1.0)
                    })
                    .into())
            })
        }
        IdentityId::GfMp => {
            let (k, x, phi, z) = gf_mp_args(args)?;
            let (s, c) = phi.sin_cos();
            let mut rec = ThreeTerm::new(1.0, 2.0 * (k * c + x * s));
            let g = gamma(2.0 * k)?;
            power_series("GF-MP", z, trunc, |n| {
                let m = n as f64 - 1.0;
                let p = rec.next(|p0, p1| {
                    (2.0 * (x * s + (m + k) * c) * p1 - (m + 2.0 * k - 1.0) * p0) / (m + 1.0)
                });
                Ok((p / g).into())
            })
        }
        IdentityId::GfMei => {
            let (k, c, x, z) = gf_mei_args(args)?;
            // (2k)_n/n! · c^n M_n(x; 2k, c²) = (2k)_n/n! · meixner_scaled / c^x
            let mut w = 1.0 / c.powi(x as i32);
            power_series("GF-MEI", z, trunc, |n| {
                if n > 0 {
                    w *= (2.0 * k + n as f64 - 1.0) / n as f64;
                }
                Ok((w * meixner_scaled(n, x, 2.0 * k, c)).into())
            })
        }
        IdentityId::Ser1 => {
            let (a, b, x, y, z) = ser1_args(args)?;
            let mut g = ThreeTerm::new(1.0, 1.0 - x / b);
            let mut f = ThreeTerm::new(1.0, 1.0 - a * y / b);
            let mut w = 1.0;
            power_series("SER1", z, trunc, |n| {
                let nf = n as f64;
                if n > 0 {
                    w *= (b + nf - 1.0) / nf;
                }
                let m = nf - 1.0;
                let gn = g.next(|g0, g1| ((2.0 * m + b - x) * g1 - m * g0) / (m + b));
                let fn_ = f.next(hyp2f1_step(nf, a, b, y));
                Ok((w * gn * fn_).into())
            })
        }
        IdentityId::Ser2 => {
            let (a, b, c, x, y, z) = ser2_args(args)?;
            let mut f = ThreeTerm::new(1.0, 1.0 - a * x / c);
            let mut g = ThreeTerm::new(1.0, 1.0 - b * y / c);
            let mut w = 1.0;
            power_series("SER2", z, trunc, |n| {
                let nf = n as f64;
                if n > 0 {
                    w *= (c + nf - 1.0) / nf;
                }
                let fx = f.next(hyp2f1_step(nf, a, c, x));
                let gy = g.next(hyp2f1_step(nf, b, c, y));
                Ok((w * fx * gy).into())
            })
        }
        IdentityId::Qser2 => {
            let p = qser2_args(args)?;
            let mut fq = ONE;
            let mut qq = 1.0;
            let mut qn = 1.0;
            power_series("QSER2", p.z, trunc, |n| {
                if n > 0 {
                    fq *= ONE - p.f * qn;
                    qq *= 1.0 - qn * p.q;
                    qn *= p.q;
                }
                let r1 = phi32_lower_zero_scaled(n, p.a, p.b, p.f, p.q);
                let r2 = phi32_lower_zero_scaled(n, p.c, p.d, p.f, p.q);
                if fq.norm() == 0.0 {
                    return Err(Error::pole("(f;q)_n vanishes"));
                }
                Ok(r1 * r2 / (fq * qq))
            })
        }
        _ => unreachable!("not a series identity"),
    }
}

/// Rolling state of a forward three-term recurrence.
struct ThreeTerm {
    prev: f64,
    cur: f64,
    n: usize,
}

impl ThreeTerm {
    fn new(p0: f64, p1: f64) -> Self {
        Self {
            prev: p0,
            cur: p1,
            n: 0,
        }
    }

    /// Returns `p_n` for successive `n = 0, 1, …`, computing `p_n` from
    /// `step(p_{n−2}, p_{n−1})` once `n ≥ 2`.
    fn next(&mut self, step: impl FnOnce(f64, f64) -> f64) -> f64 {
        let out = match self.n {
            0 => self.prev,
            1 => self.cur,
            _ => {
                let p = step(self.prev, self.cur);
                self.prev = self.cur;
                self.cur = p;
                p
            }
        };
        self.n += 1;
        out
    }
}

/// `(m + c) F_{m+1} = ((2 − x) m + c − a x) F_m − m (1 − x) F_{m−1}` for
/// `F_m = ₂F₁(−m, a; c; x)`, called with `n = m + 1`.
fn hyp2f1_step(n: f64, a: f64, c: f64, x: f64) -> impl FnOnce(f64, f64) -> f64 {
    let m = n - 1.0;
    move |f0, f1| (((2.0 - x) * m + c - a * x) * f1 - m * (1.0 - x) * f0) / (m + c)
}

/// Sums `Σ coeff(n) zⁿ` until three consecutive terms are negligible.
fn power_series(
    what: &str,
    z: Scalar,
    trunc: &Truncation,
    mut coeff: impl FnMut(usize) -> Result<Scalar>,
) -> Result<SideValue> {
    let mut acc = CompensatedSum::new();
    let mut zn = ONE;
    let mut small = 0;
    let mut prev_norm = f64::NAN;
    let mut last = 0.0;
    for n in 0..trunc.max_terms {
        let t = coeff(n)? * zn;
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::range(format!("{what} series term {n} overflowed")));
        }
        acc.add(t);
        last = t.norm();
        if last <= trunc.tol * acc.value().norm() {
            small += 1;
        } else {
            small = 0;
        }
        if small >= 3 && n >= 4 {
            let ratio = if prev_norm > 0.0 {
                (last / prev_norm).max(z.norm())
            } else {
                z.norm()
            };
            let tail_bound = if ratio < 1.0 {
                last * ratio / (1.0 - ratio)
            } else {
                last
            };
            return Ok(SideValue {
                value: acc.value(),
                terms: n + 1,
                tail_bound,
            });
        }
        prev_norm = last;
        zn *= z;
    }
    Err(Error::Truncation {
        what: what.to_string(),
        terms: trunc.max_terms,
        last_term: last,
    })
}

fn check_z(z: Scalar, radius: f64, what: &str) -> Result<()> {
    if !(z.norm() < radius) {
        return Err(Error::domain(format!(
            "{what} needs |z| < {radius}, got {}",
            z.norm()
        )));
    }
    Ok(())
}

fn positive(v: f64, name: &str) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::domain(format!("{name} must be positive, got {v}")));
    }
    Ok(v)
}

fn gf_lag_args(args: &Args) -> Result<(f64, f64, Scalar)> {
    let k = positive(args.real("k"), "k")?;
    let z = args.complex("z");
    check_z(z, 1.0, "GF-LAG")?;
    Ok((k, args.real("x"), z))
}

fn gf_mp_args(args: &Args) -> Result<(f64, f64, f64, Scalar)> {
    let k = positive(args.real("k"), "k")?;
    let phi = args.real("phi");
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::domain(format!(
            "GF-MP needs 0 < phi < pi, got {phi}"
        )));
    }
    let z = args.complex("z");
    check_z(z, 1.0, "GF-MP")?;
    Ok((k, args.real("x"), phi, z))
}

fn gf_mei_args(args: &Args) -> Result<(f64, f64, usize, Scalar)> {
    let k = positive(args.real("k"), "k")?;
    let c = args.real("c");
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::domain(format!("GF-MEI needs 0 < c < 1, got {c}")));
    }
    let z = args.complex("z");
    check_z(z, 1.0, "GF-MEI")?;
    Ok((k, c, args.nat("x"), z))
}

fn ser1_args(args: &Args) -> Result<(f64, f64, f64, f64, Scalar)> {
    let b = positive(args.real("b"), "b")?;
    let y = args.real("y");
    let z = args.complex("z");
    check_z(z, 1.0 / (1.0 - y).abs().max(1.0), "SER1")?;
    Ok((args.real("a"), b, args.real("x"), y, z))
}

fn ser2_args(args: &Args) -> Result<(f64, f64, f64, f64, f64, Scalar)> {
    let c = positive(args.real("c"), "c")?;
    let (x, y) = (args.real("x"), args.real("y"));
    let z = args.complex("z");
    check_z(
        z,
        1.0 / ((1.0 - x).abs().max(1.0) * (1.0 - y).abs().max(1.0)),
        "SER2",
    )?;
    Ok((args.real("a"), args.real("b"), c, x, y, z))
}

struct Qser2 {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    f: Scalar,
    q: f64,
    z: Scalar,
}

fn qser2_args(args: &Args) -> Result<Qser2> {
    let q = args.real("q");
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("QSER2 needs 0 < q < 1, got {q}")));
    }
    let p = Qser2 {
        a: args.complex("a"),
        b: args.complex("b"),
        c: args.complex("c"),
        d: args.complex("d"),
        f: args.complex("f"),
        q,
        z: args.complex("z"),
    };
    for (name, v) in [("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d)] {
        if v.norm() > 1.0 {
            return Err(Error::domain(format!(
                "QSER2 needs |{name}| <= 1, got {}",
                v.norm()
            )));
        }
    }
    if !(p.f.norm() < 1.0) {
        return Err(Error::domain(format!(
            "QSER2 needs |f| < 1, got {}",
            p.f.norm()
        )));
    }
    check_z(p.z, 1.0, "QSER2")?;
    Ok(p)
}

/// `(abcdz, abdz, acdz, bcdz, fz)_∞ / (acz, bcz, adz, bdz, abcdz)_∞ · ₈W₇`.
///
/// The `₈W₇(abcdz/q; a, b, c, d, abcdz/f; q, fz)` is summed with its
/// denominators written out as `bcdz, acdz, abdz, abcz, f`, which stays
/// finite when some of `a, b, c, d, z` vanish.
fn qser2_closed(p: &Qser2) -> Result<Scalar> {
    let Qser2 {
        a,
        b,
        c,
        d,
        f,
        q,
        z,
    } = *p;
    let inf = |u: Scalar| qpoch_inf_value(u, q);
    let abcdz = a * b * c * d * z;
    let num = inf(a * b * c * z)?
        * inf(a * b * d * z)?
        * inf(a * c * d * z)?
        * inf(b * c * d * z)?
        * inf(f * z)?;
    let den = inf(a * c * z)? * inf(b * c * z)? * inf(a * d * z)? * inf(b * d * z)? * inf(abcdz)?;
    if den.norm() == 0.0 {
        return Err(Error::pole("QSER2 product denominator vanishes"));
    }
    let upper = [a, b, c, d];
    let lower = [
        b * c * d * z,
        a * c * d * z,
        a * b * d * z,
        a * b * c * z,
        f,
    ];
    let big_a = abcdz / q;
    let policy = Truncation::default();
    let mut acc = CompensatedSum::new();
    acc.add(ONE);
    // p_n = (Aq;q)_{n−1} (a,b,c,d;q)_n ∏_{i<n}(f − abcdz qⁱ) zⁿ / (q, lower; q)_n,
    // so that term n is (1 − A q^{2n}) p_n.
    let mut pn = ONE;
    let mut qi = 1.0;
    let mut small = 0;
    for n in 1..policy.max_terms {
        if n > 1 {
            pn *= ONE - big_a * qi;
        }
        let mut r = (f - abcdz * qi) * z / (1.0 - q * qi);
        for u in upper {
            r *= ONE - u * qi;
        }
        for l in lower {
            let den = ONE - l * qi;
            if den.norm() < 1e-300 {
                return Err(Error::pole("QSER2 8W7 denominator vanishes"));
            }
            r /= den;
        }
        pn *= r;
        qi *= q;
        let t = pn * (ONE - big_a * qi * qi);
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::range("QSER2 8W7 term overflowed"));
        }
        acc.add(t);
        if t.norm() <= policy.tol * acc.value().norm() {
            small += 1;
            if small >= 3 {
                return Ok(num / den * acc.value());
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Truncation {
        what: "QSER2 8W7".into(),
        terms: policy.max_terms,
        last_term: f64::NAN,
    })
}

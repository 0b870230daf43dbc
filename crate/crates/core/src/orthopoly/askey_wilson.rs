use std::f64::consts::PI;

use super::{Method, MuPoint, PolyValue};
use crate::error::{Error, Result};
use crate::hyperseries::{phi_rs, qpoch, qpoch_inf_value, QSeriesSpec, TruncationPolicy};
use crate::numerics::{CompensatedSum, Scalar, ONE};

fn literal(upper: &[Scalar], lower: &[Scalar], q: f64) -> Result<(Scalar, f64)> {
    let s = phi_rs(
        &QSeriesSpec::new(upper, lower, q, Scalar::new(q, 0.0)),
        &TruncationPolicy::default(),
    )?;
    Ok((s.value, s.cancellation))
}

/// Gaussian binomials `[n k]_q` for `k = 0..=n`.
fn q_binomials(n: usize, q: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    out.push(c);
    for k in 1..=n {
        c *= (1.0 - q.powi((n - k + 1) as i32)) / (1.0 - q.powi(k as i32));
        out.push(c);
    }
    out
}

/// Running products `[(a;q)_0, …, (a;q)_n]`.
fn qpoch_table(a: Scalar, q: f64, n: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = ONE;
    let mut qi = 1.0;
    out.push(p);
    for _ in 0..n {
        p *= ONE - a * qi;
        qi *= q;
        out.push(p);
    }
    out
}

/// Continuous q-Hermite `H_n(μ | q) = Σ_k [n k]_q x^{n−2k}`, the common limit
/// of both families when every parameter vanishes.
fn q_hermite(n: usize, point: MuPoint, q: f64, method: Method) -> PolyValue {
    match method {
        Method::Recurrence => {
            let (mut h0, mut h1) = (ONE, point.mu * 2.0);
            if n == 0 {
                return PolyValue {
                    value: ONE,
                    cancellation: 1.0,
                };
            }
            for m in 1..n {
                let h2 = point.mu * 2.0 * h1 - h0 * (1.0 - q.powi(m as i32));
                h0 = h1;
                h1 = h2;
            }
            PolyValue {
                value: h1,
                cancellation: 1.0,
            }
        }
        _ => {
            let bin = q_binomials(n, q);
            let mut acc = CompensatedSum::new();
            for (k, b) in bin.iter().enumerate() {
                acc.add(point.x.powi(n as i32 - 2 * k as i32) * *b);
            }
            PolyValue {
                value: acc.value(),
                cancellation: acc.cancellation(),
            }
        }
    }
}

/// Al-Salam–Chihara `Q_n(μ; a, b | q)`.
pub(super) fn asc(
    n: usize,
    point: MuPoint,
    a: Scalar,
    b: Scalar,
    q: f64,
    method: Method,
) -> Result<PolyValue> {
    let (a, b) = if a.norm() >= b.norm() { (a, b) } else { (b, a) };
    if a.norm() == 0.0 {
        return Ok(q_hermite(n, point, q, method));
    }
    let x = point.x;
    match method {
        Method::Recurrence => {
            let two_mu = point.mu * 2.0;
            let (mut q0, mut q1) = (ONE, two_mu - a - b);
            if n == 0 {
                return Ok(PolyValue {
                    value: ONE,
                    cancellation: 1.0,
                });
            }
            let mut qm = q;
            for _ in 1..n {
                let q2 = (two_mu - (a + b) * qm) * q1 - (1.0 - qm) * (ONE - a * b * qm / q) * q0;
                q0 = q1;
                q1 = q2;
                qm *= q;
            }
            Ok(PolyValue {
                value: q1,
                cancellation: 1.0,
            })
        }
        Method::Hypergeometric => {
            let qn = Scalar::new(q.powi(-(n as i32)), 0.0);
            let (v, kappa) = literal(&[qn, a * x, a / x], &[a * b, Scalar::new(0.0, 0.0)], q)?;
            Ok(PolyValue {
                value: v * qpoch(a * b, q, n) / a.powu(n as u32),
                cancellation: kappa,
            })
        }
        Method::ProductSeries => {
            // Q_n = Σ_k [n k]_q (a/x;q)_k x^k (bx;q)_{n−k} x^{k−n}
            let bin = q_binomials(n, q);
            let left = qpoch_table(a / x, q, n);
            let right = qpoch_table(b * x, q, n);
            let mut acc = CompensatedSum::new();
            for k in 0..=n {
                acc.add(left[k] * right[n - k] * x.powi(2 * k as i32 - n as i32) * bin[k]);
            }
            Ok(PolyValue {
                value: acc.value(),
                cancellation: acc.cancellation(),
            })
        }
    }
}

/// Askey-Wilson `p_n(μ; a, b, c, d | q)`.
pub(super) fn aw(
    n: usize,
    point: MuPoint,
    params: [Scalar; 4],
    q: f64,
    method: Method,
) -> Result<PolyValue> {
    // The polynomial is symmetric in its parameters; pivot on the largest so
    // the 1/a factors below stay tame.
    let mut p = params;
    p.sort_by(|u, v| v.norm().total_cmp(&u.norm()));
    let [a, b, c, d] = p;
    if a.norm() == 0.0 {
        return Ok(q_hermite(n, point, q, method));
    }
    let x = point.x;
    let abcd = a * b * c * d;
    match method {
        Method::Recurrence => {
            let coeff_a = |m: i32| {
                let qm = q.powi(m);
                (ONE - a * b * qm) * (ONE - a * c * qm) * (ONE - a * d * qm) * (ONE - abcd * qm / q)
                    / (a * (ONE - abcd * qm * qm / q) * (ONE - abcd * qm * qm))
            };
            let coeff_c = |m: i32| {
                if m == 0 {
                    return Scalar::new(0.0, 0.0);
                }
                let qm = q.powi(m);
                let q1 = qm / q;
                a * (1.0 - qm) * (ONE - b * c * q1) * (ONE - b * d * q1) * (ONE - c * d * q1)
                    / ((ONE - abcd * q1 * q1) * (ONE - abcd * qm * q1))
            };
            let shift = |m: i32| (a + ONE / a - (coeff_a(m) + coeff_c(m))) * 0.5;
            let mut hat0 = ONE;
            let mut hat1 = point.mu - shift(0);
            if n == 0 {
                return Ok(PolyValue {
                    value: ONE,
                    cancellation: 1.0,
                });
            }
            for m in 1..n as i32 {
                let hat2 = (point.mu - shift(m)) * hat1 - coeff_a(m - 1) * coeff_c(m) * 0.25 * hat0;
                hat0 = hat1;
                hat1 = hat2;
            }
            let lead = qpoch(abcd * q.powi(n as i32 - 1), q, n) * 2f64.powi(n as i32);
            Ok(PolyValue {
                value: hat1 * lead,
                cancellation: 1.0,
            })
        }
        Method::Hypergeometric => {
            let qn = Scalar::new(q.powi(-(n as i32)), 0.0);
            let (v, kappa) = literal(
                &[qn, abcd * q.powi(n as i32 - 1), a * x, a / x],
                &[a * b, a * c, a * d],
                q,
            )?;
            let pre =
                qpoch(a * b, q, n) * qpoch(a * c, q, n) * qpoch(a * d, q, n) / a.powu(n as u32);
            Ok(PolyValue {
                value: v * pre,
                cancellation: kappa,
            })
        }
        Method::ProductSeries => {
            // p_n = Σ_k [n k]_q (abq^k;q)_{n−k} (cdq^{n−k};q)_k
            //         · (ax, bx;q)_k x^{−k} · (c/x, d/x;q)_{n−k} x^{n−k}
            let bin = q_binomials(n, q);
            let ax = qpoch_table(a * x, q, n);
            let bx = qpoch_table(b * x, q, n);
            let cx = qpoch_table(c / x, q, n);
            let dx = qpoch_table(d / x, q, n);
            // tails: ∏_{i=k}^{n−1} (1 − u qⁱ)
            let tail = |u: Scalar| {
                let mut t = vec![ONE; n + 1];
                for k in (0..n).rev() {
                    t[k] = t[k + 1] * (ONE - u * q.powi(k as i32));
                }
                t
            };
            let ab_tail = tail(a * b);
            let cd_tail = tail(c * d);
            let mut acc = CompensatedSum::new();
            for k in 0..=n {
                let t = ab_tail[k]
                    * cd_tail[n - k]
                    * ax[k]
                    * bx[k]
                    * cx[n - k]
                    * dx[n - k]
                    * x.powi(n as i32 - 2 * k as i32)
                    * bin[k];
                acc.add(t);
            }
            Ok(PolyValue {
                value: acc.value(),
                cancellation: acc.cancellation(),
            })
        }
    }
}

fn check_measure(params: &[Scalar; 4], q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(format!("0 < q < 1 required, got {q}")));
    }
    if params.iter().any(|p| !(p.norm() < 1.0)) {
        return Err(Error::domain(
            "Askey-Wilson measure needs max(|a|,|b|,|c|,|d|) < 1",
        ));
    }
    Ok(())
}

fn real_part(v: Scalar, what: &str) -> Result<f64> {
    if v.im.abs() > 1e-9 * v.norm().max(1e-300) {
        return Err(Error::domain(format!(
            "{what} is not real ({v}); parameters must be real or come in conjugate pairs"
        )));
    }
    Ok(v.re)
}

/// `h(cos θ; a) = (a e^{iθ}, a e^{−iθ}; q)_∞`.
pub fn aw_h(theta: f64, a: Scalar, q: f64) -> Result<Scalar> {
    let e = Scalar::from_polar(1.0, theta);
    Ok(qpoch_inf_value(a * e, q)? * qpoch_inf_value(a / e, q)?)
}

/// Askey-Wilson weight in the angle variable, `w(cos θ) · sin θ`:
/// `h(cos θ; 1, −1, q^{1/2}, −q^{1/2}) / h(cos θ; a, b, c, d)`.
pub fn aw_weight_theta(theta: f64, params: [Scalar; 4], q: f64) -> Result<f64> {
    check_measure(&params, q)?;
    let sq = q.sqrt();
    let mut num = ONE;
    for u in [1.0, -1.0, sq, -sq] {
        num *= aw_h(theta, Scalar::new(u, 0.0), q)?;
    }
    let mut den = ONE;
    for p in params {
        den *= aw_h(theta, p, q)?;
    }
    real_part(num / den, "Askey-Wilson weight")
}

/// Askey-Wilson weight `w(μ)` on `(−1, 1)`.
pub fn aw_weight(mu: f64, params: [Scalar; 4], q: f64) -> Result<f64> {
    if !(mu.abs() < 1.0) {
        return Err(Error::domain(format!(
            "Askey-Wilson weight needs |mu| < 1, got {mu}"
        )));
    }
    let theta = mu.acos();
    Ok(aw_weight_theta(theta, params, q)? / theta.sin())
}

/// `1 / h_n`, the squared norm `∫ p_n² w`.
pub fn aw_norm(n: usize, params: [Scalar; 4], q: f64) -> Result<f64> {
    check_measure(&params, q)?;
    let [a, b, c, d] = params;
    let pairs = [a * b, a * c, a * d, b * c, b * d, c * d];
    let abcd = a * b * c * d;
    let mut h0 =
        qpoch_inf_value(Scalar::new(q, 0.0), q)? / (qpoch_inf_value(abcd, q)? * (2.0 * PI));
    for &u in &pairs {
        h0 *= qpoch_inf_value(u, q)?;
    }
    if n == 0 {
        return Ok(1.0 / real_part(h0, "h_0")?);
    }
    // (abcd q^{−1}; q)_n / (1 − abcd q^{−1}) = (abcd; q)_{n−1}
    let mut num = qpoch(abcd, q, n - 1) * (ONE - abcd * q.powi(2 * n as i32 - 1));
    let mut den = qpoch(Scalar::new(q, 0.0), q, n);
    for &u in &pairs {
        den *= qpoch(u, q, n);
    }
    num /= den;
    Ok(1.0 / real_part(h0 * num, "h_n")?)
}

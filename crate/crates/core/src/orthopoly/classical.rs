use super::{i_pow, PolyFamily, PolyValue};
use crate::error::Result;
use crate::hyperseries::{pfq, SeriesSpec, TruncationPolicy};
use crate::numerics::{binomial, factorial, pochhammer, pochhammer_real, re, Scalar, ONE};

fn series(num: &[Scalar], den: &[Scalar], z: Scalar) -> Result<PolyValue> {
    let s = pfq(&SeriesSpec::new(num, den, z), &TruncationPolicy::default())?;
    Ok(PolyValue {
        value: s.value,
        cancellation: s.cancellation,
    })
}

fn scaled(v: PolyValue, factor: Scalar) -> PolyValue {
    PolyValue {
        value: v.value * factor,
        cancellation: v.cancellation,
    }
}

pub(super) fn hypergeometric(family: &PolyFamily, n: usize, x: Scalar) -> Result<PolyValue> {
    let nn = re(-(n as f64));
    let nf = n as f64;
    match *family {
        PolyFamily::Laguerre { alpha } => {
            let v = series(&[nn], &[re(alpha + 1.0)], x)?;
            Ok(scaled(
                v,
                re(pochhammer_real(alpha + 1.0, n) / factorial(n)),
            ))
        }
        PolyFamily::Meixner { beta, c } => series(&[nn, -x], &[re(beta)], re(1.0 - 1.0 / c)),
        PolyFamily::MeixnerPollaczek { lambda, phi } => {
            let z = ONE - Scalar::from_polar(1.0, -2.0 * phi);
            let v = series(&[nn, lambda + I * x], &[re(2.0 * lambda)], z)?;
            let pre = Scalar::from_polar(pochhammer_real(2.0 * lambda, n) / factorial(n), nf * phi);
            Ok(scaled(v, pre))
        }
        PolyFamily::Jacobi { a, b } => {
            let v = series(&[nn, re(nf + a + b + 1.0)], &[re(a + 1.0)], (ONE - x) * 0.5)?;
            Ok(scaled(v, re(pochhammer_real(a + 1.0, n) / factorial(n))))
        }
        PolyFamily::Hahn { a, b, n: big } => series(
            &[nn, re(nf + a + b + 1.0), -x],
            &[re(a + 1.0), re(-(big as f64))],
            ONE,
        ),
        PolyFamily::ContinuousHahn { a, b, c, d } => {
            let s = a + b + c + d;
            let v = series(&[nn, s + nf - 1.0, a + I * x], &[a + c, a + d], ONE)?;
            let pre = i_pow(n) * pochhammer(a + c, n) * pochhammer(a + d, n) / factorial(n);
            Ok(scaled(v, pre))
        }
        PolyFamily::Hermite => {
            let m = n / 2;
            let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
            let x2 = x * x;
            if n.is_multiple_of(2) {
                let v = series(&[re(-(m as f64))], &[re(0.5)], x2)?;
                Ok(scaled(v, re(sign * factorial(n) / factorial(m))))
            } else {
                let v = series(&[re(-(m as f64))], &[re(1.5)], x2)?;
                Ok(scaled(v, x * (2.0 * sign * factorial(n) / factorial(m))))
            }
        }
        PolyFamily::AlSalamChihara { .. } | PolyFamily::AskeyWilson { .. } => {
            unreachable!("q-families are dispatched through eval_mu")
        }
    }
}

const I: Scalar = crate::numerics::I;

/// Three-term recurrences in the normalization of the hypergeometric
/// definitions above.
pub(super) fn recurrence(family: &PolyFamily, n: usize, x: Scalar) -> Scalar {
    match *family {
        PolyFamily::Laguerre { alpha } => run(n, ONE, ONE * (alpha + 1.0) - x, |m, p1, p0| {
            ((2.0 * m + alpha + 1.0 - x) * p1 - (m + alpha) * p0) / (m + 1.0)
        }),
        PolyFamily::Meixner { beta, c } => {
            // M_n(x) = M_x(n): at integer x < n the forward recurrence in n
            // is unstable, so run it in the dual index instead.
            if let Some(xi) = small_integer(x, n) {
                return recurrence(family, xi, re(n as f64));
            }
            let m1 = ((c - 1.0) * x + beta * c) / (beta * c);
            run(n, ONE, m1, |m, p1, p0| {
                (((c - 1.0) * x + m + (m + beta) * c) * p1 - p0 * m) / (c * (m + beta))
            })
        }
        PolyFamily::MeixnerPollaczek { lambda, phi } => {
            let (s, co) = phi.sin_cos();
            let p1 = (x * s + lambda * co) * 2.0;
            run(n, ONE, p1, |m, p1, p0| {
                ((x * s + (m + lambda) * co) * 2.0 * p1 - (m + 2.0 * lambda - 1.0) * p0) / (m + 1.0)
            })
        }
        PolyFamily::Jacobi { a, b } => {
            let p1 = ONE * (a + 1.0) + (x - 1.0) * ((a + b + 2.0) / 2.0);
            run(n, ONE, p1, |m, p1, p0| {
                let t = 2.0 * m + a + b;
                let lead = 2.0 * (m + 1.0) * (m + a + b + 1.0) * t;
                ((t + 1.0) * ((t + 2.0) * t * x + (a * a - b * b)) * p1
                    - 2.0 * (m + a) * (m + b) * (t + 2.0) * p0)
                    / lead
            })
        }
        PolyFamily::Hahn { a, b, n: big } => {
            if let Some(xi) = small_integer(x, n) {
                return dual_hahn(xi, n, a, b, big as f64);
            }
            let big = big as f64;
            let s = a + b;
            let coeff_a = |m: f64| {
                if m == 0.0 {
                    (a + 1.0) * big / (s + 2.0)
                } else {
                    (m + s + 1.0) * (m + a + 1.0) * (big - m)
                        / ((2.0 * m + s + 1.0) * (2.0 * m + s + 2.0))
                }
            };
            let coeff_c =
                |m: f64| m * (m + s + big + 1.0) * (m + b) / ((2.0 * m + s) * (2.0 * m + s + 1.0));
            let p1 = (ONE * coeff_a(0.0) - x) / coeff_a(0.0);
            run(n, ONE, p1, |m, p1, p0| {
                let (am, cm) = (coeff_a(m), coeff_c(m));
                ((am + cm - x) * p1 - cm * p0) / am
            })
        }
        PolyFamily::ContinuousHahn { a, b, c, d } => {
            // Recurrence on the ₃F₂ part p̃_n; the prefactor is applied after.
            let s = a + b + c + d;
            let coeff_a = |m: f64| {
                -(s + m - 1.0) * (a + c + m) * (a + d + m) / ((s + 2.0 * m - 1.0) * (s + 2.0 * m))
            };
            let coeff_c = |m: f64| {
                (b + c + m - 1.0) * (b + d + m - 1.0) * m
                    / ((s + 2.0 * m - 2.0) * (s + 2.0 * m - 1.0))
            };
            let ax = a + I * x;
            let p1 = (ax + coeff_a(0.0)) / coeff_a(0.0);
            let pt = run(n, ONE, p1, |m, p1, p0| {
                let (am, cm) = (coeff_a(m), coeff_c(m));
                ((ax + am + cm) * p1 - cm * p0) / am
            });
            pt * i_pow(n) * pochhammer(a + c, n) * pochhammer(a + d, n) / factorial(n)
        }
        PolyFamily::Hermite => run(n, ONE, x * 2.0, |m, p1, p0| x * 2.0 * p1 - p0 * (2.0 * m)),
        PolyFamily::AlSalamChihara { .. } | PolyFamily::AskeyWilson { .. } => {
            unreachable!("q-families are dispatched through eval_mu")
        }
    }
}

/// `Some(x)` when `x` is an integer in `0..n`.
fn small_integer(x: Scalar, n: usize) -> Option<usize> {
    let r = x.re.round();
    (x.im == 0.0 && x.re == r && r >= 0.0 && r < n as f64).then_some(r as usize)
}

/// `Q_n(x; a, b, N) = R_x(n(n+a+b+1); a, b, N)`, with the dual Hahn
/// recurrence run in `x`:
/// `λ R_m = A_m R_{m+1} − (A_m + C_m) R_m + C_m R_{m−1}`,
/// `A_m = (m+a+1)(m−N)`, `C_m = m(m−b−N−1)`.
fn dual_hahn(x: usize, n: usize, a: f64, b: f64, big: f64) -> Scalar {
    let nf = n as f64;
    let lam = nf * (nf + a + b + 1.0);
    let coeff_a = |m: f64| (m + a + 1.0) * (m - big);
    let coeff_c = |m: f64| m * (m - b - big - 1.0);
    let r1 = re((coeff_a(0.0) + lam) / coeff_a(0.0));
    run(x, ONE, r1, |m, p1, p0| {
        let (am, cm) = (coeff_a(m), coeff_c(m));
        ((lam + am + cm) * p1 - cm * p0) / am
    })
}

/// Runs `p_{m+1} = step(m, p_m, p_{m−1})` from `(p_0, p_1)` up to `p_n`.
fn run<F: Fn(f64, Scalar, Scalar) -> Scalar>(n: usize, p0: Scalar, p1: Scalar, step: F) -> Scalar {
    if n == 0 {
        return p0;
    }
    let (mut a, mut b) = (p0, p1);
    for m in 1..n {
        let c = step(m as f64, b, a);
        a = b;
        b = c;
    }
    b
}

/// `γ^{n+m} M_n(m; β, γ²)` for integer `m`, finite at `γ = 0`:
///
/// `Σ_k (−n)_k (−m)_k / ((β)_k k!) · γ^{n+m−2k} (γ² − 1)^k`.
pub fn meixner_scaled(n: usize, m: usize, beta: f64, gamma: f64) -> f64 {
    let g2m1 = gamma * gamma - 1.0;
    let mut total = 0.0;
    let mut coeff = 1.0;
    for k in 0..=n.min(m) {
        if k > 0 {
            let kf = (k - 1) as f64;
            coeff *= (kf - n as f64) * (kf - m as f64) / ((beta + kf) * (kf + 1.0));
        }
        let e = (n + m - 2 * k) as i32;
        total += coeff * gamma.powi(e) * g2m1.powi(k as i32);
    }
    total
}

/// `(−N)_n Q_n(x; a, b, N)`, finite for every real `N`:
///
/// `Σ_k (−n)_k (n+a+b+1)_k (−x)_k / ((a+1)_k k!) · ∏_{i=k}^{n−1} (i − N)`.
pub fn hahn_scaled(n: usize, x: f64, a: f64, b: f64, big_n: f64) -> f64 {
    let nf = n as f64;
    // tail[k] = ∏_{i=k}^{n−1} (i − N)
    let mut tail = vec![1.0; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] * (k as f64 - big_n);
    }
    let mut total = 0.0;
    let mut coeff = 1.0;
    for (k, t) in tail.iter().enumerate() {
        if k > 0 {
            let kf = (k - 1) as f64;
            coeff *= (kf - nf) * (nf + a + b + 1.0 + kf) * (kf - x) / ((a + 1.0 + kf) * (kf + 1.0));
        }
        if coeff == 0.0 {
            break;
        }
        total += coeff * t;
    }
    total
}

/// `s^j P_j^{(α,β)}((x₂ − x₁)/s)` with `s = x₁ + x₂`, as the homogeneous
/// polynomial `Σ_m C(j+α, m) C(j+β, j−m) (−x₁)^{j−m} x₂^m`; regular at `s = 0`.
pub fn jacobi_homogeneous(j: usize, alpha: f64, beta: f64, x1: f64, x2: f64) -> f64 {
    let jf = j as f64;
    (0..=j)
        .map(|m| {
            binomial(jf + alpha, m)
                * binomial(jf + beta, j - m)
                * (-x1).powi((j - m) as i32)
                * x2.powi(m as i32)
        })
        .sum()
}

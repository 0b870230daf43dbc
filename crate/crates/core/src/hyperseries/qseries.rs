use super::{q_negative_power, SeriesValue, TruncationPolicy};
use crate::error::{Error, Result};
use crate::numerics::{CompensatedSum, Scalar, ONE};

fn check_base(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("base q must lie in (0, 1), got {q}")))
    }
}

/// `(a; q)_n = ∏_{i<n} (1 − a qⁱ)`.
pub fn qpoch(a: Scalar, q: f64, n: usize) -> Scalar {
    let mut p = ONE;
    let mut qi = 1.0;
    for _ in 0..n {
        p *= ONE - a * qi;
        qi *= q;
    }
    p
}

/// Truncated infinite product with a bound on the neglected factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QProduct {
    pub value: Scalar,
    pub factors: usize,
    /// Bound on `|∏_{tail} − 1|`; the relative error of `value`.
    pub tail_bound: f64,
}

/// `(a; q)_∞`, stopping at the first `i` with `|a| qⁱ < tol (1 − q)`.
pub fn qpoch_inf(a: Scalar, q: f64, tol: f64) -> Result<QProduct> {
    check_base(q)?;
    let r = a.norm();
    let mut p = ONE;
    let mut ai = r;
    let mut qi = 1.0;
    let mut factors = 0;
    while ai >= tol * (1.0 - q) {
        p *= ONE - a * qi;
        qi *= q;
        ai = r * qi;
        factors += 1;
        if !p.re.is_finite() || !p.im.is_finite() {
            return Err(Error::range(format!("(a;q)_∞ overflowed for |a| = {r}")));
        }
        if factors > 100_000 {
            return Err(Error::Truncation {
                what: "q-Pochhammer product".into(),
                terms: factors,
                last_term: ai,
            });
        }
    }
    // |log ∏_{j≥i}(1 − a q^j)| ≤ Σ |a|q^j / (1 − |a|q^j) ≤ t below.
    let t = ai / ((1.0 - q) * (1.0 - ai));
    Ok(QProduct {
        value: p,
        factors,
        tail_bound: t.exp_m1(),
    })
}

/// `(a; q)_∞` to full double precision.
pub fn qpoch_inf_value(a: Scalar, q: f64) -> Result<Scalar> {
    qpoch_inf(a, q, 1e-17).map(|p| p.value)
}

/// `r φ s [upper; lower; q, z]` in the Gasper-Rahman normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct QSeriesSpec {
    pub upper: Vec<Scalar>,
    pub lower: Vec<Scalar>,
    pub q: f64,
    pub z: Scalar,
}

impl QSeriesSpec {
    pub fn new(upper: &[Scalar], lower: &[Scalar], q: f64, z: Scalar) -> Self {
        Self {
            upper: upper.to_vec(),
            lower: lower.to_vec(),
            q,
            z,
        }
    }

    pub fn terminating_degree(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter_map(|&a| q_negative_power(a, self.q))
            .min()
    }

    fn ratio(&self, qk: f64) -> Scalar {
        let mut r = self.z / (1.0 - qk * self.q);
        for &a in &self.upper {
            r *= ONE - a * qk;
        }
        for &b in &self.lower {
            r /= ONE - b * qk;
        }
        let e = 1 + self.lower.len() as i64 - self.upper.len() as i64;
        if e != 0 {
            r *= (-qk).powi(e as i32);
        }
        r
    }
}

/// Literal summation of a basic hypergeometric series.
///
/// Terminating series use exactly `n + 1` terms. For the terminating
/// ₃φ₂ with a zero lower parameter the terms grow like `q^{−n(n−1)/2}`; the
/// returned `cancellation` shows how much of the value survives rounding, and
/// [`phi32_lower_zero`] is the well-conditioned alternative.
pub fn phi_rs(spec: &QSeriesSpec, policy: &TruncationPolicy) -> Result<SeriesValue> {
    check_base(spec.q)?;
    let q = spec.q;
    let terminating = spec.terminating_degree();
    let last = terminating.unwrap_or(usize::MAX);
    for &b in &spec.lower {
        if let Some(m) = q_negative_power(b, q) {
            if m < last {
                return Err(Error::pole(format!(
                    "lower parameter {b} = q^-{m} makes a denominator vanish"
                )));
            }
        }
    }

    let mut acc = CompensatedSum::new();
    let mut t = ONE;
    acc.add(t);
    let mut qk = 1.0;
    if let Some(n) = terminating {
        for _ in 0..n {
            t *= spec.ratio(qk);
            qk *= q;
            acc.add(t);
        }
        return finish(acc, n + 1, 0.0, true);
    }

    let (r, s) = (spec.upper.len(), spec.lower.len());
    let limit = if r <= s {
        0.0
    } else if r == s + 1 && spec.z.norm() < 1.0 {
        spec.z.norm()
    } else {
        return Err(Error::domain(format!(
            "non-terminating {r}phi{s} needs |z| < 1, got {}",
            spec.z.norm()
        )));
    };
    let mut small = 0;
    for k in 0..policy.max_terms {
        let ratio = spec.ratio(qk);
        qk *= q;
        t *= ratio;
        acc.add(t);
        if t.norm() < policy.tol * acc.value().norm() || t.norm() == 0.0 {
            small += 1;
        } else {
            small = 0;
        }
        let rr = ratio.norm().max(limit);
        if small >= policy.consecutive_small && rr < 1.0 {
            return finish(acc, k + 2, t.norm() * rr / (1.0 - rr), false);
        }
    }
    Err(Error::Truncation {
        what: format!("{r}phi{s}"),
        terms: policy.max_terms,
        last_term: t.norm(),
    })
}

fn finish(
    acc: CompensatedSum,
    terms: usize,
    tail_bound: f64,
    terminating: bool,
) -> Result<SeriesValue> {
    let value = acc.value();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::range("basic hypergeometric sum overflowed"));
    }
    Ok(SeriesValue {
        value,
        terms,
        tail_bound,
        cancellation: acc.cancellation(),
        terminating,
    })
}

/// `₃φ₂[q^{−n}, a, b; f, 0; q, q]` via `R_n = (f;q)_n · ₃φ₂`, which obeys
///
/// `R_{n+1} = (a + b − (ab + f)qⁿ) R_n − ab(1 − qⁿ)(1 − f q^{n−1}) R_{n−1}`
///
/// with `R_0 = 1`, `R_1 = a + b − ab − f`. No cancellation between large
/// terms happens here, unlike the literal sum.
pub fn phi32_lower_zero(n: usize, a: Scalar, b: Scalar, f: Scalar, q: f64) -> Result<Scalar> {
    check_base(q)?;
    let fq = qpoch(f, q, n);
    if fq.norm() == 0.0 {
        return Err(Error::pole(format!("(f;q)_{n} vanishes for f = {f}")));
    }
    Ok(phi32_lower_zero_scaled(n, a, b, f, q) / fq)
}

/// `R_n = (f;q)_n · ₃φ₂[q^{−n}, a, b; f, 0; q, q]`, finite even where
/// `(f;q)_n` vanishes.
pub fn phi32_lower_zero_scaled(n: usize, a: Scalar, b: Scalar, f: Scalar, q: f64) -> Scalar {
    let mut r0 = ONE;
    if n == 0 {
        return r0;
    }
    let mut r1 = a + b - a * b - f;
    let mut qm = q;
    for _ in 1..n {
        let r2 = (a + b - (a * b + f) * qm) * r1 - a * b * (1.0 - qm) * (ONE - f * qm / q) * r0;
        r0 = r1;
        r1 = r2;
        qm *= q;
    }
    r1
}

/// Very-well-poised `₈W₇(a; b, c, d, e, f; q, z)`:
///
/// `Σ (1 − a q^{2n})/(1 − a) · (a, b, c, d, e, f; q)_n / (q, aq/b, aq/c, aq/d, aq/e, aq/f; q)_n · zⁿ`
#[allow(clippy::too_many_arguments)]
pub fn w87(
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    e: Scalar,
    f: Scalar,
    q: f64,
    z: Scalar,
    policy: &TruncationPolicy,
) -> Result<SeriesValue> {
    check_base(q)?;
    if z.norm() >= 1.0 {
        return Err(Error::domain(format!(
            "8W7 needs |z| < 1, got {}",
            z.norm()
        )));
    }
    if (a - ONE).norm() < 1e-14 {
        return Err(Error::pole("8W7 is undefined at a = 1"));
    }
    let top = [b, c, d, e, f];
    let last = top.iter().filter_map(|&u| q_negative_power(u, q)).min();

    let mut acc = CompensatedSum::new();
    acc.add(ONE);
    // `p` carries the Pochhammer ratio and zⁿ; the well-poised factor is
    // applied per term.
    let mut p = ONE;
    let mut qn = 1.0;
    let mut small = 0;
    let max = last.map_or(policy.max_terms, |n| n.min(policy.max_terms));
    for n in 0..max {
        let mut r = (ONE - a * qn) / (1.0 - q * qn) * z;
        for &u in &top {
            let den = ONE - a * q / u * qn;
            if den.norm() < 1e-300 {
                return Err(Error::pole(format!(
                    "8W7 denominator (aq/{u};q)_n vanishes at n = {}",
                    n + 1
                )));
            }
            r *= (ONE - u * qn) / den;
        }
        p *= r;
        qn *= q;
        let t = p * (ONE - a * qn * qn) / (ONE - a);
        acc.add(t);
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::range("8W7 term overflowed"));
        }
        if last.is_some() {
            continue;
        }
        if t.norm() < policy.tol * acc.value().norm() || t.norm() == 0.0 {
            small += 1;
        } else {
            small = 0;
        }
        if small >= policy.consecutive_small {
            let rr = r.norm().max(z.norm());
            if rr < 1.0 {
                return finish(acc, n + 2, t.norm() * rr / (1.0 - rr), false);
            }
        }
    }
    match last {
        Some(n) if n <= policy.max_terms => finish(acc, n + 1, 0.0, true),
        _ => Err(Error::Truncation {
            what: "8W7".into(),
            terms: policy.max_terms,
            last_term: p.norm(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::re;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn close(a: Scalar, b: Scalar, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(Complex64::new(3.0, 1.0), 0.4, 0), ONE);
        assert!((qpoch(re(0.5), 0.5, 2).re - 0.375).abs() < 1e-16);
        assert_eq!(qpoch(ONE, 0.7, 5), re(0.0));
    }

    #[test]
    fn qpoch_inf_examples() {
        assert_eq!(qpoch_inf(re(0.0), 0.3, 1e-15).unwrap().value, ONE);
        let p = qpoch_inf(re(0.5), 0.5, 1e-15).unwrap();
        assert!(close(p.value, qpoch(re(0.5), 0.5, 60), 1e-14));
        assert!(p.tail_bound < 1e-14);
        assert_eq!(qpoch_inf(ONE, 0.5, 1e-15).unwrap().value.norm(), 0.0);
        assert!(matches!(
            qpoch_inf(re(1e300), 0.99, 1e-15),
            Err(Error::Range(_))
        ));
        assert!(qpoch_inf(re(0.5), 1.0, 1e-15).is_err());
    }

    #[test]
    fn euler_pentagonal_check() {
        // (q;q)_∞ = Σ_k (−1)^k q^{k(3k−1)/2}, k ∈ ℤ
        let q: f64 = 0.37;
        let mut s = 0.0;
        for k in -30i32..=30 {
            let e = (k * (3 * k - 1)) as f64 / 2.0;
            s += if k % 2 == 0 { 1.0 } else { -1.0 } * q.powf(e);
        }
        assert!((qpoch_inf_value(re(q), q).unwrap().re - s).abs() < 1e-15);
    }

    #[test]
    fn phi32_one_and_two_terms() {
        let q = 0.35;
        let (a, b, f) = (Complex64::new(0.4, 0.1), re(-0.3), re(0.55));
        let pol = TruncationPolicy::default();
        let s0 = phi_rs(
            &QSeriesSpec::new(&[ONE, a, b], &[f, re(0.0)], q, re(q)),
            &pol,
        )
        .unwrap();
        assert_eq!(s0.value, ONE);
        assert_eq!(s0.terms, 1);
        let s1 = phi_rs(
            &QSeriesSpec::new(&[re(1.0 / q), a, b], &[f, re(0.0)], q, re(q)),
            &pol,
        )
        .unwrap();
        assert_eq!(s1.terms, 2);
        let want = ONE + (1.0 - 1.0 / q) * (ONE - a) * (ONE - b) * q / ((1.0 - q) * (ONE - f));
        assert!(close(s1.value, want, 1e-15));
    }

    #[test]
    fn recurrence_route_matches_literal_sum() {
        let q: f64 = 0.45;
        let (a, b, f) = (Complex64::new(0.4, 0.3), Complex64::new(0.4, -0.3), re(0.2));
        let pol = TruncationPolicy::default();
        for n in 0..8 {
            let lit = phi_rs(
                &QSeriesSpec::new(&[re(q.powi(-(n as i32))), a, b], &[f, re(0.0)], q, re(q)),
                &pol,
            )
            .unwrap();
            let rec = phi32_lower_zero(n, a, b, f, q).unwrap();
            let tol = 1e-15 * lit.cancellation.max(1.0) * 10.0;
            assert!(close(lit.value, rec, tol), "n={n}: {} vs {rec}", lit.value);
        }
    }

    #[test]
    fn four_phi_three_n_zero() {
        let q = 0.3;
        let spec = QSeriesSpec::new(
            &[ONE, re(0.2), re(0.5), re(0.7)],
            &[re(0.1), re(0.3), re(-0.4)],
            q,
            re(q),
        );
        assert_eq!(
            phi_rs(&spec, &TruncationPolicy::default()).unwrap().value,
            ONE
        );
    }

    #[test]
    fn lower_parameter_pole() {
        let q: f64 = 0.5;
        let spec = QSeriesSpec::new(&[re(q.powi(-4)), re(0.3)], &[re(q.powi(-2))], q, re(0.2));
        assert!(matches!(
            phi_rs(&spec, &TruncationPolicy::default()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn q_binomial_theorem() {
        // 1φ0[a; —; q, z] = (az;q)_∞/(z;q)_∞
        let (q, a, z) = (0.6, re(0.3), Complex64::new(0.2, 0.4));
        let s = phi_rs(
            &QSeriesSpec::new(&[a], &[], q, z),
            &TruncationPolicy::default(),
        )
        .unwrap();
        let want = qpoch_inf_value(a * z, q).unwrap() / qpoch_inf_value(z, q).unwrap();
        assert!(close(s.value, want, 1e-14));
        assert!(!s.terminating && s.tail_bound < 1e-15);
    }

    #[test]
    fn q_to_one_limit_approaches_gauss_series() {
        let q: f64 = 0.999;
        let (a, c, z) = (0.7, 1.9, re(0.35));
        for n in [1usize, 3, 6] {
            let spec = QSeriesSpec::new(
                &[re(q.powi(-(n as i32))), re(q.powf(a))],
                &[re(q.powf(c))],
                q,
                z,
            );
            let qv = phi_rs(&spec, &TruncationPolicy::default()).unwrap().value;
            let fv = crate::hyperseries::hyp2f1(re(-(n as f64)), re(a), re(c), z).unwrap();
            assert!(close(qv, fv, 1e-2), "n={n}: {qv} vs {fv}");
        }
    }

    // Literal defining series, term by term with explicit Pochhammers.
    fn w87_brute(p: [Scalar; 6], q: f64, z: Scalar, terms: usize) -> Scalar {
        let [a, b, c, d, e, f] = p;
        let mut s = Complex64::new(0.0, 0.0);
        for n in 0..terms {
            let num = qpoch(a, q, n)
                * qpoch(b, q, n)
                * qpoch(c, q, n)
                * qpoch(d, q, n)
                * qpoch(e, q, n)
                * qpoch(f, q, n);
            let den = qpoch(re(q), q, n)
                * qpoch(a * q / b, q, n)
                * qpoch(a * q / c, q, n)
                * qpoch(a * q / d, q, n)
                * qpoch(a * q / e, q, n)
                * qpoch(a * q / f, q, n);
            s += (ONE - a * q.powi(2 * n as i32)) / (ONE - a) * num / den * z.powu(n as u32);
        }
        s
    }

    #[test]
    fn w87_against_brute_force() {
        let q = 0.3;
        let p = [
            re(0.21),
            re(0.5),
            re(-0.4),
            Complex64::new(0.2, 0.3),
            Complex64::new(0.2, -0.3),
            re(0.6),
        ];
        let z = re(0.7);
        let v = w87(
            p[0],
            p[1],
            p[2],
            p[3],
            p[4],
            p[5],
            q,
            z,
            &TruncationPolicy::default(),
        )
        .unwrap();
        assert!(close(v.value, w87_brute(p, q, z, 200), 1e-13));
    }

    #[test]
    fn w87_special_cases() {
        let q = 0.3;
        let pol = TruncationPolicy::default();
        let (a, b, c, d, e) = (re(0.2), re(0.4), re(-0.3), re(0.5), re(0.1));
        assert_eq!(
            w87(a, b, c, d, e, re(0.7), q, re(0.0), &pol).unwrap().value,
            ONE
        );
        // an upper parameter equal to 1 kills every term past the first
        assert_eq!(
            w87(a, b, c, d, e, ONE, q, re(0.5), &pol).unwrap().value,
            ONE
        );
        // b = aq makes (aq/b;q)_n = (1;q)_n vanish
        assert!(matches!(
            w87(a, a * q, c, d, e, re(0.7), q, re(0.5), &pol),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            w87(a, b, c, d, e, re(0.7), q, re(1.0), &pol),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn w87_terminating() {
        let q: f64 = 0.4;
        let b = re(q.powi(-3));
        let p = [re(0.15), b, re(0.3), re(-0.2), re(0.45), re(0.6)];
        let v = w87(
            p[0],
            p[1],
            p[2],
            p[3],
            p[4],
            p[5],
            q,
            re(0.9),
            &TruncationPolicy::default(),
        )
        .unwrap();
        assert!(v.terminating);
        assert_eq!(v.terms, 4);
        assert!(close(v.value, w87_brute(p, q, re(0.9), 4), 1e-13));
    }

    proptest! {
        #[test]
        fn qpoch_splits(ar in -2.0f64..2.0, ai in -2.0f64..2.0, q in 0.05f64..0.95, n in 0usize..=30, m in 0usize..=30) {
            let a = Complex64::new(ar, ai);
            let lhs = qpoch(a, q, n) * qpoch(a * q.powi(n as i32), q, m);
            let rhs = qpoch(a, q, n + m);
            prop_assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm().max(rhs.norm()).max(1e-300));
        }

        #[test]
        fn w87_at_zero_argument(
            a in 0.05f64..0.9, b in -0.9f64..0.9, c in -0.9f64..0.9, d in -0.9f64..0.9,
            e in -0.9f64..0.9, f in -0.9f64..0.9, q in 0.05f64..0.95,
        ) {
            let v = w87(re(a), re(b), re(c), re(d), re(e), re(f), q, re(0.0), &TruncationPolicy::default());
            if let Ok(v) = v { prop_assert_eq!(v.value, ONE); }
        }
    }
}

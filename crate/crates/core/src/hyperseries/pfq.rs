use super::{nonpositive_integer, SeriesValue, TruncationPolicy};
use crate::error::{Error, Result};
use crate::numerics::{CompensatedSum, Scalar, ONE};

/// `pFq[numerator; denominator; argument]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub numerator: Vec<Scalar>,
    pub denominator: Vec<Scalar>,
    pub argument: Scalar,
}

impl SeriesSpec {
    pub fn new(numerator: &[Scalar], denominator: &[Scalar], argument: Scalar) -> Self {
        Self {
            numerator: numerator.to_vec(),
            denominator: denominator.to_vec(),
            argument,
        }
    }

    /// Degree at which the series terminates, if some numerator parameter is
    /// a non-positive integer.
    pub fn terminating_degree(&self) -> Option<usize> {
        self.numerator
            .iter()
            .filter_map(|&a| nonpositive_integer(a))
            .min()
    }

    fn check_poles(&self, last: usize) -> Result<()> {
        for &b in &self.denominator {
            if let Some(m) = nonpositive_integer(b) {
                if m < last {
                    return Err(Error::pole(format!(
                        "denominator parameter {b} hits zero before term {last}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ratio `t_{k+1}/t_k` without the argument.
    fn coefficient_ratio(&self, k: usize) -> Scalar {
        let kf = k as f64;
        let mut r = ONE / (kf + 1.0);
        for &a in &self.numerator {
            r *= a + kf;
        }
        for &b in &self.denominator {
            r /= b + kf;
        }
        r
    }
}

/// Power-series coefficients `c_k` (so the series is `Σ c_k z^k`) of a
/// terminating series.
pub fn pfq_coefficients(spec: &SeriesSpec) -> Result<Vec<Scalar>> {
    let n = spec
        .terminating_degree()
        .ok_or_else(|| Error::domain("coefficients exist only for terminating series"))?;
    spec.check_poles(n)?;
    let mut c = Vec::with_capacity(n + 1);
    let mut t = ONE;
    c.push(t);
    for k in 0..n {
        t *= spec.coefficient_ratio(k);
        c.push(t);
    }
    Ok(c)
}

/// Sums a generalized hypergeometric series.
///
/// Terminating series of any shape are summed exactly. Non-terminating series
/// are accepted only for ₁F₁ (entire) and ₂F₁ with `|z| < 1`.
pub fn pfq(spec: &SeriesSpec, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let z = spec.argument;
    if let Some(n) = spec.terminating_degree() {
        spec.check_poles(n)?;
        let mut acc = CompensatedSum::new();
        let mut t = ONE;
        acc.add(t);
        for k in 0..n {
            t *= spec.coefficient_ratio(k) * z;
            acc.add(t);
        }
        return finish(acc, n + 1, 0.0, true);
    }

    let (p, q) = (spec.numerator.len(), spec.denominator.len());
    let limit_ratio = match (p, q) {
        (0, _) | (1, 1) => 0.0,
        (1, 0) | (2, 1) if z.norm() < 1.0 => z.norm(),
        (2, 1) | (1, 0) => {
            return Err(Error::domain(format!(
                "{p}F{q} diverges or needs continuation at |z| = {}",
                z.norm()
            )))
        }
        _ => {
            return Err(Error::domain(format!(
                "non-terminating {p}F{q} outside the supported shapes"
            )))
        }
    };
    spec.check_poles(usize::MAX)?;

    let mut acc = CompensatedSum::new();
    let mut t = ONE;
    acc.add(t);
    let mut small = 0;
    for k in 0..policy.max_terms {
        let ratio = spec.coefficient_ratio(k) * z;
        t *= ratio;
        acc.add(t);
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::range(format!("{p}F{q} term overflowed at k={k}")));
        }
        let sum = acc.value().norm();
        if t.norm() < policy.tol * sum || t.norm() == 0.0 {
            small += 1;
        } else {
            small = 0;
        }
        // Only stop once the ratio has settled below 1, so the tail is a
        // geometric majorant of the last term.
        let r = ratio.norm().max(limit_ratio);
        if small >= policy.consecutive_small && r < 1.0 {
            let tail = t.norm() * r / (1.0 - r);
            return finish(acc, k + 2, tail, false);
        }
    }
    Err(Error::Truncation {
        what: format!("{p}F{q}"),
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
        return Err(Error::range("hypergeometric sum overflowed"));
    }
    Ok(SeriesValue {
        value,
        terms,
        tail_bound,
        cancellation: acc.cancellation(),
        terminating,
    })
}

pub fn hyp1f1(a: Scalar, b: Scalar, z: Scalar) -> Result<Scalar> {
    pfq(
        &SeriesSpec::new(&[a], &[b], z),
        &TruncationPolicy::default(),
    )
    .map(|s| s.value)
}

pub fn hyp2f1(a: Scalar, b: Scalar, c: Scalar, z: Scalar) -> Result<Scalar> {
    pfq(
        &SeriesSpec::new(&[a, b], &[c], z),
        &TruncationPolicy::default(),
    )
    .map(|s| s.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::re;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn zero_upper_parameter_gives_one() {
        let s = SeriesSpec::new(&[re(0.0), re(1.7)], &[re(2.3)], re(0.4));
        let v = pfq(&s, &policy()).unwrap();
        assert_eq!(v.value, ONE);
        assert_eq!(v.terms, 1);
    }

    #[test]
    fn two_term_series() {
        let (a, c, z) = (Complex64::new(0.3, 0.2), re(1.9), Complex64::new(-0.6, 0.1));
        let v = pfq(&SeriesSpec::new(&[re(-1.0), a], &[c], z), &policy()).unwrap();
        let want = ONE - a * z / c;
        assert!((v.value - want).norm() < 1e-15);
    }

    #[test]
    fn confluent_equal_parameters_is_exp() {
        let v = hyp1f1(re(1.3), re(1.3), re(0.7)).unwrap();
        assert!((v.re - 0.7f64.exp()).abs() < 1e-15);
        // Alternating terms: the reported cancellation predicts the lost digits.
        let s = pfq(
            &SeriesSpec::new(&[re(2.5)], &[re(2.5)], re(-12.0)),
            &policy(),
        )
        .unwrap();
        let exact = (-12f64).exp();
        assert!((s.cancellation / 24f64.exp() - 1.0).abs() < 1e-6);
        assert!((s.value.re - exact).abs() / exact < 1e-15 * s.cancellation);
    }

    #[test]
    fn gauss_series_closed_forms() {
        // 2F1(1,1;2;z) = −ln(1−z)/z
        let z = 0.6;
        let v = hyp2f1(ONE, ONE, re(2.0), re(z)).unwrap();
        assert!((v.re + (1.0 - z).ln() / z).abs() < 1e-14);
        // 2F1(a,b;b;z) = (1−z)^{−a}
        let v = hyp2f1(re(0.7), re(1.9), re(1.9), re(-0.8)).unwrap();
        assert!((v.re - 1.8f64.powf(-0.7)).abs() < 1e-14);
    }

    #[test]
    fn divergent_and_unsupported_inputs() {
        let s = SeriesSpec::new(&[re(0.5), re(0.5)], &[re(1.5)], re(1.2));
        assert!(matches!(pfq(&s, &policy()), Err(Error::Domain(_))));
        let s = SeriesSpec::new(&[re(0.5), re(0.5), re(0.5)], &[re(1.5), re(2.5)], re(1.0));
        assert!(matches!(pfq(&s, &policy()), Err(Error::Domain(_))));
        // terminating 3F2 at z = 1 is fine
        let s = SeriesSpec::new(&[re(-3.0), re(0.5), re(0.5)], &[re(1.5), re(2.5)], re(1.0));
        assert!(pfq(&s, &policy()).is_ok());
    }

    #[test]
    fn denominator_pole() {
        let s = SeriesSpec::new(&[re(-4.0), re(1.0)], &[re(-2.0)], re(0.3));
        assert!(matches!(pfq(&s, &policy()), Err(Error::Pole(_))));
        // the numerator stops the sum before the pole
        let s = SeriesSpec::new(&[re(-2.0), re(1.0)], &[re(-2.0)], re(0.3));
        assert!(pfq(&s, &policy()).is_ok());
    }

    #[test]
    fn pfq_reports_tail_bound() {
        let v = pfq(
            &SeriesSpec::new(&[re(0.5), re(1.5)], &[re(2.0)], re(0.5)),
            &TruncationPolicy::with_tol(1e-12),
        )
        .unwrap();
        assert!(!v.terminating);
        assert!(v.tail_bound > 0.0 && v.tail_bound < 1e-11 * v.value.norm());
    }

    fn horner(c: &[Scalar], z: Scalar) -> Scalar {
        c.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck)
    }

    proptest! {
        #[test]
        fn terminating_series_is_horner_polynomial(
            n in 0usize..=30,
            a in -3.0f64..3.0, b in 0.2f64..4.0,
            zr in -1.5f64..1.5, zi in -1.5f64..1.5,
        ) {
            let z = Complex64::new(zr, zi);
            let spec = SeriesSpec::new(&[re(-(n as f64)), re(a)], &[re(b)], z);
            let direct = pfq(&spec, &policy()).unwrap();
            let c = pfq_coefficients(&spec).unwrap();
            let h = horner(&c, z);
            let abs_sum: f64 = c.iter().enumerate().map(|(k, ck)| ck.norm() * z.norm().powi(k as i32)).sum();
            prop_assert!((direct.value - h).norm() <= 1e-12 * abs_sum.max(direct.value.norm()));
        }
    }
}

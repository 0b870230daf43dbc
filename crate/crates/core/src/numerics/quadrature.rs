use std::f64::consts::PI;

use super::{gamma, CompensatedSum, Scalar, TridiagSym};
use crate::error::{Error, Result};

/// Weight function a quadrature rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFamily {
    /// `x^α e^{−x}` on `(0, ∞)`.
    Laguerre { alpha: f64 },
    /// `e^{−x²}` on the real line.
    Hermite,
    /// `(1−x)^a (1+x)^b` on `(−1, 1)`.
    Jacobi { a: f64, b: f64 },
    /// Unit weight in θ on `(0, π)`, midpoint nodes. Spectrally accurate for
    /// integrands that extend to smooth even 2π-periodic functions.
    TrapezoidTheta,
}

impl WeightFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            WeightFamily::Laguerre { alpha } if !(alpha > -1.0) => Err(Error::domain(format!(
                "Laguerre weight needs alpha > -1, got {alpha}"
            ))),
            WeightFamily::Jacobi { a, b } if !(a > -1.0 && b > -1.0) => Err(Error::domain(
                format!("Jacobi weight needs a, b > -1, got ({a}, {b})"),
            )),
            _ => Ok(()),
        }
    }

    /// Total mass `∫ w`.
    pub fn mass(&self) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            WeightFamily::Laguerre { alpha } => gamma(alpha + 1.0)?,
            WeightFamily::Hermite => PI.sqrt(),
            WeightFamily::Jacobi { a, b } => {
                let ln = (a + b + 1.0) * 2f64.ln()
                    + super::ln_gamma(a + 1.0)?
                    + super::ln_gamma(b + 1.0)?
                    - super::ln_gamma(a + b + 2.0)?;
                ln.exp()
            }
            WeightFamily::TrapezoidTheta => PI,
        })
    }

    /// Monic recurrence `p_{n+1} = (x − α_n) p_n − β_n p_{n−1}`; returns
    /// `(α_n, β_n)` with `β_0` unused.
    fn recurrence(&self, n: usize) -> (f64, f64) {
        let nf = n as f64;
        match *self {
            WeightFamily::Laguerre { alpha } => (2.0 * nf + alpha + 1.0, nf * (nf + alpha)),
            WeightFamily::Hermite => (0.0, nf / 2.0),
            WeightFamily::Jacobi { a, b } => {
                let s = a + b;
                let alpha_n = if n == 0 {
                    (b - a) / (s + 2.0)
                } else {
                    (b * b - a * a) / ((2.0 * nf + s) * (2.0 * nf + s + 2.0))
                };
                let beta_n = match n {
                    0 => 0.0,
                    1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s).powi(2) * (3.0 + s)),
                    _ => {
                        let t = 2.0 * nf + s;
                        4.0 * nf * (nf + a) * (nf + b) * (nf + s) / (t * t * (t + 1.0) * (t - 1.0))
                    }
                };
                (alpha_n, beta_n)
            }
            WeightFamily::TrapezoidTheta => unreachable!("trapezoid rule has no recurrence"),
        }
    }
}

/// Nodes and strictly positive weights, nodes ascending.
#[derive(Debug, Clone)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub family: WeightFamily,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> Scalar>(&self, mut f: F) -> Scalar {
        let mut acc = CompensatedSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(x) * w);
        }
        acc.value()
    }

    pub fn integrate_real<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.integrate(|x| Scalar::new(f(x), 0.0)).re
    }
}

/// Gauss rule with `npoints` nodes for the given weight (Golub-Welsch).
///
/// Nodes are eigenvalues of the Jacobi matrix, refined by a Newton step on the
/// orthonormal polynomial of degree `npoints`. Weights are Christoffel
/// numbers `1 / Σ_{k<N} p̂_k(x_i)²`, which keeps tiny weights (far Laguerre
/// and Hermite nodes) accurate in the relative sense.
pub fn gauss_rule(family: WeightFamily, npoints: usize) -> Result<QuadRule> {
    if npoints == 0 {
        return Err(Error::domain("quadrature rule needs at least one point"));
    }
    let mass = family.mass()?;
    if let WeightFamily::TrapezoidTheta = family {
        let h = PI / npoints as f64;
        return Ok(QuadRule {
            nodes: (0..npoints).map(|i| (i as f64 + 0.5) * h).collect(),
            weights: vec![h; npoints],
            family,
        });
    }

    let coeffs: Vec<(f64, f64)> = (0..=npoints).map(|n| family.recurrence(n)).collect();
    let diag: Vec<f64> = coeffs[..npoints].iter().map(|c| c.0).collect();
    let off: Vec<f64> = coeffs[1..npoints].iter().map(|c| c.1.sqrt()).collect();
    let jac = TridiagSym::new(diag, off)?;
    let mut nodes = super::tridiag_eigenvalues(&jac)?;

    let p0 = 1.0 / mass.sqrt();
    let eval = |x: f64| -> (f64, f64, f64) {
        // Returns (p̂_N(x), p̂_N'(x), Σ_{k<N} p̂_k(x)²).
        let (mut pm, mut p) = (0.0, p0);
        let (mut dm, mut d) = (0.0, 0.0);
        let mut sq = 0.0;
        for (k, &(a, b)) in coeffs.iter().enumerate().take(npoints) {
            sq += p * p;
            let sb_next = coeffs[k + 1].1.sqrt();
            let sb = if k == 0 { 0.0 } else { b.sqrt() };
            let pn = ((x - a) * p - sb * pm) / sb_next;
            let dn = (p + (x - a) * d - sb * dm) / sb_next;
            pm = p;
            p = pn;
            dm = d;
            d = dn;
        }
        (p, d, sq)
    };

    let mut weights = Vec::with_capacity(npoints);
    for x in nodes.iter_mut() {
        let (p, d, _) = eval(*x);
        if d != 0.0 && p.is_finite() && d.is_finite() {
            let step = p / d;
            // Only accept a step that stays within the local node spacing scale.
            if step.abs() <= 1e-6 * (1.0 + x.abs()) {
                *x -= step;
            }
        }
        let (_, _, sq) = eval(*x);
        weights.push(1.0 / sq);
    }

    if weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return Err(Error::range(format!(
            "quadrature weights underflowed for {npoints} points"
        )));
    }
    Ok(QuadRule {
        nodes,
        weights,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ln_gamma;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn one_point_hermite() {
        let r = gauss_rule(WeightFamily::Hermite, 1).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert!(rel(r.weights[0], PI.sqrt()) < 1e-15);
    }

    #[test]
    fn one_point_laguerre() {
        let r = gauss_rule(WeightFamily::Laguerre { alpha: 0.0 }, 1).unwrap();
        assert!(rel(r.nodes[0], 1.0) < 1e-15);
        assert!(rel(r.weights[0], 1.0) < 1e-15);
    }

    #[test]
    fn two_point_legendre() {
        let r = gauss_rule(WeightFamily::Jacobi { a: 0.0, b: 0.0 }, 2).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + x).abs() < 1e-15);
        assert!((r.nodes[1] - x).abs() < 1e-15);
        assert!(rel(r.weights[0], 1.0) < 1e-14 && rel(r.weights[1], 1.0) < 1e-14);
    }

    #[test]
    fn invalid_parameters() {
        assert!(gauss_rule(WeightFamily::Laguerre { alpha: -1.0 }, 4).is_err());
        assert!(gauss_rule(WeightFamily::Jacobi { a: 0.5, b: -1.2 }, 4).is_err());
        assert!(gauss_rule(WeightFamily::Hermite, 0).is_err());
    }

    #[test]
    fn trapezoid_integrates_cosines() {
        let r = gauss_rule(WeightFamily::TrapezoidTheta, 16).unwrap();
        assert!((r.integrate_real(|_| 1.0) - PI).abs() < 1e-14);
        for k in 1..32 {
            let v = r.integrate_real(|t| (k as f64 * t).cos());
            assert!(v.abs() < 1e-13, "k={k}: {v}");
        }
    }

    fn laguerre_moment(alpha: f64, k: usize) -> f64 {
        ln_gamma(alpha + k as f64 + 1.0).unwrap().exp()
    }

    fn hermite_moment(k: usize) -> f64 {
        if k % 2 == 1 {
            0.0
        } else {
            ln_gamma(k as f64 / 2.0 + 0.5).unwrap().exp()
        }
    }

    // Moments of (1−x)^a (1+x)^b from the integration-by-parts recurrence
    // (a+b+k+2) m_{k+1} = (b−a) m_k + k m_{k−1}.
    fn jacobi_moment(a: f64, b: f64, k: usize) -> f64 {
        let mut m = vec![WeightFamily::Jacobi { a, b }.mass().unwrap()];
        m.push(m[0] * (b - a) / (a + b + 2.0));
        for i in 1..k {
            let next = ((b - a) * m[i] + i as f64 * m[i - 1]) / (a + b + i as f64 + 2.0);
            m.push(next);
        }
        m[k]
    }

    fn check_moments(family: WeightFamily, n: usize) {
        let rule = gauss_rule(family, n).unwrap();
        assert!(rule.weights.iter().all(|&w| w > 0.0));
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(rel(rule.weights.iter().sum(), family.mass().unwrap()) < 1e-12);
        for k in 0..2 * n {
            let got = rule.integrate_real(|x| x.powi(k as i32));
            let want = match family {
                WeightFamily::Laguerre { alpha } => laguerre_moment(alpha, k),
                WeightFamily::Hermite => hermite_moment(k),
                WeightFamily::Jacobi { a, b } => jacobi_moment(a, b, k),
                WeightFamily::TrapezoidTheta => unreachable!(),
            };
            // Odd moments of symmetric weights vanish; measure those against
            // the size of ∫|x|^k w instead.
            let scale = want
                .abs()
                .max(rule.integrate_real(|x| x.abs().powi(k as i32)));
            assert!(
                (got - want).abs() <= 1e-11 * scale,
                "{family:?} n={n} k={k}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn moment_table() {
        for n in [1, 2, 5, 10, 16] {
            check_moments(WeightFamily::Laguerre { alpha: 0.0 }, n);
            check_moments(WeightFamily::Laguerre { alpha: 1.5 }, n);
            check_moments(WeightFamily::Hermite, n);
            check_moments(WeightFamily::Jacobi { a: 0.5, b: 1.5 }, n);
        }
    }

    #[test]
    fn jacobi_with_a_plus_b_minus_one() {
        check_moments(WeightFamily::Jacobi { a: -0.5, b: -0.5 }, 8);
        check_moments(
            WeightFamily::Jacobi {
                a: 0.0,
                b: -1.0 + 1e-3,
            },
            6,
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn moments_reproduced(alpha in -0.9f64..3.0, a in -0.9f64..3.0, b in -0.9f64..3.0, n in 1usize..=12) {
            check_moments(WeightFamily::Laguerre { alpha }, n);
            check_moments(WeightFamily::Jacobi { a, b }, n);
            check_moments(WeightFamily::Hermite, n);
        }
    }
}

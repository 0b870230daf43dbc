//! Tensor products D⁺(k₁) ⊗ D⁺(k₂) = ⊕_j D⁺(k₁ + k₂ + j).

use std::collections::BTreeMap;

use super::{eigvec_coeffs, HamiltonianKind, RepLabel};
use crate::error::Result;
use crate::numerics::{factorial, ln_gamma, pochhammer_real, CompensatedSum, Scalar, ZERO};
use crate::orthopoly::{self, hahn_scaled, jacobi_homogeneous, Method, PolyFamily};

/// Component `j` of the decomposition, carrying `D⁺(k₁ + k₂ + j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledLabel {
    pub k1: f64,
    pub k2: f64,
    pub j: usize,
}

impl CoupledLabel {
    pub fn new(k1: f64, k2: f64, j: usize) -> Result<Self> {
        RepLabel::new(k1)?;
        RepLabel::new(k2)?;
        Ok(Self { k1, k2, j })
    }

    /// Label `k = k₁ + k₂ + j` of the coupled representation.
    pub fn k(&self) -> f64 {
        self.k1 + self.k2 + self.j as f64
    }
}

/// Clebsch-Gordan coefficients of `e^{(k₁k₂)k}_n` in the basis `e_{n₁} ⊗ e_{n₂}`,
/// keyed by `(n₁, n₂)` with `n₁ + n₂ = j + n`.
///
/// The lowest-weight vector solves `Δ(J₋)v = 0` on the `n₁ + n₂ = j` slice and
/// is normalized with a positive `e₀ ⊗ e_j` coefficient; higher vectors follow
/// by applying `Δ(J₊)` and dividing by its matrix element in D⁺(k).
pub fn cgc(label: CoupledLabel, n: usize) -> BTreeMap<(usize, usize), f64> {
    let CoupledLabel { k1, k2, j } = label;
    let k = label.k();
    let jf = j as f64;

    let mut c = Vec::with_capacity(j + n + 1);
    c.push(1.0);
    for n1 in 0..j {
        let f = n1 as f64;
        let ratio =
            ((jf - f) * (2.0 * k2 + jf - f - 1.0)).sqrt() / ((f + 1.0) * (2.0 * k1 + f)).sqrt();
        let prev = c[n1];
        c.push(-ratio * prev);
    }
    let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
    c.iter_mut().for_each(|v| *v /= norm);

    // c[n1] is the coefficient of e_{n1} ⊗ e_{total − n1}
    let mut total = j;
    for m in 0..n {
        let mf = m as f64;
        let mut next = vec![0.0; c.len() + 1];
        for (n1, &v) in c.iter().enumerate() {
            let (a, b) = (n1 as f64, (total - n1) as f64);
            next[n1 + 1] += v * ((a + 1.0) * (2.0 * k1 + a)).sqrt();
            next[n1] += v * ((b + 1.0) * (2.0 * k2 + b)).sqrt();
        }
        let d = ((mf + 1.0) * (2.0 * k + mf)).sqrt();
        next.iter_mut().for_each(|v| *v /= d);
        c = next;
        total += 1;
    }
    c.into_iter()
        .enumerate()
        .map(|(n1, v)| ((n1, total - n1), v))
        .collect()
}

/// The coupled vector `e^{(k₁k₂)k}_n` realized as a function of `(z₁, z₂)`:
///
/// `N · (z₂ − z₁)^j z₁^n ₂F₁(−n, 2k₂ + j; 2k₁ + 2k₂ + 2j; 1 − z₂/z₁)`.
///
/// The `₂F₁` is expanded as `Σ_m (−n)_m (b)_m / ((c)_m m!) z₁^{n−m} (z₁ − z₂)^m`,
/// which is a polynomial in `z₁, z₂` and needs no special case at `z₁ = 0`.
pub fn coupled_realized(label: CoupledLabel, n: usize, z1: Scalar, z2: Scalar) -> Result<Scalar> {
    let CoupledLabel { k1, k2, j } = label;
    let jf = j as f64;
    let s = 2.0 * k1 + 2.0 * k2;
    let prefactor = (pochhammer_real(2.0 * k1, j)
        * pochhammer_real(2.0 * k2, j)
        * pochhammer_real(s + 2.0 * jf, n)
        / (factorial(j) * factorial(n) * pochhammer_real(s + jf - 1.0, j)))
    .sqrt();
    let (b, c) = (2.0 * k2 + jf, s + 2.0 * jf);
    let w = z1 - z2;
    let mut sum = CompensatedSum::new();
    let mut coeff = 1.0;
    for m in 0..=n {
        if m > 0 {
            let f = (m - 1) as f64;
            coeff *= (f - n as f64) * (b + f) / ((c + f) * (f + 1.0));
        }
        sum.add(coeff * z1.powu((n - m) as u32) * w.powu(m as u32));
    }
    let v = prefactor * (z2 - z1).powu(j as u32) * sum.value();
    crate::numerics::ensure_finite(v, "coupled_realized")
}

fn constant_c1(j: usize, k1: f64, k2: f64) -> f64 {
    let jf = j as f64;
    (factorial(j)
        / (pochhammer_real(2.0 * k1, j)
            * pochhammer_real(2.0 * k2, j)
            * pochhammer_real(2.0 * k1 + 2.0 * k2 + jf - 1.0, j)))
    .sqrt()
}

fn constant_c2(j: usize, k1: f64, k2: f64) -> Result<f64> {
    let jf = j as f64;
    let s = 2.0 * k1 + 2.0 * k2;
    // (s + 2j − 1) Γ(s + j − 1) collapses to Γ(s) at j = 0
    let top = if j == 0 {
        ln_gamma(s)?
    } else {
        (s + 2.0 * jf - 1.0).ln() + ln_gamma(s + jf - 1.0)?
    };
    Ok(
        (0.5 * (ln_gamma(jf + 1.0)? + top - ln_gamma(2.0 * k1 + jf)? - ln_gamma(2.0 * k2 + jf)?))
            .exp(),
    )
}

/// The coefficient `S_j^{(k₁,k₂)}(x₁, x₂)` in the expansion of a product of
/// two formal eigenvectors over the coupled ones.
///
/// - `X₂`: `C₁ (−1)^j s^j P_j^{(2k₁−1, 2k₂−1)}((x₂ − x₁)/s)`, `s = x₁ + x₂`;
/// - `X_φ`: `C₂ (−2 sin φ)^j p_j(x₁; k₁, k₂ − is, k₁, k₂ + is)`;
/// - `X_c`: `C₁ (2k₁)_j/j! · (1/c − c)^j (−s)_j Q_j(x₁; 2k₁−1, 2k₂−1, s)`.
pub fn s_coeff(
    kind: HamiltonianKind,
    j: usize,
    k1: f64,
    k2: f64,
    x1: f64,
    x2: f64,
) -> Result<Scalar> {
    kind.validate()?;
    RepLabel::new(k1)?;
    RepLabel::new(k2)?;
    let s = x1 + x2;
    let (a, b) = (2.0 * k1 - 1.0, 2.0 * k2 - 1.0);
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let v = match kind {
        HamiltonianKind::X2 => Scalar::new(
            constant_c1(j, k1, k2) * sign * jacobi_homogeneous(j, a, b, x1, x2),
            0.0,
        ),
        HamiltonianKind::Xphi { phi } => {
            let family = PolyFamily::ContinuousHahn {
                a: Scalar::new(k1, 0.0),
                b: Scalar::new(k2, -s),
                c: Scalar::new(k1, 0.0),
                d: Scalar::new(k2, s),
            };
            let p = orthopoly::eval(&family, j, Scalar::new(x1, 0.0), Method::Recurrence)?;
            constant_c2(j, k1, k2)? * (-2.0 * phi.sin()).powi(j as i32) * p
        }
        HamiltonianKind::Xc { c } => {
            let c3 = constant_c1(j, k1, k2) * pochhammer_real(2.0 * k1, j) / factorial(j);
            Scalar::new(
                c3 * (1.0 / c - c).powi(j as i32) * hahn_scaled(j, x1, a, b, s),
                0.0,
            )
        }
    };
    crate::numerics::ensure_finite(v, "s_coeff")
}

/// Both sides of the convolution identity
///
/// `Σ_{n₁+n₂=n+j} C^{k₁k₂k}_{n₁n₂} l^{(k₁)}_{n₁}(x₁) l^{(k₂)}_{n₂}(x₂) = l^{(k)}_n(y) S_j(x₁, x₂)`
///
/// with `k = k₁ + k₂ + j`. For `X₂` and `X_φ`, `y = x₁ + x₂`; for `X_c` the
/// eigenvalue `(c − 1/c)(k + x)` depends on `k`, so `y = x₁ + x₂ − j`, and the
/// right side vanishes when `j > x₁ + x₂`.
pub fn convolution_sides(
    kind: HamiltonianKind,
    k1: f64,
    k2: f64,
    j: usize,
    n: usize,
    x1: f64,
    x2: f64,
) -> Result<(Scalar, Scalar)> {
    let label = CoupledLabel::new(k1, k2, j)?;
    let l1 = eigvec_coeffs(kind, RepLabel::new(k1)?, x1, n + j)?.values;
    let l2 = eigvec_coeffs(kind, RepLabel::new(k2)?, x2, n + j)?.values;
    let lhs: CompensatedSum = cgc(label, n)
        .into_iter()
        .map(|((n1, n2), c)| Scalar::new(c * l1[n1] * l2[n2], 0.0))
        .collect();

    let y = match kind {
        HamiltonianKind::Xc { .. } => x1 + x2 - j as f64,
        _ => x1 + x2,
    };
    let rhs = if y < 0.0 && matches!(kind, HamiltonianKind::Xc { .. }) {
        ZERO
    } else {
        let l = eigvec_coeffs(kind, RepLabel::new(label.k())?, y, n)?.values[n];
        l * s_coeff(kind, j, k1, k2, x1, x2)?
    };
    Ok((lhs.value(), rhs))
}

/// `|LHS − RHS|` of [`convolution_sides`].
pub fn convolution_residual(
    kind: HamiltonianKind,
    k1: f64,
    k2: f64,
    j: usize,
    n: usize,
    x1: f64,
    x2: f64,
) -> Result<f64> {
    let (lhs, rhs) = convolution_sides(kind, k1, k2, j, n, x1, x2)?;
    Ok((lhs - rhs).norm())
}

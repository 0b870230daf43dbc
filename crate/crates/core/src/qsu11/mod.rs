//! Positive discrete series of U_q(su(1,1)).
//!
//! Generators `A, B, C, D` act on `e_n`, `n ≥ 0`, with `A` diagonal and `B`,
//! `C` raising and lowering. The self-adjoint element `Y_sA` is tridiagonal
//! and its formal eigenvectors have Al-Salam–Chihara polynomials as
//! coefficients. In the realization `e_n(z) = √((q^{2k};q)_n/(q;q)_n) zⁿ`
//! the uncoupled eigenvector of the tensor product is an infinite product and
//! expands over the coupled ones with Askey-Wilson coefficients.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hyperseries::{qpoch, qpoch_inf_value};
use crate::numerics::{CompensatedSum, Scalar, TridiagSym, ONE};
use crate::orthopoly::{self, Method, MuPoint, PolyFamily};

/// `(k, q, s)` with `k > 0`, `0 < q < 1`, `s ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QRepLabel {
    k: f64,
    q: f64,
    s: f64,
}

impl QRepLabel {
    pub fn new(k: f64, q: f64, s: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::domain(format!(
                "representation label must satisfy k > 0, got {k}"
            )));
        }
        check_q(q)?;
        if s == 0.0 || !s.is_finite() {
            return Err(Error::domain(format!("s must be a nonzero real, got {s}")));
        }
        Ok(Self { k, q, s })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Same `q` and `s`, another `k`.
    pub fn with_k(&self, k: f64) -> Result<Self> {
        Self::new(k, self.q, self.s)
    }

    /// `q^{k} < |s| < q^{−k}`, which keeps the Askey-Wilson parameters
    /// `q^k s, q^k/s` inside the unit disc.
    pub fn in_measure_range(&self) -> bool {
        let t = self.q.powf(self.k);
        t < self.s.abs() && self.s.abs() < 1.0 / t
    }

    /// `2(μ(s) − μ(x))/(q^{1/2} − q^{−1/2})`.
    pub fn eigenvalue(&self, x: MuPoint) -> Scalar {
        let mu_s = 0.5 * (self.s + 1.0 / self.s);
        (Scalar::new(mu_s, 0.0) - x.mu) * 2.0 / (self.q.sqrt() - 1.0 / self.q.sqrt())
    }
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("0 < q < 1 required, got {q}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QGenerator {
    A,
    B,
    C,
    D,
}

/// Generator action on `e_n` as `(index, coefficient)` pairs.
pub fn qrep_action(r: QRepLabel, generator: QGenerator, n: usize) -> Vec<(usize, f64)> {
    let QRepLabel { k, q, .. } = r;
    let nf = n as f64;
    let h = q.sqrt();
    match generator {
        QGenerator::A => vec![(n, q.powf((k + nf) / 2.0))],
        QGenerator::D => vec![(n, q.powf(-(k + nf) / 2.0))],
        QGenerator::C if n == 0 => Vec::new(),
        QGenerator::C => {
            let root = ((1.0 - q.powf(nf)) * (1.0 - q.powf(2.0 * k + nf - 1.0))).sqrt();
            vec![(
                n - 1,
                q.powf((1.0 - 2.0 * k - 2.0 * nf) / 4.0) * root / (h - 1.0 / h),
            )]
        }
        QGenerator::B => {
            let root = ((1.0 - q.powf(nf + 1.0)) * (1.0 - q.powf(2.0 * k + nf))).sqrt();
            vec![(
                n + 1,
                q.powf(-(1.0 + 2.0 * k + 2.0 * nf) / 4.0) * root / (1.0 / h - h),
            )]
        }
    }
}

/// Applies a generator to a finitely supported vector.
pub fn qrep_apply(
    r: QRepLabel,
    generator: QGenerator,
    v: &BTreeMap<usize, f64>,
) -> BTreeMap<usize, f64> {
    let mut out = BTreeMap::new();
    for (&n, &c) in v {
        for (m, d) in qrep_action(r, generator, n) {
            *out.entry(m).or_insert(0.0) += c * d;
        }
    }
    out
}

/// `Y_s A e_n`, with `Y_s = q^{1/4}B − q^{−1/4}C + (s + 1/s)/(q^{−1/2} − q^{1/2}) (A − D)`.
fn ysa_column(r: QRepLabel, n: usize) -> BTreeMap<usize, f64> {
    let q = r.q;
    let h = q.sqrt();
    let mix = (r.s + 1.0 / r.s) / (1.0 / h - h);
    let an = qrep_apply(r, QGenerator::A, &BTreeMap::from([(n, 1.0)]));
    let mut out = BTreeMap::new();
    let mut add = |g: QGenerator, w: f64| {
        for (m, c) in qrep_apply(r, g, &an) {
            *out.entry(m).or_insert(0.0) += w * c;
        }
    };
    add(QGenerator::B, q.powf(0.25));
    add(QGenerator::C, -q.powf(-0.25));
    add(QGenerator::A, mix);
    add(QGenerator::D, -mix);
    out
}

/// Matrix of `Y_sA` on `e₀ … e_{dim−1}`, assembled from the generator actions.
///
/// Fails with an internal-consistency error if the assembled matrix is not
/// symmetric tridiagonal to 1e-12.
pub fn ysa_matrix(r: QRepLabel, dim: usize) -> Result<TridiagSym> {
    if dim == 0 {
        return Err(Error::domain("ysa_matrix needs dim >= 1"));
    }
    let columns: Vec<_> = (0..dim).map(|n| ysa_column(r, n)).collect();
    let entry = |row: usize, col: usize| columns[col].get(&row).copied().unwrap_or(0.0);
    for (col, c) in columns.iter().enumerate() {
        if let Some((&row, _)) = c
            .iter()
            .find(|(&row, &v)| row.abs_diff(col) > 1 && v != 0.0)
        {
            return Err(Error::Internal(format!(
                "Y_sA has an entry outside the band at ({row}, {col})"
            )));
        }
    }
    let diag = (0..dim).map(|n| entry(n, n)).collect();
    let mut offdiag = Vec::with_capacity(dim.saturating_sub(1));
    for n in 0..dim.saturating_sub(1) {
        let (lower, upper) = (entry(n + 1, n), entry(n, n + 1));
        if (lower - upper).abs() > 1e-12 * lower.abs().max(1.0) {
            return Err(Error::Internal(format!(
                "Y_sA is not symmetric at ({n}, {}): {lower} vs {upper}",
                n + 1
            )));
        }
        offdiag.push(0.5 * (lower + upper));
    }
    TridiagSym::new(diag, offdiag)
}

/// Coefficients `l_n(x) = s_n(μ(x); q^k s, q^k/s | q)/√((q, q^{2k}; q)_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QEigvecCoeffs {
    pub label: QRepLabel,
    pub x: MuPoint,
    pub values: Vec<Scalar>,
}

impl QEigvecCoeffs {
    pub fn eigenvalue(&self) -> Scalar {
        self.label.eigenvalue(self.x)
    }

    /// Largest row residual of `(Y_sA − λ) Σ l_n e_n` relative to `max |l_n|`,
    /// over the rows that only involve stored coefficients.
    pub fn recurrence_residual(&self) -> Result<f64> {
        let len = self.values.len();
        if len < 2 {
            return Ok(0.0);
        }
        let m = ysa_matrix(self.label, len)?;
        let (d, e) = (m.diag(), m.offdiag());
        let l = &self.values;
        let lambda = self.eigenvalue();
        let scale = l
            .iter()
            .fold(0.0f64, |a, v| a.max(v.norm()))
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for n in 0..len - 1 {
            let mut row = (d[n] - lambda) * l[n] + e[n] * l[n + 1];
            if n > 0 {
                row += e[n - 1] * l[n - 1];
            }
            worst = worst.max(row.norm() / scale);
        }
        Ok(worst)
    }
}

fn asc_coefficient(r: QRepLabel, x: MuPoint, n: usize) -> Result<Scalar> {
    let t = r.q.powf(r.k);
    let family = PolyFamily::AlSalamChihara {
        a: Scalar::new(t * r.s, 0.0),
        b: Scalar::new(t / r.s, 0.0),
        q: r.q,
    };
    let p = orthopoly::eval_mu(&family, n, x, Method::Recurrence)?.value;
    let norm = (qpoch(ONE * r.q, r.q, n) * qpoch(ONE * (t * t), r.q, n))
        .re
        .sqrt();
    Ok(p / norm)
}

/// `l_n(x)` for `n = 0 … nmax`. Points off the unit circle are accepted formally.
pub fn q_eigvec_coeffs(r: QRepLabel, x: MuPoint, nmax: usize) -> Result<QEigvecCoeffs> {
    let values = (0..=nmax)
        .map(|n| asc_coefficient(r, x, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(QEigvecCoeffs {
        label: r,
        x,
        values,
    })
}

/// Realized basis function `e_n(z) = √((q^{2k};q)_n/(q;q)_n) zⁿ`.
pub fn q_basis_realized(k: f64, q: f64, n: usize, z: Scalar) -> Scalar {
    let ratio = qpoch(ONE * q.powf(2.0 * k), q, n).re / qpoch(ONE * q, q, n).re;
    ratio.sqrt() * z.powu(n as u32)
}

/// `(q^k z s, q^k z/s; q)_∞ / (z x, z/x; q)_∞`, the realized formal eigenvector
/// `Σ l_n(x) e_n(z)`.
pub fn q_eigvec_realized(r: QRepLabel, x: MuPoint, z: Scalar) -> Result<Scalar> {
    let t = r.q.powf(r.k);
    infinite_ratio(&[z * (t * r.s), z * (t / r.s)], &[z * x.x, z / x.x], r.q)
}

fn infinite_ratio(num: &[Scalar], den: &[Scalar], q: f64) -> Result<Scalar> {
    let mut v = ONE;
    for &a in den {
        pole_guard(a, q)?;
        v /= qpoch_inf_value(a, q)?;
    }
    for &a in num {
        v *= qpoch_inf_value(a, q)?;
    }
    crate::numerics::ensure_finite(v, "infinite product ratio")
}

/// Rejects `a = q^{−m}`, where `(a; q)_∞` vanishes.
fn pole_guard(a: Scalar, q: f64) -> Result<()> {
    let mut t = a;
    while t.norm() >= 0.5 {
        if (ONE - t).norm() < 1e-14 {
            return Err(Error::pole(format!(
                "({a}; q)_inf vanishes: argument is a negative power of q"
            )));
        }
        t *= q;
    }
    Ok(())
}

/// The uncoupled generalized eigenvector of `Δ(Y_sA)` realized in `(z₁, z₂)`:
///
/// `(q^{k₁}z₁x₂, q^{k₁}z₁/x₂, q^{k₂}z₂s, q^{k₂}z₂/s; q)_∞ / (z₁x₁, z₁/x₁, z₂x₂, z₂/x₂; q)_∞`.
#[allow(clippy::too_many_arguments)]
pub fn q_uncoupled_realized(
    k1: f64,
    k2: f64,
    q: f64,
    s: f64,
    x1: MuPoint,
    x2: MuPoint,
    z1: Scalar,
    z2: Scalar,
) -> Result<Scalar> {
    QRepLabel::new(k1, q, s)?;
    QRepLabel::new(k2, q, s)?;
    let (t1, t2) = (q.powf(k1), q.powf(k2));
    infinite_ratio(
        &[z1 * x2.x * t1, z1 / x2.x * t1, z2 * (t2 * s), z2 * (t2 / s)],
        &[z1 * x1.x, z1 / x1.x, z2 * x2.x, z2 / x2.x],
        q,
    )
}

/// The coupled vector `e^{(k₁k₂)k}_n(z₁, z₂)`, `k = k₁ + k₂ + j`:
///
/// `q^{−nj−nk₁} z₂^{n+j} (q^{k₁}z₁/z₂; q)_j N_j N_n ₃φ₂[q^{−n}, q^{2k₁+j}, q^{k₁+j}z₁/z₂; q^{2k₁+2k₂+2j}, 0; q, q]`.
///
/// The powers of `z₂` are absorbed into the factors: `z₂^j (q^{k₁}z₁/z₂; q)_j`
/// becomes `∏_{i<j} (z₂ − q^{k₁+i}z₁)` and `z₂ⁿ (f;q)_n ₃φ₂` is generated by a
/// three-term recurrence in `n` with coefficients polynomial in `z₁, z₂`.
/// The result is regular at `z₂ = 0` without a separate branch.
pub fn q_coupled_realized(
    k1: f64,
    k2: f64,
    j: usize,
    n: usize,
    q: f64,
    z1: Scalar,
    z2: Scalar,
) -> Result<Scalar> {
    QRepLabel::new(k1, q, 1.0)?;
    QRepLabel::new(k2, q, 1.0)?;
    let jf = j as f64;
    let qr = ONE * q;
    let norm_j = (qpoch(ONE * q.powf(2.0 * k1), q, j) * qpoch(ONE * q.powf(2.0 * k2), q, j)
        / (qpoch(qr, q, j) * qpoch(ONE * q.powf(2.0 * k1 + 2.0 * k2 + jf - 1.0), q, j)))
    .re
    .sqrt();
    let f = q.powf(2.0 * k1 + 2.0 * k2 + 2.0 * jf);
    let norm_n = (qpoch(ONE * f, q, n).re / qpoch(qr, q, n).re).sqrt();

    let mut lead = ONE;
    for i in 0..j {
        lead *= z2 - z1 * q.powf(k1 + i as f64);
    }

    // U_m = q^{−m(j+k₁)} z₂^m (f;q)_m ₃φ₂ truncated at m; a = q^{2k₁+j}, β = q^{k₁+j} z₁.
    // Folding q^{−(j+k₁)} into every step keeps U_m at the size of the result.
    let a = q.powf(2.0 * k1 + jf);
    let beta = z1 * q.powf(k1 + jf);
    let g = q.powf(-(jf + k1));
    let (mut u0, mut u1) = (ONE, (z2 * a + beta - beta * a - z2 * f) * g);
    let un = if n == 0 {
        u0
    } else {
        let mut qm = q;
        for _ in 1..n {
            let u2 = (z2 * a + beta - (beta * a + z2 * f) * qm) * g * u1
                - beta * a * z2 * ((1.0 - qm) * (1.0 - f * qm / q) * g * g) * u0;
            u0 = u1;
            u1 = u2;
            qm *= q;
        }
        u1
    };
    let scale = norm_j * norm_n / qpoch(ONE * f, q, n).re;
    crate::numerics::ensure_finite(lead * un * scale, "q_coupled_realized")
}

/// Both sides of the expansion of the uncoupled eigenvector over coupled ones,
/// truncated at `j ≤ jmax`, `n ≤ nmax`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QExpansionCheck {
    pub uncoupled: Scalar,
    pub expansion: Scalar,
    pub residual: f64,
    /// `|C_j p_j v_j|` of the last retained `j`.
    pub last_j_term: f64,
    /// Largest `|l_n e_n|` at `n = nmax` over the retained `j`.
    pub last_n_term: f64,
}

/// `|uncoupled − Σ_{j≤jmax} C_j p_j(μ(x₂); q^{k₁}x₁, q^{k₁}/x₁, q^{k₂}s, q^{k₂}/s | q) v_j|`,
/// `v_j = Σ_{n≤nmax} l_n^{(k₁+k₂+j)}(x₁) e^{(k₁k₂)k₁+k₂+j}_n(z₁, z₂)`.
#[allow(clippy::too_many_arguments)]
pub fn q_expansion_residual(
    k1: f64,
    k2: f64,
    q: f64,
    s: f64,
    x1: MuPoint,
    x2: MuPoint,
    z1: Scalar,
    z2: Scalar,
    jmax: usize,
    nmax: usize,
) -> Result<QExpansionCheck> {
    let uncoupled = q_uncoupled_realized(k1, k2, q, s, x1, x2, z1, z2)?;
    let (t1, t2) = (q.powf(k1), q.powf(k2));
    let aw = PolyFamily::AskeyWilson {
        a: x1.x * t1,
        b: t1 / x1.x,
        c: Scalar::new(t2 * s, 0.0),
        d: Scalar::new(t2 / s, 0.0),
        q,
    };
    let mut total = CompensatedSum::new();
    let (mut last_j_term, mut last_n_term) = (0.0, 0.0f64);
    for j in 0..=jmax {
        let jf = j as f64;
        let cj = 1.0
            / (qpoch(ONE * q, q, j)
                * qpoch(ONE * (t1 * t1), q, j)
                * qpoch(ONE * (t2 * t2), q, j)
                * qpoch(ONE * q.powf(2.0 * k1 + 2.0 * k2 + jf - 1.0), q, j))
            .re
            .sqrt();
        let pj = orthopoly::eval_mu(&aw, j, x2, Method::Recurrence)?.value;
        let label = QRepLabel::new(k1 + k2 + jf, q, s)?;
        let l = q_eigvec_coeffs(label, x1, nmax)?.values;
        let mut vj = CompensatedSum::new();
        for (n, ln) in l.iter().enumerate() {
            let t = ln * q_coupled_realized(k1, k2, j, n, q, z1, z2)?;
            if n == nmax {
                last_n_term = last_n_term.max(t.norm());
            }
            vj.add(t);
        }
        let term = cj * pj * vj.value();
        last_j_term = term.norm();
        total.add(term);
    }
    let expansion = total.value();
    let residual = if expansion.re.is_finite() && expansion.im.is_finite() {
        (uncoupled - expansion).norm()
    } else {
        return Err(Error::range("q expansion overflowed"));
    };
    Ok(QExpansionCheck {
        uncoupled,
        expansion,
        residual,
        last_j_term,
        last_n_term,
    })
}

#[cfg(test)]
mod tests;

//! The one-parameter group `exp(iαJ₂)`, `J₂ = (J₊ − J₋)/(2i)`, on a truncation of D⁺(k).
//!
//! `iαJ₂ = α(J₊ − J₋)/2` is real antisymmetric, so its exponential is a real
//! orthogonal matrix. Columns are only meaningful while the truncation edge
//! carries negligible mass; [`ExpColumn::tail_mass`] reports that mass.

use nalgebra::DMatrix;

use super::RepLabel;
use crate::error::{Error, Result};
use crate::numerics::ln_gamma;
use crate::orthopoly::meixner_scaled;

/// Largest truncation accepted by the dense exponential.
pub const MAX_DIM: usize = 2000;

/// Rows of the column whose squared entries make up the tail mass.
const TAIL_ROWS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct ExpColumn {
    pub values: Vec<f64>,
    /// Sum of squares of the last ten entries.
    pub tail_mass: f64,
}

fn generator(k: f64, alpha: f64, dim: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(dim, dim);
    for n in 0..dim.saturating_sub(1) {
        let nf = n as f64;
        let v = 0.5 * alpha * ((nf + 1.0) * (2.0 * k + nf)).sqrt();
        a[(n + 1, n)] = v;
        a[(n, n + 1)] = -v;
    }
    a
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::domain(format!(
            "truncation dim must be in 1..={MAX_DIM}, got {dim}"
        )));
    }
    Ok(())
}

/// `exp(iαJ₂)` on `e₀ … e_{dim−1}` by Padé scaling and squaring.
pub fn exp_j2_matrix(k: RepLabel, alpha: f64, dim: usize) -> Result<DMatrix<f64>> {
    check_dim(dim)?;
    if !alpha.is_finite() {
        return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
    }
    let e = generator(k.k(), alpha, dim).exp();
    if e.iter().all(|v| v.is_finite()) {
        Ok(e)
    } else {
        Err(Error::range("matrix exponential overflowed"))
    }
}

/// Column `m` of [`exp_j2_matrix`].
pub fn exp_j2_column(k: RepLabel, alpha: f64, m: usize, dim: usize) -> Result<ExpColumn> {
    if m >= dim {
        return Err(Error::domain(format!(
            "column {m} outside a truncation of dim {dim}"
        )));
    }
    let e = exp_j2_matrix(k, alpha, dim)?;
    let values: Vec<f64> = e.column(m).iter().copied().collect();
    let tail_mass = values[dim.saturating_sub(TAIL_ROWS)..]
        .iter()
        .map(|v| v * v)
        .sum();
    Ok(ExpColumn { values, tail_mass })
}

/// Closed form of the `(n, m)` entry of `exp(iαJ₂)` with `c = tanh(α/2)`:
///
/// `(−1)^m (1 − c²)^k c^{m+n} √((2k)_m (2k)_n / (m! n!)) M_n(m; 2k; c²)`.
pub fn exp_j2_reference(k: RepLabel, c: f64, m: usize, n: usize) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::domain(format!("need 0 < c < 1, got {c}")));
    }
    let k = k.k();
    let (mf, nf) = (m as f64, n as f64);
    let ln_norm = 0.5
        * (ln_gamma(2.0 * k + mf)? + ln_gamma(2.0 * k + nf)?
            - 2.0 * ln_gamma(2.0 * k)?
            - ln_gamma(mf + 1.0)?
            - ln_gamma(nf + 1.0)?);
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let v = sign * (k * (1.0 - c * c).ln() + ln_norm).exp() * meixner_scaled(n, m, 2.0 * k, c);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::range("exp_j2_reference overflowed"))
    }
}

/// `α` with `tanh(α/2) = c`.
pub fn alpha_from_c(c: f64) -> f64 {
    ((1.0 + c) / (1.0 - c)).ln()
}

/// Frobenius norm of `E J₀ Eᵀ − (cosh α J₀ − sinh α J₁)` on the leading
/// `block × block` corner, `E = exp(iαJ₂)` truncated to `dim`.
pub fn exp_id_block_residual(k: RepLabel, alpha: f64, dim: usize, block: usize) -> Result<f64> {
    if block > dim {
        return Err(Error::domain(format!(
            "block {block} larger than dim {dim}"
        )));
    }
    let e = exp_j2_matrix(k, alpha, dim)?;
    let kk = k.k();
    let j0 = DMatrix::from_fn(dim, dim, |i, j| if i == j { i as f64 + kk } else { 0.0 });
    let lhs = &e * j0 * e.transpose();
    let (ch, sh) = (alpha.cosh(), alpha.sinh());
    let mut total = 0.0;
    for i in 0..block {
        for j in 0..block {
            let mut target = if i == j { ch * (i as f64 + kk) } else { 0.0 };
            if i.abs_diff(j) == 1 {
                let lo = i.min(j) as f64;
                target -= sh * 0.5 * ((lo + 1.0) * (2.0 * kk + lo)).sqrt();
            }
            total += (lhs[(i, j)] - target).powi(2);
        }
    }
    Ok(total.sqrt())
}

//! Generalized hypergeometric series, q-shifted factorials, basic
//! hypergeometric series and the very-well-poised ₈W₇.

mod pfq;
mod qseries;

pub use pfq::{hyp1f1, hyp2f1, pfq, pfq_coefficients, SeriesSpec};
pub use qseries::{
    phi32_lower_zero, phi32_lower_zero_scaled, phi_rs, qpoch, qpoch_inf, qpoch_inf_value, w87,
    QProduct, QSeriesSpec,
};

use crate::numerics::Scalar;

/// Stopping rule for non-terminating sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// A term is "small" when `|t| < tol · |partial sum|`.
    pub tol: f64,
    pub max_terms: usize,
    /// Number of consecutive small terms required before stopping.
    pub consecutive_small: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tol: 1e-17,
            max_terms: 20_000,
            consecutive_small: 3,
        }
    }
}

impl TruncationPolicy {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// Value of a summed series together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Scalar,
    pub terms: usize,
    /// Estimated bound on `|exact − value|` from the neglected tail; zero for
    /// terminating series.
    pub tail_bound: f64,
    /// `Σ|t| / |Σt|`, a measure of cancellation among the summed terms.
    pub cancellation: f64,
    pub terminating: bool,
}

/// If `a` is a non-positive integer `−n` (to rounding), returns `n`.
pub(crate) fn nonpositive_integer(a: Scalar) -> Option<usize> {
    if a.im.abs() > 1e-12 * (1.0 + a.re.abs()) || a.re > 0.5 {
        return None;
    }
    let r = a.re.round();
    if (a.re - r).abs() <= 1e-12 * (1.0 + r.abs()) && r <= 0.0 {
        Some((-r) as usize)
    } else {
        None
    }
}

/// If `a = q^{−n}` for a non-negative integer `n` (to rounding), returns `n`.
pub(crate) fn q_negative_power(a: Scalar, q: f64) -> Option<usize> {
    if a.im.abs() > 1e-12 * a.re.abs().max(1.0) || a.re < 1.0 - 1e-12 {
        return None;
    }
    let e = -a.re.ln() / q.ln();
    let r = e.round();
    let rel = (a.re - q.powi(-(r as i32))).abs() / a.re;
    (r >= 0.0 && rel <= 1e-11).then_some(r as usize)
}

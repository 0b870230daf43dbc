use num_complex::Complex64;

use super::Scalar;
use crate::error::{Error, Result};

/// Natural logarithm of Γ(x) for real `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// Γ(x) for real `x > 0`; overflow is a range error.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("gamma requires x > 0, got {x}")));
    }
    let g = statrs::function::gamma::gamma(x);
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::range(format!("gamma({x}) overflows")))
    }
}

/// Rising factorial (a)_n = a(a+1)…(a+n−1) as a running product.
pub fn pochhammer(a: Scalar, n: usize) -> Scalar {
    let mut p = Complex64::new(1.0, 0.0);
    for i in 0..n {
        p *= a + i as f64;
    }
    p
}

pub fn pochhammer_real(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |p, i| p * (a + i as f64))
}

pub fn factorial(n: usize) -> f64 {
    pochhammer_real(1.0, n)
}

/// Generalized binomial coefficient `binom(a, m) = a(a−1)…(a−m+1)/m!`.
pub fn binomial(a: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |p, i| p * (a - i as f64) / (i as f64 + 1.0))
}

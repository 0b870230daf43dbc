//! Scalar utilities and the small amount of numerical linear algebra and
//! quadrature the rest of the crate needs.

pub mod gamma;
pub mod quadrature;
pub mod summation;
pub mod tridiag;

pub use gamma::{binomial, factorial, gamma, ln_gamma, pochhammer, pochhammer_real};
pub use quadrature::{gauss_rule, QuadRule, WeightFamily};
pub use summation::CompensatedSum;
pub use tridiag::{tridiag_eigen, tridiag_eigenvalues, Eigen, TridiagSym};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex value used for every series argument and polynomial value.
pub type Scalar = Complex64;

pub const I: Scalar = Complex64 { re: 0.0, im: 1.0 };
pub const ONE: Scalar = Complex64 { re: 1.0, im: 0.0 };
pub const ZERO: Scalar = Complex64 { re: 0.0, im: 0.0 };

#[inline]
pub fn re(x: f64) -> Scalar {
    Complex64::new(x, 0.0)
}

/// Rejects NaN and infinite values; `what` names the quantity in the error.
pub fn ensure_finite(z: Scalar, what: &str) -> Result<Scalar> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::range(format!("{what} is not finite ({z})")))
    }
}

pub fn ensure_finite_real(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::range(format!("{what} is not finite ({x})")))
    }
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn rel_diff(a: Scalar, b: Scalar, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

/// `q^e` for real `q > 0` and real exponent.
#[inline]
pub fn qpow(q: f64, e: f64) -> f64 {
    q.powf(e)
}

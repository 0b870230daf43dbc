//! Orthogonal polynomial families with two independent evaluation routes.
//!
//! Every family is available through its hypergeometric definition and
//! through its three-term recurrence. The Askey-Wilson and Al-Salam–Chihara
//! families also have a q-binomial convolution route that stays accurate at
//! degrees where the literal `₄φ₃`/`₃φ₂` sums lose all digits to cancellation.

mod askey_wilson;
mod classical;

pub use askey_wilson::{aw_h, aw_norm, aw_weight, aw_weight_theta};
pub use classical::{hahn_scaled, jacobi_homogeneous, meixner_scaled};

use crate::error::{Error, Result};
use crate::numerics::{ln_gamma, Scalar, I, ONE};

/// Largest degree `eval` accepts.
pub const MAX_DEGREE: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyFamily {
    /// `L_n^{(α)}(x)`.
    Laguerre { alpha: f64 },
    /// `M_n(x; β, c)`.
    Meixner { beta: f64, c: f64 },
    /// `P_n^{(λ)}(x; φ)`.
    MeixnerPollaczek { lambda: f64, phi: f64 },
    /// `P_n^{(a,b)}(x)`.
    Jacobi { a: f64, b: f64 },
    /// `Q_n(x; a, b, N)`.
    Hahn { a: f64, b: f64, n: usize },
    /// `p_n(x; a, b, c, d)`.
    ContinuousHahn {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
    },
    /// Physicists' `H_n(x)`.
    Hermite,
    /// `Q_n(x; a, b | q)`, evaluated at `x = μ`.
    AlSalamChihara { a: Scalar, b: Scalar, q: f64 },
    /// `p_n(x; a, b, c, d | q)`, evaluated at `x = μ`.
    AskeyWilson {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        q: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Hypergeometric,
    Recurrence,
    /// q-binomial convolution of the generating-function factors; only for
    /// the Askey-Wilson and Al-Salam–Chihara families.
    ProductSeries,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Hypergeometric => "hypergeometric",
            Method::Recurrence => "recurrence",
            Method::ProductSeries => "product-series",
        }
    }
}

impl PolyFamily {
    pub fn name(&self) -> &'static str {
        match self {
            PolyFamily::Laguerre { .. } => "laguerre",
            PolyFamily::Meixner { .. } => "meixner",
            PolyFamily::MeixnerPollaczek { .. } => "meixner-pollaczek",
            PolyFamily::Jacobi { .. } => "jacobi",
            PolyFamily::Hahn { .. } => "hahn",
            PolyFamily::ContinuousHahn { .. } => "continuous-hahn",
            PolyFamily::Hermite => "hermite",
            PolyFamily::AlSalamChihara { .. } => "al-salam-chihara",
            PolyFamily::AskeyWilson { .. } => "askey-wilson",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::domain(msg));
        match *self {
            PolyFamily::Laguerre { alpha } if !(alpha > -1.0) => {
                bad(format!("Laguerre needs alpha > -1, got {alpha}"))
            }
            PolyFamily::Meixner { beta, .. } if !(beta > 0.0) => {
                bad(format!("Meixner needs beta > 0, got {beta}"))
            }
            PolyFamily::Meixner { c, .. } if !(c > 0.0 && c < 1.0) => {
                bad(format!("Meixner needs 0 < c < 1, got {c}"))
            }
            PolyFamily::MeixnerPollaczek { lambda, .. } if !(lambda > 0.0) => {
                bad(format!("Meixner-Pollaczek needs lambda > 0, got {lambda}"))
            }
            PolyFamily::MeixnerPollaczek { phi, .. }
                if !(phi > 0.0 && phi < std::f64::consts::PI) =>
            {
                bad(format!("Meixner-Pollaczek needs 0 < phi < pi, got {phi}"))
            }
            PolyFamily::Jacobi { a, b } | PolyFamily::Hahn { a, b, .. }
                if !(a > -1.0 && b > -1.0) =>
            {
                bad(format!("{} needs a, b > -1, got ({a}, {b})", self.name()))
            }
            PolyFamily::ContinuousHahn { a, b, c, d }
                if [a, b, c, d].iter().any(|p| !(p.re > 0.0)) =>
            {
                bad("continuous Hahn needs parameters with positive real part".into())
            }
            PolyFamily::AlSalamChihara { q, .. } | PolyFamily::AskeyWilson { q, .. }
                if !(q > 0.0 && q < 1.0) =>
            {
                bad(format!("{} needs 0 < q < 1, got {q}", self.name()))
            }
            _ => Ok(()),
        }
    }

    fn validate_point(&self, n: usize, x: Scalar) -> Result<()> {
        if n > MAX_DEGREE {
            return Err(Error::domain(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        if !x.re.is_finite() || !x.im.is_finite() {
            return Err(Error::domain("evaluation point is not finite"));
        }
        if let PolyFamily::Hahn { n: big, .. } = *self {
            if n > big {
                return Err(Error::domain(format!("Hahn degree {n} exceeds N = {big}")));
            }
            let r = x.re.round();
            if x.im != 0.0 || (x.re - r).abs() > 1e-12 || r < 0.0 || r > big as f64 {
                return Err(Error::domain(format!(
                    "Hahn argument must be in {{0, ..., {big}}}, got {x}"
                )));
            }
        }
        Ok(())
    }

    fn is_q_family(&self) -> bool {
        matches!(
            self,
            PolyFamily::AlSalamChihara { .. } | PolyFamily::AskeyWilson { .. }
        )
    }
}

/// A point `x` (typically `e^{iθ}`) together with `μ(x) = (x + 1/x)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuPoint {
    pub x: Scalar,
    pub mu: Scalar,
}

impl MuPoint {
    /// `x = e^{iθ}`, `μ = cos θ` exactly.
    pub fn from_theta(theta: f64) -> Self {
        Self {
            x: Scalar::from_polar(1.0, theta),
            mu: Scalar::new(theta.cos(), 0.0),
        }
    }

    pub fn from_x(x: Scalar) -> Self {
        Self {
            x,
            mu: (x + ONE / x) * 0.5,
        }
    }

    /// One of the two preimages of `μ`; the polynomials only depend on `μ`.
    pub fn from_mu(mu: Scalar) -> Self {
        let x = if mu.im == 0.0 && mu.re.abs() <= 1.0 {
            Scalar::new(mu.re, (1.0 - mu.re * mu.re).sqrt())
        } else {
            mu + (mu * mu - ONE).sqrt()
        };
        Self { x, mu }
    }
}

/// Value of a polynomial evaluation together with the cancellation factor
/// `Σ|t|/|Σt|` of the underlying sum (1 for recurrences).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyValue {
    pub value: Scalar,
    pub cancellation: f64,
}

/// Evaluates `p_n(x)`. For the Askey-Wilson and Al-Salam–Chihara families
/// `x` is the variable `μ = cos θ`.
pub fn eval(family: &PolyFamily, n: usize, x: Scalar, method: Method) -> Result<Scalar> {
    eval_detailed(family, n, x, method).map(|v| v.value)
}

pub fn eval_detailed(
    family: &PolyFamily,
    n: usize,
    x: Scalar,
    method: Method,
) -> Result<PolyValue> {
    if family.is_q_family() {
        return eval_mu(family, n, MuPoint::from_mu(x), method);
    }
    family.validate()?;
    family.validate_point(n, x)?;
    let out = match method {
        Method::Hypergeometric => classical::hypergeometric(family, n, x)?,
        Method::Recurrence => PolyValue {
            value: classical::recurrence(family, n, x),
            cancellation: 1.0,
        },
        Method::ProductSeries => {
            return Err(Error::domain(format!(
                "product-series evaluation is not defined for {}",
                family.name()
            )))
        }
    };
    finite(out)
}

/// Evaluates an Askey-Wilson or Al-Salam–Chihara polynomial at `μ(x)`.
pub fn eval_mu(family: &PolyFamily, n: usize, point: MuPoint, method: Method) -> Result<PolyValue> {
    family.validate()?;
    family.validate_point(n, point.mu)?;
    let out = match *family {
        PolyFamily::AlSalamChihara { a, b, q } => askey_wilson::asc(n, point, a, b, q, method)?,
        PolyFamily::AskeyWilson { a, b, c, d, q } => {
            askey_wilson::aw(n, point, [a, b, c, d], q, method)?
        }
        _ => return eval_detailed(family, n, point.mu, method),
    };
    finite(out)
}

fn finite(v: PolyValue) -> Result<PolyValue> {
    if v.value.re.is_finite() && v.value.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::range("polynomial value overflowed"))
    }
}

/// Squared norm of `P_j^{(2k₁−1, 2k₂−1)}` on `(−1, 1)`.
pub fn jacobi_norm(j: usize, k1: f64, k2: f64) -> Result<f64> {
    if !(k1 > 0.0 && k2 > 0.0) {
        return Err(Error::domain(format!(
            "jacobi_norm needs k1, k2 > 0, got ({k1}, {k2})"
        )));
    }
    let (a, b) = (2.0 * k1 - 1.0, 2.0 * k2 - 1.0);
    let jf = j as f64;
    let ln = if j == 0 {
        (a + b + 1.0) * 2f64.ln() + ln_gamma(a + 1.0)? + ln_gamma(b + 1.0)? - ln_gamma(a + b + 2.0)?
    } else {
        (a + b + 1.0) * 2f64.ln() - (2.0 * jf + a + b + 1.0).ln()
            + ln_gamma(jf + a + 1.0)?
            + ln_gamma(jf + b + 1.0)?
            - ln_gamma(jf + 1.0)?
            - ln_gamma(jf + a + b + 1.0)?
    };
    Ok(ln.exp())
}

/// `iⁿ`.
pub(crate) fn i_pow(n: usize) -> Scalar {
    match n % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

#[cfg(test)]
mod tests;

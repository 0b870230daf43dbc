//! Positive discrete series representations D⁺(k) of su(1,1).
//!
//! The basis `e_n`, `n ≥ 0`, carries the action
//!
//! ```text
//! J₀ e_n = (n + k) e_n
//! J₊ e_n = √((n+1)(2k+n)) e_{n+1}
//! J₋ e_n = √(n(2k+n−1)) e_{n−1}
//! ```
//!
//! and the self-adjoint operators `X₂`, `X_φ`, `X_c` are tridiagonal in it.
//! Their formal eigenvectors have Laguerre, Meixner-Pollaczek and Meixner
//! polynomials as coefficients; tensor products of two such representations
//! give convolution identities with Jacobi, continuous Hahn and Hahn
//! polynomials.

mod coupling;
mod expj2;

pub use coupling::{
    cgc, convolution_residual, convolution_sides, coupled_realized, s_coeff, CoupledLabel,
};
pub use expj2::{
    alpha_from_c, exp_id_block_residual, exp_j2_column, exp_j2_matrix, exp_j2_reference, ExpColumn,
    MAX_DIM,
};

use crate::error::{Error, Result};
use crate::numerics::{ln_gamma, Scalar, TridiagSym};
use crate::orthopoly::{self, Method, PolyFamily};

/// Label `k > 0` of the representation D⁺(k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepLabel {
    k: f64,
}

impl RepLabel {
    pub fn new(k: f64) -> Result<Self> {
        if k > 0.0 && k.is_finite() {
            Ok(Self { k })
        } else {
            Err(Error::domain(format!(
                "representation label must satisfy k > 0, got {k}"
            )))
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    J0,
    Jplus,
    Jminus,
}

/// `J e_n` as a list of `(index, coefficient)` pairs.
pub fn rep_action(k: RepLabel, generator: Generator, n: usize) -> Vec<(usize, f64)> {
    let k = k.k;
    let nf = n as f64;
    match generator {
        Generator::J0 => vec![(n, nf + k)],
        Generator::Jplus => vec![(n + 1, ((nf + 1.0) * (2.0 * k + nf)).sqrt())],
        Generator::Jminus if n == 0 => Vec::new(),
        Generator::Jminus => vec![(n - 1, (nf * (2.0 * k + nf - 1.0)).sqrt())],
    }
}

/// The three self-adjoint operators `σJ₀ ± (J₊ + J₋)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HamiltonianKind {
    /// `2J₀ − J₊ − J₋`; continuous spectrum `x ≥ 0`.
    X2,
    /// `−2cos φ J₀ + J₊ + J₋`, `0 < φ < π`; spectrum `2x sin φ`, `x ∈ ℝ`.
    Xphi { phi: f64 },
    /// `−(c + 1/c) J₀ + J₊ + J₋`, `0 < c < 1`; spectrum `(c − 1/c)(k + x)`, `x ∈ ℕ`.
    Xc { c: f64 },
}

impl HamiltonianKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            HamiltonianKind::X2 => Ok(()),
            HamiltonianKind::Xphi { phi } if phi > 0.0 && phi < std::f64::consts::PI => Ok(()),
            HamiltonianKind::Xphi { phi } => Err(Error::domain(format!(
                "X_phi needs 0 < phi < pi, got {phi}"
            ))),
            HamiltonianKind::Xc { c } if c > 0.0 && c < 1.0 => Ok(()),
            HamiltonianKind::Xc { c } => {
                Err(Error::domain(format!("X_c needs 0 < c < 1, got {c}")))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            HamiltonianKind::X2 => "X2",
            HamiltonianKind::Xphi { .. } => "Xphi",
            HamiltonianKind::Xc { .. } => "Xc",
        }
    }

    /// Coefficient `σ` of `J₀`.
    pub fn sigma(&self) -> f64 {
        match *self {
            HamiltonianKind::X2 => 2.0,
            HamiltonianKind::Xphi { phi } => -2.0 * phi.cos(),
            HamiltonianKind::Xc { c } => -(c + 1.0 / c),
        }
    }

    /// Sign in front of `J₊ + J₋`.
    pub fn offdiag_sign(&self) -> f64 {
        match self {
            HamiltonianKind::X2 => -1.0,
            _ => 1.0,
        }
    }

    /// Eigenvalue `λ(x)` belonging to the formal eigenvector `v^{(k)}(x)`.
    pub fn eigenvalue(&self, k: f64, x: f64) -> f64 {
        match *self {
            HamiltonianKind::X2 => x,
            HamiltonianKind::Xphi { phi } => 2.0 * x * phi.sin(),
            HamiltonianKind::Xc { c } => (c - 1.0 / c) * (k + x),
        }
    }

    /// Checks that `x` lies in the spectrum parametrization for this kind.
    fn validate_x(&self, x: f64) -> Result<()> {
        if !x.is_finite() {
            return Err(Error::domain(format!(
                "eigenvalue parameter must be finite, got {x}"
            )));
        }
        if let HamiltonianKind::Xc { .. } = self {
            if x < 0.0 || x.fract() != 0.0 {
                return Err(Error::domain(format!("X_c needs x in N, got {x}")));
            }
        }
        Ok(())
    }
}

/// Truncation of `X` to `e₀ … e_{dim−1}`.
pub fn hamiltonian_matrix(kind: HamiltonianKind, k: RepLabel, dim: usize) -> Result<TridiagSym> {
    kind.validate()?;
    if dim == 0 {
        return Err(Error::domain("hamiltonian_matrix needs dim >= 1"));
    }
    let k = k.k;
    let sigma = kind.sigma();
    let sign = kind.offdiag_sign();
    let diag = (0..dim).map(|n| sigma * (n as f64 + k)).collect();
    let offdiag = (0..dim - 1)
        .map(|n| {
            let nf = n as f64;
            sign * ((nf + 1.0) * (2.0 * k + nf)).sqrt()
        })
        .collect();
    TridiagSym::new(diag, offdiag)
}

/// Coefficients `l_n^{(k)}(x)` of the formal eigenvector `Σ l_n e_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigvecCoeffs {
    pub kind: HamiltonianKind,
    pub k: f64,
    pub x: f64,
    pub values: Vec<f64>,
}

impl EigvecCoeffs {
    pub fn eigenvalue(&self) -> f64 {
        self.kind.eigenvalue(self.k, self.x)
    }

    /// Largest row residual of `(X − λ) Σ l_n e_n` over the rows that only
    /// involve stored coefficients, relative to `max |l_n|`.
    pub fn recurrence_residual(&self) -> f64 {
        let l = &self.values;
        let k = self.k;
        let sigma = self.kind.sigma();
        let sign = self.kind.offdiag_sign();
        let lambda = self.eigenvalue();
        let scale = l
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for n in 0..l.len().saturating_sub(1) {
            let nf = n as f64;
            let mut row = (sigma * (nf + k) - lambda) * l[n];
            row += sign * ((nf + 1.0) * (2.0 * k + nf)).sqrt() * l[n + 1];
            if n > 0 {
                row += sign * (nf * (2.0 * k + nf - 1.0)).sqrt() * l[n - 1];
            }
            worst = worst.max(row.abs() / scale);
        }
        worst
    }
}

/// `l_n^{(k)}(x)` for `n = 0 … nmax`.
pub fn eigvec_coeffs(
    kind: HamiltonianKind,
    k: RepLabel,
    x: f64,
    nmax: usize,
) -> Result<EigvecCoeffs> {
    kind.validate()?;
    kind.validate_x(x)?;
    let k = k.k;
    let values = (0..=nmax)
        .map(|n| eigvec_coeff(kind, k, x, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(EigvecCoeffs { kind, k, x, values })
}

fn eigvec_coeff(kind: HamiltonianKind, k: f64, x: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    let (family, norm) = match kind {
        HamiltonianKind::X2 => (
            PolyFamily::Laguerre {
                alpha: 2.0 * k - 1.0,
            },
            (0.5 * (ln_gamma(nf + 1.0)? + ln_gamma(2.0 * k)? - ln_gamma(2.0 * k + nf)?)).exp(),
        ),
        HamiltonianKind::Xphi { phi } => (
            PolyFamily::MeixnerPollaczek { lambda: k, phi },
            (0.5 * (ln_gamma(nf + 1.0)? - ln_gamma(2.0 * k + nf)?)).exp(),
        ),
        HamiltonianKind::Xc { c } => (
            PolyFamily::Meixner {
                beta: 2.0 * k,
                c: c * c,
            },
            (0.5 * (ln_gamma(2.0 * k + nf)? - ln_gamma(2.0 * k)? - ln_gamma(nf + 1.0)?)
                + nf * c.ln())
            .exp(),
        ),
    };
    let p = orthopoly::eval(&family, n, Scalar::new(x, 0.0), Method::Recurrence)?;
    let v = norm * p.re;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::range(format!(
            "l_{n} overflowed for {} at k = {k}, x = {x}",
            kind.name()
        )))
    }
}

//! Registry of numerically checked identities.
//!
//! Each [`IdentityId`] pairs a closed form with an independently computed
//! side: a truncated power series, a Gauss or trapezoid quadrature, or a
//! representation-theoretic expansion. [`check_identity`] evaluates both and
//! returns a [`CheckReport`]; [`grid_check`] runs a list of parameter tuples
//! in parallel and keeps the input order.

mod delegated;
mod grid;
mod integrals;
mod series;

pub use grid::{default_grid, grid_check, parse_grid, random_grid, GridReport, GridSummary};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    GfLag,
    GfMp,
    GfMei,
    Ser1,
    Ser2,
    Qser2,
    Lem41,
    Awj,
    Jg5c,
    Jg5d,
    ConvX2,
    ConvXphi,
    ConvXc,
    Qexp,
    Expj2,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        IdentityId::GfLag,
        IdentityId::GfMp,
        IdentityId::GfMei,
        IdentityId::Ser1,
        IdentityId::Ser2,
        IdentityId::Qser2,
        IdentityId::Lem41,
        IdentityId::Awj,
        IdentityId::Jg5c,
        IdentityId::Jg5d,
        IdentityId::ConvX2,
        IdentityId::ConvXphi,
        IdentityId::ConvXc,
        IdentityId::Qexp,
        IdentityId::Expj2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::GfLag => "GF-LAG",
            IdentityId::GfMp => "GF-MP",
            IdentityId::GfMei => "GF-MEI",
            IdentityId::Ser1 => "SER1",
            IdentityId::Ser2 => "SER2",
            IdentityId::Qser2 => "QSER2",
            IdentityId::Lem41 => "LEM41",
            IdentityId::Awj => "AWJ",
            IdentityId::Jg5c => "JG5C",
            IdentityId::Jg5d => "JG5D",
            IdentityId::ConvX2 => "CONV-X2",
            IdentityId::ConvXphi => "CONV-XPHI",
            IdentityId::ConvXc => "CONV-XC",
            IdentityId::Qexp => "QEXP",
            IdentityId::Expj2 => "EXPJ2",
        }
    }

    pub fn identity(&self) -> &'static Identity {
        REGISTRY
            .iter()
            .find(|e| e.id == *self)
            .expect("every id is registered")
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    /// Case-insensitive; `-` and `_` are interchangeable and optional.
    fn from_str(s: &str) -> Result<Self> {
        let key = |t: &str| t.to_ascii_lowercase().replace(['-', '_'], "");
        let wanted = key(s);
        IdentityId::ALL
            .into_iter()
            .find(|id| key(id.as_str()) == wanted)
            .ok_or_else(|| Error::domain(format!("unknown identity id '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Real,
    /// Accepts `name` and an optional `name_im`.
    Complex,
    Nat,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: Option<f64>,
    /// Validity region, as shown to users.
    pub domain: &'static str,
}

const fn real(name: &'static str, domain: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Real,
        default: None,
        domain,
    }
}

const fn complex(name: &'static str, domain: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Complex,
        default: None,
        domain,
    }
}

const fn nat(name: &'static str, domain: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Nat,
        default: None,
        domain,
    }
}

const fn with_default(mut p: ParamSpec, v: f64) -> ParamSpec {
    p.default = Some(v);
    p
}

/// A registry entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Identity {
    pub id: IdentityId,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    pub default_tol: f64,
    /// What the series side is: "series", "quadrature" or "expansion".
    pub method: &'static str,
}

pub static REGISTRY: [Identity; 15] = [
    Identity {
        id: IdentityId::GfLag,
        summary: "sum L_n^(2k-1)(x) z^n = (1-z)^(-2k) exp(xz/(z-1))",
        params: &[real("k", "k > 0"), real("x", "real"), complex("z", "|z| < 1")],
        default_tol: 1e-8,
        method: "series",
    },
    Identity {
        id: IdentityId::GfMp,
        summary: "sum P_n^(k)(x;phi) z^n / Gamma(2k) = (1-e^{i phi}z)^(-k+ix) (1-e^{-i phi}z)^(-k-ix) / Gamma(2k)",
        params: &[
            real("k", "k > 0"),
            real("x", "real"),
            real("phi", "0 < phi < pi"),
            complex("z", "|z| < 1"),
        ],
        default_tol: 1e-8,
        method: "series",
    },
    Identity {
        id: IdentityId::GfMei,
        summary: "sum (2k)_n c^n/n! M_n(x;2k,c^2) z^n = (1-z/c)^x (1-cz)^(-x-2k)",
        params: &[
            real("k", "k > 0"),
            real("c", "0 < c < 1"),
            nat("x", "x in N"),
            complex("z", "|z| < min(1, 1/c)"),
        ],
        default_tol: 1e-8,
        method: "series",
    },
    Identity {
        id: IdentityId::Ser1,
        summary: "sum 1F1(-n;b;x) 2F1(-n,a;b;y) (b)_n/n! z^n = Laguerre-Meixner kernel",
        params: &[
            real("a", "real"),
            real("b", "b > 0"),
            real("x", "real"),
            real("y", "real"),
            complex("z", "|z| < 1, |z(1-y)| < 1"),
        ],
        default_tol: 1e-8,
        method: "series",
    },
    Identity {
        id: IdentityId::Ser2,
        summary: "sum 2F1(-n,a;c;x) 2F1(-n,b;c;y) (c)_n/n! z^n = Poisson kernel for Meixner polynomials",
        params: &[
            real("a", "real"),
            real("b", "real"),
            real("c", "c > 0"),
            real("x", "real"),
            real("y", "real"),
            complex("z", "|z| < 1, |z(1-x)| < 1, |z(1-y)| < 1"),
        ],
        default_tol: 1e-8,
        method: "series",
    },
    Identity {
        id: IdentityId::Qser2,
        summary: "sum 3phi2(a,b) 3phi2(c,d) (f;q)_n/(q;q)_n z^n = products x 8W7 (Al-Salam-Chihara Poisson kernel)",
        params: &[
            complex("a", "|a| <= 1"),
            complex("b", "|b| <= 1"),
            complex("c", "|c| <= 1"),
            complex("d", "|d| <= 1"),
            complex("f", "|f| < 1"),
            real("q", "0 < q < 1"),
            complex("z", "|z| < 1"),
        ],
        default_tol: 1e-6,
        method: "series",
    },
    Identity {
        id: IdentityId::Lem41,
        summary: "int (1-r)^a (1+r)^b P_j^(a,b)(r) e^(cr) dr = Gamma factors x e^-c (2c)^j 1F1(b+j+1; a+b+2j+2; 2c)",
        params: &[real("a", "a > -1"), real("b", "b > -1"), real("c", "real"), nat("j", "j <= 30")],
        default_tol: 1e-7,
        method: "quadrature",
    },
    Identity {
        id: IdentityId::Awj,
        summary: "h0 (cf,df)/(g/a,g/b) J(a,b,c,d,f,g) = products x 8W7(abcg/q; ab,ac,bc,g/d,g/f; q, df)",
        params: &[
            complex("a", "|a| < 1"),
            complex("b", "|b| < 1"),
            complex("c", "|c| < 1"),
            complex("d", "|d| < 1"),
            complex("f", "|f| < 1"),
            complex("g", "|g| < 1"),
            real("q", "0 < q < 1"),
        ],
        default_tol: 1e-6,
        method: "quadrature",
    },
    Identity {
        id: IdentityId::Jg5c,
        summary: "int L_m^a(rho x) L_n^a(x) e^(-(rho+1)x/2) x^a dx = Meixner closed form",
        params: &[real("a", "a > -1"), real("rho", "rho > 1"), nat("m", "m <= 30"), nat("n", "n <= 30")],
        default_tol: 1e-7,
        method: "quadrature",
    },
    Identity {
        id: IdentityId::Jg5d,
        summary: "int H_2m(lam x) H_2n(x) e^(-(lam^2+1)x^2/2) dx = Meixner closed form",
        params: &[real("lam", "real"), nat("m", "m <= 30"), nat("n", "n <= 30")],
        default_tol: 1e-7,
        method: "quadrature",
    },
    Identity {
        id: IdentityId::ConvX2,
        summary: "sum CGC l_n1(x1) l_n2(x2) = l_n(x1+x2) S_j (Laguerre / Jacobi)",
        params: &[
            real("k1", "k1 > 0"),
            real("k2", "k2 > 0"),
            nat("j", "j in N"),
            nat("n", "n in N"),
            real("x1", "x1 >= 0"),
            real("x2", "x2 >= 0"),
        ],
        default_tol: 1e-8,
        method: "expansion",
    },
    Identity {
        id: IdentityId::ConvXphi,
        summary: "sum CGC l_n1(x1) l_n2(x2) = l_n(x1+x2) S_j (Meixner-Pollaczek / continuous Hahn)",
        params: &[
            real("k1", "k1 > 0"),
            real("k2", "k2 > 0"),
            nat("j", "j in N"),
            nat("n", "n in N"),
            real("x1", "real"),
            real("x2", "real"),
            real("phi", "0 < phi < pi"),
        ],
        default_tol: 1e-8,
        method: "expansion",
    },
    Identity {
        id: IdentityId::ConvXc,
        summary: "sum CGC l_n1(x1) l_n2(x2) = l_n(x1+x2-j) S_j (Meixner / Hahn)",
        params: &[
            real("k1", "k1 > 0"),
            real("k2", "k2 > 0"),
            nat("j", "j in N"),
            nat("n", "n in N"),
            nat("x1", "x1 in N"),
            nat("x2", "x2 in N"),
            real("c", "0 < c < 1"),
        ],
        default_tol: 1e-8,
        method: "expansion",
    },
    Identity {
        id: IdentityId::Qexp,
        summary: "uncoupled q-eigenvector = sum_j C_j p_j(Askey-Wilson) x coupled eigenvector",
        params: &[
            real("k1", "k1 > 0"),
            real("k2", "k2 > 0"),
            real("q", "0 < q < 1"),
            real("s", "s != 0"),
            real("theta1", "real"),
            real("theta2", "real"),
            complex("z1", "|z1| <= 0.3"),
            complex("z2", "|z2| <= 0.3"),
            with_default(nat("jmax", "truncation in j"), 25.0),
            with_default(nat("nmax", "truncation in n"), 25.0),
        ],
        default_tol: 1e-6,
        method: "expansion",
    },
    Identity {
        id: IdentityId::Expj2,
        summary: "column m of exp(i alpha J2), tanh(alpha/2) = c, equals (-1)^m (1-c^2)^k c^(m+n) sqrt(...) M_n(m;2k;c^2)",
        params: &[
            real("k", "k > 0"),
            real("c", "0 < c < 1"),
            nat("m", "m < dim"),
            with_default(nat("dim", "truncation, 11 <= dim <= 2000"), 300.0),
        ],
        default_tol: 1e-6,
        method: "expansion",
    },
];

/// Named parameter values. Complex parameters `z` use `z` and `z_im`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, f64>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(mut self, name: &str, value: f64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn insert(&mut self, name: &str, value: f64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn set_complex(self, name: &str, value: Scalar) -> Self {
        let im = format!("{name}_im");
        self.set(name, value.re).set(&im, value.im)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `key=value` pairs separated by whitespace or commas.
    pub fn parse(line: &str) -> Result<Self> {
        let mut out = Params::new();
        for token in line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::domain(format!("expected key=value, got '{token}'")))?;
            let v: f64 = value.trim().parse().map_err(|_| {
                Error::domain(format!(
                    "parameter '{key}' has a non-numeric value '{value}'"
                ))
            })?;
            if out.0.insert(key.trim().to_string(), v).is_some() {
                return Err(Error::domain(format!("parameter '{key}' given twice")));
            }
        }
        Ok(out)
    }

    /// Checks names and kinds against the schema and fills defaults.
    pub fn resolve(&self, id: IdentityId) -> Result<Args> {
        let schema = id.identity().params;
        for key in self.0.keys() {
            let known = schema.iter().any(|p| {
                p.name == key
                    || (p.kind == ParamKind::Complex && key.strip_suffix("_im") == Some(p.name))
            });
            if !known {
                return Err(Error::domain(format!("{id} has no parameter '{key}'")));
            }
        }
        let mut values = BTreeMap::new();
        for p in schema {
            let v = match (self.0.get(p.name), p.default) {
                (Some(&v), _) | (None, Some(v)) => v,
                (None, None) => {
                    return Err(Error::domain(format!(
                        "{id} needs parameter '{}' ({})",
                        p.name, p.domain
                    )))
                }
            };
            if !v.is_finite() {
                return Err(Error::domain(format!(
                    "parameter '{}' must be finite",
                    p.name
                )));
            }
            if p.kind == ParamKind::Nat && (v < 0.0 || v.fract() != 0.0 || v > 1e6) {
                return Err(Error::domain(format!(
                    "parameter '{}' must be a non-negative integer, got {v}",
                    p.name
                )));
            }
            values.insert(p.name.to_string(), v);
            if p.kind == ParamKind::Complex {
                let im_key = format!("{}_im", p.name);
                let im = self.0.get(&im_key).copied().unwrap_or(0.0);
                if !im.is_finite() {
                    return Err(Error::domain(format!(
                        "parameter '{im_key}' must be finite"
                    )));
                }
                values.insert(im_key, im);
            }
        }
        Ok(Args { values })
    }
}

impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Params::parse(s)
    }
}

/// Grid-line form, `k=v` pairs separated by spaces; parses back unchanged.
impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Schema-checked parameter values with defaults applied.
#[derive(Debug, Clone)]
pub struct Args {
    values: BTreeMap<String, f64>,
}

impl Args {
    pub fn real(&self, name: &str) -> f64 {
        self.values[name]
    }

    pub fn nat(&self, name: &str) -> usize {
        self.values[name] as usize
    }

    pub fn complex(&self, name: &str) -> Scalar {
        let im = self
            .values
            .get(&format!("{name}_im"))
            .copied()
            .unwrap_or(0.0);
        Scalar::new(self.values[name], im)
    }
}

/// Truncation controls for the series and quadrature sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Stop once three consecutive terms fall below `tol · |partial sum|`.
    pub tol: f64,
    pub max_terms: usize,
    /// Overrides the Gauss rule size.
    pub quad_points: Option<usize>,
    /// Midpoint rule size for θ integrals.
    pub trapezoid_points: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            tol: 1e-17,
            max_terms: 5000,
            quad_points: None,
            trapezoid_points: 2048,
        }
    }
}

/// A side of an identity with its truncation metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideValue {
    pub value: Scalar,
    /// Series terms, quadrature nodes, or expansion terms used.
    pub terms: usize,
    /// Estimated bound on the neglected part (0 when exact or unknown).
    pub tail_bound: f64,
}

/// Outcome of comparing both sides of an identity at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub params: Params,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub abs_residual: f64,
    /// `abs_residual / max(|lhs|, |rhs|)`, or `abs_residual` itself when both
    /// sides are below [`ABSOLUTE_FLOOR`]. The point passes iff this is `≤ tol`.
    pub rel_residual: f64,
    pub terms: usize,
    pub tail_bound: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Magnitude below which residuals are judged in absolute terms.
pub const ABSOLUTE_FLOOR: f64 = 1e-6;

impl CheckReport {
    fn from_sides(id: IdentityId, params: &Params, lhs: SideValue, rhs: Scalar, tol: f64) -> Self {
        let abs_residual = (lhs.value - rhs).norm();
        let scale = lhs.value.norm().max(rhs.norm());
        let rel_residual = if scale < ABSOLUTE_FLOOR {
            abs_residual
        } else {
            abs_residual / scale
        };
        Self {
            identity: id.to_string(),
            params: params.clone(),
            lhs: [lhs.value.re, lhs.value.im],
            rhs: [rhs.re, rhs.im],
            abs_residual,
            rel_residual,
            terms: lhs.terms,
            tail_bound: lhs.tail_bound,
            tol,
            pass: rel_residual <= tol,
            error: None,
        }
    }

    /// A report for a point whose evaluation failed.
    pub fn failed(id: IdentityId, params: &Params, tol: f64, err: &Error) -> Self {
        Self {
            identity: id.to_string(),
            params: params.clone(),
            lhs: [f64::NAN; 2],
            rhs: [f64::NAN; 2],
            abs_residual: f64::NAN,
            rel_residual: f64::NAN,
            terms: 0,
            tail_bound: 0.0,
            tol,
            pass: false,
            error: Some(err.to_string()),
        }
    }

    pub fn lhs_value(&self) -> Scalar {
        Scalar::new(self.lhs[0], self.lhs[1])
    }

    pub fn rhs_value(&self) -> Scalar {
        Scalar::new(self.rhs[0], self.rhs[1])
    }
}

/// The closed-form side.
pub fn closed_form(id: IdentityId, params: &Params) -> Result<Scalar> {
    let args = params.resolve(id)?;
    let v = match id {
        IdentityId::GfLag
        | IdentityId::GfMp
        | IdentityId::GfMei
        | IdentityId::Ser1
        | IdentityId::Ser2
        | IdentityId::Qser2 => series::closed(id, &args)?,
        IdentityId::Lem41 | IdentityId::Awj | IdentityId::Jg5c | IdentityId::Jg5d => {
            integrals::closed(id, &args)?
        }
        _ => delegated::closed(id, &args)?,
    };
    crate::numerics::ensure_finite(v, id.as_str())
}

/// The series, quadrature or expansion side.
pub fn series_side(id: IdentityId, params: &Params, trunc: &Truncation) -> Result<SideValue> {
    let args = params.resolve(id)?;
    let side = match id {
        IdentityId::GfLag
        | IdentityId::GfMp
        | IdentityId::GfMei
        | IdentityId::Ser1
        | IdentityId::Ser2
        | IdentityId::Qser2 => series::series(id, &args, trunc)?,
        IdentityId::Lem41 | IdentityId::Awj | IdentityId::Jg5c | IdentityId::Jg5d => {
            integrals::quadrature(id, &args, trunc)?
        }
        _ => delegated::series(id, &args, trunc)?,
    };
    crate::numerics::ensure_finite(side.value, id.as_str())?;
    Ok(side)
}

/// Evaluates both sides with default truncation and compares them.
pub fn check_identity(id: IdentityId, params: &Params, tol: f64) -> Result<CheckReport> {
    check_identity_with(id, params, tol, &Truncation::default())
}

pub fn check_identity_with(
    id: IdentityId,
    params: &Params,
    tol: f64,
    trunc: &Truncation,
) -> Result<CheckReport> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if id == IdentityId::Expj2 {
        // one matrix exponential serves both sides
        let args = params.resolve(id)?;
        let (lhs, rhs) = delegated::expj2_worst_entry(&args)?;
        return Ok(CheckReport::from_sides(id, params, lhs, rhs, tol));
    }
    let rhs = closed_form(id, params)?;
    let lhs = series_side(id, params, trunc)?;
    Ok(CheckReport::from_sides(id, params, lhs, rhs, tol))
}

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{check_identity_with, CheckReport, IdentityId, Params, Truncation};
use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// Built-in parameter grid for an identity, in the text format read by
/// [`parse_grid`].
pub fn default_grid(id: IdentityId) -> &'static str {
    match id {
        IdentityId::GfLag => include_str!("../../grids/gf-lag.grid"),
        IdentityId::GfMp => include_str!("../../grids/gf-mp.grid"),
        IdentityId::GfMei => include_str!("../../grids/gf-mei.grid"),
        IdentityId::Ser1 => include_str!("../../grids/ser1.grid"),
        IdentityId::Ser2 => include_str!("../../grids/ser2.grid"),
        IdentityId::Qser2 => include_str!("../../grids/qser2.grid"),
        IdentityId::Lem41 => include_str!("../../grids/lem41.grid"),
        IdentityId::Awj => include_str!("../../grids/awj.grid"),
        IdentityId::Jg5c => include_str!("../../grids/jg5c.grid"),
        IdentityId::Jg5d => include_str!("../../grids/jg5d.grid"),
        IdentityId::ConvX2 => include_str!("../../grids/conv-x2.grid"),
        IdentityId::ConvXphi => include_str!("../../grids/conv-xphi.grid"),
        IdentityId::ConvXc => include_str!("../../grids/conv-xc.grid"),
        IdentityId::Qexp => include_str!("../../grids/qexp.grid"),
        IdentityId::Expj2 => include_str!("../../grids/expj2.grid"),
    }
}

/// One parameter tuple per line as `key=value` pairs; `#` starts a comment.
pub fn parse_grid(text: &str) -> Result<Vec<Params>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((i + 1, body))
        })
        .map(|(lineno, body)| {
            Params::parse(body).map_err(|e| Error::domain(format!("grid line {lineno}: {e}")))
        })
        .collect()
}

/// `count` pseudo-random points drawn from a conservative interior of the
/// identity's domain. The same `seed` always yields the same grid.
pub fn random_grid(id: IdentityId, count: usize, seed: u64) -> Vec<Params> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..count).map(|_| random_point(id, &mut rng)).collect()
}

fn random_point(id: IdentityId, rng: &mut ChaCha8Rng) -> Params {
    let mut p = Params::new();
    let u = |p: &mut Params, rng: &mut ChaCha8Rng, name: &str, lo: f64, hi: f64| {
        p.insert(name, rng_round(rng.gen_range(lo..hi)))
    };
    match id {
        IdentityId::GfLag => {
            u(&mut p, rng, "k", 0.3, 3.0);
            u(&mut p, rng, "x", 0.0, 5.0);
        }
        IdentityId::GfMp => {
            u(&mut p, rng, "k", 0.3, 3.0);
            u(&mut p, rng, "x", -3.0, 3.0);
            u(&mut p, rng, "phi", 0.2, 2.9);
        }
        IdentityId::GfMei => {
            u(&mut p, rng, "k", 0.3, 3.0);
            u(&mut p, rng, "c", 0.2, 0.9);
        }
        IdentityId::Ser1 => {
            u(&mut p, rng, "a", -1.0, 2.0);
            u(&mut p, rng, "b", 0.3, 3.0);
            u(&mut p, rng, "x", 0.0, 0.5);
            u(&mut p, rng, "y", 0.0, 0.5);
        }
        IdentityId::Ser2 => {
            u(&mut p, rng, "a", -1.0, 2.0);
            u(&mut p, rng, "b", -1.0, 2.0);
            u(&mut p, rng, "c", 0.3, 3.0);
            u(&mut p, rng, "x", 0.0, 0.5);
            u(&mut p, rng, "y", 0.0, 0.5);
        }
        IdentityId::Qser2 => {
            u(&mut p, rng, "q", 0.1, 0.6);
            u(&mut p, rng, "f", -0.6, 0.6);
        }
        IdentityId::Lem41 => {
            u(&mut p, rng, "a", -0.5, 2.0);
            u(&mut p, rng, "b", -0.5, 2.0);
            u(&mut p, rng, "c", -2.0, 2.0);
        }
        IdentityId::Awj => u(&mut p, rng, "q", 0.2, 0.5),
        IdentityId::Jg5c => {
            u(&mut p, rng, "a", -0.5, 2.0);
            u(&mut p, rng, "rho", 1.05, 3.0);
        }
        IdentityId::Jg5d => {
            // near λ = 1 the result is far smaller than the integrand, so
            // stay in 0.3..0.9 or 1.1..2
            if rng.gen::<bool>() {
                u(&mut p, rng, "lam", 0.3, 0.9);
            } else {
                u(&mut p, rng, "lam", 1.1, 2.0);
            }
        }
        IdentityId::ConvX2 | IdentityId::ConvXphi | IdentityId::ConvXc => {
            u(&mut p, rng, "k1", 0.5, 2.0);
            u(&mut p, rng, "k2", 0.5, 2.0);
            match id {
                IdentityId::ConvX2 => {
                    u(&mut p, rng, "x1", 0.0, 3.0);
                    u(&mut p, rng, "x2", 0.0, 3.0);
                }
                IdentityId::ConvXphi => {
                    u(&mut p, rng, "x1", -2.0, 2.0);
                    u(&mut p, rng, "x2", -2.0, 2.0);
                    u(&mut p, rng, "phi", 0.3, 2.8);
                }
                _ => u(&mut p, rng, "c", 0.2, 0.8),
            }
        }
        IdentityId::Qexp => {
            u(&mut p, rng, "k1", 0.5, 1.5);
            u(&mut p, rng, "k2", 0.5, 1.5);
            u(&mut p, rng, "q", 0.2, 0.5);
            u(&mut p, rng, "s", 0.6, 1.5);
            u(&mut p, rng, "theta1", 0.0, PI);
            u(&mut p, rng, "theta2", 0.0, PI);
        }
        IdentityId::Expj2 => {
            u(&mut p, rng, "k", 0.5, 2.0);
            u(&mut p, rng, "c", 0.1, 0.5);
            p.insert("dim", 200.0);
        }
    }
    let mut nat =
        |p: &mut Params, name: &str, hi: usize| p.insert(name, rng.gen_range(0..=hi) as f64);
    match id {
        IdentityId::GfMei => nat(&mut p, "x", 10),
        IdentityId::Lem41 => nat(&mut p, "j", 6),
        IdentityId::Jg5c | IdentityId::Jg5d => {
            nat(&mut p, "m", 6);
            nat(&mut p, "n", 6);
        }
        IdentityId::ConvX2 | IdentityId::ConvXphi | IdentityId::ConvXc => {
            nat(&mut p, "j", 5);
            nat(&mut p, "n", 5);
            if id == IdentityId::ConvXc {
                nat(&mut p, "x1", 6);
                nat(&mut p, "x2", 6);
            }
        }
        IdentityId::Expj2 => nat(&mut p, "m", 5),
        _ => {}
    }
    let mut disk = |p: &mut Params, name: &str, r: f64| {
        let z = Scalar::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
        p.insert(name, rng_round(z.re));
        p.insert(&format!("{name}_im"), rng_round(z.im));
    };
    match id {
        IdentityId::Qser2 => {
            for name in ["a", "b", "c", "d"] {
                disk(&mut p, name, 0.6);
            }
            disk(&mut p, "z", 0.4);
        }
        IdentityId::Awj => {
            // real parameters keep the Askey-Wilson weight real
            for name in ["a", "b", "c", "d", "f", "g"] {
                let v = rng.gen_range(0.1..0.6) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
                p.insert(name, rng_round(v));
            }
        }
        IdentityId::Qexp => {
            disk(&mut p, "z1", 0.25);
            disk(&mut p, "z2", 0.25);
        }
        IdentityId::GfLag
        | IdentityId::GfMp
        | IdentityId::GfMei
        | IdentityId::Ser1
        | IdentityId::Ser2 => disk(&mut p, "z", 0.5),
        _ => {}
    }
    p
}

/// Rounds to 12 significant digits so grids print and re-parse exactly.
fn rng_round(v: f64) -> f64 {
    format!("{v:.12e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GridSummary {
    pub total: usize,
    pub passed: usize,
    /// Evaluated, but the residual exceeded the tolerance.
    pub failed: usize,
    /// Points outside the identity's parameter domain.
    pub domain_errors: usize,
    /// Points whose evaluation failed numerically.
    pub numeric_errors: usize,
    pub max_rel_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub identity: String,
    pub reports: Vec<CheckReport>,
    pub summary: GridSummary,
}

impl GridReport {
    /// True when every point passed; vacuously true for an empty grid.
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}

/// Checks every point in parallel; reports keep the order of `points`.
pub fn grid_check(id: IdentityId, points: &[Params], tol: f64, trunc: &Truncation) -> GridReport {
    let outcomes: Vec<(CheckReport, Option<bool>)> = points
        .par_iter()
        .map(|p| match check_identity_with(id, p, tol, trunc) {
            Ok(r) => (r, None),
            Err(e) => (
                CheckReport::failed(id, p, tol, &e),
                Some(e.is_domain_like()),
            ),
        })
        .collect();
    let mut summary = GridSummary {
        total: outcomes.len(),
        ..GridSummary::default()
    };
    let mut reports = Vec::with_capacity(outcomes.len());
    for (r, err) in outcomes {
        match err {
            Some(true) => summary.domain_errors += 1,
            Some(false) => summary.numeric_errors += 1,
            None if r.pass => summary.passed += 1,
            None => summary.failed += 1,
        }
        if err.is_none() {
            summary.max_rel_residual = summary.max_rel_residual.max(r.rel_residual);
        }
        reports.push(r);
    }
    GridReport {
        identity: id.to_string(),
        reports,
        summary,
    }
}

use crate::error::{Error, Result};

/// Largest order accepted by the eigensolver.
pub const MAX_ORDER: usize = 5000;

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal (`offdiag[i]` couples rows `i` and `i + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagSym {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagSym {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::domain("tridiagonal matrix needs at least one row"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::domain(format!(
                "off-diagonal length {} does not match order {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::range("tridiagonal matrix has a non-finite entry"));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Computes `M v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(v.len(), n, "vector length must equal matrix order");
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Infinity norm, which bounds the spectral norm from above.
    pub fn norm_inf(&self) -> f64 {
        let n = self.order();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.offdiag[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.offdiag[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }
}

/// Spectral decomposition; `vectors[i]` is the unit eigenvector for
/// `values[i]`, and `values` is ascending.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

pub fn tridiag_eigen(m: &TridiagSym) -> Result<Eigen> {
    let (values, vectors) = implicit_ql(m, true)?;
    Ok(Eigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only, ascending. Skips the rotation accumulation, so it is
/// O(N²) instead of O(N³).
pub fn tridiag_eigenvalues(m: &TridiagSym) -> Result<Vec<f64>> {
    implicit_ql(m, false).map(|(v, _)| v)
}

/// Eigenvalues plus, when requested, eigenvectors as columns.
type QlOutput = (Vec<f64>, Option<Vec<Vec<f64>>>);

// Implicit QL with Wilkinson-style shifts (the tql2 scheme). Columns of
// the accumulated rotation are stored contiguously as `z[col][row]`.
fn implicit_ql(m: &TridiagSym, want_vectors: bool) -> Result<QlOutput> {
    let n = m.order();
    if n > MAX_ORDER {
        return Err(Error::domain(format!(
            "tridiagonal order {n} exceeds the limit {MAX_ORDER}"
        )));
    }
    let mut d = m.diag.clone();
    let mut e = m.offdiag.clone();
    e.push(0.0);
    let mut z: Vec<Vec<f64>> = if want_vectors {
        (0..n)
            .map(|i| {
                let mut c = vec![0.0; n];
                c[i] = 1.0;
                c
            })
            .collect()
    } else {
        Vec::new()
    };

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut mm = l;
        while mm < n && e[mm].abs() > eps * tst1 {
            mm += 1;
        }
        if mm > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::Internal(format!(
                        "tridiagonal QL failed to converge at index {l}"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[mm];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..mm).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        let (left, right) = z.split_at_mut(i + 1);
                        let zi = &mut left[i];
                        let zi1 = &mut right[0];
                        for k in 0..n {
                            let t = zi1[k];
                            zi1[k] = s * zi[k] + c * t;
                            zi[k] = c * zi[k] - s * t;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = want_vectors.then(|| {
        order
            .iter()
            .map(|&i| {
                let mut v = std::mem::take(&mut z[i]);
                // Fix the sign so the largest-magnitude entry is positive.
                let big = v
                    .iter()
                    .copied()
                    .fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
                if big < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                v
            })
            .collect()
    });
    Ok((values, vectors))
}

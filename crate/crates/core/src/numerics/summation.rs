use num_complex::Complex64;

use super::Scalar;

/// Neumaier-compensated accumulator for complex terms.
///
/// Also tracks `Σ|t|`, so callers can report how much cancellation a sum
/// suffered (`cancellation()` is 1 for same-sign terms).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum_re: f64,
    comp_re: f64,
    sum_im: f64,
    comp_im: f64,
    abs_total: f64,
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, t: Scalar) {
        neumaier(&mut self.sum_re, &mut self.comp_re, t.re);
        neumaier(&mut self.sum_im, &mut self.comp_im, t.im);
        self.abs_total += t.norm();
    }

    #[inline]
    pub fn add_real(&mut self, t: f64) {
        neumaier(&mut self.sum_re, &mut self.comp_re, t);
        self.abs_total += t.abs();
    }

    pub fn value(&self) -> Scalar {
        Complex64::new(self.sum_re + self.comp_re, self.sum_im + self.comp_im)
    }

    pub fn abs_total(&self) -> f64 {
        self.abs_total
    }

    /// `Σ|t| / |Σt|`; infinite when the sum cancels to zero exactly.
    pub fn cancellation(&self) -> f64 {
        let v = self.value().norm();
        if self.abs_total == 0.0 {
            1.0
        } else if v == 0.0 {
            f64::INFINITY
        } else {
            self.abs_total / v
        }
    }
}

impl Extend<Scalar> for CompensatedSum {
    fn extend<T: IntoIterator<Item = Scalar>>(&mut self, iter: T) {
        for t in iter {
            self.add(t);
        }
    }
}

impl FromIterator<Scalar> for CompensatedSum {
    fn from_iter<T: IntoIterator<Item = Scalar>>(iter: T) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(iter);
        s
    }
}

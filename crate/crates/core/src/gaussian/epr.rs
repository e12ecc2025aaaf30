//! EPR variables of a mode pair.
//!
//! The four joint combinations
//!   sum_x  = (x_a + x_b)/√2,   diff_p = (−p_a + p_b)/√2,
//!   diff_x = (x_a − x_b)/√2,   sum_p  = (p_a + p_b)/√2
//! package the content of the complex operators a† + b = sum_x + i·diff_p
//! and a − b† = diff_x + i·sum_p. The pair (sum_x, diff_p) commutes and can
//! be measured jointly; a two-mode squeezer rescales it by e⁻ʳ and the
//! conjugate pair (diff_x, sum_p) by eʳ.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gaussian::state::GaussianState;
use crate::scalar::{conv, Scalar};

/// Values of the four EPR combinations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EprVariables<T> {
    pub sum_x: T,
    pub diff_p: T,
    pub diff_x: T,
    pub sum_p: T,
}

impl<T: Scalar> EprVariables<T> {
    /// Maps quadratures (x_a, p_a, x_b, p_b) to EPR values.
    pub fn from_quadratures(xa: T, pa: T, xb: T, pb: T) -> Self {
        let s = conv::<T>(0.5).sqrt();
        Self {
            sum_x: (xa + xb) * s,
            diff_p: (pb - pa) * s,
            diff_x: (xa - xb) * s,
            sum_p: (pa + pb) * s,
        }
    }

    /// Inverse map back to (x_a, p_a, x_b, p_b).
    pub fn to_quadratures(&self) -> (T, T, T, T) {
        let s = conv::<T>(0.5).sqrt();
        (
            (self.sum_x + self.diff_x) * s,
            (self.sum_p - self.diff_p) * s,
            (self.sum_x - self.diff_x) * s,
            (self.sum_p + self.diff_p) * s,
        )
    }
}

/// Phase-space row vector of one EPR observable, for use as a measurement
/// row or in moment computations.
pub(crate) fn epr_row<T: Scalar>(
    modes: usize,
    mode_a: usize,
    mode_b: usize,
    which: EprObservable,
) -> DVector<T> {
    let s = conv::<T>(0.5).sqrt();
    let mut row = DVector::zeros(2 * modes);
    let (xa, pa, xb, pb) = (2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1);
    match which {
        EprObservable::SumX => {
            row[xa] = s;
            row[xb] = s;
        }
        EprObservable::DiffP => {
            row[pa] = -s;
            row[pb] = s;
        }
        EprObservable::DiffX => {
            row[xa] = s;
            row[xb] = -s;
        }
        EprObservable::SumP => {
            row[pa] = s;
            row[pb] = s;
        }
    }
    row
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EprObservable {
    SumX,
    DiffP,
    DiffX,
    SumP,
}

impl<T: Scalar> GaussianState<T> {
    /// Mean values of the four EPR variables of a mode pair.
    pub fn epr_means(&self, mode_a: usize, mode_b: usize) -> Result<EprVariables<T>> {
        let a = self.mode_mean(mode_a)?;
        let b = self.mode_mean(mode_b)?;
        if mode_a == mode_b {
            return Err(crate::error::Error::DuplicateMode(mode_a));
        }
        Ok(EprVariables::from_quadratures(a.x, a.y, b.x, b.y))
    }

    /// Variance of one EPR observable (used in tests and reports).
    pub fn epr_variance_sum_x(&self, mode_a: usize, mode_b: usize) -> Result<T> {
        self.check_pair(mode_a, mode_b)?;
        let row = epr_row::<T>(self.num_modes(), mode_a, mode_b, EprObservable::SumX);
        Ok((row.transpose() * self.cov() * &row)[(0, 0)])
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.mode_mean(a)?;
        self.mode_mean(b)?;
        if a == b {
            return Err(crate::error::Error::DuplicateMode(a));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn epr_roundtrip_is_identity() {
        let quads = [0.3, -1.2, 2.5, 0.01];
        let epr = EprVariables::<f64>::from_quadratures(quads[0], quads[1], quads[2], quads[3]);
        let (xa, pa, xb, pb) = epr.to_quadratures();
        assert_abs_diff_eq!(xa, quads[0], epsilon = 1e-12);
        assert_abs_diff_eq!(pa, quads[1], epsilon = 1e-12);
        assert_abs_diff_eq!(xb, quads[2], epsilon = 1e-12);
        assert_abs_diff_eq!(pb, quads[3], epsilon = 1e-12);
    }

    #[test]
    fn complex_operator_decomposition() {
        // a† + b has real part sum_x and imaginary part diff_p
        let epr = EprVariables::<f64>::from_quadratures(1.0, 2.0, 3.0, 4.0);
        let s = 1.0 / 2f64.sqrt();
        assert_abs_diff_eq!(epr.sum_x, (1.0 + 3.0) * s, epsilon = 1e-15);
        assert_abs_diff_eq!(epr.diff_p, (4.0 - 2.0) * s, epsilon = 1e-15);
        assert_abs_diff_eq!(epr.diff_x, (1.0 - 3.0) * s, epsilon = 1e-15);
        assert_abs_diff_eq!(epr.sum_p, (2.0 + 4.0) * s, epsilon = 1e-15);
    }
}

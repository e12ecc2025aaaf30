//! Generalized noisy linear measurement of Gaussian states.
//!
//! Every measurement in the toolkit is a thin wrapper around one routine:
//! observe y = H r + w with w ~ N(0, R), then condition the state on y.
//!
//! - The outcome is drawn from N(H m, H V Hᵀ + R).
//! - The posterior is the Schur-complement update
//!     m' = m + V Hᵀ (H V Hᵀ + R)⁻¹ (y − H m)
//!     V' = V − V Hᵀ (H V Hᵀ + R)⁻¹ H V.
//! - For a *nondestructive* quadrature measurement, the meter that realizes
//!   the finite resolution also kicks the conjugate quadrature: measuring
//!   the observable hᵀr through noise σ² adds (1/4σ²)·(Ωh)(Ωh)ᵀ to the
//!   covariance. The kick directions are symplectically orthogonal to the
//!   measured rows (hᵀΩh' = 0 for commuting observables), so adding the
//!   kick before the Schur update leaves the gain and the outcome law
//!   untouched while keeping the posterior physical — on a single mode this
//!   reduces exactly to the scalar posterior recursions for the mean and
//!   variance of the measured quadrature.
//! - A *destructive* measurement (projection onto coherent states) carries
//!   no kick; the measured mode is dropped by the caller afterwards.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::gaussian::GaussianState;
use crate::scalar::{conv, Scalar};

/// A set of simultaneously measured linear observables.
#[derive(Debug, Clone)]
pub struct Observation<T: Scalar> {
    /// k×2M matrix whose rows are the measured phase-space observables.
    rows: DMatrix<T>,
    /// k×k measurement-noise covariance.
    noise: DMatrix<T>,
    /// Whether the measured modes persist (meter kick applies).
    nondestructive: bool,
}

impl<T: Scalar> Observation<T> {
    /// Nondestructive measurement of commuting quadrature observables, each
    /// through independent Gaussian noise of variance `sigma_sq`.
    pub fn quadratures(rows: DMatrix<T>, sigma_sq: T) -> Result<Self> {
        if sigma_sq <= T::zero() || !crate::scalar::to_f64(sigma_sq).is_finite() {
            return Err(Error::InvalidResolution(crate::scalar::to_f64(sigma_sq)));
        }
        let k = rows.nrows();
        Ok(Self {
            noise: DMatrix::identity(k, k) * sigma_sq,
            rows,
            nondestructive: true,
        })
    }

    /// Destructive projection onto the coherent states of one mode: both
    /// quadratures observed through the half-quantum heterodyne noise.
    pub fn dyne_mode(modes: usize, mode: usize) -> Result<Self> {
        if mode >= modes {
            return Err(Error::ModeOutOfRange { mode, modes });
        }
        let mut rows = DMatrix::zeros(2, 2 * modes);
        rows[(0, 2 * mode)] = T::one();
        rows[(1, 2 * mode + 1)] = T::one();
        Ok(Self {
            rows,
            noise: DMatrix::identity(2, 2) * conv::<T>(0.5),
            nondestructive: false,
        })
    }

    pub fn rows(&self) -> &DMatrix<T> {
        &self.rows
    }

    /// Mean and covariance of the outcome distribution N(Hm, HVHᵀ + R).
    pub fn outcome_law(&self, state: &GaussianState<T>) -> (DVector<T>, DMatrix<T>) {
        let mean = &self.rows * state.mean();
        let cov = &self.rows * state.cov() * self.rows.transpose() + &self.noise;
        (mean, cov)
    }

    /// Draws an outcome from the outcome law.
    pub fn sample<R: Rng + ?Sized>(&self, state: &GaussianState<T>, rng: &mut R) -> DVector<T>
    where
        StandardNormal: Distribution<T>,
    {
        let (mean, cov) = self.outcome_law(state);
        let k = mean.len();
        let chol = cov
            .clone()
            .cholesky()
            .expect("outcome covariance is positive definite for sigma^2 > 0");
        let w = DVector::from_iterator(k, (0..k).map(|_| StandardNormal.sample(rng)));
        mean + chol.l() * w
    }

    /// Exact conditional state given the observed value `y`.
    pub fn condition(&self, state: &GaussianState<T>, y: &DVector<T>) -> Result<GaussianState<T>> {
        if self.rows.ncols() != state.mean().len() {
            return Err(Error::DimensionMismatch(format!(
                "observation rows act on dimension {}, state has {}",
                self.rows.ncols(),
                state.mean().len()
            )));
        }
        if y.len() != self.rows.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "outcome has length {}, observation has {} rows",
                y.len(),
                self.rows.nrows()
            )));
        }
        let mut v = state.cov().clone();
        if self.nondestructive {
            // meter kick on the conjugate of each measured row
            let omega = crate::gaussian::symplectic_form::<T>(state.num_modes());
            for i in 0..self.rows.nrows() {
                let h = self.rows.row(i).transpose();
                let kick = &omega * h;
                let strength = (conv::<T>(4.0) * self.noise[(i, i)]).recip();
                v.ger(strength, &kick, &kick, T::one());
            }
        }
        // gain uses the kicked covariance: the kick directions are
        // symplectically orthogonal to the rows, so V~ H^T = V H^T
        let vht = &v * self.rows.transpose();
        let s = &self.rows * &vht + &self.noise;
        let s_inv = s.clone().try_inverse().ok_or_else(|| {
            Error::DimensionMismatch("singular outcome covariance".to_string())
        })?;
        let gain = &vht * &s_inv;
        let innovation = y - &self.rows * state.mean();
        let mean = state.mean() + &gain * innovation;
        let cov = &v - &gain * vht.transpose();
        Ok(GaussianState::from_parts_unchecked(mean, cov))
    }
}

//! Moments of quadratic observables on Gaussian states.
//!
//! For Q = ½ rᵀG r with G symmetric (such a form equals its symmetric
//! ordering, since the commutator part traces against antisymmetric Ω):
//!
//!   ⟨Q⟩   = ½ Tr(G V) + ½ mᵀG m
//!   Var Q = ½ Tr(G V G V) + ⅛ Tr(G Ω G Ω) + (G m)ᵀ V (G m)
//!
//! The ⅛ Tr(GΩGΩ) term is the quantum correction that makes photon-number
//! variances exact (zero on vacuum, n̄(n̄+1) on thermal states).

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gaussian::state::GaussianState;
use crate::gaussian::symplectic::symplectic_form;
use crate::scalar::{conv, Scalar};

/// Mean and variance of ½ rᵀ G r for symmetric G.
pub fn quadratic_form_moments<T: Scalar>(state: &GaussianState<T>, g: &DMatrix<T>) -> (T, T) {
    let v = state.cov();
    let m = state.mean();
    let half = conv::<T>(0.5);
    let gv = g * v;
    let mean = gv.trace() * half + (m.transpose() * g * m)[(0, 0)] * half;
    let omega = symplectic_form::<T>(state.num_modes());
    let go = g * &omega;
    let var = (&gv * &gv).trace() * half
        + (&go * &go).trace() * conv::<T>(0.125)
        + {
            let gm = g * m;
            (gm.transpose() * v * &gm)[(0, 0)]
        };
    (mean, var)
}

/// Photon-difference and total-photon moments of a two-mode state:
/// the differenced photocurrent n_a − n_b = 2J₃ and the symmetric
/// combination ½(a†a + bb†) = K₀ = ½(n_a + n_b + 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeMoments<T> {
    /// ⟨2J₃⟩ = ⟨n_a − n_b⟩
    pub j3_mean_x2: T,
    /// Var(2J₃)
    pub j3_var_x2: T,
    /// ⟨K₀⟩ = ½⟨n_a + n_b⟩ + ½
    pub k0_mean: T,
}

/// Computes the moments above from the Gaussian first and second moments.
/// Requires exactly two modes.
pub fn quadratic_moments<T: Scalar>(state: &GaussianState<T>) -> Result<TwoModeMoments<T>> {
    if state.num_modes() != 2 {
        return Err(Error::NotTwoMode(state.num_modes()));
    }
    // 2J3 = n_a - n_b = 1/2 r^T G3 r with G3 = diag(1, 1, -1, -1)
    let mut g3 = DMatrix::zeros(4, 4);
    g3[(0, 0)] = T::one();
    g3[(1, 1)] = T::one();
    g3[(2, 2)] = -T::one();
    g3[(3, 3)] = -T::one();
    let (j3_mean, j3_var) = quadratic_form_moments(state, &g3);
    // K0 = 1/4 r^T r, i.e. G = 1/2 I and no additive constant
    let gk = DMatrix::identity(4, 4) * conv::<T>(0.5);
    let (k0_mean, _) = quadratic_form_moments(state, &gk);
    Ok(TwoModeMoments {
        j3_mean_x2: j3_mean,
        j3_var_x2: j3_var,
        k0_mean,
    })
}

//! Truncated Fock-space state vectors and moment extraction.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::operators::{annihilator, embed};

/// Tail mass above which a truncated state is rejected for comparisons.
pub const TAIL_TOL: f64 = 1e-8;

/// Complex amplitude vector over the truncated product basis
/// |n₁, …, n_modes⟩, first mode slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    modes: usize,
    cutoff: usize,
    amplitudes: DVector<Complex64>,
}

impl FockState {
    pub fn from_amplitudes(modes: usize, cutoff: usize, amplitudes: DVector<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), (cutoff + 1).pow(modes as u32));
        Self {
            modes,
            cutoff,
            amplitudes,
        }
    }

    pub fn vacuum(modes: usize, cutoff: usize) -> Self {
        let dim = (cutoff + 1).pow(modes as u32);
        let mut amp = DVector::zeros(dim);
        amp[0] = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(modes, cutoff, amp)
    }

    /// Product number state |n₁, …⟩.
    pub fn number(cutoff: usize, ns: &[usize]) -> Result<Self> {
        for &n in ns {
            if n > cutoff {
                return Err(Error::DimensionMismatch(format!(
                    "photon number {n} exceeds cutoff {cutoff}"
                )));
            }
        }
        let modes = ns.len();
        let dim = (cutoff + 1).pow(modes as u32);
        let mut amp = DVector::zeros(dim);
        let mut idx = 0usize;
        for &n in ns {
            idx = idx * (cutoff + 1) + n;
        }
        amp[idx] = Complex64::new(1.0, 0.0);
        Ok(Self::from_amplitudes(modes, cutoff, amp))
    }

    /// Single-mode coherent state |α⟩ from the closed-form amplitudes
    /// e^{−|α|²/2} αⁿ/√n!.
    pub fn coherent(cutoff: usize, alpha: Complex64) -> Self {
        let dim = cutoff + 1;
        let mut amp = DVector::zeros(dim);
        let norm = (-0.5 * alpha.norm_sqr()).exp();
        let mut term = Complex64::new(norm, 0.0);
        amp[0] = term;
        for n in 1..dim {
            term *= alpha / Complex64::new((n as f64).sqrt(), 0.0);
            amp[n] = term;
        }
        Self::from_amplitudes(1, cutoff, amp)
    }

    /// Two-mode squeezed vacuum from its Schmidt form
    /// Σₙ (−tanh r)ⁿ |n, n⟩ / cosh r.
    pub fn two_mode_squeezed_vacuum(cutoff: usize, r: f64) -> Self {
        let dim = cutoff + 1;
        let mut amp = DVector::zeros(dim * dim);
        let t = -r.tanh();
        let mut coeff = 1.0 / r.cosh();
        for n in 0..dim {
            amp[n * dim + n] = Complex64::new(coeff, 0.0);
            coeff *= t;
        }
        Self::from_amplitudes(2, cutoff, amp)
    }

    /// Tensor product self ⊗ other.
    pub fn product(&self, other: &FockState) -> Result<Self> {
        if self.cutoff != other.cutoff {
            return Err(Error::DimensionMismatch(format!(
                "cutoff mismatch: {} vs {}",
                self.cutoff, other.cutoff
            )));
        }
        Ok(Self::from_amplitudes(
            self.modes + other.modes,
            self.cutoff,
            self.amplitudes.kronecker(&other.amplitudes),
        ))
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self::from_amplitudes(self.modes, self.cutoff, &self.amplitudes / Complex64::new(n, 0.0))
    }

    pub fn inner(&self, other: &FockState) -> Complex64 {
        (self.amplitudes.adjoint() * &other.amplitudes)[(0, 0)]
    }

    /// |⟨self|other⟩|² for normalized states.
    pub fn fidelity(&self, other: &FockState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Amplitude of the basis state |n₁, …⟩.
    pub fn amplitude(&self, ns: &[usize]) -> Complex64 {
        let mut idx = 0usize;
        for &n in ns {
            idx = idx * (self.cutoff + 1) + n;
        }
        self.amplitudes[idx]
    }

    /// Probability mass on basis states with any mode in its top two
    /// photon levels.
    pub fn tail_mass(&self) -> f64 {
        let base = self.cutoff + 1;
        let mut mass = 0.0;
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let mut rest = idx;
            let mut in_tail = false;
            for _ in 0..self.modes {
                let n = rest % base;
                rest /= base;
                if n + 1 >= self.cutoff {
                    in_tail = true;
                    break;
                }
            }
            if in_tail {
                mass += amp.norm_sqr();
            }
        }
        mass
    }

    /// Projects one mode onto the coherent state ⟨α| and returns the
    /// unnormalized weight together with the normalized conditional state
    /// of the remaining modes.
    pub fn project_mode_on_coherent(
        &self,
        mode: usize,
        alpha: Complex64,
    ) -> Result<(f64, FockState)> {
        if mode >= self.modes {
            return Err(Error::ModeOutOfRange {
                mode,
                modes: self.modes,
            });
        }
        let base = self.cutoff + 1;
        let coh = FockState::coherent(self.cutoff, alpha);
        let rest_modes = self.modes - 1;
        let rest_dim = base.pow(rest_modes as u32);
        let mut out = DVector::zeros(rest_dim);
        // strides: mode index m has stride base^(modes-1-m)
        let stride = base.pow((self.modes - 1 - mode) as u32);
        for rest_idx in 0..rest_dim {
            // interleave rest_idx around the projected mode
            let high = rest_idx / stride;
            let low = rest_idx % stride;
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..base {
                let full = (high * base + n) * stride + low;
                acc += coh.amplitudes[n].conj() * self.amplitudes[full];
            }
            out[rest_idx] = acc;
        }
        let weight = out.norm().powi(2);
        let state = FockState::from_amplitudes(rest_modes, self.cutoff, out);
        Ok((weight, state.normalized()))
    }
}

/// Quadrature mean vector and covariance matrix of a Fock state, computed
/// from ladder-operator expectations; the bridge between the oracle and the
/// Gaussian engine. Fails if the truncation tail is too heavy for the
/// moments to be trustworthy.
pub fn oracle_moments(state: &FockState) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let tail = state.tail_mass();
    if tail > TAIL_TOL {
        return Err(Error::ExcessiveTailMass {
            mass: tail,
            tol: TAIL_TOL,
        });
    }
    let modes = state.modes();
    let single = annihilator(state.cutoff());
    let psi = state.amplitudes();
    // a_j |psi> and a_j^dagger |psi> for every mode
    let mut a_psi = Vec::with_capacity(modes);
    let mut ad_psi = Vec::with_capacity(modes);
    let mut a_mean = Vec::with_capacity(modes);
    for m in 0..modes {
        let a_full = embed(&single, m, modes);
        a_psi.push(&a_full * psi);
        ad_psi.push(a_full.adjoint() * psi);
        a_mean.push((psi.adjoint() * &a_psi[m])[(0, 0)]);
    }
    let sqrt2 = 2f64.sqrt();
    let mut mean = DVector::zeros(2 * modes);
    for m in 0..modes {
        mean[2 * m] = sqrt2 * a_mean[m].re;
        mean[2 * m + 1] = sqrt2 * a_mean[m].im;
    }
    let mut cov = DMatrix::zeros(2 * modes, 2 * modes);
    for j in 0..modes {
        for k in 0..modes {
            // N_jk = <a_j^dag a_k>, A_jk = <a_j a_k>
            let n_jk = (a_psi[j].adjoint() * &a_psi[k])[(0, 0)];
            let a_jk = (ad_psi[j].adjoint() * &a_psi[k])[(0, 0)];
            let delta = if j == k { 1.0 } else { 0.0 };
            let xx = a_jk.re + n_jk.re + 0.5 * delta
                - mean[2 * j] * mean[2 * k];
            let pp = n_jk.re + 0.5 * delta - a_jk.re
                - mean[2 * j + 1] * mean[2 * k + 1];
            let xp = a_jk.im + n_jk.im - mean[2 * j] * mean[2 * k + 1];
            let px = a_jk.im - n_jk.im - mean[2 * j + 1] * mean[2 * k];
            cov[(2 * j, 2 * k)] = xx;
            cov[(2 * j + 1, 2 * k + 1)] = pp;
            cov[(2 * j, 2 * k + 1)] = xp;
            cov[(2 * j + 1, 2 * k)] = px;
        }
    }
    // analytic symmetry; average away round-off
    for j in 0..2 * modes {
        for k in 0..j {
            let avg = 0.5 * (cov[(j, k)] + cov[(k, j)]);
            cov[(j, k)] = avg;
            cov[(k, j)] = avg;
        }
    }
    Ok((mean, cov))
}

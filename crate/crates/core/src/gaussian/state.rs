//! Gaussian states of M bosonic modes.
//!
//! Convention: ħ = 1, a = (x + ip)/√2, quadratures ordered
//! (x₁, p₁, …, x_M, p_M). Vacuum has zero mean and covariance ½·I, so the
//! quantum noise limit on a quadrature is σ² = 1/2. A covariance matrix is
//! physical when every symplectic eigenvalue is ≥ 1/2.
//!
//! States are immutable values: every operation returns a fresh state, so
//! they can be shared freely across threads.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gaussian::symplectic::{symplectic_form, SymplecticOp};
use crate::scalar::{conv, symmetry_tol, to_f64, validity_slack, Scalar};

/// Mean vector and covariance matrix of a Gaussian state over M modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T: Scalar> {
    mean: DVector<T>,
    cov: DMatrix<T>,
}

impl<T: Scalar> GaussianState<T> {
    /// Vacuum of `modes` modes: zero mean, covariance ½·I.
    pub fn vacuum(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::NoModes);
        }
        Ok(Self {
            mean: DVector::zeros(2 * modes),
            cov: DMatrix::identity(2 * modes, 2 * modes) * conv::<T>(0.5),
        })
    }

    /// Product coherent state with the given complex amplitudes.
    pub fn coherent(amplitudes: &[Complex<T>]) -> Result<Self> {
        let mut state = Self::vacuum(amplitudes.len())?;
        for (mode, &alpha) in amplitudes.iter().enumerate() {
            state = state.displace(mode, alpha)?;
        }
        Ok(state)
    }

    /// Builds a state from raw mean and covariance, enforcing symmetry and
    /// the uncertainty bound.
    pub fn from_parts(mean: DVector<T>, cov: DMatrix<T>) -> Result<Self> {
        if mean.len() % 2 != 0 || mean.len() == 0 {
            return Err(Error::NoModes);
        }
        if cov.nrows() != mean.len() || cov.ncols() != mean.len() {
            return Err(Error::DimensionMismatch(format!(
                "mean has length {}, covariance is {}x{}",
                mean.len(),
                cov.nrows(),
                cov.ncols()
            )));
        }
        let asym = (&cov - cov.transpose())
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()));
        if asym > symmetry_tol::<T>() {
            return Err(Error::AsymmetricCovariance(to_f64(asym)));
        }
        let state = Self::from_parts_unchecked(mean, cov);
        state.validate()?;
        Ok(state)
    }

    /// Internal constructor: symmetrizes the covariance ((C + Cᵀ)/2) to
    /// suppress round-off drift over long measurement sequences, but skips
    /// the O(M³) physicality check.
    pub(crate) fn from_parts_unchecked(mean: DVector<T>, cov: DMatrix<T>) -> Self {
        let half = conv::<T>(0.5);
        let sym = (&cov + cov.transpose()) * half;
        Self { mean, cov: sym }
    }

    pub fn num_modes(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<T> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<T> {
        &self.cov
    }

    /// (x, p) mean of one mode.
    pub fn mode_mean(&self, mode: usize) -> Result<Vector2<T>> {
        self.check_mode(mode)?;
        Ok(Vector2::new(self.mean[2 * mode], self.mean[2 * mode + 1]))
    }

    /// 2×2 covariance block of one mode.
    pub fn mode_cov(&self, mode: usize) -> Result<Matrix2<T>> {
        self.check_mode(mode)?;
        let k = 2 * mode;
        Ok(Matrix2::new(
            self.cov[(k, k)],
            self.cov[(k, k + 1)],
            self.cov[(k + 1, k)],
            self.cov[(k + 1, k + 1)],
        ))
    }

    /// Complex amplitude ⟨a⟩ = (⟨x⟩ + i⟨p⟩)/√2 of one mode.
    pub fn mode_amplitude(&self, mode: usize) -> Result<Complex<T>> {
        let m = self.mode_mean(mode)?;
        let s = conv::<T>(0.5).sqrt();
        Ok(Complex::new(m.x * s, m.y * s))
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.num_modes() {
            return Err(Error::ModeOutOfRange {
                mode,
                modes: self.num_modes(),
            });
        }
        Ok(())
    }

    /// Applies an affine symplectic map: mean ↦ S m + d, cov ↦ S C Sᵀ.
    pub fn apply(&self, op: &SymplecticOp<T>) -> Result<Self> {
        if op.num_modes() != self.num_modes() {
            return Err(Error::DimensionMismatch(format!(
                "op acts on {} modes, state has {}",
                op.num_modes(),
                self.num_modes()
            )));
        }
        let mean = op.matrix() * &self.mean + op.shift();
        let cov = op.matrix() * &self.cov * op.matrix().transpose();
        Ok(Self::from_parts_unchecked(mean, cov))
    }

    /// Displaces one mode by γ = (γ₁ + iγ₂)/√2.
    pub fn displace(&self, mode: usize, gamma: Complex<T>) -> Result<Self> {
        let op = SymplecticOp::displacement(self.num_modes(), mode, gamma)?;
        self.apply(&op)
    }

    /// Single-mode squeeze: on vacuum yields Var(x) = ½e⁻²ʳ, Var(p) = ½e²ʳ.
    pub fn squeeze1(&self, mode: usize, r: T) -> Result<Self> {
        let op = SymplecticOp::single_mode_squeeze(self.num_modes(), mode, r)?;
        self.apply(&op)
    }

    /// Two-mode squeeze; on two-mode vacuum produces the two-mode squeezed
    /// vacuum with EPR variance ½e⁻²ʳ in the de-amplified pair.
    pub fn squeeze2(&self, mode_a: usize, mode_b: usize, r: T) -> Result<Self> {
        let op = SymplecticOp::two_mode_squeeze(self.num_modes(), mode_a, mode_b, r)?;
        self.apply(&op)
    }

    /// 50-50 beamsplitter between two modes.
    pub fn beamsplit(&self, mode_a: usize, mode_b: usize) -> Result<Self> {
        let op = SymplecticOp::beamsplitter(self.num_modes(), mode_a, mode_b)?;
        self.apply(&op)
    }

    /// Phase rotation of one mode by θ.
    pub fn rotate(&self, mode: usize, theta: T) -> Result<Self> {
        let op = SymplecticOp::rotation(self.num_modes(), mode, theta)?;
        self.apply(&op)
    }

    /// Symplectic eigenvalues of the covariance matrix (M values, each ≥ ½
    /// for a physical state). Computed as the moduli of the eigenvalues of
    /// Ω C, which come in ±iν pairs.
    pub fn symplectic_eigenvalues(&self) -> Vec<T> {
        let omega = symplectic_form::<T>(self.num_modes());
        let prod = &omega * &self.cov;
        let mut nus: Vec<T> = prod
            .complex_eigenvalues()
            .iter()
            .map(|c| (c.re * c.re + c.im * c.im).sqrt())
            .collect();
        nus.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // eigenvalues come in ± pairs; keep one representative of each
        nus.into_iter().step_by(2).collect()
    }

    pub fn min_symplectic_eigenvalue(&self) -> T {
        self.symplectic_eigenvalues()
            .into_iter()
            .fold(T::max_value().unwrap(), |a, b| a.min(b))
    }

    /// Checks the uncertainty bound ν_min ≥ ½ (within slack).
    pub fn validate(&self) -> Result<()> {
        let min_nu = self.min_symplectic_eigenvalue();
        if min_nu < conv::<T>(0.5) - validity_slack::<T>() {
            return Err(Error::InvalidState(to_f64(min_nu)));
        }
        Ok(())
    }

    /// det(2C); equals 1 exactly for pure states.
    pub fn purity_det(&self) -> T {
        (self.cov.clone() * conv::<T>(2.0)).determinant()
    }

    /// Drops one mode (its marginal is discarded).
    pub(crate) fn remove_mode(&self, mode: usize) -> Self {
        let keep: Vec<usize> = (0..self.num_modes())
            .filter(|&m| m != mode)
            .flat_map(|m| [2 * m, 2 * m + 1])
            .collect();
        let mean = DVector::from_iterator(keep.len(), keep.iter().map(|&i| self.mean[i]));
        let cov = DMatrix::from_fn(keep.len(), keep.len(), |i, j| self.cov[(keep[i], keep[j])]);
        Self { mean, cov }
    }

    /// Inserts a fresh, uncorrelated mode at `index` with the given
    /// single-mode mean and covariance.
    pub(crate) fn insert_mode(&self, index: usize, mean2: Vector2<T>, cov2: Matrix2<T>) -> Self {
        let new_modes = self.num_modes() + 1;
        let mut mean = DVector::zeros(2 * new_modes);
        let mut cov = DMatrix::zeros(2 * new_modes, 2 * new_modes);
        // map old mode index -> new row offset
        let place = |m: usize| if m < index { 2 * m } else { 2 * (m + 1) };
        for m in 0..self.num_modes() {
            let (src, dst) = (2 * m, place(m));
            mean[dst] = self.mean[src];
            mean[dst + 1] = self.mean[src + 1];
            for m2 in 0..self.num_modes() {
                let (src2, dst2) = (2 * m2, place(m2));
                for a in 0..2 {
                    for b in 0..2 {
                        cov[(dst + a, dst2 + b)] = self.cov[(src + a, src2 + b)];
                    }
                }
            }
        }
        let k = 2 * index;
        mean[k] = mean2.x;
        mean[k + 1] = mean2.y;
        for a in 0..2 {
            for b in 0..2 {
                cov[(k + a, k + b)] = cov2[(a, b)];
            }
        }
        Self { mean, cov }
    }
}

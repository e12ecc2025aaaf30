//! Gaussian quantum-circuit simulation and metrology workbench.
//!
//! The crate is organized around a small set of layers:
//!
//! - [`gaussian`] — exact Gaussian states (mean vector + covariance matrix)
//!   and the affine symplectic maps implementing displacements, squeezers,
//!   beamsplitters and phase rotations, plus quadratic-observable moments.
//! - [`measurement`] — stochastic measurement models: finite-resolution
//!   back-action-evading homodyne, heterodyne and squeezed-basis heterodyne,
//!   joint EPR measurement, vacuum conditioning and photocounting. Each
//!   returns sampled outcomes along with the exact conditional state.
//! - [`fock`] — an independent brute-force oracle on truncated Fock space:
//!   dense operator algebra, matrix exponentials, and exact small-instance
//!   photocount distributions through lossy networks via permanents.
//! - [`protocols`] — executable measurement circuits with estimator
//!   pipelines and statistical verdicts.
//! - [`plon`] — entanglement-based characterization of a lossy passive
//!   linear-optical network, with run-type switching between heterodyne
//!   characterization and randomized photocount sampling.
//!
//! Phase-space convention: ħ = 1, a = (x + ip)/√2, quadratures ordered
//! (x₁, p₁, …), vacuum variance 1/2 per quadrature.
//!
//! The Gaussian engine is generic over the scalar type (`f32`/`f64`);
//! concrete `f64` aliases are provided at the crate root and are what the
//! protocol and oracle layers consume.

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod measurement;
pub mod plon;
pub mod protocols;
pub mod rng;
pub mod scalar;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` instantiation of the Gaussian state used by the protocol layers.
pub type GaussianState64 = gaussian::GaussianState<f64>;
/// `f64` affine symplectic transformation.
pub type SymplecticOp64 = gaussian::SymplecticOp<f64>;
/// `f64` EPR-variable quadruple.
pub type EprVariables64 = gaussian::EprVariables<f64>;

/// `f32` variants, for callers trading precision for footprint.
pub type GaussianState32 = gaussian::GaussianState<f32>;
pub type SymplecticOp32 = gaussian::SymplecticOp<f32>;

//! Scalar abstraction for the phase-space engine.
//!
//! All Gaussian-state math is written against [`Scalar`], so the engine runs
//! at `f32` or `f64`. Tolerances are specified at `f64` precision and scaled
//! by the ratio of machine epsilons for other scalar types.

use nalgebra::RealField;

/// Real scalar backing phase-space vectors and covariance matrices.
pub trait Scalar: RealField + Copy {}

impl<T: RealField + Copy> Scalar for T {}

/// Shorthand for converting an `f64` constant into the working scalar.
#[inline]
pub fn conv<T: Scalar>(x: f64) -> T {
    nalgebra::convert(x)
}

/// Lossy conversion back to `f64`, for diagnostics and error messages.
#[inline]
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    nalgebra::try_convert(x).unwrap_or(f64::NAN)
}

fn eps_ratio<T: Scalar>() -> T {
    T::default_epsilon() / conv::<T>(f64::EPSILON)
}

/// Tolerance for covariance-matrix symmetry checks (1e-12 at `f64`).
pub fn symmetry_tol<T: Scalar>() -> T {
    conv::<T>(1e-12) * eps_ratio()
}

/// Tolerance for the symplectic condition S Ω Sᵀ = Ω (1e-12 at `f64`).
pub fn symplectic_tol<T: Scalar>() -> T {
    conv::<T>(1e-12) * eps_ratio()
}

/// Slack below the vacuum bound allowed for symplectic eigenvalues
/// (1e-10 at `f64`); conditioning can graze the pure-state edge.
pub fn validity_slack<T: Scalar>() -> T {
    conv::<T>(1e-10) * eps_ratio()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_tolerances_are_the_reference_values() {
        assert_eq!(symmetry_tol::<f64>(), 1e-12);
        assert_eq!(symplectic_tol::<f64>(), 1e-12);
        assert_eq!(validity_slack::<f64>(), 1e-10);
    }

    #[test]
    fn f32_tolerances_scale_with_epsilon() {
        let scale = (f32::EPSILON as f64) / f64::EPSILON;
        let expect = (1e-12 * scale) as f32;
        assert!((symmetry_tol::<f32>() - expect).abs() < expect * 1e-3);
    }
}

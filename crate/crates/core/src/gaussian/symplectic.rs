//! Affine symplectic transformations of phase space.
//!
//! A [`SymplecticOp`] is the pair (S, d) acting on quadrature vectors as
//! r ↦ S r + d, with S preserving the symplectic form Ω of the
//! (x₁, p₁, …, x_M, p_M) ordering. Every Gaussian unitary used in the
//! toolkit — displacements, single- and two-mode squeezers, beamsplitters
//! and phase rotations — is represented this way.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{conv, symplectic_tol, to_f64, Scalar};

/// Standard symplectic form for the (x₁, p₁, …) ordering:
/// a 2×2 block `[[0, 1], [-1, 0]]` per mode.
pub fn symplectic_form<T: Scalar>(modes: usize) -> DMatrix<T> {
    let mut omega = DMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        omega[(2 * k, 2 * k + 1)] = T::one();
        omega[(2 * k + 1, 2 * k)] = -T::one();
    }
    omega
}

fn check_mode(mode: usize, modes: usize) -> Result<()> {
    if mode >= modes {
        return Err(Error::ModeOutOfRange { mode, modes });
    }
    Ok(())
}

fn check_pair(a: usize, b: usize, modes: usize) -> Result<()> {
    check_mode(a, modes)?;
    check_mode(b, modes)?;
    if a == b {
        return Err(Error::DuplicateMode(a));
    }
    Ok(())
}

fn check_finite<T: Scalar>(name: &'static str, value: T) -> Result<()> {
    if !to_f64(value).is_finite() {
        return Err(Error::NonFinite {
            name,
            value: to_f64(value),
        });
    }
    Ok(())
}

/// Linear symplectic matrix plus a displacement vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticOp<T: Scalar> {
    matrix: DMatrix<T>,
    shift: DVector<T>,
}

impl<T: Scalar> SymplecticOp<T> {
    /// The identity map on `modes` modes.
    pub fn identity(modes: usize) -> Self {
        Self {
            matrix: DMatrix::identity(2 * modes, 2 * modes),
            shift: DVector::zeros(2 * modes),
        }
    }

    /// Phase-space displacement of one mode by the complex amplitude
    /// γ = (γ₁ + iγ₂)/√2; the (x, p) means shift by (γ₁, γ₂).
    pub fn displacement(modes: usize, mode: usize, gamma: Complex<T>) -> Result<Self> {
        check_mode(mode, modes)?;
        check_finite("gamma.re", gamma.re)?;
        check_finite("gamma.im", gamma.im)?;
        let mut op = Self::identity(modes);
        let sqrt2 = conv::<T>(2.0).sqrt();
        op.shift[2 * mode] = gamma.re * sqrt2;
        op.shift[2 * mode + 1] = gamma.im * sqrt2;
        Ok(op)
    }

    /// Single-mode squeezer: x ↦ x e⁻ʳ, p ↦ p eʳ on the given mode.
    pub fn single_mode_squeeze(modes: usize, mode: usize, r: T) -> Result<Self> {
        check_mode(mode, modes)?;
        check_finite("r", r)?;
        let mut op = Self::identity(modes);
        op.matrix[(2 * mode, 2 * mode)] = (-r).exp();
        op.matrix[(2 * mode + 1, 2 * mode + 1)] = r.exp();
        Ok(op)
    }

    /// Two-mode squeezer with a ↦ a cosh r − b† sinh r, b ↦ b cosh r − a† sinh r.
    ///
    /// De-amplifies the EPR pair (x_a + x_b, −p_a + p_b) by e⁻ʳ and
    /// amplifies the conjugate pair by eʳ.
    pub fn two_mode_squeeze(modes: usize, mode_a: usize, mode_b: usize, r: T) -> Result<Self> {
        check_pair(mode_a, mode_b, modes)?;
        check_finite("r", r)?;
        let (ch, sh) = (r.cosh(), r.sinh());
        let (xa, pa, xb, pb) = (2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1);
        let mut op = Self::identity(modes);
        op.matrix[(xa, xa)] = ch;
        op.matrix[(xa, xb)] = -sh;
        op.matrix[(pa, pa)] = ch;
        op.matrix[(pa, pb)] = sh;
        op.matrix[(xb, xb)] = ch;
        op.matrix[(xb, xa)] = -sh;
        op.matrix[(pb, pb)] = ch;
        op.matrix[(pb, pa)] = sh;
        Ok(op)
    }

    /// 50-50 beamsplitter: a ↦ (a − b)/√2, b ↦ (a + b)/√2.
    pub fn beamsplitter(modes: usize, mode_a: usize, mode_b: usize) -> Result<Self> {
        check_pair(mode_a, mode_b, modes)?;
        let s = conv::<T>(0.5).sqrt();
        let mut op = Self::identity(modes);
        for q in 0..2 {
            let ra = 2 * mode_a + q;
            let rb = 2 * mode_b + q;
            op.matrix[(ra, ra)] = s;
            op.matrix[(ra, rb)] = -s;
            op.matrix[(rb, ra)] = s;
            op.matrix[(rb, rb)] = s;
        }
        Ok(op)
    }

    /// Phase rotation e^{iθ a†a}: the complex amplitude rotates by θ.
    pub fn rotation(modes: usize, mode: usize, theta: T) -> Result<Self> {
        check_mode(mode, modes)?;
        check_finite("theta", theta)?;
        let (c, s) = (theta.cos(), theta.sin());
        let (x, p) = (2 * mode, 2 * mode + 1);
        let mut op = Self::identity(modes);
        op.matrix[(x, x)] = c;
        op.matrix[(x, p)] = -s;
        op.matrix[(p, x)] = s;
        op.matrix[(p, p)] = c;
        Ok(op)
    }

    /// Builds an op from raw parts, verifying the symplectic condition.
    pub fn from_parts(matrix: DMatrix<T>, shift: DVector<T>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols()
            || matrix.nrows() % 2 != 0
            || shift.len() != matrix.nrows()
        {
            return Err(Error::DimensionMismatch(format!(
                "symplectic op wants square even-dimensional matrix with matching shift, got {}x{} and {}",
                matrix.nrows(),
                matrix.ncols(),
                shift.len()
            )));
        }
        let op = Self { matrix, shift };
        op.validate()?;
        Ok(op)
    }

    pub fn num_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn shift(&self) -> &DVector<T> {
        &self.shift
    }

    /// Composition `later ∘ self`: apply `self` first, then `later`.
    pub fn then(&self, later: &Self) -> Self {
        Self {
            matrix: &later.matrix * &self.matrix,
            shift: &later.matrix * &self.shift + &later.shift,
        }
    }

    /// Inverse map, via S⁻¹ = −Ω Sᵀ Ω (exact for symplectic S).
    pub fn inverse(&self) -> Self {
        let omega = symplectic_form::<T>(self.num_modes());
        let inv = -(&omega * self.matrix.transpose() * &omega);
        let shift = -(&inv * &self.shift);
        Self { matrix: inv, shift }
    }

    /// Max entry of |S Ω Sᵀ − Ω|.
    pub fn symplectic_defect(&self) -> T {
        let omega = symplectic_form::<T>(self.num_modes());
        let d = &self.matrix * &omega * self.matrix.transpose() - &omega;
        d.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    pub fn validate(&self) -> Result<()> {
        let defect = self.symplectic_defect();
        if defect > symplectic_tol::<T>() {
            return Err(Error::NotSymplectic(to_f64(defect)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn generators_are_symplectic() {
        let ops = [
            SymplecticOp::<f64>::displacement(2, 0, Complex::new(0.3, -1.1)).unwrap(),
            SymplecticOp::single_mode_squeeze(2, 1, 0.7).unwrap(),
            SymplecticOp::two_mode_squeeze(2, 0, 1, 0.5).unwrap(),
            SymplecticOp::beamsplitter(2, 0, 1).unwrap(),
            SymplecticOp::rotation(2, 0, 1.234).unwrap(),
        ];
        for op in &ops {
            op.validate().unwrap();
        }
    }

    #[test]
    fn composition_and_inverse_are_symplectic() {
        let a = SymplecticOp::<f64>::two_mode_squeeze(3, 0, 2, 0.4).unwrap();
        let b = SymplecticOp::beamsplitter(3, 1, 2).unwrap();
        let c = a.then(&b);
        c.validate().unwrap();
        let id = c.then(&c.inverse());
        assert_abs_diff_eq!(
            id.matrix,
            DMatrix::<f64>::identity(6, 6),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(id.shift, DVector::<f64>::zeros(6), epsilon = 1e-12);
    }

    #[test]
    fn rejects_out_of_range_and_duplicate_modes() {
        assert!(matches!(
            SymplecticOp::<f64>::single_mode_squeeze(2, 2, 0.1),
            Err(Error::ModeOutOfRange { mode: 2, modes: 2 })
        ));
        assert!(matches!(
            SymplecticOp::<f64>::two_mode_squeeze(2, 1, 1, 0.1),
            Err(Error::DuplicateMode(1))
        ));
    }

    #[test]
    fn rejects_non_finite_parameters() {
        assert!(matches!(
            SymplecticOp::<f64>::single_mode_squeeze(1, 0, f64::INFINITY),
            Err(Error::NonFinite { name: "r", .. })
        ));
    }

    #[test]
    fn works_at_f32() {
        let op = SymplecticOp::<f32>::two_mode_squeeze(2, 0, 1, 0.5).unwrap();
        op.validate().unwrap();
    }
}

//! Dense operators on truncated Fock space.
//!
//! All operators are plain matrices over the product basis
//! |n₁, …, n_modes⟩ with per-mode dimension cutoff + 1, indexed with the
//! first mode slowest. Truncation corrupts the top photon levels, so
//! operator identities are asserted on an interior subspace of bounded
//! total photon number.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::states::FockState;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense operator with its mode count and per-mode cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    modes: usize,
    cutoff: usize,
    matrix: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn new(modes: usize, cutoff: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = (cutoff + 1).pow(modes as u32);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim}x{dim} matrix for {modes} modes at cutoff {cutoff}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self {
            modes,
            cutoff,
            matrix,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            modes: self.modes,
            cutoff: self.cutoff,
            matrix: self.matrix.adjoint(),
        }
    }

    /// Max |A − A†| entry.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, state: &FockState) -> FockState {
        FockState::from_amplitudes(
            self.modes,
            self.cutoff,
            &self.matrix * state.amplitudes(),
        )
    }
}

/// Single-mode annihilation operator at the given cutoff.
pub fn annihilator(cutoff: usize) -> DMatrix<Complex64> {
    let dim = cutoff + 1;
    DMatrix::from_fn(dim, dim, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Embeds a single-mode matrix into a multimode space (identity elsewhere).
pub fn embed(op: &DMatrix<Complex64>, mode: usize, modes: usize) -> DMatrix<Complex64> {
    let dim = op.nrows();
    let mut out = DMatrix::identity(1, 1);
    for m in 0..modes {
        let factor = if m == mode {
            op.clone()
        } else {
            DMatrix::identity(dim, dim)
        };
        out = out.kronecker(&factor);
    }
    out
}

/// Single-mode quadrature and squeeze-generator matrices.
pub struct SingleMode {
    pub a: DMatrix<Complex64>,
    pub x: DMatrix<Complex64>,
    pub p: DMatrix<Complex64>,
    /// Hermitian generator (x̂p̂ + p̂x̂)/2; the single-mode squeezer is
    /// exp(−i(−r)·this) = exp(ir(x̂p̂+p̂x̂)/2).
    pub squeeze_gen: DMatrix<Complex64>,
    pub number: DMatrix<Complex64>,
}

pub fn single_mode_ops(cutoff: usize) -> SingleMode {
    let a = annihilator(cutoff);
    let ad = a.adjoint();
    let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let x = (&a + &ad) * s;
    let p = (&a - &ad) * (-I * s);
    let squeeze_gen = (&x * &p + &p * &x) * Complex64::new(0.5, 0.0);
    let number = &ad * &a;
    SingleMode {
        a,
        x,
        p,
        squeeze_gen,
        number,
    }
}

/// The two-mode generator set: the photon-number-preserving trio
/// J₁ = (a†b + ab†)/2, J₂ = −i(a†b − ab†)/2, J₃ = (a†a − b†b)/2 with
/// [J_j, J_k] = iJ_l ε_ljk, and the pair-creation trio
/// K₀ = (a†a + bb†)/2, K₁ = (ab + a†b†)/2, K₂ = i(ab − a†b†)/2 with
/// [K₁, K₂] = −iK₀, [K₀, K₁] = iK₂, [K₂, K₀] = iK₁.
pub struct Generators {
    pub cutoff: usize,
    pub j1: FockOperator,
    pub j2: FockOperator,
    pub j3: FockOperator,
    pub k0: FockOperator,
    pub k1: FockOperator,
    pub k2: FockOperator,
}

/// Builds the generator set at the given cutoff (at least 4, so the
/// interior subspace is non-trivial).
pub fn build_generators(cutoff: usize) -> Result<Generators> {
    if cutoff < 4 {
        return Err(Error::CutoffTooSmall {
            got: cutoff,
            need: 4,
        });
    }
    let a1 = annihilator(cutoff);
    let a = embed(&a1, 0, 2);
    let b = embed(&a1, 1, 2);
    let (ad, bd) = (a.adjoint(), b.adjoint());
    let half = Complex64::new(0.5, 0.0);
    let j1 = (&ad * &b + &a * &bd) * half;
    let j2 = (&ad * &b - &a * &bd) * (-I * half);
    let j3 = (&ad * &a - &bd * &b) * half;
    let k0 = (&ad * &a + &b * &bd) * half;
    let k1 = (&a * &b + &ad * &bd) * half;
    let k2 = (&a * &b - &ad * &bd) * (I * half);
    let wrap = |m: DMatrix<Complex64>| FockOperator::new(2, cutoff, m);
    Ok(Generators {
        cutoff,
        j1: wrap(j1)?,
        j2: wrap(j2)?,
        j3: wrap(j3)?,
        k0: wrap(k0)?,
        k1: wrap(k1)?,
        k2: wrap(k2)?,
    })
}

pub fn commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}

/// Unitary exp(−i·angle·generator) of a Hermitian generator, as a dense
/// matrix exponential.
pub fn expm_unitary(generator: &FockOperator, angle: f64) -> Result<FockOperator> {
    if !angle.is_finite() {
        return Err(Error::NonFinite {
            name: "angle",
            value: angle,
        });
    }
    let defect = generator.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    let exponent = generator.matrix() * Complex64::new(0.0, -angle);
    FockOperator::new(generator.modes(), generator.cutoff(), exponent.exp())
}

/// Applies exp(−i·angle·generator) to a state without forming the full
/// unitary: scaling-and-Taylor on the vector. Exact to machine precision
/// for the anti-Hermitian exponents used here.
pub fn expm_apply(generator: &FockOperator, angle: f64, state: &FockState) -> Result<FockState> {
    if !angle.is_finite() {
        return Err(Error::NonFinite {
            name: "angle",
            value: angle,
        });
    }
    let defect = generator.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    let exponent = generator.matrix() * Complex64::new(0.0, -angle);
    // infinity norm controls the Taylor remainder
    let norm = exponent
        .row_iter()
        .map(|r| r.iter().map(|c| c.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let steps = norm.ceil().max(1.0) as usize;
    let scaled = exponent / Complex64::new(steps as f64, 0.0);
    let mut v = state.amplitudes().clone();
    for _ in 0..steps {
        let mut term = v.clone();
        let mut acc = v.clone();
        for k in 1..=60 {
            term = &scaled * term / Complex64::new(k as f64, 0.0);
            acc += &term;
            if term.norm() < 1e-18 * acc.norm() {
                break;
            }
        }
        v = acc;
    }
    Ok(FockState::from_amplitudes(
        state.modes(),
        state.cutoff(),
        v,
    ))
}

/// Basis mask selecting total photon number ≤ max_total.
pub fn interior_mask(modes: usize, cutoff: usize, max_total: usize) -> Vec<bool> {
    let dim = (cutoff + 1).pow(modes as u32);
    (0..dim)
        .map(|idx| total_photons(idx, modes, cutoff) <= max_total)
        .collect()
}

fn total_photons(mut idx: usize, modes: usize, cutoff: usize) -> usize {
    let base = cutoff + 1;
    let mut total = 0;
    for _ in 0..modes {
        total += idx % base;
        idx /= base;
    }
    total
}

/// Max |A − B| over entries whose row and column both lie in the mask.
pub fn masked_max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, mask: &[bool]) -> f64 {
    let mut max = 0.0f64;
    for i in 0..a.nrows() {
        if !mask[i] {
            continue;
        }
        for j in 0..a.ncols() {
            if !mask[j] {
                continue;
            }
            max = max.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    max
}

/// Hermitian displacement generator g with D(γ) = exp(−i·g),
/// i.e. g = i(γa† − γ*a).
pub fn displacement_generator(cutoff: usize, gamma: Complex64) -> FockOperator {
    let a = annihilator(cutoff);
    let ad = a.adjoint();
    let g = (ad * gamma - a * gamma.conj()) * I;
    FockOperator::new(1, cutoff, g).expect("dimensions match by construction")
}

/// Convenience: the two-mode beamsplitter unitary exp(−iJ₂·π/2) at `cutoff`.
pub fn beamsplitter_unitary(cutoff: usize) -> Result<FockOperator> {
    let gens = build_generators(cutoff)?;
    expm_unitary(&gens.j2, std::f64::consts::FRAC_PI_2)
}

/// Convenience: the two-mode squeezer unitary S₂(r) = exp(−2iK₂r).
pub fn two_mode_squeeze_unitary(cutoff: usize, r: f64) -> Result<FockOperator> {
    let gens = build_generators(cutoff)?;
    expm_unitary(&gens.k2, 2.0 * r)
}

/// Diagonal number operator of one mode in a multimode space.
pub fn number_operator(cutoff: usize, mode: usize, modes: usize) -> DMatrix<Complex64> {
    let single = single_mode_ops(cutoff).number;
    embed(&single, mode, modes)
}

/// Expectation ⟨ψ|A|ψ⟩.
pub fn expectation(op: &DMatrix<Complex64>, amplitudes: &DVector<Complex64>) -> Complex64 {
    (amplitudes.adjoint() * op * amplitudes)[(0, 0)]
}

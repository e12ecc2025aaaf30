//! Exact small-instance photocount distributions through a lossy passive
//! network, via permanents of a unitary dilation.
//!
//! The transfer matrix L maps coherent row vectors as β ↦ βL, i.e. a
//! single photon in input mode j emerges in the superposition
//! Σ_i L_{ji} |output i⟩. Loss is handled by the unitary dilation
//!
//!   U = [[L, (I − LL†)^{1/2}], [(I − L†L)^{1/2}, −L†]]
//!
//! with one vacuum ancilla per mode; output patterns are marginalized over
//! the ancilla modes by enumeration. Probabilities come from permanents of
//! the submatrices picked out by the input set and the output pattern; an
//! independent check expands the output state by brute-force enumeration.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Singular-value slack accepted when validating sub-unitarity.
pub const SUB_UNITARY_TOL: f64 = 1e-10;

/// Hard instance limits: the oracle is a desk-scale brute-force check.
pub const MAX_MODES: usize = 4;
pub const MAX_PHOTONS: usize = 3;

/// Permanent by Ryser's inclusion-exclusion formula; fine for n ≤ 3 and
/// chosen for independence from the amplitude-enumeration path.
pub fn permanent(m: &DMatrix<Complex64>) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "permanent needs a square matrix");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for subset in 1..(1u32 << n) {
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 0..n {
            let mut row_sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if subset & (1 << j) != 0 {
                    row_sum += m[(i, j)];
                }
            }
            prod *= row_sum;
        }
        let sign = if (n as u32 - subset.count_ones()) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        total += prod * Complex64::new(sign, 0.0);
    }
    total
}

/// Principal square root of a Hermitian PSD matrix; small negative
/// eigenvalues from round-off are clamped to zero.
fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let roots = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()),
    );
    let d = DMatrix::from_diagonal(&roots.map(|x| Complex64::new(x, 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Checks singular values ≤ 1 and returns the 2M×2M unitary dilation.
pub fn dilate_sub_unitary(l: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let m = l.nrows();
    if l.ncols() != m {
        return Err(Error::DimensionMismatch(format!(
            "transfer matrix must be square, got {}x{}",
            l.nrows(),
            l.ncols()
        )));
    }
    let svd = l.clone().svd(false, false);
    let max_sv = svd.singular_values.max();
    if max_sv > 1.0 + SUB_UNITARY_TOL {
        return Err(Error::NotSubUnitary(max_sv));
    }
    let id = DMatrix::<Complex64>::identity(m, m);
    let top_right = psd_sqrt(&(&id - l * l.adjoint()));
    let bottom_left = psd_sqrt(&(&id - l.adjoint() * l));
    let mut u = DMatrix::zeros(2 * m, 2 * m);
    u.view_mut((0, 0), (m, m)).copy_from(l);
    u.view_mut((0, m), (m, m)).copy_from(&top_right);
    u.view_mut((m, 0), (m, m)).copy_from(&bottom_left);
    u.view_mut((m, m), (m, m)).copy_from(&(-l.adjoint()));
    Ok(u)
}

fn check_instance(l: &DMatrix<Complex64>, input_modes: &[usize]) -> Result<usize> {
    let m = l.nrows();
    if m > MAX_MODES {
        return Err(Error::SizeLimit(format!(
            "{m} modes exceeds oracle limit {MAX_MODES}"
        )));
    }
    if input_modes.len() > MAX_PHOTONS {
        return Err(Error::SizeLimit(format!(
            "{} photons exceeds oracle limit {MAX_PHOTONS}",
            input_modes.len()
        )));
    }
    let mut seen = vec![false; m];
    for &j in input_modes {
        if j >= m {
            return Err(Error::ModeOutOfRange { mode: j, modes: m });
        }
        if seen[j] {
            return Err(Error::DuplicateMode(j));
        }
        seen[j] = true;
    }
    Ok(m)
}

/// Amplitude of the output pattern `t` (over all 2M dilated modes) given
/// single photons in `input_modes`: Per(B)/√(∏ t_i!), with B the rows of U
/// picked by the inputs and columns repeated per output multiplicity.
fn pattern_amplitude(u: &DMatrix<Complex64>, input_modes: &[usize], t: &[usize]) -> Complex64 {
    let n = input_modes.len();
    let mut cols = Vec::with_capacity(n);
    for (i, &cnt) in t.iter().enumerate() {
        for _ in 0..cnt {
            cols.push(i);
        }
    }
    debug_assert_eq!(cols.len(), n);
    let b = DMatrix::from_fn(n, n, |r, c| u[(input_modes[r], cols[c])]);
    let mut norm = 1.0f64;
    for &cnt in t {
        for k in 2..=cnt {
            norm *= k as f64;
        }
    }
    permanent(&b) / Complex64::new(norm.sqrt(), 0.0)
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Exact probability of observing `output_counts` on the real modes, given
/// single photons in `input_modes` sent through the lossy network `l`.
pub fn boson_sampling_prob(
    l: &DMatrix<Complex64>,
    input_modes: &[usize],
    output_counts: &[usize],
) -> Result<f64> {
    let m = check_instance(l, input_modes)?;
    if output_counts.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "output pattern has {} entries for {m} modes",
            output_counts.len()
        )));
    }
    let n = input_modes.len();
    let detected: usize = output_counts.iter().sum();
    if detected > n {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(if detected == 0 { 1.0 } else { 0.0 });
    }
    let u = dilate_sub_unitary(l)?;
    let mut prob = 0.0;
    for ancilla in compositions(n - detected, m) {
        let mut t = Vec::with_capacity(2 * m);
        t.extend_from_slice(output_counts);
        t.extend_from_slice(&ancilla);
        prob += pattern_amplitude(&u, input_modes, &t).norm_sqr();
    }
    Ok(prob)
}

/// Full output distribution over real-mode patterns (total ≤ photons in).
pub fn output_distribution(
    l: &DMatrix<Complex64>,
    input_modes: &[usize],
) -> Result<Vec<(Vec<usize>, f64)>> {
    let m = check_instance(l, input_modes)?;
    let mut out = Vec::new();
    for total in 0..=input_modes.len() {
        for pattern in compositions(total, m) {
            let p = boson_sampling_prob(l, input_modes, &pattern)?;
            out.push((pattern, p));
        }
    }
    Ok(out)
}

/// Independent brute-force path: expands ∏_k (Σ_i U[s_k, i] a_i†)|0⟩ over
/// all 2M dilated modes and returns the amplitude of every output pattern.
pub fn amplitudes_by_expansion(
    u: &DMatrix<Complex64>,
    input_modes: &[usize],
) -> HashMap<Vec<usize>, Complex64> {
    let dim = u.ncols();
    let mut terms: HashMap<Vec<usize>, Complex64> = HashMap::new();
    // recursively distribute each input photon over output modes
    fn recurse(
        u: &DMatrix<Complex64>,
        inputs: &[usize],
        k: usize,
        pattern: &mut Vec<usize>,
        coeff: Complex64,
        acc: &mut HashMap<Vec<usize>, Complex64>,
    ) {
        if k == inputs.len() {
            *acc.entry(pattern.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += coeff;
            return;
        }
        for i in 0..u.ncols() {
            let c = u[(inputs[k], i)];
            if c.norm_sqr() == 0.0 {
                continue;
            }
            // a_i† on a state with pattern count n_i contributes sqrt(n_i + 1)
            pattern[i] += 1;
            let amp = coeff * c * Complex64::new((pattern[i] as f64).sqrt(), 0.0);
            recurse(u, inputs, k + 1, pattern, amp, acc);
            pattern[i] -= 1;
        }
    }
    let mut pattern = vec![0usize; dim];
    recurse(
        u,
        input_modes,
        0,
        &mut pattern,
        Complex64::new(1.0, 0.0),
        &mut terms,
    );
    // each path through the recursion accumulates the sqrt(t!) ladder
    // factors, and summing paths divides by the t! orderings, so the
    // accumulated values are already the basis-state amplitudes
    terms
}

//! Independent brute-force oracle on truncated Fock space.
//!
//! Everything here is deliberately naive — dense matrices, explicit
//! exponentials, permanents by inclusion-exclusion — so it can serve as an
//! independent check on the Gaussian engine and on the network-sampling
//! laws. Truncation artifacts are made explicit: operator identities are
//! asserted on the interior subspace of bounded total photon number, and
//! moment extraction refuses states with significant tail mass.

mod operators;
mod sampling;
mod states;

pub use operators::{
    annihilator, beamsplitter_unitary, build_generators, commutator, displacement_generator,
    embed, expectation, expm_apply, expm_unitary, interior_mask, masked_max_diff,
    number_operator, single_mode_ops, two_mode_squeeze_unitary, FockOperator, Generators,
    SingleMode,
};
pub use sampling::{
    amplitudes_by_expansion, boson_sampling_prob, dilate_sub_unitary, output_distribution,
    permanent, MAX_MODES, MAX_PHOTONS, SUB_UNITARY_TOL,
};
pub use states::{oracle_moments, FockState, TAIL_TOL};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::GaussianState;
    use approx::assert_abs_diff_eq;
    use nalgebra::{DMatrix, DVector};
    use num_complex::Complex64;

    const CUTOFF: usize = 14;

    fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        (a - b).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn rejects_small_cutoff() {
        assert!(build_generators(3).is_err());
        assert!(build_generators(4).is_ok());
    }

    #[test]
    fn su2_commutators_hold_on_interior() {
        let g = build_generators(CUTOFF).unwrap();
        // J ops preserve total photon number, so the identities hold on
        // total <= cutoff - 1
        let mask = interior_mask(2, CUTOFF, CUTOFF - 1);
        let i = Complex64::new(0.0, 1.0);
        let pairs = [
            (&g.j1, &g.j2, &g.j3),
            (&g.j2, &g.j3, &g.j1),
            (&g.j3, &g.j1, &g.j2),
        ];
        for (a, b, c) in pairs {
            let comm = commutator(a.matrix(), b.matrix());
            let expect = c.matrix() * i;
            assert!(masked_max_diff(&comm, &expect, &mask) < 1e-10);
        }
    }

    #[test]
    fn su11_commutators_hold_on_interior() {
        let g = build_generators(CUTOFF).unwrap();
        // K1/K2 change photon number by 2: interior is total <= cutoff - 2
        let mask = interior_mask(2, CUTOFF, CUTOFF - 2);
        let i = Complex64::new(0.0, 1.0);
        // [K1, K2] = -i K0 (the Minkowski-raised sign), [K0, K1] = i K2,
        // [K2, K0] = i K1
        let checks = [
            (commutator(g.k1.matrix(), g.k2.matrix()), g.k0.matrix() * (-i)),
            (commutator(g.k0.matrix(), g.k1.matrix()), g.k2.matrix() * i),
            (commutator(g.k2.matrix(), g.k0.matrix()), g.k1.matrix() * i),
        ];
        for (comm, expect) in checks {
            assert!(masked_max_diff(&comm, &expect, &mask) < 1e-10);
        }
    }

    #[test]
    fn j_operators_commute_with_total_number() {
        let g = build_generators(8).unwrap();
        let total = number_operator(8, 0, 2) + number_operator(8, 1, 2);
        for op in [&g.j1, &g.j2, &g.j3] {
            let comm = commutator(op.matrix(), &total);
            let max = comm.iter().map(|c| c.norm()).fold(0.0, f64::max);
            assert!(max < 1e-12);
        }
    }

    #[test]
    fn generators_are_hermitian() {
        let g = build_generators(8).unwrap();
        for op in [&g.j1, &g.j2, &g.j3, &g.k0, &g.k1, &g.k2] {
            assert!(op.hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn two_mode_squeezer_matches_schmidt_form() {
        let cutoff = 20;
        let r = 0.5;
        let u = two_mode_squeeze_unitary(cutoff, r).unwrap();
        let out = u.apply(&FockState::vacuum(2, cutoff));
        for n in 0..=cutoff {
            let expect = (-r.tanh()).powi(n as i32) / r.cosh();
            let got = out.amplitude(&[n, n]);
            assert!((got - Complex64::new(expect, 0.0)).norm() < 1e-8);
        }
        // off-diagonal amplitudes vanish
        assert!(out.amplitude(&[1, 2]).norm() < 1e-10);
        // closed form agrees
        let closed = FockState::two_mode_squeezed_vacuum(cutoff, r);
        assert!(out.fidelity(&closed) > 1.0 - 1e-10);
    }

    #[test]
    fn expm_apply_matches_dense_exponential() {
        let cutoff = 10;
        let g = build_generators(cutoff).unwrap();
        let angle = 2.0 * 0.4;
        let u = expm_unitary(&g.k2, angle).unwrap();
        let dense = u.apply(&FockState::vacuum(2, cutoff));
        let direct = expm_apply(&g.k2, angle, &FockState::vacuum(2, cutoff)).unwrap();
        let diff: f64 = (dense.amplitudes() - direct.amplitudes()).norm();
        assert!(diff < 1e-12);
        // unitarity of the dense exponential
        let id = u.matrix().adjoint() * u.matrix();
        assert!(max_diff(&id, &DMatrix::identity(id.nrows(), id.ncols())) < 1e-10);
    }

    #[test]
    fn expm_unitary_rejects_non_hermitian_generator() {
        let m = DMatrix::from_fn(3, 3, |i, j| Complex64::new(i as f64, j as f64));
        let op = FockOperator::new(1, 2, m).unwrap();
        assert!(matches!(
            expm_unitary(&op, 0.5),
            Err(crate::Error::NotHermitian(_))
        ));
        let g = single_mode_ops(4).number;
        let op = FockOperator::new(1, 4, g).unwrap();
        assert!(expm_unitary(&op, f64::NAN).is_err());
    }

    #[test]
    fn beamsplitter_mixes_coherent_states() {
        let cutoff = 16;
        let alpha = Complex64::new(0.6, 0.2);
        let beta = Complex64::new(-0.4, 0.5);
        let bs = beamsplitter_unitary(cutoff).unwrap();
        let input = FockState::coherent(cutoff, alpha)
            .product(&FockState::coherent(cutoff, beta))
            .unwrap();
        let out = bs.apply(&input);
        let s = 1.0 / 2f64.sqrt();
        let expect = FockState::coherent(cutoff, (alpha - beta) * s)
            .product(&FockState::coherent(cutoff, (alpha + beta) * s))
            .unwrap();
        assert!(out.fidelity(&expect) > 1.0 - 1e-8);
    }

    #[test]
    fn single_mode_squeezer_scales_position_variance() {
        let cutoff = 24;
        let r = 0.5;
        let ops = single_mode_ops(cutoff);
        let gen = FockOperator::new(1, cutoff, ops.squeeze_gen.clone()).unwrap();
        // S1(r) = exp(ir(xp+px)/2) = exp(-i(-r) g)
        let psi = expm_apply(&gen, -r, &FockState::vacuum(1, cutoff)).unwrap();
        let (mean, cov) = oracle_moments(&psi).unwrap();
        assert_abs_diff_eq!(mean[0], 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(cov[(0, 0)], 0.5 * (-2.0 * r).exp(), epsilon = 1e-8);
        assert_abs_diff_eq!(cov[(1, 1)], 0.5 * (2.0 * r).exp(), epsilon = 1e-8);
    }

    #[test]
    fn oracle_moments_reference_states() {
        let v = FockState::vacuum(2, 6);
        let (mean, cov) = oracle_moments(&v).unwrap();
        assert_abs_diff_eq!(mean.norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(cov, DMatrix::identity(4, 4) * 0.5, epsilon = 1e-14);

        // displaced vacuum: mean (gamma1, gamma2), vacuum covariance
        let gamma = Complex64::new(0.3, -0.7); // = (g1 + i g2)/sqrt(2)
        let coh = FockState::coherent(20, gamma);
        let (mean, cov) = oracle_moments(&coh).unwrap();
        assert_abs_diff_eq!(mean[0], gamma.re * 2f64.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(mean[1], gamma.im * 2f64.sqrt(), epsilon = 1e-9);
        assert_abs_diff_eq!(cov, DMatrix::identity(2, 2) * 0.5, epsilon = 1e-9);
    }

    #[test]
    fn oracle_moments_match_gaussian_squeeze2() {
        let r = 0.4;
        let cutoff = 20;
        let fock = FockState::two_mode_squeezed_vacuum(cutoff, r);
        let (mean, cov) = oracle_moments(&fock).unwrap();
        let gauss = GaussianState::<f64>::vacuum(2)
            .unwrap()
            .squeeze2(0, 1, r)
            .unwrap();
        assert!((mean - gauss.mean()).norm() < 1e-7);
        assert!(max_real_diff(&cov, gauss.cov()) < 1e-7);
    }

    fn max_real_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    #[test]
    fn tail_mass_guard_trips_on_heavy_states() {
        // coherent state too large for the cutoff
        let hot = FockState::coherent(6, Complex64::new(2.0, 0.0));
        assert!(matches!(
            oracle_moments(&hot),
            Err(crate::Error::ExcessiveTailMass { .. })
        ));
    }

    #[test]
    fn permanent_path_agrees_with_expansion_path() {
        // randomish sub-unitary 2x2 and 3x3 instances, two photons
        let l2 = {
            let s = 1.0 / 2f64.sqrt();
            DMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(0.9 * s, 0.1),
                    Complex64::new(0.4 * s, -0.2),
                    Complex64::new(-0.3 * s, 0.25),
                    Complex64::new(0.8 * s, 0.05),
                ],
            ) * Complex64::new(0.8, 0.0)
        };
        compare_paths(&l2, &[0, 1]);
        let l3 = {
            let mut m = DMatrix::<Complex64>::identity(3, 3);
            m[(0, 1)] = Complex64::new(0.3, 0.1);
            m[(1, 0)] = Complex64::new(-0.3, 0.1);
            m[(2, 2)] = Complex64::new(0.7, 0.2);
            m * Complex64::new(0.6, 0.0)
        };
        compare_paths(&l3, &[0, 2]);
        compare_paths(&l3, &[0, 1, 2]);
    }

    fn compare_paths(l: &DMatrix<Complex64>, inputs: &[usize]) {
        let m = l.nrows();
        let u = dilate_sub_unitary(l).unwrap();
        let amps = amplitudes_by_expansion(&u, inputs);
        // total probability is 1
        let total: f64 = amps.values().map(|a| a.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-10);
        // marginalize ancillas and compare every real-mode pattern
        for (pattern, p) in output_distribution(l, inputs).unwrap() {
            let marginal: f64 = amps
                .iter()
                .filter(|(t, _)| t[..m] == pattern[..])
                .map(|(_, a)| a.norm_sqr())
                .sum();
            assert!(
                (marginal - p).abs() < 1e-10,
                "pattern {pattern:?}: expansion {marginal} vs permanent {p}"
            );
        }
    }

    #[test]
    fn dilation_is_unitary() {
        let l = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(0.6, 0.3),
            Complex64::new(0.9, 0.0),
        ]));
        let u = dilate_sub_unitary(&l).unwrap();
        let id = u.adjoint() * &u;
        assert!(max_diff(&id, &DMatrix::identity(4, 4)) < 1e-12);
    }
}

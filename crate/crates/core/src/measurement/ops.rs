//! The measurement models: BAE homodyne, heterodyne, squeezed-basis
//! heterodyne, joint EPR measurement, vacuum conditioning and
//! photocounting.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use num_complex::{Complex, Complex64};
use rand::Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

use crate::error::{Error, Result};
use crate::gaussian::{epr_row, EprObservable, GaussianState};
use crate::measurement::conditioning::Observation;
use crate::scalar::{conv, to_f64, Scalar};

/// Outcome of a finite-resolution quadrature measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneOutcome<T> {
    pub mode: usize,
    pub value: T,
    pub resolution_sq: T,
}

/// Outcome of a heterodyne measurement, recorded as (x, p) with
/// α = (x + ip)/√2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeterodyneOutcome<T> {
    pub mode: usize,
    pub x: T,
    pub p: T,
}

impl<T: Scalar> HeterodyneOutcome<T> {
    pub fn alpha(&self) -> Complex<T> {
        let s = conv::<T>(0.5).sqrt();
        Complex::new(self.x * s, self.p * s)
    }
}

/// Joint outcome of the commuting EPR pair ((x_a+x_b)/√2, (−p_a+p_b)/√2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprOutcome<T> {
    pub mode_a: usize,
    pub mode_b: usize,
    pub sum_x: T,
    pub diff_p: T,
    pub resolution_sq: T,
}

fn x_row<T: Scalar>(modes: usize, mode: usize) -> DMatrix<T> {
    let mut rows = DMatrix::zeros(1, 2 * modes);
    rows[(0, 2 * mode)] = T::one();
    rows
}

fn check_mode(mode: usize, modes: usize) -> Result<()> {
    if mode >= modes {
        return Err(Error::ModeOutOfRange { mode, modes });
    }
    Ok(())
}

/// Back-action-evading homodyne measurement of the position quadrature of
/// one mode with resolution σ² > 0. The outcome is drawn from
/// N(⟨x⟩, σ² + Var x); the mode persists in the conditional state, with the
/// measurement back action dumped into its momentum quadrature.
pub fn homodyne_bae<T: Scalar, R: Rng + ?Sized>(
    state: &GaussianState<T>,
    mode: usize,
    sigma_sq: T,
    rng: &mut R,
) -> Result<(HomodyneOutcome<T>, GaussianState<T>)>
where
    StandardNormal: Distribution<T>,
{
    check_mode(mode, state.num_modes())?;
    let obs = Observation::quadratures(x_row(state.num_modes(), mode), sigma_sq)?;
    let y = obs.sample(state, rng);
    let post = obs.condition(state, &y)?;
    Ok((
        HomodyneOutcome {
            mode,
            value: y[0],
            resolution_sq: sigma_sq,
        },
        post,
    ))
}

/// Deterministic arm of [`homodyne_bae`]: the conditional state for a given
/// outcome value.
pub fn condition_homodyne<T: Scalar>(
    state: &GaussianState<T>,
    mode: usize,
    sigma_sq: T,
    value: T,
) -> Result<GaussianState<T>> {
    check_mode(mode, state.num_modes())?;
    let obs = Observation::quadratures(x_row(state.num_modes(), mode), sigma_sq)?;
    obs.condition(state, &DVector::from_element(1, value))
}

/// Heterodyne measurement of one mode: projection onto coherent states.
/// The outcome (x, p) is drawn from N(mode mean, mode cov + ½·I); the
/// remaining modes are conditioned on it and the measured mode is removed.
pub fn heterodyne<T: Scalar, R: Rng + ?Sized>(
    state: &GaussianState<T>,
    mode: usize,
    rng: &mut R,
) -> Result<(HeterodyneOutcome<T>, GaussianState<T>)>
where
    StandardNormal: Distribution<T>,
{
    check_mode(mode, state.num_modes())?;
    let obs = Observation::dyne_mode(state.num_modes(), mode)?;
    let y = obs.sample(state, rng);
    let post = obs.condition(state, &y)?.remove_mode(mode);
    Ok((
        HeterodyneOutcome {
            mode,
            x: y[0],
            p: y[1],
        },
        post,
    ))
}

/// Deterministic arm of [`heterodyne`].
pub fn condition_heterodyne<T: Scalar>(
    state: &GaussianState<T>,
    mode: usize,
    x: T,
    p: T,
) -> Result<GaussianState<T>> {
    check_mode(mode, state.num_modes())?;
    let obs = Observation::dyne_mode(state.num_modes(), mode)?;
    let y = DVector::from_vec(vec![x, p]);
    Ok(obs.condition(state, &y)?.remove_mode(mode))
}

/// Heterodyne conjugated by single-mode squeezers: measurement in the
/// squeezed basis. Implemented as squeeze1(−r) → heterodyne → relabel; the
/// measured mode is re-prepared in the displaced squeezed state selected by
/// the outcome (mean (x e⁻ʳ, p eʳ), covariance diag(½e⁻²ʳ, ½e²ʳ)), so the
/// mode persists. The recorded outcome keeps the inner coherent labels
/// (x, p), for which successive measurements obey
/// x_{n+1} = x_n + γ₁eʳ + W with unit-variance W.
pub fn squeezed_heterodyne<T: Scalar, R: Rng + ?Sized>(
    state: &GaussianState<T>,
    mode: usize,
    r: T,
    rng: &mut R,
) -> Result<(HeterodyneOutcome<T>, GaussianState<T>)>
where
    StandardNormal: Distribution<T>,
{
    check_mode(mode, state.num_modes())?;
    if !to_f64(r).is_finite() {
        return Err(Error::NonFinite {
            name: "r",
            value: to_f64(r),
        });
    }
    let pre = state.squeeze1(mode, -r)?;
    let (outcome, rest) = heterodyne(&pre, mode, rng)?;
    let half = conv::<T>(0.5);
    let mean = Vector2::new(outcome.x * (-r).exp(), outcome.p * r.exp());
    let cov = Matrix2::new(
        half * (-(conv::<T>(2.0)) * r).exp(),
        T::zero(),
        T::zero(),
        half * (conv::<T>(2.0) * r).exp(),
    );
    let post = rest.insert_mode(mode, mean, cov);
    Ok((outcome, post))
}

/// Joint measurement of the commuting EPR observables (x_a + x_b)/√2 and
/// (−p_a + p_b)/√2, each through noise σ². Both modes persist; the back
/// action lands in the conjugate EPR pair.
pub fn epr_measure<T: Scalar, R: Rng + ?Sized>(
    state: &GaussianState<T>,
    mode_a: usize,
    mode_b: usize,
    sigma_sq: T,
    rng: &mut R,
) -> Result<(EprOutcome<T>, GaussianState<T>)>
where
    StandardNormal: Distribution<T>,
{
    let obs = epr_observation(state.num_modes(), mode_a, mode_b, sigma_sq)?;
    let y = obs.sample(state, rng);
    let post = obs.condition(state, &y)?;
    Ok((
        EprOutcome {
            mode_a,
            mode_b,
            sum_x: y[0],
            diff_p: y[1],
            resolution_sq: sigma_sq,
        },
        post,
    ))
}

/// Deterministic arm of [`epr_measure`].
pub fn condition_epr<T: Scalar>(
    state: &GaussianState<T>,
    mode_a: usize,
    mode_b: usize,
    sigma_sq: T,
    sum_x: T,
    diff_p: T,
) -> Result<GaussianState<T>> {
    let obs = epr_observation(state.num_modes(), mode_a, mode_b, sigma_sq)?;
    obs.condition(state, &DVector::from_vec(vec![sum_x, diff_p]))
}

fn epr_observation<T: Scalar>(
    modes: usize,
    mode_a: usize,
    mode_b: usize,
    sigma_sq: T,
) -> Result<Observation<T>> {
    check_mode(mode_a, modes)?;
    check_mode(mode_b, modes)?;
    if mode_a == mode_b {
        return Err(Error::DuplicateMode(mode_a));
    }
    let mut rows = DMatrix::zeros(2, 2 * modes);
    rows.set_row(
        0,
        &epr_row::<T>(modes, mode_a, mode_b, EprObservable::SumX).transpose(),
    );
    rows.set_row(
        1,
        &epr_row::<T>(modes, mode_a, mode_b, EprObservable::DiffP).transpose(),
    );
    Observation::quadratures(rows, sigma_sq)
}

/// Probability of finding one mode in vacuum, together with the state of
/// the remaining modes conditioned on that event (heterodyne outcome 0).
pub fn vacuum_condition<T: Scalar>(
    state: &GaussianState<T>,
    mode: usize,
) -> Result<(T, GaussianState<T>)> {
    check_mode(mode, state.num_modes())?;
    let obs = Observation::dyne_mode(state.num_modes(), mode)?;
    let (mean, cov) = obs.outcome_law(state);
    // P(vacuum) = <0|rho|0> = exp(-1/2 m^T S^-1 m)/sqrt(det S), S = V_mode + I/2
    let det = cov[(0, 0)] * cov[(1, 1)] - cov[(0, 1)] * cov[(1, 0)];
    let inv = Matrix2::new(cov[(1, 1)], -cov[(0, 1)], -cov[(1, 0)], cov[(0, 0)]) / det;
    let m = Vector2::new(mean[0], mean[1]);
    let quad = (inv * m).dot(&m);
    let prob = (-conv::<T>(0.5) * quad).exp() / det.sqrt();
    let post = obs
        .condition(state, &DVector::zeros(2))?
        .remove_mode(mode);
    Ok((prob, post))
}

/// Independent Poisson photocounts on a vector of coherent amplitudes,
/// with means |β_i|².
pub fn photocount_coherent<R: Rng + ?Sized>(amplitudes: &[Complex64], rng: &mut R) -> Vec<u64> {
    amplitudes
        .iter()
        .map(|beta| {
            let lambda = beta.norm_sqr();
            if lambda < 1e-300 {
                0
            } else {
                let draw: f64 = Poisson::new(lambda).expect("positive mean").sample(rng);
                draw as u64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Streams;
    use crate::stats::RunningStats;
    use approx::assert_abs_diff_eq;

    #[test]
    fn homodyne_posterior_mean_matches_product_of_gaussians() {
        let streams = Streams::new(11);
        let sigma_sq = 0.125;
        let gamma1 = 0.4;
        // regression of the posterior-mean formula over sampled outcomes
        for trial in 0..200u64 {
            let mut rng = streams.trial(trial);
            let state = GaussianState::<f64>::vacuum(1)
                .unwrap()
                .displace(0, Complex::new(gamma1 / 2f64.sqrt(), 0.0))
                .unwrap();
            let prior_mean = state.mean()[0];
            let prior_var = state.cov()[(0, 0)];
            let (outcome, post) = homodyne_bae(&state, 0, sigma_sq, &mut rng).unwrap();
            let expect =
                (prior_var * outcome.value + sigma_sq * prior_mean) / (sigma_sq + prior_var);
            assert_abs_diff_eq!(post.mean()[0], expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn homodyne_variance_recursion_closed_form() {
        let sigma_sq = 0.125f64;
        let mut state = GaussianState::<f64>::vacuum(1).unwrap();
        for n in 1..=50 {
            state = condition_homodyne(&state, 0, sigma_sq, 0.37).unwrap();
            let expect = sigma_sq / (n as f64 + sigma_sq / 0.5);
            assert_abs_diff_eq!(state.cov()[(0, 0)], expect, epsilon = 1e-10);
            state.validate().unwrap();
        }
    }

    #[test]
    fn heterodyne_vacuum_outcome_has_unit_variance() {
        let streams = Streams::new(5);
        let mut sx = RunningStats::new();
        let mut sp = RunningStats::new();
        for trial in 0..20_000u64 {
            let mut rng = streams.trial(trial);
            let v = GaussianState::<f64>::vacuum(1).unwrap();
            let (out, post) = heterodyne(&v, 0, &mut rng).unwrap();
            assert_eq!(post.mean().len(), 0);
            sx.push(out.x);
            sp.push(out.p);
        }
        assert!(crate::stats::variance_z(sx.variance(), 1.0, sx.count()).abs() < 4.0);
        assert!(crate::stats::variance_z(sp.variance(), 1.0, sp.count()).abs() < 4.0);
    }

    #[test]
    fn heterodyne_on_tmsv_leaves_partner_coherent() {
        let r = 0.5f64;
        let streams = Streams::new(17);
        let mut rng = streams.trial(0);
        let state = GaussianState::<f64>::vacuum(2)
            .unwrap()
            .squeeze2(0, 1, r)
            .unwrap();
        let (out, post) = heterodyne(&state, 0, &mut rng).unwrap();
        // partner collapses to the coherent state -alpha* tanh r
        let expect = -out.alpha().conj() * r.tanh();
        let got = post.mode_amplitude(0).unwrap();
        assert_abs_diff_eq!(got.re, expect.re, epsilon = 1e-12);
        assert_abs_diff_eq!(got.im, expect.im, epsilon = 1e-12);
        assert_abs_diff_eq!(post.cov()[(0, 0)], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(post.cov()[(1, 1)], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn vacuum_condition_probabilities() {
        // coherent state: P(0) = exp(-|beta|^2)
        let beta = Complex::new(0.8, -0.3);
        let state = GaussianState::<f64>::coherent(&[beta, Complex::new(0.0, 0.0)]).unwrap();
        let (p, _) = vacuum_condition(&state, 0).unwrap();
        assert_abs_diff_eq!(p, (-beta.norm_sqr()).exp(), epsilon = 1e-12);

        // vacuum: probability 1, second mode untouched
        let v = GaussianState::<f64>::vacuum(2).unwrap();
        let (p, rest) = vacuum_condition(&v, 1).unwrap();
        assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(rest.cov()[(0, 0)], 0.5, epsilon = 1e-12);

        // one arm of TMSV: P(vac) = 1/cosh^2 r, partner collapses to vacuum
        let r = 0.62f64;
        let s = GaussianState::<f64>::vacuum(2)
            .unwrap()
            .squeeze2(0, 1, r)
            .unwrap();
        let (p, partner) = vacuum_condition(&s, 1).unwrap();
        assert_abs_diff_eq!(p, 1.0 / r.cosh().powi(2), epsilon = 1e-12);
        assert_abs_diff_eq!(partner.cov()[(0, 0)], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(partner.cov()[(1, 1)], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(partner.mean()[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn epr_measure_on_vacuum_is_standard_normal() {
        let streams = Streams::new(23);
        let mut s1 = RunningStats::new();
        let mut s2 = RunningStats::new();
        for trial in 0..20_000u64 {
            let mut rng = streams.trial(trial);
            let v = GaussianState::<f64>::vacuum(2).unwrap();
            let (out, post) = epr_measure(&v, 0, 1, 0.5, &mut rng).unwrap();
            s1.push(out.sum_x);
            s2.push(out.diff_p);
            post.validate().unwrap();
        }
        assert!(crate::stats::variance_z(s1.variance(), 1.0, s1.count()).abs() < 4.0);
        assert!(crate::stats::variance_z(s2.variance(), 1.0, s2.count()).abs() < 4.0);
        assert!(s1.mean().abs() < 4.0 * s1.sem());
        assert!(s2.mean().abs() < 4.0 * s2.sem());
    }

    #[test]
    fn epr_measure_mean_tracks_state_epr_mean() {
        // S2(r) vacuum displaced by sqrt(2) gamma on mode b
        let r = 0.4f64;
        let gamma = Complex::new(0.21, -0.13);
        let state = GaussianState::<f64>::vacuum(2)
            .unwrap()
            .squeeze2(0, 1, r)
            .unwrap()
            .displace(1, gamma * 2f64.sqrt())
            .unwrap();
        let epr = state.epr_means(0, 1).unwrap();
        let streams = Streams::new(3);
        let mut sx = RunningStats::new();
        let mut dp = RunningStats::new();
        for trial in 0..50_000u64 {
            let mut rng = streams.trial(trial);
            let (out, _) = epr_measure(&state, 0, 1, 0.5, &mut rng).unwrap();
            sx.push(out.sum_x);
            dp.push(out.diff_p);
        }
        assert!((sx.mean() - epr.sum_x).abs() < 4.0 * sx.sem());
        assert!((dp.mean() - epr.diff_p).abs() < 4.0 * dp.sem());
    }

    #[test]
    fn squeezed_heterodyne_reduces_to_heterodyne_at_r_zero() {
        let streams = Streams::new(31);
        let state = GaussianState::<f64>::coherent(&[Complex::new(0.4, 0.2)]).unwrap();
        let (a, _) = squeezed_heterodyne(&state, 0, 0.0, &mut streams.trial(0)).unwrap();
        let (b, _) = heterodyne(&state, 0, &mut streams.trial(0)).unwrap();
        assert_abs_diff_eq!(a.x, b.x, epsilon = 1e-12);
        assert_abs_diff_eq!(a.p, b.p, epsilon = 1e-12);
    }

    #[test]
    fn squeezed_heterodyne_recursion_and_estimator_variance() {
        // x_{n+1} = x_n + gamma_1 e^r + W, so (x_{n+1} - x_n) e^{-r} has
        // variance e^{-2r}
        let r = 0.45f64;
        let gamma1 = 0.3f64;
        let gamma = Complex::new(gamma1 / 2f64.sqrt(), 0.0);
        let streams = Streams::new(47);
        let mut est = RunningStats::new();
        for trial in 0..30_000u64 {
            let mut rng = streams.trial(trial);
            let state = GaussianState::<f64>::vacuum(1).unwrap();
            let (o1, state) = squeezed_heterodyne(&state, 0, r, &mut rng).unwrap();
            let state = state.displace(0, gamma).unwrap();
            let (o2, _) = squeezed_heterodyne(&state, 0, r, &mut rng).unwrap();
            est.push((o2.x - o1.x) * (-r).exp());
        }
        assert!((est.mean() - gamma1).abs() < 4.0 * est.sem());
        let analytic = (-2.0 * r).exp();
        assert!(crate::stats::variance_z(est.variance(), analytic, est.count()).abs() < 3.0);
    }

    #[test]
    fn photocounts_are_poisson() {
        let streams = Streams::new(53);
        let mut rng = streams.trial(0);
        // beta = 0 gives count 0 always
        let zeros = photocount_coherent(&[Complex64::new(0.0, 0.0)], &mut rng);
        assert_eq!(zeros, vec![0]);
        // |beta|^2 = 1: P(0) = 1/e, empirical mean -> 1
        let beta = Complex64::new(1.0, 0.0);
        let n = 100_000u64;
        let mut zero_count = 0u64;
        let mut mean = RunningStats::new();
        for trial in 0..n {
            let mut rng = streams.trial(trial);
            let c = photocount_coherent(&[beta], &mut rng)[0];
            if c == 0 {
                zero_count += 1;
            }
            mean.push(c as f64);
        }
        assert!(crate::stats::freq_z(zero_count, n, (-1.0f64).exp()).abs() < 4.0);
        assert!((mean.mean() - 1.0).abs() < 3.0 * mean.sem());
    }

    #[test]
    fn invalid_requests_are_rejected() {
        let v = GaussianState::<f64>::vacuum(2).unwrap();
        let mut rng = Streams::new(0).trial(0);
        assert!(matches!(
            homodyne_bae(&v, 5, 0.5, &mut rng),
            Err(Error::ModeOutOfRange { .. })
        ));
        assert!(matches!(
            homodyne_bae(&v, 0, -0.5, &mut rng),
            Err(Error::InvalidResolution(_))
        ));
        assert!(matches!(
            epr_measure(&v, 1, 1, 0.5, &mut rng),
            Err(Error::DuplicateMode(1))
        ));
    }
}

//! Statistical verdict helpers: streaming moments, two-sample KS tests,
//! chi-square goodness of fit, and standard-error z-scores.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Welford accumulator for mean and variance.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunningStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n1 = self.n as f64;
        let n2 = other.n as f64;
        let delta = other.mean - self.mean;
        let n = n1 + n2;
        self.mean += delta * n2 / n;
        self.m2 += other.m2 + delta * delta * n1 * n2 / n;
        self.n += other.n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample variance (n − 1 denominator).
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return f64::NAN;
        }
        self.m2 / (self.n - 1) as f64
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Standard error of the mean.
    pub fn sem(&self) -> f64 {
        self.std_dev() / (self.n as f64).sqrt()
    }
}

/// z-score of an empirical mean against a reference value.
pub fn mean_z(empirical_mean: f64, reference: f64, std_dev: f64, n: u64) -> f64 {
    (empirical_mean - reference) / (std_dev / (n as f64).sqrt())
}

/// z-score of an empirical variance against a reference variance, using the
/// Gaussian sampling error SE(s²) = σ²√(2/(n−1)).
pub fn variance_z(empirical_var: f64, reference_var: f64, n: u64) -> f64 {
    let se = reference_var * (2.0 / (n as f64 - 1.0)).sqrt();
    (empirical_var - reference_var) / se
}

/// z-score of an empirical frequency against probability p.
pub fn freq_z(count: u64, n: u64, p: f64) -> f64 {
    let se = (p * (1.0 - p) / n as f64).sqrt();
    (count as f64 / n as f64 - p) / se
}

/// Standard error of an empirical covariance entry between Gaussians with
/// variances var_j, var_k and covariance c_jk.
pub fn covariance_se(var_j: f64, var_k: f64, c_jk: f64, n: u64) -> f64 {
    ((var_j * var_k + c_jk * c_jk) / (n as f64 - 1.0)).sqrt()
}

/// Result of a two-sample Kolmogorov–Smirnov test.
#[derive(Debug, Clone, Copy)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

/// Two-sample KS test with the asymptotic p-value (accurate for the sample
/// sizes used here, ≳ 10³ per side).
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsResult {
    assert!(!a.is_empty() && !b.is_empty());
    let mut xs: Vec<f64> = a.to_vec();
    let mut ys: Vec<f64> = b.to_vec();
    xs.sort_by(|u, v| u.partial_cmp(v).unwrap());
    ys.sort_by(|u, v| u.partial_cmp(v).unwrap());
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d_max = 0f64;
    while i < n && j < m {
        let x = xs[i];
        let y = ys[j];
        let t = x.min(y);
        while i < n && xs[i] <= t {
            i += 1;
        }
        while j < m && ys[j] <= t {
            j += 1;
        }
        let d = (i as f64 / n as f64 - j as f64 / m as f64).abs();
        if d > d_max {
            d_max = d;
        }
    }
    let ne = (n as f64 * m as f64) / (n as f64 + m as f64);
    let sqrt_ne = ne.sqrt();
    let lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d_max;
    KsResult {
        statistic: d_max,
        p_value: ks_q(lambda),
    }
}

/// Kolmogorov survival function Q(λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}.
fn ks_q(lambda: f64) -> f64 {
    if lambda < 1e-8 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64).powi(2) * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Result of a chi-square goodness-of-fit test.
#[derive(Debug, Clone, Copy)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Chi-square test of observed counts against expected probabilities.
/// Bins with expected count below `min_expected` are pooled into one.
pub fn chi_square_gof(observed: &[u64], expected_probs: &[f64], min_expected: f64) -> ChiSquareResult {
    assert_eq!(observed.len(), expected_probs.len());
    let n: u64 = observed.iter().sum();
    let nf = n as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut pooled_obs = 0.0;
    let mut pooled_exp = 0.0;
    for (&o, &p) in observed.iter().zip(expected_probs) {
        let e = p * nf;
        if e < min_expected {
            pooled_obs += o as f64;
            pooled_exp += e;
        } else {
            bins.push((o as f64, e));
        }
    }
    if pooled_exp > 0.0 {
        bins.push((pooled_obs, pooled_exp));
    }
    let statistic: f64 = bins
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|(o, e)| (o - e) * (o - e) / e)
        .sum();
    let dof = bins.len().saturating_sub(1).max(1);
    let dist = ChiSquared::new(dof as f64).expect("dof >= 1");
    ChiSquareResult {
        statistic,
        dof,
        p_value: 1.0 - dist.cdf(statistic),
    }
}

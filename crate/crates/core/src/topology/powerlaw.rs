//! Discrete power-law fitting: tail-start selection by Kolmogorov-Smirnov
//! distance, maximum-likelihood exponent, and a semiparametric bootstrap
//! goodness-of-fit p-value.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::random::derive_seed;

/// Fitted discrete power law p(x) ~ x^-alpha for x >= xmin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub xmin: u64,
    pub ks_stat: f64,
    pub p_value: f64,
    /// Number of samples >= xmin.
    pub n_tail: usize,
}

/// Integer walk limit per candidate when accumulating the model CDF; data
/// values beyond it are checked pointwise via the zeta survival function.
const KS_WALK_CAP: u64 = 100_000;

/// Fits a discrete power law to positive integer samples.
///
/// xmin is scanned over the observed values, minimizing the KS distance
/// between the empirical tail and the fitted model; alpha is the discrete MLE
/// given xmin; the p-value is the fraction of `bootstraps` synthetic datasets
/// (drawn from the fitted model and refit per replica) whose KS statistic
/// exceeds the empirical one. Deterministic given `seed`.
pub fn fit_power_law(samples: &[u64], bootstraps: usize, seed: u64) -> Result<PowerLawFit> {
    if samples.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "power-law fit needs at least 10 samples, got {}",
            samples.len()
        )));
    }
    if samples.iter().any(|&x| x == 0) {
        return Err(Error::Validation(
            "power-law samples must be positive integers".into(),
        ));
    }
    if bootstraps < 1 {
        return Err(Error::Validation("bootstraps must be >= 1".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    if sorted.first() == sorted.last() {
        return Err(Error::InsufficientData(
            "power-law fit needs at least 2 distinct values".into(),
        ));
    }

    let tail = fit_tail(&sorted)?;

    // Semiparametric bootstrap: tail samples from the fitted model, body
    // samples resampled from the empirical data below xmin.
    let body: Vec<u64> = sorted.iter().copied().filter(|&x| x < tail.xmin).collect();
    let p_tail = tail.n_tail as f64 / sorted.len() as f64;
    let sampler = TailSampler::new(tail.alpha, tail.xmin);

    let mut exceed = 0usize;
    let mut valid = 0usize;
    for replica in 0..bootstraps {
        let mut rng = ChaCha20Rng::seed_from_u64(derive_seed(seed, replica as u64));
        let mut synthetic: Vec<u64> = (0..sorted.len())
            .map(|_| {
                if body.is_empty() || rng.random::<f64>() < p_tail {
                    sampler.sample(&mut rng)
                } else {
                    body[rng.random_range(0..body.len())]
                }
            })
            .collect();
        synthetic.sort_unstable();
        match fit_tail(&synthetic) {
            Ok(refit) => {
                valid += 1;
                if refit.ks_stat > tail.ks_stat {
                    exceed += 1;
                }
            }
            // degenerate replica (e.g. all values equal); excluded from the count
            Err(_) => continue,
        }
    }
    if valid == 0 {
        return Err(Error::Numerical(
            "all bootstrap replicas were degenerate".into(),
        ));
    }

    Ok(PowerLawFit {
        alpha: tail.alpha,
        xmin: tail.xmin,
        ks_stat: tail.ks_stat,
        p_value: exceed as f64 / valid as f64,
        n_tail: tail.n_tail,
    })
}

struct TailFit {
    alpha: f64,
    xmin: u64,
    ks_stat: f64,
    n_tail: usize,
}

/// Scans xmin over the distinct observed values, fitting alpha by discrete MLE
/// and scoring each candidate by KS distance. `sorted` must be ascending.
fn fit_tail(sorted: &[u64]) -> Result<TailFit> {
    let mut distinct: Vec<(u64, usize)> = Vec::new();
    for &x in sorted {
        match distinct.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => distinct.push((x, 1)),
        }
    }
    if distinct.len() < 2 {
        return Err(Error::InsufficientData(
            "tail fit needs at least 2 distinct values".into(),
        ));
    }

    // suffix cumulative of ln(x) and of counts, aligned to distinct values
    let mut suffix_ln = vec![0.0f64; distinct.len() + 1];
    let mut suffix_count = vec![0usize; distinct.len() + 1];
    for i in (0..distinct.len()).rev() {
        let (value, count) = distinct[i];
        suffix_ln[i] = suffix_ln[i + 1] + (value as f64).ln() * count as f64;
        suffix_count[i] = suffix_count[i + 1] + count;
    }

    let mut best: Option<TailFit> = None;
    for (ci, &(xmin, _)) in distinct.iter().enumerate() {
        let n_tail = suffix_count[ci];
        let distinct_in_tail = distinct.len() - ci;
        if n_tail < 2 || distinct_in_tail < 2 {
            continue;
        }
        let log_sum = suffix_ln[ci] - n_tail as f64 * (xmin as f64 - 0.5).ln();
        if log_sum <= 0.0 {
            continue;
        }
        let alpha = 1.0 + n_tail as f64 / log_sum;
        let ks = ks_distance(&distinct[ci..], n_tail, alpha, xmin);
        let better = match &best {
            None => true,
            Some(b) => ks < b.ks_stat,
        };
        if better {
            best = Some(TailFit {
                alpha,
                xmin,
                ks_stat: ks,
                n_tail,
            });
        }
    }
    best.ok_or_else(|| {
        Error::InsufficientData("no viable tail start among the observed values".into())
    })
}

/// Max |empirical CDF - model CDF| over the tail support. Walks integers up to
/// a cap, accumulating the model pmf; distinct data values beyond the cap are
/// checked against the exact zeta survival.
fn ks_distance(tail: &[(u64, usize)], n_tail: usize, alpha: f64, xmin: u64) -> f64 {
    let z = hurwitz_zeta(alpha, xmin as f64);
    let xmax = tail.last().expect("tail non-empty").0;
    let n_tail_f = n_tail as f64;

    let mut d_max = 0.0f64;
    let mut cumulative_count = 0usize;
    let mut tail_iter = tail.iter().peekable();
    let mut model_cdf = 0.0f64;

    let walk_end = xmax.min(xmin + KS_WALK_CAP);
    for x in xmin..=walk_end {
        model_cdf += (x as f64).powf(-alpha) / z;
        while let Some(&&(value, count)) = tail_iter.peek() {
            if value <= x {
                cumulative_count += count;
                tail_iter.next();
            } else {
                break;
            }
        }
        let empirical = cumulative_count as f64 / n_tail_f;
        let diff = (empirical - model_cdf).abs();
        if diff > d_max {
            d_max = diff;
        }
    }

    // rare far-tail data points beyond the walk cap
    if xmax > walk_end {
        let mut running = cumulative_count;
        for &(value, count) in tail.iter().filter(|(v, _)| *v > walk_end) {
            // just before the data point the empirical CDF is still at `running`
            let model_before = 1.0 - hurwitz_zeta(alpha, value as f64) / z;
            let diff_before = (running as f64 / n_tail_f - model_before).abs();
            running += count;
            let model_at = 1.0 - hurwitz_zeta(alpha, (value + 1) as f64) / z;
            let diff_at = (running as f64 / n_tail_f - model_at).abs();
            d_max = d_max.max(diff_before).max(diff_at);
        }
    }
    d_max
}

/// Hurwitz zeta sum_{k>=0} (a+k)^-s for s > 1, via Euler-Maclaurin.
pub(crate) fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    const CUTOFF: usize = 18;
    let mut sum = 0.0;
    for k in 0..CUTOFF {
        sum += (a + k as f64).powf(-s);
    }
    let edge = a + CUTOFF as f64;
    sum += edge.powf(1.0 - s) / (s - 1.0);
    sum += 0.5 * edge.powf(-s);
    // Bernoulli correction terms B2, B4, B6, B8
    let mut rising = s; // s (s+1) ... rising factorial
    sum += rising / 12.0 * edge.powf(-s - 1.0);
    rising *= (s + 1.0) * (s + 2.0);
    sum -= rising / 720.0 * edge.powf(-s - 3.0);
    rising *= (s + 3.0) * (s + 4.0);
    sum += rising / 30240.0 * edge.powf(-s - 5.0);
    rising *= (s + 5.0) * (s + 6.0);
    sum -= rising / 1_209_600.0 * edge.powf(-s - 7.0);
    sum
}

/// Inverse-CDF sampler for the discrete power law on x >= xmin.
pub(crate) struct TailSampler {
    xmin: u64,
    alpha: f64,
    zeta_norm: f64,
    cdf: Vec<f64>,
}

impl TailSampler {
    pub(crate) fn new(alpha: f64, xmin: u64) -> Self {
        let zeta_norm = hurwitz_zeta(alpha, xmin as f64);
        let mut cdf = Vec::new();
        let mut cumulative = 0.0f64;
        let mut x = xmin;
        while cumulative < 1.0 - 1e-10 && cdf.len() < 2_000_000 {
            cumulative += (x as f64).powf(-alpha) / zeta_norm;
            cdf.push(cumulative);
            x += 1;
        }
        TailSampler {
            xmin,
            alpha,
            zeta_norm,
            cdf,
        }
    }

    pub(crate) fn sample(&self, rng: &mut ChaCha20Rng) -> u64 {
        let u: f64 = rng.random();
        if u <= *self.cdf.last().expect("cdf non-empty") {
            let idx = self.cdf.partition_point(|&c| c < u);
            self.xmin + idx as u64
        } else {
            self.sample_far_tail(u)
        }
    }

    /// Exact inverse CDF beyond the precomputed table: smallest x with
    /// zeta(alpha, x+1) <= (1-u) * zeta(alpha, xmin).
    fn sample_far_tail(&self, u: f64) -> u64 {
        let target = (1.0 - u) * self.zeta_norm;
        let mut lo = self.xmin + self.cdf.len() as u64;
        let mut hi = lo.max(1) * 2;
        while hurwitz_zeta(self.alpha, (hi + 1) as f64) > target {
            lo = hi;
            hi *= 2;
            if hi > 1 << 60 {
                break;
            }
        }
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if hurwitz_zeta(self.alpha, (mid + 1) as f64) <= target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_matches_reference_values() {
        // Riemann zeta at integer/half-integer points (standard constants)
        assert!((hurwitz_zeta(2.0, 1.0) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        assert!((hurwitz_zeta(3.0, 1.0) - 1.202_056_903_159_594_2).abs() < 1e-12);
        assert!((hurwitz_zeta(2.5, 1.0) - 1.341_487_257_250_917_1).abs() < 1e-12);
    }

    #[test]
    fn zeta_recurrence_holds() {
        for &(s, a) in &[(1.5, 1.0), (2.5, 3.0), (3.2, 7.0), (2.01, 1.0)] {
            let lhs = hurwitz_zeta(s, a);
            let rhs = hurwitz_zeta(s, a + 1.0) + a.powf(-s);
            assert!((lhs - rhs).abs() < 1e-12, "s={s} a={a}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn sampler_matches_model_probabilities() {
        let sampler = TailSampler::new(2.5, 1);
        let z = hurwitz_zeta(2.5, 1.0);
        // P(X = 1) = 1/z
        assert!((sampler.cdf[0] - 1.0 / z).abs() < 1e-12);
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let n = 200_000;
        let ones = (0..n).filter(|_| sampler.sample(&mut rng) == 1).count();
        let expected = n as f64 / z;
        assert!(
            (ones as f64 - expected).abs() < 4.0 * (expected * (1.0 - 1.0 / z)).sqrt(),
            "ones={ones} expected={expected}"
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            fit_power_law(&[1, 2, 3], 10, 0),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            fit_power_law(&[5; 20], 10, 0),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            fit_power_law(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9], 10, 0),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn permutation_invariant() {
        let samples: Vec<u64> = (0..200).map(|i| 1 + (i % 17) as u64).collect();
        let mut reversed = samples.clone();
        reversed.reverse();
        let a = fit_power_law(&samples, 20, 9).unwrap();
        let b = fit_power_law(&reversed, 20, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn deterministic_given_seed() {
        let samples: Vec<u64> = (1..=300).map(|i| 1 + (i * i) as u64 % 23).collect();
        let a = fit_power_law(&samples, 50, 11).unwrap();
        let b = fit_power_law(&samples, 50, 11).unwrap();
        assert_eq!(a, b);
        assert!((0.0..=1.0).contains(&a.p_value));
    }

    /// Independent inverse-CDF oracle used to generate exact power-law data in
    /// tests: explicit pmf table with partial-sum normalization, no shared code
    /// with TailSampler beyond f64 arithmetic.
    pub(crate) fn oracle_power_law_samples(
        alpha: f64,
        xmin: u64,
        n: usize,
        seed: u64,
    ) -> Vec<u64> {
        // pmf table over integers up to 10^5; the residual mass beyond is
        // bounded by the integral of x^-alpha and folded into the normalizer,
        // leaving a truncation error far below 1/n for the sizes used here
        let mut weights = Vec::new();
        let mut x = xmin;
        let mut total = 0.0f64;
        while x <= 100_000 {
            let w = (x as f64).powf(-alpha);
            total += w;
            weights.push(w);
            x += 1;
        }
        total += 100_001f64.powf(1.0 - alpha) / (alpha - 1.0);
        let mut cdf = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for w in &weights {
            acc += w / total;
            cdf.push(acc);
        }
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                let idx = cdf.partition_point(|&c| c < u).min(cdf.len() - 1);
                xmin + idx as u64
            })
            .collect()
    }

    #[test]
    fn recovers_alpha_with_growing_samples() {
        for (n, tolerance, seed) in [(1_000usize, 0.2f64, 21u64), (10_000, 0.1, 22)] {
            let samples = oracle_power_law_samples(2.5, 1, n, seed);
            let fit = fit_power_law(&samples, 20, 7).unwrap();
            assert!(
                (fit.alpha - 2.5).abs() < tolerance,
                "n={n}: alpha={} xmin={}",
                fit.alpha,
                fit.xmin
            );
        }
    }
}

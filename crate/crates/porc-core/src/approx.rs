//! Trading off accuracy against runtime: exact expected conformance over all
//! resolutions, or a highest-probability-first partial sum with a confidence
//! interval on the remainder.

use thiserror::Error;

use crate::alignment::{ConfKind, ConformanceChecker};
use crate::behavioral::{BehavioralModel, ScoredDistribution};
use crate::log::Trace;
use crate::petri::PetriError;
use crate::resolution::ResolutionError;

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Petri(#[from] PetriError),
    #[error("confidence level {0} is not supported (use 0.90, 0.95 or 0.99)")]
    UnsupportedAlpha(f64),
    #[error("interval estimation needs at least {MIN_SAMPLES} samples, got {0}")]
    SampleTooSmall(usize),
}

/// Minimum sample size before an interval estimate is trusted.
pub const MIN_SAMPLES: usize = 20;

/// Two-sided z critical value for the supported confidence levels.
pub fn z_value(alpha: f64) -> Result<f64, ApproxError> {
    let table = [(0.90, 1.6449), (0.95, 1.9600), (0.99, 2.5758)];
    table
        .iter()
        .find(|(a, _)| (alpha - a).abs() < 1e-9)
        .map(|(_, z)| *z)
        .ok_or(ApproxError::UnsupportedAlpha(alpha))
}

/// Half-width of the Wilson score interval for binomial samples.
pub fn wilson_margin(successes: usize, n: usize, alpha: f64) -> Result<f64, ApproxError> {
    if n < MIN_SAMPLES {
        return Err(ApproxError::SampleTooSmall(n));
    }
    let z = z_value(alpha)?;
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    Ok((z / (1.0 + z2 / n)) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt())
}

/// Half-width of a normal-approximation interval with the sample standard
/// deviation (n - 1 denominator).
pub fn normal_margin(samples: &[f64], alpha: f64) -> Result<f64, ApproxError> {
    let n = samples.len();
    if n < MIN_SAMPLES {
        return Err(ApproxError::SampleTooSmall(n));
    }
    let z = z_value(alpha)?;
    let nf = n as f64;
    let mean = samples.iter().sum::<f64>() / nf;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (nf - 1.0);
    Ok(z * var.sqrt() / nf.sqrt())
}

/// Point estimate combining the exactly-known probability mass with the
/// fitted mean conformance of the unseen remainder.
pub fn estimate_expected(weighted_sum: f64, p_bar: f64, mu_conf: f64) -> f64 {
    weighted_sum + (1.0 - p_bar).max(0.0) * mu_conf
}

#[derive(Debug, Clone)]
pub struct ApproxResult {
    /// Point estimate of expected conformance over all resolutions.
    pub expected: f64,
    /// Half-width of the interval around `expected`; 0 when exact.
    pub margin: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Number of resolutions whose conformance was actually computed.
    pub sampled: usize,
    /// Probability mass covered by the computed resolutions.
    pub p_bar: f64,
    /// True when all resolutions were evaluated (no estimation error).
    pub exact: bool,
    /// Conformance values of the computed resolutions, in sampling order.
    pub samples: Vec<f64>,
    /// Mean conformance over the computed resolutions.
    pub mu_conf: f64,
}

/// Expected conformance with every resolution evaluated.
pub fn exact_conformance(
    dist: &ScoredDistribution,
    checker: &ConformanceChecker,
    kind: ConfKind,
) -> Result<ApproxResult, ApproxError> {
    let mut expected = 0.0;
    let mut samples = Vec::with_capacity(dist.entries.len());
    for entry in &dist.entries {
        // Zero-probability resolutions contribute nothing to the expectation;
        // skipping them keeps the exhaustive pass proportional to the support.
        if entry.probability == 0.0 {
            continue;
        }
        let conf = checker.conf(kind, &entry.resolution.word)?;
        expected += entry.probability * conf;
        samples.push(conf);
    }
    let mu = samples.iter().sum::<f64>() / samples.len() as f64;
    Ok(ApproxResult {
        expected,
        margin: 0.0,
        ci_low: expected,
        ci_high: expected,
        sampled: samples.len(),
        p_bar: 1.0,
        exact: true,
        samples,
        mu_conf: mu,
    })
}

/// FNV-1a over the word, fixed across runs and platforms (unlike the std
/// hasher, whose keys are not guaranteed stable between releases).
fn word_hash(word: &[String]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in word {
        for b in part.as_bytes() {
            h = (h ^ *b as u64).wrapping_mul(0x100_0000_01b3);
        }
        h = (h ^ 0x1f).wrapping_mul(0x100_0000_01b3);
    }
    h
}

/// Highest-probability-first estimation of expected conformance.
///
/// Resolutions are consumed in descending probability. After each sample the
/// unseen mass `1 - p_bar` is bounded with a confidence interval on the mean
/// conformance; sampling stops once the relative interval width drops below
/// `delta` (or, when the point estimate is zero, once the absolute margin
/// contribution drops below `delta`). Degrades to the exact computation when
/// fewer than `MIN_SAMPLES` resolutions carry positive probability.
pub fn approximate_conformance(
    dist: &ScoredDistribution,
    checker: &ConformanceChecker,
    kind: ConfKind,
    alpha: f64,
    delta: f64,
) -> Result<ApproxResult, ApproxError> {
    z_value(alpha)?; // validate up front
    let mut order: Vec<&crate::behavioral::ScoredResolution> = dist.entries.iter().collect();
    // Ties are broken by a stable hash of the word rather than
    // lexicographically: equal-probability resolutions must be consumed in an
    // order uncorrelated with their conformance, or the interval on the
    // unseen remainder is biased.
    order.sort_by(|a, b| {
        b.probability
            .partial_cmp(&a.probability)
            .unwrap()
            .then_with(|| word_hash(&a.resolution.word).cmp(&word_hash(&b.resolution.word)))
            .then_with(|| a.resolution.word.cmp(&b.resolution.word))
    });
    let positive = order.iter().filter(|e| e.probability > 0.0).count();
    if positive <= MIN_SAMPLES {
        return exact_conformance(dist, checker, kind);
    }

    let mut samples: Vec<f64> = Vec::new();
    let mut weighted_sum = 0.0;
    let mut p_bar = 0.0;
    let mut successes = 0usize;

    for (i, entry) in order.iter().enumerate() {
        if entry.probability == 0.0 {
            break;
        }
        let conf = checker.conf(kind, &entry.resolution.word)?;
        weighted_sum += entry.probability * conf;
        p_bar += entry.probability;
        if conf == 1.0 {
            successes += 1;
        }
        samples.push(conf);

        let n = samples.len();
        if n < MIN_SAMPLES {
            continue;
        }
        let mu = samples.iter().sum::<f64>() / n as f64;
        // Binary conformance is a Bernoulli outcome, so it gets the Wilson
        // interval; fitness values get the normal approximation.
        let margin_stat = match kind {
            ConfKind::Bin => wilson_margin(successes, n, alpha)?,
            ConfKind::Fit => normal_margin(&samples, alpha)?,
        };
        // The interval is on the mean of the finite unseen remainder, not the
        // population mean: its prediction error is S * sqrt(1/n + 1/(N - n)),
        // so inflate the standard-error margin accordingly. Without this the
        // margin shrinks toward exhaustion while a single deviant unseen
        // resolution can still move the remainder mean arbitrarily.
        let remaining = positive.saturating_sub(n);
        // With only a handful of resolutions left the normal approximation on
        // the remainder is unreliable and finishing is cheaper than
        // estimating; keep going until exhaustion.
        if remaining < MIN_SAMPLES / 2 {
            continue;
        }
        let margin_stat = margin_stat * (1.0 + n as f64 / remaining as f64).sqrt();
        let rest = (1.0 - p_bar).max(0.0);
        let expected = estimate_expected(weighted_sum, p_bar, mu);
        let margin = rest * margin_stat;
        let done = if expected > 0.0 { margin / expected <= delta } else { margin <= delta };
        if done || i + 1 == positive {
            let exhausted = i + 1 == positive;
            return Ok(finish(expected, margin, samples, p_bar, mu, exhausted));
        }
    }

    // Enumeration exhausted before the stop condition fired (e.g. the
    // near-exhaustion guard kept us sampling); the alignment cache makes this
    // recomputation a lookup pass.
    exact_conformance(dist, checker, kind)
}

fn finish(
    expected: f64,
    margin: f64,
    samples: Vec<f64>,
    p_bar: f64,
    mu: f64,
    exhausted: bool,
) -> ApproxResult {
    let (margin, p_bar) = if exhausted { (0.0, 1.0) } else { (margin, p_bar) };
    ApproxResult {
        expected,
        margin,
        ci_low: (expected - margin).max(0.0),
        ci_high: (expected + margin).min(1.0),
        sampled: samples.len(),
        p_bar,
        exact: exhausted,
        mu_conf: mu,
        samples,
    }
}

/// Convenience: score a trace and estimate its expected conformance.
pub fn trace_conformance(
    model: &BehavioralModel,
    trace: &Trace,
    checker: &ConformanceChecker,
    kind: ConfKind,
    approx: Option<(f64, f64)>,
    cap: u128,
) -> Result<ApproxResult, ApproxError> {
    let dist = model.distribution_under_cap(trace, cap)?;
    match approx {
        Some((alpha, delta)) => approximate_conformance(&dist, checker, kind, alpha, delta),
        None => exact_conformance(&dist, checker, kind),
    }
}

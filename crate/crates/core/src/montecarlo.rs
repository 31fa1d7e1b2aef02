//! SNR sweeps, BER/PER estimation with Wilson intervals, and diversity-order
//! slope fits.

use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::phy::Scheme;
use crate::scenario::{run_trial, ScenarioConfig, TrialOutcome};

/// Trials per batch. Early stopping is checked only at batch boundaries,
/// which keeps results independent of the worker count.
pub const TRIAL_BATCH: u64 = 2048;

/// Minimum bit errors for a point to enter a slope fit.
pub const MIN_FIT_ERRORS: u64 = 10;

/// Width of the default slope window in dB.
pub const DEFAULT_WINDOW_DB: f64 = 10.0;

pub const DEFAULT_CI_LEVEL: f64 = 0.95;

#[derive(Debug, Clone, PartialEq)]
pub struct BerPoint {
    pub snr_db: f64,
    pub scheme: Scheme,
    pub trials: u64,
    pub bits_sent: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl BerPoint {
    pub fn from_counts(
        snr_db: f64,
        scheme: Scheme,
        trials: u64,
        bits_sent: u64,
        bit_errors: u64,
    ) -> Self {
        let ber = if bits_sent == 0 {
            0.0
        } else {
            bit_errors as f64 / bits_sent as f64
        };
        let (ci_low, ci_high) = confidence_interval(bit_errors, bits_sent, DEFAULT_CI_LEVEL);
        Self {
            snr_db,
            scheme,
            trials,
            bits_sent,
            bit_errors,
            ber,
            ci_low,
            ci_high,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: ScenarioConfig,
    /// Sorted by scheme, then SNR.
    pub points: Vec<BerPoint>,
}

impl SweepResult {
    pub fn scheme_points(&self, scheme: Scheme) -> Vec<BerPoint> {
        self.points
            .iter()
            .filter(|p| p.scheme == scheme)
            .cloned()
            .collect()
    }

    pub fn point(&self, scheme: Scheme, snr_db: f64) -> Option<&BerPoint> {
        self.points
            .iter()
            .find(|p| p.scheme == scheme && (p.snr_db - snr_db).abs() < 1e-9)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    /// Diversity order `d` in `ber ~ SNR^-d`.
    pub slope: f64,
    /// Standard error of the slope estimate.
    pub slope_stderr: f64,
    pub intercept: f64,
    pub snr_window_db: (f64, f64),
    pub r_squared: f64,
    pub n_points: usize,
}

/// Runs trials for one `(scheme, SNR)` point until `trials_per_point` or
/// `max_bit_errors` is reached.
pub fn run_point(config: &ScenarioConfig, snr_db: f64) -> Result<BerPoint> {
    let mut total = TrialOutcome::default();
    let mut trials = 0;
    while trials < config.trials_per_point {
        let end = (trials + TRIAL_BATCH).min(config.trials_per_point);
        let batch = (trials..end)
            .into_par_iter()
            .map(|t| run_trial(config, snr_db, t))
            .try_reduce(TrialOutcome::default, |a, b| Ok(a + b))?;
        total = total + batch;
        trials = end;
        if config.max_bit_errors > 0 && total.bit_errors >= config.max_bit_errors {
            break;
        }
    }
    Ok(BerPoint::from_counts(
        snr_db,
        config.link.scheme,
        trials,
        total.bits_sent,
        total.bit_errors,
    ))
}

/// BER versus SNR for each scheme. All schemes replay the same trial
/// substreams at each SNR (common random numbers).
pub fn ber_sweep(config: &ScenarioConfig, schemes: &[Scheme]) -> Result<SweepResult> {
    config.validate()?;
    let mut schemes = schemes.to_vec();
    schemes.sort();
    schemes.dedup();
    let mut points = Vec::new();
    for scheme in schemes {
        let cfg = config.with_scheme(scheme);
        cfg.validate()?;
        for snr in config.snr.points() {
            points.push(run_point(&cfg, snr)?);
        }
    }
    Ok(SweepResult {
        config: config.clone(),
        points,
    })
}

/// Packet error rate for `packet_bits` independent bits.
pub fn per_from_ber(ber: f64, packet_bits: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&ber) {
        return Err(Error::InvalidInput(format!(
            "ber must lie in [0, 1], got {ber}"
        )));
    }
    if packet_bits == 0 {
        return Err(Error::InvalidInput("packet_bits must be at least 1".into()));
    }
    // 1 - (1 - b)^L without cancellation at small b
    let bits = packet_bits as f64;
    Ok(-(bits * (-ber).ln_1p()).exp_m1())
}

/// Two-sided normal quantile for a confidence level.
pub fn z_for_level(level: f64) -> f64 {
    Normal::standard().inverse_cdf(0.5 + level / 2.0)
}

/// Wilson score interval for `bit_errors` out of `bits_sent`.
pub fn confidence_interval(bit_errors: u64, bits_sent: u64, level: f64) -> (f64, f64) {
    wilson(bit_errors, bits_sent, z_for_level(level))
}

/// Wilson score interval with an explicit normal quantile `z`.
pub fn wilson(bit_errors: u64, bits_sent: u64, z: f64) -> (f64, f64) {
    if bits_sent == 0 {
        return (0.0, 1.0);
    }
    let n = bits_sent as f64;
    let p = bit_errors.min(bits_sent) as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let margin = z * ((p * (1.0 - p) + z2 / (4.0 * n)) / n).sqrt();
    let mut lo = ((center - margin) / denom).clamp(0.0, 1.0);
    let mut hi = ((center + margin) / denom).clamp(0.0, 1.0);
    if bit_errors == 0 {
        lo = 0.0;
    }
    if bit_errors >= bits_sent {
        hi = 1.0;
    }
    (lo.min(p), hi.max(p))
}

/// Default fit window: the top `DEFAULT_WINDOW_DB` below the highest-SNR
/// point that still has `MIN_FIT_ERRORS` errors.
pub fn default_window(points: &[BerPoint]) -> Option<(f64, f64)> {
    let hi = points
        .iter()
        .filter(|p| p.bit_errors >= MIN_FIT_ERRORS)
        .map(|p| p.snr_db)
        .fold(None, |acc: Option<f64>, s| {
            Some(acc.map_or(s, |a| a.max(s)))
        })?;
    Some((hi - DEFAULT_WINDOW_DB, hi))
}

/// Window shared by every scheme of a sweep: the top `DEFAULT_WINDOW_DB`
/// below the highest SNR at which all schemes have `MIN_FIT_ERRORS` errors.
pub fn common_window(result: &SweepResult) -> Option<(f64, f64)> {
    let mut schemes: Vec<Scheme> = result.points.iter().map(|p| p.scheme).collect();
    schemes.sort();
    schemes.dedup();
    let hi = result
        .config
        .snr
        .points()
        .into_iter()
        .filter(|&snr| {
            schemes.iter().all(|&s| {
                result
                    .point(s, snr)
                    .is_some_and(|p| p.bit_errors >= MIN_FIT_ERRORS)
            })
        })
        .fold(None, |acc: Option<f64>, s| {
            Some(acc.map_or(s, |a| a.max(s)))
        })?;
    Some((hi - DEFAULT_WINDOW_DB, hi))
}

/// Least-squares fit of `log10(ber)` against `snr_db / 10` over the points
/// inside `window_db` that have at least `MIN_FIT_ERRORS` errors.
pub fn fit_diversity_order(points: &[BerPoint], window_db: (f64, f64)) -> Result<SlopeFit> {
    let (lo, hi) = window_db;
    let eps = 1e-9;
    let used: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.snr_db >= lo - eps && p.snr_db <= hi + eps)
        .filter(|p| p.bit_errors >= MIN_FIT_ERRORS && p.ber > 0.0)
        .map(|p| (p.snr_db / 10.0, p.ber.log10()))
        .collect();
    fit_log_log(&used, window_db)
}

fn fit_log_log(xy: &[(f64, f64)], window_db: (f64, f64)) -> Result<SlopeFit> {
    let n = xy.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 points with >= {MIN_FIT_ERRORS} errors in [{}, {}] dB, found {n}",
            window_db.0, window_db.1
        )));
    }
    let nf = n as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientData(
            "all fit points share one SNR".into(),
        ));
    }
    let b = sxy / sxx;
    let a = my - b * mx;
    let ssr: f64 = xy.iter().map(|p| (p.1 - a - b * p.0).powi(2)).sum();
    let r_squared = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };
    let slope_stderr = (ssr / (nf - 2.0) / sxx).sqrt();
    Ok(SlopeFit {
        slope: -b,
        slope_stderr,
        intercept: a,
        snr_window_db: window_db,
        r_squared,
        n_points: n,
    })
}

use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};

/// `err ≈ prefactor · t^exponent`, with the RMS log₁₀ residual of the fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub residual: f64,
    pub points: usize,
}

/// Least-squares line through `(log t, log err)`.
pub fn fit_power_law(ts: &[f64], errs: &[f64]) -> Result<PowerLawFit> {
    if ts.len() != errs.len() {
        return Err(SynthError::Fit(format!("{} times but {} errors", ts.len(), errs.len())));
    }
    if ts.len() < 4 {
        return Err(SynthError::Fit(format!("need at least 4 samples, got {}", ts.len())));
    }
    if let Some(bad) = ts.iter().chain(errs).find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(SynthError::Fit(format!("samples must be positive and finite, got {bad}")));
    }
    let xs: Vec<f64> = ts.iter().map(|t| t.log10()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.log10()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(SynthError::Fit("all sample times coincide".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(PowerLawFit { exponent: slope, prefactor: 10f64.powf(intercept), residual: (rss / n).sqrt(), points: xs.len() })
}

/// Fit after dropping samples whose error is below `floor`.
pub fn fit_above_floor(ts: &[f64], errs: &[f64], floor: f64) -> Result<PowerLawFit> {
    let (kept_t, kept_e): (Vec<f64>, Vec<f64>) =
        ts.iter().zip(errs).filter(|(_, e)| **e >= floor).map(|(t, e)| (*t, *e)).unzip();
    fit_power_law(&kept_t, &kept_e)
}

/// `points` logarithmically spaced values from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min) || points < 2 {
        return Err(SynthError::invalid(format!("invalid log grid [{min}, {max}] with {points} points")));
    }
    let (lo, hi) = (min.ln(), max.ln());
    Ok((0..points).map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp()).collect())
}

/// `points` evenly spaced values from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(max > min) || points < 2 {
        return Err(SynthError::invalid(format!("invalid grid [{min}, {max}] with {points} points")));
    }
    Ok((0..points).map(|i| min + (max - min) * i as f64 / (points - 1) as f64).collect())
}

/// Evaluates `error` on each grid point and fits the points above `floor`.
pub fn sweep_and_fit(ts: &[f64], floor: f64, error: impl Fn(f64) -> f64) -> Result<(Vec<f64>, PowerLawFit)> {
    let errs: Vec<f64> = ts.iter().map(|&t| error(t)).collect();
    let fit = fit_above_floor(ts, &errs, floor)?;
    Ok((errs, fit))
}

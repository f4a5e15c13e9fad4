//! Log-log scaling fits over sweep records.

use serde::Serialize;

use super::{Measure, RunRecord};
use crate::error::{Error, Result};

/// Regions smaller than this are excluded from fits; the smallest regions
/// carry the strongest finite-size distortion.
pub const MIN_FIT_M: usize = 4;

/// Least-squares fit of `ln(measure)` against `ln(m)`, plus the empirical
/// band constants `C1 <= measure / m^{d-1} <= C2` over the fitted points.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log-log space.
    pub residual: f64,
    pub c1: f64,
    pub c2: f64,
    pub points_used: usize,
    /// Smallest region side admitted to the fit.
    pub min_m: usize,
}

/// Fit the area-law exponent of `S` or `E_N` over records taken at fixed
/// `(d, c, n, model)`. Needs at least three usable points with positive
/// measure and `m >= MIN_FIT_M`.
pub fn fit_area_law(records: &[RunRecord], measure: Measure) -> Result<FitResult> {
    let value = |r: &RunRecord| -> f64 {
        match measure {
            Measure::S => r.s_nats,
            Measure::En => r.en_nats,
            _ => f64::NAN,
        }
    };
    if !matches!(measure, Measure::S | Measure::En) {
        return Err(Error::InvalidInput(
            "fit measure must be 's' or 'en'".into(),
        ));
    }

    let fitted: Vec<&RunRecord> = records
        .iter()
        .filter(|r| r.m >= MIN_FIT_M && value(r).is_finite() && value(r) > 0.0)
        .collect();
    if fitted.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 fit points with m >= {MIN_FIT_M} and positive measure, found {}",
            fitted.len()
        )));
    }
    let first = fitted[0];
    if !fitted
        .iter()
        .all(|r| r.d == first.d && r.c == first.c && r.n == first.n && r.model == first.model)
    {
        return Err(Error::InvalidInput(
            "fit records must share d, c, n and model".into(),
        ));
    }

    let points: Vec<(f64, f64)> = fitted
        .iter()
        .map(|r| ((r.m as f64).ln(), value(r).ln()))
        .collect();
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let var_x: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if var_x == 0.0 {
        return Err(Error::InvalidInput(
            "fit needs at least two distinct m values".into(),
        ));
    }
    let cov: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = cov / var_x;
    let intercept = mean_y - slope * mean_x;
    let residual = (points
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum::<f64>()
        / len)
        .sqrt();

    let surface = |r: &RunRecord| (r.m as f64).powi(r.d as i32 - 1);
    let ratios = fitted.iter().map(|r| value(r) / surface(r));
    let c1 = ratios.clone().fold(f64::INFINITY, f64::min);
    let c2 = ratios.fold(f64::NEG_INFINITY, f64::max);

    Ok(FitResult {
        slope,
        intercept,
        residual,
        c1,
        c2,
        points_used: fitted.len(),
        min_m: MIN_FIT_M,
    })
}

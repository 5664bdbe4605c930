//! Least-squares power-law fits in log₂–log₂ coordinates.

use crate::error::{Error, Result};

/// `log₂ err ≈ intercept + slope · log₂ n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination; 1 when the errors are all equal.
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least squares of `log₂ err` on `log₂ n`.
///
/// Needs at least three points, positive values and at least two distinct `n`.
pub fn fit_rate(points: &[(f64, f64)]) -> Result<RateFit> {
    if points.len() < 3 {
        return Err(Error::Domain(format!(
            "rate fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(n, e)) = points
        .iter()
        .find(|&&(n, e)| !(n > 0.0 && e > 0.0 && n.is_finite() && e.is_finite()))
    {
        return Err(Error::Domain(format!(
            "rate fit needs positive finite values, got ({n}, {e})"
        )));
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.log2()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.log2()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("rate fit needs at least two distinct budgets".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - sse / syy).clamp(0.0, 1.0)
    };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        n_points: points.len(),
    })
}

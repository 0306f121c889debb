//! Least-squares fits for scaling laws.
//!
//! Most quantitative statements in this crate are power laws — `value ≍ t^s`
//! or `value ≍ |h|^s` — so the workhorse is an ordinary least-squares line
//! through (log abscissa, log value) pairs.

use crate::error::{Error, Result};

/// Result of a log-log least-squares fit.
#[derive(Debug, Clone)]
pub struct ScalingFit {
    /// Fitted slope of log(value) against log(abscissa).
    pub slope: f64,
    /// Fitted intercept (value of log(value) at log(abscissa) = 0).
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space. Always ≥ 0.
    pub residual: f64,
    /// Number of points used.
    pub n_points: usize,
}

/// Fit a straight line y = slope·x + intercept by least squares.
pub fn fit_line(points: &[(f64, f64)]) -> Result<ScalingFit> {
    let n = points.len();
    if n < 2 {
        return Err(Error::DegenerateFit(format!("need at least 2 points, got {n}")));
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx <= 0.0 || !sxx.is_finite() {
        return Err(Error::DegenerateFit("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    Ok(ScalingFit {
        slope,
        intercept,
        residual: (ss_res / nf).sqrt(),
        n_points: n,
    })
}

/// Fit log(value) against log(abscissa). Requires at least 4 points and
/// strictly positive data on both axes.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(format!(
            "log-log fit needs at least 4 points, got {}",
            points.len()
        )));
    }
    let mut logged = Vec::with_capacity(points.len());
    for &(x, y) in points {
        if x <= 0.0 || y <= 0.0 || !x.is_finite() || !y.is_finite() {
            return Err(Error::DegenerateFit(format!(
                "log-log fit needs positive finite data, got ({x:.3e}, {y:.3e})"
            )));
        }
        logged.push((x.ln(), y.ln()));
    }
    fit_line(&logged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..=8)
            .map(|k| {
                let t = 10.0f64.powf(-(k as f64) / 4.0);
                (t, 3.0 * t.powf(-0.5))
            })
            .collect();
        let fit = fit_loglog(&pts).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-12);
        assert!((fit.intercept - 3.0f64.ln()).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
        assert_eq!(fit.n_points, 8);
    }

    #[test]
    fn rejects_too_few_or_nonpositive() {
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 2.0), (3.0, -3.0), (4.0, 4.0)]).is_err());
    }

    #[test]
    fn residual_nonnegative_on_noisy_data() {
        let pts = [(1.0, 1.1), (2.0, 1.9), (4.0, 4.2), (8.0, 7.8)];
        let fit = fit_loglog(&pts).unwrap();
        assert!(fit.residual >= 0.0);
    }
}

//! Least-squares power-law fits.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Line through `(ln x, ln y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute residual in log space.
    pub max_residual: f64,
    pub points: Vec<(f64, f64)>,
}

pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<RateFit> {
    if xs.len() != ys.len() {
        return Err(Error::Length {
            op: "fit_loglog",
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::Domain {
            op: "fit_loglog",
            reason: "at least three points are required",
        });
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain {
            op: "fit_loglog",
            reason: "data must be positive and finite",
        });
    }
    let points: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (libm::log(*x), libm::log(*y)))
        .collect();
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain {
            op: "fit_loglog",
            reason: "abscissae must not all coincide",
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = points
        .iter()
        .map(|p| libm::fabs(p.1 - (intercept + slope * p.0)))
        .fold(0.0, f64::max);
    Ok(RateFit {
        slope,
        intercept,
        max_residual,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let xs = [0.4, 0.2, 0.1, 0.05];
        let f = fit_loglog(&xs, &xs).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 / (x * x)).collect();
        assert!((fit_loglog(&xs, &ys).unwrap().slope + 2.0).abs() < 1e-12);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.sqrt()).collect();
        let f = fit_loglog(&xs, &ys).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(f.max_residual <= 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_loglog(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(fit_loglog(&[1.0, 2.0, 3.0], &[1.0, 0.0, 2.0]).is_err());
        assert!(fit_loglog(&[1.0, -2.0, 3.0], &[1.0, 1.0, 2.0]).is_err());
        assert!(fit_loglog(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
        assert!(fit_loglog(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]).is_err());
    }
}

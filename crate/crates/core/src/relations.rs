//! Index–GDP power law with residual-band outliers, performance labels, and
//! the cross-index comparison regression.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::ols::{fit_line, slope_through_origin};
use crate::panel::{CountryCode, Panel};
use crate::rank_size::FitResult;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdpFitOptions<T> {
    /// Half-width of the accepted band, in residual standard deviations.
    pub band_multiplier: T,
    /// Number of refits after excluding the previously flagged countries.
    pub refit_passes: usize,
}

impl<T: Scalar> Default for GdpFitOptions<T> {
    fn default() -> Self {
        GdpFitOptions {
            band_multiplier: T::lit(2.0),
            refit_passes: 1,
        }
    }
}

/// One country's position relative to the fitted law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdpPoint<T> {
    pub country: CountryCode,
    pub gdp: T,
    pub index: T,
    /// `ln(index) - (intercept + gamma * ln(gdp))` against the final fit.
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GdpFit<T> {
    pub year: i32,
    /// `exponent` is gamma in `index ~ GDP^gamma`.
    pub fit: FitResult<T>,
    /// Population standard deviation of the final fit's residuals.
    pub residual_sd: T,
    pub band_multiplier: T,
    pub outliers: BTreeSet<CountryCode>,
    /// Countries left out when computing the final fit.
    pub excluded_in_fit: BTreeSet<CountryCode>,
    pub points: Vec<GdpPoint<T>>,
}

impl<T: Scalar> GdpFit<T> {
    /// `ln(index)` predicted by the final fit.
    pub fn predict_log(&self, gdp: T) -> T {
        self.fit.intercept + self.fit.exponent * gdp.ln()
    }

    pub fn band_half_width(&self) -> T {
        self.band_multiplier * self.residual_sd
    }
}

fn population_sd<T: Scalar>(xs: &[T]) -> T {
    let n = T::from_usize_lossy(xs.len());
    let mean = xs.iter().copied().sum::<T>() / n;
    (xs.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / n).sqrt()
}

/// Regresses `ln(index)` on `ln(GDP)` across the countries observed in both
/// panels in `year`, then flags countries outside `band_multiplier` residual
/// standard deviations (strictly).
pub fn fit_gdp_power_law<T: Scalar>(
    index: &Panel<T>,
    gdp: &Panel<T>,
    year: i32,
    options: GdpFitOptions<T>,
) -> Result<GdpFit<T>> {
    let mut pairs = Vec::new();
    for (country, idx) in index.year_values(year) {
        let Some(g) = gdp.get(country, year) else { continue };
        for (v, what) in [(idx, "index"), (g, "GDP")] {
            if !(v > T::zero()) {
                return Err(Error::LogDomain {
                    value: v.as_f64(),
                    context: format!("{what} of {country} in {year}"),
                });
            }
        }
        pairs.push((country, g, idx));
    }
    if pairs.len() < 10 {
        return Err(Error::InsufficientData {
            needed: 10,
            got: pairs.len(),
        });
    }
    let lx: Vec<T> = pairs.iter().map(|p| p.1.ln()).collect();
    let ly: Vec<T> = pairs.iter().map(|p| p.2.ln()).collect();

    let fit_excluding = |excluded: &BTreeSet<CountryCode>| -> Result<(FitResult<T>, T, Vec<T>)> {
        let keep: Vec<usize> = (0..pairs.len()).filter(|&i| !excluded.contains(&pairs[i].0)).collect();
        let x: Vec<T> = keep.iter().map(|&i| lx[i]).collect();
        let y: Vec<T> = keep.iter().map(|&i| ly[i]).collect();
        let line = fit_line(&x, &y)?;
        let in_fit: Vec<T> = keep.iter().map(|&i| ly[i] - line.predict(lx[i])).collect();
        let sd = population_sd(&in_fit);
        let all = (0..pairs.len()).map(|i| ly[i] - line.predict(lx[i])).collect();
        Ok((FitResult::from_line(&line), sd, all))
    };
    // Residuals at rounding level are never outliers, so data lying exactly
    // on a law stays clean.
    let scale = ly.iter().fold(T::one(), |m, v| m.max(v.abs()));
    let noise_floor = T::lit(1e3) * T::epsilon() * scale;
    let flag = |residuals: &[T], sd: T| -> BTreeSet<CountryCode> {
        let limit = (options.band_multiplier * sd).max(noise_floor);
        residuals
            .iter()
            .zip(&pairs)
            .filter(|(r, _)| r.abs() > limit)
            .map(|(_, p)| p.0)
            .collect()
    };

    let mut excluded = BTreeSet::new();
    let (mut fit, mut sd, mut residuals) = fit_excluding(&excluded)?;
    let mut outliers = flag(&residuals, sd);
    for _ in 0..options.refit_passes {
        excluded = outliers.clone();
        (fit, sd, residuals) = fit_excluding(&excluded)?;
        outliers = flag(&residuals, sd);
    }

    let points = pairs
        .iter()
        .zip(residuals)
        .map(|(&(country, gdp, index), residual)| GdpPoint {
            country,
            gdp,
            index,
            residual,
        })
        .collect();
    Ok(GdpFit {
        year,
        fit,
        residual_sd: sd,
        band_multiplier: options.band_multiplier,
        outliers,
        excluded_in_fit: excluded,
        points,
    })
}

/// The flagged set of the final pass.
pub fn detect_outliers<T: Scalar>(fit: &GdpFit<T>) -> BTreeSet<CountryCode> {
    fit.outliers.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Performance {
    /// Below the law: more GDP than the freedom level predicts.
    Over,
    /// Above the law: less GDP than the freedom level predicts.
    Under,
    OnTrend,
}

impl fmt::Display for Performance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Performance::Over => "OVER",
            Performance::Under => "UNDER",
            Performance::OnTrend => "ON_TREND",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerformanceLabel<T> {
    pub country: CountryCode,
    pub year: i32,
    pub label: Performance,
    pub residual: T,
}

pub fn classify_performance<T: Scalar>(fit: &GdpFit<T>, tolerance: T) -> Vec<PerformanceLabel<T>> {
    fit.points
        .iter()
        .map(|p| PerformanceLabel {
            country: p.country,
            year: fit.year,
            label: if p.residual < -tolerance {
                Performance::Over
            } else if p.residual > tolerance {
                Performance::Under
            } else {
                Performance::OnTrend
            },
            residual: p.residual,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossIndexFit<T> {
    /// Slope of normalized EFW on normalized IEF, with intercept.
    pub slope: T,
    pub intercept: T,
    pub slope_stderr: T,
    pub r2: T,
    pub n_points: usize,
    /// Least-squares slope of the same regression forced through the origin.
    pub slope_through_origin: T,
    pub mean_efw: T,
    pub mean_ief: T,
}

/// Regresses `efw_norm` on `ief_norm` over their common support, which must
/// be identical.
pub fn cross_index_regression<T: Scalar>(
    efw_norm: &Panel<T>,
    ief_norm: &Panel<T>,
) -> Result<CrossIndexFit<T>> {
    if !efw_norm.keys().eq(ief_norm.keys()) {
        return Err(Error::SupportMismatch);
    }
    let y = efw_norm.values();
    let x = ief_norm.values();
    for &v in x.iter().chain(&y) {
        if !(T::zero()..=T::one()).contains(&v) {
            return Err(Error::InvalidParameter(format!(
                "normalized values must lie in [0, 1], found {v}"
            )));
        }
    }
    let line = fit_line(&x, &y)?;
    let n = T::from_usize_lossy(x.len());
    Ok(CrossIndexFit {
        slope: line.slope,
        intercept: line.intercept,
        slope_stderr: line.slope_stderr,
        r2: line.r2,
        n_points: line.n,
        slope_through_origin: slope_through_origin(&x, &y)?,
        mean_efw: y.iter().copied().sum::<T>() / n,
        mean_ief: x.iter().copied().sum::<T>() / n,
    })
}

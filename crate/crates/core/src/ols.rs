//! Simple least-squares line fits.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    pub slope_stderr: T,
    pub intercept_stderr: T,
    /// Coefficient of determination, clamped to [0, 1]. A response with no
    /// spread that is fitted exactly gets 1.
    pub r2: T,
    pub n: usize,
    /// Residual sum of squares.
    pub rss: T,
    /// Total sum of squares about the mean response.
    pub tss: T,
}

impl<T: Scalar> LinearFit<T> {
    pub fn predict(&self, x: T) -> T {
        self.intercept + self.slope * x
    }
}

/// Ordinary least squares `y = intercept + slope * x`. Needs three points so
/// the slope standard error `sqrt(rss / (n - 2) / Sxx)` is defined.
pub fn fit_line<T: Scalar>(x: &[T], y: &[T]) -> Result<LinearFit<T>> {
    assert_eq!(x.len(), y.len(), "x and y must have equal length");
    let n = x.len();
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, got: n });
    }
    let nf = T::from_usize_lossy(n);
    let mx = x.iter().copied().sum::<T>() / nf;
    let my = y.iter().copied().sum::<T>() / nf;
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        let dy = yi - my;
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if sxx <= T::zero() {
        return Err(Error::DegenerateDesign);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let r = yi - intercept - slope * xi;
            r * r
        })
        .sum::<T>();
    let r2 = if syy > T::zero() {
        (T::one() - rss / syy).max(T::zero()).min(T::one())
    } else {
        T::one()
    };
    let s2 = rss / T::from_usize_lossy(n - 2);
    let slope_stderr = (s2 / sxx).sqrt();
    let intercept_stderr = (s2 * (T::one() / nf + mx * mx / sxx)).sqrt();
    Ok(LinearFit {
        slope,
        intercept,
        slope_stderr,
        intercept_stderr,
        r2,
        n,
        rss,
        tss: syy,
    })
}

/// Least-squares slope of `y = slope * x` (no intercept).
pub fn slope_through_origin<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    assert_eq!(x.len(), y.len(), "x and y must have equal length");
    let sxx = x.iter().map(|&v| v * v).sum::<T>();
    if x.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    if sxx <= T::zero() {
        return Err(Error::DegenerateDesign);
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| a * b).sum::<T>() / sxx)
}

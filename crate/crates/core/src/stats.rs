//! Moments, empirical distribution functions, histograms and the
//! Kolmogorov–Smirnov test against a fitted normal law.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::{cmp_finite, Scalar};

/// Population moments of a sample. Kurtosis is non-excess (normal = 3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary<T> {
    pub n: usize,
    pub mean: T,
    pub sd: T,
    pub variance: T,
    /// `sd / mean`; `None` when the mean is zero.
    pub cov: Option<T>,
    /// `None` when the sample has zero variance.
    pub skewness: Option<T>,
    pub kurtosis: Option<T>,
}

impl<T: Scalar> MomentSummary<T> {
    /// Skewness and kurtosis, or [`Error::ZeroVariance`] for a constant sample.
    pub fn shape(&self) -> Result<(T, T)> {
        match (self.skewness, self.kurtosis) {
            (Some(s), Some(k)) => Ok((s, k)),
            _ => Err(Error::ZeroVariance),
        }
    }

    pub const CSV_HEADER: &'static str = "n,mean,sd,variance,cov,skewness,kurtosis";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.mean,
            self.sd,
            self.variance,
            opt(self.cov),
            opt(self.skewness),
            opt(self.kurtosis)
        )
    }

    pub fn to_key_value(&self) -> String {
        kv(&[
            ("n", self.n.to_string()),
            ("mean", self.mean.to_string()),
            ("sd", self.sd.to_string()),
            ("variance", self.variance.to_string()),
            ("cov", opt(self.cov)),
            ("skewness", opt(self.skewness)),
            ("kurtosis", opt(self.kurtosis)),
        ])
    }
}

fn opt<T: Scalar>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn kv(pairs: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k}={v}");
    }
    s
}

pub fn moments<T: Scalar>(values: &[T]) -> Result<MomentSummary<T>> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let nf = T::from_usize_lossy(n);
    let mean = values.iter().copied().sum::<T>() / nf;
    let (mut m2, mut m3, mut m4) = (T::zero(), T::zero(), T::zero());
    for &v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 = m2 + d2;
        m3 = m3 + d2 * d;
        m4 = m4 + d2 * d2;
    }
    let variance = m2 / nf;
    let sd = variance.sqrt();
    let (skewness, kurtosis) = if variance > T::zero() {
        (
            Some((m3 / nf) / (variance * sd)),
            Some((m4 / nf) / (variance * variance)),
        )
    } else {
        (None, None)
    };
    Ok(MomentSummary {
        n,
        mean,
        sd,
        variance,
        cov: (mean != T::zero()).then(|| sd / mean),
        skewness,
        kurtosis,
    })
}

/// Right-continuous empirical CDF: `steps[i] = (x_i, F(x_i))` over the
/// distinct sorted sample values.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf<T> {
    pub steps: Vec<(T, T)>,
}

impl<T: Scalar> Ecdf<T> {
    pub fn eval(&self, x: T) -> T {
        match self.steps.partition_point(|&(v, _)| v <= x) {
            0 => T::zero(),
            i => self.steps[i - 1].1,
        }
    }
}

pub fn ecdf<T: Scalar>(values: &[T]) -> Result<Ecdf<T>> {
    if values.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(cmp_finite);
    let n = T::from_usize_lossy(sorted.len());
    let mut steps: Vec<(T, T)> = Vec::new();
    for (i, &v) in sorted.iter().enumerate() {
        let frac = T::from_usize_lossy(i + 1) / n;
        match steps.last_mut() {
            Some(last) if last.0 == v => last.1 = frac,
            _ => steps.push((v, frac)),
        }
    }
    Ok(Ecdf { steps })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram<T> {
    /// `counts.len() + 1` strictly increasing edges.
    pub bin_edges: Vec<T>,
    pub counts: Vec<usize>,
}

impl<T: Scalar> Histogram<T> {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Bins of `bin_width` starting at `origin`, extended until the sample
/// maximum is covered. Bins are half-open `[lo, hi)`; values below `origin`
/// are not counted.
pub fn histogram<T: Scalar>(values: &[T], bin_width: T, origin: T) -> Result<Histogram<T>> {
    check_width(bin_width)?;
    let max = values.iter().copied().filter(|&v| v >= origin).fold(None, |m: Option<T>, v| {
        Some(m.map_or(v, |m| m.max(v)))
    });
    let bins = match max {
        None => 0,
        Some(m) => ((m - origin) / bin_width).floor().to_usize().unwrap_or(0) + 1,
    };
    Ok(fill(values, bin_width, origin, bins, false))
}

/// Fixed range `[origin, origin + bins * bin_width]`; the upper end is
/// included in the last bin, anything outside is dropped.
pub fn histogram_range<T: Scalar>(
    values: &[T],
    bin_width: T,
    origin: T,
    bins: usize,
) -> Result<Histogram<T>> {
    check_width(bin_width)?;
    Ok(fill(values, bin_width, origin, bins, true))
}

fn check_width<T: Scalar>(w: T) -> Result<()> {
    if w > T::zero() && w.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("bin width must be positive, got {w}")))
    }
}

fn fill<T: Scalar>(values: &[T], width: T, origin: T, bins: usize, close_last: bool) -> Histogram<T> {
    let bin_edges: Vec<T> = (0..=bins)
        .map(|i| origin + width * T::from_usize_lossy(i))
        .collect();
    let mut counts = vec![0usize; bins];
    if bins > 0 {
        let top = bin_edges[bins];
        for &v in values {
            if v < origin || v > top || (v == top && !close_last) {
                continue;
            }
            let mut idx = ((v - origin) / width).floor().to_usize().unwrap_or(0).min(bins - 1);
            // Guard against the division landing one bin off near an edge.
            if v < bin_edges[idx] {
                idx -= 1;
            } else if idx + 1 < bins && v >= bin_edges[idx + 1] {
                idx += 1;
            }
            counts[idx] += 1;
        }
    }
    Histogram { bin_edges, counts }
}

/// Outcome of a KS test of a sample against a normal law fitted to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult<T> {
    pub dks: T,
    pub critical: T,
    pub p_value: T,
    pub alpha: T,
    pub n: usize,
    pub fitted_mu: T,
    pub fitted_sigma2: T,
}

impl<T: Scalar> KsResult<T> {
    /// `true` when normality is not rejected at `alpha`.
    pub fn normal_not_rejected(&self) -> bool {
        self.dks < self.critical
    }

    pub fn decision(&self) -> &'static str {
        if self.normal_not_rejected() {
            "normal not rejected"
        } else {
            "normal rejected"
        }
    }

    pub const CSV_HEADER: &'static str = "n,dks,critical,p_value,alpha,mu,sigma2,decision";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.dks,
            self.critical,
            self.p_value,
            self.alpha,
            self.fitted_mu,
            self.fitted_sigma2,
            self.decision()
        )
    }

    pub fn to_key_value(&self) -> String {
        kv(&[
            ("n", self.n.to_string()),
            ("dks", self.dks.to_string()),
            ("critical", self.critical.to_string()),
            ("p_value", self.p_value.to_string()),
            ("alpha", self.alpha.to_string()),
            ("mu", self.fitted_mu.to_string()),
            ("sigma2", self.fitted_sigma2.to_string()),
            ("decision", self.decision().to_string()),
        ])
    }
}

/// Finite-sample scaling `sqrt(n) + 0.12 + 0.11 / sqrt(n)`.
pub fn ks_effective_sqrt_n<T: Scalar>(n: usize) -> T {
    let rn = T::from_usize_lossy(n).sqrt();
    rn + T::lit(0.12) + T::lit(0.11) / rn
}

/// Asymptotic critical coefficient `c(alpha) = sqrt(-ln(alpha / 2) / 2)`;
/// `c(0.05) = 1.3581`.
pub fn ks_coefficient<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok((-(alpha / T::lit(2.0)).ln() / T::lit(2.0)).sqrt())
}

pub fn ks_critical_value<T: Scalar>(n: usize, alpha: T) -> Result<T> {
    if n == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    Ok(ks_coefficient(alpha)? / ks_effective_sqrt_n::<T>(n))
}

/// Kolmogorov survival function
/// `Q(l) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 l^2)`, summed until a term
/// drops below 1e-12. Small arguments use the equivalent theta-function
/// series, which converges where the alternating one does not.
pub fn kolmogorov_q<T: Scalar>(lambda: T) -> T {
    let tiny = T::lit(1e-12);
    if lambda <= T::zero() {
        return T::one();
    }
    let q = if lambda < T::lit(0.5) {
        let pi2 = T::lit(std::f64::consts::PI * std::f64::consts::PI);
        let pre = T::lit((2.0 * std::f64::consts::PI).sqrt()) / lambda;
        let mut sum = T::zero();
        for k in 1..=64usize {
            let odd = T::from_usize_lossy(2 * k - 1);
            let term = (-(odd * odd) * pi2 / (T::lit(8.0) * lambda * lambda)).exp();
            sum = sum + term;
            if term < tiny {
                break;
            }
        }
        T::one() - pre * sum
    } else {
        let mut sum = T::zero();
        let mut sign = T::one();
        for k in 1..=1000usize {
            let kf = T::from_usize_lossy(k);
            let term = (-T::lit(2.0) * kf * kf * lambda * lambda).exp();
            sum = sum + sign * term;
            if term < tiny {
                break;
            }
            sign = -sign;
        }
        T::lit(2.0) * sum
    };
    q.max(T::zero()).min(T::one())
}

/// p-value of a KS distance `dks` for a sample of size `n`.
pub fn ks_p_value<T: Scalar>(dks: T, n: usize) -> T {
    kolmogorov_q(dks * ks_effective_sqrt_n::<T>(n))
}

/// `sup |F_n(x) - Phi((x - mu) / sigma)|` with `(mu, sigma)` supplied,
/// evaluated on both sides of every jump of the ECDF.
pub fn ks_distance_normal<T: Scalar>(values: &[T], mu: T, sigma: T) -> T {
    let mut sorted = values.to_vec();
    sorted.sort_by(cmp_finite);
    let n = T::from_usize_lossy(sorted.len());
    sorted
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, &x)| {
            let f = ((x - mu) / sigma).std_normal_cdf();
            let above = T::from_usize_lossy(i + 1) / n - f;
            let below = f - T::from_usize_lossy(i) / n;
            acc.max(above).max(below)
        })
}

/// Tests the sample against a normal law whose mean and (population)
/// variance are estimated from the same sample.
pub fn ks_normal_test<T: Scalar>(values: &[T], alpha: T) -> Result<KsResult<T>> {
    let n = values.len();
    if n < 8 {
        return Err(Error::InsufficientData { needed: 8, got: n });
    }
    let m = moments(values)?;
    if m.variance <= T::zero() {
        return Err(Error::ZeroVariance);
    }
    let dks = ks_distance_normal(values, m.mean, m.sd);
    Ok(KsResult {
        dks,
        critical: ks_critical_value(n, alpha)?,
        p_value: ks_p_value(dks, n),
        alpha,
        n,
        fitted_mu: m.mean,
        fitted_sigma2: m.variance,
    })
}

//! Competition ranking and rank-size law fits.
//!
//! Both laws are fitted by ordinary least squares on log-transformed
//! values: `ln v = a + lambda * r` for the exponential law and
//! `ln v = a + nu * ln r` for the power law. Tied countries each contribute
//! one point at their shared rank.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ols::{fit_line, LinearFit};
use crate::panel::{CountryCode, Panel};
use crate::scalar::{cmp_finite, Scalar};

/// Default `|nu + 1|` below which a power fit is reported as Zipf-like.
pub const ZIPF_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedEntry<T> {
    pub rank: usize,
    pub country: CountryCode,
    pub value: T,
}

/// Competition ("1224") ranks for values ordered from largest to smallest:
/// each rank is one plus the number of strictly larger values.
pub fn rank_values<T: Scalar>(values: &[(CountryCode, T)]) -> Vec<RankedEntry<T>> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| cmp_finite(&b.1, &a.1).then(a.0.cmp(&b.0)));
    let mut out: Vec<RankedEntry<T>> = Vec::with_capacity(sorted.len());
    for (i, (country, value)) in sorted.into_iter().enumerate() {
        let rank = match out.last() {
            Some(prev) if prev.value == value => prev.rank,
            _ => i + 1,
        };
        out.push(RankedEntry {
            rank,
            country,
            value,
        });
    }
    out
}

/// Ranks one year's countries by descending value; ties are listed
/// alphabetically by code.
pub fn rank_countries<T: Scalar>(panel: &Panel<T>, year: i32) -> Result<Vec<RankedEntry<T>>> {
    let values = panel.year_values(year);
    if values.is_empty() {
        return Err(Error::MissingYear(year));
    }
    Ok(rank_values(&values))
}

/// Inclusive rank interval; `max_rank = None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitWindow {
    pub min_rank: usize,
    pub max_rank: Option<usize>,
}

impl FitWindow {
    pub const FULL: FitWindow = FitWindow {
        min_rank: 1,
        max_rank: None,
    };

    pub fn new(min_rank: usize, max_rank: Option<usize>) -> Result<Self> {
        if min_rank < 1 {
            return Err(Error::InvalidParameter("window min_rank must be >= 1".into()));
        }
        if let Some(max) = max_rank {
            if max < min_rank {
                return Err(Error::InvalidParameter(format!(
                    "window max_rank {max} is below min_rank {min_rank}"
                )));
            }
        }
        Ok(FitWindow { min_rank, max_rank })
    }

    pub fn from_min(min_rank: usize) -> Result<Self> {
        Self::new(min_rank, None)
    }

    pub fn contains(&self, rank: usize) -> bool {
        rank >= self.min_rank && self.max_rank.is_none_or(|m| rank <= m)
    }
}

impl fmt::Display for FitWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.max_rank {
            Some(max) => write!(f, "{}:{}", self.min_rank, max),
            None => write!(f, "{}:", self.min_rank),
        }
    }
}

/// Parses `MIN:MAX`, `MIN:` or `MIN:max`.
impl FromStr for FitWindow {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("invalid window {s:?}, expected MIN:MAX"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let min: usize = lo.trim().parse().map_err(|_| bad())?;
        let max = match hi.trim() {
            "" | "max" | "inf" => None,
            v => Some(v.parse().map_err(|_| bad())?),
        };
        FitWindow::new(min, max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult<T> {
    pub exponent: T,
    pub stderr: T,
    /// `stderr / |exponent|`.
    pub rel_err: T,
    pub r2: T,
    pub n_points: usize,
    pub intercept: T,
    /// Residual sum of squares in log space.
    pub rss: T,
}

impl<T: Scalar> FitResult<T> {
    pub fn from_line(line: &LinearFit<T>) -> Self {
        FitResult {
            exponent: line.slope,
            stderr: line.slope_stderr,
            rel_err: line.slope_stderr / line.slope.abs(),
            r2: line.r2,
            n_points: line.n,
            intercept: line.intercept,
            rss: line.rss,
        }
    }

    /// Whether a power-law exponent is within `tolerance` of -1.
    pub fn is_zipf_like(&self, tolerance: T) -> bool {
        (self.exponent + T::one()).abs() < tolerance
    }
}

fn log_points<T: Scalar>(
    ranked: &[RankedEntry<T>],
    window: FitWindow,
    log_rank: bool,
) -> Result<(Vec<T>, Vec<T>)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for e in ranked.iter().filter(|e| window.contains(e.rank)) {
        if !(e.value > T::zero()) {
            return Err(Error::LogDomain {
                value: e.value.as_f64(),
                context: format!("{} at rank {}", e.country, e.rank),
            });
        }
        let r = T::from_usize_lossy(e.rank);
        xs.push(if log_rank { r.ln() } else { r });
        ys.push(e.value.ln());
    }
    if xs.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: xs.len(),
        });
    }
    Ok((xs, ys))
}

/// `value ~ exp(lambda * rank)` over the window.
pub fn fit_exponential<T: Scalar>(ranked: &[RankedEntry<T>], window: FitWindow) -> Result<FitResult<T>> {
    let (x, y) = log_points(ranked, window, false)?;
    Ok(FitResult::from_line(&fit_line(&x, &y)?))
}

/// `value ~ rank^nu` over the window.
pub fn fit_power<T: Scalar>(ranked: &[RankedEntry<T>], window: FitWindow) -> Result<FitResult<T>> {
    let (x, y) = log_points(ranked, window, true)?;
    Ok(FitResult::from_line(&fit_line(&x, &y)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Breakpoint {
    Fixed(usize),
    /// Scan every rank in `min..=max` and keep the one with the smallest
    /// combined residual sum of squares.
    Auto { min: usize, max: usize },
}

impl Breakpoint {
    pub const DEFAULT_AUTO: Breakpoint = Breakpoint::Auto { min: 5, max: 30 };
}

impl fmt::Display for Breakpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Breakpoint::Fixed(b) => write!(f, "{b}"),
            Breakpoint::Auto { min, max } => write!(f, "auto[{min}:{max}]"),
        }
    }
}

/// Parses `N`, `auto` (default scan range) or `auto:MIN:MAX`.
impl FromStr for Breakpoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("invalid breakpoint {s:?}"));
        let s = s.trim();
        if s == "auto" {
            return Ok(Breakpoint::DEFAULT_AUTO);
        }
        if let Some(range) = s.strip_prefix("auto:") {
            let (lo, hi) = range.split_once(':').ok_or_else(bad)?;
            let (min, max) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
            if min < 1 || max < min {
                return Err(bad());
            }
            return Ok(Breakpoint::Auto { min, max });
        }
        let b: usize = s.parse().map_err(|_| bad())?;
        if b < 1 {
            return Err(bad());
        }
        Ok(Breakpoint::Fixed(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentedFit<T> {
    pub left: FitResult<T>,
    pub right: FitResult<T>,
    pub breakpoint: usize,
    pub left_window: FitWindow,
    pub right_window: FitWindow,
}

impl<T: Scalar> SegmentedFit<T> {
    pub fn total_rss(&self) -> T {
        self.left.rss + self.right.rss
    }
}

/// Two power laws on `[outer.min_rank, b]` and `[b, outer.max_rank]`; the
/// breakpoint rank belongs to both segments.
pub fn fit_segmented_power<T: Scalar>(
    ranked: &[RankedEntry<T>],
    breakpoint: Breakpoint,
    outer: FitWindow,
) -> Result<SegmentedFit<T>> {
    let at = |b: usize| -> Result<SegmentedFit<T>> {
        let left_window = FitWindow::new(outer.min_rank, Some(b.max(outer.min_rank)))?;
        let right_window = FitWindow::new(b, outer.max_rank.map(|m| m.max(b)))?;
        Ok(SegmentedFit {
            left: fit_power(ranked, left_window)?,
            right: fit_power(ranked, right_window)?,
            breakpoint: b,
            left_window,
            right_window,
        })
    };
    match breakpoint {
        Breakpoint::Fixed(b) => at(b),
        Breakpoint::Auto { min, max } => {
            let mut best: Option<SegmentedFit<T>> = None;
            let mut last_err = None;
            for b in min..=max {
                match at(b) {
                    Ok(fit) => {
                        if best.is_none_or(|cur| fit.total_rss() < cur.total_rss()) {
                            best = Some(fit);
                        }
                    }
                    // A log-domain failure affects every candidate alike.
                    Err(e @ Error::LogDomain { .. }) => return Err(e),
                    Err(e) => last_err = Some(e),
                }
            }
            best.ok_or_else(|| {
                last_err.unwrap_or(Error::InsufficientData { needed: 3, got: 0 })
            })
        }
    }
}

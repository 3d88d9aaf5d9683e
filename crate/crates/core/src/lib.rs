//! Statistical toolkit for economic freedom index panels.
//!
//! The pipeline covers panel ingestion ([`panel`]), distribution statistics
//! and normality testing ([`stats`]), rank-size law fits ([`rank_size`]),
//! GDP-weighted regional averages ([`regional`]) and index–GDP
//! regressions ([`relations`]).
//!
//! Numeric code is generic over [`Scalar`] (`f64` or `f32`). The aliases
//! below fix the scalar to `f64`, which is what the command-line tool uses.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod ols;
pub mod panel;
pub mod rank_size;
pub mod region;
pub mod regional;
pub mod relations;
pub mod scalar;
pub mod stats;

pub use error::{Error, ErrorClass, Result};
pub use panel::{
    intersect_panels, load_panel, normalize_panel, read_panel, write_panel, CountryCode,
    LoadReport, NormalizationSpec, PanelKind,
};
pub use rank_size::{
    fit_exponential, fit_power, fit_segmented_power, rank_countries, rank_values, Breakpoint,
    FitWindow,
};
pub use region::{code_for_name, country_name, Area, Region, RegionMap};
pub use regional::{gdp_weights, regional_index, regional_series};
pub use relations::{
    classify_performance, cross_index_regression, detect_outliers, fit_gdp_power_law,
    Performance,
};
pub use scalar::Scalar;
pub use stats::{ecdf, histogram, ks_normal_test, moments};

pub type Panel = panel::Panel<f64>;
pub type Observation = panel::Observation<f64>;
pub type MomentSummary = stats::MomentSummary<f64>;
pub type KsResult = stats::KsResult<f64>;
pub type Histogram = stats::Histogram<f64>;
pub type Ecdf = stats::Ecdf<f64>;
pub type LinearFit = ols::LinearFit<f64>;
pub type RankedEntry = rank_size::RankedEntry<f64>;
pub type FitResult = rank_size::FitResult<f64>;
pub type SegmentedFit = rank_size::SegmentedFit<f64>;
pub type WeightVector = regional::WeightVector<f64>;
pub type RegionalValue = regional::RegionalValue<f64>;
pub type RegionalSeries = regional::RegionalSeries<f64>;
pub type GdpFit = relations::GdpFit<f64>;
pub type GdpFitOptions = relations::GdpFitOptions<f64>;
pub type GdpPoint = relations::GdpPoint<f64>;
pub type PerformanceLabel = relations::PerformanceLabel<f64>;
pub type CrossIndexFit = relations::CrossIndexFit<f64>;

/// Single-precision variants.
pub type Panel32 = panel::Panel<f32>;
pub type FitResult32 = rank_size::FitResult<f32>;
pub type KsResult32 = stats::KsResult<f32>;

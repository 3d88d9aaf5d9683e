//! GDP-weighted regional averages of an index: `w_i = GDP_i / sum_j GDP_j`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::panel::{CountryCode, Panel};
use crate::region::{Area, RegionMap};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DropReason {
    NoGdp,
    NoIndex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T> {
    pub year: i32,
    pub area: Area,
    pub weights: BTreeMap<CountryCode, T>,
    /// Requested members left out, and why.
    pub dropped: BTreeMap<CountryCode, DropReason>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn total(&self) -> T {
        self.weights.values().copied().sum()
    }
}

/// GDP shares of `members` in `year`. Members without a GDP observation are
/// dropped and the remaining weights renormalized.
pub fn gdp_weights<T: Scalar>(
    gdp: &Panel<T>,
    members: &BTreeSet<CountryCode>,
    area: Area,
    year: i32,
) -> Result<WeightVector<T>> {
    let mut raw = BTreeMap::new();
    let mut dropped = BTreeMap::new();
    for &c in members {
        match gdp.get(c, year) {
            Some(g) if g > T::zero() => {
                raw.insert(c, g);
            }
            _ => {
                dropped.insert(c, DropReason::NoGdp);
            }
        }
    }
    let total: T = raw.values().copied().sum();
    if raw.is_empty() || !(total > T::zero()) {
        return Err(Error::EmptyRegion {
            area: area.to_string(),
            year,
        });
    }
    let weights = raw.into_iter().map(|(c, g)| (c, g / total)).collect();
    Ok(WeightVector {
        year,
        area,
        weights,
        dropped,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionalValue<T> {
    pub value: T,
    pub n_members: usize,
    pub dropped: BTreeMap<CountryCode, DropReason>,
}

/// Countries that belong to `area`: a continent's assigned members, or for
/// the world every country present in either panel.
fn area_members<T: Scalar>(
    area: Area,
    index: &Panel<T>,
    gdp: &Panel<T>,
    region_map: &RegionMap,
    year: i32,
) -> BTreeSet<CountryCode> {
    let present = index
        .year_values(year)
        .into_iter()
        .chain(gdp.year_values(year))
        .map(|(c, _)| c);
    match area {
        Area::World => present.collect(),
        Area::Continent(r) => present.filter(|&c| region_map.region_of(c) == Some(r)).collect(),
    }
}

/// `sum_i w_i * index_i` over the area's countries that have both an index
/// and a GDP value in `year`.
pub fn regional_index<T: Scalar>(
    index: &Panel<T>,
    gdp: &Panel<T>,
    region_map: &RegionMap,
    area: Area,
    year: i32,
) -> Result<RegionalValue<T>> {
    let members = area_members(area, index, gdp, region_map, year);
    let (with_index, without): (BTreeSet<_>, BTreeSet<_>) =
        members.into_iter().partition(|&c| index.get(c, year).is_some());
    let w = gdp_weights(gdp, &with_index, area, year)?;
    let at = |c: CountryCode| index.get(c, year).expect("member has index");
    let pivot = w.weights.keys().next().map_or(T::zero(), |&c| at(c));
    let value = pivot + w.weights.iter().map(|(&c, &wi)| wi * (at(c) - pivot)).sum::<T>();
    let mut dropped = w.dropped;
    dropped.extend(without.into_iter().map(|c| (c, DropReason::NoIndex)));
    Ok(RegionalValue {
        value,
        n_members: w.weights.len(),
        dropped,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionalSeries<T> {
    pub area: Area,
    /// `None` marks a year in which the area had no usable members.
    pub points: BTreeMap<i32, Option<RegionalValue<T>>>,
}

/// One series per requested area, plus `Area::World` appended when it is
/// not already listed.
pub fn regional_series<T: Scalar>(
    index: &Panel<T>,
    gdp: &Panel<T>,
    region_map: &RegionMap,
    areas: &[Area],
    years: &[i32],
) -> Vec<RegionalSeries<T>> {
    let mut areas = areas.to_vec();
    if !areas.contains(&Area::World) {
        areas.push(Area::World);
    }
    areas
        .into_iter()
        .map(|area| RegionalSeries {
            area,
            points: years
                .iter()
                .map(|&y| (y, regional_index(index, gdp, region_map, area, y).ok()))
                .collect(),
        })
        .collect()
}

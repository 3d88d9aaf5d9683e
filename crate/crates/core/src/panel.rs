//! Country–year indicator panels: loading, validation, intersection and
//! normalization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// ISO 3166-1 alpha-3 country code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountryCode([u8; 3]);

impl CountryCode {
    pub fn new(code: &str) -> Result<Self> {
        match code.as_bytes() {
            [a, b, c] if [a, b, c].iter().all(|ch| ch.is_ascii_uppercase()) => {
                Ok(CountryCode([*a, *b, *c]))
            }
            _ => Err(Error::InvalidCountryCode(code.to_string())),
        }
    }

    pub fn as_str(&self) -> &str {
        // Only ASCII uppercase bytes are ever stored.
        std::str::from_utf8(&self.0).expect("ascii")
    }
}

impl FromStr for CountryCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CountryCode::new(s)
    }
}

impl fmt::Display for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CountryCode({})", self.as_str())
    }
}

/// Which indicator a panel holds; determines the admissible value range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PanelKind {
    /// Economic Freedom of the World, 0 to 10.
    Efw,
    /// Index of Economic Freedom, 0 to 100.
    Ief,
    /// Gross domestic product (per capita as supplied), strictly positive.
    Gdp,
    /// An index divided by its scale maximum, 0 to 1.
    Normalized,
}

impl PanelKind {
    pub fn label(self) -> &'static str {
        match self {
            PanelKind::Efw => "EFW",
            PanelKind::Ief => "IEF",
            PanelKind::Gdp => "GDP",
            PanelKind::Normalized => "NORMALIZED",
        }
    }

    fn range_text(self) -> &'static str {
        match self {
            PanelKind::Efw => "[0, 10]",
            PanelKind::Ief => "[0, 100]",
            PanelKind::Gdp => "(0, inf)",
            PanelKind::Normalized => "[0, 1]",
        }
    }

    pub fn admits(self, value: f64) -> bool {
        value.is_finite()
            && match self {
                PanelKind::Efw => (0.0..=10.0).contains(&value),
                PanelKind::Ief => (0.0..=100.0).contains(&value),
                PanelKind::Gdp => value > 0.0,
                PanelKind::Normalized => (0.0..=1.0).contains(&value),
            }
    }

    /// Scale maximum used to map the index onto [0, 1].
    pub fn normalization(self) -> Option<NormalizationSpec> {
        match self {
            PanelKind::Efw => Some(NormalizationSpec { divisor: 10.0 }),
            PanelKind::Ief => Some(NormalizationSpec { divisor: 100.0 }),
            PanelKind::Gdp | PanelKind::Normalized => None,
        }
    }
}

impl fmt::Display for PanelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation<T> {
    pub country: CountryCode,
    pub year: i32,
    pub value: T,
}

/// A set of (country, year, value) observations for one indicator, with at
/// most one value per (country, year).
#[derive(Debug, Clone, PartialEq)]
pub struct Panel<T> {
    kind: PanelKind,
    data: BTreeMap<(CountryCode, i32), T>,
}

impl<T: Scalar> Panel<T> {
    pub fn empty(kind: PanelKind) -> Self {
        Panel {
            kind,
            data: BTreeMap::new(),
        }
    }

    /// Builds a panel, enforcing key uniqueness and the kind's value range.
    pub fn from_observations<I>(kind: PanelKind, observations: I) -> Result<Self>
    where
        I: IntoIterator<Item = Observation<T>>,
    {
        let mut panel = Panel::empty(kind);
        for (i, obs) in observations.into_iter().enumerate() {
            panel.insert(obs, i as u64 + 1)?;
        }
        Ok(panel)
    }

    fn insert(&mut self, obs: Observation<T>, line: u64) -> Result<()> {
        let v = obs.value.as_f64();
        if !self.kind.admits(v) {
            return Err(Error::Range {
                line,
                country: obs.country,
                year: obs.year,
                value: v,
                expected: self.kind.range_text(),
            });
        }
        if self.data.insert((obs.country, obs.year), obs.value).is_some() {
            return Err(Error::DuplicateKey {
                country: obs.country,
                year: obs.year,
            });
        }
        Ok(())
    }

    pub fn kind(&self) -> PanelKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, country: CountryCode, year: i32) -> Option<T> {
        self.data.get(&(country, year)).copied()
    }

    /// Observations in (country, year) order.
    pub fn observations(&self) -> impl Iterator<Item = Observation<T>> + '_ {
        self.data.iter().map(|(&(country, year), &value)| Observation {
            country,
            year,
            value,
        })
    }

    pub fn keys(&self) -> impl Iterator<Item = (CountryCode, i32)> + '_ {
        self.data.keys().copied()
    }

    pub fn values(&self) -> Vec<T> {
        self.data.values().copied().collect()
    }

    pub fn years(&self) -> BTreeSet<i32> {
        self.data.keys().map(|&(_, y)| y).collect()
    }

    pub fn countries(&self) -> BTreeSet<CountryCode> {
        self.data.keys().map(|&(c, _)| c).collect()
    }

    /// `(min_year, max_year)`, or `None` for an empty panel.
    pub fn year_range(&self) -> Option<(i32, i32)> {
        let years = self.years();
        Some((*years.first()?, *years.last()?))
    }

    /// All (country, value) pairs of one year, ordered by country code.
    pub fn year_values(&self, year: i32) -> Vec<(CountryCode, T)> {
        self.data
            .iter()
            .filter(|(&(_, y), _)| y == year)
            .map(|(&(c, _), &v)| (c, v))
            .collect()
    }

    /// Keeps only observations with `first <= year <= last`.
    pub fn restrict_years(&self, first: i32, last: i32) -> Self {
        Panel {
            kind: self.kind,
            data: self
                .data
                .iter()
                .filter(|(&(_, y), _)| (first..=last).contains(&y))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }
}

/// Why a row was left out of a loaded panel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExclusionReason {
    Missing,
    NonNumeric(String),
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExclusionReason::Missing => f.write_str("missing value"),
            ExclusionReason::NonNumeric(raw) => write!(f, "non-numeric value {raw:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusion {
    pub line: u64,
    pub country: CountryCode,
    pub year: i32,
    pub reason: ExclusionReason,
}

/// Accounting of a panel load: every data row is either kept or excluded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub source: String,
    pub total_rows: usize,
    pub kept: usize,
    pub excluded: Vec<Exclusion>,
}

impl fmt::Display for LoadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} rows read, {} kept, {} excluded",
            self.source,
            self.total_rows,
            self.kept,
            self.excluded.len()
        )?;
        for ex in &self.excluded {
            writeln!(
                f,
                "  excluded ({}, {}) at line {}: {}",
                ex.country, ex.year, ex.line, ex.reason
            )?;
        }
        Ok(())
    }
}

const MISSING_MARKERS: [&str; 6] = ["", "NA", "N/A", "n/a", "-", ".."];

/// Reads a `country,year,value` CSV into a validated panel.
pub fn read_panel<T: Scalar, R: Read>(
    reader: R,
    kind: PanelKind,
    source: &str,
) -> Result<(Panel<T>, LoadReport)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr.headers().map_err(csv_error)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["country", "year", "value"] {
        return Err(Error::Format {
            line: 1,
            message: format!(
                "expected header `country,year,value`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut panel = Panel::empty(kind);
    let mut report = LoadReport {
        source: source.to_string(),
        ..LoadReport::default()
    };

    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        report.total_rows += 1;

        let country = CountryCode::new(&record[0]).map_err(|e| Error::Format {
            line,
            message: e.to_string(),
        })?;
        let year: i32 = record[1].parse().map_err(|_| Error::Format {
            line,
            message: format!("invalid year {:?}", &record[1]),
        })?;

        let raw = &record[2];
        let parsed = if MISSING_MARKERS.contains(&raw) {
            Err(ExclusionReason::Missing)
        } else {
            match raw.parse::<T>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(ExclusionReason::NonNumeric(raw.to_string())),
            }
        };

        match parsed {
            Ok(value) => {
                panel.insert(
                    Observation {
                        country,
                        year,
                        value,
                    },
                    line,
                )?;
                report.kept += 1;
            }
            Err(reason) => report.excluded.push(Exclusion {
                line,
                country,
                year,
                reason,
            }),
        }
    }
    Ok((panel, report))
}

pub fn load_panel<T: Scalar>(path: &Path, kind: PanelKind) -> Result<(Panel<T>, LoadReport)> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_panel(file, kind, &path.display().to_string())
}

/// Writes the panel in the same CSV layout [`read_panel`] accepts. Values use
/// the shortest representation that parses back to the identical float.
pub fn write_panel<T: Scalar, W: Write>(panel: &Panel<T>, mut out: W) -> std::io::Result<()> {
    writeln!(out, "country,year,value")?;
    for obs in panel.observations() {
        writeln!(out, "{},{},{}", obs.country, obs.year, obs.value)?;
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Format {
        line,
        message: e.to_string(),
    }
}

/// Restricts both panels to their common (country, year) support.
pub fn intersect_panels<T: Scalar>(a: &Panel<T>, b: &Panel<T>) -> Result<(Panel<T>, Panel<T>)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let restrict = |from: &Panel<T>, other: &Panel<T>| Panel {
        kind: from.kind,
        data: from
            .data
            .iter()
            .filter(|(k, _)| other.data.contains_key(k))
            .map(|(&k, &v)| (k, v))
            .collect(),
    };
    let left = restrict(a, b);
    if left.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let right = restrict(b, a);
    Ok((left, right))
}

/// Divisor that maps an index scale onto [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationSpec {
    pub divisor: f64,
}

impl NormalizationSpec {
    pub fn new(divisor: f64) -> Result<Self> {
        if divisor > 0.0 && divisor.is_finite() {
            Ok(NormalizationSpec { divisor })
        } else {
            Err(Error::InvalidParameter(format!(
                "normalization divisor must be positive, got {divisor}"
            )))
        }
    }
}

pub fn normalize_panel<T: Scalar>(panel: &Panel<T>, spec: NormalizationSpec) -> Result<Panel<T>> {
    let divisor = T::lit(spec.divisor);
    let mut out = Panel::empty(PanelKind::Normalized);
    for (line, obs) in panel.observations().enumerate() {
        let scaled = obs.value / divisor;
        if obs.value > divisor || scaled < T::zero() {
            return Err(Error::Range {
                line: line as u64 + 1,
                country: obs.country,
                year: obs.year,
                value: obs.value.as_f64(),
                expected: "[0, divisor]",
            });
        }
        out.data.insert((obs.country, obs.year), scaled);
    }
    Ok(out)
}

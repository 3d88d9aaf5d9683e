//! Continental assignment of countries and the bundled country-name table.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::panel::{CountryCode, Panel};
use crate::scalar::Scalar;

const BUNDLED_REGIONS: &str = include_str!("../data/regions.csv");
const BUNDLED_NAMES: &str = include_str!("../data/countries.csv");
const BUNDLED_ALIASES: &str = include_str!("../data/aliases.csv");

/// One of the six continents (UN M49 continental scheme, Americas split in two).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    Africa,
    Asia,
    Europe,
    NorthAmerica,
    SouthAmerica,
    Oceania,
}

impl Region {
    pub const ALL: [Region; 6] = [
        Region::Africa,
        Region::Asia,
        Region::Europe,
        Region::NorthAmerica,
        Region::SouthAmerica,
        Region::Oceania,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Region::Africa => "Africa",
            Region::Asia => "Asia",
            Region::Europe => "Europe",
            Region::NorthAmerica => "NorthAmerica",
            Region::SouthAmerica => "SouthAmerica",
            Region::Oceania => "Oceania",
        }
    }
}

impl FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Region::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::UnknownRegion(s.to_string()))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A continent, or the whole world.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Area {
    Continent(Region),
    World,
}

impl fmt::Display for Area {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Area::Continent(r) => r.fmt(f),
            Area::World => f.write_str("WORLD"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegionMap {
    assignment: BTreeMap<CountryCode, Region>,
}

impl RegionMap {
    pub fn new(assignment: BTreeMap<CountryCode, Region>) -> Self {
        RegionMap { assignment }
    }

    /// The map shipped with the crate.
    pub fn bundled() -> Self {
        Self::read(BUNDLED_REGIONS.as_bytes()).expect("bundled region table is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::read(file)
    }

    /// Parses a `country,region` CSV.
    pub fn read<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let fmt_err = |line: u64, message: String| Error::Format { line, message };
        let headers = rdr
            .headers()
            .map_err(|e| fmt_err(1, e.to_string()))?
            .clone();
        if headers.iter().collect::<Vec<_>>() != ["country", "region"] {
            return Err(fmt_err(1, "expected header `country,region`".into()));
        }
        let mut assignment = BTreeMap::new();
        for record in rdr.records() {
            let record = record.map_err(|e| fmt_err(0, e.to_string()))?;
            let line = record.position().map_or(0, |p| p.line());
            let country =
                CountryCode::new(&record[0]).map_err(|e| fmt_err(line, e.to_string()))?;
            let region: Region = record[1].parse().map_err(|e: Error| fmt_err(line, e.to_string()))?;
            if assignment.insert(country, region).is_some() {
                return Err(fmt_err(line, format!("country {country} assigned twice")));
            }
        }
        Ok(RegionMap { assignment })
    }

    pub fn region_of(&self, country: CountryCode) -> Option<Region> {
        self.assignment.get(&country).copied()
    }

    pub fn members(&self, region: Region) -> BTreeSet<CountryCode> {
        self.assignment
            .iter()
            .filter(|(_, &r)| r == region)
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Countries of `panel` that have no continent.
    pub fn unassigned<T: Scalar>(&self, panel: &Panel<T>) -> BTreeSet<CountryCode> {
        panel
            .countries()
            .into_iter()
            .filter(|c| !self.assignment.contains_key(c))
            .collect()
    }
}

struct NameTable {
    names: HashMap<CountryCode, String>,
    lookup: HashMap<String, CountryCode>,
}

fn name_key(name: &str) -> String {
    name.chars()
        .filter(|c| c.is_alphanumeric())
        .flat_map(char::to_lowercase)
        .collect()
}

fn name_table() -> &'static NameTable {
    static TABLE: OnceLock<NameTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut names = HashMap::new();
        let mut lookup = HashMap::new();
        let mut rdr = csv::Reader::from_reader(BUNDLED_NAMES.as_bytes());
        for rec in rdr.records() {
            let rec = rec.expect("bundled names");
            let code = CountryCode::new(&rec[0]).expect("bundled code");
            lookup.insert(name_key(&rec[1]), code);
            names.insert(code, rec[1].to_string());
        }
        let mut rdr = csv::Reader::from_reader(BUNDLED_ALIASES.as_bytes());
        for rec in rdr.records() {
            let rec = rec.expect("bundled aliases");
            let code = CountryCode::new(&rec[1]).expect("bundled code");
            lookup.insert(name_key(&rec[0]), code);
        }
        NameTable { names, lookup }
    })
}

/// English display name of a country, if it is in the bundled table.
pub fn country_name(code: CountryCode) -> Option<&'static str> {
    name_table().names.get(&code).map(String::as_str)
}

/// Resolves a country name (including common spelling variants such as
/// "Congo, Dem. Rep." or "Hong-Kong") or a bare alpha-3 code.
pub fn code_for_name(name: &str) -> Option<CountryCode> {
    if let Ok(code) = CountryCode::new(name.trim()) {
        if name_table().names.contains_key(&code) {
            return Some(code);
        }
    }
    name_table().lookup.get(&name_key(name)).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> CountryCode {
        CountryCode::new(s).unwrap()
    }

    #[test]
    fn bundled_map_covers_known_outlier_codes() {
        let map = RegionMap::bundled();
        assert!(map.len() > 180);
        assert_eq!(map.region_of(code("ZWE")), Some(Region::Africa));
        assert_eq!(map.region_of(code("NZL")), Some(Region::Oceania));
        assert_eq!(map.region_of(code("HKG")), Some(Region::Asia));
        assert_eq!(map.region_of(code("VEN")), Some(Region::SouthAmerica));
        assert_eq!(map.region_of(code("USA")), Some(Region::NorthAmerica));
        for c in ["DZA", "COD", "MMR", "AGO", "AZE", "IRN", "LBY", "SUR", "BIH", "LAO", "UZB",
                  "COG", "BLR", "SRB", "SYR", "TKM"] {
            assert!(map.region_of(code(c)).is_some(), "{c}");
        }
    }

    #[test]
    fn every_bundled_code_has_name_and_region() {
        let map = RegionMap::bundled();
        for c in map.assignment.keys() {
            assert!(country_name(*c).is_some(), "{c}");
        }
    }

    #[test]
    fn name_variants_resolve() {
        assert_eq!(code_for_name("Congo, Dem. Rep."), Some(code("COD")));
        assert_eq!(code_for_name("Congo, Rep. of"), Some(code("COG")));
        assert_eq!(code_for_name("Congo. Rep. of"), Some(code("COG")));
        assert_eq!(code_for_name("Hong-Kong"), Some(code("HKG")));
        assert_eq!(code_for_name("Korea. North"), Some(code("PRK")));
        assert_eq!(code_for_name("Burma"), Some(code("MMR")));
        assert_eq!(code_for_name("Slovak Rep."), Some(code("SVK")));
        assert_eq!(code_for_name("Netherlands, The"), Some(code("NLD")));
        assert_eq!(code_for_name("Central Africa Rep."), Some(code("CAF")));
        assert_eq!(code_for_name("ZWE"), Some(code("ZWE")));
        assert_eq!(code_for_name("Atlantis"), None);
    }

    #[test]
    fn reads_custom_map_and_reports_unassigned() {
        let map = RegionMap::read("country,region\nAAA,Europe\nBBB,Oceania\n".as_bytes()).unwrap();
        assert_eq!(map.members(Region::Europe), [code("AAA")].into());
        let panel = Panel::from_observations(
            crate::panel::PanelKind::Efw,
            [("AAA", 1.0), ("CCC", 2.0)].map(|(c, v)| crate::panel::Observation {
                country: code(c),
                year: 2000,
                value: v,
            }),
        )
        .unwrap();
        assert_eq!(map.unassigned(&panel), [code("CCC")].into());
    }

    #[test]
    fn rejects_bad_region_files() {
        assert!(RegionMap::read("country,continent\n".as_bytes()).is_err());
        assert!(RegionMap::read("country,region\nAAA,WestAfrica\n".as_bytes()).is_err());
        assert!(RegionMap::read("country,region\nAAA,Asia\nAAA,Europe\n".as_bytes()).is_err());
    }
}

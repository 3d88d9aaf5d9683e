#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use econfree::{CountryCode, Region, RegionMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub struct Synthetic {
    pub efw: PathBuf,
    pub ief: PathBuf,
    pub gdp: PathBuf,
}

/// Codes with a bundled continent, in a fixed order.
pub fn real_codes(n: usize) -> Vec<CountryCode> {
    let map = RegionMap::bundled();
    let mut all: Vec<CountryCode> = Region::ALL.iter().flat_map(|&r| map.members(r)).collect();
    all.sort();
    assert!(all.len() >= n, "only {} bundled countries", all.len());
    let step = all.len() as f64 / n as f64;
    (0..n).map(|i| all[(i as f64 * step) as usize]).collect()
}

/// EFW, IEF and GDP panels that share a latent development factor, written
/// as `country,year,value` CSV files under `dir`.
pub fn write_synthetic(dir: &Path, countries: usize, first_year: i32, years: i32, seed: u64) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codes = real_codes(countries);
    let (mut efw, mut ief, mut gdp) = (String::new(), String::new(), String::new());
    for s in [&mut efw, &mut ief, &mut gdp] {
        s.push_str("country,year,value\n");
    }
    let latent: Vec<f64> = codes.iter().map(|_| rng.sample(StandardNormal)).collect();
    for (c, z) in codes.iter().zip(&latent) {
        for year in first_year..first_year + years {
            let drift = 0.02 * f64::from(year - first_year);
            let e: f64 = rng.sample(StandardNormal);
            let i: f64 = rng.sample(StandardNormal);
            let g: f64 = rng.sample(StandardNormal);
            let efw_v = (6.5 + drift + 1.1 * z + 0.3 * e).clamp(1.0, 9.9);
            let ief_v = (59.0 + 10.0 * drift + 9.0 * z + 4.0 * i).clamp(10.0, 95.0);
            let gdp_v = (8.5 + 0.03 * f64::from(year - first_year) + 1.0 * z + 0.6 * g).exp();
            writeln!(efw, "{c},{year},{efw_v:.2}").unwrap();
            writeln!(ief, "{c},{year},{ief_v:.1}").unwrap();
            writeln!(gdp, "{c},{year},{gdp_v:.0}").unwrap();
        }
    }
    let out = Synthetic {
        efw: dir.join("efw.csv"),
        ief: dir.join("ief.csv"),
        gdp: dir.join("gdp.csv"),
    };
    std::fs::write(&out.efw, efw).unwrap();
    std::fs::write(&out.ief, ief).unwrap();
    std::fs::write(&out.gdp, gdp).unwrap();
    out
}

/// Three-uppercase-letter code for an integer index.
pub fn code(i: usize) -> CountryCode {
    let b = |k: usize| (b'A' + (k % 26) as u8) as char;
    CountryCode::new(&format!("{}{}{}", b(i / 676), b(i / 26), b(i))).unwrap()
}

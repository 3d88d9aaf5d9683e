//! Acceptance criteria, one PASS/FAIL/SKIP line each. Exits non-zero if any
//! criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use econfree::ols::fit_line;
use econfree::stats::{ks_critical_value, ks_p_value};
use econfree::{
    cross_index_regression, fit_exponential, fit_gdp_power_law, fit_power, fit_segmented_power,
    intersect_panels, load_panel, normalize_panel, rank_countries, rank_values, regional_index,
    Area, Breakpoint, CountryCode, FitWindow, GdpFitOptions, Panel, PanelKind, Region, RegionMap,
};
use econfree_cli::{run, Command, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};

use common::code;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn panel(kind: PanelKind, rows: impl IntoIterator<Item = (CountryCode, i32, f64)>) -> Panel {
    Panel::from_observations(
        kind,
        rows.into_iter().map(|(country, year, value)| econfree::Observation { country, year, value }),
    )
    .unwrap()
}

fn ks_desk_check() -> Verdict {
    let start = Instant::now();
    let c908 = ks_critical_value::<f64>(908, 0.05).unwrap();
    let p908 = ks_p_value(0.0399f64, 908);
    let c1784 = ks_critical_value::<f64>(1784, 0.05).unwrap();
    let p1784 = ks_p_value(0.0310f64, 1784);
    let elapsed = start.elapsed();
    let ok = (c908 - 0.0449).abs() <= 0.0005
        && (p908 - 0.108).abs() <= 0.002
        && (c1784 - 0.0321).abs() <= 0.0003
        && (p1784 - 0.063).abs() <= 0.002
        && elapsed < Duration::from_millis(1);
    verdict(
        ok,
        format!(
            "n=908: crit {c908:.4} p {p908:.4}; n=1784: crit {c1784:.4} p {p1784:.4}; {:?}",
            elapsed
        ),
    )
}

fn exponent_recovery() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_exp = 0.0f64;
    let mut worst_r2 = 0.0f64;
    for trial in 0..200 {
        let n = rng.gen_range(20..=150);
        let exponent = rng.gen_range(-2.0..0.0);
        let scale = rng.gen_range(1.0..100.0);
        let power = trial % 2 == 0;
        let values: Vec<_> = (1..=n)
            .map(|r| {
                let r = r as f64;
                let v = if power { scale * r.powf(exponent) } else { scale * (exponent * r).exp() };
                (code(r as usize), v)
            })
            .collect();
        let ranked = rank_values(&values);
        let fit = if power {
            fit_power(&ranked, FitWindow::FULL)
        } else {
            fit_exponential(&ranked, FitWindow::FULL)
        }
        .unwrap();
        worst_exp = worst_exp.max((fit.exponent - exponent).abs());
        worst_r2 = worst_r2.max((fit.r2 - 1.0).abs());
    }
    let mut covered = 0;
    let trials = 400;
    for trial in 0..trials {
        let n = rng.gen_range(20..=150);
        let exponent = rng.gen_range(-2.0..0.0);
        let power = trial % 2 == 0;
        let noise = LogNormal::new(0.0, 0.05).unwrap();
        let ranked: Vec<econfree::RankedEntry> = (1..=n)
            .map(|r| {
                let x = r as f64;
                let clean = if power { x.powf(exponent) } else { (exponent * x).exp() };
                econfree::RankedEntry { rank: r, country: code(r), value: clean * noise.sample(&mut rng) }
            })
            .collect();
        let fit = if power {
            fit_power(&ranked, FitWindow::FULL)
        } else {
            fit_exponential(&ranked, FitWindow::FULL)
        }
        .unwrap();
        if (fit.exponent - exponent).abs() <= 3.0 * fit.stderr {
            covered += 1;
        }
    }
    let coverage = covered as f64 / trials as f64;
    let elapsed = start.elapsed();
    verdict(
        worst_exp <= 1e-9 && worst_r2 <= 1e-9 && coverage >= 0.95 && elapsed < Duration::from_secs(5),
        format!(
            "max |exponent error| {worst_exp:.1e}, max |R2-1| {worst_r2:.1e}, 3-SE coverage {:.1}%, {:?}",
            100.0 * coverage,
            elapsed
        ),
    )
}

fn segmented_oracle() -> Verdict {
    let (nu_left, nu_right) = (-0.05f64, -0.2f64);
    let a = 90.0;
    let b = a * 10f64.powf(nu_left - nu_right);
    let values: Vec<_> = (1..=100usize)
        .map(|r| {
            let x = r as f64;
            (code(r), if r <= 10 { a * x.powf(nu_left) } else { b * x.powf(nu_right) })
        })
        .collect();
    let ranked = rank_values(&values);
    let fit = fit_segmented_power(&ranked, Breakpoint::DEFAULT_AUTO, FitWindow::new(1, Some(100)).unwrap()).unwrap();
    let (el, er) = ((fit.left.exponent - nu_left).abs(), (fit.right.exponent - nu_right).abs());
    verdict(
        fit.breakpoint == 10 && el <= 1e-6 && er <= 1e-6,
        format!(
            "breakpoint {}, exponents {:.8} / {:.8}",
            fit.breakpoint, fit.left.exponent, fit.right.exponent
        ),
    )
}

/// (slope, slope stderr, R2) from the 2x2 normal equations.
fn normal_equations(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let (sx, sy) = (x.iter().sum::<f64>(), y.iter().sum::<f64>());
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sxx * sy - sx * sxy) / det;
    let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let ybar = sy / n;
    let tss: f64 = y.iter().map(|b| (b - ybar).powi(2)).sum();
    let stderr = (rss / (n - 2.0) * n / det).sqrt();
    (slope, stderr, 1.0 - rss / tss)
}

fn ols_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let noise = Normal::new(0.0, 0.5).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let slope = rng.gen_range(-3.0..3.0);
        let x: Vec<f64> = (0..10).map(|_| rng.gen_range(0.0..10.0)).collect();
        let y: Vec<f64> = x.iter().map(|v| 1.5 + slope * v + noise.sample(&mut rng)).collect();
        let fit = fit_line(&x, &y).unwrap();
        let (s, se, r2) = normal_equations(&x, &y);
        for (a, b) in [(fit.slope, s), (fit.slope_stderr, se), (fit.r2, r2)] {
            worst = worst.max((a - b).abs() / b.abs().max(1.0));
        }
    }
    verdict(worst <= 1e-10, format!("max deviation {worst:.1e} over 100 samples"))
}

fn ranking_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..60);
        let levels = rng.gen_range(1..12);
        let values: Vec<_> = (0..n).map(|i| (code(i), f64::from(rng.gen_range(0..levels)) * 0.25)).collect();
        for e in rank_values(&values) {
            let greater = values.iter().filter(|(_, v)| *v > e.value).count();
            if e.rank != greater + 1 {
                violations += 1;
            }
        }
    }
    let top10 = [
        ("HKG", 8.94), ("SGP", 8.57), ("NZL", 8.28), ("CHE", 8.20), ("GBR", 8.07),
        ("CHL", 8.06), ("CAN", 8.05), ("USA", 8.04), ("AUS", 8.04), ("IRL", 7.92),
    ];
    let table = panel(
        PanelKind::Efw,
        top10.iter().map(|&(c, v)| (CountryCode::new(c).unwrap(), 2006, v)),
    );
    let tail: Vec<usize> = rank_countries(&table, 2006).unwrap()[7..].iter().map(|e| e.rank).collect();
    verdict(
        violations == 0 && tail == [8, 8, 10],
        format!("{violations} rank violations in 1000 vectors; tie pattern {tail:?}"),
    )
}

fn weighted_mean_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut constant_exact = true;
    for _ in 0..500 {
        let k = rng.gen_range(1..=5);
        let members: Vec<(CountryCode, f64, f64)> =
            (0..k).map(|i| (code(i), rng.gen_range(0.0..10.0), rng.gen_range(100.0..1e5))).collect();
        let regions = RegionMap::new(members.iter().map(|m| (m.0, Region::Oceania)).collect());
        let idx = panel(PanelKind::Efw, members.iter().map(|m| (m.0, 2000, m.1)));
        let gdp = panel(PanelKind::Gdp, members.iter().map(|m| (m.0, 2000, m.2)));
        let expected = members.iter().map(|m| m.2 * m.1).sum::<f64>() / members.iter().map(|m| m.2).sum::<f64>();
        let got = regional_index(&idx, &gdp, &regions, Area::Continent(Region::Oceania), 2000).unwrap();
        worst = worst.max((got.value - expected).abs());

        let c = rng.gen_range(0.0..10.0);
        let flat = panel(PanelKind::Efw, members.iter().map(|m| (m.0, 2000, c)));
        let got = regional_index(&flat, &gdp, &regions, Area::Continent(Region::Oceania), 2000).unwrap();
        constant_exact &= got.value == c;
    }
    verdict(
        worst <= 1e-12 && constant_exact,
        format!("max deviation {worst:.1e}; constant index exact: {constant_exact}"),
    )
}

fn outlier_brute_force() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let options = GdpFitOptions { band_multiplier: 2.0, refit_passes: 0 };
    let mut mismatches = 0;
    let mut flagged_total = 0;
    for year in 0..100 {
        let rows: Vec<(CountryCode, f64, f64)> = (0..50)
            .map(|i| {
                let g: f64 = LogNormal::new(8.5, 1.2).unwrap().sample(&mut rng);
                let shock: f64 = if rng.gen_bool(0.06) { rng.gen_range(-0.6..0.6) } else { 0.0 };
                let v = 2.0 * g.powf(0.07) * (shock + Normal::new(0.0, 0.05).unwrap().sample(&mut rng)).exp();
                (code(i), g, v)
            })
            .collect();
        let idx = panel(PanelKind::Efw, rows.iter().map(|r| (r.0, year, r.2)));
        let gdp = panel(PanelKind::Gdp, rows.iter().map(|r| (r.0, year, r.1)));
        let fit = fit_gdp_power_law(&idx, &gdp, year, options).unwrap();

        let lx: Vec<f64> = rows.iter().map(|r| r.1.ln()).collect();
        let ly: Vec<f64> = rows.iter().map(|r| r.2.ln()).collect();
        let n = lx.len() as f64;
        let (sx, sy) = (lx.iter().sum::<f64>(), ly.iter().sum::<f64>());
        let sxx: f64 = lx.iter().map(|v| v * v).sum();
        let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| a * b).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let intercept = (sy - slope * sx) / n;
        let resid: Vec<f64> = lx.iter().zip(&ly).map(|(x, y)| y - intercept - slope * x).collect();
        let rbar = resid.iter().sum::<f64>() / n;
        let sd = (resid.iter().map(|r| (r - rbar).powi(2)).sum::<f64>() / n).sqrt();
        let expected: BTreeSet<CountryCode> = rows
            .iter()
            .zip(&resid)
            .filter(|(_, r)| r.abs() > 2.0 * sd)
            .map(|(row, _)| row.0)
            .collect();
        flagged_total += expected.len();
        if expected != fit.outliers {
            mismatches += 1;
        }
    }
    verdict(
        mismatches == 0,
        format!("{mismatches} of 100 years differ; {flagged_total} outliers flagged in total"),
    )
}

fn historical_dir() -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os("ECONFREE_DATA_DIR")?);
    ["efw.csv", "ief.csv", "gdp.csv"].iter().all(|f| dir.join(f).is_file()).then_some(dir)
}

const EFW_LAMBDA: [(i32, f64); 7] = [
    (2000, -0.0043), (2001, -0.0039), (2002, -0.0037), (2003, -0.0035),
    (2004, -0.0035), (2005, -0.0029), (2006, -0.0029),
];
const EFW_NU: [(i32, f64); 7] = [
    (2000, -0.0992), (2001, -0.0907), (2002, -0.0890), (2003, -0.0872),
    (2004, -0.0857), (2005, -0.0743), (2006, -0.0700),
];
/// (year, nu for r <= 10, nu for r in [10, 100]).
const IEF_NU: [(i32, f64, f64); 12] = [
    (1996, -0.0931, -0.1820), (1997, -0.0889, -0.1647), (1998, -0.0808, -0.1505),
    (1999, -0.0797, -0.1477), (2000, -0.0807, -0.1504), (2001, -0.0723, -0.1634),
    (2002, -0.0624, -0.1651), (2003, -0.0686, -0.1704), (2004, -0.0690, -0.1690),
    (2005, -0.0717, -0.1678), (2006, -0.0564, -0.1522), (2007, -0.0518, -0.1516),
];
const EFW_GAMMA: [(i32, f64); 7] = [
    (2000, 0.0744), (2001, 0.0669), (2002, 0.0636), (2003, 0.0641),
    (2004, 0.0705), (2005, 0.0667), (2006, 0.0653),
];
const IEF_GAMMA: [(i32, f64); 12] = [
    (1996, 0.0940), (1997, 0.0935), (1998, 0.0994), (1999, 0.0956), (2000, 0.0915),
    (2001, 0.0870), (2002, 0.0824), (2003, 0.0802), (2004, 0.0773), (2005, 0.0728),
    (2006, 0.0662), (2007, 0.0670),
];
const EFW_OUTLIERS: [(i32, &str); 7] = [
    (2000, "DZA-COD-MMR-ZWE"), (2001, "DZA-ZWE"), (2002, "DZA-COD-MMR-VEN-ZWE"),
    (2003, "DZA-MMR-VEN-ZWE"), (2004, "DZA-COD-VEN-ZWE"), (2005, "DZA-COD-VEN-ZWE"),
    (2006, "AGO-COD-MMR-VEN-ZWE"),
];
const IEF_OUTLIERS: [(i32, &str); 12] = [
    (1996, "AGO-AZE-IRN-LBY"), (1997, "AGO-IRN-LBY-SUR"), (1998, "AGO-BIH-IRN-LAO-LBY-UZB"),
    (1999, "AGO-BIH-COG-IRN-LAO-LBY-UZB"), (2000, "AGO-COG-IRN-LAO-LBY"), (2001, "BLR-BIH-LAO-LBY"),
    (2002, "BIH-IRN-LBY-SRB-SYR-ZWE"), (2003, "BLR-BIH-LBY-SYR-ZWE"), (2004, "BLR-LBY-SYR-VEN-ZWE"),
    (2005, "LBY-VEN-ZWE"), (2006, "AGO-COD-LBY-TKM-VEN-ZWE"), (2007, "AGO-COD-LBY-TKM-VEN-ZWE"),
];

fn historical(dir: &Path) -> Verdict {
    let load = |f: &str, kind| load_panel::<f64>(&dir.join(f), kind).map(|(p, _)| p);
    let (efw, ief, gdp) = match (load("efw.csv", PanelKind::Efw), load("ief.csv", PanelKind::Ief), load("gdp.csv", PanelKind::Gdp)) {
        (Ok(a), Ok(b), Ok(c)) => (a.restrict_years(2000, 2006), b.restrict_years(1996, 2007), c),
        _ => return Verdict::Fail("historical files present but unreadable".into()),
    };
    let mut failures: Vec<String> = Vec::new();
    fn check(failures: &mut Vec<String>, what: String, got: Option<f64>, want: f64, tol: f64) {
        match got {
            Some(g) if (g - want).abs() <= tol => {}
            Some(g) => failures.push(format!("{what}: {g:.4} vs {want:.4}")),
            None => failures.push(format!("{what}: no value")),
        }
    }
    for (year, want) in EFW_LAMBDA {
        let got = rank_countries(&efw, year).ok().and_then(|r| fit_exponential(&r, FitWindow::from_min(20).unwrap()).ok());
        check(&mut failures, format!("EFW lambda {year}"), got.map(|f| f.exponent), want, 0.0005);
    }
    for (year, want) in EFW_NU {
        let got = rank_countries(&efw, year).ok().and_then(|r| fit_power(&r, FitWindow::FULL).ok());
        check(&mut failures, format!("EFW nu {year}"), got.map(|f| f.exponent), want, 0.005);
    }
    for (year, left, right) in IEF_NU {
        let got = rank_countries(&ief, year)
            .ok()
            .and_then(|r| fit_segmented_power(&r, Breakpoint::Fixed(10), FitWindow::new(1, Some(100)).unwrap()).ok());
        check(&mut failures, format!("IEF nu(r<=10) {year}"), got.as_ref().map(|s| s.left.exponent), left, 0.005);
        check(&mut failures, format!("IEF nu(10..100) {year}"), got.as_ref().map(|s| s.right.exponent), right, 0.005);
    }
    let mut outlier_diffs = Vec::new();
    for (index, gammas, lists) in [(&efw, &EFW_GAMMA[..], &EFW_OUTLIERS[..]), (&ief, &IEF_GAMMA[..], &IEF_OUTLIERS[..])] {
        let fits: BTreeMap<i32, _> = gammas
            .iter()
            .filter_map(|&(y, _)| fit_gdp_power_law(index, &gdp, y, GdpFitOptions::default()).ok().map(|f| (y, f)))
            .collect();
        for &(year, want) in gammas {
            check(&mut failures, format!("{} gamma {year}", index.kind().label()), fits.get(&year).map(|f| f.fit.exponent), want, 0.005);
        }
        for &(year, list) in lists {
            let want: BTreeSet<CountryCode> = list.split('-').map(|c| CountryCode::new(c).unwrap()).collect();
            let got = fits.get(&year).map(|f| f.outliers.clone()).unwrap_or_default();
            if want.symmetric_difference(&got).count() > 1 {
                outlier_diffs.push(format!("{} {year}", index.kind().label()));
            }
        }
    }
    if !outlier_diffs.is_empty() {
        failures.push(format!("outlier lists differ by more than one country: {}", outlier_diffs.join(", ")));
    }
    match intersect_panels(&efw, &ief) {
        Ok((a, b)) => {
            if a.len() != 862 {
                failures.push(format!("intersection has {} points, not 862", a.len()));
            }
            let norm = |p: &Panel| normalize_panel(p, p.kind().normalization().unwrap()).unwrap();
            match cross_index_regression(&norm(&a), &norm(&b)) {
                Ok(fit) => check(&mut failures, "cross-index slope".into(), Some(fit.slope), 0.7294, 0.02),
                Err(e) => failures.push(format!("cross-index regression: {e}")),
            }
        }
        Err(e) => failures.push(format!("intersection: {e}")),
    }
    if failures.is_empty() {
        Verdict::Pass("all historical values within tolerance".into())
    } else {
        Verdict::Fail(failures.join("; "))
    }
}

fn historical_reproduction() -> Verdict {
    match historical_dir() {
        Some(dir) => historical(&dir),
        None => Verdict::Skip("set ECONFREE_DATA_DIR to a directory holding efw.csv, ief.csv and gdp.csv".into()),
    }
}

fn report_performance() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let data = common::write_synthetic(dir.path(), 150, 1996, 12, 9);
    let cfg = RunConfig {
        efw: Some(data.efw),
        ief: Some(data.ief),
        gdp: Some(data.gdp),
        out: dir.path().join("out"),
        ..RunConfig::default()
    };
    let start = Instant::now();
    let result = run(&cfg, &Command::Report).and_then(|out| out.emit(&cfg.out, cfg.svg).map(|_| out));
    let elapsed = start.elapsed();
    match result {
        Ok(out) => verdict(
            elapsed < Duration::from_secs(1),
            format!("{} tables, {} plots in {:?}", out.tables.len(), out.plots.len(), elapsed),
        ),
        Err(e) => Verdict::Fail(format!("report failed: {e}")),
    }
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 9] = [
        ("KS critical value and p-value desk check", ks_desk_check),
        ("exponent recovery on exact and noisy rank-size data", exponent_recovery),
        ("segmented fit finds the breakpoint", segmented_oracle),
        ("OLS matches the normal equations", ols_oracle),
        ("competition ranking", ranking_suite),
        ("GDP-weighted regional mean", weighted_mean_oracle),
        ("outlier set matches an exhaustive scan", outlier_brute_force),
        ("historical reproduction", historical_reproduction),
        ("full report on 150 countries x 12 years", report_performance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (tag, detail) = match check() {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("criterion {}: {tag} {name} ({detail})", i + 1);
    }
    if failed > 0 {
        eprintln!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}

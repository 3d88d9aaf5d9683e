//! The analysis subcommands. Each returns an [`Output`] holding tables, plot
//! data and warnings; nothing touches the filesystem until
//! [`Output::emit`].

use std::collections::BTreeSet;
use std::path::Path;

use econfree::rank_size::{fit_exponential, fit_power, fit_segmented_power};
use econfree::relations::{classify_performance, cross_index_regression, fit_gdp_power_law};
use econfree::stats::{ecdf, histogram, ks_normal_test, moments};
use econfree::{
    country_name, intersect_panels, load_panel, normalize_panel, rank_countries, regional_series,
    Area, CountryCode, FitResult, GdpFitOptions, LoadReport, Panel, PanelKind, RankedEntry, Region,
    RegionMap,
};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::plot::{PlotData, Series, Style};
use crate::table::{col, Cell, ReportTable};

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Output {
    pub tables: Vec<ReportTable>,
    pub plots: Vec<PlotData>,
    /// Extra text files: (file name, contents).
    pub texts: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl Output {
    pub fn merge(&mut self, other: Output) {
        self.tables.extend(other.tables);
        self.plots.extend(other.plots);
        self.texts.extend(other.texts);
        self.warnings.extend(other.warnings);
    }

    pub fn table(&self, id: &str) -> Option<&ReportTable> {
        self.tables.iter().find(|t| t.id == id)
    }

    /// Human-readable rendering of every displayed table.
    pub fn render_text(&self) -> String {
        self.tables
            .iter()
            .filter(|t| t.display)
            .map(|t| t.render_text())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Writes every artifact under `dir`, in a fixed order.
    pub fn emit(&self, dir: &Path, svg: bool) -> CliResult<()> {
        let write = |name: &str, contents: &str| {
            let path = dir.join(name);
            std::fs::write(&path, contents).map_err(|source| CliError::Write { path, source })
        };
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.to_path_buf(),
            source,
        })?;
        for t in self.tables.iter().filter(|t| t.csv) {
            write(&format!("{}.csv", t.id), &t.to_csv())?;
        }
        write("tables.txt", &self.render_text())?;
        for p in &self.plots {
            write(&format!("{}.tsv", p.id), &p.to_tsv())?;
            if svg {
                write(&format!("{}.svg", p.id), &p.to_svg())?;
            }
        }
        for (name, contents) in &self.texts {
            write(name, contents)?;
        }
        let mut warnings = self.warnings.join("\n");
        if !warnings.is_empty() {
            warnings.push('\n');
        }
        write("warnings.txt", &warnings)
    }
}

/// Loaded, year-filtered inputs.
#[derive(Debug, Clone)]
pub struct Inputs {
    pub efw: Option<Panel>,
    pub ief: Option<Panel>,
    pub gdp: Option<Panel>,
    pub regions: RegionMap,
    pub reports: Vec<LoadReport>,
}

impl Inputs {
    pub fn load(cfg: &RunConfig) -> CliResult<Self> {
        let mut reports = Vec::new();
        let mut get = |path: &Option<std::path::PathBuf>, kind| -> CliResult<Option<Panel>> {
            let Some(path) = path else { return Ok(None) };
            let (panel, report) = load_panel::<f64>(path, kind).map_err(|source| CliError::Load {
                path: path.clone(),
                source,
            })?;
            reports.push(report);
            Ok(Some(match cfg.years {
                Some(r) => panel.restrict_years(r.first, r.last),
                None => panel,
            }))
        };
        let efw = get(&cfg.efw, PanelKind::Efw)?;
        let ief = get(&cfg.ief, PanelKind::Ief)?;
        let gdp = get(&cfg.gdp, PanelKind::Gdp)?;
        let regions = match &cfg.regions {
            Some(path) => RegionMap::load(path).map_err(|source| CliError::Load {
                path: path.clone(),
                source,
            })?,
            None => RegionMap::bundled(),
        };
        Ok(Inputs {
            efw,
            ief,
            gdp,
            regions,
            reports,
        })
    }

    pub fn indices(&self) -> impl Iterator<Item = &Panel> {
        self.efw.iter().chain(self.ief.iter())
    }

    fn require_index(&self, command: &str) -> CliResult<()> {
        if self.efw.is_none() && self.ief.is_none() {
            return Err(CliError::Config(format!("`{command}` needs --efw or --ief")));
        }
        Ok(())
    }

    fn require_gdp(&self, command: &str) -> CliResult<&Panel> {
        self.require_index(command)?;
        self.gdp
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("`{command}` needs --gdp")))
    }

    pub fn load_report_text(&self) -> String {
        self.reports.iter().map(|r| r.to_string()).collect()
    }
}

/// Observation counts per loaded panel.
pub fn data_summary(inputs: &Inputs) -> ReportTable {
    let mut t = ReportTable::new(
        "data_summary",
        "Loaded panels",
        vec![
            col("panel", 0),
            col("rows", 0),
            col("excluded", 0),
            col("observations", 0),
            col("countries", 0),
            col("first_year", 0),
            col("last_year", 0),
        ],
    );
    let panels = [&inputs.efw, &inputs.ief, &inputs.gdp];
    for (panel, report) in panels.into_iter().flatten().zip(&inputs.reports) {
        let (first, last) = panel.year_range().map_or((None, None), |(a, b)| (Some(a), Some(b)));
        t.push(vec![
            panel.kind().label().into(),
            report.total_rows.into(),
            report.excluded.len().into(),
            panel.len().into(),
            panel.countries().len().into(),
            first.map_or(Cell::Missing, Cell::from),
            last.map_or(Cell::Missing, Cell::from),
        ]);
    }
    t.note("observations are counted after the year filter");
    t
}

fn tag(kind: PanelKind) -> &'static str {
    match kind {
        PanelKind::Efw => "efw",
        PanelKind::Ief => "ief",
        PanelKind::Gdp => "gdp",
        PanelKind::Normalized => "normalized",
    }
}

fn display_name(code: CountryCode) -> String {
    country_name(code).unwrap_or(code.as_str()).to_string()
}

fn join_codes(codes: &BTreeSet<CountryCode>) -> String {
    codes.iter().map(|c| c.as_str()).collect::<Vec<_>>().join("-")
}

pub fn cmd_stats(cfg: &RunConfig, inputs: &Inputs) -> CliResult<Output> {
    inputs.require_index("stats")?;
    let mut out = Output::default();
    let mut mt = ReportTable::new(
        "stats_moments",
        "Distribution of index values",
        vec![
            col("index", 0),
            col("years", 0),
            col("n", 0),
            col("mean", 2),
            col("sd", 2),
            col("variance", 2),
            col("cov", 4),
            col("skewness", 4),
            col("kurtosis", 4),
        ],
    );
    let mut kt = ReportTable::new(
        "stats_ks",
        "Kolmogorov-Smirnov test against a fitted normal law",
        vec![
            col("index", 0),
            col("n", 0),
            col("dks", 4),
            col("critical", 4),
            col("p_value", 4),
            col("alpha", 2),
            col("mu", 2),
            col("sigma2", 2),
            col("decision", 0),
        ],
    );
    for panel in inputs.indices() {
        let label = panel.kind().label();
        let values = panel.values();
        let m = moments(&values)?;
        mt.push(vec![
            label.into(),
            panel.years().len().into(),
            m.n.into(),
            m.mean.into(),
            m.sd.into(),
            m.variance.into(),
            m.cov.into(),
            m.skewness.into(),
            m.kurtosis.into(),
        ]);
        let mut kv = format!("index={label}\n{}", m.to_key_value());
        match ks_normal_test(&values, cfg.alpha) {
            Ok(ks) => {
                kt.push(vec![
                    label.into(),
                    ks.n.into(),
                    ks.dks.into(),
                    ks.critical.into(),
                    ks.p_value.into(),
                    ks.alpha.into(),
                    ks.fitted_mu.into(),
                    ks.fitted_sigma2.into(),
                    ks.decision().into(),
                ]);
                kv.push_str(&ks.to_key_value().lines().map(|l| format!("ks_{l}\n")).collect::<String>());
            }
            Err(e) => out.warnings.push(format!("{label} KS test: {e}")),
        }
        out.texts.push((format!("stats_{}.txt", tag(panel.kind())), kv));

        let scale = panel.kind().normalization().map_or(1.0, |n| n.divisor);
        let hist = histogram(&values, scale / 40.0, 0.0)?;
        let bars = hist
            .counts
            .iter()
            .zip(hist.bin_edges.windows(2))
            .map(|(&c, e)| (0.5 * (e[0] + e[1]), c as f64))
            .collect();
        out.plots.push(
            PlotData::new(format!("hist_{}", tag(panel.kind())), format!("{label} histogram"), label, "count")
                .with(Series::new("count", Style::Line, bars)),
        );
        let e = ecdf(&values)?;
        let normal_cdf = |x: f64| 0.5 * (1.0 + libm_erf((x - m.mean) / (m.sd * std::f64::consts::SQRT_2)));
        out.plots.push(
            PlotData::new(format!("ecdf_{}", tag(panel.kind())), format!("{label} cumulative distribution"), label, "F")
                .with(Series::new("ecdf", Style::Line, e.steps.clone()))
                .with(Series::new(
                    "normal",
                    Style::Line,
                    e.steps.iter().map(|&(x, _)| (x, normal_cdf(x))).collect(),
                )),
        );
    }
    out.tables.push(mt);
    out.tables.push(kt);
    Ok(out)
}

fn libm_erf(x: f64) -> f64 {
    <f64 as econfree::Scalar>::erf(x)
}

pub fn cmd_rank(
    _cfg: &RunConfig,
    inputs: &Inputs,
    only: Option<PanelKind>,
    year: Option<i32>,
    top_k: usize,
    bottom_k: usize,
) -> CliResult<Output> {
    inputs.require_index("rank")?;
    let mut out = Output::default();
    for panel in inputs.indices().filter(|p| only.is_none_or(|k| p.kind() == k)) {
        let label = panel.kind().label();
        let year = match year.or_else(|| panel.years().last().copied()) {
            Some(y) => y,
            None => return Err(CliError::Core(econfree::Error::InsufficientData { needed: 1, got: 0 })),
        };
        let ranked = rank_countries(panel, year)?;
        let columns = || vec![col("rank", 0), col("country", 0), col("name", 0), col("value", 2)];
        let fill = |t: &mut ReportTable, entries: &[RankedEntry]| {
            for e in entries {
                t.push(vec![e.rank.into(), e.country.as_str().into(), display_name(e.country).into(), e.value.into()]);
            }
        };
        let mut top = ReportTable::new(
            format!("rank_{}_{year}_top", tag(panel.kind())),
            format!("{year} {label} ranking: {top_k} freest"),
            columns(),
        );
        fill(&mut top, &ranked[..top_k.min(ranked.len())]);
        let mut bottom = ReportTable::new(
            format!("rank_{}_{year}_bottom", tag(panel.kind())),
            format!("{year} {label} ranking: {bottom_k} least free"),
            columns(),
        );
        fill(&mut bottom, &ranked[ranked.len() - bottom_k.min(ranked.len())..]);
        out.tables.push(top);
        out.tables.push(bottom);
    }
    Ok(out)
}

fn fit_columns() -> Vec<crate::table::Column> {
    vec![
        col("year", 0),
        col("exponent", 4),
        col("stderr", 4),
        col("rel_err", 4),
        col("r2", 4),
        col("n_points", 0),
        col("window", 0),
    ]
}

fn fit_row(year: i32, fit: Option<&FitResult>, window: String) -> Vec<Cell> {
    match fit {
        Some(f) => vec![
            year.into(),
            f.exponent.into(),
            f.stderr.into(),
            f.rel_err.into(),
            f.r2.into(),
            f.n_points.into(),
            window.into(),
        ],
        None => vec![year.into(), Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing, window.into()],
    }
}

pub fn cmd_fit(cfg: &RunConfig, inputs: &Inputs) -> CliResult<Output> {
    inputs.require_index("fit")?;
    let mut out = Output::default();
    for panel in inputs.indices() {
        let kind = panel.kind();
        let (label, t) = (kind.label(), tag(kind));
        let exp_window = cfg.exp_window_for(kind);
        let mut exp_table =
            ReportTable::new(format!("fit_{t}_exponential"), format!("{label} ~ exp(lambda r)"), fit_columns());
        let mut pow_table =
            ReportTable::new(format!("fit_{t}_power"), format!("{label} ~ r^nu"), fit_columns());
        let mut seg_cols = fit_columns();
        seg_cols.insert(1, col("segment", 0));
        let mut seg_table = ReportTable::new(
            format!("fit_{t}_segmented"),
            format!("{label} ~ r^nu, two regimes"),
            seg_cols,
        );
        let mut zipf_years = Vec::new();

        for year in panel.years() {
            let ranked = match rank_countries(panel, year) {
                Ok(r) => r,
                Err(e) => {
                    out.warnings.push(format!("{label} {year}: {e}"));
                    continue;
                }
            };
            let exp = fit_exponential(&ranked, exp_window)
                .map_err(|e| out.warnings.push(format!("{label} {year} exponential fit: {e}")))
                .ok();
            exp_table.push(fit_row(year, exp.as_ref(), exp_window.to_string()));
            let pow = fit_power(&ranked, cfg.power_window)
                .map_err(|e| out.warnings.push(format!("{label} {year} power fit: {e}")))
                .ok();
            pow_table.push(fit_row(year, pow.as_ref(), cfg.power_window.to_string()));
            if pow.is_some_and(|p| p.is_zipf_like(cfg.zipf_tolerance)) {
                zipf_years.push(year.to_string());
            }

            if kind == PanelKind::Ief {
                match fit_segmented_power(&ranked, cfg.breakpoint, cfg.segment_window) {
                    Ok(s) => {
                        for (name, f, w) in [("left", &s.left, s.left_window), ("right", &s.right, s.right_window)] {
                            let mut row = fit_row(year, Some(f), w.to_string());
                            row.insert(1, name.into());
                            seg_table.push(row);
                        }
                    }
                    Err(e) => {
                        out.warnings.push(format!("{label} {year} segmented fit: {e}"));
                        for name in ["left", "right"] {
                            let mut row = fit_row(year, None, String::new());
                            row.insert(1, name.into());
                            seg_table.push(row);
                        }
                    }
                }
            }

            let mut plot = PlotData::new(
                format!("ranksize_{t}_{year}"),
                format!("{year} {label} rank-size"),
                "rank",
                label,
            )
            .log_axes(true, true)
            .with(Series::new(
                "data",
                Style::Points,
                ranked.iter().map(|e| (e.rank as f64, e.value)).collect(),
            ));
            let max_rank = ranked.last().map_or(1, |e| e.rank);
            let grid = |w: econfree::FitWindow| -> Vec<f64> {
                (w.min_rank..=w.max_rank.unwrap_or(max_rank).min(max_rank)).map(|r| r as f64).collect()
            };
            if let Some(f) = &exp {
                let pts = grid(exp_window).into_iter().map(|r| (r, (f.intercept + f.exponent * r).exp())).collect();
                plot = plot.with(Series::new("exponential", Style::Line, pts));
            }
            if let Some(f) = &pow {
                let pts = grid(cfg.power_window)
                    .into_iter()
                    .map(|r| (r, (f.intercept + f.exponent * r.ln()).exp()))
                    .collect();
                plot = plot.with(Series::new("power", Style::Line, pts));
            }
            out.plots.push(plot);
        }
        exp_table.note(format!("window r in {exp_window}"));
        pow_table.note(format!("window r in {}", cfg.power_window));
        if !zipf_years.is_empty() {
            pow_table.note(format!(
                "Zipf-like (|nu + 1| < {}): {}",
                cfg.zipf_tolerance,
                zipf_years.join(", ")
            ));
        }
        out.tables.push(exp_table);
        out.tables.push(pow_table);
        if kind == PanelKind::Ief {
            seg_table.note(format!(
                "breakpoint {} within {}; the breakpoint rank belongs to both segments",
                cfg.breakpoint, cfg.segment_window
            ));
            out.tables.push(seg_table);
        }
    }
    Ok(out)
}

pub fn cmd_regional(_cfg: &RunConfig, inputs: &Inputs) -> CliResult<Output> {
    let gdp = inputs.require_gdp("regional")?;
    let mut out = Output::default();
    let areas: Vec<Area> = Region::ALL.into_iter().map(Area::Continent).chain([Area::World]).collect();
    for panel in inputs.indices() {
        let (label, t) = (panel.kind().label(), tag(panel.kind()));
        let unassigned = inputs.regions.unassigned(panel);
        if !unassigned.is_empty() {
            out.warnings.push(format!(
                "{label}: countries without a continent (WORLD only): {}",
                join_codes(&unassigned)
            ));
        }
        let years: Vec<i32> = panel.years().into_iter().collect();
        let series = regional_series(panel, gdp, &inputs.regions, &areas, &years);

        let mut long = ReportTable::new(
            format!("regional_{t}"),
            format!("GDP-weighted {label} by region"),
            vec![col("region", 0), col("year", 0), col("value", 4), col("n_members", 0)],
        )
        .csv_only();
        let mut matrix_cols = vec![col("region", 0)];
        matrix_cols.extend(years.iter().map(|y| col(&y.to_string(), 2)));
        let mut matrix = ReportTable::new(
            format!("regional_{t}_matrix"),
            format!("GDP-weighted {label} by region and year"),
            matrix_cols,
        )
        .text_only();
        let mut plot = PlotData::new(format!("regional_{t}"), format!("GDP-weighted {label}"), "year", label);

        for s in &series {
            let mut row: Vec<Cell> = vec![s.area.to_string().into()];
            let mut pts = Vec::new();
            for (&year, cell) in &s.points {
                match cell {
                    Some(v) => {
                        long.push(vec![s.area.to_string().into(), year.into(), v.value.into(), v.n_members.into()]);
                        row.push(v.value.into());
                        pts.push((year as f64, v.value));
                        if !v.dropped.is_empty() {
                            out.warnings.push(format!(
                                "{label} {} {year}: dropped {} ({})",
                                s.area,
                                v.dropped.len(),
                                v.dropped.keys().map(|c| c.as_str()).collect::<Vec<_>>().join("-")
                            ));
                        }
                    }
                    None => {
                        long.push(vec![s.area.to_string().into(), year.into(), Cell::Missing, 0usize.into()]);
                        row.push(Cell::Missing);
                        out.warnings.push(format!("{label} {} {year}: no members with index and GDP", s.area));
                    }
                }
            }
            matrix.push(row);
            plot = plot.with(Series::new(s.area.to_string(), Style::Line, pts));
        }
        matrix.note("weights w_i = GDP_i / sum_j GDP_j use the GDP panel exactly as supplied");
        out.tables.push(matrix);
        out.tables.push(long);
        out.plots.push(plot);
    }
    Ok(out)
}

pub fn cmd_gdp(cfg: &RunConfig, inputs: &Inputs) -> CliResult<Output> {
    let gdp = inputs.require_gdp("gdp")?;
    let mut out = Output::default();
    let options = GdpFitOptions {
        band_multiplier: cfg.band,
        refit_passes: cfg.refit_passes,
    };
    for panel in inputs.indices() {
        let (label, t) = (panel.kind().label(), tag(panel.kind()));
        let mut gamma = ReportTable::new(
            format!("gdp_{t}_gamma"),
            format!("{label} ~ GDP^gamma"),
            vec![col("year", 0), col("gamma", 4), col("stderr", 4), col("rel_err", 4), col("r2", 4)],
        );
        let mut outliers = ReportTable::new(
            format!("gdp_{t}_outliers"),
            format!("{label}: countries outside {} residual standard deviations", cfg.band),
            vec![col("year", 0), col("countries", 0)],
        );
        let mut perf = ReportTable::new(
            format!("gdp_{t}_performance"),
            format!("{label}: position relative to the GDP law"),
            vec![col("year", 0), col("country", 0), col("label", 0), col("residual", 4)],
        )
        .csv_only();

        for year in panel.years() {
            let fit = match fit_gdp_power_law(panel, gdp, year, options) {
                Ok(f) => f,
                Err(e) => {
                    out.warnings.push(format!("{label} {year} GDP fit: {e}"));
                    gamma.push(vec![year.into(), Cell::Missing, Cell::Missing, Cell::Missing, Cell::Missing]);
                    outliers.push(vec![year.into(), Cell::Missing]);
                    continue;
                }
            };
            gamma.push(vec![
                year.into(),
                fit.fit.exponent.into(),
                fit.fit.stderr.into(),
                fit.fit.rel_err.into(),
                fit.fit.r2.into(),
            ]);
            outliers.push(vec![year.into(), join_codes(&fit.outliers).into()]);
            for l in classify_performance(&fit, cfg.performance_tolerance) {
                perf.push(vec![year.into(), l.country.as_str().into(), l.label.to_string().into(), l.residual.into()]);
            }

            let (inside, flagged): (Vec<&econfree::GdpPoint>, Vec<&econfree::GdpPoint>) =
                fit.points.iter().partition(|p| !fit.outliers.contains(&p.country));
            let (gmin, gmax) = fit
                .points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.gdp), hi.max(p.gdp)));
            let xs: Vec<f64> = (0..=40).map(|i| gmin * (gmax / gmin).powf(i as f64 / 40.0)).collect();
            let line = |shift: f64| -> Vec<(f64, f64)> {
                xs.iter().map(|&x| (x, (fit.predict_log(x) + shift).exp())).collect()
            };
            let band = fit.band_half_width();
            out.plots.push(
                PlotData::new(format!("gdp_{t}_{year}"), format!("{year} {label} vs GDP"), "GDP", label)
                    .log_axes(true, true)
                    .with(Series::new("data", Style::Points, inside.iter().map(|p| (p.gdp, p.index)).collect()))
                    .with(Series::new("outliers", Style::Points, flagged.iter().map(|p| (p.gdp, p.index)).collect()))
                    .with(Series::new("fit", Style::Line, line(0.0)))
                    .with(Series::new("band_upper", Style::Line, line(band)))
                    .with(Series::new("band_lower", Style::Line, line(-band))),
            );
        }
        gamma.note(format!(
            "OLS of ln({label}) on ln(GDP); outliers beyond {} sd removed, {} refit pass(es)",
            cfg.band, cfg.refit_passes
        ));
        out.tables.push(gamma);
        out.tables.push(outliers);
        out.tables.push(perf);
    }
    Ok(out)
}

pub fn cmd_compare(_cfg: &RunConfig, inputs: &Inputs) -> CliResult<Output> {
    let (Some(efw), Some(ief)) = (&inputs.efw, &inputs.ief) else {
        return Err(CliError::Config("`compare` needs both --efw and --ief".into()));
    };
    let (efw_c, ief_c) = intersect_panels(efw, ief)?;
    let norm = |p: &Panel| normalize_panel(p, p.kind().normalization().expect("index panel"));
    let (efw_n, ief_n) = (norm(&efw_c)?, norm(&ief_c)?);

    let mut out = Output::default();
    let mut stats = ReportTable::new(
        "compare_normalized",
        "Normalized indices on the common support",
        vec![
            col("index", 0),
            col("countries", 0),
            col("years", 0),
            col("n", 0),
            col("mean", 4),
            col("sd", 4),
            col("cov", 4),
        ],
    );
    for (label, p) in [("EFW", &efw_n), ("IEF", &ief_n)] {
        let m = moments(&p.values())?;
        stats.push(vec![
            label.into(),
            p.countries().len().into(),
            p.years().len().into(),
            m.n.into(),
            m.mean.into(),
            m.sd.into(),
            m.cov.into(),
        ]);
    }
    let fit = cross_index_regression(&efw_n, &ief_n)?;
    let mut reg = ReportTable::new(
        "compare_regression",
        "Normalized EFW regressed on normalized IEF",
        vec![
            col("n_points", 0),
            col("slope", 4),
            col("stderr", 4),
            col("intercept", 4),
            col("r2", 4),
            col("slope_through_origin", 4),
        ],
    );
    reg.push(vec![
        fit.n_points.into(),
        fit.slope.into(),
        fit.slope_stderr.into(),
        fit.intercept.into(),
        fit.r2.into(),
        fit.slope_through_origin.into(),
    ]);
    out.tables.push(stats);
    out.tables.push(reg);

    let pairs: Vec<(f64, f64)> = ief_n.values().into_iter().zip(efw_n.values()).collect();
    let (lo, hi) = pairs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    out.plots.push(
        PlotData::new("compare_scatter", "Normalized EFW vs IEF", "IEF / 100", "EFW / 10")
            .with(Series::new("data", Style::Points, pairs))
            .with(Series::new(
                "fit",
                Style::Line,
                vec![(lo, fit.intercept + fit.slope * lo), (hi, fit.intercept + fit.slope * hi)],
            ))
            .with(Series::new("identity", Style::Line, vec![(lo, lo), (hi, hi)])),
    );
    Ok(out)
}

/// Every analysis whose inputs are present.
pub fn cmd_report(cfg: &RunConfig, inputs: &Inputs) -> CliResult<Output> {
    inputs.require_index("report")?;
    let mut out = cmd_stats(cfg, inputs)?;
    out.merge(cmd_rank(cfg, inputs, None, None, cfg.top, cfg.bottom)?);
    out.merge(cmd_fit(cfg, inputs)?);
    if inputs.gdp.is_some() {
        out.merge(cmd_regional(cfg, inputs)?);
        out.merge(cmd_gdp(cfg, inputs)?);
    } else {
        out.warnings.push("no GDP panel: regional and gdp analyses skipped".into());
    }
    if inputs.efw.is_some() && inputs.ief.is_some() {
        out.merge(cmd_compare(cfg, inputs)?);
    } else {
        out.warnings.push("compare skipped: needs both indices".into());
    }
    Ok(out)
}

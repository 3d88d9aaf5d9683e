//! Run configuration: defaults, then a flat `key=value` file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use econfree::{Breakpoint, FitWindow, PanelKind};

use crate::error::{CliError, CliResult};

/// Inclusive `first:last` year interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YearRange {
    pub first: i32,
    pub last: i32,
}

impl FromStr for YearRange {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        let bad = || CliError::Config(format!("invalid year range {s:?}, expected A:B"));
        let (a, b) = match s.split_once(':') {
            Some((a, b)) => (a, b),
            None => (s, s),
        };
        let first: i32 = a.trim().parse().map_err(|_| bad())?;
        let last: i32 = b.trim().parse().map_err(|_| bad())?;
        if last < first {
            return Err(CliError::Config(format!("year range {s:?} is empty")));
        }
        Ok(YearRange { first, last })
    }
}

impl fmt::Display for YearRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.first, self.last)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub efw: Option<PathBuf>,
    pub ief: Option<PathBuf>,
    pub gdp: Option<PathBuf>,
    /// `None` uses the bundled continental map.
    pub regions: Option<PathBuf>,
    pub years: Option<YearRange>,
    /// Exponential rank-size window; `None` uses the per-index default
    /// (EFW `20:`, IEF `1:`).
    pub exp_window: Option<FitWindow>,
    pub power_window: FitWindow,
    /// Outer window of the segmented power fit.
    pub segment_window: FitWindow,
    pub breakpoint: Breakpoint,
    pub band: f64,
    pub refit_passes: usize,
    pub alpha: f64,
    pub zipf_tolerance: f64,
    pub performance_tolerance: f64,
    pub top: usize,
    pub bottom: usize,
    pub out: PathBuf,
    pub svg: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            efw: None,
            ief: None,
            gdp: None,
            regions: None,
            years: None,
            exp_window: None,
            power_window: FitWindow::FULL,
            segment_window: FitWindow {
                min_rank: 1,
                max_rank: Some(100),
            },
            breakpoint: Breakpoint::Fixed(10),
            band: 2.0,
            refit_passes: 1,
            alpha: 0.05,
            zipf_tolerance: econfree::rank_size::ZIPF_TOLERANCE,
            performance_tolerance: 0.0,
            top: 20,
            bottom: 20,
            out: PathBuf::from("out"),
            svg: false,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> CliResult<T>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Config(format!("{key}: {e}")))
}

fn parse_bool(key: &str, value: &str) -> CliResult<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(CliError::Config(format!("{key}: expected a boolean, got {value:?}"))),
    }
}

impl RunConfig {
    pub fn exp_window_for(&self, kind: PanelKind) -> FitWindow {
        self.exp_window.unwrap_or(match kind {
            PanelKind::Efw => FitWindow {
                min_rank: 20,
                max_rank: None,
            },
            _ => FitWindow::FULL,
        })
    }

    /// Sets one key. Relative paths resolve against `base`.
    pub fn set(&mut self, key: &str, value: &str, base: Option<&Path>) -> CliResult<()> {
        let path = |v: &str| {
            let p = PathBuf::from(v);
            match base {
                Some(b) if p.is_relative() => b.join(p),
                _ => p,
            }
        };
        match key {
            "efw" => self.efw = Some(path(value)),
            "ief" => self.ief = Some(path(value)),
            "gdp" => self.gdp = Some(path(value)),
            "regions" => self.regions = Some(path(value)),
            "out" => self.out = path(value),
            "years" => self.years = Some(value.parse()?),
            "window" => self.exp_window = Some(parse(key, value)?),
            "power_window" => self.power_window = parse(key, value)?,
            "segment_window" => self.segment_window = parse(key, value)?,
            "breakpoint" => self.breakpoint = parse(key, value)?,
            "band" => self.band = parse(key, value)?,
            "refit_passes" => self.refit_passes = parse(key, value)?,
            "alpha" => self.alpha = parse(key, value)?,
            "zipf_tolerance" => self.zipf_tolerance = parse(key, value)?,
            "performance_tolerance" => self.performance_tolerance = parse(key, value)?,
            "top" => self.top = parse(key, value)?,
            "bottom" => self.bottom = parse(key, value)?,
            "svg" => self.svg = parse_bool(key, value)?,
            _ => return Err(CliError::Config(format!("unknown configuration key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a `key=value` file; `#` starts a comment.
    pub fn apply_file_contents(&mut self, text: &str, base: Option<&Path>) -> CliResult<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("config line {}: expected key=value", i + 1))
            })?;
            self.set(k.trim(), v.trim(), base)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_file_contents(&text, path.parent())
    }

    pub fn validate(&self) -> CliResult<()> {
        for (name, p) in [
            ("efw", &self.efw),
            ("ief", &self.ief),
            ("gdp", &self.gdp),
            ("regions", &self.regions),
        ] {
            if let Some(p) = p {
                if !p.is_file() {
                    return Err(CliError::Config(format!(
                        "{name} file {} does not exist",
                        p.display()
                    )));
                }
            }
        }
        if !(self.band > 0.0 && self.band.is_finite()) {
            return Err(CliError::Config(format!("band must be positive, got {}", self.band)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.performance_tolerance < 0.0 || self.zipf_tolerance < 0.0 {
            return Err(CliError::Config("tolerances must be non-negative".into()));
        }
        Ok(())
    }
}

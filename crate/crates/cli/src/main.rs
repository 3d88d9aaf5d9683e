use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use econfree::{Breakpoint, FitWindow, PanelKind};
use econfree_cli::{run, CliError, CliResult, Command, RunConfig, YearRange};

#[derive(Parser, Debug)]
#[command(name = "econfree", version, about = "Economic freedom index panel analysis")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Global {
    /// key=value configuration file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    efw: Option<PathBuf>,
    #[arg(long, global = true)]
    ief: Option<PathBuf>,
    #[arg(long, global = true)]
    gdp: Option<PathBuf>,
    /// country,region CSV replacing the bundled continent table
    #[arg(long, global = true)]
    regions: Option<PathBuf>,
    /// FIRST:LAST or a single year
    #[arg(long, global = true)]
    years: Option<YearRange>,
    /// rank window of the exponential fit, MIN:MAX or MIN:
    #[arg(long, global = true)]
    window: Option<FitWindow>,
    #[arg(long, global = true)]
    power_window: Option<FitWindow>,
    #[arg(long, global = true)]
    segment_window: Option<FitWindow>,
    /// N, auto or auto:MIN:MAX
    #[arg(long, global = true)]
    breakpoint: Option<Breakpoint>,
    #[arg(long, global = true)]
    band: Option<f64>,
    #[arg(long, global = true)]
    refit_passes: Option<usize>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    svg: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IndexArg {
    Efw,
    Ief,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Moments, histograms and the normality test
    Stats,
    /// Top and bottom of a yearly ranking
    Rank {
        #[arg(long)]
        index: Option<IndexArg>,
        /// defaults to the latest year
        #[arg(long)]
        year: Option<i32>,
        #[arg(long)]
        top: Option<usize>,
        #[arg(long)]
        bottom: Option<usize>,
    },
    /// Rank-size fits per year
    Fit,
    /// GDP-weighted regional averages
    Regional,
    /// Index against GDP power law and outliers
    Gdp,
    /// EFW against IEF on the common support
    Compare,
    /// Everything the inputs allow
    Report,
}

fn build_config(g: &Global) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &g.config {
        cfg.apply_file(path)?;
    }
    macro_rules! over {
        ($($field:ident),*) => { $( if let Some(v) = &g.$field { cfg.$field = Some(v.clone()); } )* };
    }
    over!(efw, ief, gdp, regions, years);
    if let Some(w) = g.window {
        cfg.exp_window = Some(w);
    }
    if let Some(w) = g.power_window {
        cfg.power_window = w;
    }
    if let Some(w) = g.segment_window {
        cfg.segment_window = w;
    }
    if let Some(b) = g.breakpoint {
        cfg.breakpoint = b;
    }
    if let Some(b) = g.band {
        cfg.band = b;
    }
    if let Some(p) = g.refit_passes {
        cfg.refit_passes = p;
    }
    if let Some(a) = g.alpha {
        cfg.alpha = a;
    }
    if let Some(o) = &g.out {
        cfg.out = o.clone();
    }
    cfg.svg |= g.svg;
    Ok(cfg)
}

fn execute(cli: Cli) -> CliResult<()> {
    let cfg = build_config(&cli.global)?;
    let command = match cli.command {
        Sub::Stats => Command::Stats,
        Sub::Rank {
            index,
            year,
            top,
            bottom,
        } => Command::Rank {
            index: index.map(|i| match i {
                IndexArg::Efw => PanelKind::Efw,
                IndexArg::Ief => PanelKind::Ief,
            }),
            year,
            top: top.unwrap_or(cfg.top),
            bottom: bottom.unwrap_or(cfg.bottom),
        },
        Sub::Fit => Command::Fit,
        Sub::Regional => Command::Regional,
        Sub::Gdp => Command::Gdp,
        Sub::Compare => Command::Compare,
        Sub::Report => Command::Report,
    };
    let out = run(&cfg, &command)?;
    out.emit(&cfg.out, cfg.svg)?;
    print!("{}", out.render_text());
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    e.exit_code() as u8
}

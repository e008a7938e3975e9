use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ncthick_cli::{Format, Report, Truncation};
use ncthick_core::{Error, Rat};

#[derive(Parser)]
#[command(name = "ncthick", version, about = "Truncated NC thickenings of quiver moduli")]
struct Cli {
    /// Commutator depth d: work modulo F^{d+1}.
    #[arg(long, global = true, default_value_t = 3)]
    nc_degree: usize,
    /// Adic degree N: work modulo m^{N+1}.
    #[arg(long, global = true, default_value_t = 5)]
    adic_degree: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal of a chart, its reduced presentation and quotient dimensions.
    Thicken {
        chart: PathBuf,
        #[arg(long)]
        quiver: Option<PathBuf>,
    },
    /// Gluing maps between two charts.
    Glue {
        source: PathBuf,
        target: PathBuf,
        overlap: PathBuf,
    },
    /// Composite of gluing maps around a cycle.
    Cocycle {
        #[arg(long = "chart", required = true)]
        charts: Vec<PathBuf>,
        #[arg(long = "overlap", required = true)]
        overlaps: Vec<PathBuf>,
    },
    /// Truncated completion of a chart at a point.
    Complete {
        chart: PathBuf,
        /// `name=value` pairs, e.g. "a=1 b=0"; omitted coordinates are 0.
        #[arg(long, default_value = "")]
        point: String,
        /// Skip linear elimination.
        #[arg(long)]
        raw: bool,
    },
    /// The built-in two-chart example.
    DemoHilb2,
    /// The window quiver of a graded algebra.
    Window {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// Hilbert polynomial coefficients, constant term first, e.g. `1,1`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        hilbert: Option<Vec<Rat>>,
        #[arg(long)]
        module: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn run(cli: &Cli) -> Result<Report> {
    let t = Truncation {
        nc_degree: cli.nc_degree,
        adic_degree: cli.adic_degree,
    };
    match &cli.command {
        Command::Thicken { chart, quiver } => {
            let q = quiver.as_deref().map(read).transpose()?;
            ncthick_cli::thicken(&read(chart)?, q.as_deref(), t)
        }
        Command::Glue { source, target, overlap } => {
            ncthick_cli::glue(&read(source)?, &read(target)?, &read(overlap)?, t)
        }
        Command::Cocycle { charts, overlaps } => {
            let cs = charts.iter().map(|p| read(p)).collect::<Result<Vec<_>>>()?;
            let os = overlaps.iter().map(|p| read(p)).collect::<Result<Vec<_>>>()?;
            let cr: Vec<&str> = cs.iter().map(String::as_str).collect();
            let or: Vec<&str> = os.iter().map(String::as_str).collect();
            ncthick_cli::cocycle(&cr, &or, t)
        }
        Command::Complete { chart, point, raw } => ncthick_cli::complete(&read(chart)?, point, *raw, t),
        Command::DemoHilb2 => ncthick_cli::demo_hilb2(t),
        Command::Window {
            algebra,
            p,
            q,
            hilbert,
            module,
        } => {
            let m = module.as_deref().map(read).transpose()?;
            ncthick_cli::window(&read(algebra)?, *p, *q, hilbert.as_deref(), m.as_deref(), t)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceCap { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    };
    let text = report.render(format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

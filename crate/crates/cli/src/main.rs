//! `beltrami`: run the identity audit from the command line.
//!
//! Precedence, lowest first: built-in defaults, the `--config` file, the
//! `BELTRAMI_*` environment variables, command-line flags.

use std::path::PathBuf;
use std::process::ExitCode;

use beltrami::catalog::catalog_info;
use beltrami::config::{convergence_study, parse_grid, verify, RunConfig};
use beltrami::registry::registry;
use beltrami::{DerivativeMode, Error};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "beltrami",
    version,
    about = "Residual audit of moving-frame surface identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected cases and write report.json and summary.csv.
    Verify(RunArgs),
    /// Tabulate residual against step size for one pointwise case.
    Convergence {
        case: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the registered cases.
    ListCases {
        #[arg(long)]
        json: bool,
    },
    /// List the surface catalog.
    ListSurfaces {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long, env = "BELTRAMI_CONFIG")]
    config: Option<PathBuf>,
    /// Catalog surface, e.g. `sphere:R=1`; repeat for several.
    #[arg(long, env = "BELTRAMI_SURFACE", value_delimiter = ';')]
    surface: Vec<String>,
    /// Case id glob; repeat for several.
    #[arg(long, env = "BELTRAMI_CASES", value_delimiter = ';')]
    cases: Vec<String>,
    /// Case id glob to leave out.
    #[arg(long, env = "BELTRAMI_EXCLUDE", value_delimiter = ';')]
    exclude: Vec<String>,
    /// analytic | dual | fd
    #[arg(long, env = "BELTRAMI_MODE")]
    mode: Option<String>,
    /// `<nu>x<nv>[,<nu>x<nv>...]`, coarse to fine.
    #[arg(long, env = "BELTRAMI_GRID")]
    grid: Option<String>,
    #[arg(long, env = "BELTRAMI_OUT")]
    out: Option<PathBuf>,
    #[arg(long, env = "BELTRAMI_SEED")]
    seed: Option<u64>,
    /// Residual tolerance overriding the per-mode default.
    #[arg(long, env = "BELTRAMI_TOLERANCE")]
    tolerance: Option<f64>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut c = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        if !self.surface.is_empty() {
            c.surfaces = self.surface.clone();
        }
        if !self.cases.is_empty() {
            c.cases.include = self.cases.clone();
        }
        if !self.exclude.is_empty() {
            c.cases.exclude = self.exclude.clone();
        }
        if let Some(m) = &self.mode {
            c.mode = DerivativeMode::parse(m)
                .ok_or_else(|| Error::ConfigParse(format!("unknown mode `{m}`; expected analytic, dual or fd")))?;
        }
        if let Some(g) = &self.grid {
            c.ladder = parse_grid(g)?;
        }
        if let Some(o) = &self.out {
            c.output.dir = o.clone();
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if self.tolerance.is_some() {
            c.tolerance = self.tolerance;
        }
        c.harness()?;
        Ok(c)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ConfigParse(_) => 2,
        Error::UnknownSurface(_) => 3,
        Error::UnknownCase(_) => 4,
        _ => 5,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Verify(args) => {
            let config = args.resolve()?;
            let suite = verify(&config)?;
            print!("{}", suite.table());
            println!(
                "wrote {} and {}",
                config.report_path().display(),
                config.summary_path().display()
            );
            Ok(if suite.has_unexpected() { 1 } else { 0 })
        }
        Command::Convergence { case, run } => {
            let config = run.resolve()?;
            print!("{}", convergence_study(&config, &case)?);
            eprintln!("wrote {}", config.convergence_path().display());
            Ok(0)
        }
        Command::ListCases { json } => {
            let infos: Vec<_> = registry().iter().map(|c| c.info()).collect();
            if json {
                println!("{}", serde_json::to_string_pretty(&infos).expect("serializable"));
            } else {
                for c in infos {
                    let req: Vec<&str> = c.requires.iter().map(|r| r.reason()).collect();
                    println!(
                        "{:32} {:9} {:12} {:28} {}",
                        c.id,
                        format!("{:?}", c.kind).to_lowercase(),
                        if c.expected == beltrami::registry::Expectation::ReportOnly {
                            "report-only"
                        } else {
                            "confirm"
                        },
                        c.anchor,
                        req.join(",")
                    );
                }
            }
            Ok(0)
        }
        Command::ListSurfaces { json } => {
            let infos = catalog_info();
            if json {
                println!("{}", serde_json::to_string_pretty(&infos).expect("serializable"));
            } else {
                for s in infos {
                    println!("{:14} {:22} {:32} {}", s.family, s.example, s.parameters, s.description);
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

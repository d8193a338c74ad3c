use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spexcess::error::ErrorClass;
use spexcess::poly::Poly;
use spexcess::report::{self, AnalysisReport};
use spexcess::theorems::{self, TheoremId};
use spexcess::{fixtures, graph, graph6, Analysis, Config, Error, Exec, Format, Graph};

const EXIT_INPUT: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(name = "spexcess", version, about = "Spectral excess analysis of connected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Edgelist,
    Graph6,
}

#[derive(clap::Args)]
struct Input {
    /// Graph file (edge list, or graph6 when the extension is .g6).
    path: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Jacobi off-diagonal tolerance.
    #[arg(long, env = "SPEXCESS_TOL_EIGEN")]
    tol: Option<f64>,
    /// Eigenvalue grouping tolerance.
    #[arg(long, env = "SPEXCESS_TOL_GROUP")]
    group_tol: Option<f64>,
    /// Local multiplicity presence threshold.
    #[arg(long, env = "SPEXCESS_TOL_PRESENCE")]
    presence_tol: Option<f64>,
    /// Relative tolerance for scalar equality.
    #[arg(long, env = "SPEXCESS_TOL_EQ")]
    eq_tol: Option<f64>,
    /// Disable internal parallelism.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print the report.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Print a human-readable summary instead of JSON.
        #[arg(long)]
        pretty: bool,
        /// Keep witness matrices in the theorem reports.
        #[arg(long)]
        witnesses: bool,
    },
    /// Evaluate a single theorem.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        theorem: TheoremId,
        /// Vertex label (P31, T32).
        #[arg(long)]
        vertex: Option<String>,
        /// Level j (P31, T34).
        #[arg(long)]
        j: Option<usize>,
        /// Level m (P35, P36).
        #[arg(long)]
        m: Option<usize>,
        /// Coefficients of r in increasing degree, comma separated (P31).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<f64>>,
    },
    /// Write the bundled fixture graphs to a directory.
    Fixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Input(String),
    Numerical(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.class() {
            ErrorClass::Input => Failure::Input(e.to_string()),
            ErrorClass::Numerical => Failure::Numerical(e.to_string()),
        }
    }
}

impl Input {
    fn config(&self) -> Result<Config, Failure> {
        let mut config = Config::default();
        let t = &mut config.tol;
        for (slot, v, name) in [
            (&mut t.eigen, self.tol, "--tol"),
            (&mut t.group, self.group_tol, "--group-tol"),
            (&mut t.presence, self.presence_tol, "--presence-tol"),
            (&mut t.eq, self.eq_tol, "--eq-tol"),
        ] {
            if let Some(v) = v {
                if !(v > 0.0 && v < 1.0) {
                    return Err(Failure::Input(format!("{name} must lie in (0, 1), got {v}")));
                }
                *slot = v;
            }
        }
        if self.sequential {
            config.exec = Exec::Sequential;
        }
        Ok(config)
    }

    fn format(&self) -> Format {
        match self.format {
            Some(FormatArg::Edgelist) => Format::EdgeList,
            Some(FormatArg::Graph6) => Format::Graph6,
            None if self.path.extension().is_some_and(|e| e == "g6") => Format::Graph6,
            None => Format::EdgeList,
        }
    }

    fn analyze(&self) -> Result<Analysis, Failure> {
        let config = self.config()?;
        let file = File::open(&self.path)
            .map_err(|e| Failure::Input(format!("{}: {e}", self.path.display())))?;
        let g = graph::load_graph(file, self.format())?;
        Ok(Analysis::new(g, config)?)
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let v = report::to_json_value(value).map_err(|e| Failure::Numerical(e.to_string()))?;
    let text = serde_json::to_string_pretty(&v).map_err(|e| Failure::Numerical(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Failure::Input(e.to_string()))
}

fn write_fixtures(dir: &Path) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io_err)?;
    let write = |name: String, text: String| fs::write(dir.join(name), text).map_err(io_err);
    for (name, g) in fixtures::bundled() {
        write(format!("{name}.el"), graph::to_edgelist(&g))?;
    }
    let p: Graph = fixtures::petersen();
    write("petersen.g6".into(), graph6::encode(p.n(), p.edges()) + "\n")?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            input,
            pretty,
            witnesses,
        } => {
            let an = input.analyze()?;
            let mut rep = AnalysisReport::new(&an);
            if !witnesses {
                rep.strip_witnesses();
            }
            if pretty {
                print!("{}", report::summary(&rep));
            } else {
                print_json(&rep)?;
            }
            if rep.invariant_violated() {
                return Err(Failure::Invariant("a theorem check reported an invariant violation".into()));
            }
        }
        Command::Check {
            input,
            theorem,
            vertex,
            j,
            m,
            coeffs,
        } => {
            let missing = |flag: &str| {
                Failure::Input(format!("missing parameter: theorem {theorem} requires --{flag}"))
            };
            match theorem {
                TheoremId::P31 | TheoremId::T32 if vertex.is_none() => return Err(missing("vertex")),
                TheoremId::T34 if j.is_none() => return Err(missing("j")),
                TheoremId::P35 | TheoremId::P36 if m.is_none() => return Err(missing("m")),
                _ => {}
            }
            let an = input.analyze()?;
            let u = match vertex {
                Some(label) => Some(an.graph.vertex(&label)?),
                None => None,
            };
            let r = coeffs.map(Poly::new);
            let rep = theorems::check_one(&an, theorem, u, j, m, r.as_ref())?;
            print_json(&rep)?;
            if rep.invariant_violated(an.config.tol.eq) {
                return Err(Failure::Invariant(format!("{theorem}: invariant violated")));
            }
        }
        Command::Fixtures { out } => write_fixtures(&out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Input(m) => (EXIT_INPUT, m),
                Failure::Numerical(m) => (EXIT_NUMERICAL, m),
                Failure::Invariant(m) => (EXIT_INVARIANT, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

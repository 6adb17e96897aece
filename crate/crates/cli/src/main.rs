//! `toric-contact`: command-line front end.
//!
//! Every verb prints one JSON document on stdout. Exit status is 0 when the
//! verb passed, 1 when a verification failed (the report is still printed),
//! and 2 for input or usage errors (an error document on stdout, a one-line
//! message on stderr).

mod commands;
mod json;
mod report;

use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use commands::{ContactoArgs, FlowArgs, GirouxArgs, MapKind, PolytopeSource, Profile};
use json::CliResult;

#[derive(Parser)]
#[command(name = "toric-contact", version, about = "Exact and numerical checks for toric contact manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strict convexity, goodness, lineality and Reeb type of a cone.
    ClassifyCone {
        /// Cone JSON file, or `-` for stdin.
        #[arg(long)]
        input: String,
    },
    /// Integral Reeb vector with positive coefficients and a basis witness.
    SynthesizeReeb {
        #[arg(long)]
        input: String,
    },
    /// Labeled polytope cut from the cone at `⟨x, R⟩ = level`.
    Slice {
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "1")]
        level: String,
    },
    /// Probe displaceability over the lattice `(1/denominator)ℤⁿ` inside a polytope.
    #[command(group(ArgGroup::new("source").required(true).args(["polytope", "simplex", "cube"])))]
    ProbeScan {
        #[arg(long)]
        polytope: Option<String>,
        /// Standard simplex of this dimension.
        #[arg(long)]
        simplex: Option<usize>,
        /// Unit cube of this dimension.
        #[arg(long)]
        cube: Option<usize>,
        #[arg(long)]
        denominator: u32,
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
    /// Verdict with provenance for a toric fiber.
    #[command(alias = "classify")]
    ClassifyFiber {
        /// e.g. `sphere:3`, `lens:3:2`, `product:2`, `tk:2:3`, `cosphere:3`.
        #[arg(long)]
        spec: String,
        /// Squared moduli followed by linear coordinates, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        fiber: String,
    },
    /// Sampled check that the Giroux isotopy displaces a sphere fiber.
    VerifyGiroux {
        #[arg(long)]
        d: Option<usize>,
        /// Squared moduli, comma-separated rationals summing to 1.
        #[arg(long)]
        fiber: String,
        /// Time, or `auto` for the displacement bound plus 0.01.
        #[arg(long, default_value = "auto")]
        t: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        margin_floor: f64,
    },
    /// Sampled check that a map of the sphere preserves the standard contact structure.
    VerifyContacto {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-5)]
        fd_step: f64,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Contact condition of `g(h) dθ + ½(x dy − y dx)` on a grid in `h`.
    CheckBetaG {
        #[arg(long, value_enum)]
        profile: Profile,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1000)]
        intervals: usize,
    },
    /// Integrate a contact Hamiltonian flow on the sphere and track the moment map.
    Flow {
        #[arg(long)]
        d: usize,
        /// `reeb` or `moment:j`.
        #[arg(long, default_value = "reeb")]
        hamiltonian: String,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        /// Moment flows turn faster than the Reeb flow; 0.01 leaves ~1e-8 drift.
        #[arg(long, default_value_t = 0.001)]
        dt: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Human-readable summary of a JSON report; optionally export plot data.
    Report {
        #[arg(long)]
        input: String,
        /// Write `series,x,y` rows here.
        #[arg(long)]
        csv: Option<String>,
    },
}

enum Outcome {
    Json(commands::Output),
    Text(String),
}

fn run(cmd: Command) -> CliResult<Outcome> {
    use Command::*;
    let out = match cmd {
        ClassifyCone { input } => commands::classify_cone(&input)?,
        SynthesizeReeb { input } => commands::synthesize(&input)?,
        Slice { input, level } => commands::slice(&input, &level)?,
        ProbeScan {
            polytope,
            simplex,
            cube,
            denominator,
            radius,
        } => {
            let source = match (polytope, simplex, cube) {
                (Some(p), _, _) => PolytopeSource::File(p),
                (_, Some(n), _) => PolytopeSource::Simplex(n),
                (_, _, Some(n)) => PolytopeSource::Cube(n),
                _ => unreachable!("clap enforces the source group"),
            };
            commands::probe_scan(source, denominator, radius)?
        }
        ClassifyFiber { spec, fiber } => commands::classify(&spec, &fiber)?,
        VerifyGiroux {
            d,
            fiber,
            t,
            samples,
            seed,
            margin_floor,
        } => commands::verify_giroux(GirouxArgs {
            d,
            fiber: &fiber,
            t: &t,
            samples,
            seed,
            margin_floor,
        })?,
        VerifyContacto {
            d,
            map,
            t,
            samples,
            seed,
            fd_step,
            tolerance,
        } => commands::verify_contacto(ContactoArgs {
            d,
            map,
            t,
            samples,
            seed,
            fd_step,
            tolerance,
        })?,
        CheckBetaG { profile, eps, t, intervals } => commands::check_beta_g(profile, eps, t, intervals)?,
        Flow {
            d,
            hamiltonian,
            t_end,
            dt,
            seed,
            tolerance,
        } => commands::flow(FlowArgs {
            d,
            hamiltonian: &hamiltonian,
            t_end,
            dt,
            seed,
            tolerance,
        })?,
        Report { input, csv } => return report::report(&input, csv.as_deref()).map(Outcome::Text),
    };
    Ok(Outcome::Json(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Json(out)) => {
            print!("{}", json::render(&out.json));
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Outcome::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            print!("{}", json::render(&e.to_json()));
            eprintln!("toric-contact: {e}");
            ExitCode::from(2)
        }
    }
}

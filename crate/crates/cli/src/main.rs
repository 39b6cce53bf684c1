mod commands;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use wedderkit::exactnum::DEFAULT_PRECISION_BITS;
use wedderkit::group::DEFAULT_SUBGROUP_BOUND;

/// Exact Wedderburn decompositions, central units and primitive idempotents
/// of rational group algebras.
#[derive(Parser, Debug)]
#[command(name = "wedderkit", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Bits of precision for the numeric independence check.
    #[arg(
        long,
        global = true,
        env = "WEDDERKIT_PRECISION",
        default_value_t = DEFAULT_PRECISION_BITS,
        value_parser = clap::value_parser!(u32).range(53..)
    )]
    pub precision: u32,

    /// Largest group order for which the subgroup lattice is enumerated.
    #[arg(
        long,
        global = true,
        default_value_t = DEFAULT_SUBGROUP_BOUND as u64,
        value_parser = clap::value_parser!(u64).range(1..=512)
    )]
    pub bound: u64,

    /// Search for a section of N/H with trivial twisting.
    #[arg(long, global = true)]
    pub search_section: bool,

    /// Include the bicyclic units in `unit-generators`.
    #[arg(long, global = true)]
    pub bicyclic: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Group spec, e.g. `metacyclic 7 3 0 2`, `cyclic 12`, `symmetric 4` or a JSON table path.
    #[arg(required = true, num_args = 1..)]
    pub spec: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Strong Shoda pairs and simple component descriptors.
    Wedderburn(SpecArgs),
    /// Rank of the central unit group, with the class-count cross-check.
    Rank(SpecArgs),
    /// A virtual basis of the central units with certificates.
    CentralBasis(SpecArgs),
    /// Complete sets of orthogonal primitive idempotents.
    Idempotents(SpecArgs),
    /// Matrix units of each component.
    MatrixUnits(SpecArgs),
    /// Generators of a finite-index unit subgroup (faithful metacyclic groups).
    UnitGenerators(SpecArgs),
    /// Re-check a unit-generator certificate.
    Verify {
        certificate: PathBuf,
    },
    /// Class-count and partition-of-unity cross-checks.
    Oracle(SpecArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.json));
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            if cli.json {
                let diag = serde_json::json!({
                    "error": commands::error_kind(&e),
                    "message": e.to_string(),
                    "exit_code": e.exit_code(),
                });
                eprintln!("{diag}");
            } else {
                eprintln!("wedderkit: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

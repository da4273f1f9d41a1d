//! Command-line front end: catalog queries, lattice search and verification,
//! graph export and the reproduction harness.

pub mod commands;
pub mod reproduce;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use edgeprim_core::catalog::Catalog;
use edgeprim_core::group::DEFAULT_SEED;
use edgeprim_core::Limits;

pub use reproduce::{reproduce, ReproductionManifest, Status, Target};

/// Exit code when every check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code when some check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage and data errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "edgeprim",
    version,
    about = "Coset graphs, subgroup lattices and edge-primitivity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print JSON instead of the text rendering.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write reports into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Largest coset index for graph builds.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<u64>,
    /// Seed for randomized group construction; results do not depend on it.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Catalog directory.
    #[arg(long, global = true, env = "CATALOG_DIR", value_name = "DIR")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, degree and metadata of a catalog group.
    Info { group: String },
    /// Find the subgroup lattices (G, E, A, H) of a catalog group.
    Search {
        group: String,
        /// Deduplicate under this catalog group instead of the one in the metadata.
        #[arg(long)]
        overgroup: Option<String>,
    },
    /// Verify a lattice file and, optionally, properties of its graph.
    Verify {
        /// Catalog lattice name or path to a lattice file.
        lattice: String,
        /// Build the graph and compare its basic invariants.
        #[arg(long)]
        graph: bool,
        /// Compute the largest s for s-arc-transitivity.
        #[arg(long = "s-arc")]
        s_arc: bool,
        #[arg(long = "edge-primitive")]
        edge_primitive: bool,
        #[arg(long)]
        biprimitive: bool,
        /// Require the graph to be isomorphic to the graph of another lattice.
        #[arg(long = "isomorphic-to", value_name = "LATTICE")]
        isomorphic_to: Option<String>,
    },
    /// Build the graph of a lattice and print it.
    Graph {
        lattice: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
    },
    /// Run a reproduction target and print its manifest.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Text,
    Json,
}

/// What a command produced.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn error(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

impl Cli {
    pub fn catalog(&self) -> Catalog {
        let dir = self.catalog.clone().unwrap_or_else(Catalog::default_dir);
        Catalog::new(dir).with_seed(self.seed)
    }

    pub fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(cap) = self.cap {
            limits.coset_index_cap = cap;
        }
        limits
    }
}

pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Info { group } => commands::info(cli, group),
        Command::Search { group, overgroup } => commands::search(cli, group, overgroup.as_deref()),
        Command::Verify {
            lattice,
            graph,
            s_arc,
            edge_primitive,
            biprimitive,
            isomorphic_to,
        } => commands::verify(
            cli,
            lattice,
            &commands::VerifyFlags {
                graph: *graph,
                s_arc: *s_arc,
                edge_primitive: *edge_primitive,
                biprimitive: *biprimitive,
                isomorphic_to: isomorphic_to.clone(),
            },
        ),
        Command::Graph { lattice, format } => commands::graph(cli, lattice, *format),
        Command::Reproduce { target } => commands::reproduce(cli, *target),
    };
    result.unwrap_or_else(Output::error)
}

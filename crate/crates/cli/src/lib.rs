//! Command-line front end for the entanglement toolkit.

pub mod commands;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

pub use commands::run;
pub use report::{format_float, Report, Value};

#[derive(Debug, Parser)]
#[command(name = "entangle", version, about = "Multipartite entanglement toolkit")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sampling commands.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// Where a state comes from: a state file or a catalog name such as `ghz(4)`.
#[derive(Debug, Clone, Args)]
pub struct StateInput {
    /// State file (same as --state).
    #[arg(value_name = "FILE", conflicts_with_all = ["state", "catalog"])]
    pub path: Option<PathBuf>,
    #[arg(long, value_name = "FILE", conflicts_with = "catalog")]
    pub state: Option<PathBuf>,
    /// Built-in state: ghz(K), ghz(K,N), w(K), dicke(K,m), ame43, ame52.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropies, and for three qubits the invariants, tangles and SLOCC class.
    Analyze {
        #[command(flatten)]
        input: StateInput,
        /// SLOCC rank and hyperdeterminant tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Three-qubit SLOCC class and, for symmetric states, the stellar class.
    Classify {
        #[command(flatten)]
        input: StateInput,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Local spectra and polygon inequalities for qubit states.
    Polytope {
        #[command(flatten)]
        input: StateInput,
    },
    /// Q_k measures and k-uniformity.
    Uniformity {
        #[command(flatten)]
        input: StateInput,
        /// Largest reduction size (default K/2).
        #[arg(long = "max-k", visible_alias = "k")]
        max_k: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Majorana constellation and form invariants of a symmetric state.
    Stellar {
        #[command(flatten)]
        input: StateInput,
        /// Permutation-symmetry tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Classical linear codes and the Knill-Laflamme condition.
    Codes {
        #[command(subcommand)]
        action: CodesCommand,
    },
    /// Matrix product states.
    Mps {
        #[command(subcommand)]
        action: MpsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum CodesCommand {
    /// Encode, measure distance and correct every single-bit error.
    Demo {
        #[arg(long, conflicts_with_all = ["repetition", "code"])]
        hamming: bool,
        /// The [12,4] repetition code.
        #[arg(long, conflicts_with = "code")]
        repetition: bool,
        /// Code file: `n k` header then k generator rows.
        #[arg(long, value_name = "FILE")]
        code: Option<PathBuf>,
        /// Message bits (default 0101 truncated or padded with zeros to k).
        #[arg(long)]
        message: Option<String>,
    },
    /// Knill-Laflamme check against all Pauli errors up to a weight.
    Kl {
        #[command(flatten)]
        input: StateInput,
        #[arg(long)]
        weight: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Ising,
    Heisenberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Dense,
    Ghz,
    Mps,
}

#[derive(Debug, Subcommand)]
pub enum MpsCommand {
    /// Exact MPS of a dense state, truncated to a bond dimension.
    Compress {
        #[command(flatten)]
        input: StateInput,
        #[arg(long)]
        max_bond: usize,
        /// Also write the truncated MPS in MPS file format.
        #[arg(long, value_name = "FILE")]
        mps_out: Option<PathBuf>,
    },
    /// Variational ground state of a nearest-neighbour chain.
    Dmrg {
        #[arg(long, value_enum)]
        model: Model,
        /// Transverse field (ising only).
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        #[arg(long)]
        sites: usize,
        #[arg(long)]
        bond: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        sweeps: usize,
        /// Stop once a sweep lowers the energy by less than this.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Mean entropy of the first |X| sites versus |X|.
    Scaling {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long)]
        sites: usize,
        #[arg(long, default_value_t = 2)]
        local_dim: usize,
        /// Bond dimension for the random MPS source.
        #[arg(long, default_value_t = 4)]
        bond: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

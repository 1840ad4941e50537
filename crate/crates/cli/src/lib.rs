//! `hsbasis` command-line front end.
//!
//! Exit codes: 0 success, 2 verification failure, 3 input error. Structured
//! output is JSON on stdout; wall-clock timings go to stderr so stdout is
//! reproducible for fixed flags and seed.

pub mod commands;
pub mod error;
pub mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hsbasis::verify::DEFAULT_SEED;
use hsbasis::Family;

pub use error::{CliError, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};

#[derive(Parser, Debug)]
#[command(
    name = "hsbasis",
    version,
    about = "Orthonormal operator bases on fermion Fock space"
)]
pub struct Cli {
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List basis elements, one JSON object per line.
    Basis(BasisArgs),
    /// Check the Gram matrix of a basis family.
    Gram(GramArgs),
    /// Project an operator or density matrix onto k-body operators.
    Project(ProjectArgs),
    /// One-particle reduced density matrix of a density file.
    Rdm(RdmArgs),
    /// Run the self-verification suites.
    Verify(VerifyArgs),
    /// Compare ground energies of a Hamiltonian and its basis truncation.
    Bound(BoundArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "B")]
    B,
    #[value(name = "BR")]
    BReal,
    #[value(name = "M")]
    Majorana,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::B => Family::B,
            FamilyArg::BReal => Family::BReal,
            FamilyArg::Majorana => Family::Majorana,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    MultiSign,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Restrict to k-body elements.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProjectArgs {
    /// Operator or density JSON file.
    #[arg(long = "in", alias = "input")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "B")]
    pub family: FamilyArg,
    /// Write the projected operator here instead of embedding it in stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RdmArgs {
    /// Density JSON file.
    #[arg(long = "in", alias = "input")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: LevelArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, hide = true)]
    pub fault: Option<FaultArg>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// FCIDUMP file.
    #[arg(long, conflicts_with = "instance")]
    pub fcidump: Option<PathBuf>,
    /// Built-in instance name.
    #[arg(long)]
    pub instance: Option<String>,
    /// `full`, `none`, `Bk:<k>` or `M:<k>`.
    #[arg(long, default_value = "Bk:1", conflicts_with = "subset_file")]
    pub subset: String,
    /// File with one basis identifier per line.
    #[arg(long)]
    pub subset_file: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse, dispatch, print; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_INPUT;
        }
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let mut stdout = std::io::stdout().lock();
    match commands::dispatch(&cli.command, &mut stdout) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}

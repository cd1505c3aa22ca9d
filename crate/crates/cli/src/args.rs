use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use astlab::limits::{DEFAULT_MAX_SET_SIZE, MAX_SIZE_ENV};
use astlab::weights::Method;

#[derive(Debug, Parser)]
#[command(name = "astlab", version, about = "Alternating sign trapezoids: counts, weight polynomials and conjecture sweeps")]
pub struct Cli {
    /// Largest centred Catalan set size any computation may touch.
    #[arg(long, global = true, env = MAX_SIZE_ENV, default_value_t = DEFAULT_MAX_SET_SIZE, value_name = "N")]
    pub limit_size: usize,

    /// Weight cache file [default: $XDG_CACHE_HOME/astlab/weights.jsonl].
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Neither read nor write the cache.
    #[arg(long, global = true, conflicts_with = "cache")]
    pub no_cache: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream (n,l)-trapezoids or histogram them by set or path.
    Enumerate(EnumerateArgs),
    /// Weight polynomial of a centred Catalan set or a Motzkin path.
    Weight(WeightArgs),
    /// Check an identity over a range of sizes and l.
    Verify(VerifyArgs),
    /// Sweep a conjecture and write JSON and CSV reports.
    Scan(ScanArgs),
    /// Regenerate the reference weight tables as markdown.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum By {
    Catalan,
    Motzkin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Trapezoids,
    Counts,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of rows.
    #[arg(long)]
    pub n: usize,
    /// Bottom row has l+1 entries.
    #[arg(long)]
    pub l: usize,
    #[arg(long, value_enum, default_value_t = By::Catalan)]
    pub by: By,
    #[arg(long, value_enum, default_value_t = Emit::Counts)]
    pub emit: Emit,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("subject").required(true).args(["set", "motzkin"])))]
pub struct WeightArgs {
    /// Centred Catalan set, e.g. "{-1,0,1}".
    #[arg(long, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// Motzkin path over U, F, D, e.g. "UFD".
    #[arg(long)]
    pub motzkin: Option<String>,
    /// interp, operator or both.
    #[arg(long, default_value_t = Method::Interpolation)]
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    /// Both reference tables.
    Appendix,
    /// Sum of set weights against the product formula.
    Product,
    DetAndrews,
    DetAsm,
    ConstantTerm,
    Splitting,
    Multiplicativity,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub identity: Identity,
    /// Largest set size; trapezoids get one row fewer.
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    #[arg(long, default_value_t = 4)]
    pub max_l: usize,
    #[arg(long, default_value_t = Method::Interpolation)]
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    Roots,
    Divisibility,
    Flatstep,
    Endings,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub conjecture: Conjecture,
    /// Largest set size; paths are one step shorter.
    #[arg(long, default_value_t = 6)]
    pub max_size: usize,
    /// Directory for the report files.
    #[arg(long, default_value = "astlab-reports")]
    pub out: PathBuf,
    #[arg(long, default_value_t = Method::Interpolation)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, default_value_t = Method::Interpolation)]
    pub method: Method,
}

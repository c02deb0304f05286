use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sing_core::VarOrder;

/// Exact verification runs for the ideal of singular matrix tuples. Every run
/// writes a JSON certificate; the exit code is 0 when the check passes, 1
/// when it fails and 2 for invalid input.
#[derive(Debug, Parser, Serialize)]
#[command(name = "singcheck", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Write the certificate to this file instead of stdout.
    #[arg(long, global = true)]
    pub cert: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Record wall-clock time; certificates are then no longer byte-reproducible.
    #[arg(long, global = true)]
    pub timings: bool,
    /// Variable order inside each matrix.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::RowMajor)]
    pub order: OrderArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderArg {
    RowMajor,
    ColumnMajor,
}

impl From<OrderArg> for VarOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::RowMajor => VarOrder::RowMajor,
            OrderArg::ColumnMajor => VarOrder::ColumnMajor,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Emit a generator family as newline-delimited canonical polynomials.
    Gen(GenArgs),
    /// Buchberger's criterion on the candidate basis.
    GbCheck(GbCheckArgs),
    /// Square-free leading monomials of the candidate basis.
    Radical(RadicalArgs),
    /// A block cubic outside the quadric ideal, by two independent oracles.
    Nonmember(RingArgs),
    /// Quartic products lie in the degree-4 span of quadrics and cubics.
    QuarticCheck(RingArgs),
    /// Sample a point of Sing from a compression space.
    Sample(SampleArgs),
    /// Evaluate a generator family at a point.
    Vanish(VanishArgs),
    /// Apply a random group element and compare vanishing before and after.
    Act(ActArgs),
    /// Degree-wise ideal membership by exact linear algebra.
    Member(MemberArgs),
    /// Randomized determinant identity test of a matrix pencil.
    Dit(DitArgs),
    /// Partition and representation checks.
    #[command(subcommand)]
    Rep(RepCommand),
    /// Run the full acceptance battery.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RingArgs {
    /// Matrix size.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Number of matrices.
    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RadicalArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Require every element's leading monomial to be square-free, not just
    /// the minimal generators of the leading ideal.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Pencil,
    BlockCubic,
    QuarticProduct,
    Candidate,
    FlatteningMinor,
    ProductEquation,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Polynomial output file (one per line); stdout certificate only if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Product equations: number of triples to emit.
    #[arg(long, default_value_t = 100)]
    pub limit: usize,
    /// Product equations: sample triples with this seed instead of index order.
    #[arg(long)]
    pub sample_seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GbCheckArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Reduce every S-pair, including those the product criterion would skip.
    #[arg(long)]
    pub no_product_criterion: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PointArgs {
    /// Tensor JSON file (m x n x n array of rationals). Without it a point of
    /// Sing is sampled from --n, --m, --s, --seed.
    #[arg(long)]
    pub tensor: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub m: Option<usize>,
    /// Compression parameter, 0 <= s < n.
    #[arg(long, default_value_t = 0)]
    pub s: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, default_value_t = 0)]
    pub s: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the random basis change.
    #[arg(long)]
    pub adapted: bool,
    /// Also write the bare tensor JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VanishArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Defaults to the candidate basis for n = 2 and flattening minors otherwise.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Product equations: number of sampled triples.
    #[arg(long, default_value_t = 1000)]
    pub products: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ActArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Seed for the group element.
    #[arg(long, default_value_t = 0)]
    pub group_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgainstArg {
    Quadrics,
    QuadricsCubics,
    Candidate,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MemberArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Polynomial in canonical text form.
    #[arg(long)]
    pub poly: String,
    #[arg(long, value_enum, default_value_t = AgainstArg::Quadrics)]
    pub against: AgainstArg,
    /// Target degree (defaults to the degree of --poly).
    #[arg(long)]
    pub degree: Option<u32>,
    /// Also reduce modulo a Gröbner basis of the generators.
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DitArgs {
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Pencil coefficients are drawn from [-bound, bound].
    #[arg(long, default_value_t = 10)]
    pub bound: i64,
    #[arg(long, default_value_t = 0)]
    pub trial_seed: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepCommand {
    /// Dimension form of the Cauchy identity.
    Cauchy {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u32,
    },
    /// Littlewood–Richardson coefficient c^nu_{lambda, mu}.
    Lr {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Row-containment obstruction for the flattening minors.
    Obstruct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dmax: u32,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SuiteArgs {
    /// Comma-separated criterion numbers (default: all).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

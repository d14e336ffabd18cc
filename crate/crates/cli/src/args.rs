use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "atlas",
    version,
    about = "Exact computer algebra for pinhole-camera atlas ideals"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a generator family, one polynomial per line after a census header.
    Gen(GenArgs),
    /// Substitute a scalar camera arrangement into a generator family.
    Specialize(SpecializeArgs),
    /// Normal form of a polynomial against a named, certified Gröbner basis.
    Nf(NfArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Seeded camera arrangement with its genericity certificate.
    Arrange(ArrangeArgs),
    /// Seeded exact correspondence (cameras, world points, images, scales).
    Sample(SampleArgs),
    /// Jacobian-rank dimensions of the eight graph varieties.
    Dims(DimsArgs),
    /// Standard monomial counts of a certified basis, or the built-in tables.
    Hilbert(HilbertArgs),
}

#[derive(Args, Debug)]
pub struct ShapeArgs {
    /// Number of cameras.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Number of world points.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// minors2, focals234, focals23, mfocals, gm or gaqp.
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpecializeArgs {
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Arrangement JSON (as written by `arrange`).
    #[arg(long)]
    pub arrangement: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct NfArgs {
    /// File holding one polynomial in canonical text form.
    #[arg(long)]
    pub poly: PathBuf,
    /// `<family>-m<m>` (must already be a Gröbner basis) or `<family>-m<m>-gb`
    /// (completed first); both are certified before use.
    #[arg(long)]
    pub basis: String,
    /// `lex`, `grevlex` or `scheme:XYZ` with blocks A, q, p.
    #[arg(long, default_value = "grevlex")]
    pub order: String,
    /// Resource limits, e.g. `pairs=200000,secs=600,terms=2000000`.
    #[arg(long)]
    pub limits: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Vanishing,
    Groebner,
    Quotient,
    Hilbert,
    Witness,
    Division,
    Dimension,
    Saturation,
    Census,
    Bump,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Samples per vanishing check.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Witness-search budget and bump round trips.
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long)]
    pub limits: Option<String>,
    /// Also write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Include wall-clock timings (breaks byte-identical output).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Distinct,
    Minor,
    Ultra,
}

#[derive(Args, Debug)]
pub struct ArrangeArgs {
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Target::Ultra)]
    pub target: Target,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = Target::Ultra)]
    pub target: Target,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    /// Basis name as for `nf`; omit to print the built-in tables.
    #[arg(long)]
    pub basis: Option<String>,
    #[arg(long, default_value = "grevlex")]
    pub order: String,
    /// Largest total degree tabulated.
    #[arg(long, default_value_t = 2)]
    pub max_degree: u32,
    #[arg(long)]
    pub limits: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

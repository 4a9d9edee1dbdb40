use clap::{Args, Parser, Subcommand, ValueEnum};
use genfib::{Family, Mode};

#[derive(Parser, Debug)]
#[command(name = "genfib", version, about = "Exact generalized Fibonacci and Lucas computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Report wall-clock time in `elapsed_ms` (otherwise null, so output is reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sequence terms and derived quantities.
    Seq(SeqArgs),
    /// Fibonomial triangles and luconomial quotients.
    Binom(BinomArgs),
    /// Reciprocal Hankel matrices: determinant, inverse, basis or Gram matrix.
    Hankel(HankelArgs),
    /// Orthogonal polynomials of the moment functional and their constants.
    Orthopoly(OrthoArgs),
    /// Identity registry: list, verify one instance, sweep, or fit corrections.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Pell-type equations and the cubic surface.
    #[command(subcommand)]
    Pell(PellCmd),
    /// The convolution S_m(n) by three methods.
    Convolve(ConvolveArgs),
    /// The continued fraction of F(m(t+1))/F(mt).
    Cf(CfArgs),
    /// Run every check and emit the errata ledger.
    VerifyAll,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: genfib::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: genfib::Error| e.to_string())
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Common {
    /// Sequence parameter (k >= 1).
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub k: i64,
    #[arg(long, value_parser = parse_family, default_value = "fib")]
    pub family: Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqView {
    Terms,
    Closed,
    Doubling,
    Matrix,
    Hyperbolic,
    Field,
    Arctan,
    Reciprocal,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "n")]
    pub from: Option<i64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "n")]
    pub to: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<i64>,
    /// Largest step index for the arctangent view.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, value_enum, default_value_t = SeqView::Terms)]
    pub view: SeqView,
    #[arg(long, value_parser = parse_mode, default_value = "corrected")]
    pub mode: Mode,
}

#[derive(Args, Debug)]
pub struct BinomArgs {
    #[command(flatten)]
    pub common: Common,
    /// Last row of the triangle.
    #[arg(long, default_value_t = 8)]
    pub n: i64,
    /// Probe quotients built from odd-index Lucas numbers.
    #[arg(long)]
    pub odd: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Show {
    Det,
    Inverse,
    Basis,
    Gram,
}

#[derive(Args, Debug)]
pub struct HankelArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1)]
    pub alpha: i64,
    /// Order: the matrix is (n+1) x (n+1).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Show::Det)]
    pub show: Show,
    #[arg(long, value_parser = parse_mode, default_value = "corrected")]
    pub mode: Mode,
}

#[derive(Args, Debug)]
pub struct OrthoArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 1)]
    pub alpha: i64,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum IdentityCmd {
    /// Registered identities with their printed and corrected statements.
    List,
    /// Evaluate one instance exactly.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        /// Index bindings such as `n=3`; repeat or separate with commas.
        #[arg(long = "bind", value_delimiter = ',', allow_negative_numbers = true)]
        bind: Vec<String>,
        #[arg(long, value_parser = parse_mode, default_value = "corrected")]
        mode: Mode,
    },
    /// Sweep identities over k and the default index windows.
    Sweep {
        /// Restrict to these ids (repeatable); all when omitted.
        #[arg(long)]
        id: Vec<String>,
        #[arg(long, default_value_t = 1)]
        from: i64,
        #[arg(long, default_value_t = 8)]
        to: i64,
        /// Half-width of the n window.
        #[arg(long, default_value_t = 60)]
        n: i64,
    },
    /// Fit corrected right-hand sides for the generalized difference-of-products family.
    Fit,
}

#[derive(Subcommand, Debug)]
pub enum PellCmd {
    /// Is n some F(m)? Decided by squares, then descended.
    Classify {
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long)]
        n: num_bigint::BigInt,
        /// Admit k outside the odd k > 1 hypothesis.
        #[arg(long)]
        experimental: bool,
    },
    /// Locate (x, y) on y^2 - kxy - x^2 = +-1.
    Solve {
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long)]
        x: num_bigint::BigInt,
        #[arg(long)]
        y: num_bigint::BigInt,
    },
    /// All positive solutions with x <= bound.
    Enumerate {
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long)]
        bound: num_bigint::BigInt,
    },
    /// Discriminant scan over x <= bound, as an oracle for `enumerate`.
    Brute {
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long)]
        bound: u64,
    },
    /// Positive points of z^3 - k^3 y^3 - x^3 = 3kxyz up to the bound.
    Surface {
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value_t = 50)]
        bound: u64,
    },
}

#[derive(Args, Debug)]
pub struct ConvolveArgs {
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_parser = parse_mode, default_value = "corrected")]
    pub mode: Mode,
}

#[derive(Args, Debug)]
pub struct CfArgs {
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub t: u32,
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "somos",
    version,
    about = "Exact Somos-k and EDS computations with reproducible reports"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout (atomically).
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Every subcommand; the serialized form is the config echo.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Terms of a Somos-k window.
    Seq(SeqArgs),
    /// Somos-4 `T, I` or Somos-5 `S, J` along a window.
    Invariants(InvariantsArgs),
    /// Reflection symmetry of a window.
    Symmetry(SymmetryArgs),
    /// Period of an integer window modulo m.
    Period(PeriodArgs),
    /// Equivalence transforms against their closed forms.
    Transform(TransformArgs),
    /// Elliptic divisibility sequence checks.
    Eds(EdsArgs),
    /// Companion EDS identities for unit-initial Somos-4/5.
    Companion(CompanionArgs),
    /// Prime-power gap scan for one prime.
    Gaps(GapsArgs),
    /// Gap scans for several primes.
    Robinson(RobinsonArgs),
    /// Exact polynomial division `τ_n | τ_{n+l(2n−k−1)}`.
    Polydiv(PolydivArgs),
    /// Laurent window over symbolic initial values.
    Laurent(LaurentArgs),
    /// Closure of integer seeds under `(s, t) ↦ 2s − t`.
    Closure(ClosureArgs),
    /// Predicted prime-power indices for one term.
    Conjecture(ConjectureArgs),
    /// Fibonacci prime-power divisibility facts.
    Cavachi(CavachiArgs),
    /// Order of a point on a cubic over `F_p` or `F_{p²}`.
    CurveOrder(CurveOrderArgs),
    /// Gap of `p^r` against a point order.
    GapVsOrder(GapVsOrderArgs),
    /// Independent runs listed in a TOML file.
    Batch(BatchArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Seq(_) => "seq",
            Command::Invariants(_) => "invariants",
            Command::Symmetry(_) => "symmetry",
            Command::Period(_) => "period",
            Command::Transform(_) => "transform",
            Command::Eds(_) => "eds",
            Command::Companion(_) => "companion",
            Command::Gaps(_) => "gaps",
            Command::Robinson(_) => "robinson",
            Command::Polydiv(_) => "polydiv",
            Command::Laurent(_) => "laurent",
            Command::Closure(_) => "closure",
            Command::Conjecture(_) => "conjecture",
            Command::Cavachi(_) => "cavachi",
            Command::CurveOrder(_) => "curve-order",
            Command::GapVsOrder(_) => "gap-vs-order",
            Command::Batch(_) => "batch",
        }
    }
}

/// `k`, `α`, `β` and the initial values, as `num/den` strings.
#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecArgs {
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub beta: String,
    /// `τ_1..τ_k`, comma separated; all ones when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub init: Vec<String>,
    /// Continue past zero terms by specialization.
    #[arg(long)]
    pub through_zeros: bool,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowArgs {
    #[arg(long, default_value_t = -20, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 200, allow_hyphen_values = true)]
    pub to: i64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
    /// Symbolic `α`, `β` with unit initial values.
    #[arg(long)]
    pub symbolic: bool,
    /// Largest distance from the initial block for symbolic runs.
    #[arg(long, default_value_t = 24)]
    pub budget: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 100, allow_hyphen_values = true)]
    pub to: i64,
    /// Symbolic `α`, `β` at unit initial values.
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleArg {
    /// `τ_{c+n} = τ_{c−n}`, `c = (k+1)/2`.
    Palindrome,
    /// `τ_n = (−1)^{n+1} τ_{−n}`.
    FibonacciSign,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
    #[arg(long, value_enum, default_value_t = RuleArg::Palindrome)]
    pub rule: RuleArg,
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long, default_value_t = 24)]
    pub budget: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
    #[arg(long)]
    pub modulus: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformArg {
    Mg,
    Mgs,
    Somos5Abcba,
    SignTwist,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformArgs {
    #[arg(long, value_enum)]
    pub kind: TransformArg,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    /// Numeric parameters; all omitted means symbolic.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdsArgs {
    /// `a_1..a_4`.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "1,1,-1,1"
    )]
    pub init: Vec<String>,
    #[arg(long, default_value_t = -30, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 30, allow_hyphen_values = true)]
    pub to: i64,
    /// `V_k` is checked for `2 ≤ k ≤ k_max`.
    #[arg(long, default_value_t = 8)]
    pub k_max: i64,
    /// Identity families on `1 ≤ n ≤ m ≤ grid`.
    #[arg(long, default_value_t = 14)]
    pub grid: i64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompanionArgs {
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long, default_value_t = 10)]
    pub m_max: i64,
    /// Symbolic `α`, `β`.
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 3)]
    pub rmax: u32,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobinsonArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11")]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub rmax: u32,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolydivArgs {
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "5,6,7"
    )]
    pub n: Vec<i64>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-2,-1,1,2"
    )]
    pub l: Vec<i64>,
    #[arg(long, default_value_t = 24)]
    pub budget: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentArgs {
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 20, allow_hyphen_values = true)]
    pub to: i64,
    #[arg(long, default_value_t = 24)]
    pub budget: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureArgs {
    /// Seed set, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub seed: Vec<i64>,
    /// Number of random seed sets instead of `--seed`.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    #[arg(long, default_value_t = 1)]
    pub rng_seed: u64,
    #[arg(long, default_value_t = -2000, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 2000, allow_hyphen_values = true)]
    pub hi: i64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub n: i64,
    #[arg(long, default_value_t = 1)]
    pub m_max: u32,
    /// Window `1..=to`.
    #[arg(long, default_value_t = 200)]
    pub to: i64,
    #[arg(long, default_value_t = 100_000)]
    pub index_limit: i64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CavachiArgs {
    #[arg(long, value_delimiter = ',', default_value = "4,5,6,7,8,9")]
    pub n: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub m: Vec<u32>,
    /// `m` for the `n = 3` rule `2^{m+2} | f_{3·2^m}`.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
    pub exceptional_m: Vec<u32>,
    #[arg(long, default_value_t = 200_000)]
    pub index_limit: u64,
}

/// A cubic `y² = c₃x³ + c₂x² + c₁x + c₀` and a point on it.
#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveArgs {
    #[arg(long)]
    pub p: u64,
    /// `c₃,c₂,c₁,c₀`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Vec<String>,
    /// Rational or `sqrt:d`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    /// Build over `F_p[√d]`.
    #[arg(long, allow_hyphen_values = true)]
    pub adjoin: Option<String>,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveOrderArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub curve: CurveArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapVsOrderArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchArgs {
    pub config: std::path::PathBuf,
}

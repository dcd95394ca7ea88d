//! Command-line grammar. The manual page is generated from the same definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qmjac::algebra::{parse_rational, Rational};
use qmjac::frobenius::DEFAULT_BUDGET;

/// Environment variable overriding the cache path.
pub const CACHE_ENV: &str = "QMJAC_CACHE";

#[derive(Debug, Parser)]
#[command(name = "qmjac", version, about = "Exact and numerical computations on the Q8-symmetric hyperelliptic family")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Compact JSON output.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Flattened `key,value` CSV output.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Point-count cache (JSON lines).
    #[arg(long, global = true, env = CACHE_ENV, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Largest field size counted directly.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

/// Comma-separated rationals such as `1/2,0,-3`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalList(pub Vec<Rational>);

pub fn rational_list(s: &str) -> Result<RationalList, String> {
    if s.trim().is_empty() {
        return Ok(RationalList(Vec::new()));
    }
    s.split(',').map(|t| parse_rational(t).map_err(|e| e.to_string())).collect::<Result<_, _>>().map(RationalList)
}

/// Comma-separated integers.
#[derive(Debug, Clone, PartialEq)]
pub struct U64List(pub Vec<u64>);

pub fn u64_list(s: &str) -> Result<U64List, String> {
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(|e| format!("'{t}': {e}"))).collect::<Result<_, _>>().map(U64List)
}

/// `p:ω` pairs such as `13:-1,41:1`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaList(pub Vec<(u64, i8)>);

pub fn omega_list(s: &str) -> Result<OmegaList, String> {
    s.split(',')
        .map(|t| {
            let (p, w) = t.split_once(':').ok_or_else(|| format!("'{t}' is not p:omega"))?;
            let p = p.trim().parse::<u64>().map_err(|e| format!("'{p}': {e}"))?;
            match w.trim() {
                "1" | "+1" => Ok((p, 1)),
                "-1" => Ok((p, -1)),
                other => Err(format!("omega must be +1 or -1, got '{other}'")),
            }
        })
        .collect::<Result<_, _>>()
        .map(OmegaList)
}

#[derive(Debug, Clone, Args)]
pub struct FiberArgs {
    /// Genus (even, at least 4).
    #[arg(long, default_value_t = 4)]
    pub g: usize,
    /// Parameters a_1..a_d.
    #[arg(long, value_parser = rational_list, conflicts_with = "b")]
    pub a: Option<RationalList>,
    /// Rational parameters b_1..b_d of the product model.
    #[arg(long, value_parser = rational_list)]
    pub b: Option<RationalList>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnsatzArg {
    Square,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PipelineName {
    ThmEndosG4,
    CorFieldsG4,
    PropG6,
    Lattice,
    Schoen,
    Clusters,
    Periods,
}

impl PipelineName {
    pub fn id(self) -> &'static str {
        match self {
            PipelineName::ThmEndosG4 => "thm-endos-g4",
            PipelineName::CorFieldsG4 => "cor-fields-g4",
            PipelineName::PropG6 => "prop-g6",
            PipelineName::Lattice => "lattice",
            PipelineName::Schoen => "schoen",
            PipelineName::Clusters => "clusters",
            PipelineName::Periods => "periods",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Model, discriminant, symmetry and Weierstrass data of one fiber.
    Family(FiberArgs),
    /// Point counts and the L-polynomial at one prime.
    Frobenius {
        #[command(flatten)]
        fiber: FiberArgs,
        /// Prime of good reduction.
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = AnsatzArg::Square)]
        ansatz: AnsatzArg,
    },
    /// Sign character ω at split primes and the connected monodromy field.
    Monodromy {
        #[command(flatten)]
        fiber: FiberArgs,
        /// Primes p ≡ 1 mod 4 at which ω is computed from point counts.
        #[arg(long, value_parser = u64_list, default_value = "13,41,73")]
        primes: U64List,
        /// Primes of bad reduction.
        #[arg(long, value_parser = u64_list, default_value = "2,3")]
        bad: U64List,
        /// Use these ω values instead of counting points.
        #[arg(long, value_parser = omega_list)]
        omega: Option<OmegaList>,
        /// Two primes whose Frobenius fields are compared for the center certificate.
        #[arg(long, value_parser = u64_list)]
        center: Option<U64List>,
    },
    /// Two-torsion obstruction, homology representations, freeness and the form T.
    Lattice,
    /// Numerical period matrix of a genus-4 fiber.
    Periods {
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        a_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a_im: f64,
        /// Agreement required between successive quadrature refinements.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Number of nearby parameters for the stability check.
        #[arg(long, default_value_t = 0)]
        stability: usize,
        #[arg(long, default_value_t = 0.1)]
        radius: f64,
    },
    /// Cluster pictures and reduction verdicts.
    Clusters {
        /// Genus-4 pullback b = t^K over Q((t)).
        #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["b", "construct_bad"])]
        pullback: Option<i64>,
        /// Rational b_1..b_d, studied at --p.
        #[arg(long, value_parser = rational_list)]
        b: Option<RationalList>,
        /// Odd prime.
        #[arg(long)]
        p: Option<u64>,
        /// Build parameters with bad reduction at --p in genus --g.
        #[arg(long, requires = "p")]
        construct_bad: bool,
        #[arg(long, default_value_t = 6)]
        g: usize,
    },
    /// Randomized and symbolic check of the fourth-power identity.
    SchoenVerify {
        #[arg(long, default_value_t = 4)]
        g: usize,
        /// β_1..β_d.
        #[arg(long, value_parser = rational_list, default_value = "2")]
        beta: RationalList,
        #[arg(long, value_parser = parse_rational_arg)]
        gamma: Option<Rational>,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Also verify the identity as polynomials in e_1..e_{g/2}.
        #[arg(long)]
        symbolic: bool,
    },
    /// End-to-end reproduction with pinned expectations.
    Pipeline {
        #[arg(value_enum)]
        name: PipelineName,
    },
    /// Print the manual page (roff).
    Man,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

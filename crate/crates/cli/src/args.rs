use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perpcalc::{Real, SignedScaled};

#[derive(Parser, Debug)]
#[command(name = "perpcalc", version, about = "Scientific calculation with cascades of perpendiculars")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// Evaluate through geometric constructions or the high-precision oracle.
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Construction)]
    pub backend: BackendArg,
    /// Working precision in significant digits.
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: u32,
    /// Relative tolerance of searches (default 10^(1-digits)).
    #[arg(long, global = true)]
    pub tol: Option<Real>,
    /// Most continued-fraction terms to expand.
    #[arg(long, global = true, default_value_t = 16)]
    pub cf_depth: usize,
    /// Remainder below which the continued fraction stops.
    #[arg(long, global = true, default_value = "1e-12")]
    pub cf_tol: Real,
    /// Graduation of the mechanical device; runs the operation as a device script.
    #[arg(long, global = true)]
    pub resolution: Option<f64>,
    /// Print one JSON object instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the construction trace to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub emit_trace: Option<PathBuf>,
    /// Write an SVG drawing of the construction to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub diagram: Option<PathBuf>,
    /// Significant digits printed.
    #[arg(long, global = true, default_value_t = 5)]
    pub sig: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Construction,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RecipArg {
    Angle,
    UnitPerpendicular,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DivArg {
    Hypotenuse,
    SimilarTriangles,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MeanArg {
    Bisect,
    Rotate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    Compose,
    Split,
}

/// Numbers use the decimal grammar: sign, digits, fraction, exponent.
/// Masses, charges and other quantities are plain magnitudes; units are the caller's.
#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// x^n for a nonzero integer n.
    Pow {
        #[arg(allow_hyphen_values = true)]
        x: SignedScaled,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// The n-th root of x; negative n gives x^(-1/n).
    Root {
        #[arg(allow_hyphen_values = true)]
        x: SignedScaled,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// x^(m/n).
    Powfrac {
        #[arg(allow_hyphen_values = true)]
        x: SignedScaled,
        #[arg(allow_hyphen_values = true)]
        m: i64,
        n: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Compose)]
        strategy: StrategyArg,
    },
    /// 1/x.
    Recip {
        #[arg(allow_hyphen_values = true)]
        x: SignedScaled,
        #[arg(long, value_enum, default_value_t = RecipArg::Angle)]
        method: RecipArg,
    },
    /// a*b.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: SignedScaled,
        #[arg(allow_hyphen_values = true)]
        b: SignedScaled,
    },
    /// a/b.
    Div {
        #[arg(allow_hyphen_values = true)]
        a: SignedScaled,
        #[arg(allow_hyphen_values = true)]
        b: SignedScaled,
        #[arg(long, value_enum, default_value_t = DivArg::Hypotenuse)]
        method: DivArg,
    },
    /// sqrt(a*b) for operands of one sign.
    Gmean {
        #[arg(allow_hyphen_values = true)]
        a: SignedScaled,
        #[arg(allow_hyphen_values = true)]
        b: SignedScaled,
        #[arg(long, value_enum, default_value_t = MeanArg::Bisect)]
        method: MeanArg,
    },
    /// Natural logarithm.
    Ln { a: SignedScaled },
    /// e^n.
    Antilog {
        #[arg(allow_hyphen_values = true)]
        n: Real,
    },
    /// (1 + 1/n)^n with its error bound.
    Euler { n: u64 },
    /// Integer N with x^N = a, or with --root the index N with a^N = x.
    SolveN {
        #[arg(long, allow_hyphen_values = true)]
        x: SignedScaled,
        #[arg(long, allow_hyphen_values = true)]
        a: SignedScaled,
        #[arg(long, default_value_t = 1000)]
        max_n: u64,
        #[arg(long)]
        root: bool,
    },
    /// Continued fraction of the exponent y with x^y = a.
    SolveMn {
        #[arg(long)]
        x: SignedScaled,
        #[arg(long)]
        a: SignedScaled,
        /// Expand ln a and ln x separately and divide.
        #[arg(long)]
        logs: bool,
    },
    /// Run a device script, one operation per line.
    Simulate { script: PathBuf },
    /// Draw a trace written by --emit-trace.
    Diagram {
        trace: PathBuf,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 600)]
        height: u32,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Pow { .. } => "pow",
            Cmd::Root { .. } => "root",
            Cmd::Powfrac { .. } => "powfrac",
            Cmd::Recip { .. } => "recip",
            Cmd::Mul { .. } => "mul",
            Cmd::Div { .. } => "div",
            Cmd::Gmean { .. } => "gmean",
            Cmd::Ln { .. } => "ln",
            Cmd::Antilog { .. } => "antilog",
            Cmd::Euler { .. } => "euler",
            Cmd::SolveN { .. } => "solve-n",
            Cmd::SolveMn { .. } => "solve-mn",
            Cmd::Simulate { .. } => "simulate",
            Cmd::Diagram { .. } => "diagram",
        }
    }

    /// Whether the operation yields a construction trace.
    pub fn traced(&self) -> bool {
        matches!(
            self,
            Cmd::Pow { .. }
                | Cmd::Root { .. }
                | Cmd::Powfrac { .. }
                | Cmd::Recip { .. }
                | Cmd::Mul { .. }
                | Cmd::Div { .. }
                | Cmd::Gmean { .. }
        )
    }
}

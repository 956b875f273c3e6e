use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hodgeloci", version, about = "Exact colon ideals, Hilbert functions and Hodge-class pairings for Fermat hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct Dims {
    /// Even dimension n ≥ 2.
    #[arg(long)]
    pub n: usize,
    /// Degree d ≥ 3.
    #[arg(long)]
    pub d: u32,
}

/// One way of naming a degree-σ class. `z` in literals is ζ_{2d}.
#[derive(Args, Debug, Clone, Default)]
pub struct ClassArgs {
    /// Linear cycle exponents (odd, comma separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<i64>>,
    /// Product-class coefficients, e.g. "z*(3+4i)/5, z".
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Product-class scale (default 1).
    #[arg(long = "c-lambda", allow_hyphen_values = true)]
    pub c_lambda: Option<String>,
    /// Coordinate pairing as a permutation, e.g. 0,2,1,3.
    #[arg(long, value_delimiter = ',')]
    pub pairing: Option<Vec<usize>>,
    /// Polynomial JSON, inline or a file path.
    #[arg(long)]
    pub poly: Option<String>,
    /// Complete-intersection type (e_1,…), building the class from its ideal.
    #[arg(long = "type", value_delimiter = ',')]
    pub ci_type: Option<Vec<usize>>,
    /// Random product class drawn from --seed.
    #[arg(long)]
    pub random: bool,
    /// Seed for --random.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SecondClassArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha2: Option<Vec<i64>>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<String>,
    #[arg(long = "c-lambda2", allow_hyphen_values = true)]
    pub c_lambda2: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub pairing2: Option<Vec<usize>>,
    #[arg(long)]
    pub poly2: Option<String>,
}

impl SecondClassArgs {
    pub fn as_class(&self) -> ClassArgs {
        ClassArgs {
            alpha: self.alpha2.clone(),
            a: self.a2.clone(),
            c_lambda: self.c_lambda2.clone(),
            pairing: self.pairing2.clone(),
            poly: self.poly2.clone(),
            ..ClassArgs::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    /// Colon-ideal generators of the class.
    Colon,
    /// Binomial linear forms x_{2i} − a_i x_{2i+1} with the odd pure powers.
    Linear,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Hilbert profile of the quotient by (J^F : P).
    Hilbert {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        class: ClassArgs,
        /// Also emit the colon slice in this degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Also check pairing ranks against the profile.
        #[arg(long)]
        check_pairing: bool,
    },
    /// Tangent codimension dim R_d and its bound classification.
    Tangent {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        class: ClassArgs,
        /// Also match the leading-term ideal against the templates.
        #[arg(long)]
        shape: bool,
        /// Monomial order: lex, evens-first, or a permutation.
        #[arg(long)]
        order: Option<String>,
    },
    /// Polynomial of a linear cycle.
    LinearCycle {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        pairing: Option<Vec<usize>>,
    },
    /// Socle pairing of two classes.
    Pair {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        other: SecondClassArgs,
    },
    /// Pairs a class against every linear cycle.
    Certify {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        class: ClassArgs,
        /// Include every coordinate pairing.
        #[arg(long)]
        all_pairings: bool,
    },
    /// Recovers the product structure of a class.
    Recover {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Rationality scan of the cross ratios for a coefficient a.
    CrossRatio {
        /// Degree d ≥ 3
        #[arg(long)]
        d: u32,
        /// Coefficient in Q(ζ_2d), e.g. "z^3" or "i*(2-z^4)/(2-z^8)"
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Whether the plane {x_{2i} = a_i x_{2i+1}} (or given forms) lies on F.
    Plane {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// JSON array of linear polynomials, inline or a file path.
        #[arg(long)]
        forms: Option<String>,
    },
    /// Complete intersection ⟨f_i, g_i⟩ with F = Σ f_i g_i of a given type.
    SplitIntersection {
        #[command(flatten)]
        dims: Dims,
        /// Factor degrees e_1,… with 1 ≤ e_i < d, one per variable pair
        #[arg(long = "type", value_delimiter = ',', required = true)]
        ci_type: Vec<usize>,
    },
    /// Member of a unit-circle family for d ∈ {3, 4, 6}.
    Special {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        all_pairings: bool,
    },
    /// Exhaustive check of the divisor-count minima.
    ScanBounds {
        #[command(flatten)]
        dims: Dims,
        /// Maximum number of exponent vectors to enumerate.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Buchberger on colon-ideal generators or a binomial linear system.
    Groebner {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, value_enum, default_value_t = System::Colon)]
        system: System,
        /// Degree cap (default σ+1, or 2(d−1) for the linear system when larger).
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        order: Option<String>,
        /// Skip pairs with coprime leading monomials.
        #[arg(long)]
        product_criterion: bool,
    },
}

/// Prints a clap-style usage error and exits with status 2.
pub fn usage_error(msg: &str) -> ExitCode {
    let err = Cli::command().error(clap::error::ErrorKind::ValueValidation, msg);
    let _ = err.print();
    ExitCode::from(2)
}

//! Command-line surface for the similarity-type and polynomial-type engines.
//!
//! Exit codes: 2 for input parse errors, 1 for engine errors, 0 otherwise.
//! No/Unknown verdicts are answers, not failures, and exit 0. All stdout is
//! byte-identical across runs with the same inputs and seed; timing-bearing
//! exhaustion certificates go to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polycomp::ffpoly::{
    format_element, parse_field, parse_poly, poly_factor, set_default_seed, Field, Poly,
};
use polycomp::matrix::{
    format_matrix, parse_matrix, span_dimension_cd, ElementaryDivisors, InvariantFactors, Matrix,
};
use polycomp::polytype::{
    counterexample_matrix, nilpotent_decide, polytype_decide, NilpotentProfile, PolytypeVerdict,
    Status, DEFAULT_BUDGET,
};
use polycomp::simtype::{eldiv_of_g_a, element_data, simtype_of_g_cf};

#[derive(Parser)]
#[command(
    name = "polycomp",
    about = "Exact similarity types of polynomials in companion matrices over finite fields",
    disable_help_subcommand = true
)]
struct Cli {
    /// Seed for the randomized splitting steps of polynomial factorization
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Elementary divisors of g(C_f), computed rationally from f and g
    Simtype {
        /// Field spec, e.g. GF(2) or GF(2^3)
        #[arg(long)]
        field: String,
        /// Monic modulus f
        #[arg(long)]
        f: String,
        /// Evaluated polynomial g
        #[arg(long)]
        g: String,
    },
    /// Elementary divisors of g(A) for A given by its invariant factors
    Eldiv {
        #[arg(long)]
        field: String,
        /// Comma-separated divisibility chain q1,q2,... with q1 | q2 | ...
        #[arg(long)]
        invariants: String,
        #[arg(long)]
        g: String,
    },
    /// Decide whether the matrix in FILE is similar to a polynomial in a
    /// companion matrix; Yes prints a verified witness
    Polytype {
        /// Matrix file in the text format emitted by `counterexample`
        #[arg(long)]
        matrix: PathBuf,
        /// Pair budget for the exhaustive fallback (default 2^24)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Emit the (q+3)x(q+3) matrix over the given field that is not
    /// similar to any polynomial in a companion matrix
    Counterexample {
        #[arg(long)]
        field: String,
    },
    /// Decide the question for a nilpotent matrix given by its block
    /// profile, via the diophantine criterion
    Nilpotent {
        #[arg(long)]
        field: String,
        /// Jordan block sizes, e.g. 1,3,5
        #[arg(long)]
        profile: String,
    },
    /// Factor a polynomial into monic irreducibles
    Factor {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poly: String,
    },
    /// Dimension of the span of products C_f^i (g(C_f))^j, with the
    /// closed-form prediction n + (n - deg gcd(f,g))(n - 1)
    Span {
        #[arg(long)]
        field: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Data about the algebraic element g(a) for a root a of irreducible f
    Element {
        #[arg(long)]
        field: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
}

enum CliError {
    /// Malformed input (field/polynomial/matrix/profile syntax or validity)
    Parse(String),
    /// The engine rejected a structurally valid input
    Engine(String),
}

fn parse_err(e: polycomp::Error) -> CliError {
    CliError::Parse(e.to_string())
}

fn engine_err(e: polycomp::Error) -> CliError {
    CliError::Engine(e.to_string())
}

fn field_of(spec: &str) -> Result<Field, CliError> {
    parse_field(spec).map_err(parse_err)
}

fn poly_of(field: &Field, s: &str) -> Result<Poly, CliError> {
    parse_poly(field, s).map_err(parse_err)
}

/// Canonical polynomial order, exponents descending, e.g.
/// "(X+1)^2, (X+1), (X+1)".
fn show_divisors(ed: &ElementaryDivisors) -> String {
    let mut parts = Vec::new();
    for (p, exps) in &ed.parts {
        for &e in exps.iter().rev() {
            if e == 1 {
                parts.push(format!("({})", p));
            } else {
                parts.push(format!("({})^{}", p, e));
            }
        }
    }
    parts.join(", ")
}

/// Verdict line plus, for exhaustive No/Unknown, the certificate on stderr.
fn show_verdict(v: &PolytypeVerdict, field: &Field, n: usize) -> String {
    if let Some(stats) = &v.stats {
        eprint!("{}", stats.certificate(field, n));
    }
    match v.status {
        Status::Yes => {
            let (f, g) = v.witness.as_ref().expect("Yes carries a witness");
            format!("Yes f={} g={} strategy={}", f, g, v.strategy)
        }
        Status::No => match &v.stats {
            Some(stats) => format!("No (exhausted {} pairs)", stats.pairs),
            None => "No".to_string(),
        },
        Status::Unknown => {
            let stats = v.stats.as_ref().expect("Unknown carries stats");
            format!(
                "Unknown (budget {} exhausted after {} pairs)",
                stats.budget, stats.pairs
            )
        }
    }
}

fn show_matrix_rows(m: &Matrix) -> String {
    let field = m.field();
    (0..m.size())
        .map(|i| {
            (0..m.size())
                .map(|j| format_element(field, m.at(i, j)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(seed) = cli.seed {
        set_default_seed(seed);
    }
    match cli.command {
        Command::Simtype { field, f, g } => {
            let field = field_of(&field)?;
            let f = poly_of(&field, &f)?;
            let g = poly_of(&field, &g)?;
            let analysis = simtype_of_g_cf(&f, &g).map_err(engine_err)?;
            Ok(show_divisors(&analysis.divisors))
        }
        Command::Eldiv {
            field,
            invariants,
            g,
        } => {
            let field = field_of(&field)?;
            let chain = invariants
                .split(',')
                .map(|s| poly_of(&field, s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let invs = InvariantFactors::new(chain).map_err(parse_err)?;
            let g = poly_of(&field, &g)?;
            let ed = eldiv_of_g_a(&invs, &g).map_err(engine_err)?;
            Ok(show_divisors(&ed))
        }
        Command::Polytype { matrix, budget } => {
            let text = std::fs::read_to_string(&matrix)
                .map_err(|e| CliError::Parse(format!("{}: {}", matrix.display(), e)))?;
            let a = parse_matrix(&text).map_err(parse_err)?;
            let v = polytype_decide(&a, budget.unwrap_or(DEFAULT_BUDGET));
            Ok(show_verdict(&v, a.field(), a.size()))
        }
        Command::Counterexample { field } => {
            let field = field_of(&field)?;
            // format_matrix ends with a newline of its own
            Ok(format_matrix(&counterexample_matrix(&field))
                .trim_end()
                .to_string())
        }
        Command::Nilpotent { field, profile } => {
            let field = field_of(&field)?;
            let profile = NilpotentProfile::parse(&profile).map_err(parse_err)?;
            let v = nilpotent_decide(&profile, &field);
            Ok(show_verdict(&v, &field, profile.n()))
        }
        Command::Factor { field, poly } => {
            let field = field_of(&field)?;
            let p = poly_of(&field, &poly)?;
            let fact = poly_factor(&p).map_err(engine_err)?;
            let mut parts = Vec::new();
            if fact.unit != field.one() || fact.factors.is_empty() {
                parts.push(format_element(&field, fact.unit));
            }
            for (r, e) in &fact.factors {
                if *e == 1 {
                    parts.push(format!("({})", r));
                } else {
                    parts.push(format!("({})^{}", r, e));
                }
            }
            Ok(parts.join(" "))
        }
        Command::Span { field, f, g } => {
            let field = field_of(&field)?;
            let f = poly_of(&field, &f)?;
            let g = poly_of(&field, &g)?;
            let dim = span_dimension_cd(&f, &g).map_err(engine_err)?;
            let n = f.degree();
            let m = f.gcd(&g).map_err(engine_err)?.degree();
            Ok(format!("dim={} predicted={}", dim, n + (n - m) * (n - 1)))
        }
        Command::Element { field, f, g } => {
            let field = field_of(&field)?;
            let f = poly_of(&field, &f)?;
            let g = poly_of(&field, &g)?;
            let data = element_data(&f, &g).map_err(engine_err)?;
            let inverse = match &data.inverse {
                Some(u) => u.to_string(),
                None => "none".to_string(),
            };
            Ok(format!(
                "minpoly={}\ntrace={}\nnorm={}\ninverse={}\nrep:\n{}",
                data.minpoly,
                format_element(&field, data.trace),
                format_element(&field, data.norm),
                inverse,
                show_matrix_rows(&data.rep)
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            println!("{}", report);
            ExitCode::SUCCESS
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Engine(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
    }
}

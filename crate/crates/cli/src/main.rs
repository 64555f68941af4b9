mod checks;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mzv_core::associator::{phi, BranchSign};
use mzv_core::hurwitz::hurwitz_zeta;
use mzv_core::mellin_sum::{mellin_li_series, mellin_word};
use mzv_core::mzv::MzvEvaluator;
use mzv_core::polylog::PolylogEvaluator;
use mzv_core::regularize::reg;
use mzv_core::words::{shuffle, tau};
use mzv_core::{ApproxValue, Complex64, Error, EvalConfig, Letter, MultiIndex, NCPoly, Word};

use crate::checks::Context;
use crate::report::{render_records, render_table, Format, Record};

#[derive(Parser)]
#[command(name = "mzv", version, about = "Multiple zeta values, polylogarithms and their connection formulas")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Weight or truncation order
    #[arg(long, global = true, env = "MZV_WEIGHT", default_value_t = 6)]
    weight: usize,
    /// Pass threshold for verify checks (each check has its own default)
    #[arg(long, global = true, env = "MZV_TOL")]
    tol: Option<f64>,
    /// Evaluation point, e.g. 0.3 or 0.2+0.1i
    #[arg(long, global = true, env = "MZV_Z", default_value = "0.3", value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex64,
    /// Term budget for series evaluations
    #[arg(long, global = true, env = "MZV_TERMS", default_value_t = 100_000)]
    terms: usize,
    #[arg(long, global = true, env = "MZV_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Branch sign for the hexagon and Landen series checks
    #[arg(long, global = true, env = "MZV_BRANCH", value_parser = parse_branch, allow_hyphen_values = true)]
    branch: Option<BranchSign>,
}

#[derive(Subcommand)]
enum Command {
    /// Shuffle product of two polynomials in x, y
    Shuffle { left: String, right: String },
    /// Shuffle regularization
    Reg { poly: String },
    /// Duality involution (reverse and swap letters)
    Tau { poly: String },
    /// Regularized MZV of an index like 2,1 or of a polynomial in x, y
    Zeta { input: String },
    /// S(n, r), the sum of all MZVs of weight n and depth r
    Sum { n: usize, r: usize },
    /// Multiple polylogarithm at --z of an index or polynomial
    Li { input: String },
    /// Coefficients of the Drinfeld associator up to --weight
    Phi {
        /// Omit coefficients below this modulus
        #[arg(long, default_value_t = 1e-15)]
        threshold: f64,
    },
    /// sum_n 1/(n^k (n - lambda)), the Mellin transform of Li_k with kernel z^(-lambda-1)
    Mellin {
        k: u32,
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Complex64,
        /// Also integrate numerically
        #[arg(long)]
        quadrature: bool,
    },
    /// Hurwitz zeta(s, z) for Re s > -2
    Hurwitz {
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
        #[arg(value_name = "Z")]
        point: f64,
    },
    /// Numerical verification of the connection formulas
    Verify {
        #[command(subcommand)]
        check: Verify,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum Verify {
    Duality,
    Hexagon,
    Euler,
    Landen,
    LandenLemma,
    Sumformula,
    Heart,
    Mellin,
    C10,
    Goreg,
    Kummer,
    Em2 {
        /// Largest |l| kept in the sum
        #[arg(long, default_value_t = 200)]
        lmax: usize,
    },
    Hurwitz,
    All,
}

impl Verify {
    fn name(self) -> &'static str {
        match self {
            Verify::Duality => "duality",
            Verify::Hexagon => "hexagon",
            Verify::Euler => "euler",
            Verify::Landen => "landen",
            Verify::LandenLemma => "landen-lemma",
            Verify::Sumformula => "sumformula",
            Verify::Heart => "heart",
            Verify::Mellin => "mellin",
            Verify::C10 => "c10",
            Verify::Goreg => "goreg",
            Verify::Kummer => "kummer",
            Verify::Em2 { .. } => "em2",
            Verify::Hurwitz => "hurwitz",
            Verify::All => "all",
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|e| format!("{s:?} is not a number: {e}"))
}

fn parse_branch(s: &str) -> Result<BranchSign, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_poly(s: &str) -> Result<NCPoly, Failure> {
    Ok(s.parse::<NCPoly>()?)
}

/// An index such as `2,1` or a polynomial in `x`, `y`.
fn parse_input(s: &str) -> Result<NCPoly, Failure> {
    if s.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) {
        let k: MultiIndex = s.parse()?;
        Ok(NCPoly::from(k.to_word()))
    } else {
        parse_poly(s)
    }
}

fn value_row(v: &ApproxValue) -> Vec<String> {
    vec![
        format!("{:.15e}", v.value.re),
        format!("{:.15e}", v.value.im),
        format!("{:.3e}", v.err),
    ]
}

fn print_value(v: &ApproxValue, format: Format) {
    match format {
        Format::Text => println!("{v}"),
        Format::Csv => print!("{}", render_table(&["re", "im", "err"], &[value_row(v)], format)),
    }
}

fn print_poly(p: &NCPoly, format: Format) {
    match format {
        Format::Text => println!("{p}"),
        Format::Csv => {
            let rows: Vec<Vec<String>> = p.terms().map(|(w, c)| vec![w.to_string(), c.to_string()]).collect();
            print!("{}", render_table(&["word", "coeff"], &rows, format));
        }
    }
}

fn run_checks(names: &[&'static str], ctx: &Context) -> Result<Vec<Record>, Failure> {
    let results: Vec<(&'static str, mzv_core::Result<Vec<Record>>)> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| {
                let f = checks::lookup(name).expect("known check");
                (name, s.spawn(move || f(ctx)))
            })
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| (name, h.join().expect("check panicked")))
            .collect()
    });
    let mut records = Vec::new();
    for (name, r) in results {
        match r {
            Ok(rs) => records.extend(rs),
            Err(e) if names.len() == 1 && checks::is_input_error(&e) => {
                return Err(Failure::Usage(e.to_string()));
            }
            Err(e) => records.push(Record::failed(name, e.to_string())),
        }
    }
    Ok(records)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let cfg = EvalConfig::new(EvalConfig::default().tol, g.terms)?;
    match &cli.command {
        Command::Shuffle { left, right } => print_poly(&shuffle(&parse_poly(left)?, &parse_poly(right)?), g.format),
        Command::Reg { poly } => print_poly(&reg(&parse_poly(poly)?), g.format),
        Command::Tau { poly } => print_poly(&tau(&parse_poly(poly)?), g.format),
        Command::Zeta { input } => {
            let v = MzvEvaluator::shared(cfg).zeta_poly(&parse_input(input)?)?;
            print_value(&v, g.format);
        }
        Command::Sum { n, r } => print_value(&MzvEvaluator::shared(cfg).sum_weight_depth(*n, *r)?, g.format),
        Command::Li { input } => {
            let ev = PolylogEvaluator::new(g.z, cfg)?;
            print_value(&ev.li_poly(&parse_input(input)?)?, g.format);
        }
        Command::Phi { threshold } => {
            let p = phi(g.weight, &cfg)?;
            let rows: Vec<Vec<String>> = p
                .terms()
                .filter(|(_, c)| c.norm() > *threshold)
                .map(|(w, c)| vec![w.to_upper_string(), format!("{:.15e}", c.re), format!("{:.15e}", c.im)])
                .collect();
            print!("{}", render_table(&["word", "re", "im"], &rows, g.format));
        }
        Command::Mellin { k, lambda, quadrature } => {
            let v = mellin_li_series(*k, *lambda)?;
            if *quadrature {
                let w = Word::power(Letter::X, *k as usize - 1).pushed(Letter::Y);
                let q = mellin_word(w, -*lambda, &cfg)?;
                let mut row = value_row(&v);
                row.extend(value_row(&q));
                let header = ["re", "im", "err", "quad_re", "quad_im", "quad_err"];
                print!("{}", render_table(&header, &[row], g.format));
            } else {
                print_value(&v, g.format);
            }
        }
        Command::Hurwitz { s, point } => print_value(&hurwitz_zeta(*s, *point, &cfg)?, g.format),
        Command::Verify { check } => {
            let ctx = Context {
                weight: g.weight,
                tol: g.tol,
                z: g.z,
                cfg,
                branch: g.branch,
                lmax: match check {
                    Verify::Em2 { lmax } => *lmax,
                    _ => 200,
                },
            };
            let names: Vec<&'static str> = match check {
                Verify::All => checks::ALL.iter().map(|(n, _)| *n).collect(),
                other => vec![other.name()],
            };
            let records = run_checks(&names, &ctx)?;
            print!("{}", render_records(&records, g.format));
            if records.iter().any(|r| !r.pass) {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

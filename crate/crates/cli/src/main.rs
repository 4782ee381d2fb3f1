//! `morava` — exact computations in Brown-Peterson type cohomology
//! theories and algebraic Morava K-theories.
//!
//! Output is deterministic: the same invocation always produces the same
//! bytes. Exit codes: 0 success, 1 a check found a difference, 2 usage
//! error, 3 computation or input error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use morava_core::ahss::{apply_differential, e2_page, run_to_collapse, Window};
use morava_core::coeff::{
    parse_ideal_token, parse_poly, parse_presentation, print_presentation, Ring, Theory,
};
use morava_core::fgl::{p_series, vn_torsion_check, BzpRing, FglKind, TruncatedSeries};
use morava_core::palg::parse_algebra;
use morava_core::theories::examples::{example, run_example, EXAMPLE_NAMES};
use morava_core::theories::{omega_quotient, tower_step};

#[derive(Parser)]
#[command(
    name = "morava",
    about = "Exact p-series, spectral sequences and Morava-K-theory quotients",
    long_about = "Exact symbolic computation in the coefficient rings BP*, P(n)*, k(n)*, \
                  K(n)* and BP<n>*: p-series of formal group laws, one-generator quotient \
                  rings, Atiyah-Hirzebruch style spectral sequences over the height \
                  theories, quotient oriented theories on module presentations, and the \
                  curated example suite.\n\nDefaults: p = 2, window = 40. All arithmetic \
                  is exact; output is deterministic.",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the p-series of a formal group law
    Pseries(PseriesArgs),
    /// Inspect a one-generator quotient ring of the cyclic-group type
    Ring(RingArgs),
    /// Run the spectral sequence on a presented algebra file
    Ahss(AhssArgs),
    /// Reduce a module presentation by an invariant ideal
    Quotient(QuotientArgs),
    /// Base-change a module presentation to another theory
    Tensor(TensorArgs),
    /// Walk a presentation up the connective tower
    Tower(TowerArgs),
    /// Print the iterated-adjoint table of the Pontryagin ring
    Adjoint(AdjointArgs),
    /// Run a curated example and diff against its expected outputs
    Check(CheckArgs),
    /// List the curated examples
    Examples,
}

#[derive(Args)]
struct PseriesArgs {
    /// the prime (default 2)
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// maximal y-exponent retained (default p^3)
    #[arg(long)]
    bound: Option<u32>,
    /// theory tag, full (`P(1)@p=2`) or short (`P1`); default `BP`
    #[arg(long, default_value = "BP")]
    theory: String,
    /// use the height-n Honda form instead of the p-typical series
    #[arg(long)]
    honda: Option<u32>,
}

#[derive(Args)]
struct RingArgs {
    /// the prime (default 2)
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// theory tag, e.g. `K1`, `P(2)@p=3`
    #[arg(long)]
    theory: String,
    /// maximal y-exponent retained (default p^3)
    #[arg(long)]
    bound: Option<u32>,
    /// a polynomial in y to normalize, e.g. `2*y` or `v1*y^2 + y^4`
    #[arg(long)]
    reduce: Option<String>,
}

#[derive(Args)]
struct AhssArgs {
    /// presented-algebra file
    #[arg(long = "in", value_name = "FILE")]
    input: std::path::PathBuf,
    /// height theory to run over, e.g. `P1` or `P(1)@p=2`
    #[arg(long)]
    theory: String,
    /// comma-separated ascending rule indices, e.g. `1,2`; default: the
    /// theory's own height
    #[arg(long)]
    rules: Option<String>,
    /// first-degree window (default 40)
    #[arg(long, default_value_t = 40)]
    window: i64,
    /// coefficient depth (default: window)
    #[arg(long)]
    depth: Option<i64>,
    /// extra t-powers enumerated (default window/8)
    #[arg(long)]
    tau: Option<i64>,
    /// accept the answer even when the collapse cannot be certified
    #[arg(long)]
    force: bool,
    /// dump every page, slice by slice
    #[arg(long)]
    pages: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OutputFormat {
    /// the documented machine-readable text format (re-parses to an equal value)
    Structured,
    /// the structured format preceded by a one-line human-readable summary
    Plain,
}

#[derive(Args)]
struct QuotientArgs {
    /// presentation file
    #[arg(long = "in", value_name = "FILE")]
    input: std::path::PathBuf,
    /// ideal token: `I2`, `Iinf`, `J3`, or a comma list of polynomials
    #[arg(long)]
    ideal: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Structured)]
    format: OutputFormat,
}

#[derive(Args)]
struct TensorArgs {
    /// presentation file
    #[arg(long = "in", value_name = "FILE")]
    input: std::path::PathBuf,
    /// target theory, e.g. `K1` (prime taken from the presentation)
    #[arg(long)]
    theory: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Structured)]
    format: OutputFormat,
}

#[derive(Args)]
struct TowerArgs {
    /// presentation file
    #[arg(long = "in", value_name = "FILE")]
    input: std::path::PathBuf,
    /// starting height; must match the presentation's theory
    #[arg(long)]
    from: u32,
    /// final height
    #[arg(long)]
    to: u32,
}

#[derive(Args)]
struct AdjointArgs {
    /// the prime (default 3)
    #[arg(long, default_value_t = 3)]
    p: u32,
    /// how many adjoint iterations to print (default 8)
    #[arg(long, default_value_t = 8)]
    iterations: u32,
}

#[derive(Args)]
struct CheckArgs {
    /// example name, or `all`
    #[arg(long)]
    example: String,
    /// window for the underlying runs (default: per-example)
    #[arg(long)]
    window: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}

fn parse_theory(spec: &str, p: u32) -> Result<Theory, String> {
    let t = if spec.contains('@') {
        Theory::parse(spec)
    } else {
        Theory::parse_short(spec, p)
    };
    t.map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Pseries(args) => {
            let theory = parse_theory(&args.theory, args.p)?;
            let bound = args.bound.unwrap_or_else(|| theory.prime().pow(3));
            let kind = match args.honda {
                Some(n) => FglKind::Honda(n),
                None => FglKind::PTypicalModISq,
            };
            let s = p_series(theory, kind, bound).map_err(|e| e.to_string())?;
            println!("{}", s);
            Ok(ExitCode::SUCCESS)
        }
        Command::Ring(args) => {
            let theory = parse_theory(&args.theory, args.p)?;
            let bound = args.bound.unwrap_or_else(|| theory.prime().pow(3));
            let ring = BzpRing::new(theory, bound).map_err(|e| e.to_string())?;
            println!("theory {}", theory);
            println!("relation {}", ring.relation());
            if let Some(rank) = ring.free_rank() {
                println!("free module of rank {} with basis 1..y^{}", rank, rank - 1);
            }
            if theory.kind() == morava_core::coeff::TheoryKind::P {
                println!(
                    "v{}-multiplication injective: {}",
                    theory.height(),
                    vn_torsion_check(&ring)
                );
            }
            if let Some(expr) = args.reduce {
                let poly = parse_y_poly(&ring, &expr)?;
                println!("normal form {}", ring.normal_form(&poly));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ahss(args) => {
            let text = std::fs::read_to_string(&args.input)
                .map_err(|e| format!("{}: {}", args.input.display(), e))?;
            let algebra = parse_algebra(&text).map_err(|e| e.to_string())?;
            let theory = parse_theory(&args.theory, algebra.prime())?;
            let rules: Vec<u32> = match args.rules {
                Some(r) => r
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse()
                            .map_err(|_| format!("bad rule index `{}`", x))
                    })
                    .collect::<Result<_, _>>()?,
                None => vec![theory.height()],
            };
            let window = Window::new(
                args.window,
                args.depth.unwrap_or(args.window),
                args.tau.unwrap_or(args.window / 8),
            );
            if args.pages {
                let mut page = e2_page(&algebra, theory, window).map_err(|e| e.to_string())?;
                dump_page(&page, "E_2");
                for &s in &rules {
                    page = apply_differential(&page, &algebra, s).map_err(|e| e.to_string())?;
                    dump_page(&page, &format!("after v{} (x) Q{}", s, s));
                }
            }
            let report = run_to_collapse(&algebra, theory, &rules, window, args.force)
                .map_err(|e| e.to_string())?;
            println!(
                "# E_infinity after rules {:?}; collapse {}",
                report.rules_applied,
                if report.collapse_certified {
                    "certified"
                } else {
                    "forced"
                }
            );
            print!("{}", print_presentation(&report.presentation));
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient(args) => {
            let text = std::fs::read_to_string(&args.input)
                .map_err(|e| format!("{}: {}", args.input.display(), e))?;
            let pres = parse_presentation(&text).map_err(|e| e.to_string())?;
            let ideal = parse_ideal_token(&args.ideal, pres.theory).map_err(|e| e.to_string())?;
            let out = omega_quotient(&pres, &ideal).map_err(|e| e.to_string())?;
            if args.format == OutputFormat::Plain {
                println!("# {}", out.pretty());
            }
            print!("{}", print_presentation(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tensor(args) => {
            let text = std::fs::read_to_string(&args.input)
                .map_err(|e| format!("{}: {}", args.input.display(), e))?;
            let pres = parse_presentation(&text).map_err(|e| e.to_string())?;
            let target = parse_theory(&args.theory, pres.theory.prime())?;
            let out = morava_core::coeff::base_change(&pres, target).map_err(|e| e.to_string())?;
            if args.format == OutputFormat::Plain {
                println!("# {}", out.pretty());
            }
            print!("{}", print_presentation(&out));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tower(args) => {
            let text = std::fs::read_to_string(&args.input)
                .map_err(|e| format!("{}: {}", args.input.display(), e))?;
            let mut pres = parse_presentation(&text).map_err(|e| e.to_string())?;
            if pres.theory.height() != args.from {
                return Err(format!(
                    "presentation lives at height {}, not {}",
                    pres.theory.height(),
                    args.from
                ));
            }
            while pres.theory.height() < args.to {
                pres = tower_step(&pres, &BTreeMap::new()).map_err(|e| e.to_string())?;
                println!("# height {}", pres.theory.height());
                print!("{}", print_presentation(&pres));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Adjoint(args) => {
            let (lines, ok) = morava_core::adjoint::nonnilpotency_witness(args.p, args.iterations);
            for l in &lines {
                println!("ad^{}(y)(z0) = {}", l.iterations, l.value);
            }
            println!("# every iterate nonzero: {}", if ok { "yes" } else { "NO" });
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Check(args) => {
            let names: Vec<&str> = if args.example == "all" {
                EXAMPLE_NAMES.to_vec()
            } else {
                vec![args.example.as_str()]
            };
            let mut all_pass = true;
            for name in names {
                let rec = example(name).ok_or_else(|| format!("unknown example `{}`", name))?;
                let window = args.window.unwrap_or(rec.default_window);
                let report = run_example(name, window).expect("record exists");
                println!("example {} ({})", rec.name, rec.summary);
                for l in &report.lines {
                    println!(
                        "  {} {}: {}",
                        if l.pass { "ok  " } else { "FAIL" },
                        l.name,
                        l.detail
                    );
                    all_pass &= l.pass;
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Examples => {
            for name in EXAMPLE_NAMES {
                let rec = example(name).expect("static record");
                println!("{:<10} {}", rec.name, rec.summary);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Parse `2*y + v1*y^2` style input into a truncated series over the ring.
fn parse_y_poly(qring: &BzpRing, input: &str) -> Result<TruncatedSeries, String> {
    let ring: &Ring = qring.ring();
    let mut out = qring.poly();
    for term in split_terms(input) {
        // split off the y-power
        let (coeff_str, exp) = match term.find('y') {
            None => (term.trim().to_string(), 0u32),
            Some(pos) => {
                let (c, y) = term.split_at(pos);
                let exp = match y.strip_prefix("y^") {
                    Some(e) => e
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| format!("bad exponent in `{}`", term))?,
                    None => 1,
                };
                let c = c.trim().trim_end_matches('*').trim();
                (
                    if c.is_empty() || c == "+" {
                        "1".to_string()
                    } else if c == "-" {
                        "-1".to_string()
                    } else {
                        c.to_string()
                    },
                    exp,
                )
            }
        };
        let coeff = parse_poly(ring, &coeff_str).map_err(|e| e.to_string())?;
        out = out.add(ring, &qring.monomial(coeff, exp));
    }
    Ok(out)
}

fn split_terms(input: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut prev: Option<char> = None;
    for ch in input.chars() {
        let in_number = matches!(prev, Some('^') | Some('*') | Some('/'));
        if (ch == '+' || ch == '-') && !in_number && !current.trim().is_empty() {
            out.push(current.trim().to_string());
            current = String::new();
            if ch == '-' {
                current.push('-');
            }
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

fn dump_page(page: &morava_core::ahss::Page, title: &str) {
    println!("# page {} ({})", page.round, title);
    for key in page.slices.keys() {
        let names = page.slice_survivor_names(key);
        if names.is_empty() {
            continue;
        }
        println!("({},{},{}): {}", key.m, key.mp, key.c, names.join(", "));
    }
}

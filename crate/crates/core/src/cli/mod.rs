//! Command-line front end: argument definitions, input validation and the
//! four subcommands.

mod parse;

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::newton::{critical_segments, SlopeFilter};
use crate::ratfunc::PolyX;
use crate::reduction::{analyze, render_report, with_precision_ladder, Config, DEFAULT_MAX_PRECISION, DEFAULT_PRECISION};
use crate::respoly::{build_residue_poly, mult_profile};

pub use parse::parse_poly;

#[derive(Debug, Parser)]
#[command(name = "hypercert", version, about = "Finiteness certificates for hyperelliptic function fields over F_p((s))")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full reduction and print the certificate.
    Analyze(AnalyzeArgs),
    /// Print the segments of the Newton hull.
    Hull(InputArgs),
    /// Print the residue polynomial of every hull segment.
    Respoly(InputArgs),
    /// Factor the residue polynomial of every hull segment.
    Factor(InputArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Residue characteristic.
    #[arg(short = 'p', long = "prime")]
    pub p: u64,
    /// Polynomial in x with coefficients in F_p(s), e.g. "x^3 + x + (2+s)".
    #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
    pub f: String,
    /// Relative precision of the first attempt, in digits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
    /// Largest precision tried before giving up.
    #[arg(long, default_value_t = DEFAULT_MAX_PRECISION)]
    pub max_precision: usize,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Write the JSON certificate here (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Checks the standing assumptions on `f`: degree at least two, residue
/// characteristic above the degree, and `gcd(f, f')` a unit over `F_p(s)`.
pub fn validate(f: &PolyX, p: u64) -> Result<()> {
    let deg = f.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::DegreeTooSmall(deg));
    }
    if p <= deg as u64 {
        return Err(Error::CharTooSmall { p, deg });
    }
    if f.gcd(&f.derivative())?.degree() != Some(0) {
        return Err(Error::NotSquareFree);
    }
    Ok(())
}

fn load(args: &InputArgs) -> Result<(PolyX, Config)> {
    let f = parse_poly(&args.f, args.p)?;
    validate(&f, args.p)?;
    Ok((f, Config { precision: args.precision, max_precision: args.max_precision }))
}

fn per_segment<F>(args: &InputArgs, line: F) -> Result<String>
where
    F: Fn(&mut String, &crate::newton::SData, &crate::localfield::LocalPolynomial) -> Result<()>,
{
    let (f, config) = load(args)?;
    with_precision_ladder(args.p, &config, |field| {
        let g = f.to_local(field)?;
        let mut out = String::new();
        for sd in critical_segments(&g, SlopeFilter::All)? {
            line(&mut out, &sd, &g)?;
        }
        Ok(out)
    })
}

/// Executes a parsed command line and returns what goes to standard output.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Analyze(a) => {
            let (f, config) = load(&a.input)?;
            let cert = analyze(a.input.p, |k| f.to_local(k), &config)?;
            let mut out = render_report(&cert);
            match &a.json {
                Some(path) if path.as_os_str() == "-" => {
                    out.push_str(&cert.to_json());
                    out.push('\n');
                }
                Some(path) => std::fs::write(path, cert.to_json() + "\n").map_err(|e| Error::Io(e.to_string()))?,
                None => {}
            }
            Ok(out)
        }
        Command::Hull(a) => per_segment(a, |out, sd, _| {
            let _ = writeln!(
                out,
                "S = {:?}, mu = {}/{}, e_S = {}, c_S = PI^{}, d = {}",
                sd.s,
                sd.mu.numer(),
                sd.mu.denom(),
                sd.e_s,
                sd.c_exp,
                sd.d
            );
            Ok(())
        }),
        Command::Respoly(a) => per_segment(a, |out, sd, g| {
            let rp = build_residue_poly(g, sd)?;
            let n: Vec<usize> = rp.exponents.iter().map(|&(_, n)| n).collect();
            let _ = writeln!(out, "S = {:?}: {} (exponents {:?})", sd.s, rp.poly, n);
            Ok(())
        }),
        Command::Factor(a) => per_segment(a, |out, sd, g| {
            let rp = build_residue_poly(g, sd)?;
            let (max, factors) = mult_profile(&rp);
            let fs: Vec<String> = factors.iter().map(|(q, m)| format!("({q})^{m}")).collect();
            let _ = writeln!(out, "S = {:?}: {} = {}; max multiplicity {}", sd.s, rp.poly, fs.join(" * "), max);
            Ok(())
        }),
    }
}

//! Command-line front end: argument handling and text rendering.
//!
//! [`run`] never prints; it returns the exit code and both output streams
//! so the binary and the tests share one code path.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use num_traits::{Signed, Zero};
use solset::algclass::{annihilator_verify, classify, enumerate_algebraic, AlgebraicityCertificate, AnnihilatorCheck};
use solset::interval::DyadicInterval;
use solset::parse::{parse_domain, parse_equation, parse_expression, render_expr, render_json, render_rational, ParseError};
use solset::poly::{sturm_isolate, UniPoly};
use solset::solver::{check_candidate, CertifiedRoot, SolutionRep, SolutionSet, SolveConfig, SolveReport, Verification};
use solset::{solve, Domain, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_FLAGS: i32 = 3;

const DISPLAY_DIGITS: i64 = 10;

#[derive(Debug, Parser)]
#[command(name = "solset", version, about = "Solve single-variable real equations with certified answers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an equation such as "sqrt(x)+sqrt(2*x+1) = 3".
    Solve {
        equation: String,
        /// Domain such as "[0,inf)" or "(-inf,-1] U [1,2]".
        #[arg(long)]
        domain: Option<String>,
        /// Bits of the reported enclosures.
        #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(16..=8192))]
        precision: u32,
        /// Print every rewriting step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classify an expression as algebraic or transcendental.
    Classify {
        expression: String,
        #[arg(long)]
        domain: Option<String>,
    },
    /// Isolate the real roots of a polynomial.
    Isolate {
        polynomial: String,
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(16..=8192))]
        precision: u32,
    },
    /// List real algebraic numbers in enumeration order.
    EnumerateAlgebraic {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=10000))]
        count: u32,
    },
    /// Check whether a constant solves an equation.
    Check {
        equation: String,
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        domain: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome { code, stdout: String::new(), stderr }
    }
}

/// A parse failure in one named argument.
fn syntax(what: &str, text: &str, e: &ParseError) -> Outcome {
    Outcome::fail(EXIT_SYNTAX, format!("error: cannot parse {what}\n{}\n", e.pretty(text)))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(EXIT_FLAGS, text),
            };
        }
    };
    match cli.command {
        Command::Solve { equation, domain, precision, trace, json } => {
            cmd_solve(&equation, domain.as_deref(), precision, trace, json)
        }
        Command::Classify { expression, domain } => cmd_classify(&expression, domain.as_deref()),
        Command::Isolate { polynomial, precision } => cmd_isolate(&polynomial, precision),
        Command::EnumerateAlgebraic { count } => cmd_enumerate(count as usize),
        Command::Check { equation, candidate, domain } => cmd_check(&equation, &candidate, domain.as_deref()),
    }
}

fn read_equation(text: &str, domain: Option<&str>) -> Result<solset::Equation, Outcome> {
    if let Some(d) = domain {
        parse_domain(d).map_err(|e| syntax("domain", d, &e))?;
    }
    parse_equation(text, domain).map_err(|e| syntax("equation", text, &e))
}

fn cmd_solve(text: &str, domain: Option<&str>, precision: u32, trace: bool, json: bool) -> Outcome {
    let eq = match read_equation(text, domain) {
        Ok(eq) => eq,
        Err(o) => return o,
    };
    let report = solve(&eq, &SolveConfig::default().with_precision(precision));
    if json {
        return Outcome::ok(format!("{}\n", render_json(&report)));
    }
    Outcome::ok(render_report(&report, trace))
}

/// Upper bound `10^k ≥ r` for a positive rational, as `k`.
fn log10_ceil(r: &Rational) -> i64 {
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64 + 1;
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as i64
}

/// Lower bound `10^k ≤ r` for a positive rational, as `k`.
fn log10_floor(r: &Rational) -> i64 {
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64 - 1;
    (bits as f64 * std::f64::consts::LOG10_2).floor() as i64
}

/// Midpoint with as many significant digits as the width supports (at
/// most ten), then the certified radius.
pub fn approx(enc: &DyadicInterval) -> String {
    let (Some(lo), Some(hi)) = (enc.lower_rational(), enc.upper_rational()) else {
        return "unbounded".to_string();
    };
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    let radius = (&hi - &lo) / Rational::from_integer(2.into());
    if radius.is_zero() {
        return format!("{}…(certified ±0)", enc.midpoint_decimal(DISPLAY_DIGITS as usize));
    }
    let err = log10_ceil(&radius);
    let digits = if mid.is_zero() { 1 } else { (log10_floor(&mid.abs()) - err + 1).clamp(1, DISPLAY_DIGITS) };
    format!("{}…(certified ±1e{err})", enc.midpoint_decimal(digits as usize))
}

fn describe(rep: &SolutionRep, precision: u32) -> String {
    match rep {
        SolutionRep::ExactRational(r) => render_rational(r),
        SolutionRep::CertifiedRoot(CertifiedRoot::Isolated(r)) => {
            format!("{} (the root of {} in [{}, {}])", approx(&rep.enclosure(precision)), r.poly, r.lower(), r.upper())
        }
        SolutionRep::CertifiedRoot(CertifiedRoot::Inverse { value, .. }) => {
            format!("{} ({value})", approx(&rep.enclosure(precision)))
        }
        _ => format!("{rep} ≈ {}", approx(&rep.enclosure(precision))),
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn summary(report: &SolveReport) -> String {
    let p = report.precision;
    let mut line = match &report.solutions {
        SolutionSet::Finite(v) => {
            let items: Vec<String> = v.iter().map(|s| describe(s, p)).collect();
            format!("{}: {}", plural(v.len(), "solution"), items.join(", "))
        }
        SolutionSet::Empty => "no solutions".to_string(),
        SolutionSet::Identity => format!("identity: every x in {} is a solution", report.equation.domain),
        SolutionSet::Unsolved(why) => format!("unsolved: {why}"),
    };
    if !report.rejected.is_empty() {
        let items: Vec<String> = report.rejected.iter().map(|(c, why)| format!("{c} ({why})")).collect();
        let _ = write!(line, "; {}: {}", if items.len() == 1 { "rejected candidate" } else { "rejected candidates" }, items.join(", "));
    }
    if !report.inconclusive.is_empty() {
        let items: Vec<String> = report.inconclusive.iter().map(|(c, why)| format!("{} ({why})", describe(c, p))).collect();
        let _ = write!(line, "; {}: {}", if items.len() == 1 { "unproved candidate" } else { "unproved candidates" }, items.join(", "));
    }
    line
}

pub fn render_report(report: &SolveReport, with_trace: bool) -> String {
    let mut out = String::new();
    let unsolved = matches!(report.solutions, SolutionSet::Unsolved(_));
    if with_trace || unsolved {
        let eq = &report.equation;
        let _ = writeln!(out, "equation: {} = {}", render_expr(&eq.lhs), render_expr(&eq.rhs));
        let _ = writeln!(out, "domain: {}", eq.domain);
        if let Some(s) = report.strategy {
            let _ = writeln!(out, "strategy: {}", s.name());
        }
        if !report.trace.is_empty() {
            let _ = writeln!(out, "{}", report.trace);
        }
        for n in &report.notes {
            let _ = writeln!(out, "note: {n}");
        }
    }
    let _ = writeln!(out, "{}", summary(report));
    out
}

fn natural_or(domain: Option<&str>, e: &solset::Expr) -> Result<Domain, Outcome> {
    match domain {
        Some(d) => parse_domain(d).map_err(|err| syntax("domain", d, &err)),
        None => Ok(e.natural_domain().domain),
    }
}

fn cmd_classify(text: &str, domain: Option<&str>) -> Outcome {
    let e = match parse_expression(text) {
        Ok(e) => e,
        Err(err) => return syntax("expression", text, &err),
    };
    let d = match natural_or(domain, &e) {
        Ok(d) => d,
        Err(o) => return o,
    };
    if !d.is_subset_of(&e.natural_domain().domain) {
        return Outcome::fail(EXIT_FLAGS, format!("error: {text} is not defined on all of {d}\n"));
    }
    let cert = match classify(&e, &d) {
        Ok(c) => c,
        Err(err) => return Outcome::fail(EXIT_FLAGS, format!("error: {err}\n")),
    };
    let mut out = format!("{cert}\n");
    if let AlgebraicityCertificate::Algebraic { annihilator } = &cert {
        let check = match annihilator_verify(&e, annihilator, 20, 128) {
            AnnihilatorCheck::Verified => "verified",
            AnnihilatorCheck::Refuted => "refuted",
            AnnihilatorCheck::Inconclusive => "inconclusive",
        };
        let _ = writeln!(out, "check: {check}");
    }
    Outcome::ok(out)
}

fn cmd_isolate(text: &str, precision: u32) -> Outcome {
    let e = match parse_expression(text) {
        Ok(e) => e,
        Err(err) => return syntax("polynomial", text, &err),
    };
    let p = match UniPoly::from_expr(&e) {
        Ok(p) if !p.is_zero() => p,
        Ok(_) => return Outcome::fail(EXIT_SYNTAX, "error: the zero polynomial has no isolated roots\n".into()),
        Err(_) => return Outcome::fail(EXIT_SYNTAX, format!("error: {text} is not a polynomial in x\n")),
    };
    let roots = sturm_isolate(&p).expect("nonzero polynomial");
    let mut out = format!("{p}: {}\n", plural(roots.len(), "real root"));
    for (i, r) in roots.iter().enumerate() {
        let shown = match r.exact_value() {
            Some(v) => render_rational(&v),
            None => approx(&r.enclosure(precision)),
        };
        let _ = writeln!(out, "{:>3}. {shown} in [{}, {}]", i + 1, r.lower(), r.upper());
    }
    Outcome::ok(out)
}

fn cmd_enumerate(count: usize) -> Outcome {
    let mut out = String::new();
    for (i, (p, r)) in enumerate_algebraic(count).iter().enumerate() {
        let shown = match r.exact_value() {
            Some(v) => render_rational(&v),
            None => approx(&r.enclosure(64)),
        };
        let _ = writeln!(out, "{:>4}. {shown}  root of {p}", i + 1);
    }
    Outcome::ok(out)
}

fn cmd_check(text: &str, candidate: &str, domain: Option<&str>) -> Outcome {
    let eq = match read_equation(text, domain) {
        Ok(eq) => eq,
        Err(o) => return o,
    };
    let c = match parse_expression(candidate) {
        Ok(c) => c,
        Err(err) => return syntax("candidate", candidate, &err),
    };
    if !c.is_constant() {
        return Outcome::fail(EXIT_FLAGS, format!("error: candidate {candidate} must not contain x\n"));
    }
    let shown = render_expr(&c);
    match check_candidate(&eq, &c, &SolveConfig::default()) {
        Ok(Verification::Verified) => Outcome::ok(format!("verified: {shown} is a solution\n")),
        Ok(Verification::Rejected(why)) => Outcome::ok(format!("rejected: {shown} is not a solution ({why})\n")),
        Ok(Verification::Inconclusive(why)) => Outcome::ok(format!("inconclusive: {shown} ({why})\n")),
        Err(err) => Outcome::fail(EXIT_FLAGS, format!("error: {err}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn approx_digits_follow_width() {
        let third = DyadicInterval::from_rational(&r(1, 3), 256);
        assert_eq!(approx(&third), "0.3333333333…(certified ±1e-77)");
        let coarse = DyadicInterval::from_rationals(&r(1234, 1000), &r(1236, 1000), 64);
        assert!(approx(&coarse).starts_with("1.2…(certified ±1e-"), "{}", approx(&coarse));
        assert_eq!(approx(&DyadicInterval::point_int(3)), "3…(certified ±0)");
        assert_eq!(approx(&DyadicInterval::entire(64)), "unbounded");
    }

    #[test]
    fn run_reports_without_printing() {
        let o = run(["solset", "solve", "x^2 = 4"]);
        assert_eq!(o.code, EXIT_OK);
        assert_eq!(o.stdout, "2 solutions: -2, 2\n");
        let o = run(["solset", "solve", "x^2 = "]);
        assert_eq!(o.code, EXIT_SYNTAX);
        assert!(o.stdout.is_empty() && o.stderr.contains("empty right side"));
    }
}

//! Command-line front end.
//!
//! Every command prints either a short human-readable summary or, with
//! `--json`, one `result.v1` document. Exit status is 0 on success, 1 on
//! input errors and 2 when a requested radius could not be certified.

use std::fs;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::arith::{Int, Nat, Rat};
use crate::binomial;
use crate::capacity::{self, ArchKind, LogRadius};
use crate::coppersmith::{self, Problem, SolveReport};
use crate::negative;
use crate::poly::IntPoly;
use crate::Error;

pub const SCHEMA_VERSION: &str = "result.v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_CERTIFIED: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "copperscope",
    version,
    about = "Small roots of modular polynomials, with capacity-based feasibility checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find all integer roots |x| <= X of f(x) = 0 mod N.
    Solve(SolveArgs),
    /// Capacity verdict for f(x) = 0 mod N on the disk or interval of radius N^e.
    Capacity(CapacityArgs),
    /// Integer-valued polynomial toolkit.
    Binomial {
        #[command(subcommand)]
        command: BinomialCommand,
    },
    /// Small-factor analysis for radius N^{1/d + e}.
    Negative(NegativeArgs),
    /// Stereotyped-message RSA recovery on a seeded random instance.
    Demo(DemoArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Coefficients, constant term first, or @path to a file holding them.
    #[arg(long)]
    poly: String,
    #[arg(long)]
    modulus: String,
    #[arg(long)]
    radius: String,
    /// Multiplicity; chosen automatically when omitted.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    t_extra: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Arch {
    Disk,
    Interval,
}

#[derive(Args, Debug)]
struct CapacityArgs {
    #[arg(long)]
    modulus: String,
    #[arg(long)]
    degree: usize,
    /// Exponent e of X = N^e, e.g. 1/3 or 1/3+1/100.
    #[arg(long, allow_hyphen_values = true)]
    radius_exp: String,
    #[arg(long, value_enum, default_value_t = Arch::Disk)]
    arch: Arch,
    /// Polynomial (defaults to x^degree); only its degree matters.
    #[arg(long)]
    poly: Option<String>,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand, Debug)]
enum BinomialCommand {
    /// Root q0 of the balance equation for the interval construction.
    Q0 {
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        #[command(flatten)]
        out: Output,
    },
    /// b_{2t+1}(x+t) in the binomial basis and its sup norm on |z| <= r.
    Construct {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        radius: String,
        #[command(flatten)]
        out: Output,
    },
    /// Closed-form sup norm against a sampled maximum on |z| = r.
    Supnorm {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        radius: String,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Smallest degree at which the lattice volume condition holds.
    Minkowski {
        #[arg(long)]
        r: String,
        #[arg(long)]
        c: String,
        #[command(flatten)]
        out: Output,
    },
    /// Smallest prime cutoff Y with Σ_{p<=Y} ln p/(p-1) > v.
    Cutoff {
        #[arg(long)]
        delta_logn: f64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct NegativeArgs {
    #[arg(long)]
    modulus: String,
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    epsilon: String,
    /// Prime bound M.
    #[arg(long = "M", visible_alias = "m-bound")]
    m_bound: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct DemoArgs {
    #[arg(long, default_value_t = 128)]
    bits: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the instance polynomial here, for `solve --poly @path`.
    #[arg(long)]
    write_poly: Option<String>,
    #[command(flatten)]
    out: Output,
}

/// A failed command: exit status and a one-line diagnostic.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
    detail: Value,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            kind: "input_error",
            message: message.into(),
            detail: Value::Null,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match &e {
            Error::BoundNotCertified {
                certified_x,
                m,
                t_extra,
            } => Failure {
                code: EXIT_NOT_CERTIFIED,
                kind: "bound_not_certified",
                message: e.to_string(),
                detail: json!({
                    "certified_x": certified_x.to_string(),
                    "m": m,
                    "t_extra": t_extra,
                }),
            },
            _ => Failure::input(e.to_string()),
        }
    }
}

struct Success {
    text: String,
    outputs: Value,
    warnings: Vec<String>,
}

/// Top-level document. `serde_json::Map` is ordered by key, so output is
/// deterministic for fixed inputs unless timings are requested.
#[derive(Serialize)]
struct CommandResult {
    schema_version: &'static str,
    command: String,
    inputs: Value,
    outputs: Value,
    timings_ms: Map<String, Value>,
    warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<Value>,
}

pub fn run() -> i32 {
    init_logging();
    run_from(std::env::args_os())
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("COPPERSCOPE_LOG", "warn");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (name, inputs, out) = describe(&cli.command);
    let start = Instant::now();
    let result = dispatch(&cli.command);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;

    let mut timings = Map::new();
    if out.timings {
        timings.insert("total".into(), json!(elapsed));
    }
    let (code, doc) = match result {
        Ok(s) => {
            if !out.json {
                print!("{}", s.text);
                for w in &s.warnings {
                    eprintln!("warning: {w}");
                }
            }
            let doc = CommandResult {
                schema_version: SCHEMA_VERSION,
                command: name,
                inputs,
                outputs: s.outputs,
                timings_ms: timings,
                warnings: s.warnings,
                error: None,
            };
            (EXIT_OK, doc)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            let doc = CommandResult {
                schema_version: SCHEMA_VERSION,
                command: name,
                inputs,
                outputs: Value::Null,
                timings_ms: timings,
                warnings: Vec::new(),
                error: Some(json!({
                    "kind": f.kind,
                    "message": f.message,
                    "detail": f.detail,
                })),
            };
            (f.code, doc)
        }
    };
    if out.json {
        let mut stdout = std::io::stdout().lock();
        let _ = serde_json::to_writer_pretty(&mut stdout, &doc);
        let _ = writeln!(stdout);
    }
    code
}

fn describe(c: &Command) -> (String, Value, Output) {
    match c {
        Command::Solve(a) => (
            "solve".into(),
            json!({"poly": a.poly, "modulus": a.modulus, "radius": a.radius, "m": a.m, "t_extra": a.t_extra}),
            a.out,
        ),
        Command::Capacity(a) => (
            "capacity".into(),
            json!({"modulus": a.modulus, "degree": a.degree, "radius_exp": a.radius_exp,
                   "arch": format!("{:?}", a.arch).to_lowercase(), "poly": a.poly}),
            a.out,
        ),
        Command::Binomial { command } => match command {
            BinomialCommand::Q0 { tolerance, out } => {
                ("binomial q0".into(), json!({"tolerance": tolerance}), *out)
            }
            BinomialCommand::Construct { t, radius, out } => (
                "binomial construct".into(),
                json!({"t": t, "radius": radius}),
                *out,
            ),
            BinomialCommand::Supnorm {
                t,
                radius,
                samples,
                out,
            } => (
                "binomial supnorm".into(),
                json!({"t": t, "radius": radius, "samples": samples}),
                *out,
            ),
            BinomialCommand::Minkowski { r, c, out } => {
                ("binomial minkowski".into(), json!({"r": r, "c": c}), *out)
            }
            BinomialCommand::Cutoff { delta_logn, out } => (
                "binomial cutoff".into(),
                json!({"delta_logn": delta_logn}),
                *out,
            ),
        },
        Command::Negative(a) => (
            "negative".into(),
            json!({"modulus": a.modulus, "degree": a.degree, "epsilon": a.epsilon, "M": a.m_bound}),
            a.out,
        ),
        Command::Demo(a) => (
            "demo".into(),
            json!({"bits": a.bits, "seed": a.seed, "write_poly": a.write_poly}),
            a.out,
        ),
    }
}

fn dispatch(c: &Command) -> Result<Success, Failure> {
    match c {
        Command::Solve(a) => cmd_solve(a),
        Command::Capacity(a) => cmd_capacity(a),
        Command::Binomial { command } => cmd_binomial(command),
        Command::Negative(a) => cmd_negative(a),
        Command::Demo(a) => cmd_demo(a),
    }
}

fn cmd_solve(a: &SolveArgs) -> Result<Success, Failure> {
    let f = parse_poly(&a.poly)?;
    let n = parse_nat("modulus", &a.modulus)?;
    let x = parse_nat("radius", &a.radius)?;
    if !f.is_monic() {
        return Err(Error::NonMonicPolynomial.into());
    }
    let report: SolveReport = match a.m {
        Some(m) => coppersmith::solve_report(&Problem::new(f, n, x, m, a.t_extra)?)?,
        None => {
            if a.t_extra != 0 {
                return Err(Failure::input("--t-extra requires --m"));
            }
            coppersmith::solve_auto(&f, &n, &x)?
        }
    };
    let roots: Vec<String> = report.roots.iter().map(Int::to_string).collect();
    let text = format!(
        "roots: [{}]\nlattice dimension: {}\nm = {}, t_extra = {}\ncertified bound: {}\n",
        roots.join(", "),
        report.w,
        report.m,
        report.t_extra,
        report.radius
    );
    Ok(Success {
        text,
        outputs: json!({
            "roots": roots,
            "dimension": report.w,
            "m": report.m,
            "t_extra": report.t_extra,
            "certified_bound": report.radius.to_string(),
            "swap_count": report.swap_count,
            "auxiliary": serde_json::to_value(&report.auxiliary).expect("serializable"),
        }),
        warnings: Vec::new(),
    })
}

fn cmd_capacity(a: &CapacityArgs) -> Result<Success, Failure> {
    let n = parse_nat("modulus", &a.modulus)?;
    if a.degree == 0 {
        return Err(Failure::input("degree must be at least 1"));
    }
    let e = parse_rat("radius-exp", &a.radius_exp)?;
    let f = match &a.poly {
        Some(p) => {
            let f = parse_poly(p)?;
            if f.degree() != Some(a.degree) {
                return Err(Failure::input(format!(
                    "polynomial degree {:?} does not match --degree {}",
                    f.degree(),
                    a.degree
                )));
            }
            f
        }
        None => IntPoly::monomial(Int::one(), a.degree),
    };
    let arch = match a.arch {
        Arch::Disk => ArchKind::Disk,
        Arch::Interval => ArchKind::Interval,
    };
    let radius = LogRadius::power(n.clone(), e);
    let verdict = capacity::coppersmith_feasibility(&f, &n, &radius, arch)?;
    let ln = verdict.capacity.ln();
    let text = format!(
        "capacity: {}\nln capacity ~ {:.6}\nverdict: {:?}\n{}\n",
        verdict.capacity, ln, verdict.status, verdict.note
    );
    Ok(Success {
        text,
        outputs: json!({
            "factors": serde_json::to_value(&verdict.capacity).expect("serializable"),
            "capacity": verdict.capacity.to_string(),
            "ln_capacity": finite(ln),
            "verdict": verdict.status,
            "note": verdict.note,
        }),
        warnings: Vec::new(),
    })
}

fn cmd_binomial(c: &BinomialCommand) -> Result<Success, Failure> {
    match c {
        BinomialCommand::Q0 { tolerance, .. } => {
            let q0 = binomial::solve_q0(*tolerance)?;
            Ok(Success {
                text: format!("q0 = {q0:.8}\n"),
                outputs: json!({"q0": q0, "residual": binomial::q0_function(q0)}),
                warnings: Vec::new(),
            })
        }
        BinomialCommand::Construct { t, radius, .. } => {
            let r = parse_rat("radius", radius)?;
            let combo = binomial::explicit_construction(*t)?;
            let sup = binomial::construction_sup_norm(*t, &r)?;
            let bounded = sup.exact < Rat::one();
            let coeffs: Vec<String> = combo.coeffs().iter().map(Rat::to_string).collect();
            Ok(Success {
                text: format!(
                    "h = {combo}\nintegral: {}\nsupnorm: {} (ln {:.6})\nbounded: {bounded}\n",
                    combo.is_integral(),
                    sup.exact,
                    sup.ln
                ),
                outputs: json!({
                    "coeffs": coeffs,
                    "integral": combo.is_integral(),
                    "supnorm": sup.exact.to_string(),
                    "ln_supnorm": finite(sup.ln),
                    "bounded": bounded,
                }),
                warnings: Vec::new(),
            })
        }
        BinomialCommand::Supnorm {
            t, radius, samples, ..
        } => {
            let r = parse_rat("radius", radius)?;
            if *samples == 0 {
                return Err(Failure::input("samples must be positive"));
            }
            let sup = binomial::construction_sup_norm(*t, &r)?;
            let sampled = binomial::sampled_sup_norm(*t, crate::arith::rat_to_f64(&r), *samples);
            let closed = sup.ln.exp();
            let mut warnings = Vec::new();
            if sampled > closed * (1.0 + 1e-9) {
                warnings.push(format!(
                    "sampled maximum {sampled:e} exceeds closed form {closed:e}"
                ));
            }
            Ok(Success {
                text: format!(
                    "closed form: {} (~{closed:e})\nsampled max: {sampled:e}\n",
                    sup.exact
                ),
                outputs: json!({
                    "supnorm": sup.exact.to_string(),
                    "ln_supnorm": finite(sup.ln),
                    "sampled": finite(sampled),
                }),
                warnings,
            })
        }
        BinomialCommand::Minkowski { r, c, .. } => {
            let r = parse_rat("r", r)?;
            let c = parse_rat("c", c)?;
            let b = binomial::minkowski_degree_bound(&r, &c)?;
            let mut warnings = Vec::new();
            if !b.within_budget {
                warnings.push(format!(
                    "smallest degree {} exceeds the budget c*r = {}",
                    b.m, b.budget
                ));
            }
            Ok(Success {
                text: format!(
                    "m = {} (c*r = {}, within budget: {}, m/r = {:.4})\n",
                    b.m, b.budget, b.within_budget, b.ratio
                ),
                outputs: serde_json::to_value(&b).expect("serializable"),
                warnings,
            })
        }
        BinomialCommand::Cutoff { delta_logn, .. } => {
            let p = binomial::min_prime_cutoff_for_existence(*delta_logn)?;
            let mut warnings = Vec::new();
            if !p.exact {
                warnings.push(format!(
                    "cutoff not enumerated; it lies in [{}, {}]",
                    p.lower, p.cutoff
                ));
            }
            Ok(Success {
                text: format!("cutoff: {} (exact: {})\n", p.cutoff, p.exact),
                outputs: serde_json::to_value(&p).expect("serializable"),
                warnings,
            })
        }
    }
}

fn cmd_negative(a: &NegativeArgs) -> Result<Success, Failure> {
    let n = parse_nat("modulus", &a.modulus)?;
    let eps = parse_rat("epsilon", &a.epsilon)?;
    let r = negative::analyze(&n, a.degree, &eps, a.m_bound)?;
    let mut text = format!(
        "verdict: {:?}\nln N^eps - ln prod p^(1/(p-1)) = {:.6}\n",
        r.verdict, r.capacity_log
    );
    if let Some(p) = r.small_factor {
        text.push_str(&format!("small factor: {p}\n"));
    }
    Ok(Success {
        text,
        outputs: serde_json::to_value(&r).expect("serializable"),
        warnings: Vec::new(),
    })
}

fn cmd_demo(a: &DemoArgs) -> Result<Success, Failure> {
    let r = coppersmith::demo_stereotyped_rsa(a.bits, a.seed)?;
    if let Some(path) = &a.write_poly {
        let f = stereotyped_poly(&r.known_prefix, &r.ciphertext, &r.modulus);
        let line: Vec<String> = f.coeffs().iter().map(Int::to_string).collect();
        fs::write(path, line.join(",") + "\n")
            .map_err(|e| Failure::input(format!("cannot write {path}: {e}")))?;
    }
    let recovered: Vec<String> = r.recovered.iter().map(Int::to_string).collect();
    let text = format!(
        "N = {} ({} bits), e = {}\nplanted r = {}\nrecovered: [{}]\nsuccess: {}\nm = {}, dimension = {}, bound = {}\n",
        r.modulus,
        r.bits,
        r.exponent,
        r.planted,
        recovered.join(", "),
        r.success,
        r.m,
        r.w,
        r.certified_bound
    );
    let mut warnings = Vec::new();
    if !r.success {
        warnings.push("planted value not recovered".into());
    }
    Ok(Success {
        text,
        outputs: serde_json::to_value(&r).expect("serializable"),
        warnings,
    })
}

/// `(x̃ + x)^3 - c mod N`, coefficients reduced to `[0, N)` except the
/// leading one.
pub fn stereotyped_poly(prefix: &Nat, ciphertext: &Nat, n: &Nat) -> IntPoly {
    let p = Int::from(prefix.clone());
    let f = IntPoly::new(vec![p, Int::one()]).pow(3);
    let f = IntPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == 0 {
                    c - Int::from(ciphertext.clone())
                } else {
                    c.clone()
                }
            })
            .collect(),
    );
    f.reduce_mod(n)
}

fn finite(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Comma-separated integers, constant term first; `@path` reads the list
/// from a file (commas or whitespace).
pub fn parse_poly_arg(s: &str) -> crate::Result<IntPoly> {
    let body = match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::DegenerateInput(format!("cannot read {path}: {e}")))?,
        None => s.to_string(),
    };
    let coeffs = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            BigInt::from_str(t)
                .map_err(|_| Error::DegenerateInput(format!("bad coefficient {t:?}")))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(Error::DegenerateInput("empty polynomial".into()));
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_poly(s: &str) -> Result<IntPoly, Failure> {
    parse_poly_arg(s).map_err(|e| Failure::input(e.to_string()))
}

fn parse_nat(name: &str, s: &str) -> Result<Nat, Failure> {
    Nat::from_str(s.trim()).map_err(|_| {
        Failure::input(format!(
            "{name}: expected a non-negative integer, got {s:?}"
        ))
    })
}

fn parse_rat(name: &str, s: &str) -> Result<Rat, Failure> {
    parse_rational(s).map_err(|e| Failure::input(format!("{name}: {e}")))
}

/// Sum of signed terms, each an integer, `a/b` or a decimal:
/// `"1/3+1/100"`, `"0.5"`, `"-2/7"`.
pub fn parse_rational(s: &str) -> crate::Result<Rat> {
    let bad = || {
        Error::DegenerateInput(format!(
            "expected a rational such as 1/3 or 0.25, got {s:?}"
        ))
    };
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut total = Rat::zero();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        let at_end = i == bytes.len();
        if at_end || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/') {
            total += parse_term(&s[start..i]).ok_or_else(bad)?;
            start = i;
        }
    }
    Ok(total)
}

fn parse_term(t: &str) -> Option<Rat> {
    let (neg, t) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let v = if let Some((a, b)) = t.split_once('/') {
        let b = parse_decimal(b)?;
        if b.is_zero() {
            return None;
        }
        parse_decimal(a)? / b
    } else {
        parse_decimal(t)?
    };
    Some(if neg { -v } else { v })
}

fn parse_decimal(t: &str) -> Option<Rat> {
    let (int_part, frac) = t.split_once('.').unwrap_or((t, ""));
    if int_part.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !digits(int_part) || !digits(frac) {
        return None;
    }
    let num = BigInt::from_str(format!("{int_part}{frac}").trim_start_matches('0'))
        .unwrap_or_else(|_| BigInt::zero());
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let v = Rat::new(num, den);
    debug_assert!(!v.is_negative());
    Some(v)
}

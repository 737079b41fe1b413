//! Command-line front end. [`run`] parses arguments, dispatches, writes the
//! output and returns the process exit code: 0 on success, 1 when a
//! verification fails, 2 on invalid input.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::blocks::{cartan_exponent, enumerate_blocks};
use crate::check::{all_pass, Check};
use crate::error::{Error, Result};
use crate::gram::{verify_with, FormContext, GramReport};
use crate::partitions::{enumerate_partitions, exponent_totals, exponents};
use crate::roots::{a_matrix, AffineType, FiniteRootData};
use crate::series::{ab_series, cartan_series, spin_cartan_series, TruncSeries};
use crate::ROSTER;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "shapdet",
    version,
    about = "Exact Shapovalov determinants for affine ADE types"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table constants, index set, periods and orbits of a type.
    Info { ty: String },
    /// Determinants of A^(n).
    #[command(name = "detA")]
    DetA {
        ty: Option<String>,
        /// Single n; otherwise 1..=max-n.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long)]
        roster: bool,
    },
    /// a_λ, b_λ for every partition of d, with totals.
    Exponents {
        ty: String,
        #[arg(short)]
        d: u32,
    },
    /// a(q), b(q) of a type, or N(q) for a modulus p.
    Series {
        ty: Option<String>,
        #[arg(short)]
        p: Option<u32>,
        #[arg(long)]
        spin: bool,
        #[arg(long, env = "SHAPDET_MAX_DEGREE", default_value_t = 20)]
        max_degree: usize,
    },
    /// Gram matrices of the two forms at degree d, with the determinant checks.
    Gram {
        ty: Option<String>,
        #[arg(short)]
        d: Option<u32>,
        /// Exit 1 if any check fails.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        roster: bool,
        /// JSON file with `nodes`, `gram`, `mu` replacing the built-in root data.
        #[arg(long)]
        root_data: Option<PathBuf>,
    },
    /// Blocks of S_n at p with their Cartan determinants.
    Blocks {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    #[serde(rename = "type")]
    pub ty: Option<String>,
    pub parameters: Value,
    pub result: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub elapsed_ms: f64,
}

struct Output {
    envelope: OutputEnvelope,
    plain: String,
    csv: Option<String>,
    /// Whether a failed check should turn into exit code 1.
    enforce: bool,
}

impl Output {
    fn new(command: &str, ty: Option<String>, parameters: Value) -> Self {
        Self {
            envelope: OutputEnvelope {
                command: command.to_string(),
                ty,
                parameters,
                result: Value::Null,
                checks: Vec::new(),
                pass: true,
                elapsed_ms: 0.0,
            },
            plain: String::new(),
            csv: None,
            enforce: false,
        }
    }
}

/// Maximum degree verified per roster type by `gram --roster`.
pub fn roster_schedule() -> Vec<(&'static str, u32)> {
    ROSTER
        .iter()
        .map(|&s| {
            let d = match s {
                "A1^1" | "A2^2" => 6,
                "D4^1" | "E6^1" | "A4^1" => 3,
                _ => 4,
            };
            (s, d)
        })
        .collect()
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let start = Instant::now();
    let mut out = match dispatch(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    out.envelope.pass = all_pass(&out.envelope.checks);
    out.envelope.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let text = match cli.format {
        Format::Plain => out.plain.clone(),
        Format::Json => {
            serde_json::to_string_pretty(&out.envelope).expect("envelope serializes") + "\n"
        }
        Format::Csv => match &out.csv {
            Some(csv) => csv.clone(),
            None => {
                eprintln!("error: csv output is only available for series and exponents");
                return EXIT_INVALID;
            }
        },
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{text}"),
    }
    if out.enforce && !out.envelope.pass {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn dispatch(command: &Command) -> Result<Output> {
    match command {
        Command::Info { ty } => cmd_info(&ty.parse()?),
        Command::DetA {
            ty,
            n,
            max_n,
            roster,
        } => {
            let types = type_list(ty.as_deref(), *roster)?;
            let ns: Vec<u32> = match n {
                Some(n) => vec![*n],
                None => (1..=*max_n).collect(),
            };
            cmd_det_a(&types, &ns)
        }
        Command::Exponents { ty, d } => cmd_exponents(&ty.parse()?, *d),
        Command::Series {
            ty,
            p,
            spin,
            max_degree,
        } => match (ty, p) {
            (Some(ty), None) if !spin => cmd_series_type(&ty.parse()?, *max_degree),
            (None, Some(p)) => cmd_series_modulus(*p, *spin, *max_degree),
            _ => Err(Error::Usage(
                "series takes either a TYPE or -p P (with optional --spin)".into(),
            )),
        },
        Command::Gram {
            ty,
            d,
            check,
            roster,
            root_data,
        } => {
            let schedule: Vec<(AffineType, Vec<u32>)> = if *roster {
                if ty.is_some() || root_data.is_some() {
                    return Err(Error::Usage(
                        "--roster cannot be combined with TYPE or --root-data".into(),
                    ));
                }
                roster_schedule()
                    .into_iter()
                    .map(|(s, max)| {
                        let degrees = match d {
                            Some(d) => vec![*d],
                            None => (0..=max).collect(),
                        };
                        (s.parse().expect("roster types parse"), degrees)
                    })
                    .collect()
            } else {
                let ty = ty
                    .as_deref()
                    .ok_or_else(|| Error::Usage("gram needs a TYPE or --roster".into()))?;
                let d = d.ok_or_else(|| Error::Usage("gram needs -d D".into()))?;
                vec![(ty.parse()?, vec![d])]
            };
            let fixture = match root_data {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
                    Some(FiniteRootData::from_json(&schedule[0].0, &text)?)
                }
                None => None,
            };
            let mut out = cmd_gram(&schedule, fixture, *roster)?;
            out.enforce = *check;
            Ok(out)
        }
        Command::Blocks { n, p } => cmd_blocks(*n, *p),
    }
}

fn type_list(ty: Option<&str>, roster: bool) -> Result<Vec<AffineType>> {
    match (ty, roster) {
        (Some(_), true) => Err(Error::Usage("give either TYPE or --roster".into())),
        (Some(s), false) => Ok(vec![s.parse()?]),
        (None, true) => ROSTER.iter().map(|s| s.parse()).collect(),
        (None, false) => Err(Error::Usage("a TYPE or --roster is required".into())),
    }
}

fn cmd_info(t: &AffineType) -> Result<Output> {
    let rd = t.root_data();
    let periods: Vec<u32> = t.index_set().iter().map(|&i| rd.d(i)).collect();
    let mut out = Output::new("info", Some(t.to_string()), json!({}));
    out.envelope.result = json!({
        "ell": t.ell(),
        "k": t.k(),
        "alpha": t.alpha(),
        "beta": t.beta(),
        "r": t.r(),
        "a0": t.a0(),
        "epsilon": t.epsilon(),
        "index_set": t.index_set(),
        "periods": periods,
        "orbits": rd.orbits,
        "root_data": rd,
    });
    out.envelope.checks = rd
        .consistency(t)
        .into_iter()
        .map(|(name, ok)| Check::flag(name, ok))
        .collect();
    let p = &mut out.plain;
    writeln!(p, "{t}").unwrap();
    writeln!(
        p,
        "ℓ={} k={} α={} β={} r={} a0={} ε={}",
        t.ell(),
        t.k(),
        t.alpha(),
        t.beta(),
        t.r(),
        t.a0(),
        t.epsilon()
    )
    .unwrap();
    writeln!(p, "I = {}", tuple(t.index_set())).unwrap();
    writeln!(p, "d = {}", tuple(&periods)).unwrap();
    let orbits: Vec<String> = rd
        .orbits
        .iter()
        .map(|o| format!("{{{}}}", join(o, ",")))
        .collect();
    writeln!(p, "orbits: {}", orbits.join(" ")).unwrap();
    Ok(out)
}

fn cmd_det_a(types: &[AffineType], ns: &[u32]) -> Result<Output> {
    let ty = (types.len() == 1).then(|| types[0].to_string());
    let mut out = Output::new("detA", ty, json!({ "n": ns }));
    let mut rows = Vec::new();
    for t in types {
        for &n in ns {
            let a = a_matrix(t, n);
            let det = a.det();
            let (expected, name) = if n % t.r() == 0 {
                (t.alpha(), "α")
            } else {
                (t.beta(), "β")
            };
            writeln!(
                out.plain,
                "{t:<5} n={n:<3} I(n)={:<14} det A = {det} (expected {name} = {expected})",
                tuple(&a.index_set)
            )
            .unwrap();
            out.envelope
                .checks
                .push(Check::new(format!("{t} n={n}"), expected, &det));
            rows.push(json!({
                "type": t.to_string(),
                "n": n,
                "index_set": a.index_set,
                "matrix": a.matrix,
                "det": det,
                "expected": expected,
            }));
        }
    }
    out.envelope.result = Value::Array(rows);
    out.enforce = true;
    Ok(out)
}

fn cmd_exponents(t: &AffineType, d: u32) -> Result<Output> {
    let mut out = Output::new("exponents", Some(t.to_string()), json!({ "d": d }));
    let mut rows = Vec::new();
    let mut csv = String::from("lambda,a,b\n");
    for lambda in enumerate_partitions(d) {
        let (a, b) = exponents(t, &lambda)?;
        writeln!(out.plain, "{lambda:<20} a={a:<6} b={b}").unwrap();
        writeln!(csv, "\"{lambda}\",{a},{b}").unwrap();
        rows.push(json!({ "lambda": lambda.to_string(), "a": a.to_string(), "b": b.to_string() }));
    }
    let (a, b) = exponent_totals(t, d)?;
    let (sa, sb) = ab_series(t, d as usize);
    writeln!(out.plain, "total: a({d})={a} b({d})={b}").unwrap();
    writeln!(out.plain, "det = {}^{a} * {}^{b}", t.alpha(), t.beta()).unwrap();
    out.envelope.checks = vec![
        Check::new("a(d) series", sa.coeff(d as usize), &a),
        Check::new("b(d) series", sb.coeff(d as usize), &b),
    ];
    out.envelope.result = json!({
        "partitions": rows,
        "a": a.to_string(),
        "b": b.to_string(),
    });
    out.csv = Some(csv);
    Ok(out)
}

fn coeff_strings(s: &TruncSeries) -> Vec<String> {
    s.coeffs().iter().map(ToString::to_string).collect()
}

fn cmd_series_type(t: &AffineType, max_degree: usize) -> Result<Output> {
    let mut out = Output::new(
        "series",
        Some(t.to_string()),
        json!({ "max_degree": max_degree }),
    );
    let (a, b) = ab_series(t, max_degree);
    writeln!(out.plain, "a(q): {}", coeff_strings(&a).join(",")).unwrap();
    writeln!(out.plain, "b(q): {}", coeff_strings(&b).join(",")).unwrap();
    let mut csv = String::from("d,a,b\n");
    for d in 0..=max_degree {
        writeln!(csv, "{d},{},{}", a.coeff(d), b.coeff(d)).unwrap();
    }
    out.csv = Some(csv);
    out.envelope.result = json!({ "a": coeff_strings(&a), "b": coeff_strings(&b) });
    Ok(out)
}

fn cmd_series_modulus(p: u32, spin: bool, max_degree: usize) -> Result<Output> {
    let mut out = Output::new(
        "series",
        None,
        json!({ "p": p, "spin": spin, "max_degree": max_degree }),
    );
    let n = if spin {
        spin_cartan_series(p, max_degree)?
    } else {
        cartan_series(p, max_degree)?
    };
    for d in 0..=max_degree {
        let closed = cartan_exponent(p, d as u32, spin)?;
        out.envelope.checks.push(Check::new(
            format!("N({d}) closed form"),
            n.coeff(d),
            closed,
        ));
    }
    writeln!(out.plain, "{}", coeff_strings(&n).join(",")).unwrap();
    let mut csv = String::from("d,N\n");
    for d in 0..=max_degree {
        writeln!(csv, "{d},{}", n.coeff(d)).unwrap();
    }
    out.csv = Some(csv);
    out.envelope.result = json!({ "N": coeff_strings(&n) });
    Ok(out)
}

fn cmd_gram(
    schedule: &[(AffineType, Vec<u32>)],
    fixture: Option<FiniteRootData>,
    roster: bool,
) -> Result<Output> {
    let ty = (!roster).then(|| schedule[0].0.to_string());
    let parameters = json!({
        "schedule": schedule
            .iter()
            .map(|(t, ds)| json!({ "type": t.to_string(), "d": ds }))
            .collect::<Vec<_>>(),
        "custom_root_data": fixture.is_some(),
    });
    let mut out = Output::new("gram", ty, parameters);
    let mut fixture = fixture;
    let mut reports: Vec<GramReport> = Vec::new();
    for (t, degrees) in schedule {
        let ctx = match fixture.take() {
            Some(rd) => FormContext::with_root_data(t, rd),
            None => FormContext::new(t),
        };
        for &d in degrees {
            let report = verify_with(&ctx, d)?;
            write_gram_plain(&mut out.plain, t, &report, !roster);
            out.envelope
                .checks
                .extend(report.checks.iter().map(|c| Check {
                    name: format!("{t} d={d} {}", c.name),
                    ..c.clone()
                }));
            reports.push(report);
        }
    }
    out.envelope.result = if roster {
        let summary: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "type": r.ty,
                    "d": r.d,
                    "dim": r.basis.len(),
                    "det_M": r.det_m,
                    "predicted": r.predicted_det.to_string(),
                    "a": r.predicted_a.to_string(),
                    "b": r.predicted_b.to_string(),
                    "identity_ok": r.identity_ok,
                    "pass": r.pass(),
                })
            })
            .collect();
        Value::Array(summary)
    } else {
        serde_json::to_value(&reports[0]).expect("report serializes")
    };
    Ok(out)
}

fn write_gram_plain(p: &mut String, t: &AffineType, r: &GramReport, matrices: bool) {
    writeln!(
        p,
        "{t} d={} dim={} det M = {} predicted {} = {} identity_ok={} det N = {} {}",
        r.d,
        r.basis.len(),
        r.det_m,
        r.factored_prediction(t),
        r.predicted_det,
        r.identity_ok,
        r.det_n,
        if r.pass() { "PASS" } else { "FAIL" }
    )
    .unwrap();
    if matrices {
        writeln!(p, "basis: {}", r.basis.join(" ")).unwrap();
        writeln!(p, "M =\n{}", r.m).unwrap();
        writeln!(p, "N =\n{}", r.n).unwrap();
    }
    for c in r.checks.iter().filter(|c| matrices || !c.pass) {
        let verdict = if c.pass { "ok" } else { "MISMATCH" };
        writeln!(
            p,
            "  {:<40} {verdict} (expected {}, computed {})",
            c.name, c.expected, c.computed
        )
        .unwrap();
    }
}

fn cmd_blocks(n: u32, p: u32) -> Result<Output> {
    let mut out = Output::new("blocks", None, json!({ "n": n, "p": p }));
    let blocks = enumerate_blocks(n, p)?;
    let total: usize = blocks.iter().map(|b| b.member_count).sum();
    let expected = enumerate_partitions(n).len();
    writeln!(out.plain, "{} block(s) of S_{n} at p={p}", blocks.len()).unwrap();
    for b in &blocks {
        writeln!(
            out.plain,
            "core {:<16} weight {:<3} members {:<5} det = {p}^{} = {}",
            b.core.to_string(),
            b.weight,
            b.member_count,
            b.cartan_exponent,
            b.cartan_det
        )
        .unwrap();
    }
    out.envelope.checks = vec![Check::new("member counts sum to p(n)", expected, total)];
    out.envelope.result = serde_json::to_value(&blocks).expect("blocks serialize");
    Ok(out)
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", join(xs, ","))
}

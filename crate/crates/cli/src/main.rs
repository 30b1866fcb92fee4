use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fqt_forms::ffpoly::{factor, Poly};
use fqt_forms::formulas::{mass_formula_forms, normalized_l_average_limit};
use fqt_forms::genus::{exhaustive_classes, exhaustive_genera, neighbor_closure, seed_lattice, siegel_lhs, ClassList};
use fqt_forms::lattice::{primitive_representations, reduce, twisted_zeta_coefficients, LatticeFile, TernaryLattice, Twist};
use fqt_forms::upoly::{fmt_rational, int, rpow, to_f64, Rational};
use fqt_forms::verify::{run_criterion, run_suite, Suite, KNOWN_GAPS};
use fqt_forms::zeta_l::{class_number, l_polynomial_fast, picard_oracle};
use fqt_forms::Error;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "fqt", version, about = "Definite ternary forms, class numbers and L-polynomials over F_q[t]")]
struct Cli {
    /// Field size (an odd prime)
    #[arg(long, global = true, default_value_t = 3)]
    q: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for enumeration (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Neighbor,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Fast,
}

#[derive(Args)]
struct GenusArgs {
    /// Determinant D (square-free)
    #[arg(long = "D")]
    d: String,
    /// Anisotropic part D1 of the genus (default: the genus of the seed lattice)
    #[arg(long = "D1")]
    d1: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coefficients of L*(u, χ_b)
    Lpoly {
        #[arg(long)]
        b: String,
    },
    /// Class number of A[sqrt m]
    Classno {
        #[arg(long)]
        m: String,
        /// Cross-check with the brute-force Picard oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Mass of a genus from the closed form
    Mass {
        #[command(flatten)]
        g: GenusArgs,
        /// Also enumerate the classes and compare
        #[arg(long)]
        enumerate: bool,
    },
    /// Class representatives of a genus
    Genus {
        #[command(flatten)]
        g: GenusArgs,
        #[arg(long, value_enum, default_value_t = Method::Neighbor)]
        method: Method,
    },
    /// Weighted representation numbers against the class number of A[sqrt(-aD)]
    Represent {
        #[command(flatten)]
        g: GenusArgs,
        #[arg(long)]
        a: String,
    },
    /// Normalized averages of L(1, χ_{Dm}) over deg m = l
    Average {
        #[arg(long = "D")]
        d: String,
        #[arg(long)]
        lmax: usize,
    },
    /// Coefficients of the (twisted) Epstein zeta function
    Epstein {
        #[command(flatten)]
        g: GenusArgs,
        #[arg(long)]
        kmax: usize,
        /// none, psi, phi-psi or chi:<d>
        #[arg(long, default_value = "none")]
        twist: String,
        /// Lattice file ({q, gram}); default: the seed lattice of D
        #[arg(long)]
        lattice: Option<std::path::PathBuf>,
    },
    /// Run the acceptance suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
        /// Run a single criterion
        #[arg(long)]
        criterion: Option<u8>,
        /// Include wall-clock seconds (output is then not reproducible)
        #[arg(long)]
        timings: bool,
    },
}

/// A command result: a JSON body and the same data as TSV rows.
struct Report {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    pass: bool,
}

impl Report {
    fn new(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Self { json, header, rows, pass: true }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn kind_and_code(&self) -> (&'static str, u8) {
        match self {
            CliError::Io(_) => ("io", 9),
            CliError::Core(e) => match e {
                Error::Parse(_) => ("parse", 3),
                Error::InvalidModulus(_) | Error::ModulusMismatch(..) => ("modulus", 4),
                Error::BoundExceeded(_) => ("bound", 6),
                Error::NotFound(_) => ("not-found", 7),
                Error::Invariant(_) | Error::DivisionByZero => ("internal", 8),
                _ => ("precondition", 5),
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn poly(q: u32, s: &str) -> Res<Poly> {
    Ok(Poly::parse(q, s)?)
}

fn rs(r: &Rational) -> String {
    fmt_rational(r)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// The class list of the requested genus: by exhaustive search when asked or
/// when D1 is given, otherwise by neighbor closure from the seed.
fn class_list(q: u32, g: &GenusArgs, method: Method) -> Res<(Poly, ClassList)> {
    let d = poly(q, &g.d)?;
    let cl = match (&g.d1, method) {
        (Some(d1), _) => {
            let d1 = poly(q, d1)?.monic();
            let cl = exhaustive_genera(q, &d)?
                .into_iter()
                .find(|c| c.genus_symbol.d1.monic() == d1)
                .ok_or_else(|| Error::NotFound(format!("no genus of determinant {d} with D1 = {d1}")))?;
            match method {
                Method::Exhaustive => cl,
                Method::Neighbor => neighbor_closure(&cl.representatives[0], &[])?,
            }
        }
        (None, Method::Exhaustive) => exhaustive_classes(q, &d, None)?,
        (None, Method::Neighbor) => neighbor_closure(&seed_lattice(q, &d)?, &[])?,
    };
    Ok((d, cl))
}

fn cmd_lpoly(q: u32, b: &str) -> Res<Report> {
    let b = poly(q, b)?;
    let l = l_polynomial_fast(&b)?;
    let coeffs = l.to_strings();
    let rows = coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.clone()]).collect();
    Ok(Report::new(
        json!({"command": "lpoly", "q": q, "b": b.to_string(), "coefficients": coeffs}),
        vec!["k", "coefficient"],
        rows,
    ))
}

fn cmd_classno(q: u32, m: &str, oracle: bool) -> Res<Report> {
    let m = poly(q, m)?;
    let h = class_number(&m)?;
    let mut json = json!({"command": "classno", "q": q, "m": m.to_string(), "h": h});
    let mut row = vec![m.to_string(), h.to_string()];
    let mut header = vec!["m", "h"];
    let mut pass = true;
    if oracle {
        let o = picard_oracle(&m)?;
        pass = o == h;
        json["oracle"] = json!(o);
        json["check"] = json!(verdict(pass));
        row.extend([o.to_string(), verdict(pass).to_string()]);
        header.extend(["oracle", "check"]);
    }
    Ok(Report { json, header, rows: vec![row], pass })
}

fn cmd_mass(q: u32, g: &GenusArgs, enumerate: bool) -> Res<Report> {
    let d = poly(q, &g.d)?;
    let d1 = match &g.d1 {
        Some(s) => poly(q, s)?,
        None => d.clone(),
    };
    let d0 = d
        .div_exact(&d1)
        .ok_or_else(|| Error::Precondition(format!("D1 = {d1} does not divide D = {d}")))?;
    let (stated, derived) = mass_formula_forms(&d, &d0, &d1)?;
    let mut json = json!({
        "command": "mass", "q": q, "D": d.to_string(), "D0": d0.monic().to_string(), "D1": d1.monic().to_string(),
        "formula": rs(&stated), "derivation_form": rs(&derived),
    });
    let mut header = vec!["D", "D1", "formula", "derivation_form"];
    let mut row = vec![d.to_string(), d1.monic().to_string(), rs(&stated), rs(&derived)];
    let mut pass = stated == derived;
    if enumerate {
        let args = GenusArgs { d: g.d.clone(), d1: Some(d1.to_string()) };
        let (_, cl) = class_list(q, &args, Method::Exhaustive)?;
        let m = cl.mass();
        pass &= m == stated;
        json["enumerated"] = json!(rs(&m));
        json["h"] = json!(cl.h());
        header.extend(["enumerated", "h"]);
        row.extend([rs(&m), cl.h().to_string()]);
    }
    json["check"] = json!(verdict(pass));
    header.push("check");
    row.push(verdict(pass).to_string());
    Ok(Report { json, header, rows: vec![row], pass })
}

fn gram_text(l: &TernaryLattice) -> String {
    let e = |i, j| l.entry(i, j).to_string();
    format!("[[{},{},{}],[{},{},{}],[{},{},{}]]", e(0, 0), e(0, 1), e(0, 2), e(1, 0), e(1, 1), e(1, 2), e(2, 0), e(2, 1), e(2, 2))
}

fn cmd_genus(q: u32, g: &GenusArgs, method: Method) -> Res<Report> {
    let (d, cl) = class_list(q, g, method)?;
    let mut json = cl.to_json();
    json["command"] = json!("genus");
    json["q"] = json!(q);
    json["D"] = json!(d.to_string());
    let rows = cl
        .representatives
        .iter()
        .zip(&cl.so_orders)
        .enumerate()
        .map(|(i, (l, n))| {
            let mu = l.minima().unwrap_or([0; 3]);
            vec![i.to_string(), gram_text(l), format!("{},{},{}", mu[0], mu[1], mu[2]), n.to_string()]
        })
        .collect();
    Ok(Report::new(json, vec!["class", "gram", "minima", "so_order"], rows))
}

fn cmd_represent(q: u32, g: &GenusArgs, a: &str) -> Res<Report> {
    let (d, cl) = class_list(q, g, Method::Neighbor)?;
    let a = poly(q, a)?;
    let lhs = siegel_lhs(&cl, &a)?;
    let r = factor(&d)?.factors.len() as i64;
    let m = -&(&a * &d);
    let h = class_number(&m)?;
    let rhs = Rational::from_integer(h.into()) / rpow(&int(2), r);
    let pass = lhs == rhs;
    let mut per_class = Vec::new();
    let mut rows = Vec::new();
    for (i, (l, &n)) in cl.representatives.iter().zip(&cl.so_orders).enumerate() {
        let reps = primitive_representations(l, &a)?.len();
        per_class.push(json!({"class": i, "R": reps, "so_order": n}));
        rows.push(vec![i.to_string(), reps.to_string(), n.to_string()]);
    }
    rows.push(vec!["sum".into(), rs(&lhs), String::new()]);
    rows.push(vec!["rhs".into(), rs(&rhs), verdict(pass).into()]);
    let json = json!({
        "command": "represent", "q": q, "D": d.to_string(), "a": a.to_string(),
        "classes": per_class, "weighted_sum": rs(&lhs), "minus_aD": m.to_string(), "h_minus_aD": h,
        "rhs": rs(&rhs), "check": verdict(pass),
    });
    Ok(Report { json, header: vec!["class", "R_primitive", "so_order"], rows, pass })
}

fn cmd_average(q: u32, d: &str, lmax: usize) -> Res<Report> {
    let d = poly(q, d)?;
    let lim = normalized_l_average_limit(&d)?;
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for l in 1..=lmax {
        let avg = fqt_forms::verify::normalized_l_average(&d, l)?;
        // float column for human reading only
        let dev = to_f64(&((&avg - &lim) / &lim));
        out.push(json!({"l": l, "average": rs(&avg), "relative_deviation_float": dev}));
        rows.push(vec![l.to_string(), rs(&avg), rs(&lim), format!("{dev:.6}")]);
    }
    Ok(Report::new(
        json!({"command": "average", "q": q, "D": d.to_string(), "limit": rs(&lim), "rows": out}),
        vec!["l", "average", "limit", "relative_deviation_float"],
        rows,
    ))
}

fn parse_twist(q: u32, s: &str) -> Res<Twist> {
    Ok(match s {
        "none" => Twist::None,
        "psi" => Twist::Psi,
        "phi-psi" => Twist::PhiPsi,
        _ => match s.strip_prefix("chi:") {
            Some(d) => Twist::ChiD(poly(q, d)?),
            None => return Err(Error::Parse(format!("unknown twist {s:?}")).into()),
        },
    })
}

fn cmd_epstein(q: u32, g: &GenusArgs, kmax: usize, twist: &str, file: Option<&std::path::Path>) -> Res<Report> {
    let tw = parse_twist(q, twist)?;
    let l = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let lf: LatticeFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            reduce(&lf.to_lattice()?)?.0
        }
        None => match &g.d1 {
            Some(_) => class_list(q, g, Method::Exhaustive)?.1.representatives.remove(0),
            None => seed_lattice(q, &poly(q, &g.d)?)?,
        },
    };
    let c = twisted_zeta_coefficients(&l, kmax, &tw)?;
    let rows = c.iter().enumerate().map(|(k, v)| vec![k.to_string(), v.to_string()]).collect();
    Ok(Report::new(
        json!({"command": "epstein", "q": l.q(), "lattice": l.to_json(), "twist": twist, "coefficients": c}),
        vec!["k", "coefficient"],
        rows,
    ))
}

fn cmd_verify(suite: SuiteArg, criterion: Option<u8>, timings: bool, seed: u64) -> Res<Report> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Fast => Suite::Fast,
    };
    let results = match criterion {
        Some(id) => vec![run_criterion(id, suite, seed)],
        None => run_suite(suite, seed),
    };
    let pass = results.iter().all(|r| r.pass);
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for r in &results {
        let mut v = json!({"id": r.id, "name": r.name, "result": verdict(r.pass), "detail": r.detail,
            "known_gap": KNOWN_GAPS.contains(&r.id)});
        let mut row = vec![r.id.to_string(), r.name.to_string(), verdict(r.pass).to_string(), r.detail.clone()];
        if timings {
            v["seconds"] = json!(r.seconds);
            row.push(format!("{:.1}", r.seconds));
        }
        items.push(v);
        rows.push(row);
    }
    let mut header = vec!["id", "name", "result", "detail"];
    if timings {
        header.push("seconds");
    }
    let json = json!({
        "command": "verify", "suite": suite, "seed": seed, "results": items,
        "passed": results.iter().filter(|r| r.pass).count(), "failed": results.iter().filter(|r| !r.pass).count(),
    });
    Ok(Report { json, header, rows, pass })
}

fn tsv_cell(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

fn emit(report: &Report, format: Format) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => {
            let mut body = json!({"schema": SCHEMA});
            if let (Value::Object(dst), Value::Object(src)) = (&mut body, &report.json) {
                for (k, v) in src {
                    dst.insert(k.clone(), v.clone());
                }
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&body).unwrap())
        }
        Format::Tsv => {
            writeln!(out, "#schema\t{SCHEMA}")?;
            writeln!(out, "{}", report.header.join("\t"))?;
            for r in &report.rows {
                writeln!(out, "{}", r.iter().map(|c| tsv_cell(c)).collect::<Vec<_>>().join("\t"))?;
            }
            Ok(())
        }
    }
}

fn fail_line(kind: &str, code: u8, message: &str) -> ExitCode {
    eprintln!("{}", json!({"schema": SCHEMA, "error": kind, "message": message}));
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Res<Report> {
    let q = cli.q;
    match &cli.cmd {
        Cmd::Lpoly { b } => cmd_lpoly(q, b),
        Cmd::Classno { m, oracle } => cmd_classno(q, m, *oracle),
        Cmd::Mass { g, enumerate } => cmd_mass(q, g, *enumerate),
        Cmd::Genus { g, method } => cmd_genus(q, g, *method),
        Cmd::Represent { g, a } => cmd_represent(q, g, a),
        Cmd::Average { d, lmax } => cmd_average(q, d, *lmax),
        Cmd::Epstein { g, kmax, twist, lattice } => cmd_epstein(q, g, *kmax, twist, lattice.as_deref()),
        Cmd::Verify { suite, criterion, timings } => cmd_verify(*suite, *criterion, *timings, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            return fail_line("usage", 2, first);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail_line("threads", 2, &e.to_string());
        }
    }
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.format) {
                return fail_line("io", 9, &e.to_string());
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let (kind, code) = e.kind_and_code();
            fail_line(kind, code, &e.message())
        }
    }
}

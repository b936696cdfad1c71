//! Command implementations for the `tsrforge` binary.

mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tsrforge::counting::{
    carlitz_srim, edge_counts, n_chi, sigma_lfsr_counts, tsri_m2, tsri_via_s, CountReport, SigmaKind, Which,
};
use tsrforge::srim::{enumerate_srim, srim_to_tsr};
use tsrforge::tsr::{decompose, enumerate_tsr, fiber_count, FiberMode, Filter};
use tsrforge::{arith, Error, Field, Matrix, Poly, DEFAULT_CEILING};

pub use verify::{Suite, VerifyOutcome, VerifySuite};

pub const CEILING_ENV: &str = "TSRFORGE_CEILING";

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "tsrforge", version, about = "Transformation shift registers over finite fields")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form counts, optionally checked against enumeration
    Count(CountArgs),
    /// List TSRs with their characteristic polynomials
    Enumerate(EnumerateArgs),
    /// All (m, n)-decompositions g^m h(X^n/g) of a polynomial
    Decompose(PolyArgs),
    /// Number of TSRs with a given characteristic polynomial
    Fiber(FiberArgs),
    /// Self-reciprocal irreducible monic polynomials
    Srim(SrimArgs),
    /// Run the verification grid
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Tsri,
    Tsrp,
    Srim,
    Nchi,
    Sigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMode {
    Closed,
    Enumerate,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Primitive,
    Irreducible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    All,
    Irreducible,
    Primitive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FiberModeArg {
    Bruteforce,
    Formula,
    Both,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Field order or descriptor such as 4, 2^2 or 2^2:x^2+x+1
    #[arg(long)]
    pub q: String,
    /// Polynomial for --what nchi
    #[arg(long)]
    pub poly: Option<String>,
    /// Polynomial family for --what sigma
    #[arg(long, value_enum, default_value_t = KindArg::Primitive)]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value_t = CountMode::Closed)]
    pub mode: CountMode,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: String,
    #[arg(long, value_enum, default_value_t = FilterArg::All)]
    pub filter: FilterArg,
    /// Same as the global --format
    #[arg(long, value_enum)]
    pub emit: Option<Format>,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: String,
}

#[derive(Args, Debug)]
pub struct FiberArgs {
    #[command(flatten)]
    pub target: PolyArgs,
    #[arg(long, value_enum, default_value_t = FiberModeArg::Both)]
    pub mode: FiberModeArg,
}

#[derive(Args, Debug)]
pub struct SrimArgs {
    /// Even degree 2m
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub q: String,
    /// Attach the order-two TSR realizing f(X+1)
    #[arg(long)]
    pub to_tsr: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Small)]
    pub suite: Suite,
    /// Largest enumeration run by any cell
    #[arg(long)]
    pub ceiling: Option<u64>,
}

/// A failed command with its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::CeilingExceeded { .. } | Error::Overflow | Error::FactorizationOverflow(_) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

type CliResult = Result<u8, CliError>;

/// Enumeration ceiling from `TSRFORGE_CEILING`, else `default`.
pub fn ceiling_from_env(default: u64) -> Result<u64, CliError> {
    match std::env::var(CEILING_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{CEILING_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

/// A bare prime power selects the default field of that order; anything
/// else is read as a field descriptor.
pub fn parse_field(q: &str) -> Result<Field, CliError> {
    let q = q.trim();
    let field = match q.parse::<u64>() {
        Ok(order) => Field::with_order(order)?,
        Err(_) => Field::parse(q)?,
    };
    Ok(field)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    let format = cli.format;
    match cli.command {
        Command::Count(args) => cmd_count(&args, format, out),
        Command::Enumerate(args) => cmd_enumerate(&args, args.emit.unwrap_or(format), out),
        Command::Decompose(args) => cmd_decompose(&args, format, out),
        Command::Fiber(args) => cmd_fiber(&args, format, out),
        Command::Srim(args) => cmd_srim(&args, format, out),
        Command::Verify(args) => cmd_verify(&args, format, out),
    }
}

/// A [`CountReport`] whose closed form may be absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub label: String,
    pub m: u32,
    pub n: u32,
    pub q: u64,
    pub closed_form: Option<u64>,
    pub enumerated: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl From<CountReport> for CountRow {
    fn from(r: CountReport) -> CountRow {
        CountRow {
            label: r.label,
            m: r.m,
            n: r.n,
            q: r.q,
            closed_form: Some(r.closed_form),
            enumerated: r.enumerated,
            matches: r.matches,
        }
    }
}

pub(crate) fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub(crate) fn write_csv<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn required<T: Copy>(v: Option<T>, name: &str, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("--{name} is required for --what {what}")))
}

fn count_tsr(m: usize, n: usize, field: &Field, filter: Filter, ceiling: u64) -> Result<u64, CliError> {
    let mut c = 0;
    for r in enumerate_tsr(m, n, field, filter, ceiling)? {
        r?;
        c += 1;
    }
    Ok(c)
}

/// Matrices over `field` of size `n` whose characteristic polynomial is `f`,
/// counted by scanning all `q^(n^2)` of them.
fn matrix_census(f: &Poly, ceiling: u64) -> Result<u64, CliError> {
    let field = f.field();
    let n = f.degree().unwrap_or(0);
    let q = field.card();
    let total = arith::checked_pow(q, (n * n) as u64)?;
    if total > ceiling {
        return Err(Error::CeilingExceeded {
            needed: total as u128,
            ceiling: ceiling as u128,
        }
        .into());
    }
    let mut count = 0;
    for mut idx in 0..total {
        let data = (0..n * n)
            .map(|_| {
                let d = field.element(idx % q);
                idx /= q;
                d
            })
            .collect::<Result<Vec<_>, _>>()?;
        if Matrix::new(field.clone(), n, n, data)?.char_poly()? == *f {
            count += 1;
        }
    }
    Ok(count)
}

/// Monic polynomials of degree `n` that are primitive (or irreducible),
/// by scanning.
pub(crate) fn scan_monic(field: &Field, n: usize, primitive: bool) -> Result<u64, CliError> {
    let mut c = 0;
    for f in Poly::monic_iter(field, n)? {
        let hit = if primitive {
            !f.coeff(0).is_zero() && f.is_primitive()?
        } else {
            f.is_irreducible()?
        };
        c += u64::from(hit);
    }
    Ok(c)
}

/// Closed form and label for `|TSRI(m, n; q)|`.
pub(crate) fn tsri_closed(m: u32, n: u32, field: &Field) -> Result<(&'static str, u64), CliError> {
    let q = field.card();
    Ok(if m == 1 || n == 1 {
        ("tsri_edge", edge_counts(m, n, q, Which::Tsri)?)
    } else if n == 2 {
        ("tsri_m2", tsri_m2(m, q)?)
    } else {
        ("tsri_via_S", tsri_via_s(m, n, field)?)
    })
}

fn count_params(args: &CountArgs, field: &Field) -> Result<(u32, u32), CliError> {
    let what = format!("{:?}", args.what).to_lowercase();
    Ok(match args.what {
        What::Tsri | What::Tsrp | What::Sigma => (required(args.m, "m", &what)?, required(args.n, "n", &what)?),
        What::Srim => (required(args.m, "m", &what)?, 2),
        What::Nchi => {
            let d = nchi_poly(args, field)?.degree().unwrap_or(0) as u32;
            (d, d)
        }
    })
}

fn nchi_poly(args: &CountArgs, field: &Field) -> Result<Poly, CliError> {
    let text = args
        .poly
        .as_deref()
        .ok_or_else(|| CliError::usage("--poly is required for --what nchi"))?;
    Ok(Poly::parse(field, text)?)
}

fn sigma_kind(k: KindArg) -> SigmaKind {
    match k {
        KindArg::Primitive => SigmaKind::Primitive,
        KindArg::Irreducible => SigmaKind::Irreducible,
    }
}

fn count_label(args: &CountArgs, m: u32, n: u32) -> String {
    match args.what {
        What::Tsri if m == 1 || n == 1 => "tsri_edge".into(),
        What::Tsri if n == 2 => "tsri_m2".into(),
        What::Tsri => "tsri_via_S".into(),
        What::Tsrp => "tsrp_edge".into(),
        What::Srim => "carlitz_srim".into(),
        What::Nchi => "n_chi".into(),
        What::Sigma => format!("sigma_{}", sigma_kind(args.kind)),
    }
}

fn count_closed(args: &CountArgs, field: &Field, m: u32, n: u32) -> Result<u64, CliError> {
    let q = field.card();
    Ok(match args.what {
        What::Tsri => tsri_closed(m, n, field)?.1,
        What::Tsrp => {
            if m != 1 && n != 1 {
                return Err(CliError::usage("a closed form for tsrp needs m = 1 or n = 1"));
            }
            edge_counts(m, n, q, Which::Tsrp)?
        }
        What::Srim => carlitz_srim(m, q)?,
        What::Nchi => n_chi(&nchi_poly(args, field)?)?,
        What::Sigma => sigma_lfsr_counts(m, n, q, sigma_kind(args.kind))?,
    })
}

fn count_enumerated(args: &CountArgs, field: &Field, m: u32, n: u32, ceiling: u64) -> Result<u64, CliError> {
    let (mu, nu) = (m as usize, n as usize);
    match args.what {
        What::Tsri => count_tsr(mu, nu, field, Filter::Irreducible, ceiling),
        What::Tsrp => count_tsr(mu, nu, field, Filter::Primitive, ceiling),
        What::Srim => Ok(enumerate_srim(2 * mu, field)?.len() as u64),
        What::Nchi => matrix_census(&nchi_poly(args, field)?, ceiling),
        What::Sigma => {
            if m != 1 {
                return Err(CliError::usage("sigma enumeration is available only for m = 1"));
            }
            scan_monic(field, nu, args.kind == KindArg::Primitive)
        }
    }
}

fn cmd_count(args: &CountArgs, format: Format, out: &mut dyn Write) -> CliResult {
    let field = parse_field(&args.q)?;
    let q = field.card();
    let ceiling = ceiling_from_env(DEFAULT_CEILING)?;
    let (m, n) = count_params(args, &field)?;
    let label = count_label(args, m, n);
    let row = match args.mode {
        CountMode::Closed => CountRow::from(CountReport::closed(&label, m, n, q, count_closed(args, &field, m, n)?)),
        CountMode::Both => {
            let closed = count_closed(args, &field, m, n)?;
            let enumerated = count_enumerated(args, &field, m, n, ceiling)?;
            CountRow::from(CountReport::closed(&label, m, n, q, closed).with_enumerated(enumerated))
        }
        CountMode::Enumerate => CountRow {
            label,
            m,
            n,
            q,
            closed_form: None,
            enumerated: Some(count_enumerated(args, &field, m, n, ceiling)?),
            matches: None,
        },
    };
    match format {
        Format::Json => write_json(out, &row)?,
        Format::Csv => write_csv(out, std::slice::from_ref(&row))?,
    }
    Ok(if row.matches == Some(false) { EXIT_MISMATCH } else { EXIT_OK })
}

#[derive(Serialize)]
struct TsrRow {
    g: String,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    char_poly: String,
    is_irreducible: bool,
    is_primitive: bool,
}

#[derive(Serialize)]
struct TsrCsvRow {
    g: String,
    #[serde(rename = "A")]
    a: String,
    char_poly: String,
    is_irreducible: bool,
    is_primitive: bool,
}

fn cmd_enumerate(args: &EnumerateArgs, format: Format, out: &mut dyn Write) -> CliResult {
    let field = parse_field(&args.q)?;
    let filter = match args.filter {
        FilterArg::All => Filter::All,
        FilterArg::Irreducible => Filter::Irreducible,
        FilterArg::Primitive => Filter::Primitive,
    };
    let ceiling = ceiling_from_env(DEFAULT_CEILING)?;
    let iter = enumerate_tsr(args.m, args.n, &field, filter, ceiling)?;
    let row = |r: tsrforge::TsrRecord| TsrRow {
        g: r.tsr.g().to_string(),
        a: r.tsr.block().format_rows(),
        char_poly: r.char_poly.to_string(),
        is_irreducible: r.class.is_irreducible,
        is_primitive: r.class.is_primitive,
    };
    match format {
        Format::Json => {
            // streamed as one JSON array
            let mut first = true;
            write!(out, "[")?;
            for r in iter {
                let rec = row(r?);
                write!(out, "{}\n  ", if first { "" } else { "," })?;
                serde_json::to_writer(&mut *out, &rec)?;
                first = false;
            }
            writeln!(out, "{}]", if first { "" } else { "\n" })?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in iter {
                let rec = row(r?);
                w.serialize(TsrCsvRow {
                    g: rec.g,
                    a: serde_json::to_string(&rec.a)?,
                    char_poly: rec.char_poly,
                    is_irreducible: rec.is_irreducible,
                    is_primitive: rec.is_primitive,
                })?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DecomposeOut {
    poly: String,
    field: String,
    m: usize,
    n: usize,
    decompositions: Vec<tsrforge::Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn cmd_decompose(args: &PolyArgs, format: Format, out: &mut dyn Write) -> CliResult {
    let field = parse_field(&args.q)?;
    let f = Poly::parse(&field, &args.poly)?;
    let ds = decompose(&f, args.m, args.n)?;
    match format {
        Format::Json => {
            let note = ds
                .is_empty()
                .then(|| format!("not ({},{})-decomposable", args.m, args.n));
            write_json(
                out,
                &DecomposeOut {
                    poly: f.to_string(),
                    field: field.descriptor(),
                    m: args.m,
                    n: args.n,
                    decompositions: ds,
                    note,
                },
            )?;
        }
        Format::Csv => write_csv(out, &ds)?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct FiberOut {
    poly: String,
    field: String,
    m: usize,
    n: usize,
    bruteforce: Option<u64>,
    formula: Option<u64>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn cmd_fiber(args: &FiberArgs, format: Format, out: &mut dyn Write) -> CliResult {
    let t = &args.target;
    let field = parse_field(&t.q)?;
    let f = Poly::parse(&field, &t.poly)?;
    let ceiling = ceiling_from_env(DEFAULT_CEILING)?;
    let want_brute = args.mode != FiberModeArg::Formula;
    let want_formula = args.mode != FiberModeArg::Bruteforce;
    let bruteforce = if want_brute {
        Some(fiber_count(&f, t.m, t.n, FiberMode::Bruteforce, ceiling)?)
    } else {
        None
    };
    let (formula, note) = if want_formula {
        match fiber_count(&f, t.m, t.n, FiberMode::Formula, ceiling) {
            Ok(c) => (Some(c), None),
            // with both modes requested, report why the formula is silent
            Err(e @ Error::NotUniquelyDecomposable(_)) if want_brute => (None, Some(e.to_string())),
            Err(e @ Error::VanishesAtZero) if want_brute => (None, Some(e.to_string())),
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None)
    };
    let matches = bruteforce.zip(formula).map(|(b, f)| b == f);
    let row = FiberOut {
        poly: f.to_string(),
        field: field.descriptor(),
        m: t.m,
        n: t.n,
        bruteforce,
        formula,
        matches,
        note,
    };
    match format {
        Format::Json => write_json(out, &row)?,
        Format::Csv => write_csv(out, std::slice::from_ref(&row))?,
    }
    Ok(if matches == Some(false) { EXIT_MISMATCH } else { EXIT_OK })
}

#[derive(Serialize)]
struct SrimCsvRow {
    f: String,
    h1: String,
    h: String,
    g: String,
    #[serde(rename = "A")]
    a: String,
    char_poly: String,
}

fn cmd_srim(args: &SrimArgs, format: Format, out: &mut dyn Write) -> CliResult {
    let field = parse_field(&args.q)?;
    let polys = enumerate_srim(args.degree, &field)?;
    if !args.to_tsr {
        match format {
            Format::Json => {
                let names: Vec<String> = polys.iter().map(|f| f.to_string()).collect();
                write_json(out, &names)?;
            }
            Format::Csv => {
                writeln!(out, "f")?;
                for f in &polys {
                    writeln!(out, "{f}")?;
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let records = polys.iter().map(srim_to_tsr).collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => write_json(out, &records)?,
        Format::Csv => {
            let rows = records
                .iter()
                .map(|r| {
                    Ok(SrimCsvRow {
                        f: r.f.to_string(),
                        h1: r.h1.to_string(),
                        h: r.h.to_string(),
                        g: r.tsr.g().to_string(),
                        a: serde_json::to_string(&r.tsr.block().format_rows())?,
                        char_poly: r.tsr.char_poly()?.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            write_csv(out, &rows)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, format: Format, out: &mut dyn Write) -> CliResult {
    let ceiling = match args.ceiling {
        Some(c) => c,
        None => ceiling_from_env(args.suite.default_ceiling())?,
    };
    let outcome = VerifySuite::new(args.suite, ceiling).run()?;
    match format {
        Format::Json => write_json(out, &outcome)?,
        Format::Csv => write_csv(out, &outcome.reports)?,
    }
    Ok(if outcome.all_match { EXIT_OK } else { EXIT_MISMATCH })
}

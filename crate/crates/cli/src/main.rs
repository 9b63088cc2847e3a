//! `chaincodes`: batch front end for the constacyclic-code library.
//!
//! Every verb writes exactly one document to stdout (JSON by default, an
//! aligned table with `--format text`, CSV for `scan --format csv`).
//! Errors go to stderr as a one-line JSON object with a machine-readable
//! code. Exit status: 0 success, 1 usage error, 2 domain error.

use std::io::{self, Write};
use std::process::ExitCode;
use std::sync::Arc;

use chaincodes::code::CodeDump;
use chaincodes::factorization::multiplicative_order;
use chaincodes::idempotent::{ElemRepr, IdempotentDump};
use chaincodes::oracle::{brute_dual, enumerate_ideals, expand};
use chaincodes::selfdual::{minus_one_witness, scan, ScanGrid, ScanReport, ScanRow, SkippedRow};
use chaincodes::{
    build_self_dual, exists_nontrivial_selfdual, primitive_idempotent_set, ConstacyclicCode, Elem, Execution,
    ExistenceQuery, IdempotentSet, Kind, Polynomial, RingSpec, SelfDuality,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "chaincodes", version, about = "Constacyclic codes over finite chain rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; `csv` is accepted by `scan` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Cyclic,
    Negacyclic,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Cyclic => Kind::Cyclic,
            KindArg::Negacyclic => Kind::Negacyclic,
        }
    }
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Residue characteristic.
    #[arg(long)]
    p: u64,
    /// Nilpotency index of gamma = p.
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Residue degree.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Full monic modulus h(Y), little-endian, e.g. `1,1,1` for Y^2+Y+1.
    #[arg(long, value_delimiter = ',')]
    h: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct AmbientArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Code length.
    #[arg(long)]
    n: usize,
    /// Shift constant: an integer, or a little-endian Y-coefficient list.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[command(flatten)]
    ambient: AmbientArgs,
    /// Gamma-exponents, one per factor in canonical order.
    #[arg(long, value_delimiter = ',', required = true)]
    exponents: Vec<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basic irreducible factors of X^n - lambda.
    Factor(AmbientArgs),
    /// Primitive idempotents and the reciprocal permutation.
    Idempotents(AmbientArgs),
    /// Describe the code with the given exponent vector.
    Code(CodeArgs),
    /// Dual of the code with the given exponent vector.
    Dual(CodeArgs),
    /// Self-orthogonality verdict for an exponent vector.
    Classify(CodeArgs),
    /// Construct a self-dual code.
    BuildSelfdual {
        #[command(flatten)]
        ambient: AmbientArgs,
        /// Require a code other than gamma^{t/2} R^n.
        #[arg(long)]
        nontrivial: bool,
    },
    /// Existence of a non-trivial self-dual code.
    Exists {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Cyclic)]
        kind: KindArg,
    },
    /// Existence table over a parameter grid. Lists are `a,b,c` or `a..b`.
    Scan {
        #[arg(long, value_parser = parse_list::<u64>)]
        p: List<u64>,
        #[arg(long, value_parser = parse_list::<u32>, default_value = "2")]
        t: List<u32>,
        #[arg(long, value_parser = parse_list::<usize>, default_value = "1")]
        r: List<usize>,
        #[arg(long, value_parser = parse_list::<u64>)]
        n: List<u64>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "cyclic")]
        kinds: Vec<KindArg>,
        /// Worker threads; the output does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Brute-force check rows with |R|^n up to this size.
        #[arg(long, default_value_t = 4096)]
        oracle_limit: u64,
    },
    /// Compare the exponent-vector description with exhaustive enumeration.
    OracleVerify(AmbientArgs),
}

#[derive(Clone, Debug)]
struct List<T>(Vec<T>);

/// Parses `a,b,c`, `a..b` (exclusive) or `a..=b`.
fn parse_list<T>(s: &str) -> Result<List<T>, String>
where
    T: std::str::FromStr + TryFrom<u64>,
{
    let one = |x: &str| x.trim().parse::<T>().map_err(|_| format!("invalid value {x:?}"));
    let bound = |x: &str| x.trim().parse::<u64>().map_err(|_| format!("invalid bound {x:?}"));
    let to_t = |v: u64| T::try_from(v).map_err(|_| format!("{v} out of range"));
    let values = if let Some((a, b)) = s.split_once("..=") {
        (bound(a)?..=bound(b)?).map(to_t).collect::<Result<_, _>>()?
    } else if let Some((a, b)) = s.split_once("..") {
        (bound(a)?..bound(b)?).map(to_t).collect::<Result<_, _>>()?
    } else {
        s.split(',').map(one).collect::<Result<_, _>>()?
    };
    Ok(List(values))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(chaincodes::Error),
    Io(io::Error),
}

impl From<chaincodes::Error> for CliError {
    fn from(e: chaincodes::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn ring_of(args: &RingArgs) -> CliResult<RingSpec> {
    Ok(RingSpec::new(args.p, args.t, args.r, args.h.as_deref())?)
}

fn parse_lambda(ring: &RingSpec, s: &str) -> CliResult<Elem> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    if body.contains(',') {
        let coeffs = body
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Usage(format!("invalid lambda {s:?}")))?;
        Ok(ring.from_coeffs(&coeffs)?)
    } else {
        let v: i64 = body
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid lambda {s:?}")))?;
        Ok(ring.from_int(v))
    }
}

fn idempotents_of(args: &AmbientArgs) -> CliResult<Arc<IdempotentSet>> {
    let ring = ring_of(&args.ring)?;
    let lambda = parse_lambda(&ring, &args.lambda)?;
    Ok(Arc::new(primitive_idempotent_set(&ring, args.n, lambda)?))
}

fn poly_repr(ring: &RingSpec, f: &Polynomial) -> Vec<ElemRepr> {
    f.coeffs().iter().map(|&c| ElemRepr::new(ring, c)).collect()
}

#[derive(Serialize)]
struct FactorDoc {
    verb: &'static str,
    ring: String,
    n: usize,
    lambda: ElemRepr,
    factors: Vec<Vec<ElemRepr>>,
    degrees: Vec<usize>,
}

#[derive(Serialize)]
struct IdempotentsDoc {
    verb: &'static str,
    #[serde(flatten)]
    dump: IdempotentDump,
}

#[derive(Serialize)]
struct CodeDoc {
    verb: &'static str,
    #[serde(flatten)]
    code: CodeDump,
    /// `w` as a length-n coefficient list.
    generator: Vec<ElemRepr>,
    verdict: SelfDuality,
}

#[derive(Serialize)]
struct DualDoc {
    verb: &'static str,
    code: CodeDump,
    dual: CodeDump,
}

#[derive(Serialize)]
struct ClassifyDoc {
    verb: &'static str,
    ring: String,
    n: usize,
    lambda: ElemRepr,
    exponents: Vec<u32>,
    verdict: SelfDuality,
}

#[derive(Serialize)]
struct BuildDoc {
    verb: &'static str,
    ring: String,
    n: usize,
    lambda: ElemRepr,
    nontrivial: bool,
    code: Option<CodeDump>,
}

#[derive(Serialize)]
struct ExistsDoc {
    verb: &'static str,
    q: u64,
    n: u64,
    t: u32,
    kind: Kind,
    exists: bool,
    order_q: u64,
    minus_one_witness: Option<u64>,
}

#[derive(Serialize)]
struct ScanDoc {
    verb: &'static str,
    columns: [&'static str; 10],
    rows: Vec<ScanRow>,
    skipped: Vec<SkippedRow>,
}

#[derive(Serialize)]
struct OracleDoc {
    verb: &'static str,
    ring: String,
    n: usize,
    lambda: ElemRepr,
    ideals: usize,
    expected: usize,
    bijection: bool,
    duals_match: bool,
    cardinalities_match: bool,
    ok: bool,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Document {
    Factor(FactorDoc),
    Idempotents(IdempotentsDoc),
    Code(CodeDoc),
    Dual(DualDoc),
    Classify(ClassifyDoc),
    Build(BuildDoc),
    Exists(ExistsDoc),
    Scan(ScanDoc),
    Oracle(OracleDoc),
}

fn code_of(args: &CodeArgs) -> CliResult<ConstacyclicCode> {
    let set = idempotents_of(&args.ambient)?;
    Ok(ConstacyclicCode::from_exponents(set, args.exponents.clone())?)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn all_exponents(k: usize, t: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..=t).map(move |v| {
                    let mut s = s.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

fn oracle_verify(args: &AmbientArgs) -> CliResult<OracleDoc> {
    let set = idempotents_of(args)?;
    let ring = set.ring().clone();
    let ideals = enumerate_ideals(&ring, set.n(), set.lambda(), Execution::Sequential)?;
    let t = ring.t();
    let codes: Vec<ConstacyclicCode> = all_exponents(set.len(), t)
        .into_iter()
        .map(|s| ConstacyclicCode::from_exponents(Arc::clone(&set), s))
        .collect::<Result<_, _>>()?;
    let mut hit = vec![0usize; ideals.len()];
    let mut duals_match = true;
    let mut cardinalities_match = true;
    for code in &codes {
        let words = expand(code)?;
        for (i, ideal) in ideals.iter().enumerate() {
            if ideal.same_words(&words) {
                hit[i] += 1;
            }
        }
        let dual = brute_dual(&words, Execution::Sequential)?;
        duals_match &= expand(&code.dual()?)?.same_words(&dual);
        cardinalities_match &= code.cardinality() == words.len().into();
    }
    let bijection = codes.len() == ideals.len() && hit.iter().all(|&h| h == 1);
    Ok(OracleDoc {
        verb: "oracle-verify",
        ring: ring.to_string(),
        n: set.n(),
        lambda: ElemRepr::new(&ring, set.lambda()),
        ideals: ideals.len(),
        expected: codes.len(),
        bijection,
        duals_match,
        cardinalities_match,
        ok: bijection && duals_match && cardinalities_match,
    })
}

fn execute(command: &Command) -> CliResult<Document> {
    Ok(match command {
        Command::Factor(args) => {
            let set = idempotents_of(args)?;
            let ring = set.ring();
            Document::Factor(FactorDoc {
                verb: "factor",
                ring: ring.to_string(),
                n: set.n(),
                lambda: ElemRepr::new(ring, set.lambda()),
                factors: set.factors().iter().map(|f| poly_repr(ring, f)).collect(),
                degrees: set.degrees(),
            })
        }
        Command::Idempotents(args) => Document::Idempotents(IdempotentsDoc {
            verb: "idempotents",
            dump: idempotents_of(args)?.dump(),
        }),
        Command::Code(args) => {
            let code = code_of(args)?;
            let ring = code.ring();
            let w = code.idempotent_set().ambient().to_vector(&code.generator_w());
            Document::Code(CodeDoc {
                verb: "code",
                code: code.dump(),
                generator: w.into_iter().map(|c| ElemRepr::new(ring, c)).collect(),
                verdict: code.classify_self(),
            })
        }
        Command::Dual(args) => {
            let code = code_of(args)?;
            Document::Dual(DualDoc {
                verb: "dual",
                code: code.dump(),
                dual: code.dual()?.dump(),
            })
        }
        Command::Classify(args) => {
            let code = code_of(args)?;
            let ring = code.ring();
            Document::Classify(ClassifyDoc {
                verb: "classify",
                ring: ring.to_string(),
                n: code.n(),
                lambda: ElemRepr::new(ring, code.lambda()),
                exponents: code.exponents().to_vec(),
                verdict: code.classify_self(),
            })
        }
        Command::BuildSelfdual { ambient, nontrivial } => {
            let set = idempotents_of(ambient)?;
            let ring = set.ring().clone();
            let code = build_self_dual(Arc::clone(&set), *nontrivial)?;
            Document::Build(BuildDoc {
                verb: "build-selfdual",
                ring: ring.to_string(),
                n: set.n(),
                lambda: ElemRepr::new(&ring, set.lambda()),
                nontrivial: *nontrivial,
                code: code.map(|c| c.dump()),
            })
        }
        Command::Exists { p, t, r, n, kind } => {
            if !is_prime(*p) {
                return Err(chaincodes::Error::NotPrime(*p).into());
            }
            let q = p
                .checked_pow(*r)
                .ok_or_else(|| CliError::Usage("p^r overflows".into()))?;
            let kind = Kind::from(*kind);
            let qr = ExistenceQuery { q, n: *n, t: *t, kind };
            let exists = exists_nontrivial_selfdual(&qr)?;
            let m = kind.coset_modulus(*n);
            Document::Exists(ExistsDoc {
                verb: "exists",
                q,
                n: *n,
                t: *t,
                kind,
                exists,
                order_q: if m == 1 { 1 } else { multiplicative_order(q, m)? },
                minus_one_witness: minus_one_witness(q, m)?,
            })
        }
        Command::Scan {
            p,
            t,
            r,
            n,
            kinds,
            jobs,
            oracle_limit,
        } => {
            let grid = ScanGrid {
                p: p.0.clone(),
                t: t.0.clone(),
                r: r.0.clone(),
                n: n.0.clone(),
                kinds: kinds.iter().map(|&k| k.into()).collect(),
                oracle_limit: *oracle_limit,
            };
            let report = if *jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(*jobs)
                    .build()
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                pool.install(|| scan(&grid, Execution::Parallel))
            } else {
                scan(&grid, Execution::Sequential)
            };
            Document::Scan(ScanDoc {
                verb: "scan",
                columns: ScanReport::COLUMNS,
                rows: report.rows,
                skipped: report.skipped,
            })
        }
        Command::OracleVerify(args) => {
            let doc = oracle_verify(args)?;
            if !doc.ok {
                write_json(&mut io::stdout().lock(), &Document::Oracle(doc))?;
                return Err(chaincodes::Error::VerificationFailed("oracle disagreement".into()).into());
            }
            Document::Oracle(doc)
        }
    })
}

fn write_json(out: &mut dyn Write, doc: &Document) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn write_table(out: &mut dyn Write, headers: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(headers.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn repr(e: &ElemRepr) -> String {
    match e {
        ElemRepr::Int(v) => v.to_string(),
        ElemRepr::Coeffs(c) => format!("[{}]", c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
    }
}

fn reprs(v: &[ElemRepr]) -> String {
    v.iter().map(repr).collect::<Vec<_>>().join(" ")
}

fn code_rows(code: &CodeDump) -> Vec<Vec<String>> {
    code.exponents
        .iter()
        .zip(&code.factors)
        .enumerate()
        .map(|(i, (s, d))| vec![i.to_string(), d.to_string(), s.to_string()])
        .collect()
}

fn write_text(out: &mut dyn Write, doc: &Document) -> io::Result<()> {
    match doc {
        Document::Factor(d) => {
            writeln!(out, "{} n={} lambda={}", d.ring, d.n, repr(&d.lambda))?;
            let rows: Vec<Vec<String>> = d
                .factors
                .iter()
                .enumerate()
                .map(|(i, f)| vec![i.to_string(), (f.len() - 1).to_string(), reprs(f)])
                .collect();
            write_table(out, &["index", "degree", "coefficients"], &rows)
        }
        Document::Idempotents(d) => {
            let dump = &d.dump;
            writeln!(out, "{} n={} lambda={}", dump.ring, dump.n, repr(&dump.lambda))?;
            let rows: Vec<Vec<String>> = dump
                .idempotents
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let sigma = dump.sigma.as_ref().map(|s| s[i]);
                    let unit = dump.units.as_ref().map(|u| reprs(&u[i]));
                    vec![i.to_string(), reprs(&dump.factors[i]), reprs(e), opt(&sigma), opt(&unit)]
                })
                .collect();
            write_table(out, &["index", "factor", "idempotent", "sigma", "unit"], &rows)
        }
        Document::Code(d) => {
            let c = &d.code;
            writeln!(out, "{} n={} lambda={}", c.ring, c.n, repr(&c.lambda))?;
            writeln!(out, "cardinality {}", c.cardinality)?;
            writeln!(out, "generator {}", reprs(&d.generator))?;
            writeln!(out, "verdict {}", d.verdict.as_str())?;
            write_table(out, &["index", "degree", "exponent"], &code_rows(c))
        }
        Document::Dual(d) => {
            writeln!(out, "{} n={}", d.code.ring, d.code.n)?;
            writeln!(
                out,
                "code lambda={} cardinality {}",
                repr(&d.code.lambda),
                d.code.cardinality
            )?;
            writeln!(
                out,
                "dual lambda={} cardinality {}",
                repr(&d.dual.lambda),
                d.dual.cardinality
            )?;
            let rows: Vec<Vec<String>> = (0..d.code.exponents.len())
                .map(|i| {
                    vec![
                        i.to_string(),
                        d.code.exponents[i].to_string(),
                        d.dual.exponents[i].to_string(),
                    ]
                })
                .collect();
            write_table(out, &["index", "code", "dual"], &rows)
        }
        Document::Classify(d) => {
            let s: Vec<String> = d.exponents.iter().map(u32::to_string).collect();
            writeln!(out, "{} n={} lambda={}", d.ring, d.n, repr(&d.lambda))?;
            writeln!(out, "exponents {}", s.join(","))?;
            writeln!(out, "verdict {}", d.verdict.as_str())
        }
        Document::Build(d) => {
            writeln!(out, "{} n={} lambda={}", d.ring, d.n, repr(&d.lambda))?;
            match &d.code {
                None => writeln!(out, "no {}self-dual code", if d.nontrivial { "non-trivial " } else { "" }),
                Some(c) => {
                    writeln!(out, "cardinality {}", c.cardinality)?;
                    write_table(out, &["index", "degree", "exponent"], &code_rows(c))
                }
            }
        }
        Document::Exists(d) => {
            let row = vec![
                d.q.to_string(),
                d.n.to_string(),
                d.t.to_string(),
                d.kind.as_str().to_string(),
                d.exists.to_string(),
                d.order_q.to_string(),
                opt(&d.minus_one_witness),
            ];
            write_table(out, &["q", "n", "t", "kind", "exists", "order_q", "minus_one_witness"], &[row])
        }
        Document::Scan(d) => {
            let rows: Vec<Vec<String>> = d.rows.iter().map(scan_cells).collect();
            write_table(out, &d.columns, &rows)?;
            for s in &d.skipped {
                writeln!(out, "skipped p={} t={} r={} n={} {}: {}", s.p, s.t, s.r, s.n, s.kind.as_str(), s.reason)?;
            }
            Ok(())
        }
        Document::Oracle(d) => {
            writeln!(out, "{} n={} lambda={}", d.ring, d.n, repr(&d.lambda))?;
            writeln!(out, "ideals {} expected {}", d.ideals, d.expected)?;
            writeln!(out, "bijection {}", d.bijection)?;
            writeln!(out, "duals_match {}", d.duals_match)?;
            writeln!(out, "cardinalities_match {}", d.cardinalities_match)
        }
    }
}

fn scan_cells(r: &ScanRow) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.t.to_string(),
        r.r.to_string(),
        r.q.to_string(),
        r.n.to_string(),
        r.kind.as_str().to_string(),
        r.exists.to_string(),
        r.order_q.to_string(),
        opt(&r.minus_one_witness),
        opt(&r.oracle_checked),
    ]
}

fn write_csv(out: &mut dyn Write, doc: &Document) -> CliResult<()> {
    let Document::Scan(d) = doc else {
        return Err(CliError::Usage("--format csv is only supported by scan".into()));
    };
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io(io::Error::other(e));
    w.write_record(d.columns).map_err(csv_err)?;
    for row in &d.rows {
        let cells: Vec<String> = scan_cells(row)
            .into_iter()
            .map(|c| if c == "-" { String::new() } else { c })
            .collect();
        w.write_record(&cells).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Scan { .. }) {
        return Err(CliError::Usage("--format csv is only supported by scan".into()));
    }
    let doc = execute(&cli.command)?;
    match cli.format {
        Format::Json => write_json(out, &doc)?,
        Format::Text => write_text(out, &doc)?,
        Format::Csv => write_csv(out, &doc)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'a str,
    message: String,
}

fn report(code: &str, message: String) {
    let doc = ErrorDoc { error: code, message };
    eprintln!("{}", serde_json::to_string(&doc).expect("plain strings serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("usage", e.to_string().trim_end().to_string());
            return ExitCode::from(1);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            report("usage", msg);
            ExitCode::from(1)
        }
        Err(CliError::Domain(e)) => {
            report(e.code(), e.to_string());
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            report("io", e.to_string());
            ExitCode::from(2)
        }
    }
}

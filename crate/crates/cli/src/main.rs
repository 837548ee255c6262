mod store;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polytc::certificates::{
    certify_all, certify_with, BoundsReport, Certificate, CertificateJson, Outcome, SearchLimits,
};
use polytc::cohomology::CohomologyPresentation;
use polytc::combinatorics::{
    enumerate_codes, GeneticCode, LengthVector, Validation, ENUM_MAX_N, ENUM_MIN_N,
};
use polytc::parametric::{
    reproduce_bigtable, tt_csv, tt_markdown, verify_table_tt, TtRow, COLUMNS,
};
use serde::Serialize;
use store::{to_pretty, RunManifest, Store, MANIFEST};

#[derive(Parser)]
#[command(
    name = "polytc",
    version,
    about = "Genetic codes, mod-2 cohomology and TC lower-bound certificates for planar polygon spaces"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genetic code of a length vector.
    Code(CodeArgs),
    /// All genetic codes for one n.
    Enumerate(EnumerateArgs),
    /// Search for, or re-check, a lower-bound certificate.
    Certify(CertifyArgs),
    /// Reproduce the reference tables.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Md,
}

#[derive(Args)]
struct CodeArgs {
    /// Comma-separated side lengths, e.g. `1,1,4,4,4`.
    lengths: Option<String>,
    #[arg(long = "lengths", conflicts_with = "lengths")]
    lengths_flag: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Store a realizing length vector with each code.
    #[arg(long)]
    realize: bool,
    #[arg(long, default_value = "polytc-out")]
    out: PathBuf,
    /// Permit n = 9 (slow).
    #[arg(long)]
    allow_n9: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct CertifyArgs {
    /// Code in digit form (`7521,762`) or JSON.
    #[arg(long, conflicts_with_all = ["lengths", "verify", "all"])]
    code: Option<String>,
    #[arg(long, conflicts_with_all = ["verify", "all"])]
    lengths: Option<String>,
    /// Re-check a stored certificate.
    #[arg(long, conflicts_with = "all")]
    verify: Option<PathBuf>,
    /// Certify every code for `--n`.
    #[arg(long, requires = "n")]
    all: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value = "polytc-out")]
    out: PathBuf,
    #[arg(long, default_value_t = polytc::certificates::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long, conflicts_with_all = ["big", "betti"])]
    tt: bool,
    #[arg(long, conflicts_with = "betti")]
    big: bool,
    #[arg(long, value_name = "N")]
    betti: Option<usize>,
    /// Compare against the bundled reference tables.
    #[arg(long)]
    diff: bool,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
}

enum Failure {
    Abstain,
    Invalid(String),
    Verification(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Abstain => 2,
            Failure::Invalid(_) => 3,
            Failure::Verification(_) => 4,
            Failure::Io(_) => 1,
        }
    }
}

impl From<polytc::Error> for Failure {
    fn from(e: polytc::Error) -> Self {
        match e {
            polytc::Error::Verification(_) => Failure::Verification(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Code(a) => cmd_code(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Tables(a) => cmd_tables(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Abstain => {}
                Failure::Invalid(m) | Failure::Verification(m) | Failure::Io(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(f.code())
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> CmdResult {
    print!("{}", String::from_utf8_lossy(&to_pretty(value)?));
    Ok(())
}

fn parse_lengths(text: &str) -> Result<LengthVector, Failure> {
    Ok(text.parse::<LengthVector>()?)
}

fn cmd_code(a: CodeArgs) -> CmdResult {
    let text = a
        .lengths
        .or(a.lengths_flag)
        .ok_or_else(|| Failure::Invalid("no lengths given".into()))?;
    let lengths = parse_lengths(&text)?;
    let code = GeneticCode::of_lengths(&lengths)?;
    match a.format {
        Format::Json => {
            print_json(&serde_json::json!({ "code": code.text(), "genes": code.to_json() }))
        }
        _ => {
            println!("{}", code.text());
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CodeRecord {
    text: String,
    #[serde(flatten)]
    code: polytc::combinatorics::CodeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<u64>>,
    manifest: String,
}

fn integer_lengths(lv: &LengthVector) -> Result<Vec<u64>, Failure> {
    lv.integer_lengths()
        .iter()
        .map(|x| {
            u64::try_from(x)
                .map_err(|_| Failure::Invalid(format!("length {x} does not fit in 64 bits")))
        })
        .collect()
}

fn cmd_enumerate(a: EnumerateArgs) -> CmdResult {
    let max = if a.allow_n9 { ENUM_MAX_N } else { 8 };
    if !(ENUM_MIN_N..=max).contains(&a.n) {
        return Err(Failure::Invalid(format!(
            "n = {} outside {ENUM_MIN_N}..={max}",
            a.n
        )));
    }
    let start = Instant::now();
    let en = enumerate_codes(a.n)?;
    let store = Store::open(&a.out)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("n".to_string(), a.n.to_string());
    inputs.insert("realize".to_string(), a.realize.to_string());
    let mut manifest = RunManifest::new("enumerate", inputs);
    let mut section = store::Section::default();
    for rc in &en.codes {
        let record = CodeRecord {
            text: rc.code.text(),
            code: rc.code.to_json(),
            lengths: if a.realize {
                Some(integer_lengths(&rc.lengths)?)
            } else {
                None
            },
            manifest: MANIFEST.to_string(),
        };
        let (rel, sha) = store.put(&store.code_path(a.n, &rc.code.slug()), &to_pretty(&record)?)?;
        manifest.outputs.push(rel.clone());
        section.sha256.insert(rel, sha);
    }
    section.count = en.codes.len();
    let mut index = store.load_index()?;
    index.codes.insert(format!("n={}", a.n), section);
    store.save_index(&index)?;
    manifest.finish(start.elapsed(), &store)?;
    match a.format {
        Format::Json => print_json(&serde_json::json!({
            "n": a.n,
            "count": en.codes.len(),
            "codes": en.codes.iter().map(|c| c.code.text()).collect::<Vec<_>>(),
        })),
        _ => {
            for rc in &en.codes {
                println!("{}", rc.code.text());
            }
            println!("count: {}", en.codes.len());
            Ok(())
        }
    }
}

fn read_code(text: &str) -> Result<GeneticCode, Failure> {
    let code: GeneticCode = text.parse()?;
    match code.validate() {
        Validation::Ok => Ok(code),
        Validation::Conflict(w) => Err(Failure::Invalid(format!(
            "{code} is inconsistent: {w} would be both short and long"
        ))),
    }
}

fn store_certificate(
    store: &Store,
    cert: &Certificate,
    index: &mut store::Index,
) -> Result<String, Failure> {
    let mut json = cert.to_json()?;
    json.manifest = Some(MANIFEST.to_string());
    let (rel, sha) = store.put(&store.cert_path(&cert.code.slug()), &to_pretty(&json)?)?;
    index.certs.sha256.insert(rel.clone(), sha);
    index.certs.count = index.certs.sha256.len();
    Ok(rel)
}

fn cmd_certify(a: CertifyArgs) -> CmdResult {
    if let Some(path) = &a.verify {
        return cmd_verify(path, a.format);
    }
    let limits = SearchLimits {
        budget: a.budget,
        ..SearchLimits::default()
    };
    if a.all {
        return cmd_certify_all(a.n.expect("required by clap"), &a.out, &limits, a.format);
    }
    let (code, lengths) = match (&a.code, &a.lengths) {
        (Some(c), _) => (read_code(c)?, None),
        (None, Some(l)) => {
            let lv = parse_lengths(l)?;
            (GeneticCode::of_lengths(&lv)?, Some(lv))
        }
        _ => {
            return Err(Failure::Invalid(
                "give --code, --lengths, --verify or --all".into(),
            ))
        }
    };
    if let Some(n) = a.n {
        if n != code.n() {
            return Err(Failure::Invalid(format!(
                "--n {n} but the code has n = {}",
                code.n()
            )));
        }
    }
    let start = Instant::now();
    let outcome = certify_with(&code, lengths, &limits)?;
    let report = BoundsReport::from_outcome(&code, &outcome);
    let mut path = None;
    if let Outcome::Certified(cert) = &outcome {
        let store = Store::open(&a.out)?;
        let mut index = store.load_index()?;
        let mut inputs = BTreeMap::new();
        inputs.insert("code".to_string(), code.text());
        let mut manifest = RunManifest::new("certify", inputs);
        let rel = store_certificate(&store, cert, &mut index)?;
        manifest.outputs.push(rel.clone());
        store.save_index(&index)?;
        manifest.finish(start.elapsed(), &store)?;
        path = Some(a.out.join(rel));
    }
    match a.format {
        Format::Json => {
            let cert = match &outcome {
                Outcome::Certified(c) => Some(c.to_json()?),
                Outcome::Abstain(_) => None,
            };
            print_json(
                &serde_json::json!({ "code": code.text(), "report": report, "certificate": cert }),
            )?;
        }
        _ => {
            println!("{}: {report}", code.text());
            if let Some(p) = &path {
                println!("certificate: {}", p.display());
            }
        }
    }
    match outcome {
        Outcome::Certified(_) => Ok(()),
        Outcome::Abstain(_) => Err(Failure::Abstain),
    }
}

fn cmd_verify(path: &Path, format: Format) -> CmdResult {
    let bytes = std::fs::read(path)?;
    let json: CertificateJson = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::Verification(format!("unreadable certificate: {e}")))?;
    let cert = Certificate::from_json(&json).map_err(|e| Failure::Verification(e.to_string()))?;
    cert.verify()
        .map_err(|e| Failure::Verification(e.to_string()))?;
    match format {
        Format::Json => print_json(
            &serde_json::json!({ "code": cert.code.text(), "verified": true, "bound": cert.bound() }),
        ),
        _ => {
            println!("verified: {} TC >= {}", cert.code.text(), cert.bound());
            Ok(())
        }
    }
}

fn cmd_certify_all(n: usize, out: &Path, limits: &SearchLimits, format: Format) -> CmdResult {
    if !(5..=8).contains(&n) {
        return Err(Failure::Invalid(format!(
            "--all supports 5 <= n <= 8, got {n}"
        )));
    }
    let start = Instant::now();
    let en = enumerate_codes(n)?;
    let jobs: Vec<(GeneticCode, Option<LengthVector>)> = en
        .codes
        .iter()
        .map(|c| (c.code.clone(), Some(c.lengths.clone())))
        .collect();
    let outcomes = certify_all(&jobs, limits);
    let store = Store::open(out)?;
    let mut index = store.load_index()?;
    let mut inputs = BTreeMap::new();
    inputs.insert("n".to_string(), n.to_string());
    inputs.insert("all".to_string(), "true".to_string());
    let mut manifest = RunManifest::new("certify", inputs);
    let mut lines = Vec::new();
    let mut certified = 0;
    let mut abstained = Vec::new();
    for ((code, _), outcome) in jobs.iter().zip(outcomes) {
        let outcome = outcome?;
        let report = BoundsReport::from_outcome(code, &outcome);
        match &outcome {
            Outcome::Certified(cert) => {
                certified += 1;
                manifest
                    .outputs
                    .push(store_certificate(&store, cert, &mut index)?);
            }
            Outcome::Abstain(reason) => abstained.push((code.text(), reason.to_string())),
        }
        lines.push((code.text(), report));
    }
    store.save_index(&index)?;
    manifest.finish(start.elapsed(), &store)?;
    match format {
        Format::Json => print_json(&serde_json::json!({
            "n": n,
            "total": jobs.len(),
            "certified": certified,
            "abstained": abstained.iter().map(|(c, r)| serde_json::json!({ "code": c, "reason": r })).collect::<Vec<_>>(),
        })),
        _ => {
            for (code, report) in &lines {
                println!("{code}: {report}");
            }
            println!("certified {certified}/{}", jobs.len());
            let list: Vec<&str> = abstained.iter().map(|(c, _)| c.as_str()).collect();
            println!("abstained: {}", list.join(" "));
            Ok(())
        }
    }
}

fn cmd_tables(a: TablesArgs) -> CmdResult {
    if a.big {
        table_big(a.diff, a.format)
    } else if a.tt {
        table_tt(a.diff, a.format)
    } else if let Some(n) = a.betti {
        table_betti(n, a.format)
    } else {
        Err(Failure::Invalid(
            "choose one of --tt, --big, --betti N".into(),
        ))
    }
}

fn table_big(diff: bool, format: Format) -> CmdResult {
    let table = reproduce_bigtable();
    match format {
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => print_json(
            &table
                .rows
                .iter()
                .map(|(c, m)| {
                    let cols: BTreeMap<&str, bool> = COLUMNS
                        .iter()
                        .zip(m)
                        .map(|(col, x)| (col.label, *x))
                        .collect();
                    serde_json::json!({ "a": c.a, "b": c.b, "c": c.c, "columns": cols })
                })
                .collect::<Vec<_>>(),
        )?,
        _ => print!("{}", table.to_markdown()),
    }
    if !diff {
        return Ok(());
    }
    let cells = polytc::parametric::reference::BIGTABLE.len() * COLUMNS.len();
    let mismatches = table.diff_reference();
    let uncovered = table.uncovered();
    println!("{}/{cells} cells match", cells - mismatches.len());
    for (case, j) in &mismatches {
        println!("mismatch: {case} column {}", COLUMNS[*j].label);
    }
    for (case, class) in &uncovered {
        println!("uncovered: {case} in {class:?}");
    }
    if mismatches.is_empty() && uncovered.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification("table differs from reference".into()))
    }
}

fn table_tt(diff: bool, format: Format) -> CmdResult {
    let checks = verify_table_tt()?;
    match format {
        Format::Csv => print!("{}", tt_csv(&checks)),
        Format::Json => print_json(
            &checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "row": c.row.index + 1,
                        "gees": c.row.label(),
                        "n": c.n,
                        "product": c.product.to_string(),
                        "ignored": c.ignored.iter().map(|s| s.key()).collect::<Vec<_>>(),
                        "verified": c.ok(),
                    })
                })
                .collect::<Vec<_>>(),
        )?,
        _ => print!("{}", tt_markdown(&checks)),
    }
    if !diff {
        return Ok(());
    }
    let rows = TtRow::all();
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| {
            let mine: Vec<_> = checks.iter().filter(|c| c.row.index == r.index).collect();
            mine.is_empty() || mine.iter().any(|c| !c.ok())
        })
        .map(|r| r.label())
        .collect();
    println!("{}/{} rows verified", rows.len() - failed.len(), rows.len());
    for l in &failed {
        println!("failed: {l}");
    }
    for c in checks.iter().filter(|c| !c.ignored.is_empty()) {
        let keys: Vec<String> = c.ignored.iter().map(|s| s.key()).collect();
        println!(
            "note: {} n={} lists non-subgee support {}",
            c.row.label(),
            c.n,
            keys.join(" ")
        );
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification("Table rows failed".into()))
    }
}

fn table_betti(n: usize, format: Format) -> CmdResult {
    if !(ENUM_MIN_N..=8).contains(&n) {
        return Err(Failure::Invalid(format!(
            "n = {n} outside {ENUM_MIN_N}..=8"
        )));
    }
    let en = enumerate_codes(n)?;
    let rows: Vec<(String, Vec<usize>)> = en
        .codes
        .iter()
        .map(|c| {
            Ok((
                c.code.text(),
                CohomologyPresentation::new(&c.code)?.betti_numbers(),
            ))
        })
        .collect::<Result<_, polytc::Error>>()?;
    let palindromic = |b: &[usize]| b.iter().eq(b.iter().rev());
    match format {
        Format::Json => print_json(
            &rows
                .iter()
                .map(|(c, b)| serde_json::json!({ "code": c, "betti": b, "palindromic": palindromic(b) }))
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => {
            let mut s = String::from("code,betti,palindromic\n");
            for (c, b) in &rows {
                let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "\"{c}\",{},{}", bs.join(" "), palindromic(b));
            }
            print!("{s}");
        }
        _ => {
            let mut s = String::from("| code | betti | palindromic |\n|---|---|---|\n");
            for (c, b) in &rows {
                let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "| {c} | {} | {} |", bs.join(" "), if palindromic(b) { "yes" } else { "NO" });
            }
            print!("{s}");
        }
    }
    if rows.iter().all(|(_, b)| palindromic(b)) {
        Ok(())
    } else {
        Err(Failure::Verification(
            "non-palindromic Betti numbers".into(),
        ))
    }
}

//! `loewy`: batch front end for products in `R_n`, Loewy tables of
//! `R_n / p R_n`, verification reports and oracle cross-checks.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loewy_core::cache::{self, CACHE_DIR_ENV};
use loewy_core::theorems::{self, CheckOutcome, OracleConfig, VerificationReport};
use loewy_core::{oracles, CharElement, Composition, Error, FpAlgebra, Prime, StructureConstants};

#[derive(Parser, Debug)]
#[command(
    name = "loewy",
    version,
    about = "Character ring of S_n and the Loewy series of its reduction mod p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Directory holding structure-constant caches (defaults to $LOEWY_CACHE_DIR).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Raise the permutation-group brute-force bound from 5 to 6.
    #[arg(long, global = true)]
    slow_tests: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print φ_λ φ_μ in the φ-basis, optionally reduced mod p.
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long = "p", alias = "mod")]
        p: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Radical layers of R_n / p R_n and the Loewy length.
    Loewy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Full verification report for one (n, p).
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Oracle cross-checks of the structure constants for degree n.
    Oracle {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Verification reports for every n ≤ max-n and every listed prime.
    Sweep {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::SizeMismatch { .. }
            | Error::NotPrime(_)
            | Error::ForeignPartition(..)
            | Error::Precondition(_)
            | Error::BoundExceeded { .. } => CliError::Usage(e.to_string()),
            Error::Io(_) | Error::Cache(_) => CliError::Io(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command produced: rendered output and whether all checks passed.
struct Outcome {
    body: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> CliResult<bool> {
    let (common, outcome) = match command {
        Command::Product {
            n,
            lambda,
            mu,
            p,
            common,
        } => {
            let o = cmd_product(n, &lambda, &mu, p, &common)?;
            (common, o)
        }
        Command::Loewy { n, p, common } => {
            let o = cmd_loewy(n, p, &common)?;
            (common, o)
        }
        Command::Verify { n, p, common } => {
            let o = cmd_verify(n, p, &common)?;
            (common, o)
        }
        Command::Oracle { n, common } => {
            let o = cmd_oracle(n, &common)?;
            (common, o)
        }
        Command::Sweep {
            max_n,
            primes,
            common,
        } => {
            let o = cmd_sweep(max_n, &primes, &common)?;
            (common, o)
        }
    };
    emit(&outcome.body, common.out.as_deref())?;
    Ok(outcome.pass)
}

fn emit(body: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn cache_dir(common: &Common) -> Option<PathBuf> {
    common
        .cache
        .clone()
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
}

fn structure_constants(n: usize, common: &Common) -> CliResult<std::sync::Arc<StructureConstants>> {
    Ok(match cache_dir(common) {
        Some(dir) => cache::load_or_compute(&dir, n)?,
        None => StructureConstants::for_degree(n)?,
    })
}

fn prime(p: u64) -> CliResult<Prime> {
    Ok(Prime::new(p)?)
}

fn composition_of(s: &str, n: usize) -> CliResult<Composition> {
    let c: Composition = s.parse()?;
    if c.size() != n {
        return Err(CliError::Usage(format!("{s} is not a composition of {n}")));
    }
    Ok(c)
}

fn oracle_config(common: &Common) -> OracleConfig {
    OracleConfig::with_slow_tests(common.slow_tests)
}

fn cmd_product(
    n: usize,
    lambda: &str,
    mu: &str,
    p: Option<u64>,
    common: &Common,
) -> CliResult<Outcome> {
    let l = composition_of(lambda, n)?;
    let m = composition_of(mu, n)?;
    let sc = structure_constants(n, common)?;
    let basis = sc.basis();
    let product = sc.product(basis.position(&l)?, basis.position(&m)?);
    let shown = match p {
        None => product,
        Some(p) => {
            let alg = FpAlgebra::from_structure_constants(sc.clone(), prime(p)?);
            let v = alg.reduce(&product)?;
            CharElement::from_terms(
                n,
                v.support().map(|k| (basis.get(k).clone(), v.coords()[k])),
            )?
        }
    };
    let body = match common.format.unwrap_or(Format::Text) {
        Format::Text => format!("{shown}\n"),
        Format::Json => {
            let terms: serde_json::Map<String, serde_json::Value> = shown
                .terms()
                .map(|(k, c)| (k.to_string(), serde_json::Value::String(c.to_string())))
                .collect();
            format!("{}\n", serde_json::Value::Object(terms))
        }
        Format::Csv => {
            let mut s = String::from("partition,coefficient\n");
            for (k, c) in shown.terms() {
                let _ = writeln!(s, "\"{k}\",{c}");
            }
            s
        }
    };
    Ok(Outcome { body, pass: true })
}

fn cmd_loewy(n: usize, p: u64, common: &Common) -> CliResult<Outcome> {
    let p = prime(p)?;
    let alg = FpAlgebra::from_structure_constants(structure_constants(n, common)?, p);
    let (layers, _) = theorems::theorem_a_layers(&alg);
    let length = alg.loewy_length();
    let expected = n / p.as_usize() + 1;
    let series = alg.loewy_series();
    let body = match common.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = format!("n={n} p={p}\n");
            for (i, layer) in series.iter().enumerate() {
                let basis: Vec<String> = layer
                    .pivots()
                    .iter()
                    .map(|&k| alg.basis().get(k).to_string())
                    .collect();
                let _ = writeln!(s, "layer {i}: dim {} [{}]", layer.dim(), basis.join(" | "));
            }
            let dims: Vec<String> = series.iter().map(|l| l.dim().to_string()).collect();
            let _ = writeln!(
                s,
                "dims: {}; length {length} (expected {expected})",
                dims.join(" ")
            );
            s
        }
        Format::Json => {
            let doc = serde_json::json!({
                "n": n,
                "p": p.get(),
                "loewy_length": length,
                "expected_length": expected,
                "layers": layers,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("i,dim,expected_dim,subspace_equal\n");
            for l in &layers {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    l.i, l.dim, l.expected_dim, l.subspace_equal
                );
            }
            s
        }
    };
    Ok(Outcome {
        body,
        pass: length == expected,
    })
}

fn csv_rows(reports: &[VerificationReport]) -> String {
    let mut s = String::from("n,p,loewy_length,expected,pass\n");
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.n,
            r.p,
            r.loewy_length,
            r.expected_length,
            if r.pass() { "pass" } else { "fail" }
        );
    }
    s
}

fn text_summary(r: &VerificationReport) -> String {
    let dims: Vec<String> = r.layer_dims().iter().map(|d| d.to_string()).collect();
    let mut s = format!(
        "n={} p={}: {} (dims {}; length {}, expected {})\n",
        r.n,
        r.p,
        if r.pass() { "pass" } else { "FAIL" },
        dims.join(" "),
        r.loewy_length,
        r.expected_length
    );
    for (name, w) in &r.witnesses {
        let _ = writeln!(s, "  {name}: {w}");
    }
    s
}

fn render_reports(reports: &[VerificationReport], single: bool, format: Format) -> String {
    match format {
        Format::Json if single => format!("{}\n", reports[0].to_json()),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(reports).expect("json")),
        Format::Csv => csv_rows(reports),
        Format::Text => reports.iter().map(text_summary).collect(),
    }
}

fn cmd_verify(n: usize, p: u64, common: &Common) -> CliResult<Outcome> {
    let p = prime(p)?;
    structure_constants(n, common)?;
    let report = theorems::verify(n, p, oracle_config(common))?;
    let pass = report.pass();
    let body = render_reports(
        std::slice::from_ref(&report),
        true,
        common.format.unwrap_or(Format::Json),
    );
    Ok(Outcome { body, pass })
}

fn cmd_sweep(max_n: usize, primes: &[u64], common: &Common) -> CliResult<Outcome> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let primes = primes
        .iter()
        .map(|&p| prime(p))
        .collect::<CliResult<Vec<_>>>()?;
    for n in 1..=max_n {
        structure_constants(n, common)?;
    }
    let reports = theorems::sweep(max_n, &primes, oracle_config(common))?;
    let pass = reports.iter().all(|r| r.pass());
    let body = render_reports(&reports, false, common.format.unwrap_or(Format::Json));
    Ok(Outcome { body, pass })
}

fn describe(name: &str, outcome: &Option<CheckOutcome>, skipped: &str, all_pairs: bool) -> String {
    let suffix = if all_pairs { " (all pairs)" } else { "" };
    match outcome {
        None => format!("{name}: skipped ({skipped})"),
        Some(o) if o.pass => format!("{name}: ok{suffix}"),
        Some(o) => format!("{name}: FAIL ({})", o.witness.as_deref().unwrap_or("")),
    }
}

fn cmd_oracle(n: usize, common: &Common) -> CliResult<Outcome> {
    structure_constants(n, common)?;
    let config = oracle_config(common);
    let outcome = theorems::oracle_outcome(n, config)?;
    let bound = config
        .permutation_bound
        .unwrap_or(0)
        .min(oracles::HARD_BOUND);
    let skipped = format!("n > {bound}");
    let pass = [&outcome.eq5, &outcome.eq6, &outcome.classfun]
        .iter()
        .all(|o| o.as_ref().is_none_or(|o| o.pass));
    let body = match common.format.unwrap_or(Format::Text) {
        Format::Text => format!(
            "{}; {}; {}\n",
            describe("eq5", &outcome.eq5, &skipped, true),
            describe("eq6", &outcome.eq6, &skipped, true),
            describe("classfun", &outcome.classfun, "disabled", false)
        ),
        Format::Json | Format::Csv => {
            let flag = |o: &Option<CheckOutcome>| o.as_ref().map(|o| o.pass);
            let doc = serde_json::json!({
                "n": n,
                "eq5_oracle": flag(&outcome.eq5),
                "eq6_oracle": flag(&outcome.eq6),
                "classfun_oracle": flag(&outcome.classfun),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
    };
    Ok(Outcome { body, pass })
}

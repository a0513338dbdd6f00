//! Command-line front end: scans, certificates, verification, search,
//! and diagnostics, with stable ASCII text and JSON output.
//!
//! Exit codes are a stable contract: 0 success, 1 internal error,
//! 2 not applicable (hypotheses fail), 3 input error, 4 budget refusal.
//! Text tables are fixed-width and byte-identical across runs and
//! worker counts; randomized commands always report their seed.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::gbf::{
    self, CountingOutcome, Family, GbfFunction, GbfType, NonexistenceOutcome, PartitionReport,
    TripleReport,
};
use crate::modular::{applicability, primes_up_to, ApplicabilityReport, MaxExponent};
use crate::quadforms::{class_group, tp_certificate, verify_witness, TpCertificate};
use crate::search::{self, SearchMode, SearchResult, SearchSpec};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// A command failure carrying its exit code and a rendered message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    fn internal(message: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_INTERNAL,
            message: message.into(),
        }
    }

    fn not_applicable(message: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_NOT_APPLICABLE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_BUDGET,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gbfcert",
    version,
    about = "Exact verification, search, and nonexistence certificates for generalized bent functions"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans and sharded searches
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate t_p, class numbers, and hypothesis flags for primes p = 7 (mod 8)
    Scan {
        /// Upper bound (inclusive) on scanned primes
        #[arg(long)]
        limit: u64,
    },
    /// Compute t_p by both routes with the solution witness
    Tp { p: u64 },
    /// Emit a nonexistence certificate for the types [t_p, 2p^e]
    Certify {
        p: u64,
        /// Also write the certificate JSON to this path
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Check a function file for the exact bent property
    Verify {
        path: PathBuf,
        /// Dump the exact spectrum coefficient vectors
        #[arg(long)]
        spectrum: bool,
    },
    /// Search a type exhaustively or by seeded random sampling
    Search(SearchArgs),
    /// Partition diagnostics for order-2 shifts and the counting argument
    Diagnose(DiagnoseArgs),
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum FamilyArg {
    #[value(name = "qq")]
    QtoQ,
    #[value(name = "2m")]
    TwoToM,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::QtoQ => Family::QtoQ,
            FamilyArg::TwoToM => Family::TwoToM,
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
struct SearchArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Dimension of the domain
    #[arg(long)]
    n: u32,
    /// Codomain modulus (q for family qq, m for family 2m)
    #[arg(long, value_name = "MODULUS")]
    q: u64,
    /// Scan every value table in lexicographic order
    #[arg(long)]
    exhaustive: bool,
    /// Sample seeded random value tables
    #[arg(long)]
    random: bool,
    /// Sample count for random mode
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// RNG seed; derived and reported when omitted
    #[arg(long)]
    seed: Option<u64>,
    /// Fix f(0) = 0
    #[arg(long)]
    normalize: bool,
    /// Contiguous index shards executed in parallel
    #[arg(long, default_value_t = 1)]
    shards: u64,
    /// Candidate budget for exhaustive mode
    #[arg(long, default_value_t = search::DEFAULT_BUDGET)]
    budget: u64,
    /// Maximum number of witnesses kept in the result
    #[arg(long, default_value_t = search::DEFAULT_WITNESS_CAP)]
    witness_cap: usize,
}

#[derive(Args, Debug)]
struct DiagnoseArgs {
    /// Function file to diagnose
    path: Option<PathBuf>,
    /// Run only the counting argument for --t, --p, --e
    #[arg(long, conflicts_with = "path")]
    counting: bool,
    #[arg(long, requires = "counting")]
    t: Option<u32>,
    #[arg(long, requires = "counting")]
    p: Option<u64>,
    #[arg(long, requires = "counting")]
    e: Option<u32>,
}

/// Parse and execute, returning the rendered stdout text.
pub fn execute<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(err.to_string()),
                _ => Err(CliError::input(err.to_string())),
            };
        }
    };
    let json = cli.json;
    with_pool(cli.jobs, || match cli.command {
        Command::Scan { limit } => cmd_scan(limit, json),
        Command::Tp { p } => cmd_tp(p, json),
        Command::Certify { p, output } => cmd_certify(p, json, output.as_deref()),
        Command::Verify { path, spectrum } => cmd_verify(&path, spectrum, json),
        Command::Search(args) => cmd_search(&args, json),
        Command::Diagnose(args) => cmd_diagnose(&args, json),
    })
}

/// Parse, execute, and print; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match execute(args) {
        Ok(out) => {
            print!("{out}");
            EXIT_SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.exit_code
        }
    }
}

fn with_pool<R: Send>(
    jobs: Option<usize>,
    body: impl FnOnce() -> Result<R, CliError> + Send,
) -> Result<R, CliError> {
    match jobs {
        None => body(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::internal(format!("worker pool: {e}")))?
            .install(body),
    }
}

fn yn(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------- scan

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub p: u64,
    pub t_p: u32,
    pub h: u64,
    pub residue_ok: bool,
    pub half_order_ok: bool,
    pub wieferich_ok: bool,
    pub ord2: u64,
    pub applicable: bool,
    pub e_range: MaxExponent,
}

fn scan_rows(limit: u64) -> Result<Vec<ScanRow>, CliError> {
    use rayon::prelude::*;
    let primes: Vec<u64> = primes_up_to(limit)
        .into_iter()
        .filter(|p| p % 8 == 7)
        .collect();
    primes
        .par_iter()
        .map(|&p| -> Result<ScanRow, CliError> {
            let report = applicability(p);
            let cert = tp_certificate(p).map_err(|e| CliError::internal(e.to_string()))?;
            let h = class_group(p)
                .map_err(|e| CliError::internal(e.to_string()))?
                .h;
            Ok(ScanRow {
                p,
                t_p: cert.t_p,
                h,
                residue_ok: report.residue_ok,
                half_order_ok: report.half_order_ok,
                wieferich_ok: report.wieferich_ok,
                ord2: report.ord2.unwrap_or(0),
                applicable: report.applicable(),
                e_range: report.max_e,
            })
        })
        .collect()
}

fn cmd_scan(limit: u64, json: bool) -> Result<String, CliError> {
    let rows = scan_rows(limit)?;
    if json {
        return to_json(&rows);
    }
    let mut out = String::new();
    out.push_str(&format!(
        "{:>8} {:>5} {:>6} {:>11} {:>10} {:>11}  {}\n",
        "p", "t_p", "h", "half-order", "wieferich", "applicable", "e-range"
    ));
    for r in &rows {
        out.push_str(&format!(
            "{:>8} {:>5} {:>6} {:>11} {:>10} {:>11}  {}\n",
            r.p,
            r.t_p,
            r.h,
            yn(r.half_order_ok),
            yn(r.wieferich_ok),
            yn(r.applicable),
            r.e_range
        ));
    }
    Ok(out)
}

// ---------------------------------------------------- tp and certify

/// Archived certificate: everything needed to re-validate the claim
/// offline. Witness coordinates are decimal strings so the document
/// stays lossless and human-readable at any size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub tool: String,
    pub tool_version: String,
    pub p: u64,
    pub t_p: u32,
    pub witness_x: String,
    pub witness_y: String,
    pub route_class_order: u32,
    pub route_diophantine: u32,
    pub class_number: u64,
    pub conditions: CertificateConditions,
    pub e_range: MaxExponent,
    pub families: Vec<String>,
    pub nonexistent_types: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counting: Option<CountingDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateConditions {
    pub residue_ok: bool,
    pub half_order_ok: bool,
    pub wieferich_ok: bool,
    pub ord2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingDoc {
    pub t: u32,
    pub p: u64,
    pub e: u32,
    pub n_g: String,
    pub divisible_by_2t: bool,
    pub contradiction: bool,
}

impl From<&CountingOutcome> for CountingDoc {
    fn from(c: &CountingOutcome) -> CountingDoc {
        CountingDoc {
            t: c.t,
            p: c.p,
            e: c.e,
            n_g: c.n_g.to_string(),
            divisible_by_2t: c.divisible_by_2t,
            contradiction: c.contradiction,
        }
    }
}

pub const CERTIFICATE_SCHEMA_VERSION: &str = "1";

impl CertificateDocument {
    fn build(
        report: &ApplicabilityReport,
        tp: &TpCertificate,
        h: u64,
        counting: Option<&CountingOutcome>,
    ) -> Self {
        let p = tp.p;
        let t = tp.t_p;
        let (families, nonexistent_types) = match report.max_e {
            MaxExponent::AllExponents => (
                vec!["qq".to_string(), "2m".to_string()],
                vec![
                    format!("[n={t}, q=2*{p}^e] for all e >= 1 (family qq)"),
                    format!("[n={t}, m=2*{p}^e] for all e >= 1 (family 2m)"),
                ],
            ),
            MaxExponent::ExponentOneOnly => (
                vec!["qq".to_string(), "2m".to_string()],
                vec![
                    format!("[n={t}, q={}] (family qq)", 2 * p),
                    format!("[n={t}, m={}] (family 2m)", 2 * p),
                ],
            ),
            MaxExponent::NotApplicable => (Vec::new(), Vec::new()),
        };
        CertificateDocument {
            schema_version: CERTIFICATE_SCHEMA_VERSION.to_string(),
            tool: "gbfcert".to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            p,
            t_p: t,
            witness_x: tp.witness_x.to_string(),
            witness_y: tp.witness_y.to_string(),
            route_class_order: tp.route_class_order,
            route_diophantine: tp.route_diophantine,
            class_number: h,
            conditions: CertificateConditions {
                residue_ok: report.residue_ok,
                half_order_ok: report.half_order_ok,
                wieferich_ok: report.wieferich_ok,
                ord2: report.ord2.unwrap_or(0),
            },
            e_range: report.max_e,
            families,
            nonexistent_types,
            counting: counting.map(CountingDoc::from),
        }
    }

    /// Re-check the document invariants: schema, route agreement,
    /// oddness, and the witness equation x^2 + p*y^2 = 2^(t_p+2).
    pub fn validate(&self) -> Result<(), String> {
        if self.schema_version != CERTIFICATE_SCHEMA_VERSION {
            return Err(format!("unknown schema version {}", self.schema_version));
        }
        if self.route_class_order != self.t_p || self.route_diophantine != self.t_p {
            return Err(format!(
                "routes disagree: t_p = {}, class order {}, diophantine {}",
                self.t_p, self.route_class_order, self.route_diophantine
            ));
        }
        if self.t_p % 2 == 0 {
            return Err(format!("t_p = {} is even", self.t_p));
        }
        let x: BigUint = self
            .witness_x
            .parse()
            .map_err(|_| format!("witness_x {:?} is not a decimal integer", self.witness_x))?;
        let y: BigUint = self
            .witness_y
            .parse()
            .map_err(|_| format!("witness_y {:?} is not a decimal integer", self.witness_y))?;
        if !verify_witness(self.p, self.t_p, &x, &y) {
            return Err(format!(
                "witness fails: {}^2 + {}*{}^2 != 2^{}",
                x,
                self.p,
                y,
                self.t_p + 2
            ));
        }
        Ok(())
    }
}

/// Parse a certificate JSON document and re-validate its witness.
pub fn load_certificate(json: &str) -> Result<CertificateDocument, CliError> {
    let doc: CertificateDocument =
        serde_json::from_str(json).map_err(|e| CliError::input(format!("certificate: {e}")))?;
    doc.validate()
        .map_err(|e| CliError::input(format!("certificate: {e}")))?;
    Ok(doc)
}

fn refusal(report: &ApplicabilityReport, json: bool) -> CliError {
    if json {
        let body = serde_json::json!({
            "p": report.p,
            "applicable": false,
            "failed_hypotheses": report.failed_hypotheses(),
        });
        CliError::not_applicable(body.to_string())
    } else {
        let mut msg = format!("not applicable: p = {}\n  failed hypotheses:\n", report.p);
        for reason in report.failed_hypotheses() {
            msg.push_str(&format!("    - {reason}\n"));
        }
        CliError::not_applicable(msg.trim_end().to_string())
    }
}

fn tp_document(p: u64, json: bool) -> Result<(ApplicabilityReport, CertificateDocument), CliError> {
    let report = applicability(p);
    if !(report.prime && report.residue_ok) {
        return Err(refusal(&report, json));
    }
    let tp = tp_certificate(p).map_err(|e| CliError::internal(e.to_string()))?;
    let h = class_group(p)
        .map_err(|e| CliError::internal(e.to_string()))?
        .h;
    let counting = if report.applicable() {
        Some(
            gbf::counting_contradiction(tp.t_p, p, 1)
                .map_err(|e| CliError::internal(e.to_string()))?,
        )
    } else {
        None
    };
    let doc = CertificateDocument::build(&report, &tp, h, counting.as_ref());
    Ok((report, doc))
}

fn witness_line(doc: &CertificateDocument) -> String {
    format!(
        "witness: {}^2 + {}*{}^2 = 2^{}",
        doc.witness_x,
        doc.p,
        doc.witness_y,
        doc.t_p + 2
    )
}

fn cmd_tp(p: u64, json: bool) -> Result<String, CliError> {
    let (_, doc) = tp_document(p, json)?;
    if json {
        return to_json(&doc);
    }
    let mut out = String::new();
    out.push_str(&format!("p = {}\n", doc.p));
    out.push_str(&format!("t_p = {}\n", doc.t_p));
    out.push_str(&format!(
        "routes: class-order {}, diophantine {}\n",
        doc.route_class_order, doc.route_diophantine
    ));
    out.push_str(&format!("{}\n", witness_line(&doc)));
    out.push_str(&format!("class number h(-{}) = {}\n", doc.p, doc.class_number));
    Ok(out)
}

fn cmd_certify(p: u64, json: bool, output: Option<&Path>) -> Result<String, CliError> {
    let outcome = gbf::nonexistence_certificate(p).map_err(|e| CliError::internal(e.to_string()))?;
    let doc = match outcome {
        NonexistenceOutcome::NotApplicable { report } => return Err(refusal(&report, json)),
        NonexistenceOutcome::Certified(cert) => {
            let h = class_group(p)
                .map_err(|e| CliError::internal(e.to_string()))?
                .h;
            CertificateDocument::build(&cert.report, &cert.tp, h, Some(&cert.counting))
        }
    };
    let rendered_json = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::internal(e.to_string()))?
        + "\n";
    if let Some(path) = output {
        std::fs::write(path, &rendered_json)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    if json {
        return Ok(rendered_json);
    }
    let counting = doc.counting.as_ref().expect("certified implies counting");
    let mut out = String::new();
    out.push_str(&format!("certificate: p = {p}\n"));
    out.push_str(&format!(
        "  conditions: residue yes, half-order yes (ord2 = {}), wieferich {}\n",
        doc.conditions.ord2,
        yn(doc.conditions.wieferich_ok)
    ));
    out.push_str(&format!(
        "  t_p = {} (routes: class-order {}, diophantine {})\n",
        doc.t_p, doc.route_class_order, doc.route_diophantine
    ));
    out.push_str(&format!("  {}\n", witness_line(&doc)));
    out.push_str(&format!("  class number h(-{p}) = {}\n", doc.class_number));
    out.push_str(&format!("  e-range: {}\n", doc.e_range));
    for ty in &doc.nonexistent_types {
        out.push_str(&format!("  no GBF of type {ty}\n"));
    }
    out.push_str(&format!(
        "  counting: n_G = {} is odd but would need 2^{} | n_G: contradiction\n",
        counting.n_g, counting.t
    ));
    if let Some(path) = output {
        out.push_str(&format!("  written to {}\n", path.display()));
    }
    Ok(out)
}

// -------------------------------------------------------------- verify

fn load_function(path: &Path) -> Result<GbfFunction, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn coeff_vector(entry: &crate::cyclo::CycloElt) -> Vec<i64> {
    entry
        .canonical()
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("spectrum coefficients are domain-bounded"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub family: String,
    pub n: u32,
    pub modulus: u64,
    pub domain_size: u64,
    pub is_gbf: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<Vec<i64>>>,
}

fn cmd_verify(path: &Path, spectrum: bool, json: bool) -> Result<String, CliError> {
    let f = load_function(path)?;
    let ty = *f.gbf_type();
    let verdict = gbf::is_gbf(&f);
    let spec_dump = spectrum.then(|| {
        gbf::fourier(&f)
            .entries()
            .iter()
            .map(coeff_vector)
            .collect::<Vec<_>>()
    });
    if json {
        return to_json(&VerifyDoc {
            family: ty.family().to_string(),
            n: ty.n(),
            modulus: ty.modulus(),
            domain_size: ty.domain_size(),
            is_gbf: verdict,
            spectrum: spec_dump,
        });
    }
    let mut out = String::new();
    out.push_str(&format!(
        "type: {} (family {}), domain size {}\n",
        ty,
        ty.family(),
        ty.domain_size()
    ));
    out.push_str(&format!("GBF: {}\n", yn(verdict)));
    if let Some(entries) = spec_dump {
        out.push_str(&format!(
            "spectrum (exact coefficients on the power basis of Z[zeta_{}]):\n",
            ty.modulus()
        ));
        for (lambda, coeffs) in entries.iter().enumerate() {
            out.push_str(&format!("  F({lambda}) = {coeffs:?}\n"));
        }
    }
    Ok(out)
}

// -------------------------------------------------------------- search

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeDoc {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDoc {
    pub family: String,
    pub n: u32,
    pub modulus: u64,
    pub mode: ModeDoc,
    pub normalize: bool,
    pub budget: u64,
    pub witness_cap: usize,
    pub shards: u64,
    pub candidates: u64,
    pub witness_count: u64,
    pub exhausted: bool,
    pub witnesses: Vec<Vec<u64>>,
}

fn search_doc(result: &SearchResult, shards: u64) -> SearchDoc {
    let ty = result.spec.gbf_type;
    SearchDoc {
        family: ty.family().to_string(),
        n: ty.n(),
        modulus: ty.modulus(),
        mode: match result.spec.mode {
            SearchMode::Exhaustive => ModeDoc::Exhaustive,
            SearchMode::Random { sample_count, seed } => ModeDoc::Random {
                samples: sample_count,
                seed,
            },
        },
        normalize: result.spec.normalize,
        budget: result.spec.budget,
        witness_cap: result.spec.witness_cap,
        shards,
        candidates: result.candidates,
        witness_count: result.witness_count,
        exhausted: result.exhausted,
        witnesses: result
            .witnesses
            .iter()
            .map(|w| w.values().to_vec())
            .collect(),
    }
}

fn cmd_search(args: &SearchArgs, json: bool) -> Result<String, CliError> {
    let ty = GbfType::new(args.family.into(), args.n, args.q)
        .map_err(|e| CliError::input(e.to_string()))?;
    let mut derived_seed = None;
    let mode = if args.exhaustive {
        SearchMode::Exhaustive
    } else {
        let seed = args.seed.unwrap_or_else(|| {
            let s = rand::random::<u64>();
            derived_seed = Some(s);
            s
        });
        SearchMode::Random {
            sample_count: args.samples,
            seed,
        }
    };
    let spec = SearchSpec {
        gbf_type: ty,
        mode,
        normalize: args.normalize,
        budget: args.budget,
        witness_cap: args.witness_cap,
    };
    let result = match mode {
        SearchMode::Exhaustive => search::enumerate_sharded(&spec, args.shards),
        SearchMode::Random { .. } => search::random_search(&spec),
    }
    .map_err(|e| match e {
        search::SearchError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
        _ => CliError::input(e.to_string()),
    })?;

    if json {
        return to_json(&search_doc(&result, args.shards));
    }
    let mut out = String::new();
    match mode {
        SearchMode::Exhaustive => {
            out.push_str(&format!("search {ty} (family {}), exhaustive\n", ty.family()));
            out.push_str(&format!(
                "{} witnesses / {} candidates\n",
                result.witness_count, result.candidates
            ));
        }
        SearchMode::Random { sample_count, seed } => {
            out.push_str(&format!(
                "search {ty} (family {}), random ({sample_count} samples, seed {seed})\n",
                ty.family()
            ));
            if derived_seed.is_some() {
                out.push_str(&format!("seed: {seed} (derived)\n"));
            }
            out.push_str(&format!(
                "{} witnesses / {} samples\n",
                result.witness_count, result.candidates
            ));
        }
    }
    if !result.witnesses.is_empty() {
        out.push_str(&format!(
            "witnesses (first {} of {}):\n",
            result.witnesses.len(),
            result.witness_count
        ));
        for w in &result.witnesses {
            out.push_str(&format!("  {:?}\n", w.values()));
        }
    }
    Ok(out)
}

// ------------------------------------------------------------ diagnose

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftDoc {
    pub v: u64,
    pub coords: Vec<u64>,
    pub n_v: u64,
    pub m_v: u64,
    pub o_v: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDoc {
    pub u: u64,
    pub v: u64,
    pub w: u64,
    pub nnm: u64,
    pub nmn: u64,
    pub mnn: u64,
    pub mmm: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnoseDoc {
    pub family: String,
    pub n: u32,
    pub modulus: u64,
    pub is_gbf: bool,
    pub shifts: Vec<ShiftDoc>,
    pub triples: Vec<TripleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counting: Option<CountingDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn shift_doc(ty: &GbfType, r: &PartitionReport) -> ShiftDoc {
    ShiftDoc {
        v: r.v,
        coords: ty.decode(r.v),
        n_v: r.n_v,
        m_v: r.m_v,
        o_v: r.o_v,
    }
}

fn triple_doc(t: &TripleReport) -> TripleDoc {
    TripleDoc {
        u: t.u,
        v: t.v,
        w: t.w,
        nnm: t.nnm,
        nmn: t.nmn,
        mnn: t.mnn,
        mmm: t.mmm,
    }
}

fn render_counting(c: &CountingDoc) -> String {
    format!(
        "counting argument for type [t={}, q=2*{}^{}]:\n  n_G = {}\n  divisible by 2^{}: {}\n  contradiction: {}\n",
        c.t,
        c.p,
        c.e,
        c.n_g,
        c.t,
        yn(c.divisible_by_2t),
        yn(c.contradiction)
    )
}

fn cmd_diagnose(args: &DiagnoseArgs, json: bool) -> Result<String, CliError> {
    if args.counting {
        let (Some(t), Some(p), Some(e)) = (args.t, args.p, args.e) else {
            return Err(CliError::input(
                "--counting requires --t, --p, and --e".to_string(),
            ));
        };
        let outcome =
            gbf::counting_contradiction(t, p, e).map_err(|e| CliError::input(e.to_string()))?;
        let doc = CountingDoc::from(&outcome);
        return if json {
            to_json(&doc)
        } else {
            Ok(render_counting(&doc))
        };
    }

    let Some(path) = args.path.as_deref() else {
        return Err(CliError::input(
            "diagnose needs a function file or --counting".to_string(),
        ));
    };
    let f = load_function(path)?;
    let ty = *f.gbf_type();
    let shifts = ty.order_two_shifts();
    if shifts.is_empty() {
        let note = format!(
            "no order-2 elements: domain modulus {} is odd",
            ty.radix()
        );
        if json {
            return to_json(&DiagnoseDoc {
                family: ty.family().to_string(),
                n: ty.n(),
                modulus: ty.modulus(),
                is_gbf: gbf::is_gbf(&f),
                shifts: Vec::new(),
                triples: Vec::new(),
                counting: None,
                note: Some(note),
            });
        }
        return Ok(format!("diagnose {ty} (family {})\n{note}\n", ty.family()));
    }

    let census = gbf::sylow_census(&f).map_err(|e| CliError::internal(e.to_string()))?;
    // The triple table belongs to the q ≡ 2 (mod 4) analysis.
    let show_triples = ty.family() == Family::QtoQ && ty.modulus() % 4 == 2;
    let counting = gbf::match_certified_type(&ty)
        .map(|(t, p, e)| {
            gbf::counting_contradiction(t, p, e)
                .map(|c| CountingDoc::from(&c))
                .map_err(|e| CliError::internal(e.to_string()))
        })
        .transpose()?;

    let doc = DiagnoseDoc {
        family: ty.family().to_string(),
        n: ty.n(),
        modulus: ty.modulus(),
        is_gbf: gbf::is_gbf(&f),
        shifts: census.shifts.iter().map(|r| shift_doc(&ty, r)).collect(),
        triples: if show_triples {
            census.triples.iter().map(triple_doc).collect()
        } else {
            Vec::new()
        },
        counting,
        note: None,
    };
    if json {
        return to_json(&doc);
    }
    let mut out = String::new();
    out.push_str(&format!("diagnose {ty} (family {})\n", ty.family()));
    out.push_str(&format!("GBF: {}\n", yn(doc.is_gbf)));
    out.push_str(&format!("order-2 shifts: {}\n", doc.shifts.len()));
    for s in &doc.shifts {
        out.push_str(&format!(
            "  v = {:<6} coords {:?}: n_v = {}, m_v = {}, o_v = {}\n",
            s.v, s.coords, s.n_v, s.m_v, s.o_v
        ));
    }
    if show_triples {
        out.push_str(&format!(
            "triple intersections with u + v + w = 0: {}\n",
            doc.triples.len()
        ));
        for t in &doc.triples {
            out.push_str(&format!(
                "  ({}, {}, {}): NNM = {}, NMN = {}, MNN = {}, MMM = {}\n",
                t.u, t.v, t.w, t.nnm, t.nmn, t.mnn, t.mmm
            ));
        }
    }
    if let Some(c) = &doc.counting {
        out.push_str(&render_counting(c));
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::internal(e.to_string()))
}

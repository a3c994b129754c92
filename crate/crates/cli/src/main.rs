//! `slicegate`: command-line front end for knot invariants and slice-genus
//! obstructions.
//!
//! Exit codes: 0 on success, 1 when `--fail-on-obstruction` is set and an
//! obstruction to smooth sliceness was found, 2 on input errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use slicegate_core::exact::{parse_rational, rat, Exact, Rational};
use slicegate_core::knotdb::{self, ColumnMapping, Diagnostic, KnotRecord, Source, Store};
use slicegate_core::laurent::{fox_milnor, FoxMilnor, LaurentPoly};
use slicegate_core::obstruct::{aggregate_with, AggregateOptions, GenusBounds, ObstructionReport, Tri};
use slicegate_core::plfunc::{
    cable_sandwich, cobordism_inequality, euler_number_range, two_q_interval, upsilon_little,
    CobordismCheck, OssConvention, PLFunction,
};
use slicegate_core::seifert::{self, Angle, LtSignature, SeifertMatrix};
use slicegate_core::whitehead::{self, Clasp, WhiteheadParams};

#[derive(Parser)]
#[command(name = "slicegate", version, about = "Knot invariants and slice-genus obstructions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Knot store (JSON). Defaults to the built-in seed table.
    #[arg(long, global = true, env = "SLICEGATE_STORE")]
    store: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical invariants of a stored knot or a Seifert matrix file.
    Invariants {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        matrix: Option<PathBuf>,
        /// Levine-Tristram angle p/q (ω = e^{2πi p/q}); may be repeated.
        #[arg(long)]
        omega: Vec<String>,
    },
    /// Invariants and obstructions of a twisted Whitehead double.
    Whitehead {
        #[arg(long, value_parser = parse_clasp, allow_hyphen_values = true)]
        clasp: Clasp,
        #[arg(long, allow_negative_numbers = true)]
        twist: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        framing: i64,
        #[arg(long, default_value = "unknot")]
        companion: String,
        #[command(flatten)]
        conv: ConventionArg,
    },
    /// Aggregate every obstruction for one knot or the whole store.
    Obstruct {
        name: Option<String>,
        #[arg(long, conflicts_with_all = ["name", "all"])]
        matrix: Option<PathBuf>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Evaluate records in parallel (output order stays name-sorted).
        #[arg(long, requires = "all")]
        parallel: bool,
        /// Exit with status 1 if any knot is shown not to be smoothly slice.
        #[arg(long)]
        fail_on_obstruction: bool,
        #[command(flatten)]
        conv: ConventionArg,
    },
    /// Upsilon envelopes of the (p, q)-cable.
    CableBounds {
        #[arg(long)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        /// Knot name, PL function JSON, or a file containing it.
        #[arg(long)]
        upsilon: String,
    },
    /// Check the genus-b cobordism inequality |υ₀ − υ₁ + e/4| ≤ b/2.
    Cobordism {
        /// υ of the starting knot (p/q) or a knot name.
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, allow_negative_numbers = true)]
        euler: i64,
        #[arg(long, default_value_t = 1)]
        betti: u32,
    },
    /// Allowed normal Euler numbers for a band move to the (2, q)-cable.
    EulerRange {
        #[arg(long, allow_hyphen_values = true)]
        upsilon: String,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
    },
    /// Import a CSV invariant table into the store.
    Import {
        csv: PathBuf,
        /// Column mapping, e.g. `name=Name,seifert=V,signature=sigma`.
        #[arg(long = "map")]
        mapping: String,
    },
    /// Print a stored record.
    Show { name: String },
}

#[derive(Args)]
struct ConventionArg {
    /// Sign convention of the non-orientable Upsilon bound.
    #[arg(long, value_enum, default_value_t = Convention::Minus)]
    oss_convention: Convention,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Plus,
    Minus,
}

impl ConventionArg {
    fn options(&self) -> AggregateOptions {
        AggregateOptions {
            oss_convention: match self.oss_convention {
                Convention::Plus => OssConvention::Plus,
                Convention::Minus => OssConvention::Minus,
            },
        }
    }
}

fn parse_clasp(s: &str) -> Result<Clasp, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Text and JSON renderings of one command result.
trait Render: Serialize {
    fn text(&self) -> String;
}

fn emit<T: Render>(cli: &Cli, out: &T) -> Result<()> {
    let text = if cli.json {
        serde_json::to_string_pretty(out)? + "\n"
    } else {
        out.text()
    };
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let store = open_store(cli.store.as_deref())?;
    match &cli.command {
        Command::Invariants {
            name,
            matrix,
            omega,
        } => {
            let rec = select(&store, name.as_deref(), matrix.as_deref())?;
            emit(cli, &invariants(&rec, omega)?)?;
        }
        Command::Whitehead {
            clasp,
            twist,
            framing,
            companion,
            conv,
        } => {
            let p = WhiteheadParams::new(*clasp, *twist, *framing, companion.clone());
            let comp = store.lookup(companion)?;
            let rec = whitehead::record(&p, comp)?;
            let report = aggregate_with(&rec, &conv.options())?;
            warn(cli, &report);
            emit(cli, &WhiteheadOut::new(p, &rec, report))?;
        }
        Command::Obstruct {
            name,
            matrix,
            all,
            parallel,
            fail_on_obstruction,
            conv,
        } => {
            let opts = conv.options();
            let obstructed = if *all {
                let records: Vec<&KnotRecord> = store.records().collect();
                let run_one = |r: &&KnotRecord| BatchEntry::new(r, &opts);
                let entries: Vec<BatchEntry> = if *parallel {
                    records.par_iter().map(run_one).collect()
                } else {
                    records.iter().map(run_one).collect()
                };
                let any = entries
                    .iter()
                    .any(|e| e.report.as_ref().is_some_and(|r| r.obstructed()));
                emit(cli, &BatchOut { reports: entries })?;
                any
            } else {
                let rec = select(&store, name.as_deref(), matrix.as_deref())?;
                let report = aggregate_with(&rec, &opts)?;
                warn(cli, &report);
                let obstructed = report.obstructed();
                emit(cli, &ReportOut { name: rec.name.clone(), report })?;
                obstructed
            };
            if *fail_on_obstruction && obstructed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::CableBounds { p, q, upsilon } => {
            let f = upsilon_source(&store, upsilon)?;
            let (lower, upper) = cable_sandwich(&f, *p, *q)?;
            let interval = if *p == 2 {
                two_q_interval(*q).ok().map(|(a, b)| [exact(&a), exact(&b)])
            } else {
                None
            };
            emit(
                cli,
                &CableOut {
                    p: *p,
                    q: *q,
                    lower,
                    upper,
                    upsilon_interval: interval,
                },
            )?;
        }
        Command::Cobordism {
            from,
            to,
            euler,
            betti,
        } => {
            let c = CobordismCheck::new(
                upsilon_value(&store, from)?,
                upsilon_value(&store, to)?,
                *euler,
                *betti,
            )?;
            let lhs = &c.upsilon_start - &c.upsilon_end + rat(*euler, 4);
            let lhs = if lhs < rat(0, 1) { -lhs } else { lhs };
            emit(
                cli,
                &CobordismOut {
                    upsilon_start: exact(&c.upsilon_start),
                    upsilon_end: exact(&c.upsilon_end),
                    euler: c.euler,
                    betti: c.betti,
                    lhs: exact(&lhs),
                    bound: exact(&rat(i64::from(*betti), 2)),
                    holds: cobordism_inequality(&c),
                },
            )?;
        }
        Command::EulerRange { upsilon, q } => {
            let u = upsilon_value(&store, upsilon)?;
            let (lo, hi) = euler_number_range(&u, *q)?;
            emit(
                cli,
                &EulerOut {
                    upsilon: exact(&u),
                    q: *q,
                    lo,
                    hi,
                },
            )?;
        }
        Command::Import { csv, mapping } => {
            let path = cli
                .store
                .as_deref()
                .ok_or_else(|| anyhow!("import needs --store or SLICEGATE_STORE"))?;
            let mapping = ColumnMapping::parse(mapping)?;
            let ingested = knotdb::ingest_csv(csv, &mapping)?;
            let mut store = store;
            let names: Vec<String> = ingested.records.iter().map(|r| r.name.clone()).collect();
            for r in ingested.records {
                store.upsert(r)?;
            }
            store.save(path)?;
            emit(
                cli,
                &ImportOut {
                    store: path.display().to_string(),
                    imported: names,
                    diagnostics: ingested.diagnostics,
                },
            )?;
        }
        Command::Show { name } => {
            emit(cli, &ShowOut(store.lookup(name)?.clone()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn open_store(path: Option<&Path>) -> Result<Store> {
    match path {
        Some(p) if p.exists() => {
            Store::load(p).with_context(|| format!("loading store {}", p.display()))
        }
        _ => Ok(knotdb::seed_table()),
    }
}

fn select(store: &Store, name: Option<&str>, matrix: Option<&Path>) -> Result<KnotRecord> {
    match (name, matrix) {
        (Some(n), _) => Ok(store.lookup(n)?.clone()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            // either `{"n": .., "entries": ..}` or a bare array of rows
            let v = match serde_json::from_str::<Vec<Vec<i64>>>(&text) {
                Ok(rows) => SeifertMatrix::new(rows)?,
                Err(_) => serde_json::from_str::<SeifertMatrix>(&text)
                    .with_context(|| format!("malformed matrix file {}", path.display()))?,
            };
            let stem = path
                .file_stem()
                .map_or("matrix".into(), |s| s.to_string_lossy().into_owned());
            Ok(KnotRecord::from_matrix(stem, v))
        }
        (None, None) => bail!("give a knot name or --matrix FILE"),
    }
}

fn warn(cli: &Cli, report: &ObstructionReport) {
    if !cli.json {
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
    }
}

fn exact(r: &Rational) -> String {
    Exact(r).to_string()
}

fn upsilon_source(store: &Store, src: &str) -> Result<PLFunction> {
    if let Some(r) = store.get(src) {
        return r
            .invariants
            .upsilon
            .clone()
            .ok_or_else(|| anyhow!("knot `{src}` has no stored Upsilon function"));
    }
    let text = if Path::new(src).is_file() {
        std::fs::read_to_string(src)?
    } else {
        src.to_string()
    };
    serde_json::from_str(&text).with_context(|| format!("`{src}` is neither a knot name nor a PL function"))
}

fn upsilon_value(store: &Store, src: &str) -> Result<Rational> {
    // knot names like 3_1 would otherwise parse as integers
    if store.get(src).is_none() {
        if let Some(r) = parse_rational(src) {
            return Ok(r);
        }
    }
    Ok(upsilon_little(&upsilon_source(store, src)?)?)
}

#[derive(Serialize)]
struct FoxMilnorOut {
    passes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct LtOut {
    omega: String,
    signature: LtSignature,
    /// Non-singular values are certified by floating-point eigenvalues.
    approximate: bool,
}

#[derive(Serialize)]
struct InvariantsOut {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seifert_matrix: Option<SeifertMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus_bounds: Option<GenusBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signature: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alexander: Option<LaurentPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    arf: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fox_milnor: Option<FoxMilnorOut>,
    levine_tristram: Vec<LtOut>,
}

fn invariants(rec: &KnotRecord, omegas: &[String]) -> Result<InvariantsOut> {
    let v = rec.seifert_matrix.as_ref();
    let delta = v.map(seifert::alexander).or_else(|| rec.alexander.clone());
    let arf = match v {
        Some(m) if m.dim() <= seifert::ARF_BRUTE_FORCE_LIMIT => Some(seifert::arf(m)?),
        _ => rec
            .arf
            .or_else(|| delta.as_ref().and_then(|d| seifert::arf_murasugi(d).ok())),
    };
    let fm = match &delta {
        Some(d) => Some(match fox_milnor(d)? {
            FoxMilnor::Passes { witness } => FoxMilnorOut {
                passes: true,
                witness: Some(witness.to_string()),
                reason: None,
            },
            FoxMilnor::Fails(why) => FoxMilnorOut {
                passes: false,
                witness: None,
                reason: Some(why.to_string()),
            },
        }),
        None => None,
    };
    let mut lt = Vec::new();
    for o in omegas {
        let m = v.ok_or_else(|| anyhow!("--omega needs a Seifert matrix"))?;
        let r = parse_rational(o).ok_or_else(|| anyhow!("bad angle `{o}`, expected p/q"))?;
        let angle = Angle::new(
            r.numer().try_into().map_err(|_| anyhow!("angle too large"))?,
            r.denom().try_into().map_err(|_| anyhow!("angle too large"))?,
        )?;
        let sig = seifert::levine_tristram(m, angle)?;
        lt.push(LtOut {
            omega: angle.to_string(),
            signature: sig,
            approximate: matches!(sig, LtSignature::Value(_)) && angle.den != 2,
        });
    }
    Ok(InvariantsOut {
        name: rec.name.clone(),
        seifert_matrix: v.cloned(),
        genus_bounds: v.map(seifert::genus_bounds_from_matrix),
        signature: v.map(seifert::signature).or(rec.sigma),
        determinant: delta.as_ref().map(|d| d.value_at_minus_one().magnitude().to_string()),
        alexander: delta.clone(),
        arf,
        fox_milnor: fm,
        levine_tristram: lt,
    })
}

impl Render for InvariantsOut {
    fn text(&self) -> String {
        let mut s = format!("{}\n", self.name);
        if let Some(m) = &self.seifert_matrix {
            let _ = writeln!(s, "  Seifert matrix: {m}");
        }
        if let Some(x) = self.signature {
            let _ = writeln!(s, "  signature: {x}");
        }
        if let Some(x) = &self.determinant {
            let _ = writeln!(s, "  determinant: {x}");
        }
        if let Some(x) = &self.alexander {
            let _ = writeln!(s, "  Alexander polynomial: {x}");
        }
        if let Some(x) = self.arf {
            let _ = writeln!(s, "  Arf invariant: {x}");
        }
        if let Some(fm) = &self.fox_milnor {
            match (&fm.witness, &fm.reason) {
                (Some(w), _) => {
                    let _ = writeln!(s, "  Fox-Milnor: passes, f = {w}");
                }
                (_, Some(r)) => {
                    let _ = writeln!(s, "  Fox-Milnor: fails ({r})");
                }
                _ => {}
            }
        }
        if let Some(b) = &self.genus_bounds {
            let _ = writeln!(s, "  g4 ∈ {}, gamma4 ∈ {}", b.g4, b.gamma4);
        }
        for lt in &self.levine_tristram {
            let v = match lt.signature {
                LtSignature::Value(x) if lt.approximate => format!("{x} (approximate)"),
                LtSignature::Value(x) => x.to_string(),
                LtSignature::Singular => "singular (Δ(ω) = 0)".into(),
            };
            let _ = writeln!(s, "  Levine-Tristram σ at {}: {v}", lt.omega);
        }
        s
    }
}

fn report_text(report: &ObstructionReport) -> String {
    let v = &report.verdict;
    let top = match v.topologically_slice {
        Tri::Yes if report.rule("Freedman").is_some() => "topologically slice (Δ = 1)".to_string(),
        Tri::Yes => "topologically slice".to_string(),
        Tri::No => "not topologically slice".to_string(),
        Tri::Unknown => "topologically slice: unknown".to_string(),
    };
    let mut s = format!(
        "{top}; smoothly slice: {}; γ₄ ∈ {}",
        v.smoothly_slice, report.bounds.gamma4
    );
    let _ = write!(s, "\n  g4 ∈ {}", report.bounds.g4);
    if let Some(g3) = report.bounds.g3 {
        let _ = write!(s, ", g3 ∈ {g3}");
    }
    if let Some(c3) = report.bounds.gamma3 {
        let _ = write!(s, ", gamma3 ∈ {c3}");
    }
    let _ = write!(s, "\n  nonorientably slice: {}\n  rules:", v.nonorientably_slice);
    for r in &report.applied_rules {
        let _ = write!(s, "\n    {}: {} [{}]", r.rule, r.contribution, r.anchor);
    }
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ReportOut {
    name: String,
    #[serde(flatten)]
    report: ObstructionReport,
}

impl Render for ReportOut {
    fn text(&self) -> String {
        format!("{}: {}", self.name, report_text(&self.report))
    }
}

#[derive(Serialize)]
struct BatchEntry {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ObstructionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl BatchEntry {
    fn new(r: &KnotRecord, opts: &AggregateOptions) -> Self {
        let (report, error) = match aggregate_with(r, opts) {
            Ok(rep) => (Some(rep), None),
            Err(e) => (None, Some(e.to_string())),
        };
        BatchEntry {
            name: r.name.clone(),
            report,
            error,
        }
    }
}

#[derive(Serialize)]
struct BatchOut {
    reports: Vec<BatchEntry>,
}

impl Render for BatchOut {
    fn text(&self) -> String {
        let mut s = String::new();
        for e in &self.reports {
            match (&e.report, &e.error) {
                (Some(r), _) => {
                    let _ = write!(s, "{}: {}", e.name, report_text(r));
                }
                (_, Some(err)) => {
                    let _ = writeln!(s, "{}: error: {err}", e.name);
                }
                _ => {}
            }
        }
        s
    }
}

#[derive(Serialize)]
struct Provenanced<T> {
    value: T,
    source: Source,
}

#[derive(Serialize)]
struct WhiteheadOut {
    name: String,
    params: WhiteheadParams,
    effective_twist: i64,
    half_twist: bool,
    alexander: LaurentPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau: Option<Provenanced<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<Provenanced<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upsilon: Option<PLFunction>,
    cable_target: Provenanced<i64>,
    report: ObstructionReport,
}

impl WhiteheadOut {
    fn new(p: WhiteheadParams, rec: &KnotRecord, report: ObstructionReport) -> Self {
        let tagged = |v: Option<i64>, key: &str| {
            v.map(|value| Provenanced {
                value,
                source: rec.provenance.get(key).copied().unwrap_or(Source::Computed),
            })
        };
        let q = whitehead::cable_target(&p);
        WhiteheadOut {
            name: rec.name.clone(),
            effective_twist: p.effective_twist(),
            half_twist: p.is_half_twist(),
            alexander: whitehead::alexander_formula(&p),
            tau: tagged(rec.invariants.tau, "invariants.tau"),
            epsilon: tagged(rec.invariants.epsilon.map(i64::from), "invariants.epsilon").map(
                |t| Provenanced {
                    value: t.value as i8,
                    source: t.source,
                },
            ),
            upsilon: rec.invariants.upsilon.clone(),
            cable_target: Provenanced {
                value: q.value,
                source: q.source,
            },
            params: p,
            report,
        }
    }
}

impl Render for WhiteheadOut {
    fn text(&self) -> String {
        let r = &self.report;
        let mut head = report_text(r);
        // cable target goes on the summary line
        let first_end = head.find('\n').unwrap_or(head.len());
        head.insert_str(
            first_end,
            &format!("; cable target q = {} ({})", self.cable_target.value, self.cable_target.source),
        );
        let mut s = format!("{}\n  {head}", self.name);
        let _ = writeln!(s, "  Alexander polynomial: {}", self.alexander);
        if let Some(t) = &self.tau {
            let _ = writeln!(s, "  tau: {} ({})", t.value, t.source);
        }
        if let Some(e) = &self.epsilon {
            let _ = writeln!(s, "  epsilon: {} ({})", e.value, e.source);
        }
        if let Some(u) = &self.upsilon {
            let _ = writeln!(s, "  Upsilon breakpoints: {u}");
        }
        s
    }
}

#[derive(Serialize)]
struct CableOut {
    p: i64,
    q: i64,
    lower: PLFunction,
    upper: PLFunction,
    #[serde(skip_serializing_if = "Option::is_none")]
    upsilon_interval: Option<[String; 2]>,
}

impl Render for CableOut {
    fn text(&self) -> String {
        let mut s = format!(
            "({}, {})-cable envelopes on [0, {}]\n  lower: {}\n  upper: {}\n",
            self.p,
            self.q,
            Exact(self.lower.domain_end()),
            self.lower,
            self.upper
        );
        if let Some([a, b]) = &self.upsilon_interval {
            let _ = writeln!(s, "  υ of the cable ∈ [{a}, {b}]");
        }
        s
    }
}

#[derive(Serialize)]
struct CobordismOut {
    upsilon_start: String,
    upsilon_end: String,
    euler: i64,
    betti: u32,
    lhs: String,
    bound: String,
    holds: bool,
}

impl Render for CobordismOut {
    fn text(&self) -> String {
        format!(
            "|{} - ({}) + {}/4| = {} {} {}: {}\n",
            self.upsilon_start,
            self.upsilon_end,
            self.euler,
            self.lhs,
            if self.holds { "≤" } else { ">" },
            self.bound,
            if self.holds { "consistent" } else { "violated" }
        )
    }
}

#[derive(Serialize)]
struct EulerOut {
    upsilon: String,
    q: i64,
    lo: i64,
    hi: i64,
}

impl Render for EulerOut {
    fn text(&self) -> String {
        format!(
            "υ = {}, q = {}: e(F) ∈ [{}, {}]\n",
            self.upsilon, self.q, self.lo, self.hi
        )
    }
}

#[derive(Serialize)]
struct ImportOut {
    store: String,
    imported: Vec<String>,
    diagnostics: Vec<Diagnostic>,
}

impl Render for ImportOut {
    fn text(&self) -> String {
        let mut s = format!("imported {} record(s) into {}\n", self.imported.len(), self.store);
        for d in &self.diagnostics {
            let _ = writeln!(s, "  {d}");
        }
        s
    }
}

#[derive(Serialize)]
#[serde(transparent)]
struct ShowOut(KnotRecord);

impl Render for ShowOut {
    fn text(&self) -> String {
        let r = &self.0;
        let src = |k: &str| {
            r.provenance
                .get(k)
                .map(|s| format!(" ({s})"))
                .unwrap_or_default()
        };
        let mut s = format!("{}\n", r.name);
        if let Some(m) = &r.seifert_matrix {
            let _ = writeln!(s, "  Seifert matrix: {m}{}", src("seifert_matrix"));
        }
        if let Some(d) = &r.alexander {
            let _ = writeln!(s, "  Alexander polynomial: {d}{}", src("alexander"));
        }
        if let Some(x) = r.sigma {
            let _ = writeln!(s, "  signature: {x}{}", src("sigma"));
        }
        if let Some(x) = r.arf {
            let _ = writeln!(s, "  Arf invariant: {x}{}", src("arf"));
        }
        let inv = &r.invariants;
        let ints = [("tau", inv.tau), ("nu", inv.nu), ("s", inv.s), ("epsilon", inv.epsilon.map(i64::from))];
        for (k, v) in ints {
            if let Some(v) = v {
                let _ = writeln!(s, "  {k}: {v}{}", src(&format!("invariants.{k}")));
            }
        }
        if let Some(u) = &inv.upsilon {
            let _ = writeln!(s, "  Upsilon: {u}{}", src("invariants.upsilon"));
        }
        let ivs = [("g3", inv.g3), ("g4", inv.g4), ("gamma4", inv.gamma4), ("gamma3", inv.gamma3)];
        for (k, v) in ivs {
            if let Some(v) = v {
                let _ = writeln!(s, "  {k} ∈ {v}{}", src(&format!("invariants.{k}")));
            }
        }
        for f in &r.facts {
            let _ = writeln!(s, "  fact: {} from {}", f.target, f.rule);
        }
        for n in &r.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

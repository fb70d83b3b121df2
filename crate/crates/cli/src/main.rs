//! `trivext`: inspect finite F_p-algebras and their trivial extensions, compute
//! resolutions and Ext/Tor, decide strongly Gorenstein properties, and run the
//! claim suite.
//!
//! Exit codes: 0 success, 1 suite failure, 2 parse/construction error or unknown
//! case, 3 cap exceeded, 4 unsupported input.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trivext_core::algebra::ring_report;
use trivext_core::gorenstein::{
    classify_ggldim, is_sgi, is_sgp, verify_ggldim_inequality, verify_gpd_inequality, verify_sgi_transfer,
    verify_sgp_transfer_backward, verify_sgp_transfer_forward, GgldimCertificate, SgVerdict, TransferReport,
};
use trivext_core::modules::{ext_dim, pd_bounded, regular_module, tor_dim, FinModule, Resolution};
use trivext_core::par::{Limits, DEFAULT_MAX_ELEMENTS, DEFAULT_SUBSPACE_CAP};
use trivext_core::speclang::{load_module, load_ring, serialize_map, serialize_module, serialize_ring};
use trivext_core::suite::{self, CaseResult, CaseStatus, SuiteConfig};
use trivext_core::{Error, Ring};

/// Environment variable overriding the subspace-enumeration cap.
const SUBSPACE_CAP_ENV: &str = "TRIVEXT_SUBSPACE_CAP";

#[derive(Parser)]
#[command(name = "trivext", version, about = "Finite commutative F_p-algebras, trivial extensions and Gorenstein invariants")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Depth bound for resolutions and Ext scans.
    #[arg(long, default_value_t = 10, global = true)]
    depth: usize,
    /// Largest ring (number of elements) enumerated element by element.
    #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS, global = true)]
    max_elements: u64,
    /// Append wall-clock timings after the deterministic output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Ring report: locality, units, nilradical, ideals, self-injectivity, QF.
    Check {
        /// Ring expression or @file in the interchange format.
        ring: String,
    },
    /// G-gldim classification.
    Classify { ring: String },
    /// Minimal free resolution of a module.
    Resolve {
        ring: String,
        #[arg(long)]
        module: String,
        /// Number of free modules past F_0 (defaults to --depth).
        #[arg(long)]
        length: Option<usize>,
    },
    /// dim Ext^i(M, N); N defaults to the regular module.
    Ext {
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        i: usize,
    },
    /// dim Tor_i(M, N).
    Tor {
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        other: String,
        #[arg(long)]
        i: usize,
    },
    /// Strongly Gorenstein projective (or, with --injective, injective) test.
    Sgp {
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        injective: bool,
    },
    /// Transfer check for R = A ⋉ E.
    Transfer {
        #[arg(value_enum)]
        kind: TransferKind,
        /// The base ring A.
        ring: String,
        /// The A-module E.
        #[arg(long)]
        e: String,
        /// The A-module M (not used by ggldim).
        #[arg(long)]
        module: Option<String>,
    },
    /// Print the interchange form of a ring (and optionally a module over it).
    Serialize {
        ring: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Run the claim suite, or one case.
    VerifyPaper {
        #[arg(long)]
        case: Option<String>,
        /// List case ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransferKind {
    SgpForward,
    SgpBackward,
    Sgi,
    Gpd,
    Ggldim,
}

/// Deterministic payload plus its text rendering.
struct Output {
    json: Value,
    text: String,
    exit: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, exit: 0 }
    }
}

/// Library errors plus command-line usage problems.
#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Core(Error::CapExceeded { .. }) => 3,
        CliError::Core(Error::Unsupported(_)) => 4,
        _ => 2,
    }
}

fn read_arg(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn ring_arg(arg: &str) -> CliResult<Ring> {
    Ok(load_ring(&read_arg(arg)?)?)
}

fn module_arg(arg: &str, ring: &Ring) -> CliResult<FinModule> {
    Ok(load_module(&read_arg(arg)?, ring)?)
}

fn limits(cli: &Cli) -> Limits {
    let subspace_cap = std::env::var(SUBSPACE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SUBSPACE_CAP);
    Limits {
        max_elements: cli.max_elements,
        subspace_cap,
        ..Limits::default()
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "unavailable".to_string(), T::to_string)
}

fn cmd_check(cli: &Cli, ring: &str) -> CliResult<Output> {
    let r = ring_arg(ring)?;
    let rep = ring_report(&r, &limits(cli));
    let mut t = String::new();
    writeln!(t, "ring: {}-dimensional over F_{}", rep.dim, rep.p).unwrap();
    writeln!(t, "local: {}", rep.is_local).unwrap();
    writeln!(t, "units: {}", opt(&rep.unit_count)).unwrap();
    writeln!(t, "nilradical dim: {}", rep.nilradical_dim).unwrap();
    writeln!(t, "ideals: {}", opt(&rep.ideal_count)).unwrap();
    writeln!(t, "self-injective: {}", opt(&rep.is_self_injective)).unwrap();
    writeln!(t, "QF: {}", opt(&rep.is_qf)).unwrap();
    if let Some(w) = &rep.qf_witness {
        writeln!(t, "witness ideal (Ann(Ann(I)) != I): basis {w:?}").unwrap();
    }
    for u in &rep.unavailable {
        writeln!(t, "note: {u}").unwrap();
    }
    Ok(Output::ok(json!({ "command": "check", "report": rep }), t))
}

fn cmd_classify(cli: &Cli, ring: &str) -> CliResult<Output> {
    let r = ring_arg(ring)?;
    let v = classify_ggldim(&r, cli.depth, &limits(cli))?;
    let mut t = format!("G-gldim: {}\n", v.kind);
    match &v.certificate {
        GgldimCertificate::Qf { ideals_checked } => {
            writeln!(t, "QF: Ann(Ann(I)) = I for all {ideals_checked} ideals").unwrap()
        }
        GgldimCertificate::NotQfLocal {
            witness,
            double_annihilator,
            ..
        } => {
            writeln!(t, "local, not QF").unwrap();
            writeln!(t, "witness ideal: basis {witness:?}").unwrap();
            writeln!(t, "Ann(Ann(I)): basis {double_annihilator:?}").unwrap();
        }
        GgldimCertificate::Evidence(ev) => {
            writeln!(t, "not local and not QF; obstructions for R/I up to depth {}:", cli.depth).unwrap();
            for e in ev {
                writeln!(t, "  I = {:?}: {:?}", e.ideal, e.obstruction).unwrap();
            }
        }
    }
    Ok(Output::ok(json!({ "command": "classify", "verdict": v }), t))
}

fn cmd_resolve(cli: &Cli, ring: &str, module: &str, length: Option<usize>) -> CliResult<Output> {
    let r = ring_arg(ring)?;
    let m = module_arg(module, &r)?;
    let length = length.unwrap_or(cli.depth);
    let mut res = Resolution::compute(&m, length);
    let pd = pd_bounded(&m, length);
    let betti: Vec<String> = res.betti().iter().map(usize::to_string).collect();
    let text = format!(
        "betti: {}\n{}pd: {}\n",
        betti.join(", "),
        if res.is_complete() { "resolution is finite\n" } else { "" },
        pd
    );
    let boundaries: Vec<String> = (1..res.len())
        .filter_map(|k| res.boundary(k).map(|d| serialize_map(&d)))
        .collect();
    Ok(Output::ok(
        json!({
            "command": "resolve",
            "betti": res.betti(),
            "complete": res.is_complete(),
            "pd": pd,
            "boundaries": boundaries,
        }),
        text,
    ))
}

fn cmd_ext(ring: &str, module: &str, target: Option<&str>, i: usize) -> CliResult<Output> {
    let r = ring_arg(ring)?;
    let m = module_arg(module, &r)?;
    let n = match target {
        Some(t) => module_arg(t, &r)?,
        None => regular_module(&r),
    };
    let d = ext_dim(&m, &n, i)?;
    Ok(Output::ok(json!({ "command": "ext", "i": i, "dim": d }), format!("dim Ext^{i} = {d}\n")))
}

fn cmd_tor(ring: &str, module: &str, other: &str, i: usize) -> CliResult<Output> {
    let r = ring_arg(ring)?;
    let m = module_arg(module, &r)?;
    let n = module_arg(other, &r)?;
    let d = tor_dim(&m, &n, i)?;
    Ok(Output::ok(json!({ "command": "tor", "i": i, "dim": d }), format!("dim Tor_{i} = {d}\n")))
}

fn verdict_json(v: &SgVerdict) -> Value {
    match v {
        SgVerdict::Yes(w) => json!({
            "verdict": "Yes",
            "free_rank": w.free_rank,
            "ext1_dim": w.ext1_dim,
            "embedding": serialize_map(&w.embedding),
            "projection": serialize_map(&w.projection),
        }),
        SgVerdict::No(r) => json!({ "verdict": "No", "reason": r }),
        SgVerdict::Undecided(r) => json!({ "verdict": "Undecided", "reason": r }),
    }
}

fn cmd_sgp(cli: &Cli, ring: &str, module: &str, injective: bool) -> CliResult<Output> {
    let r = ring_arg(ring)?;
    let m = module_arg(module, &r)?;
    let l = limits(cli);
    let v = if injective { is_sgi(&m, &l)? } else { is_sgp(&m, &l)? };
    let name = if injective { "strongly Gorenstein injective" } else { "strongly Gorenstein projective" };
    let mut text = format!("{name}: {v}\n");
    if let Some(w) = v.witness() {
        writeln!(text, "witness: 0 -> M -> R^{} -> M -> 0, Ext^1(M, R) = 0", w.free_rank).unwrap();
        writeln!(text, "embedding: {}", serialize_map(&w.embedding)).unwrap();
    }
    Ok(Output::ok(
        json!({ "command": if injective { "sgi" } else { "sgp" }, "result": verdict_json(&v) }),
        text,
    ))
}

fn report_text(rep: &TransferReport) -> String {
    let mut t = format!("statement: {}\n", rep.statement);
    for h in &rep.hypotheses {
        writeln!(t, "hypothesis {}: {:?} ({})", h.name, h.status, h.detail).unwrap();
    }
    writeln!(t, "left: {}", rep.left_side).unwrap();
    writeln!(t, "right: {}", rep.right_side).unwrap();
    let holds = match rep.implication_holds {
        Some(true) => "holds",
        Some(false) => "FAILS",
        None => "not evaluated",
    };
    writeln!(t, "implication: {holds}{}", if rep.partial { " (partial check)" } else { "" }).unwrap();
    for n in &rep.notes {
        writeln!(t, "note: {n}").unwrap();
    }
    t
}

fn cmd_transfer(cli: &Cli, kind: TransferKind, ring: &str, e: &str, module: Option<&str>) -> CliResult<Output> {
    let a = ring_arg(ring)?;
    let e = module_arg(e, &a)?;
    let l = limits(cli);
    let need_m = || -> CliResult<FinModule> {
        let m = module.ok_or_else(|| CliError::Usage("--module is required for this transfer".into()))?;
        module_arg(m, &a)
    };
    let rep = match kind {
        TransferKind::SgpForward => verify_sgp_transfer_forward(&a, &e, &need_m()?, cli.depth, &l)?,
        TransferKind::SgpBackward => verify_sgp_transfer_backward(&a, &e, &need_m()?, &l)?,
        TransferKind::Sgi => verify_sgi_transfer(&a, &e, &need_m()?, cli.depth, &l)?,
        TransferKind::Gpd => verify_gpd_inequality(&a, &e, &need_m()?, cli.depth, &l)?,
        TransferKind::Ggldim => verify_ggldim_inequality(&a, &e, cli.depth, &l)?,
    };
    let text = report_text(&rep);
    Ok(Output::ok(json!({ "command": "transfer", "report": rep }), text))
}

fn cmd_serialize(ring: &str, module: Option<&str>) -> CliResult<Output> {
    let r = ring_arg(ring)?;
    let rs = serialize_ring(&r);
    let (json, text) = match module {
        Some(m) => {
            let ms = serialize_module(&module_arg(m, &r)?);
            (json!({ "ring": rs, "module": ms }), format!("{rs}\n{ms}\n"))
        }
        None => (json!({ "ring": rs }), format!("{rs}\n")),
    };
    Ok(Output::ok(json, text))
}

fn status_word(s: &CaseStatus) -> String {
    match s {
        CaseStatus::Pass => "PASS".into(),
        CaseStatus::Fail => "FAIL".into(),
        CaseStatus::Skipped(r) => format!("SKIP ({r})"),
    }
}

fn cmd_verify(cli: &Cli, case: Option<&str>, list: bool, timings: &mut Vec<(String, f64)>) -> CliResult<Output> {
    if list {
        let ids: Vec<&str> = suite::cases().iter().map(|c| c.id).collect();
        let text = suite::cases().iter().map(|c| format!("{}  {}\n", c.id, c.title)).collect();
        return Ok(Output::ok(json!({ "cases": ids }), text));
    }
    let cfg = SuiteConfig {
        depth: cli.depth,
        limits: limits(cli),
    };
    let results: Vec<CaseResult> = match case {
        Some(id) => {
            let c = suite::find_case(id).ok_or_else(|| CliError::Usage(format!("unknown case '{id}'")))?;
            vec![c.run(&cfg)]
        }
        None => suite::run_all(&cfg),
    };
    let failed = results.iter().filter(|r| r.failed()).count();
    let skipped = results.iter().filter(|r| matches!(r.status, CaseStatus::Skipped(_))).count();
    let passed = results.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    for r in &results {
        writeln!(text, "{:<32} {}", r.case_id, status_word(&r.status)).unwrap();
        if r.failed() {
            writeln!(text, "  details: {}", r.details).unwrap();
            if let Some(c) = &r.repro {
                writeln!(text, "  repro: {c}").unwrap();
            }
        }
        timings.push((r.case_id.clone(), r.elapsed.as_secs_f64()));
    }
    writeln!(text, "{passed} passed, {failed} failed, {skipped} skipped").unwrap();
    Ok(Output {
        json: json!({
            "command": "verify-paper",
            "depth": cfg.depth,
            "cases": results,
            "summary": { "passed": passed, "failed": failed, "skipped": skipped },
        }),
        text,
        exit: u8::from(failed > 0),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut timings = Vec::new();
    let result = match &cli.command {
        Command::Check { ring } => cmd_check(&cli, ring),
        Command::Classify { ring } => cmd_classify(&cli, ring),
        Command::Resolve { ring, module, length } => cmd_resolve(&cli, ring, module, *length),
        Command::Ext { ring, module, target, i } => cmd_ext(ring, module, target.as_deref(), *i),
        Command::Tor { ring, module, other, i } => cmd_tor(ring, module, other, *i),
        Command::Sgp { ring, module, injective } => cmd_sgp(&cli, ring, module, *injective),
        Command::Transfer { kind, ring, e, module } => cmd_transfer(&cli, *kind, ring, e, module.as_deref()),
        Command::Serialize { ring, module } => cmd_serialize(ring, module.as_deref()),
        Command::VerifyPaper { case, list } => cmd_verify(&cli, case.as_deref(), *list, &mut timings),
    };
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            let code = exit_code(&e);
            match cli.format {
                Format::Json => println!("{}", json!({ "error": e.to_string(), "exit_code": code })),
                Format::Text => eprintln!("error: {e}"),
            }
            return ExitCode::from(code);
        }
    };
    let total = start.elapsed().as_secs_f64();
    match cli.format {
        Format::Json => {
            let mut doc = json!({ "result": out.json });
            if cli.timings {
                let per: serde_json::Map<String, Value> =
                    timings.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                doc["timings"] = json!({ "total_seconds": total, "cases": per });
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
        }
        Format::Text => {
            print!("{}", out.text);
            if cli.timings {
                println!("--- timings ---");
                for (k, v) in &timings {
                    println!("{k}: {v:.3}s");
                }
                println!("total: {total:.3}s");
            }
        }
    }
    ExitCode::from(out.exit)
}

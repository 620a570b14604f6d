//! Command-line front end: invariant reports, corpus searches, union-of-
//! lengths tables and block-monoid suites, all as deterministic JSON.

mod cache;

use clap::{Parser, Subcommand};
use factorinv::blockmonoids::{corollary59_suite, rho_checks, FiniteAbelianGroup, ZeroSumMonoid};
use factorinv::corpus::{enumerate_by_frobenius, search_record, SearchRecord};
use factorinv::invariants::{
    ap_structure_scan, catenary, catenary_three_coprime_formula, full_report_affine,
    full_report_numerical, min_delta, omega_per_atom, tame_degree, ReportOptions,
};
use factorinv::monoid::AtomicMonoid;
use factorinv::presentations::minimal_presentation;
use factorinv::{AffineMonoid, Error, NumericalMonoid};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "factorinv",
    about = "Exact factorization invariants of numerical, affine and block monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON (the default and only output format).
    #[arg(long, global = true)]
    json: bool,

    /// Element bound for catenary and Δ scans.
    #[arg(long, global = true)]
    bound: Option<i64>,

    /// Window for union-of-lengths scans.
    #[arg(long, global = true, default_value_t = 40)]
    kmax: i64,

    /// Worker threads for corpus searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Cache results under $FACTORINV_CACHE_DIR (default .factorinv-cache).
    #[arg(long, global = true)]
    cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for one monoid.
    Report {
        /// Monoid literal: "4,10,21" or a group like "C2xC2".
        monoid: Option<String>,
        /// Path to an affine monoid JSON document.
        #[arg(long)]
        affine: Option<PathBuf>,
    },
    /// Enumerate all numerical monoids with Frobenius number up to F_MAX.
    SearchFrobenius {
        f_max: i64,
        /// CSV output path.
        #[arg(long, default_value = "search.csv")]
        out: PathBuf,
    },
    /// Unions of sets of lengths V_k with AP structure flags.
    Unions { monoid: String },
    /// Generic-presentation and rho checks for a block monoid B(G•).
    Blockmonoid { group: String },
    /// Canonical minimal presentation.
    Presentation {
        monoid: Option<String>,
        #[arg(long)]
        affine: Option<PathBuf>,
    },
    /// The ω-invariant with per-atom values.
    Omega {
        monoid: Option<String>,
        #[arg(long)]
        affine: Option<PathBuf>,
    },
    /// The tame degree with a witness.
    Tame {
        monoid: Option<String>,
        #[arg(long)]
        affine: Option<PathBuf>,
    },
    /// The catenary degree with Betti elements.
    Catenary {
        monoid: Option<String>,
        #[arg(long)]
        affine: Option<PathBuf>,
    },
}

enum Target {
    Numerical(NumericalMonoid),
    Affine(AffineMonoid),
    Block(Box<ZeroSumMonoid>),
}

fn parse_target(literal: Option<&str>, affine: Option<&PathBuf>) -> Result<Target, Error> {
    if let Some(path) = affine {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Target::Affine(AffineMonoid::from_json(&text)?));
    }
    let literal = literal
        .ok_or_else(|| Error::Parse("expected a monoid literal or --affine <path>".into()))?;
    let trimmed = literal.trim();
    if trimmed.starts_with(['C', 'c']) && !trimmed.contains(',') {
        let group: FiniteAbelianGroup = trimmed.parse()?;
        let order = group.order()?;
        if order > 8 {
            return Err(Error::ResourceLimit(format!(
                "|G| = {order} exceeds the supported group order 8"
            )));
        }
        return Ok(Target::Block(Box::new(ZeroSumMonoid::over_nonzero(group)?)));
    }
    Ok(Target::Numerical(trimmed.parse()?))
}

fn monoid_header(target: &Target) -> Value {
    match target {
        Target::Numerical(m) => json!({
            "kind": "numerical",
            "generators": m.generators(),
        }),
        Target::Affine(m) => json!({
            "kind": "affine",
            "ambient_dim": m.ambient_dim(),
            "atoms": m.atoms(),
        }),
        Target::Block(z) => json!({
            "kind": "block_monoid",
            "group": z.group().to_string(),
            "support": z.support(),
            "atoms": z.atoms(),
        }),
    }
}

fn report_options(cli: &Cli) -> ReportOptions {
    ReportOptions {
        element_bound: cli.bound,
        ..ReportOptions::default()
    }
}

fn cmd_report(cli: &Cli, target: &Target) -> Result<Value, Error> {
    let opts = report_options(cli);
    let payload = match target {
        Target::Numerical(m) => {
            let report = full_report_numerical(m, &opts)?;
            let generic = factorinv::presentations::has_generic_presentation(m)?.is_some();
            json!({
                "monoid": monoid_header(target),
                "frobenius": m.frobenius(),
                "generic": generic,
                "min_delta": if m.generators().len() >= 2 { Some(min_delta(m)?) } else { None },
                "invariants": report,
            })
        }
        Target::Affine(m) => {
            let report = full_report_affine(m, &opts)?;
            let generic = factorinv::presentations::has_generic_presentation(m)?.is_some();
            json!({
                "monoid": monoid_header(target),
                "generic": generic,
                "invariants": report,
            })
        }
        Target::Block(z) => {
            let mut report = full_report_affine(z.affine(), &opts)?;
            if z.is_symmetric() {
                // Symmetric support pins the elasticity at D/2 exactly.
                let d = z.davenport();
                report.elasticity = Some(if d % 2 == 0 {
                    (d / 2).to_string()
                } else {
                    format!("{d}/2")
                });
            }
            let generic = factorinv::presentations::has_generic_presentation(z.affine())?.is_some();
            json!({
                "monoid": monoid_header(target),
                "davenport": z.davenport(),
                "generic": generic,
                "invariants": report,
            })
        }
    };
    Ok(payload)
}

fn cmd_search(cli: &Cli, f_max: i64, out: &PathBuf) -> Result<Value, Error> {
    let monoids = enumerate_by_frobenius(f_max)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))?;
    let mut records: Vec<SearchRecord> = pool.install(|| {
        monoids
            .par_iter()
            .map(search_record)
            .collect::<Result<Vec<_>, _>>()
    })?;
    // Canonical order regardless of worker count.
    records.sort_by(|a, b| (a.frobenius, &a.generators).cmp(&(b.frobenius, &b.generators)));

    let mut csv = String::from("generators;frobenius;omega;catenary;tame;generic;omega_lt_tame\n");
    for r in &records {
        let gens = r
            .generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        csv.push_str(&format!(
            "{gens};{};{};{};{};{};{}\n",
            r.frobenius, r.omega, r.catenary, r.tame, r.generic, r.omega_lt_tame
        ));
    }
    write_file_atomically(out, csv.as_bytes())?;

    let flagged: Vec<&SearchRecord> = records.iter().filter(|r| r.omega_lt_tame).collect();
    Ok(json!({
        "f_max": f_max,
        "count": records.len(),
        "convention": "numerical monoids with Frobenius number in [1, f_max]; N_0 itself (F = -1) excluded",
        "csv": out.display().to_string(),
        "omega_lt_tame": flagged.iter().map(|r| &r.generators).collect::<Vec<_>>(),
    }))
}

fn write_file_atomically(path: &PathBuf, bytes: &[u8]) -> Result<(), Error> {
    let tmp = path.with_extension("tmp");
    let io = |e: std::io::Error| Error::ResourceLimit(format!("io: {e}"));
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)?;
    Ok(())
}

fn cmd_unions(cli: &Cli, monoid: &str) -> Result<Value, Error> {
    let m: NumericalMonoid = monoid.trim().parse()?;
    let scan = ap_structure_scan(&m, cli.kmax)?;
    Ok(json!({
        "monoid": { "kind": "numerical", "generators": m.generators() },
        "kmax": cli.kmax,
        "scan": scan,
    }))
}

fn cmd_blockmonoid(cli: &Cli, group: &str) -> Result<Value, Error> {
    let group: FiniteAbelianGroup = group.parse()?;
    let suite = corollary59_suite(&group, 8)?;
    let z = ZeroSumMonoid::over_nonzero(group.clone())?;
    let rho = rho_checks(&z, cli.kmax.min(8), None)?;
    Ok(json!({
        "group": group.to_string(),
        "suite": suite,
        "rho": rho,
    }))
}

fn cmd_presentation(target: &Target) -> Result<Value, Error> {
    fn payload<M: AtomicMonoid>(header: Value, m: &M) -> Result<Value, Error> {
        let p = minimal_presentation(m)?;
        Ok(json!({
            "monoid": header,
            "pairs": p.pairs.iter().map(|q| json!([q.left, q.right])).collect::<Vec<_>>(),
            "is_minimal": p.is_minimal,
            "is_generic": p.is_generic,
            "is_unique_minimal": p.is_unique_minimal,
        }))
    }
    match target {
        Target::Numerical(m) => payload(monoid_header(target), m),
        Target::Affine(m) => payload(monoid_header(target), m),
        Target::Block(z) => payload(monoid_header(target), z.affine()),
    }
}

fn cmd_omega(target: &Target) -> Result<Value, Error> {
    fn payload<M: AtomicMonoid>(header: Value, m: &M) -> Result<Value, Error> {
        let per_atom = omega_per_atom(m)?;
        Ok(json!({
            "monoid": header,
            "omega": per_atom.iter().copied().max().unwrap_or(0),
            "omega_per_atom": per_atom,
        }))
    }
    match target {
        Target::Numerical(m) => payload(monoid_header(target), m),
        Target::Affine(m) => payload(monoid_header(target), m),
        Target::Block(z) => payload(monoid_header(target), z.affine()),
    }
}

fn cmd_tame(target: &Target) -> Result<Value, Error> {
    fn payload<M: AtomicMonoid>(header: Value, m: &M) -> Result<Value, Error>
    where
        M::Elem: serde::Serialize,
    {
        let (t, witness) = tame_degree(m)?;
        Ok(json!({
            "monoid": header,
            "tame": t,
            "witness": witness.map(|(a, u)| json!({ "element": a, "atom_index": u })),
        }))
    }
    match target {
        Target::Numerical(m) => payload(monoid_header(target), m),
        Target::Affine(m) => payload(monoid_header(target), m),
        Target::Block(z) => payload(monoid_header(target), z.affine()),
    }
}

fn cmd_catenary(target: &Target) -> Result<Value, Error> {
    fn payload<M: AtomicMonoid>(header: Value, m: &M) -> Result<Value, Error>
    where
        M::Elem: serde::Serialize,
    {
        Ok(json!({
            "monoid": header,
            "catenary": catenary(m)?,
            "betti_elements": m.betti_elements()?,
        }))
    }
    let mut base = match target {
        Target::Numerical(m) => payload(monoid_header(target), m)?,
        Target::Affine(m) => payload(monoid_header(target), m)?,
        Target::Block(z) => payload(monoid_header(target), z.affine())?,
    };
    if let Target::Numerical(m) = target {
        let formula = catenary_three_coprime_formula(m).ok();
        base["three_coprime_formula"] = match formula {
            Some(f) => serde_json::to_value(f).expect("serializable"),
            None => Value::Null,
        };
    }
    Ok(base)
}

fn run(cli: &Cli) -> Result<Value, Error> {
    match &cli.command {
        Command::Report { monoid, affine } => {
            let target = parse_target(monoid.as_deref(), affine.as_ref())?;
            cmd_report(cli, &target)
        }
        Command::SearchFrobenius { f_max, out } => cmd_search(cli, *f_max, out),
        Command::Unions { monoid } => cmd_unions(cli, monoid),
        Command::Blockmonoid { group } => cmd_blockmonoid(cli, group),
        Command::Presentation { monoid, affine } => {
            let target = parse_target(monoid.as_deref(), affine.as_ref())?;
            cmd_presentation(&target)
        }
        Command::Omega { monoid, affine } => {
            let target = parse_target(monoid.as_deref(), affine.as_ref())?;
            cmd_omega(&target)
        }
        Command::Tame { monoid, affine } => {
            let target = parse_target(monoid.as_deref(), affine.as_ref())?;
            cmd_tame(&target)
        }
        Command::Catenary { monoid, affine } => {
            let target = parse_target(monoid.as_deref(), affine.as_ref())?;
            cmd_catenary(&target)
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::InvalidGenerators(_)
        | Error::InvalidSystem(_)
        | Error::HypothesisViolation(_)
        | Error::NotInMonoid(_)
        | Error::DimensionMismatch { .. } => 2,
        Error::Overflow => 3,
        Error::ResourceLimit(msg) => {
            if msg.starts_with("io:") {
                4
            } else {
                3
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let request = cache::request_key(&std::env::args().skip(1).collect::<Vec<_>>());
    if cli.cache {
        if let Some(hit) = cache::lookup(&request) {
            println!("{hit}");
            return ExitCode::SUCCESS;
        }
    }
    match run(&cli) {
        Ok(payload) => {
            let text = serde_json::to_string_pretty(&payload).expect("serializable payload");
            if cli.cache {
                cache::store(&request, &text);
            }
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("factorinv: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

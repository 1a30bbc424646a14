//! Batch driver: catalogue verification, invariants, witnesses, canonical forms.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use leibniz::catalogue::{verify_catalogue, verify_entry, Catalogue};
use leibniz::field::parse_matrix;
use leibniz::invariants::signature;
use leibniz::iso::{decide_isomorphism, FixtureFile, SearchConfig};
use leibniz::linalg::Matrix;
use leibniz::report::{canon_row, fixtures_command, invariants_row, iso_row, verify_command, CommandReport, Row, RunReport};

/// Pairs the catalogue's isomorphism criteria say are isomorphic; `report` searches them.
const REMARK_PAIRS: [(&str, &str); 2] = [("A_5:alpha=2", "A_5:alpha=-2"), ("A_17:alpha=2", "A_17:alpha=1/2")];

#[derive(Debug, Parser)]
#[command(name = "leibniz-check", version)]
#[command(about = "exact checks for the catalogue of 5-dimensional nilpotent Leibniz algebras")]
struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CatalogueArg {
    /// Catalogue file; the bundled catalogue when omitted.
    #[arg(long)]
    catalogue: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every entry (or the given ones) at sampled parameter points.
    Verify {
        #[command(flatten)]
        cat: CatalogueArg,
        /// `NAME` or `NAME:param=value,...`; repeatable.
        #[arg(long)]
        entry: Vec<String>,
        /// Parameter samples per entry.
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// Print invariant signatures.
    Invariants {
        #[command(flatten)]
        cat: CatalogueArg,
        /// `NAME` or `NAME:param=value,...`; every entry when omitted.
        #[arg(long)]
        entry: Vec<String>,
    },
    /// Isomorphism witnesses.
    Iso {
        #[command(subcommand)]
        command: IsoCommand,
    },
    /// Canonical congruence type of a 2x2 form, e.g. "[[0,2],[4,0]]".
    Canon { matrix: String },
    /// Full run: verify, fixtures, and the searches for the criterion pairs.
    Report {
        #[command(flatten)]
        cat: CatalogueArg,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
enum IsoCommand {
    /// Check witness fixtures exactly.
    Verify {
        #[command(flatten)]
        cat: CatalogueArg,
        /// Fixture file; the bundled fixtures when omitted.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Search for a witness modulo a prime and lift it exactly.
    Search {
        #[command(flatten)]
        cat: CatalogueArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 13)]
        prime: u64,
        /// Second prime, searched when no witness lifts.
        #[arg(long, default_value_t = 17)]
        evidence_prime: u64,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        /// Largest denominator tried when lifting.
        #[arg(long, default_value_t = 4)]
        lift_bound: u64,
        /// Search full generator images instead of the adapted shape.
        #[arg(long)]
        no_adapt: bool,
    },
}

fn load_catalogue(arg: &CatalogueArg) -> Result<Catalogue, String> {
    match &arg.catalogue {
        None => Ok(Catalogue::bundled()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Catalogue::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn load_fixtures(path: &Option<PathBuf>) -> Result<FixtureFile, String> {
    match path {
        None => Ok(FixtureFile::bundled()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            FixtureFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn point_label(cat: &Catalogue, spec: &str) -> Result<String, String> {
    let (entry, params) = cat.point(spec).map_err(|e| e.to_string())?;
    let ps: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Ok(if ps.is_empty() { entry.name.clone() } else { format!("{}({})", entry.name, ps.join(",")) })
}

fn verify(cat: &Catalogue, entries: &[String], samples: usize) -> Result<CommandReport, String> {
    if entries.is_empty() {
        return Ok(verify_command(&verify_catalogue(cat, None, samples)));
    }
    let mut reports = Vec::new();
    for spec in entries {
        if spec.contains(':') {
            let (entry, params) = cat.point(spec).map_err(|e| e.to_string())?;
            reports.push(verify_entry(cat, entry, &params));
        } else {
            cat.entry(spec).map_err(|e| e.to_string())?;
            reports.extend(verify_catalogue(cat, Some(spec), samples));
        }
    }
    Ok(verify_command(&reports))
}

fn invariants(cat: &Catalogue, entries: &[String]) -> Result<CommandReport, String> {
    let specs: Vec<String> =
        if entries.is_empty() { cat.entries.iter().map(|e| e.name.clone()).collect() } else { entries.to_vec() };
    let mut rows = Vec::new();
    for spec in &specs {
        let (entry, params) = cat.point(spec).map_err(|e| e.to_string())?;
        let a = cat.instantiate(entry, &params).map_err(|e| e.to_string())?;
        rows.push(invariants_row(point_label(cat, spec)?, &signature(&a)));
    }
    Ok(CommandReport::new("invariants", rows))
}

fn fixtures(cat: &Catalogue, path: &Option<PathBuf>) -> Result<CommandReport, String> {
    let file = load_fixtures(path)?;
    Ok(fixtures_command(&file.verify(cat).map_err(|e| e.to_string())?))
}

fn search(cat: &Catalogue, a: &str, b: &str, cfg: &SearchConfig, evidence_prime: u64, expect_iso: bool) -> Result<Row, String> {
    let (ea, pa) = cat.point(a).map_err(|e| e.to_string())?;
    let (eb, pb) = cat.point(b).map_err(|e| e.to_string())?;
    let alg_a = cat.instantiate(ea, &pa).map_err(|e| e.to_string())?;
    let alg_b = cat.instantiate(eb, &pb).map_err(|e| e.to_string())?;
    let verdict = decide_isomorphism(&alg_a, &alg_b, cfg, evidence_prime).map_err(|e| e.to_string())?;
    let subject = format!("{} vs {}", point_label(cat, a)?, point_label(cat, b)?);
    Ok(iso_row(subject, &verdict, expect_iso))
}

fn run(cli: &Cli) -> Result<RunReport, String> {
    let bundled = Catalogue::bundled();
    let mut report;
    match &cli.command {
        Command::Verify { cat, entry, samples } => {
            let cat = load_catalogue(cat)?;
            report = RunReport::new(&cat);
            report.push(verify(&cat, entry, *samples)?);
        }
        Command::Invariants { cat, entry } => {
            let cat = load_catalogue(cat)?;
            report = RunReport::new(&cat);
            report.push(invariants(&cat, entry)?);
        }
        Command::Iso { command: IsoCommand::Verify { cat, fixtures: path } } => {
            let cat = load_catalogue(cat)?;
            report = RunReport::new(&cat);
            report.push(fixtures(&cat, path)?);
        }
        Command::Iso { command: IsoCommand::Search { cat, a, b, prime, evidence_prime, cap, lift_bound, no_adapt } } => {
            let cat = load_catalogue(cat)?;
            let cfg = SearchConfig { prime: *prime, lift_bound: *lift_bound, candidate_cap: *cap, adapt: !no_adapt };
            report = RunReport::new(&cat);
            report.push(CommandReport::new("iso search", vec![search(&cat, a, b, &cfg, *evidence_prime, false)?]));
        }
        Command::Canon { matrix } => {
            let rows = parse_matrix(matrix).map_err(|e| format!("{matrix:?}: {e}"))?;
            if rows.len() != 2 || rows[0].len() != 2 {
                return Err(format!("{matrix:?}: expected a 2x2 matrix"));
            }
            let m = Matrix::from_rows(rows, &()).map_err(|e| e.to_string())?;
            report = RunReport::new(&bundled);
            report.push(CommandReport::new("canon", vec![canon_row(&m).1]));
        }
        Command::Report { cat, fixtures: path, samples } => {
            let cat = load_catalogue(cat)?;
            report = RunReport::new(&cat);
            report.push(verify(&cat, &[], *samples)?);
            report.push(fixtures(&cat, path)?);
            let cfg = SearchConfig::default();
            let rows = REMARK_PAIRS.iter().map(|(a, b)| search(&cat, a, b, &cfg, 17, true)).collect::<Result<_, _>>()?;
            report.push(CommandReport::new("iso search", rows));
        }
    }
    Ok(report)
}

fn configure_threads() {
    if let Some(n) = std::env::var("LEIBNIZ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // A second initialisation fails harmlessly; the first pool stays.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(report) => {
            let text = if cli.json { report.to_json() } else { report.to_table() };
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(report.exit_status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

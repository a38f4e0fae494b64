//! Command-line surface for the powerspace workbench.
//!
//! Exit codes: 0 on success, 1 when a law or assertion fails (with a
//! machine-readable JSON witness on stdout), 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use powerspace_core::classic::compare_to_classic;
use powerspace_core::distributive::commute_iso;
use powerspace_core::freealg::verify_universal_property;
use powerspace_core::io::{
    domain_from_json, poset_from_json, poset_to_dot, powerspace_to_json, space_from_json,
    topology_from_json, DomainJson, PosetJson, SpaceJson, TopologyJson,
};
use powerspace_core::ndsem::{analyze, parse_program, render_verdict, AbstractDomain, Mode};
use powerspace_core::suites;
use powerspace_core::{build_powerspace, check_semilattice, is_directed_space, Poset, PsKind};

#[derive(Parser)]
#[command(
    name = "powerspace",
    version,
    about = "Directed lower/upper/convex powerspaces of finite posets"
)]
struct Cli {
    /// Reserved; no command uses randomness.
    #[arg(long, global = true, hide_short_help = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Lower,
    Upper,
    Convex,
}

impl From<KindArg> for PsKind {
    fn from(k: KindArg) -> PsKind {
        match k {
            KindArg::Lower => PsKind::Lower,
            KindArg::Upper => PsKind::Upper,
            KindArg::Convex => PsKind::Convex,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    May,
    Must,
    Convex,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::May => Mode::May,
            ModeArg::Must => Mode::Must,
            ModeArg::Convex => Mode::Convex,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a powerspace over a poset and emit it as JSON or DOT
    Build {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Emit the Hasse diagram of the powerspace order instead of JSON
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Emit the JSON dump (the default)
        #[arg(long)]
        json: bool,
    },
    /// Directed-space verdict for a finite topology
    Check {
        #[arg(long)]
        topology: PathBuf,
    },
    /// Semilattice-law and universal-property report for a powerspace
    Laws {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Directory of semilattice-space JSON files to use as extension
        /// targets; defaults to every space on ≤ 3 elements
        #[arg(long)]
        targets_dir: Option<PathBuf>,
    },
    /// Commutativity isomorphism between the two composite powerspaces
    Commute {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Cross-check a powerspace against its classical carrier
    Classic {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Abstractly interpret a program over a finite domain
    Analyze {
        #[arg(long)]
        program: PathBuf,
        /// `sign`, `parity`, or a path to a domain JSON file
        #[arg(long)]
        domain: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Run the full invariant suites over all labeled posets up to a size
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// One of: all, semilattice, universal, convergence, topology,
        /// classical, commutativity, analyzer
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Input problems exit 2; failed laws exit 1 and have already been printed.
enum Failure {
    Usage(String),
    Laws,
}

impl From<powerspace_core::Error> for Failure {
    fn from(e: powerspace_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let j: PosetJson = serde_json::from_str(&text)?;
    Ok(poset_from_json(&j)?)
}

fn load_domain(arg: &str) -> Result<AbstractDomain, Failure> {
    match arg {
        "sign" => Ok(AbstractDomain::sign()),
        "parity" => Ok(AbstractDomain::parity()),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            let j: DomainJson = serde_json::from_str(&text)?;
            let name = Path::new(path)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("domain");
            Ok(domain_from_json(name, &j)?)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Build {
            poset,
            kind,
            dot,
            json: _,
        } => {
            let p = load_poset(&poset)?;
            let ps = build_powerspace(kind.into(), &p)?;
            if dot {
                print!("{}", poset_to_dot(&ps.order));
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&powerspace_to_json(&ps))?
                );
            }
            Ok(())
        }
        Cmd::Check { topology } => {
            let text = fs::read_to_string(&topology)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", topology.display())))?;
            let j: TopologyJson = serde_json::from_str(&text)?;
            let t = topology_from_json(&j)?;
            let verdict = is_directed_space(&t)?;
            if verdict.is_directed_space {
                println!("{}", json!({"directed_space": true}));
                Ok(())
            } else {
                let witness: Vec<&str> = verdict
                    .witness
                    .iter()
                    .flat_map(|w| w.iter())
                    .map(|i| t.names()[i].as_str())
                    .collect();
                println!("{}", json!({"directed_space": false, "witness": witness}));
                Err(Failure::Laws)
            }
        }
        Cmd::Laws {
            poset,
            kind,
            targets_dir,
        } => {
            let p = load_poset(&poset)?;
            let kind: PsKind = kind.into();
            let ps = build_powerspace(kind, &p)?;
            let report = check_semilattice(&ps.to_semilattice());
            let mut ok = report.passed();
            let mut universal = Vec::new();

            let targets = match targets_dir {
                Some(dir) => {
                    let mut entries: Vec<PathBuf> = fs::read_dir(&dir)
                        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", dir.display())))?
                        .filter_map(|r| r.ok().map(|d| d.path()))
                        .filter(|p| p.extension().is_some_and(|x| x == "json"))
                        .collect();
                    entries.sort();
                    let mut out = Vec::new();
                    for path in entries {
                        let text = fs::read_to_string(&path)?;
                        let j: SpaceJson = serde_json::from_str(&text)?;
                        let space = space_from_json(&j)?;
                        if space.kind != kind.algebra() {
                            continue;
                        }
                        out.push((path.display().to_string(), space));
                    }
                    out
                }
                None => {
                    let mut out = Vec::new();
                    for q in powerspace_core::enumerate::all_posets_up_to(3)? {
                        for s in powerspace_core::enumerate::semilattice_spaces(&q, kind.algebra())?
                        {
                            out.push((format!("enumerated:{}", suites::poset_key(&q)), s));
                        }
                    }
                    out
                }
            };
            for (name, target) in &targets {
                let rep = verify_universal_property(kind, &p, target)?;
                if !rep.passed() {
                    ok = false;
                }
                universal.push(json!({
                    "target": name,
                    "monotone_maps": rep.monotone_maps,
                    "pass": rep.passed(),
                }));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "kind": kind.to_string(),
                    "semilattice": report,
                    "universal": universal,
                }))?
            );
            if ok {
                Ok(())
            } else {
                Err(Failure::Laws)
            }
        }
        Cmd::Commute { poset } => {
            let p = load_poset(&poset)?;
            match commute_iso(&p) {
                Ok(iso) => {
                    let table: Vec<_> = iso
                        .forward
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| json!({"from": iso.dom.order.name(i), "to": iso.cod.order.name(j)}))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "elements": iso.dom.len(),
                            "iso": table,
                            "verified": true,
                        }))?
                    );
                    Ok(())
                }
                Err(powerspace_core::Error::IsoFailure(detail)) => {
                    println!("{}", json!({"verified": false, "witness": detail}));
                    Err(Failure::Laws)
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Classic { poset, kind } => {
            let p = load_poset(&poset)?;
            let report = compare_to_classic(kind.into(), &p)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Laws)
            }
        }
        Cmd::Analyze {
            program,
            domain,
            mode,
        } => {
            let text = fs::read_to_string(&program)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", program.display())))?;
            let d = load_domain(&domain)?;
            let expr = parse_program(text.trim())?;
            let verdict = analyze(&expr, &d, mode.into())?;
            println!("{}", render_verdict(&d, &verdict));
            Ok(())
        }
        Cmd::Sweep { max_n, suite } => {
            let smaller = max_n.saturating_sub(1).max(1);
            let outcomes = match suite.as_str() {
                "all" => suites::run_all(max_n)?,
                "semilattice" => vec![suites::suite_semilattice_laws(max_n)?],
                "universal" => vec![suites::suite_universal_property(smaller)?],
                "convergence" => vec![suites::suite_convergence(max_n, smaller)?],
                "topology" => vec![suites::suite_topology_coincidence(smaller)?],
                "classical" => vec![suites::suite_classical_equivalence(max_n)?],
                "commutativity" => vec![suites::suite_commutativity(smaller)?],
                "analyzer" => vec![suites::suite_analyzer(smaller)?],
                other => return Err(Failure::Usage(format!("unknown suite `{other}`"))),
            };
            print!("{}", suites::summary_text(&outcomes));
            if outcomes.iter().all(|o| o.passed()) {
                Ok(())
            } else {
                Err(Failure::Laws)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Laws) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

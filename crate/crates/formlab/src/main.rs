//! Command-line interface: structural analysis of single groups, class
//! membership queries, and the verification harness.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use formcore::catalog::SimpleType;
use formcore::centralizers::{c_p, c_s, small_centralizer};
use formcore::formations::{formation_contains, parse_formation, residual};
use formcore::group::{parse_group_file, PermGroup};
use formcore::satellites::{membership, membership_characterized, parse_satellite};
use formcore::structure::{chief_series, com, frattini, normal_subgroups, p_layer, pi_core, socle};
use formcore::subgroup::Subgroup;
use formcore::{GroupError, Result};
use formlab::corpus::{
    builtin_corpus, load_dir, verify_pinned, write_dir, DEFAULT_MAX_DEGREE, DEFAULT_MAX_ORDER,
};
use formlab::report::{CorpusInfo, RunReport};
use formlab::suites::{run_suite, SUITE_IDS};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "formlab",
    version,
    about = "Finite-group structure computations and an exhaustive verification harness \
             for local class definitions",
    after_help = "Capacity: operations that enumerate elements, normal subgroups, or \
                  isomorphisms refuse groups beyond their default order bounds; set \
                  FORMLAB_CAPACITY=<n> to raise every bound to <n>."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a structural overview of one group file.
    Analyze {
        /// Group file: a `degree N` line, then one generator per line in
        /// cycle notation; `#` starts a comment.
        group: PathBuf,
        /// Emit JSON (schema formlab-analyze/1) instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compute one centralizer operator of a group.
    Op {
        /// Group file.
        group: PathBuf,
        /// cp:<p> for C^p, cs:<order> for C^S with S the simple type of
        /// that order, or small-centralizer:<i> for the i-th chief factor.
        #[arg(long, value_parser = parse_op)]
        compute: OpKind,
    },
    /// Compute the residual of a group for a class expression.
    Residual {
        /// Group file.
        group: PathBuf,
        /// Class expression, e.g. "nilpotent" or "gprod(pgroups 2, pigroups{3})".
        #[arg(long)]
        formation: String,
    },
    /// Test membership of a group in a class expression.
    Fcheck {
        /// Group file.
        group: PathBuf,
        /// Class expression.
        #[arg(long)]
        formation: String,
    },
    /// Test membership of a group in the class a satellite file defines.
    Member {
        /// Group file.
        group: PathBuf,
        /// Satellite file.
        #[arg(long)]
        satellite: PathBuf,
        /// Decision route; `both` exits with code 3 when the two disagree.
        #[arg(long, value_enum, default_value_t = Via::Definition)]
        via: Via,
    },
    /// Run verification suites over a corpus.
    ///
    /// Exit code 0 when every check passes, 2 when violations were found,
    /// 1 on errors.
    Verify {
        /// Suite id, or `all`.
        #[arg(long, value_parser = parse_suite)]
        suite: String,
        /// `builtin`, or a directory of group files.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// Also write the JSON report (schema formlab-report/1) to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Corpus maintenance.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Write the builtin corpus out as a directory of group files.
    Gen {
        /// Keep only groups of order at most this.
        #[arg(long = "max-order", default_value_t = DEFAULT_MAX_ORDER)]
        max_order: u128,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Definition,
    Characterization,
    Both,
}

#[derive(Clone)]
enum OpKind {
    Cp(u64),
    Cs(SimpleType),
    Small(usize),
}

fn parse_op(text: &str) -> std::result::Result<OpKind, String> {
    let usage = "expected cp:<p>, cs:<order>, or small-centralizer:<i>";
    let (head, rest) = text.split_once(':').ok_or_else(|| usage.to_string())?;
    match head {
        "cp" => rest
            .parse::<u64>()
            .map(OpKind::Cp)
            .map_err(|_| format!("bad prime `{rest}`; {usage}")),
        "cs" => SimpleType::parse(rest)
            .map(OpKind::Cs)
            .map_err(|e| format!("bad simple type `{rest}`: {e}")),
        "small-centralizer" => rest
            .parse::<usize>()
            .map(OpKind::Small)
            .map_err(|_| format!("bad chief-factor index `{rest}`; {usage}")),
        other => Err(format!("unknown operator `{other}`; {usage}")),
    }
}

fn parse_suite(text: &str) -> std::result::Result<String, String> {
    if text == "all" || SUITE_IDS.contains(&text) {
        Ok(text.to_string())
    } else {
        Err(format!(
            "unknown suite id; use `all` or one of: {}",
            SUITE_IDS.join(", ")
        ))
    }
}

fn main() -> ExitCode {
    // Die quietly on SIGPIPE like any other filter; the Rust default turns
    // `formlab analyze … | head` into a panic and backtrace.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Analyze { group, json } => analyze(&group, json),
        Cmd::Op { group, compute } => op(&group, &compute),
        Cmd::Residual { group, formation } => {
            let g = load_group(&group)?;
            let f = parse_formation(&formation)?;
            print_subgroup("residual", &residual(&g, &f)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fcheck { group, formation } => {
            let g = load_group(&group)?;
            let f = parse_formation(&formation)?;
            println!("member: {}", formation_contains(&f, &g)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Member {
            group,
            satellite,
            via,
        } => member(&group, &satellite, via),
        Cmd::Verify {
            suite,
            corpus,
            report,
            jobs,
        } => verify(&suite, &corpus, report.as_deref(), jobs),
        Cmd::Corpus {
            cmd: CorpusCmd::Gen { max_order, out },
        } => {
            let corpus = builtin_corpus(max_order, DEFAULT_MAX_DEGREE)?;
            write_dir(&corpus, &out)?;
            println!("wrote {} groups to {}", corpus.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_group(path: &Path) -> Result<PermGroup> {
    let text = fs::read_to_string(path)
        .map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
    parse_group_file(&text)
}

fn print_subgroup(label: &str, sub: &Subgroup) {
    println!("{label}: order {}", sub.order());
    for gen in sub.gens() {
        println!("  {gen}");
    }
}

/// Converts an order to a JSON-safe number; every order that survives the
/// capacity checks fits comfortably.
fn ju(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| GroupError::Integrity("order exceeds the JSON numeric range".into()))
}

fn analyze(path: &Path, as_json: bool) -> Result<ExitCode> {
    let g = load_group(path)?;
    let lat = normal_subgroups(&g)?;
    let series = chief_series(&g)?;
    let phi = frattini(&g)?;
    let socle_order = if g.is_trivial() { 1 } else { socle(&g)?.order() };
    let com_set = com(&g)?;
    let primes = g.primes();
    let mut radicals = Vec::new();
    for &p in &primes {
        radicals.push((p, pi_core(&g, &[p])?.order(), p_layer(&g, p)?.order()));
    }
    if as_json {
        let chief: Vec<_> = series
            .factors()
            .iter()
            .map(|f| {
                Ok(json!({
                    "index": f.index(),
                    "type": f.simple_type().label(),
                    "copies": f.copies(),
                    "order": ju(f.order())?,
                }))
            })
            .collect::<Result<_>>()?;
        let rads: Vec<_> = radicals
            .iter()
            .map(|&(p, core, layer)| {
                Ok(json!({"p": p, "core_order": ju(core)?, "layer_order": ju(layer)?}))
            })
            .collect::<Result<_>>()?;
        let doc = json!({
            "schema": "formlab-analyze/1",
            "source": path.display().to_string(),
            "degree": g.degree(),
            "order": ju(g.order())?,
            "primes": primes,
            "normal_subgroups": lat.len(),
            "chief_series": chief,
            "frattini_order": ju(phi.order())?,
            "socle_order": ju(socle_order)?,
            "radicals": rads,
            "com": com_set.iter().map(|s| s.label()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("analysis serializes"));
    } else {
        println!("source: {}", path.display());
        println!("degree: {}", g.degree());
        println!("order: {}", g.order());
        println!(
            "primes: {}",
            primes
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!("normal subgroups: {}", lat.len());
        println!("chief series:");
        for f in series.factors() {
            let copies = if f.copies() > 1 {
                format!(" x{}", f.copies())
            } else {
                String::new()
            };
            println!(
                "  {}: {}{} (order {})",
                f.index(),
                f.simple_type().label(),
                copies,
                f.order()
            );
        }
        println!("frattini: order {}", phi.order());
        println!("socle: order {socle_order}");
        for (p, core, layer) in &radicals {
            println!("O_{p}: order {core}, O_{{{p}',{p}}}: order {layer}");
        }
        println!(
            "com: {}",
            com_set
                .iter()
                .map(|s| s.label())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn op(path: &Path, compute: &OpKind) -> Result<ExitCode> {
    let g = load_group(path)?;
    match compute {
        OpKind::Cp(p) => print_subgroup(&format!("C^{p}"), &c_p(&g, *p)?),
        OpKind::Cs(s) => print_subgroup(&format!("C^{}", s.label()), &c_s(&g, *s)?),
        OpKind::Small(i) => {
            let series = chief_series(&g)?;
            let factors = series.factors();
            let Some(f) = factors.get(*i) else {
                return Err(GroupError::Integrity(format!(
                    "chief-factor index {i} out of range; the series has {} steps",
                    factors.len()
                )));
            };
            print_subgroup(
                &format!("small centralizer of step {i} ({})", f.simple_type().label()),
                &small_centralizer(&g, f)?,
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn member(group: &Path, satellite: &Path, via: Via) -> Result<ExitCode> {
    let g = load_group(group)?;
    let text = fs::read_to_string(satellite)
        .map_err(|e| GroupError::Io(format!("{}: {e}", satellite.display())))?;
    let spec = parse_satellite(&text)?;
    match via {
        Via::Definition => println!("definition: {}", membership(&g, &spec)?),
        Via::Characterization => {
            println!("characterization: {}", membership_characterized(&g, &spec)?);
        }
        Via::Both => {
            let by_definition = membership(&g, &spec)?;
            let by_characterization = membership_characterized(&g, &spec)?;
            println!("definition: {by_definition}");
            println!("characterization: {by_characterization}");
            println!("agree: {}", by_definition == by_characterization);
            if by_definition != by_characterization {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(
    suite: &str,
    corpus_arg: &str,
    report_path: Option<&Path>,
    jobs: Option<usize>,
) -> Result<ExitCode> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| GroupError::Integrity(format!("thread pool: {e}")))?;
    }
    let corpus = if corpus_arg == "builtin" {
        let c = builtin_corpus(DEFAULT_MAX_ORDER, DEFAULT_MAX_DEGREE)?;
        verify_pinned(&c)?;
        c
    } else {
        load_dir(Path::new(corpus_arg))?
    };
    let ids: Vec<&str> = if suite == "all" {
        SUITE_IDS.to_vec()
    } else {
        vec![suite]
    };
    let start = Instant::now();
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        reports.push(run_suite(id, &corpus)?);
    }
    let bounds = corpus.bounds();
    let info = CorpusInfo {
        source: corpus.source().to_string(),
        entries: corpus.len(),
        max_order: bounds.map(|(o, _)| o as u64),
        max_degree: bounds.map(|(_, d)| d),
    };
    let report = RunReport::new(info, reports, start.elapsed().as_millis());
    print!("{}", report.to_text());
    if let Some(path) = report_path {
        fs::write(path, report.to_json())
            .map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(if report.clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

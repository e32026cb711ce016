//! `coincide`: overlap coincidence and multiple strong coincidence for
//! Pisot substitutions.
//!
//! Exit codes: 0 success, 1 verdict mismatch, 2 gate, parse or fixture
//! failure, 3 cap exhaustion.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use coincidence::analysis::{self, AnalysisOptions, MscSummary, PairReport};
use coincidence::io::SubstitutionFile;
use coincidence::overlap;
use coincidence::strongcoin::{self, GroupG, MscContext};
use coincidence::tiling::SuspensionTiling;
use coincidence::Error;

#[derive(Parser)]
#[command(name = "coincide", version, about = "Overlap and strong coincidence checks for Pisot substitutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Caps {
    /// Initial seeding radius, a rational such as 16 or 33/2 (default 8·max length).
    #[arg(long)]
    radius: Option<String>,
    /// Maximum number of overlap classes.
    #[arg(long, default_value_t = overlap::DEFAULT_CLASS_CAP)]
    cap_classes: usize,
    /// Maximum number of tile maps enumerated.
    #[arg(long, default_value_t = strongcoin::DEFAULT_MAP_CAP)]
    cap_maps: u128,
    /// Largest power of β tried in group membership.
    #[arg(long, default_value_t = strongcoin::DEFAULT_KMAX)]
    kmax: u32,
    /// Level of multiple strong coincidence (default: computed from the overlap graph).
    #[arg(long)]
    level: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline; prints the JSON report.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Overlap graph and overlap-coincidence verdict.
    Overlaps {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
        /// Write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Strong coincidence for one tile map.
    Strong {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
        /// Comma-separated 1-based subtile choices, one per letter (default: all 1).
        #[arg(long)]
        choice: Option<String>,
    },
    /// Multiple strong coincidence over all tile maps of one level.
    Msc {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check every *.json file of a corpus against its recorded verdicts.
    Verify {
        dir: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Column coincidence of a constant-length substitution.
    OracleDekking { file: PathBuf },
}

/// Failure carrying its exit code.
struct Fail {
    code: u8,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail { code: if e.is_cap() { 3 } else { 2 }, message: e.to_string() }
    }
}

fn mismatch(message: String) -> Fail {
    Fail { code: 1, message }
}

fn options(caps: &Caps) -> Result<AnalysisOptions, Fail> {
    let radius = caps
        .radius
        .as_deref()
        .map(|r| {
            r.parse::<BigRational>()
                .map_err(|e| Fail { code: 2, message: format!("invalid radius '{r}': {e}") })
        })
        .transpose()?;
    Ok(AnalysisOptions {
        radius,
        cap_classes: caps.cap_classes,
        cap_maps: caps.cap_maps,
        k_max: caps.kmax,
        level: caps.level,
        witness: true,
    })
}

fn load(path: &Path) -> Result<(SubstitutionFile, coincidence::Substitution), Fail> {
    let file = SubstitutionFile::read(path)?;
    let subst = file.substitution()?;
    Ok((file, subst))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Analyze { file, caps, out } => {
            let (f, subst) = load(&file)?;
            let expected = f.expected()?;
            let a = analysis::analyze(&f.display_name(), &subst, &options(&caps)?)?;
            let text = json(&a.report);
            match out {
                Some(p) => std::fs::write(&p, text + "\n")
                    .map_err(|e| Fail { code: 2, message: format!("{}: {e}", p.display()) })?,
                None => println!("{text}"),
            }
            if !a.report.agreement {
                return Err(mismatch("overlap coincidence and multiple strong coincidence disagree".into()));
            }
            if let Some(exp) = expected {
                check_expected(&a.report, &exp).map_err(mismatch)?;
            }
            Ok(())
        }
        Command::Overlaps { file, caps, dot } => {
            let (f, subst) = load(&file)?;
            let tiling = SuspensionTiling::new(subst)?;
            let stable = analysis::stable_graph(&tiling, &options(&caps)?)?;
            let g = &stable.graph;
            let verdict = overlap::overlap_coincidence(g)?;
            if let Some(p) = dot {
                std::fs::write(&p, g.to_dot(&f.display_name()))
                    .map_err(|e| Fail { code: 2, message: format!("{}: {e}", p.display()) })?;
            }
            println!("vertices: {}", g.vertices.len());
            println!("edges: {}", g.graph.edges().len());
            println!("overlap coincidence: {}", verdict.holds);
            if let overlap::Certificate::Stuck(s) = &verdict.certificate {
                let labels: Vec<String> = s.iter().map(|&i| g.vertices[i].to_string()).collect();
                println!("stuck: {}", labels.join(" "));
            }
            Ok(())
        }
        Command::Strong { file, caps, choice } => {
            let (_, subst) = load(&file)?;
            let tiling = SuspensionTiling::new(subst)?;
            let n = caps.level.unwrap_or(1);
            let level = tiling.level(n)?;
            let choice: Vec<usize> = match choice {
                Some(text) => text
                    .split(',')
                    .map(|x| match x.trim().parse::<usize>() {
                        Ok(k) if k >= 1 => Ok(k - 1),
                        _ => Err(Fail { code: 2, message: format!("invalid choice '{x}'") }),
                    })
                    .collect::<Result<_, _>>()?,
                None => vec![0; tiling.alphabet_size()],
            };
            let tm = tiling.tile_map(&level, choice)?;
            let cp = tiling.solve_control_points(&tm);
            let opts = options(&caps)?;
            let radius = match opts.radius {
                Some(r) => tiling.field().from_rational(r),
                None => tiling.max_length().scale_int(8),
            };
            let patch = tiling.central_patch(&radius)?;
            let group = GroupG::from_patch(&tiling, &patch, opts.k_max);
            let memberships = strongcoin::difference_memberships(&group, &strongcoin::representatives(&tiling, &patch)?, &cp.c);
            let in_group = memberships.iter().all(|(_, k)| k.is_some());
            println!("control points: {}", cp.c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
            println!("admissible: {}", cp.admissible);
            println!("in group: {in_group}");
            if !cp.admissible {
                return Ok(());
            }
            let report = strongcoin::strong_coincidence(&tiling, &cp, opts.cap_classes)?;
            let pairs: Vec<PairReport> = report.pairs.iter().map(PairReport::of).collect();
            println!("{}", json(&pairs));
            println!("strong coincidence: {}", report.holds());
            Ok(())
        }
        Command::Msc { file, caps } => {
            let (_, subst) = load(&file)?;
            let opts = options(&caps)?;
            let tiling = SuspensionTiling::new(subst)?;
            let stable = analysis::stable_graph(&tiling, &opts)?;
            let n = opts.level.unwrap_or_else(|| strongcoin::compute_level_n(&stable.graph));
            let patch = tiling.central_patch(&stable.radius)?;
            let group = GroupG::from_patch(&tiling, &patch, opts.k_max);
            let ctx = MscContext { tiling: &tiling, group: &group, patch: &patch, class_cap: opts.cap_classes, map_cap: opts.cap_maps };
            let r = strongcoin::multiple_strong_coincidence(&ctx, n)?;
            if r.vacuous {
                eprintln!("warning: no tile map passed the admissibility and group filters; the verdict holds vacuously");
            }
            println!("{}", json(&MscSummary::of(&r)));
            Ok(())
        }
        Command::Verify { dir, caps } => verify(&dir, &caps),
        Command::OracleDekking { file } => {
            let (_, subst) = load(&file)?;
            println!("column coincidence: {}", subst.dekking_column_check()?);
            Ok(())
        }
    }
}

fn check_expected(r: &analysis::AnalysisReport, exp: &coincidence::io::Expected) -> Result<(), String> {
    let mut problems = Vec::new();
    let mut cmp = |what: &str, want: Option<bool>, got: Option<bool>| {
        if let Some(w) = want {
            if got != Some(w) {
                problems.push(format!("{what}: expected {w}, got {got:?}"));
            }
        }
    };
    cmp("overlap coincidence", exp.overlap_coincidence, Some(r.overlap.holds));
    cmp("msc", exp.msc, Some(r.msc.holds));
    cmp("dekking", exp.dekking, r.dekking);
    if let Some(l) = exp.level {
        if l != r.msc.level {
            problems.push(format!("level: expected {l}, got {}", r.msc.level));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems.join("; "))
    }
}

fn verify(dir: &Path, caps: &Caps) -> Result<(), Fail> {
    let entries = std::fs::read_dir(dir).map_err(|e| Fail { code: 2, message: format!("{}: {e}", dir.display()) })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        eprintln!("warning: no corpus files in {}", dir.display());
        return Ok(());
    }
    let opts = options(caps)?;
    let mut worst = 0u8;
    println!("{:<28} {:>5} {:>5} {:>3} {:<6} detail", "file", "OC", "MSC", "n", "status");
    for path in &files {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let outcome = (|| -> Result<analysis::AnalysisReport, Fail> {
            let (f, subst) = load(path)?;
            let exp = f.expected()?;
            let a = analysis::analyze(&f.display_name(), &subst, &opts)?;
            if !a.report.agreement {
                return Err(mismatch("overlap coincidence and MSC disagree".into()));
            }
            if let Some(exp) = exp {
                check_expected(&a.report, &exp).map_err(mismatch)?;
            }
            Ok(a.report)
        })();
        match outcome {
            Ok(r) => println!("{:<28} {:>5} {:>5} {:>3} {:<6}", name, r.overlap.holds, r.msc.holds, r.msc.level, "pass"),
            Err(f) => {
                let status = match f.code {
                    1 => "FAIL",
                    3 => "CAP",
                    _ => "ERROR",
                };
                println!("{:<28} {:>5} {:>5} {:>3} {:<6} {}", name, "-", "-", "-", status, f.message);
                // a disagreement outranks fixture errors, which outrank caps
                worst = match (worst, f.code) {
                    (1, _) | (_, 1) => 1,
                    (2, _) | (_, 2) => 2,
                    _ => 3,
                };
            }
        }
    }
    if worst == 0 {
        Ok(())
    } else {
        Err(Fail { code: worst, message: "corpus verification failed".into() })
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

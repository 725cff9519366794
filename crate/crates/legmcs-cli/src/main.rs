//! `legmcs`: Legendrian knot invariants from front diagrams.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use legmcs::augment::{self, Augmentation};
use legmcs::front::FrontDiagram;
use legmcs::mcs::{sweep, Mcs};
use legmcs::{Budget, Dga, Error};
use legmcs_cli::checks::{FrontContext, CHECKS};
use legmcs_cli::{report, svg};

/// Prints a line to stdout, treating a closed pipe (`legmcs … | head`) as a
/// normal end of output rather than a panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// [`out!`] without the trailing newline.
macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "legmcs",
    version,
    about = "Legendrian knot invariants from front diagrams",
    long_about = "Computes the Chekanov–Eliashberg algebra of a front diagram over Z/2, its \
                  augmentations and their chain-homotopy classes, and Morse complex sequences \
                  with the full move calculus; verifies that homotopy classes and MCS \
                  equivalence classes biject by sweeping out explicit move traces.\n\nFront \
                  files hold one word of events, west to east: L<k>/R<k> for a left/right cusp \
                  whose upper strand is at height k (1 = top), X<k> for a crossing of strands \
                  k and k+1. Lines starting with '#' are comments.\n\nThe LEGMCS_BUDGET \
                  environment variable overrides the disk-search node budget (default 10^7)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a front diagram file
    Validate { file: PathBuf },
    /// Print the algebra and its differential; ∂² = 0 is asserted
    Dga {
        file: PathBuf,
        /// Write the algebra as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List augmentations and their homotopy classes with certificates
    Augs { file: PathBuf },
    /// Morse complex sequence operations
    Mcs {
        #[command(subcommand)]
        cmd: McsCmd,
    },
    /// Compute the invariant report (counts, polynomials, rulings)
    Invariants {
        file: PathBuf,
        /// Write the report JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Persist the report in this directory, keyed by the SHA-256 of
        /// the front word; an existing entry must match byte for byte
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Run the property suites on one front or a corpus directory
    Verify {
        /// A single front file (omit when using --corpus)
        file: Option<PathBuf>,
        /// Run on every *.front file in this directory
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Also run the brute-force disk and homotopy oracles
        #[arg(long)]
        deep: bool,
    },
    /// Render the front as a deterministic SVG
    Render {
        file: PathBuf,
        /// Overlay the handleslide marks of this MCS JSON file
        #[arg(long)]
        mcs: Option<PathBuf>,
        /// Overlay disk boundary paths from this JSON file
        #[arg(long)]
        disks: Option<PathBuf>,
        /// Write the SVG here instead of stdout
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum McsCmd {
    /// Decide move-equivalence of the A-form MCSs of two augmentations and
    /// print the move trace
    Equiv {
        file: PathBuf,
        /// First augmentation: an index from `augs`, or a support like
        /// "a1,a3" ("-" for the empty support)
        #[arg(long)]
        aug: String,
        /// Second augmentation, same format
        #[arg(long)]
        aug2: String,
    },
}

fn main() {
    match run() {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {:#}", e);
            std::process::exit(exit_code(&e));
        }
    }
}

/// Exit codes: 1 invalid input, 2 property violation, 3 budget exceeded.
fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(le) = cause.downcast_ref::<Error>() {
            return match le {
                Error::BudgetExceeded { .. } => 3,
                Error::AxiomViolation(_)
                | Error::InvalidMove(_)
                | Error::ForbiddenMove(_)
                | Error::Property(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

fn budget() -> Result<Budget> {
    match std::env::var("LEGMCS_BUDGET") {
        Ok(v) => {
            let nodes: u64 = v
                .trim()
                .parse()
                .with_context(|| format!("LEGMCS_BUDGET must be a node count, got {:?}", v))?;
            Ok(Budget::new(nodes))
        }
        Err(_) => Ok(Budget::default()),
    }
}

/// Reads a front word file: comment lines start with '#', the remaining
/// tokens form the event word.
fn read_front_word(path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let word = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ");
    let word = word.split_whitespace().collect::<Vec<_>>().join(" ");
    if word.is_empty() {
        bail!("{} contains no front word", path.display());
    }
    Ok(word)
}

fn front_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| {
        path.display().to_string()
    })
}

fn context_for(path: &Path) -> Result<FrontContext> {
    FrontContext::new(&front_name(path), &read_front_word(path)?, budget()?)
}

/// Resolves an augmentation selector: an index into the enumeration order,
/// "-" for the empty support, or a comma-separated list of crossing names.
fn parse_aug(dga: &Dga, augs: &[Augmentation], selector: &str) -> Result<Augmentation> {
    let s = selector.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if let Ok(index) = s.parse::<usize>() {
        return augs
            .get(index)
            .cloned()
            .with_context(|| format!("augmentation index {} out of range 0..{}", index, augs.len()));
    }
    let mut support = Vec::new();
    if s != "-" && !s.is_empty() {
        for name in s.split(',') {
            let name = name.trim();
            let g = dga
                .by_name(name)
                .with_context(|| format!("no generator named {:?}", name))?;
            support.push(g);
        }
    }
    let aug = Augmentation::from_support(dga, support)?;
    if !aug.is_augmentation(dga) {
        bail!("{} is not an augmentation: it does not kill the differential", aug.label(dga));
    }
    Ok(aug)
}

fn write_or_print(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, content).with_context(|| format!("writing {}", p.display()))?;
            out!("wrote {}", p.display());
            Ok(())
        }
        None => {
            out_raw!("{}", content);
            Ok(())
        }
    }
}

fn run() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Validate { file } => {
            let word = read_front_word(&file)?;
            let front = FrontDiagram::from_word(&word)?;
            let crossings = front
                .events()
                .iter()
                .filter(|e| e.kind == legmcs::front::EventKind::Crossing)
                .count();
            out!(
                "valid front: {} events, {} crossings ({} of degree 0), {} strands at the widest slot",
                front.events().len(),
                crossings,
                front.degree_zero_crossings().len(),
                (0..front.slots()).map(|t| front.strands_at(t)).max().unwrap_or(0)
            );
            Ok(())
        }
        Cmd::Dga { file, json } => {
            let front = FrontDiagram::from_word(&read_front_word(&file)?)?;
            let dga = Dga::new(&front, budget()?)?;
            if !dga.d_squared_vanishes() {
                return Err(anyhow::Error::new(Error::Property(
                    "d-squared: ∂² does not vanish".into(),
                )));
            }
            match json {
                Some(p) => {
                    let mut doc = serde_json::to_string_pretty(&dga.to_json())?;
                    doc.push('\n');
                    write_or_print(Some(&p), &doc)?;
                }
                None => out_raw!("{}", dga),
            }
            Ok(())
        }
        Cmd::Augs { file } => {
            let cx = context_for(&file)?;
            out!("front: {}", cx.front().word());
            out!("augmentations: {}", cx.augs.len());
            for (i, eps) in cx.augs.iter().enumerate() {
                out!("  [{}] {}", i, eps.label(&cx.dga));
            }
            let classes = augment::homotopy_classes(&cx.dga, &cx.augs)?;
            out!("homotopy classes: {}", classes.len());
            for (c, class) in classes.iter().enumerate() {
                let members: Vec<String> =
                    class.iter().map(|&m| cx.augs[m].label(&cx.dga)).collect();
                out!("  class {}: {}", c, members.join("  "));
                for &m in &class[1..] {
                    let h = augment::find_homotopy(&cx.dga, &cx.augs[class[0]], &cx.augs[m])
                        .ok_or_else(|| {
                            Error::Property("classes disagree with the solver".into())
                        })?;
                    out!(
                        "    certificate {} ~ {}: H = {}",
                        cx.augs[class[0]].label(&cx.dga),
                        cx.augs[m].label(&cx.dga),
                        h.label(&cx.dga)
                    );
                }
            }
            Ok(())
        }
        Cmd::Mcs { cmd: McsCmd::Equiv { file, aug, aug2 } } => {
            let cx = context_for(&file)?;
            let a = parse_aug(&cx.dga, &cx.augs, &aug)?;
            let b = parse_aug(&cx.dga, &cx.augs, &aug2)?;
            let start = Mcs::from_augmentation(&cx.dga, &a)?;
            let target = Mcs::from_augmentation(&cx.dga, &b)?;
            match sweep::are_equivalent(&cx.dga, &start, &target)? {
                Some(trace) => {
                    out!(
                        "equivalent: {} moves take the A-form MCS of {} to that of {}",
                        trace.len(),
                        a.label(&cx.dga),
                        b.label(&cx.dga)
                    );
                    let rows: Vec<serde_json::Value> =
                        trace.iter().map(|m| m.to_json()).collect();
                    out!("{}", serde_json::to_string_pretty(&rows)?);
                    let replayed = sweep::replay(&start, &trace)?;
                    if replayed != target {
                        return Err(anyhow::Error::new(Error::Property(
                            "trace-replay: the printed trace does not land on the target".into(),
                        )));
                    }
                }
                None => out!(
                    "not equivalent: {} and {} lie in different homotopy classes",
                    a.label(&cx.dga),
                    b.label(&cx.dga)
                ),
            }
            Ok(())
        }
        Cmd::Invariants { file, out, store } => {
            let cx = context_for(&file)?;
            let rep = report::build(&cx)?;
            out!(
                "front: {}\naugmentations: {}\nhomotopy classes: {}\nMCS classes: {}",
                rep.front_word, rep.augmentation_count, rep.homotopy_class_count, rep.mcs_class_count
            );
            for (i, class) in rep.classes.iter().enumerate() {
                out!(
                    "  class {}: {}  Poincaré {}  ruling {}",
                    i,
                    class.members.join("  "),
                    class.poincare,
                    class.ruling
                );
            }
            let doc = report::to_json_string(&rep);
            if let Some(dir) = store {
                let path = report::persist(&dir, &rep)?;
                out!("stored {}", path.display());
            }
            match out {
                Some(p) => write_or_print(Some(&p), &doc)?,
                None => {}
            }
            Ok(())
        }
        Cmd::Verify { file, corpus, deep } => {
            let mut files: Vec<PathBuf> = Vec::new();
            if let Some(dir) = corpus {
                let mut entries: Vec<PathBuf> = std::fs::read_dir(&dir)
                    .with_context(|| format!("reading {}", dir.display()))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "front"))
                    .collect();
                entries.sort();
                files.extend(entries);
            }
            if let Some(f) = file {
                files.push(f);
            }
            if files.is_empty() {
                bail!("nothing to verify: pass a front file or --corpus <dir>");
            }
            let mut first_failure: Option<anyhow::Error> = None;
            let mut ran = 0usize;
            for path in &files {
                let cx = context_for(path)?;
                out!("== {} ({})", cx.name, cx.front().word());
                for check in CHECKS {
                    if check.deep_only && !deep {
                        continue;
                    }
                    match (check.run)(&cx, deep) {
                        Ok(detail) => out!("  ok   {:<22} {}", check.id, detail),
                        Err(e) => {
                            out!("  FAIL {:<22} {:#}", check.id, e);
                            if first_failure.is_none() {
                                first_failure = Some(e.context(format!(
                                    "{} failed on {}",
                                    check.id, cx.name
                                )));
                            }
                        }
                    }
                    ran += 1;
                }
            }
            match first_failure {
                Some(e) => Err(e),
                None => {
                    out!("all {} checks passed on {} fronts", ran, files.len());
                    Ok(())
                }
            }
        }
        Cmd::Render { file, mcs, disks, svg: out } => {
            let word = read_front_word(&file)?;
            let front = FrontDiagram::from_word(&word)?;
            let marks = match mcs {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    let value: serde_json::Value = serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", p.display()))?;
                    let m = Mcs::from_json(&value)?;
                    if m.front().word() != front.word() {
                        bail!(
                            "the MCS in {} belongs to the front {:?}, not {:?}",
                            p.display(),
                            m.front().word(),
                            front.word()
                        );
                    }
                    Some(m)
                }
                None => None,
            };
            let disk_paths: Vec<Vec<(usize, usize)>> = match disks {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    let value: serde_json::Value = serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", p.display()))?;
                    let list = value
                        .get("disks")
                        .and_then(|d| d.as_array())
                        .or_else(|| value.as_array())
                        .with_context(|| format!("{} holds no disk list", p.display()))?;
                    list.iter()
                        .map(|d| {
                            let path = d.get("path").and_then(|p| p.as_array()).with_context(
                                || "each disk needs a \"path\" of [slot, strand] pairs",
                            )?;
                            path.iter()
                                .map(|v| {
                                    let pair = v.as_array().filter(|a| a.len() == 2);
                                    let slot = pair
                                        .and_then(|a| a[0].as_u64())
                                        .with_context(|| "bad disk path vertex")?;
                                    let strand = pair
                                        .and_then(|a| a[1].as_u64())
                                        .with_context(|| "bad disk path vertex")?;
                                    Ok((slot as usize, strand as usize))
                                })
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?
                }
                None => Vec::new(),
            };
            let dga = Dga::new(&front, budget()?)?;
            let labels: Vec<(usize, String)> = dga
                .generators()
                .iter()
                .map(|g| (g.event, g.name.clone()))
                .collect();
            let doc = svg::render_svg(&front, marks.as_ref(), &disk_paths, &labels);
            write_or_print(out.as_deref(), &doc)
        }
    }
}

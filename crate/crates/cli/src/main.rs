//! `braceforge`: enumerate skew braces, classify good and bad groups, and
//! report Hopf-Galois correspondence data.
//!
//! Exit status is 0 on success, 1 when a verification fails, and 2 on usage
//! errors or invalid input.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use braceforge::brace::SkewBrace;
use braceforge::classify::{
    brace_order4_nontrivial, example_c2cubed, example_cn_even, example_p_odd, example_pq,
    example_pq_with_kappa, example_q8, first_failure, is_good, verify_theorem,
};
use braceforge::enumerate::{reduce_up_to_iso, type_label, Enumerator};
use braceforge::group::{census, lookup, FiniteGroup, CENSUS_CAP};
use braceforge::report::{parse, render_dot, to_canonical_json, CensusCache, ReportBundle};
use braceforge::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "braceforge", version, about = "Skew braces, good groups and Hopf-Galois correspondence reports")]
struct Cli {
    /// Directory for cached enumerations.
    #[arg(long, global = true, env = "BRACEFORGE_CACHE_DIR", default_value = ".braceforge-cache")]
    cache_dir: PathBuf,
    /// Compute everything from scratch and leave the cache untouched.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for enumeration and classification.
    #[arg(long, global = true, env = "BRACEFORGE_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect the census of groups of order at most 15.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Enumerate or check skew braces.
    #[command(subcommand)]
    Brace(BraceCommand),
    /// Decide whether a group is good.
    Classify {
        /// Census label or path to a group JSON file.
        group: String,
        /// Check every brace instead of stopping at the first bad one.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare the good-group criterion with the full check.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Build one of the explicit bad-group braces.
    Example(ExampleArgs),
    /// Hopf-Galois correspondence reports.
    #[command(subcommand)]
    Hg(HgCommand),
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// List every census group.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Show one group and its Cayley table.
    Show {
        /// Census label or path to a group JSON file.
        group: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum BraceCommand {
    /// Every multiplicative operation compatible with an additive group.
    Enumerate {
        /// Census label or path to a group JSON file.
        #[arg(long)]
        additive: String,
        /// Also compute the isomorphism classes.
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long)]
        json: bool,
        /// Write the enumeration JSON to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Validate a brace JSON file.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Run the good-group criterion against every census group.
    Theorem {
        #[arg(long, default_value_t = CENSUS_CAP)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct ExampleArgs {
    #[command(subcommand)]
    kind: ExampleKind,
    #[arg(long, global = true)]
    json: bool,
    /// Write the brace JSON to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ExampleKind {
    /// Additive Q8, multiplicative D8.
    Q8,
    /// Additive C2^3.
    C2cubed,
    /// Additive Cn for even n, multiplicative Dn.
    CnEven {
        #[arg(long)]
        n: usize,
    },
    /// Additive C_{p^n} x C_{q^m} with q dividing p - 1.
    Pq {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Residue of multiplicative order q; the least one by default.
        #[arg(long)]
        kappa: Option<usize>,
    },
    /// Additive C_{p^n} x C_{p^m} for odd p and m <= n.
    POdd {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// The nontrivial brace on C2 x C2.
    Order4,
}

#[derive(Subcommand, Debug)]
enum HgCommand {
    /// Descriptor of the structure attached to a brace file.
    Report {
        file: PathBuf,
        /// Write the subgroup lattice as a DOT graph.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Record wall time in the provenance block.
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Invalid(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Verification(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn enumerator(cli: &Cli) -> Enumerator {
    let mut e = Enumerator::new();
    if let Some(w) = cli.workers {
        e = e.with_workers(w);
    }
    if !cli.no_cache {
        e = e.with_cache(CensusCache::new(&cli.cache_dir));
    }
    e
}

/// A path to an existing file is read as group JSON; anything else is a
/// census label.
fn load_group(name: &str) -> Result<FiniteGroup, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        return Ok(parse(&fs::read(path)?)?);
    }
    Ok(lookup(name)?.group)
}

fn load_brace(path: &Path) -> Result<SkewBrace, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(parse(&bytes)?)
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Group(GroupCommand::List { json }) => {
            let entries = census(CENSUS_CAP)?;
            if *json {
                let rows: Vec<_> = entries
                    .iter()
                    .map(|e| {
                        json!({
                            "order": e.order,
                            "label": e.label,
                            "abelian": e.group.is_abelian(),
                            "cyclic": e.group.is_cyclic(),
                        })
                    })
                    .collect();
                print!("{}", to_canonical_json(&rows));
            } else {
                print!("{}", render::group_list(&entries));
            }
        }
        Command::Group(GroupCommand::Show { group, json }) => {
            let g = load_group(group)?;
            if *json {
                print!("{}", to_canonical_json(&g));
            } else {
                print!("{}", render::group(&g));
            }
        }
        Command::Brace(BraceCommand::Enumerate {
            additive,
            up_to_iso,
            json,
            out,
        }) => {
            let g = load_group(additive)?;
            let mut e = enumerator(cli).enumerate(&g)?;
            if *up_to_iso {
                e = reduce_up_to_iso(e)?;
            }
            let text = to_canonical_json(&e);
            if let Some(path) = out {
                write_file(path, &text)?;
            }
            if *json {
                print!("{text}");
            } else {
                print!("{}", render::enumeration(&e));
            }
        }
        Command::Brace(BraceCommand::Check { file, json }) => {
            let b = load_brace(file)?;
            if *json {
                let summary = json!({
                    "valid": true,
                    "order": b.order(),
                    "label": b.label(),
                    "dot_type": type_label(b.dot()),
                    "circ_type": type_label(b.circ()),
                });
                print!("{}", to_canonical_json(&summary));
            } else {
                println!(
                    "valid skew brace {} of order {}: additive {}, multiplicative {}",
                    b.label(),
                    b.order(),
                    type_label(b.dot()),
                    type_label(b.circ())
                );
            }
        }
        Command::Classify {
            group,
            exhaustive,
            json,
        } => {
            let g = load_group(group)?;
            let verdict = is_good(&g, *exhaustive, &enumerator(cli))?;
            if let Some(w) = &verdict.witness {
                w.replay().map_err(|e| Failure::Verification(format!("witness does not replay: {e}")))?;
            }
            if *json {
                print!("{}", to_canonical_json(&verdict));
            } else {
                print!("{}", render::verdict(&verdict));
            }
        }
        Command::Verify(VerifyCommand::Theorem { max_order, json }) => {
            let report = verify_theorem(*max_order, &enumerator(cli))?;
            if *json {
                print!("{}", to_canonical_json(&report));
            } else {
                print!("{}", render::theorem(&report));
            }
            if !report.all_match {
                return Err(Failure::Verification(
                    "criterion and full check disagree".into(),
                ));
            }
        }
        Command::Example(args) => run_example(args)?,
        Command::Hg(HgCommand::Report {
            file,
            dot,
            json,
            timing,
        }) => {
            let b = load_brace(file)?;
            let start = Instant::now();
            let mut bundle = ReportBundle::new(&b);
            if *timing {
                bundle.provenance.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            if let Some(path) = dot {
                write_file(path, &render_dot(&bundle.descriptor))?;
            }
            if *json {
                print!("{}", to_canonical_json(&bundle));
            } else {
                print!("{}", render::bundle(&bundle));
            }
        }
    }
    Ok(())
}

fn run_example(args: &ExampleArgs) -> Outcome {
    let b = match &args.kind {
        ExampleKind::Q8 => example_q8(),
        ExampleKind::C2cubed => example_c2cubed(),
        ExampleKind::CnEven { n } => example_cn_even(*n)?,
        ExampleKind::Pq { p, q, n, m, kappa } => match kappa {
            Some(k) => example_pq_with_kappa(*p, *q, *n, *m, *k)?,
            None => example_pq(*p, *q, *n, *m)?,
        },
        ExampleKind::POdd { p, n, m } => example_p_odd(*p, *n, *m)?,
        ExampleKind::Order4 => brace_order4_nontrivial(),
    };
    let witness = first_failure(&b);
    if let Some(w) = &witness {
        w.replay().map_err(|e| Failure::Verification(format!("witness does not replay: {e}")))?;
    }
    if let Some(path) = &args.out {
        write_file(path, &to_canonical_json(&b))?;
    }
    if args.json {
        let report = json!({
            "brace": b,
            "circ_type": type_label(b.circ()),
            "dot_type": type_label(b.dot()),
            "witness": witness,
        });
        print!("{}", to_canonical_json(&report));
    } else {
        print!("{}", render::example(&b, witness.as_ref()));
    }
    Ok(())
}

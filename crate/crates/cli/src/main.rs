//! `setsys`: command-line front end for the `setsys` library.

use std::fmt::Display;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use setsys::gf2::{binary_check, is_basic_binary};
use setsys::graph::circle::{find_circle_obstructions, obstruction_cache_json, EMBEDDED_CACHE, OBSTRUCTION_MAX};
use setsys::graph::ribbon::{ribbon_witness, RIBBON_MAX};
use setsys::io::{parse_document, system_to_json};
use setsys::twisted::{is_vf_safe, orbit, ORBIT_MAX};
use setsys::verify::{run, Suite, VerificationReport};
use setsys::{catalog, check_symmetric_exchange, is_even, is_normal, Error, Op, SetSystem, Step};

#[derive(Parser)]
#[command(name = "setsys", version, about = "Set systems and delta-matroids")]
struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a sequence of operations and print the result.
    Apply {
        /// A JSON file, an edge list, `-` for stdin, or `catalog:NAME`.
        input: String,
        /// Operation tokens: `*e`, `+e`, `del:e`, `con:e`, `pen:e`.
        #[arg(allow_hyphen_values = true)]
        ops: Vec<String>,
        /// Print the result as JSON (give before the operations).
        #[arg(long)]
        json: bool,
    },
    /// Report the properties of a set system.
    Check { input: String },
    /// Print the twisted-dual orbit.
    Orbit {
        input: String,
        /// Keep labeled members instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
    },
    /// Classify an element as Loop, Coloop, PseudoLoop or Ordinary.
    ClassifyElement { input: String, element: String },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print the circle-graph obstructions.
    Obstructions {
        #[command(subcommand)]
        kind: ObstructionKind,
    },
    /// List the catalog names.
    Catalog,
}

#[derive(Subcommand)]
enum ObstructionKind {
    /// The three excluded vertex minors for circle graphs.
    Circle {
        /// Re-derive by exhaustive search instead of printing the cache.
        #[arg(long)]
        derive: bool,
        /// Largest vertex count searched with `--derive`.
        #[arg(long, default_value_t = OBSTRUCTION_MAX)]
        max_n: usize,
        /// Write the cache file here instead of printing it.
        #[arg(long, value_name = "PATH")]
        write: Option<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    suite: SuiteArg,
}

#[derive(Subcommand)]
enum SuiteArg {
    /// vf-safe by orbit ⇔ no 3-minor in the orbit of S3, all systems.
    MainTheorem {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// The 28 tabulated twisted duals of S3.
    Tables,
    /// The catalog identities.
    Identities,
    /// Twist, loop complementation and minor laws on random systems.
    Interactions {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Principal pivot transform laws on random matrices.
    Ppt {
        #[arg(long, default_value_t = 1_000)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Graph operations against set-system operations.
    GraphBridge {
        #[arg(long, default_value_t = 1_000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Binary ⇔ no 3-minor in the orbits of B1 and S3.
    BinaryCorollary {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Re-derive the circle obstructions and compare with the cache.
    CircleObstructions {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Circle graph ⇔ ribbon-graphic, all connected graphs.
    RgConsistency {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Every suite at its defaults.
    All,
}

impl SuiteArg {
    fn suites(&self) -> Vec<Suite> {
        match *self {
            SuiteArg::MainTheorem { max_n } => vec![Suite::MainTheorem { max_n }],
            SuiteArg::Tables => vec![Suite::Tables],
            SuiteArg::Identities => vec![Suite::Identities],
            SuiteArg::Interactions { trials, seed } => vec![Suite::Interactions { trials, seed }],
            SuiteArg::Ppt { trials, max_n, seed } => vec![Suite::Ppt { trials, max_n, seed }],
            SuiteArg::GraphBridge { trials, seed } => vec![Suite::GraphBridge { trials, seed }],
            SuiteArg::BinaryCorollary { max_n } => vec![Suite::BinaryCorollary { max_n }],
            SuiteArg::CircleObstructions { max_n } => vec![Suite::CircleObstructions { max_n }],
            SuiteArg::RgConsistency { max_n } => vec![Suite::RgConsistency { max_n }],
            SuiteArg::All => Suite::defaults(),
        }
    }
}

/// Exit status 1: a checked property failed.
struct PropertyFailure;

enum Failed {
    Property,
    Usage(String),
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed::Usage(e.to_string())
    }
}

impl From<PropertyFailure> for Failed {
    fn from(_: PropertyFailure) -> Self {
        Failed::Property
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failed::Property) => ExitCode::from(1),
        Err(Failed::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failed> {
    match command {
        Command::Apply { input, ops, json } => {
            let s = load(&input)?;
            let steps = ops.iter().map(|t| parse_op(t)).collect::<Result<Vec<_>, _>>()?;
            let out = s.apply_sequence(&steps)?;
            if json {
                println!("{}", system_to_json(&out));
            } else {
                println!("{out}");
            }
        }
        Command::Check { input } => check(&load(&input)?)?,
        Command::Orbit { input, labeled } => {
            let o = orbit(&load(&input)?, !labeled)?;
            println!("orbit size: {}", o.len());
            for m in &o.members {
                println!("{m}");
            }
        }
        Command::ClassifyElement { input, element } => {
            let s = load(&input)?;
            println!("{}", s.classify_element(s.element(&element)?)?);
        }
        Command::Verify(args) => {
            let reports = args
                .suite
                .suites()
                .iter()
                .map(run)
                .collect::<setsys::Result<Vec<VerificationReport>>>()?;
            let mut passed = true;
            for r in &reports {
                print!("{r}");
                passed &= r.passed();
            }
            if reports.len() > 1 {
                let ok = reports.iter().filter(|r| r.passed()).count();
                println!("{ok}/{} suites passed", reports.len());
            }
            if !passed {
                return Err(PropertyFailure.into());
            }
        }
        Command::Obstructions {
            kind: ObstructionKind::Circle { derive, max_n, write },
        } => {
            let text = if derive {
                obstruction_cache_json(&find_circle_obstructions(max_n)?)
            } else {
                EMBEDDED_CACHE.to_string()
            };
            match write {
                Some(path) => fs::write(&path, text).map_err(|e| Failed::Usage(format!("{path}: {e}")))?,
                None => print!("{text}"),
            }
        }
        Command::Catalog => {
            for name in catalog::names() {
                let e = catalog::entry(&name)?;
                println!("{name}\t{}\t{}", e.system, e.source);
            }
        }
    }
    Ok(())
}

fn load(input: &str) -> Result<SetSystem, Failed> {
    if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(catalog::get(name)?);
    }
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failed::Usage(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(input).map_err(|e| Failed::Usage(format!("{input}: {e}")))?
    };
    Ok(parse_document(&text)?.to_system())
}

fn parse_op(token: &str) -> Result<Step, Failed> {
    let (op, e) = if let Some(e) = token.strip_prefix('*') {
        (Op::Twist, e)
    } else if let Some(e) = token.strip_prefix('+') {
        (Op::LoopComplement, e)
    } else if let Some((kind, e)) = token.split_once(':') {
        let op = match kind {
            "del" => Op::Delete,
            "con" => Op::Contract,
            "pen" => Op::Penrose,
            _ => return Err(Failed::Usage(format!("unknown operation {token:?}"))),
        };
        (op, e)
    } else {
        return Err(Failed::Usage(format!("unknown operation {token:?}")));
    };
    if e.is_empty() {
        return Err(Failed::Usage(format!("missing element in {token:?}")));
    }
    Ok(Step::new(e, op))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn line(key: &str, value: impl Display) {
    println!("{key}: {value}");
}

fn check(s: &SetSystem) -> Result<(), Failed> {
    line("system", s);
    line("proper", yes(s.is_proper()));
    if !s.is_proper() {
        return Ok(());
    }
    let g = s.ground();
    match check_symmetric_exchange(s)? {
        None => line("delta-matroid", "yes"),
        Some(w) => line(
            "delta-matroid",
            format!(
                "no (X = {}, Y = {}, u = {})",
                g.format_subset(w.x),
                g.format_subset(w.y),
                g.label(w.u)
            ),
        ),
    }
    line("even", yes(is_even(s)));
    line("normal", yes(is_normal(s)));
    let binary = binary_check(s)?;
    line("binary", format!("{} ({})", yes(binary.is_binary()), binary.reason()));
    line("basic-binary", yes(is_basic_binary(s)?));
    if s.size() <= ORBIT_MAX {
        line("vf-safe", yes(is_vf_safe(s)?));
    } else {
        line("vf-safe", format!("skipped (more than {ORBIT_MAX} elements)"));
    }
    if s.size() <= RIBBON_MAX {
        match ribbon_witness(s)? {
            None => line("ribbon-graphic", "yes"),
            Some(w) => line(
                "ribbon-graphic",
                format!("no (3-minor {} in the orbit of {})", w.witness.minor, w.obstruction),
            ),
        }
    } else {
        line("ribbon-graphic", format!("skipped (more than {RIBBON_MAX} elements)"));
    }
    Ok(())
}

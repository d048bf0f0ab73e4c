use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ffg_core::caps::SizeCaps;
use ffg_core::order::downset_frame;
use ffg_core::workbench::{
    enumerate_posets, enumerate_t0_spaces, export, parse_object, replay, run_suite, search_counterexamples, Bounds,
    Format, Mutation, Property, RunOptions, Witness,
};

#[derive(Parser)]
#[command(name = "ffg", version, about = "Finite frames, biframes and quasi-uniformities workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Poset,
    Space,
    Frame,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally dump) instances up to a size.
    Enumerate {
        #[arg(long, value_enum, default_value = "poset")]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Write every instance as a JSON array.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a named claim suite.
    Suite {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        random_cases: usize,
        /// Write the full report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Corrupt a decider to check that failures are caught
        /// (ultraparacompact, chain-closure, kernel).
        #[arg(long, value_parser = str::parse::<Mutation>)]
        mutate: Option<Mutation>,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
        /// Directory for witness files of failing claims.
        #[arg(long, default_value = "ffg-witnesses")]
        witness_dir: PathBuf,
    },
    /// Find the first frame with a property.
    Search {
        #[arg(long, value_parser = str::parse::<Property>)]
        property: Property,
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Render a JSON object as canonical JSON or DOT.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = str::parse::<Format>, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rerun a failure witness on its own.
    Replay {
        #[arg(long)]
        witness: PathBuf,
    },
}

/// A failure that maps to exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), UsageError> {
    fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Enumerate { kind, max_n, json } => {
            let mut all = Vec::new();
            for n in 0..=max_n {
                let items: Vec<serde_json::Value> = match kind {
                    Kind::Poset => enumerate_posets(n)?.iter().map(serde_json::to_value).collect::<Result<_, _>>()?,
                    Kind::Space => enumerate_t0_spaces(n)?.iter().map(serde_json::to_value).collect::<Result<_, _>>()?,
                    Kind::Frame => enumerate_posets(n)?
                        .iter()
                        .map(|p| Ok::<_, UsageError>(serde_json::to_value(downset_frame(p)?)?))
                        .collect::<Result<_, _>>()?,
                };
                println!("n={n} count={}", items.len());
                all.extend(items);
            }
            if let Some(path) = json {
                write_text(&path, &(serde_json::to_string_pretty(&all)? + "\n"))?;
            }
            Ok(true)
        }
        Command::Suite {
            name,
            max_poset,
            seed,
            random_cases,
            json,
            mutate,
            timing,
            witness_dir,
        } => {
            let bounds = Bounds {
                max_poset,
                random_cases,
            };
            let report = run_suite(&name, &bounds, seed, RunOptions { mutation: mutate, timing })?;
            for c in &report.claims {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let exact = if c.exact { "" } else { " (inexact: cap hit)" };
                println!(
                    "{tag} {}/{} [{}] instances={} applicable={}{exact}",
                    c.suite,
                    c.id,
                    serde_json::to_value(c.status)?.as_str().unwrap_or_default(),
                    c.instances,
                    c.applicable
                );
            }
            if let Some(path) = json {
                write_text(&path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            }
            if !report.passed {
                fs::create_dir_all(&witness_dir)?;
                for w in report.witnesses() {
                    let path = witness_dir.join(format!("{}.json", w.claim));
                    write_text(&path, &(serde_json::to_string_pretty(w)? + "\n"))?;
                    eprintln!("witness for {}: {} ({})", w.claim, path.display(), w.message);
                }
            }
            println!("{}", if report.passed { "suite passed" } else { "suite failed" });
            Ok(report.passed)
        }
        Command::Search {
            property,
            max_poset,
            json,
        } => {
            let outcome = search_counterexamples(property, max_poset)?;
            match &outcome.witness {
                Some(w) => println!(
                    "{}: found after {} frames, {} elements: {} ({})",
                    property.name(),
                    outcome.examined,
                    w.frame_size,
                    serde_json::to_string(&w.poset)?,
                    w.detail
                ),
                None => println!(
                    "{}: none among {} frames from posets with at most {max_poset} points",
                    property.name(),
                    outcome.examined
                ),
            }
            if let Some(path) = json {
                write_text(&path, &(serde_json::to_string_pretty(&outcome)? + "\n"))?;
            }
            Ok(true)
        }
        Command::Export { input, format, out } => {
            let text = fs::read_to_string(&input).map_err(|e| UsageError(format!("{}: {e}", input.display())))?;
            let rendered = export(&parse_object(&text)?, format)?;
            match out {
                Some(path) => write_text(&path, &rendered)?,
                None => print!("{rendered}"),
            }
            Ok(true)
        }
        Command::Replay { witness } => {
            let text = fs::read_to_string(&witness).map_err(|e| UsageError(format!("{}: {e}", witness.display())))?;
            let w: Witness = serde_json::from_str(&text)?;
            match replay(&w)? {
                Ok(()) => {
                    println!("{}: passes on this instance", w.claim);
                    Ok(true)
                }
                Err(m) => {
                    println!("{}: failure reproduced: {m}", w.claim);
                    Ok(false)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    if let Err(e) = SizeCaps::from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

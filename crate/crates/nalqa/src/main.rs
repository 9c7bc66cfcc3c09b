use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use nalqa::dep;
use nalqa::discourse::Integrator;
use nalqa::eval;
use nalqa::kb::KbDirectory;
use nalqa::query::{self, AskOutcome};

/// Knowledge-based question answering over dependency-parsed news.
#[derive(Parser)]
#[command(name = "nalqa", version, about)]
struct Cli {
    /// Knowledge directory (falls back to $NALQA_KB, then `.`)
    #[arg(long, global = true)]
    kb: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the shipped ontology and gazetteer plus an empty network
    Init {
        /// Reset an existing non-empty directory
        #[arg(long)]
        force: bool,
    },
    /// Understand parsed news sentences and append their triples
    Ingest {
        /// Dependency parse file (one document; sentences separated by
        /// blank lines)
        #[arg(long)]
        parses: PathBuf,
    },
    /// Answer a question against the knowledge base
    Ask {
        /// Question text (omit when --parse is given)
        question: Option<String>,
        /// Use an externally produced dependency parse instead of the
        /// built-in parser
        #[arg(long)]
        parse: Option<PathBuf>,
        /// Disable event-constraint relaxation
        #[arg(long)]
        no_relax: bool,
        /// Print the path derivation to standard error
        #[arg(long)]
        explain: bool,
    },
    /// Scoring and statistics utilities
    Eval {
        #[command(subcommand)]
        what: EvalCommand,
    },
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Pair-wise superiority scoring over a judgments file
    Score { file: PathBuf },
    /// Timing statistics over a one-number-per-line file
    Stats { file: PathBuf },
}

fn kb_dir(cli: &Cli) -> KbDirectory {
    let root = cli
        .kb
        .clone()
        .or_else(|| std::env::var_os("NALQA_KB").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    KbDirectory::new(root)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let dir = kb_dir(cli);
    match &cli.command {
        Command::Init { force } => {
            dir.init(*force)?;
            println!("initialized knowledge directory at {}", dir.root.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Ingest { parses } => {
            let kb = dir.load()?;
            let text = fs::read_to_string(parses)
                .with_context(|| format!("reading {}", parses.display()))?;
            let graphs = dep::parse_file(&text)?;
            let integrator = Integrator::new(&kb.gaz, &kb.onto);
            let salt = format!("ingest-{}", kb.net.len());
            let out = integrator.integrate(&graphs, &salt)?;
            let mut net = kb.net.clone();
            let before = net.len();
            for t in out.triples {
                net.insert(t)?;
            }
            dir.save_network(&net)?;
            println!(
                "ingested {}: +{} triples, {} entities, {} events",
                parses.display(),
                net.len() - before,
                out.entity_count,
                out.event_count
            );
            for w in &out.warnings {
                println!("warning: {w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ask {
            question,
            parse,
            no_relax,
            explain,
        } => {
            let kb = dir.load()?;
            let relax = !no_relax;
            let outcome = match (question, parse) {
                (Some(q), None) => {
                    if *explain {
                        match query::parse_question(q, &kb.lexicon) {
                            Ok(g) => print_derivation(&g, q, &kb),
                            Err(e) => eprintln!("derivation unavailable: {e}"),
                        }
                    }
                    query::ask(q, &kb, relax)?
                }
                (q, Some(path)) => {
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let graphs = dep::parse_file(&text)?;
                    let graph = graphs
                        .first()
                        .ok_or_else(|| anyhow!("parse file {} is empty", path.display()))?;
                    let recovered: String = graph
                        .tokens
                        .iter()
                        .map(|t| t.word.as_str())
                        .collect::<Vec<_>>()
                        .join(" ");
                    let text_for_form = q.clone().unwrap_or(recovered);
                    if *explain {
                        print_derivation(graph, &text_for_form, &kb);
                    }
                    query::ask_graph(graph, &text_for_form, &kb, relax)?
                }
                (None, None) => {
                    return Err(anyhow!("pass a question or --parse FILE"));
                }
            };
            match outcome {
                AskOutcome::Answer(text) => {
                    println!("{text}");
                    Ok(ExitCode::SUCCESS)
                }
                AskOutcome::Explanation(text) => {
                    println!("{text}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Eval { what } => match what {
            EvalCommand::Score { file } => {
                let text = fs::read_to_string(file)
                    .with_context(|| format!("reading {}", file.display()))?;
                let judgments = eval::parse_judgments(&text)?;
                let mut systems: Vec<String> = Vec::new();
                for j in &judgments {
                    for s in [&j.x, &j.y] {
                        if !systems.contains(s) {
                            systems.push(s.clone());
                        }
                    }
                }
                let totals = eval::score(&systems, &judgments)?;
                for (system, total) in &totals {
                    println!("{system}\t{total}");
                }
                Ok(ExitCode::SUCCESS)
            }
            EvalCommand::Stats { file } => {
                let text = fs::read_to_string(file)
                    .with_context(|| format!("reading {}", file.display()))?;
                let series = eval::parse_series(&text)?;
                let stats = eval::time_stats(&series)?;
                println!("max\t{:.4}", stats.max);
                println!("min\t{:.4}", stats.min);
                println!("mean\t{:.4}", stats.mean);
                println!("stddev\t{:.4}", stats.stddev);
                println!("stddev_population\t{:.4}", stats.stddev_population);
                println!("variance\t{:.4}", stats.variance);
                println!("variance_population\t{:.4}", stats.variance_population);
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn print_derivation(graph: &dep::DepGraph, question: &str, kb: &nalqa::kb::Kb) {
    let meta = query::detect_form(question);
    match query::build_query_network(graph, meta, &kb.gaz, &kb.onto) {
        Ok(qnet) => {
            let r = query::reduce(&qnet);
            eprintln!("Q:");
            for p in &r.q {
                eprintln!("  {p}");
            }
            if let Some(a) = &r.answer {
                eprintln!("A:\n  {a}");
            }
            if r.under_constrained {
                eprintln!("note: the question is under-constrained");
            }
            let stored = kb.net.enumerate_paths();
            eprintln!("S ({} paths):", stored.len());
            for p in stored {
                eprintln!("  {p}");
            }
        }
        Err(e) => eprintln!("derivation unavailable: {e}"),
    }
}

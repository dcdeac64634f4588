//! Command-line surface: classify graphs, run censuses, compute homology,
//! verify move scripts, check the axiom, search for bounded reductions, and
//! reproduce the headline computations.
//!
//! Machine-readable output is JSON lines on stdout; diagnostics go to
//! stderr. Exit status 0 on success, 1 when a requested check fails
//! (an illegal script, a failed reproduction), 2 on parse or capacity
//! errors.

use clap::{Parser, Subcommand, ValueEnum};
use collapse_lab::enumerate::{CensusSource, CensusSpec};
use collapse_lab::reproduce::CriterionReport;
use collapse_lab::{
    classify, homology, ingest_graph6_stream, parse_script, reproduce, run_census,
    write_outputs, Filter, Graph, Kernel, ScriptError,
};
use serde_json::json;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "collapse-lab", version, about = "Decision engine and search harness for graph contractibility classes and clique-complex homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    EdgeList,
}

#[derive(Subcommand)]
enum Command {
    /// Classify graphs: homology, contractibility classes, witnesses
    Classify {
        /// Input file of graphs, `-` for stdin
        #[arg(long, default_value = "-")]
        input: String,
        /// Input format; auto-detected from the first byte when omitted
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Use the published pair-scan for the axiom instead of the faithful one
        #[arg(long)]
        strict_pseudocode: bool,
    },
    /// Run a census over generated or streamed graphs
    Search {
        /// Vertex count for the internal generator
        #[arg(long)]
        n: Option<usize>,
        /// graph6 stream to scan, `-` for stdin
        #[arg(long, conflicts_with = "generate")]
        input: Option<String>,
        /// Use the internal connected-graph generator (requires --n)
        #[arg(long)]
        generate: bool,
        /// Conjunctive filters, re-ordered cheap-first (repeatable)
        #[arg(long = "filter")]
        filter: Vec<Filter>,
        /// Worker threads (0 = all cores)
        #[arg(long, env = "COLLAPSE_LAB_WORKERS", default_value_t = 0)]
        workers: usize,
        /// Write <prefix>.jsonl and <prefix>.g6 with the matches
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        strict_pseudocode: bool,
        /// Suppress progress reporting on stderr
        #[arg(long)]
        quiet: bool,
    },
    /// Reduced homology of the clique complex of each input graph
    Homology {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Replay a move script, checking the legality of every move
    VerifyScript {
        /// Script file: an edge-list graph block, then one move per line
        script: PathBuf,
        /// Additionally require the final graph to be a single vertex
        #[arg(long)]
        to_k1: bool,
    },
    /// Check the axiom on each input graph
    AxiomCheck {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        strict_pseudocode: bool,
    },
    /// Bounded breadth-first hunt for a reduction of each input graph to K1
    ISearch {
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Maximum cumulative edge gluings along a reduction
        #[arg(long, default_value_t = 2)]
        max_edge_glues: usize,
        /// Maximum number of explored states before giving up
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
    },
    /// Re-run a headline computation and compare against expectations
    Reproduce {
        /// Criterion id: A1, A2, A3, A4, A5, or A6
        target: String,
        /// Largest vertex count for the A2 sweep
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// graph6 stream of connected 11-vertex graphs (required for A6)
        #[arg(long)]
        input: Option<String>,
        #[arg(long, env = "COLLAPSE_LAB_WORKERS", default_value_t = 0)]
        workers: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn open_reader(input: &str) -> Result<Box<dyn BufRead + Send>, String> {
    if input == "-" {
        Ok(Box::new(BufReader::new(std::io::stdin())))
    } else {
        let file = File::open(input).map_err(|e| format!("{input}: {e}"))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

/// Read all graphs from a file or stdin. graph6 streams carry one graph per
/// line; an edge-list file holds a single graph.
fn read_graphs(input: &str, format: Option<Format>) -> Result<Vec<Graph>, String> {
    let mut text = String::new();
    open_reader(input)?
        .read_to_string(&mut text)
        .map_err(|e| e.to_string())?;
    let detected = match format {
        Some(f) => f,
        None => match text.trim_start().bytes().next() {
            Some(b) if b.is_ascii_digit() || b == b'#' => Format::EdgeList,
            _ => Format::Graph6,
        },
    };
    match detected {
        Format::EdgeList => Ok(vec![
            collapse_lab::io::parse_edge_list(&text).map_err(|e| e.to_string())?
        ]),
        Format::Graph6 => ingest_graph6_stream(std::io::Cursor::new(text))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string()),
    }
}

fn print_report(report: &CriterionReport) -> ExitCode {
    for line in &report.lines {
        println!("[{}] {}", report.id, line);
    }
    if report.pass {
        println!("[{}] PASS", report.id);
        ExitCode::SUCCESS
    } else {
        println!("[{}] FAIL", report.id);
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Classify {
            input,
            format,
            strict_pseudocode,
        } => {
            let kernel = Kernel::new();
            for g in read_graphs(&input, format)? {
                let record =
                    classify(&kernel, &g, strict_pseudocode).map_err(|e| e.to_string())?;
                println!("{}", serde_json::to_string(&record).unwrap());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            n,
            input,
            generate,
            filter,
            workers,
            out,
            strict_pseudocode,
            quiet,
        } => {
            let source = match (generate, input) {
                (true, None) => CensusSource::Generate {
                    n: n.ok_or("--generate requires --n")?,
                },
                (false, Some(path)) => {
                    CensusSource::Stream(Box::new(ingest_graph6_stream(open_reader(&path)?)))
                }
                (false, None) => return Err("pass --generate or --input".into()),
                (true, Some(_)) => unreachable!("clap conflicts_with"),
            };
            let result = run_census(CensusSpec {
                source,
                filters: filter,
                workers,
                strict_pseudocode,
                quiet,
            })
            .map_err(|e| e.to_string())?;
            for (_, record) in &result.matched {
                println!("{}", serde_json::to_string(record).unwrap());
            }
            println!(
                "{}",
                json!({
                    "total_scanned": result.total_scanned,
                    "filter_counts": result.filter_counts,
                    "matched": result.matched.len(),
                })
            );
            if let Some(prefix) = out {
                write_outputs(&result, &prefix).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { input, format } => {
            for g in read_graphs(&input, format)? {
                let profile = homology(&g).map_err(|e| e.to_string())?;
                println!(
                    "{}",
                    json!({
                        "n": g.n(),
                        "m": g.edge_count(),
                        "betti": profile.betti,
                        "torsion": profile.torsion,
                        "trivial": profile.is_trivial(),
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyScript { script, to_k1 } => {
            let text =
                std::fs::read_to_string(&script).map_err(|e| format!("{}: {e}", script.display()))?;
            let parsed = parse_script(&text).map_err(|e| e.to_string())?;
            let kernel = Kernel::new();
            match kernel.verify_script(&parsed) {
                Ok(final_graph) => {
                    let reached_k1 = final_graph.n() == 1;
                    println!(
                        "{}",
                        json!({
                            "legal": true,
                            "final_n": final_graph.n(),
                            "final_m": final_graph.edge_count(),
                            "reached_k1": reached_k1,
                        })
                    );
                    if to_k1 && !reached_k1 {
                        eprintln!("script is legal but ends at {} vertices", final_graph.n());
                        return Ok(ExitCode::from(1));
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ ScriptError::Capacity { .. }) => Err(e.to_string()),
                Err(e) => {
                    eprintln!("{e}");
                    println!("{}", json!({ "legal": false, "error": e.to_string() }));
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::AxiomCheck {
            input,
            format,
            strict_pseudocode,
        } => {
            let kernel = Kernel::new();
            for g in read_graphs(&input, format)? {
                let report = kernel.check_axiom(&g, strict_pseudocode);
                println!(
                    "{}",
                    json!({
                        "canonical_g6": collapse_lab::canonical_form(&g).to_string(),
                        "holds": report.holds,
                        "failing_vertex": report.failing_vertex,
                        "checked_pairs": report.checked_pairs,
                    })
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ISearch {
            input,
            format,
            max_edge_glues,
            max_states,
        } => {
            let kernel = Kernel::new();
            for g in read_graphs(&input, format)? {
                match kernel.bounded_i_search(&g, max_edge_glues, max_states) {
                    Some(script) => {
                        let moves: Vec<String> =
                            script.moves.iter().map(|m| m.to_string()).collect();
                        println!("{}", json!({ "found": true, "moves": moves }));
                    }
                    None => println!("{}", json!({ "found": false })),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reproduce {
            target,
            max_n,
            input,
            workers,
        } => {
            let report = match target.to_ascii_uppercase().as_str() {
                "A1" => reproduce::a1(workers),
                "A2" => reproduce::a2(max_n, workers),
                "A3" => reproduce::a3(workers),
                "A4" => reproduce::a4(workers),
                "A5" => reproduce::a5(workers),
                "A6" => {
                    let path = input.ok_or("A6 needs --input with a graph6 stream of connected 11-vertex graphs")?;
                    let stream = ingest_graph6_stream(open_reader(&path)?);
                    reproduce::a6(Box::new(stream), workers).map_err(|e| e.to_string())?
                }
                other => return Err(format!("unknown criterion `{other}` (expected A1..A6)")),
            };
            Ok(print_report(&report))
        }
    }
}

//! `kasteleyn` — file-driven matching counts, Pfaffians, signed sums,
//! crossing-profile equalization, move-script replay, half-circle SVG
//! rendering, and the randomized verification suites.
//!
//! Exit codes: 0 success, 2 input error, 3 unmet precondition,
//! 4 internal oracle mismatch, 5 no solution exists, 6 invalid move.

mod render;

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kasteleyn::embedding::{profile_from_json, profile_to_json, EmbeddingError, VertexOrder};
use kasteleyn::graph::{enumerate_perfect_matchings, graph_from_json, Graph, WeightAssignment};
use kasteleyn::matching::{
    matching_sum, pfaffian_expand, pfaffian_of_graph, signed_sum, skew_from_graph,
};
use kasteleyn::moves::{apply_script, ledger_to_modification, script_from_json, MoveError};
use kasteleyn::solver::{
    equalize_capped, kasteleyn_weights_capped, SolverError, DEFAULT_MATCHING_CAP,
};
use kasteleyn::verify::run_all;

#[derive(Parser)]
#[command(name = "kasteleyn", version, about = "Perfect matchings, Pfaffians, and crossing-profile sign bookkeeping", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matching generating function m(G, ω) and the matching count
    Count {
        /// Graph JSON file
        graph: PathBuf,
    },
    /// Print Pf(G, ω) for a vertex order, cross-checked against the matrix expansion
    Pfaffian {
        graph: PathBuf,
        /// Vertex order as a comma list, e.g. 2,1,4,3 (default: 1..n)
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<u32>>,
    },
    /// Print the signed sum s(G, ω, η) for a crossing profile
    SignedSum {
        graph: PathBuf,
        /// Crossing profile JSON file
        profile: PathBuf,
    },
    /// Find a sign modification making two profiles' signed sums equal
    Equalize {
        graph: PathBuf,
        profile_a: PathBuf,
        profile_b: PathBuf,
        /// Abort if the graph has more perfect matchings than this
        #[arg(long, default_value_t = DEFAULT_MATCHING_CAP)]
        max_matchings: usize,
    },
    /// Find signs making the Pfaffian count matchings, and check m = Pf
    Kasteleyn {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<u32>>,
        #[arg(long, default_value_t = DEFAULT_MATCHING_CAP)]
        max_matchings: usize,
    },
    /// Replay a move script: final profile, ledger, and both signed sums
    Moves {
        graph: PathBuf,
        profile: PathBuf,
        /// Move script JSON file
        script: PathBuf,
    },
    /// Write an SVG of the half-circle embedding
    Render {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<u32>>,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the randomized invariant suites
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per suite (default: per-suite built-ins)
        #[arg(long)]
        trials: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn input_error(e: impl Display) -> Failure {
    fail(2, e)
}

fn embedding_failure(e: EmbeddingError) -> Failure {
    match e {
        EmbeddingError::NotSimpleGraph => fail(3, e),
        other => fail(2, other),
    }
}

fn solver_failure(e: SolverError) -> Failure {
    match e {
        SolverError::NoSolution => fail(5, e),
        SolverError::VerificationFailed => fail(4, e),
        SolverError::TooManyMatchings { .. } => fail(3, e),
        SolverError::Embedding(inner) => embedding_failure(inner),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<(Graph, WeightAssignment), Failure> {
    graph_from_json(&read_file(path)?).map_err(input_error)
}

fn resolve_order(n: u32, flag: Option<Vec<u32>>) -> Result<VertexOrder, Failure> {
    match flag {
        None => Ok(VertexOrder::identity(n)),
        Some(seq) => VertexOrder::new(seq).map_err(embedding_failure),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Count { graph } => {
            let (g, w) = load_graph(&graph)?;
            println!("m = {}", matching_sum(&g, &w));
            println!("count = {}", enumerate_perfect_matchings(&g).len());
            Ok(())
        }
        Command::Pfaffian { graph, order } => {
            let (g, w) = load_graph(&graph)?;
            let ord = resolve_order(g.vertex_count(), order)?;
            let pf = pfaffian_of_graph(&g, &w, &ord).map_err(embedding_failure)?;
            let expansion =
                pfaffian_expand(&skew_from_graph(&g, &w, &ord).map_err(embedding_failure)?);
            println!("Pf = {pf}");
            println!("expansion = {expansion}");
            if pf != expansion {
                return Err(fail(4, "signed sum and matrix expansion disagree"));
            }
            Ok(())
        }
        Command::SignedSum { graph, profile } => {
            let (g, w) = load_graph(&graph)?;
            let p = profile_from_json(&g, &read_file(&profile)?).map_err(input_error)?;
            println!("s = {}", signed_sum(&g, &w, &p));
            Ok(())
        }
        Command::Equalize {
            graph,
            profile_a,
            profile_b,
            max_matchings,
        } => {
            let (g, w) = load_graph(&graph)?;
            let a = profile_from_json(&g, &read_file(&profile_a)?).map_err(input_error)?;
            let b = profile_from_json(&g, &read_file(&profile_b)?).map_err(input_error)?;
            let modification =
                equalize_capped(&g, &w, &a, &b, max_matchings).map_err(solver_failure)?;
            println!("{}", modification.to_json());
            Ok(())
        }
        Command::Kasteleyn {
            graph,
            order,
            max_matchings,
        } => {
            let (g, w) = load_graph(&graph)?;
            let ord = resolve_order(g.vertex_count(), order)?;
            let modification =
                kasteleyn_weights_capped(&g, &w, &ord, max_matchings).map_err(solver_failure)?;
            println!("{}", modification.to_json());
            let m = matching_sum(&g, &w);
            let pf = pfaffian_of_graph(&g, &modification.apply(&w), &ord)
                .map_err(embedding_failure)?;
            if m != pf {
                return Err(fail(4, "modified Pfaffian does not equal m"));
            }
            println!("m = Pf = {m}");
            Ok(())
        }
        Command::Moves {
            graph,
            profile,
            script,
        } => {
            let (g, w) = load_graph(&graph)?;
            let start = profile_from_json(&g, &read_file(&profile)?).map_err(input_error)?;
            let script = script_from_json(&read_file(&script)?).map_err(|e| match e {
                MoveError::Json(_) => input_error(e),
                other => fail(6, other),
            })?;
            let (end, ledger) = apply_script(&g, &start, &script).map_err(|e| fail(6, e))?;
            let before = signed_sum(&g, &w, &start);
            let after = signed_sum(&g, &ledger_to_modification(&ledger).apply(&w), &end);
            println!("profile = {}", profile_to_json(&end));
            println!("ledger = {}", ledger.to_json());
            println!("s_before = {before}");
            println!("s_after = {after}");
            if before != after {
                return Err(fail(4, "signed sum changed under a valid script"));
            }
            Ok(())
        }
        Command::Render { graph, order, out } => {
            let (g, _) = load_graph(&graph)?;
            let ord = resolve_order(g.vertex_count(), order)?;
            let svg = render::render_svg(&g, &ord).map_err(embedding_failure)?;
            std::fs::write(&out, svg)
                .map_err(|e| input_error(format!("{}: {e}", out.display())))?;
            Ok(())
        }
        Command::Verify { seed, trials } => {
            let report = run_all(seed, trials);
            println!("{report}");
            if report.all_passed() {
                Ok(())
            } else {
                Err(fail(4, "one or more verification suites failed"))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

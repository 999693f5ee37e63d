//! `tightcut`: tight cuts, decompositions and laminar ELP cuts from the
//! command line.
//!
//! Every run writes one JSON report per line (or the same data as indented
//! text). Exit codes: 0 success, 1 domain error, 2 usage error, 3 internal
//! invariant violation.

mod render;

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tightcut_core::corpus::{bundled_connected_graphs, filter_matching_covered, CorpusEntry};
use tightcut_core::elp::{find_nontrivial_barrier, find_nontrivial_elp_cut, find_two_separations};
use tightcut_core::graph::io::{parse_graphs, to_edge_list, to_graph6};
use tightcut_core::laminar::{
    derived_elp_cut, find_laminar_elp_with, find_structure_avoiding_with, LaminarConfig, Policy,
};
use tightcut_core::matching::{
    deficiency_witness, has_perfect_matching, is_bicritical, is_matching_covered,
};
use tightcut_core::oracle::{self, verify_graph};
use tightcut_core::tightcuts::{
    brick_number, classify, decompose, is_tight, tightness_witness, Strategy,
};
use tightcut_core::{boundary, Error, Multigraph, Vertex, VertexSet};

#[derive(Parser)]
#[command(
    name = "tightcut",
    version,
    about = "Tight cuts and ELP structures of matching covered graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    SeparationFirst,
    BarrierFirst,
}

#[derive(Subcommand)]
enum Command {
    /// Matching coverage and related facts about a graph.
    Check {
        /// Edge-list or graph6 file, or `-` for stdin.
        input: String,
    },
    /// Whether the cut with the given shore is tight.
    Tight {
        input: String,
        /// Comma-separated 1-based vertex ids.
        #[arg(long)]
        shore: String,
    },
    /// Tight cut decomposition into bricks and braces.
    Decompose {
        input: String,
        /// a: first ELP cut; b: most balanced candidate; c: reversed vertex order.
        #[arg(long, default_value = "a", value_parser = ["a", "b", "c"])]
        strategy: String,
    },
    /// A nontrivial barrier, the 2-separations and a nontrivial ELP cut.
    Elp { input: String },
    /// A sheltered nontrivial barrier or a 2-separation cut laminar with
    /// the given tight cut.
    Laminar {
        input: String,
        #[arg(long)]
        shore: String,
        /// Instead, look for a structure avoiding this vertex.
        #[arg(long)]
        avoid: Option<Vertex>,
        #[arg(long, value_enum, default_value_t = PolicyArg::SeparationFirst)]
        policy: PolicyArg,
        /// Report internal errors instead of falling back to exhaustive search.
        #[arg(long)]
        strict: bool,
    },
    /// Cross-check every routine against brute force; one report per graph.
    Verify {
        /// Input files; the bundled corpus when none are given.
        inputs: Vec<String>,
        /// Skip graphs with more vertices than this.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Filter graphs down to the connected matching covered ones.
    Corpus {
        /// Input file; the bundled list when omitted.
        input: Option<String>,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

/// Why a run stopped early, mapped onto exit codes.
enum Failure {
    Usage(String),
    Domain(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => m.clone(),
            Failure::Domain(e) => e.to_string(),
        }
    }

    fn payload(&self) -> Value {
        let kind = match self {
            Failure::Usage(_) => "usage",
            Failure::Domain(_) => "domain",
            Failure::Internal(_) => "internal",
        };
        let mut err = json!({ "kind": kind, "message": self.message() });
        if let Failure::Domain(Error::NotTight { witness }) = self {
            err["witness"] = json!(witness);
        }
        json!({ "error": err })
    }
}

struct Input {
    text: String,
    digest: String,
}

fn read_input(path: &str) -> Result<Input, Failure> {
    let mut bytes = Vec::new();
    let read = if path == "-" {
        io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        fs::read(path).map(|b| bytes = b)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::Usage(format!("{path} is not UTF-8 text")))?;
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Input { text, digest })
}

fn single_graph(input: &Input) -> Result<Multigraph, Failure> {
    let mut graphs = parse_graphs(&input.text)?;
    if graphs.len() != 1 {
        return Err(Failure::Usage(format!(
            "input holds {} graphs; this command takes one",
            graphs.len()
        )));
    }
    Ok(graphs.remove(0))
}

fn parse_shore(text: &str, n: usize) -> Result<VertexSet, Failure> {
    let mut shore = VertexSet::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: Vertex = tok
            .parse()
            .map_err(|_| Failure::Usage(format!("bad vertex id `{tok}` in --shore")))?;
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: n,
            }
            .into());
        }
        shore.insert(v);
    }
    Ok(shore)
}

struct Emitter {
    format: Format,
    command: Vec<String>,
}

impl Emitter {
    fn emit(&self, digest: Option<&str>, result: Value, elapsed_ms: u128) {
        let report = json!({
            "command": self.command,
            "input_digest": digest,
            "result": result,
            "elapsed_ms": elapsed_ms as u64,
        });
        match self.format {
            Format::Json => println!("{report}"),
            Format::Text => print!("{}", render::text(&report)),
        }
    }
}

fn check(g: &Multigraph) -> Result<Value, Failure> {
    let mc = is_matching_covered(g);
    let mut out = json!({
        "vertex_count": g.vertex_count(),
        "edge_count": g.edge_count(),
        "connected": g.is_connected(),
        "bipartite": g.is_bipartite(),
        "perfect_matching": has_perfect_matching(g),
        "matching_covered": mc,
    });
    if mc {
        out["bicritical"] = json!(is_bicritical(g));
        out["classification"] = json!(classify(g)?);
        out["brick_number"] = json!(brick_number(g)?);
    } else if !has_perfect_matching(g) {
        out["deficiency"] = json!(deficiency_witness(g)?);
    }
    Ok(out)
}

fn tight(g: &Multigraph, shore: &str) -> Result<Value, Failure> {
    let c = boundary(g, &parse_shore(shore, g.vertex_count())?)?;
    let tight = is_tight(g, &c)?;
    let witness = if tight {
        None
    } else {
        tightness_witness(g, &c)
    };
    Ok(json!({ "cut": c, "tight": tight, "witness": witness }))
}

fn elp(g: &Multigraph) -> Result<Value, Failure> {
    if !is_matching_covered(g) {
        return Err(Error::NotMatchingCovered.into());
    }
    Ok(json!({
        "bicritical": is_bicritical(g),
        "barrier": find_nontrivial_barrier(g)?,
        "two_separations": find_two_separations(g),
        "elp_cut": find_nontrivial_elp_cut(g)?,
    }))
}

fn laminar(
    g: &Multigraph,
    shore: &str,
    avoid: Option<Vertex>,
    policy: PolicyArg,
    strict: bool,
) -> Result<Value, Failure> {
    let c = boundary(g, &parse_shore(shore, g.vertex_count())?)?;
    let cfg = LaminarConfig {
        oracle_fallback: !strict,
        oracle_bound: oracle::max_order(),
        policy: match policy {
            PolicyArg::SeparationFirst => Policy::SeparationFirst,
            PolicyArg::BarrierFirst => Policy::BarrierFirst,
        },
        ..LaminarConfig::default()
    };
    if let Some(t) = avoid {
        return Ok(
            json!({ "cut": c, "t": t, "outcome": find_structure_avoiding_with(g, &c, t, &cfg)? }),
        );
    }
    let result = find_laminar_elp_with(g, &c, &cfg)?;
    let derived = derived_elp_cut(g, &c, &result)?;
    Ok(json!({ "cut": c, "result": result, "derived_elp_cut": derived }))
}

fn corpus_entries(input: Option<&Input>) -> Result<Vec<CorpusEntry>, Failure> {
    Ok(match input {
        None => bundled_connected_graphs(),
        Some(input) => parse_graphs(&input.text)?
            .into_iter()
            .enumerate()
            .map(|(i, graph)| CorpusEntry {
                id: format!("input:{i}"),
                graph,
            })
            .collect(),
    })
}

fn graph_json(g: &Multigraph) -> Value {
    let mut out = json!({ "graph": g });
    if !g.has_parallel_edges() {
        if let Ok(s) = to_graph6(g) {
            out["graph6"] = json!(s);
        }
    }
    out
}

/// `seen_digest` receives the digest of a single-graph input as soon as it
/// is read, so error reports can carry it too.
fn run(cli: Cli, emitter: &Emitter, seen_digest: &mut Option<String>) -> Result<(), Failure> {
    let start = Instant::now();
    let mut one = |path: &str| -> Result<(Input, Multigraph), Failure> {
        let input = read_input(path)?;
        *seen_digest = Some(input.digest.clone());
        let g = single_graph(&input)?;
        Ok((input, g))
    };
    let (digest, result) = match cli.command {
        Command::Check { input } => {
            let (input, g) = one(&input)?;
            (input.digest, check(&g)?)
        }
        Command::Tight { input, shore } => {
            let (input, g) = one(&input)?;
            (input.digest, tight(&g, &shore)?)
        }
        Command::Decompose { input, strategy } => {
            let (input, g) = one(&input)?;
            let strategy = Strategy::from_label(&strategy)
                .ok_or_else(|| Failure::Usage(format!("unknown strategy {strategy}")))?;
            (input.digest, json!(decompose(&g, strategy)?))
        }
        Command::Elp { input } => {
            let (input, g) = one(&input)?;
            (input.digest, elp(&g)?)
        }
        Command::Laminar {
            input,
            shore,
            avoid,
            policy,
            strict,
        } => {
            let (input, g) = one(&input)?;
            (input.digest, laminar(&g, &shore, avoid, policy, strict)?)
        }
        Command::Verify { inputs, max_n } => return verify(&inputs, max_n, emitter),
        Command::Corpus { input, max_n } => {
            let input = input.as_deref().map(read_input).transpose()?;
            let entries = corpus_entries(input.as_ref())?;
            let total = entries.len();
            let kept = filter_matching_covered(entries, max_n.unwrap_or(usize::MAX));
            if emitter.format == Format::Text {
                for e in &kept {
                    match to_graph6(&e.graph) {
                        Ok(s) if !e.graph.has_parallel_edges() => println!("{s}"),
                        _ => print!("{}", to_edge_list(&e.graph)),
                    }
                }
                return Ok(());
            }
            let graphs: Vec<Value> = kept
                .iter()
                .map(|e| {
                    let mut v = graph_json(&e.graph);
                    v["id"] = json!(e.id);
                    v
                })
                .collect();
            let digest = input.map_or_else(|| "bundled".to_string(), |i| i.digest);
            (
                digest,
                json!({ "examined": total, "matching_covered": graphs.len(), "graphs": graphs }),
            )
        }
    };
    emitter.emit(Some(&digest), result, start.elapsed().as_millis());
    Ok(())
}

fn verify(paths: &[String], max_n: Option<usize>, emitter: &Emitter) -> Result<(), Failure> {
    let limit = max_n.unwrap_or_else(oracle::max_order);
    let mut batches = Vec::new();
    if paths.is_empty() {
        batches.push((None, corpus_entries(None)?));
    } else {
        for p in paths {
            let input = read_input(p)?;
            let entries = corpus_entries(Some(&input))?
                .into_iter()
                .map(|e| CorpusEntry {
                    id: format!("{p}:{}", e.id.trim_start_matches("input:")),
                    graph: e.graph,
                })
                .collect();
            batches.push((Some(input.digest), entries));
        }
    }
    let mut failed = 0;
    for (digest, entries) in batches {
        for e in entries
            .into_iter()
            .filter(|e| e.graph.vertex_count() <= limit)
        {
            let start = Instant::now();
            let report = verify_graph(&e.graph, &e.id)?;
            if !report.passed() {
                failed += 1;
            }
            let digest = digest
                .clone()
                .unwrap_or_else(|| hex::encode(Sha256::digest(to_edge_list(&e.graph).as_bytes())));
            emitter.emit(Some(&digest), json!(report), start.elapsed().as_millis());
        }
    }
    if failed > 0 {
        return Err(Failure::Internal(format!(
            "{failed} graphs failed verification"
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let command: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let emitter = Emitter {
        format: cli.format,
        command,
    };
    let mut digest = None;
    match run(cli, &emitter, &mut digest) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            emitter.emit(digest.as_deref(), f.payload(), 0);
            ExitCode::from(f.exit_code())
        }
    }
}

//! `gph`: command-line access to the graph homotopy library.
//!
//! Every subcommand is a thin adapter: parse files, call the library,
//! print JSON (or DOT for graph-valued output) on stdout. Identical inputs
//! produce identical bytes. Exit codes distinguish outcomes: 0 success or
//! affirmative, 1 definite negative or property failure, 2 usage or parse
//! error, 3 search budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use graph_homotopy::json::{GraphDoc, HomotopyDoc, MapDoc, WalkDoc};
use graph_homotopy::verify::DEFAULT_SEED;
use graph_homotopy::{
    are_homotopic, coproduct, duplicate_vertex, enumerate_homs, exp_edge, fundamental_group_probe,
    hom_graph, homotopy_equivalent, is_stiff, pleat, product, realize_exponential, run_suite,
    spider_decompose, walks_equivalent_with, Equivalence, FoldPolicy, Graph, SearchLimits, Suite,
    SuiteConfig, VertexMap, Walk, DEFAULT_REALIZE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Policy {
    First,
    Random,
}

#[derive(Parser)]
#[command(
    name = "gph",
    about = "Homotopy theory for finite graphs: exponentials, spider moves, pleats, and the walk groupoid",
    version
)]
struct Cli {
    /// Output format for graph-valued results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized operations; echoed in their output.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Padding budget for rel-endpoint searches.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Instance size cap for verification suites.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Categorical product of two graphs.
    Product { g: PathBuf, h: PathBuf },
    /// Disjoint union of two graphs.
    Coproduct { g: PathBuf, h: PathBuf },
    /// Realize the exponential graph H^G.
    Exp {
        g: PathBuf,
        h: PathBuf,
        /// Vertex cap for the realization.
        #[arg(long, default_value_t = DEFAULT_REALIZE_CAP)]
        cap: usize,
    },
    /// Enumerate all graph morphisms G -> H.
    Homs { g: PathBuf, h: PathBuf },
    /// The subgraph of H^G induced by the morphisms.
    HomGraph { g: PathBuf, h: PathBuf },
    /// Decide whether two morphisms are homotopic.
    Homotopic {
        g: PathBuf,
        h: PathBuf,
        f: PathBuf,
        #[arg(value_name = "G2")]
        second: PathBuf,
        /// Include the shortest witness homotopy in the output.
        #[arg(long)]
        witness: bool,
    },
    /// Spider-move decomposition of an exponential edge between morphisms.
    Spider { f: PathBuf, g: PathBuf },
    /// Is the graph stiff (fold-free)?
    Stiff { g: PathBuf },
    /// Dismantle a graph to its pleat.
    Pleat {
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = Policy::First)]
        policy: Policy,
        /// Emit the fold sequence alongside the pleat.
        #[arg(long)]
        trace: bool,
    },
    /// Are two graphs homotopy equivalent?
    Equiv { g: PathBuf, h: PathBuf },
    /// Duplicate a vertex: the twin graph with its inclusions and retraction.
    Duplicate { g: PathBuf, vertex: String },
    /// Fully prune a walk.
    WalkReduce {
        walk: PathBuf,
        /// Graph file, when the walk document has no inline graph.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Are two walks homotopic rel endpoints?
    WalkEquiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Probe the fundamental group at a basepoint.
    Pi1 {
        g: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Run theorem-verification suites.
    Verify {
        /// Run every suite.
        #[arg(long)]
        all: bool,
        /// Run the named suite; repeatable.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Sample count for the randomized suites.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Random fold orders per graph in pleat-confluence.
        #[arg(long, default_value_t = 10)]
        fold_orders: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn read_graph(path: &Path) -> Result<Graph, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    graph_homotopy::json::parse_graph(&bytes).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_map(
    path: &Path,
    source: Option<&Graph>,
    target: Option<&Graph>,
) -> Result<VertexMap, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc: MapDoc =
        serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    doc.to_vertex_map(source, target)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn read_walk(path: &Path, graph: Option<&Graph>) -> Result<Walk, String> {
    let bytes = fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc: WalkDoc =
        serde_json::from_slice(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    doc.to_walk(graph)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn print_json<T: Serialize>(value: &T) {
    let mut out = serde_json::to_string_pretty(value).expect("output serializes");
    out.push('\n');
    print!("{out}");
}

fn print_graph(g: &Graph, format: Format) {
    match format {
        Format::Json => print!("{}", graph_homotopy::json::emit_graph(g)),
        Format::Dot => print!("{}", graph_homotopy::json::emit_dot(g)),
    }
}

/// Compact map document without the inline graphs, for outputs whose
/// context already names them.
fn bare_map_doc(m: &VertexMap) -> MapDoc {
    MapDoc {
        source: None,
        target: None,
        map: m
            .source()
            .vertex_names()
            .iter()
            .enumerate()
            .map(|(v, name)| (name.clone(), m.image_name(v).to_string()))
            .collect(),
    }
}

fn require_json(format: Format, what: &str) -> Result<(), String> {
    if format == Format::Dot {
        return Err(format!("--format dot is not supported for {what}"));
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    let limits =
        SearchLimits::with_pad_budget(cli.budget.unwrap_or(graph_homotopy::DEFAULT_PAD_BUDGET));
    match cli.command {
        Command::Product { g, h } => {
            let p = product(&read_graph(&g)?, &read_graph(&h)?);
            print_graph(&p, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Coproduct { g, h } => {
            let c = coproduct(&read_graph(&g)?, &read_graph(&h)?);
            print_graph(&c, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Exp { g, h, cap } => {
            let exp = realize_exponential(&read_graph(&g)?, &read_graph(&h)?, cap)
                .map_err(|e| e.to_string())?;
            print_graph(exp.graph(), cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Homs { g, h } => {
            require_json(cli.format, "homs")?;
            #[derive(Serialize)]
            struct Output {
                count: usize,
                maps: Vec<MapDoc>,
            }
            let maps: Vec<MapDoc> = enumerate_homs(&read_graph(&g)?, &read_graph(&h)?)
                .iter()
                .map(bare_map_doc)
                .collect();
            print_json(&Output {
                count: maps.len(),
                maps,
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::HomGraph { g, h } => {
            let hg = hom_graph(&read_graph(&g)?, &read_graph(&h)?);
            print_graph(&hg, cli.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Homotopic {
            g,
            h,
            f,
            second,
            witness,
        } => {
            require_json(cli.format, "homotopic")?;
            let source = read_graph(&g)?;
            let target = read_graph(&h)?;
            let f = read_map(&f, Some(&source), Some(&target))?;
            let second = read_map(&second, Some(&source), Some(&target))?;
            let found = are_homotopic(&f, &second).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Output {
                homotopic: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                length: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<HomotopyDoc>,
            }
            let output = Output {
                homotopic: found.is_some(),
                length: found.as_ref().map(|w| w.len()),
                witness: found.as_ref().filter(|_| witness).map(|w| HomotopyDoc {
                    frames: w.frames().iter().map(bare_map_doc).collect(),
                }),
            };
            let code = if output.homotopic { 0 } else { 1 };
            print_json(&output);
            Ok(ExitCode::from(code))
        }
        Command::Spider { f, g } => {
            require_json(cli.format, "spider")?;
            let f = read_map(&f, None, None)?;
            let g = read_map(&g, None, None)?;
            #[derive(Serialize)]
            struct Output {
                adjacent: bool,
                chain: Vec<MapDoc>,
            }
            if !exp_edge(&f, &g).map_err(|e| e.to_string())? {
                print_json(&Output {
                    adjacent: false,
                    chain: vec![],
                });
                return Ok(ExitCode::from(1));
            }
            let chain = spider_decompose(&f, &g).map_err(|e| e.to_string())?;
            print_json(&Output {
                adjacent: true,
                chain: chain.iter().map(bare_map_doc).collect(),
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Stiff { g } => {
            require_json(cli.format, "stiff")?;
            let stiff = is_stiff(&read_graph(&g)?);
            #[derive(Serialize)]
            struct Output {
                stiff: bool,
            }
            print_json(&Output { stiff });
            Ok(ExitCode::from(if stiff { 0 } else { 1 }))
        }
        Command::Pleat { g, policy, trace } => {
            let graph = read_graph(&g)?;
            let seed = cli.seed.unwrap_or(DEFAULT_SEED);
            let fold_policy = match policy {
                Policy::First => FoldPolicy::First,
                Policy::Random => FoldPolicy::SeededRandom(seed),
            };
            let result = pleat(&graph, fold_policy).map_err(|e| e.to_string())?;
            if cli.format == Format::Dot {
                if trace {
                    return Err("--trace is only available with --format json".to_string());
                }
                print_graph(&result.pleat, Format::Dot);
                return Ok(ExitCode::SUCCESS);
            }
            #[derive(Serialize)]
            struct FoldStep {
                removed: String,
                into: String,
            }
            #[derive(Serialize)]
            struct Output {
                pleat: GraphDoc,
                policy: &'static str,
                #[serde(skip_serializing_if = "Option::is_none")]
                seed: Option<u64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                folds: Option<Vec<FoldStep>>,
            }
            print_json(&Output {
                pleat: GraphDoc::from_graph(&result.pleat),
                policy: match policy {
                    Policy::First => "first",
                    Policy::Random => "random",
                },
                seed: matches!(policy, Policy::Random).then_some(seed),
                folds: trace.then(|| {
                    result
                        .fold_sequence
                        .iter()
                        .map(|f| FoldStep {
                            removed: f.removed_name().to_string(),
                            into: f.into_name().to_string(),
                        })
                        .collect()
                }),
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv { g, h } => {
            require_json(cli.format, "equiv")?;
            let g = read_graph(&g)?;
            let h = read_graph(&h)?;
            let witness = homotopy_equivalent(&g, &h).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Output {
                equivalent: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                to_right: Option<MapDoc>,
                #[serde(skip_serializing_if = "Option::is_none")]
                to_left: Option<MapDoc>,
            }
            let output = Output {
                equivalent: witness.is_some(),
                to_right: witness.as_ref().map(|(f, _)| bare_map_doc(f)),
                to_left: witness.as_ref().map(|(_, b)| bare_map_doc(b)),
            };
            let code = if output.equivalent { 0 } else { 1 };
            print_json(&output);
            Ok(ExitCode::from(code))
        }
        Command::Duplicate { g, vertex } => {
            require_json(cli.format, "duplicate")?;
            let graph = read_graph(&g)?;
            let dup = duplicate_vertex(&graph, &vertex).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Output {
                graph: GraphDoc,
                iota1: MapDoc,
                iota2: MapDoc,
                rho: MapDoc,
            }
            print_json(&Output {
                graph: GraphDoc::from_graph(&dup.graph),
                iota1: bare_map_doc(&dup.include_original),
                iota2: bare_map_doc(&dup.include_twin),
                rho: bare_map_doc(&dup.retract),
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::WalkReduce { walk, graph } => {
            require_json(cli.format, "walk-reduce")?;
            let fallback = graph.map(|p| read_graph(&p)).transpose()?;
            let walk = read_walk(&walk, fallback.as_ref())?;
            let reduced = walk.prune_fully();
            print_json(&WalkDoc::from_walk(&reduced));
            Ok(ExitCode::SUCCESS)
        }
        Command::WalkEquiv { a, b, graph } => {
            require_json(cli.format, "walk-equiv")?;
            let fallback = graph.map(|p| read_graph(&p)).transpose()?;
            let a = read_walk(&a, fallback.as_ref())?;
            let b = read_walk(&b, fallback.as_ref())?;
            let verdict = walks_equivalent_with(&a, &b, &limits).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Output {
                verdict: &'static str,
                pad_budget: usize,
            }
            let (name, code) = match verdict {
                Equivalence::Equivalent => ("equivalent", 0),
                Equivalence::NotEquivalent => ("not-equivalent", 1),
                Equivalence::Inconclusive => ("inconclusive", 3),
            };
            print_json(&Output {
                verdict: name,
                pad_budget: limits.pad_budget,
            });
            Ok(ExitCode::from(code))
        }
        Command::Pi1 { g, base, max_len } => {
            require_json(cli.format, "pi1")?;
            let graph = read_graph(&g)?;
            let probe = fundamental_group_probe(&graph, &base, max_len, &limits)
                .map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Output {
                base: String,
                max_len: usize,
                pad_budget: usize,
                class_count: usize,
                classes: Vec<Vec<String>>,
                saturated: bool,
                inconclusive_pairs: u64,
                walks_considered: u64,
            }
            print_json(&Output {
                base,
                max_len,
                pad_budget: limits.pad_budget,
                class_count: probe.classes.len(),
                classes: probe
                    .classes
                    .iter()
                    .map(|c| {
                        c.representative()
                            .vertex_names()
                            .iter()
                            .map(|s| s.to_string())
                            .collect()
                    })
                    .collect(),
                saturated: probe.saturated,
                inconclusive_pairs: probe.inconclusive_pairs,
                walks_considered: probe.walks_considered,
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            all,
            suites,
            samples,
            fold_orders,
        } => {
            require_json(cli.format, "verify")?;
            let chosen: Vec<Suite> = if all {
                Suite::all().to_vec()
            } else if suites.is_empty() {
                return Err("verify needs --all or at least one --suite NAME".to_string());
            } else {
                suites
                    .iter()
                    .map(|s| s.parse::<Suite>().map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let cfg = SuiteConfig {
                max_vertices: cli.max_vertices,
                seed: cli.seed.unwrap_or(DEFAULT_SEED),
                samples,
                fold_orders,
                limits: limits.clone(),
            };
            let mut reports = Vec::new();
            for suite in chosen {
                let report = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
                eprintln!("{}", report.summary_line());
                reports.push(report);
            }
            print_json(&reports);
            let failed = reports.iter().any(|r| !r.passed());
            Ok(ExitCode::from(if failed { 1 } else { 0 }))
        }
    }
}

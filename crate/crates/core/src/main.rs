use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cayint::catalog;
use cayint::integrality::{
    brute_force_integrality, cayley_spectrum, complete_graph_spectrum, is_integral_with,
    CheckOptions, Outcome, DEFAULT_MAX_N, ORACLE_MAX_N,
};
use cayint::report::CheckReport;
use cayint::scan::{scan, ScanCache, ScanOptions, SCAN_DEFAULT_MAX_V};
use cayint::tgraph::{families, gcm_decompose, parse_graph6, to_graph6, TGraph};
use cayint::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

/// Integrality of Cayley graphs of S_n generated by transpositions.
#[derive(Parser)]
#[command(name = "cayint", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,

    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (defaults to CAYINT_JOBS, then available parallelism).
    #[arg(long, global = true, env = "CAYINT_JOBS")]
    jobs: Option<usize>,

    /// Oracle seed.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Oracle trials.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,

    /// Run the representation computation even when a structural test decides.
    #[arg(long, global = true)]
    force_full: bool,

    /// Do not read or write the scan cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide integrality of Cay(S_n, T).
    Check {
        #[command(flatten)]
        input: GraphInput,
        /// Include the full spectrum report.
        #[arg(long)]
        spectrum: bool,
    },
    /// Print the full spectrum, block by block.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Decompose the transposition graph into joins and unions.
    Gcm {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Check every connected graph on V vertices.
    Scan {
        vertices: usize,
        /// Allow more than 6 vertices.
        #[arg(long)]
        force: bool,
        /// JSONL cache file.
        #[arg(long, env = "CAYINT_CACHE", default_value = "cayint-scan.jsonl")]
        cache: PathBuf,
    },
    /// Expected-vs-computed table for the named families.
    Families,
    /// Brute-force check on the n!-vertex Cayley graph.
    Oracle {
        #[command(flatten)]
        input: GraphInput,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Edge-list file: "n m" then m lines "i j".
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
    #[arg(long, value_name = "STRING")]
    graph6: Option<String>,
    #[arg(long, value_name = "M")]
    cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    star: Option<usize>,
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    #[arg(long, value_name = "N")]
    path: Option<usize>,
    /// Complete multipartite graph with the given part sizes.
    #[arg(long, value_name = "A,B,...", value_delimiter = ',')]
    kmulti: Option<Vec<usize>>,
}

impl GraphInput {
    fn load(&self) -> Result<TGraph, Error> {
        let positive = |what: &str, v: usize, min: usize| {
            if v < min {
                Err(Error::parse(0, format!("--{what} needs at least {min}")))
            } else {
                Ok(v)
            }
        };
        if let Some(p) = &self.edges {
            return TGraph::parse_edge_list(&fs::read_to_string(p)?);
        }
        if let Some(s) = &self.graph6 {
            return parse_graph6(s);
        }
        if let Some(m) = self.cycle {
            return Ok(families::cycle(positive("cycle", m, 3)?));
        }
        if let Some(n) = self.star {
            return Ok(families::star(positive("star", n, 2)?));
        }
        if let Some(n) = self.complete {
            return Ok(families::complete(positive("complete", n, 1)?));
        }
        if let Some(n) = self.path {
            return Ok(families::path(positive("path", n, 1)?));
        }
        if let Some(parts) = &self.kmulti {
            if parts.contains(&0) {
                return Err(Error::parse(0, "--kmulti part sizes must be positive"));
            }
            return Ok(families::complete_multipartite(parts));
        }
        unreachable!("clap enforces exactly one input")
    }
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Capacity(_) => ExitCode::from(EXIT_CAPACITY),
        _ => ExitCode::from(EXIT_USAGE),
    }
}

fn outcome_code(integral: bool) -> ExitCode {
    if integral {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let opts = CheckOptions {
        force_full: cli.force_full,
        max_n: DEFAULT_MAX_N,
    };
    match &cli.cmd {
        Command::Check { input, spectrum } => {
            let g = input.load()?;
            let ts = g.transpositions();
            let verdict = is_integral_with(g.n(), &ts, opts)?;
            let spec = if *spectrum {
                Some(cayley_spectrum(g.n().max(1), &ts)?)
            } else {
                None
            };
            let integral = verdict.result.is_integral();
            let report = CheckReport::new(&g, verdict, spec);
            if cli.json {
                print_json(&report);
            } else {
                print_check(&report);
            }
            Ok(outcome_code(integral))
        }
        Command::Spectrum { input } => {
            let g = input.load()?;
            let report = cayley_spectrum(g.n().max(1), &g.transpositions())?;
            if cli.json {
                print_json(&report);
            } else {
                print_spectrum(&report);
            }
            Ok(outcome_code(report.integral))
        }
        Command::Gcm { input } => {
            let g = input.load()?;
            let tree = gcm_decompose(&g);
            if cli.json {
                print_json(&serde_json::json!({
                    "graph6": to_graph6(&g),
                    "p4_free": g.is_p4_free(),
                    "gcm": tree,
                }));
            } else {
                println!("graph: {} (graph6 {})", g, to_graph6(&g));
                println!("p4-free: {}", g.is_p4_free());
                match &tree {
                    Some(t) => {
                        println!("generalized complete multipartite, type {}", t.type_number);
                        if !t.isolated.is_empty() {
                            println!("isolated: {:?}", t.isolated);
                        }
                        if let Some(r) = &t.root {
                            print_tree(r, 1);
                        }
                    }
                    None => println!("not a generalized complete multipartite graph"),
                }
            }
            Ok(outcome_code(tree.is_some()))
        }
        Command::Scan {
            vertices,
            force,
            cache,
        } => {
            if *vertices > SCAN_DEFAULT_MAX_V && *force {
                eprintln!(
                    "warning: scanning {vertices} vertices enumerates 2^{} labeled graphs and may take a long time",
                    vertices * (vertices - 1) / 2
                );
            }
            let mut store = if cli.no_cache {
                ScanCache::disabled()
            } else {
                ScanCache::open(cache)?
            };
            let summary = scan(
                *vertices,
                ScanOptions {
                    check: opts,
                    force: *force,
                },
                &mut store,
            )?;
            if cli.json {
                print_json(&summary);
            } else {
                println!(
                    "{} connected classes on {} vertices ({} computed, {} cached)",
                    summary.classes, summary.vertices, summary.computed, summary.from_cache
                );
                println!(
                    "integral: {}  gcm: {}  agree: {}  disagree: {}",
                    summary.integral,
                    summary.gcm_present,
                    summary.agreements,
                    summary.disagreements.len()
                );
                println!("{:<12} {:>5} {:>9} {:>5} {:>8}  path", "key", "edges", "laplacian", "gcm", "cayley");
                for r in &summary.records {
                    println!(
                        "{:<12} {:>5} {:>9} {:>5} {:>8}  {}",
                        r.key,
                        r.edges,
                        r.laplacian_integral,
                        r.gcm_type.map_or("-".to_string(), |t| t.to_string()),
                        Outcome::from_bool(r.cayley_integral).to_string(),
                        r.path
                    );
                }
                for r in &summary.disagreements {
                    println!(
                        "DISAGREEMENT {} cayley_integral={} gcm_present={} covered_by={:?} {}",
                        r.key, r.cayley_integral, r.gcm_present, r.covered_by, r.spectrum_digest
                    );
                }
                if !summary.p4_mismatches.is_empty() {
                    println!("gcm vs p4-free mismatches: {:?}", summary.p4_mismatches);
                } else {
                    println!("gcm recognition agrees with p4-freeness on every class");
                }
            }
            Ok(outcome_code(summary.clean()))
        }
        Command::Families => {
            let rows = catalog::evaluate(&catalog::all_instances()?, opts)?;
            let ok = rows.iter().all(|r| r.ok);
            if cli.json {
                print_json(&rows);
            } else {
                println!("{:<10} {:<28} {:>2} {:>13} {:>13}  {:<22} ok", "group", "graph", "n", "expected", "computed", "path");
                for r in &rows {
                    println!(
                        "{:<10} {:<28} {:>2} {:>13} {:>13}  {:<22} {}",
                        r.group,
                        r.name,
                        r.n,
                        r.expected.to_string(),
                        r.computed.to_string(),
                        r.path.to_string(),
                        if r.ok { "yes" } else { "NO" }
                    );
                }
            }
            Ok(outcome_code(ok))
        }
        Command::Oracle { input } => {
            let g = input.load()?;
            let ts = g.transpositions();
            let oracle = brute_force_integrality(g.n().max(1), &ts, cli.trials, cli.seed)?;
            let pipeline = if g.n() <= ORACLE_MAX_N {
                Some(is_integral_with(g.n(), &ts, opts)?)
            } else {
                None
            };
            let agrees = pipeline
                .as_ref()
                .is_none_or(|v| v.result.is_integral() == oracle.integral);
            let complete_table = if g.n() >= 2 && g.edge_count() == g.n() * (g.n() - 1) / 2 {
                let expected = complete_graph_spectrum(g.n())?;
                let computed = cayley_spectrum(g.n(), &ts)?.spectrum;
                Some((computed.as_ref() == Some(&expected), expected))
            } else {
                None
            };
            if cli.json {
                print_json(&serde_json::json!({
                    "graph6": to_graph6(&g),
                    "oracle": oracle,
                    "pipeline": pipeline,
                    "agrees": agrees,
                    "complete_spectrum_matches_q_alpha": complete_table.as_ref().map(|c| c.0),
                }));
            } else {
                println!(
                    "oracle: {} ({} trial(s), seed {})",
                    Outcome::from_bool(oracle.integral),
                    oracle.trials,
                    oracle.seed
                );
                if let Some(c) = &oracle.certificate {
                    println!(
                        "certificate: trial {} left {} nonzero entries, squared norm {}",
                        c.trial, c.nonzero_entries, c.squared_norm
                    );
                }
                if let Some(v) = &pipeline {
                    println!(
                        "pipeline: {} via {} -> {}",
                        v.result,
                        v.path,
                        if agrees { "agrees" } else { "DISAGREES" }
                    );
                }
                if let Some((matches, table)) = &complete_table {
                    let entries: Vec<String> =
                        table.iter().map(|(l, m)| format!("{l}^{m}")).collect();
                    println!("q_alpha table: {} ({})", entries.join(" "), if *matches { "matches" } else { "MISMATCH" });
                }
            }
            Ok(outcome_code(oracle.integral && agrees))
        }
    }
}

fn print_check(r: &CheckReport) {
    let v = &r.verdict;
    println!("graph: n={} edges={} graph6={}", r.graph.n, r.graph.edges.len(), r.graph.graph6);
    println!("verdict: {} (path: {})", v.result, v.path);
    println!("detail: {}", v.detail);
    println!("laplacian integral: {}", v.laplacian_integral);
    match v.gcm_type {
        Some(t) => println!("gcm: type {t}"),
        None => println!("gcm: absent"),
    }
    if let Some(w) = &v.witness {
        println!("witness: partition {} (f={}) factor {}", w.partition, w.dimension, w.factor);
    }
    if let Some(s) = &r.spectrum {
        print_spectrum(s);
    }
}

fn print_spectrum(s: &cayint::integrality::SpectrumReport) {
    println!("Cay(S_{}, T), |T| = {}: {}", s.n, s.transpositions.len(), Outcome::from_bool(s.integral));
    if let Some(spec) = &s.spectrum {
        let entries: Vec<String> = spec.iter().map(|(l, m)| format!("{l}^{m}")).collect();
        println!("spectrum: {}", entries.join(" "));
    }
    for b in &s.per_partition {
        print!("  {:<16} f={:<3} char poly {}", b.partition.to_string(), b.dimension, b.char_poly);
        if !b.remainder.is_one() {
            print!("  [non-integer factor {}]", b.remainder);
        }
        println!();
    }
}

fn print_tree(node: &cayint::tgraph::GcmNode, depth: usize) {
    use cayint::tgraph::GcmNode;
    let pad = "  ".repeat(depth);
    match node {
        GcmNode::Join { children } => {
            println!("{pad}join");
            children.iter().for_each(|c| print_tree(c, depth + 1));
        }
        GcmNode::Union { children } => {
            println!("{pad}union");
            children.iter().for_each(|c| print_tree(c, depth + 1));
        }
        GcmNode::Multipartite { parts } => println!("{pad}complete multipartite {parts:?}"),
        GcmNode::Isolated { vertices } => println!("{pad}edgeless {vertices:?}"),
    }
}

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tlgrowth_core::analysis::{analyze, cross_validate, run_engine, AnalysisOptions, AnalysisReport, Method};
use tlgrowth_core::graph::{canonical_form, enumerate_graphs_with_cap, parse_graph, DEFAULT_ENUMERATION_CAP, MAX_LEAVES};
use tlgrowth_core::growth::{check_free_pair, hilbert_prefix, search_free_pair, window_blocks};
use tlgrowth_core::{ParameterMode, TwoColoredStar, Word};

const HILBERT_CAP: usize = 200;
const DEFAULT_SWEEP_LEAVES: usize = 6;

/// Growth of Temperley-Lieb-type algebras of two-colored stars.
#[derive(Parser)]
#[command(name = "tlgrowth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EngineFlags {
    /// Maximum degree of overlaps processed during completion [default: 2n + 8].
    #[arg(long, value_name = "N")]
    degree_bound: Option<usize>,
    /// `symbolic` or a rational value `p/q` of t = tau^2 in (0, 1).
    #[arg(long = "t", value_name = "symbolic|P/Q", default_value = "symbolic")]
    t: ParameterMode,
    /// Write a JSON report to this path (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the growth of one graph.
    Classify {
        /// Graph such as "K(4; 1-2, 3-4)".
        graph: String,
        #[arg(long, default_value = "both", value_name = "theorem|groebner|both")]
        method: Method,
        /// Length of the reported Hilbert prefix.
        #[arg(long, default_value_t = 20, value_name = "N")]
        max_degree: usize,
        /// Block length bound for the free-pair search.
        #[arg(long, default_value_t = 12, value_name = "N")]
        max_block_len: usize,
        /// Include wall-clock timings in the JSON report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Print the Hilbert function prefix with cumulative sums.
    Hilbert {
        graph: String,
        /// Highest degree to tabulate (at most 200).
        max_degree_pos: Option<usize>,
        #[arg(long, value_name = "N")]
        max_degree: Option<usize>,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Compute the Groebner basis and its obstruction set.
    Gb {
        graph: String,
        /// Print the full reduced basis.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Compare the graph classifier with the computed growth for every class.
    Crossvalidate {
        #[arg(long, default_value_t = DEFAULT_SWEEP_LEAVES, value_name = "N")]
        max_leaves: usize,
        /// Permit sweeps over 7 leaves.
        #[arg(long)]
        allow_seven: bool,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// Search for, or verify, a pair of words generating a free subalgebra.
    Witness {
        graph: String,
        #[arg(long, default_value_t = 12, value_name = "N")]
        max_block_len: usize,
        /// Verify this pair instead of searching, e.g. `--check 0,1,2 0,3,4`.
        #[arg(long, num_args = 2, value_names = ["Q1", "Q2"])]
        check: Option<Vec<String>>,
        #[command(flatten)]
        engine: EngineFlags,
    },
    /// List one graph per isomorphism class on N leaves.
    Enumerate {
        leaves: usize,
        /// Write the list as JSON to this path (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

/// Successful run, possibly with a mathematical discrepancy.
enum Outcome {
    Ok,
    Discrepancy,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Discrepancy) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Classify {
            graph,
            method,
            max_degree,
            max_block_len,
            timings,
            engine,
        } => classify(&graph, method, max_degree, max_block_len, timings, &engine),
        Command::Hilbert {
            graph,
            max_degree_pos,
            max_degree,
            engine,
        } => {
            let d = match (max_degree_pos, max_degree) {
                (Some(a), Some(b)) if a != b => bail!("conflicting max degrees {a} and {b}"),
                (Some(d), _) | (None, Some(d)) => d,
                (None, None) => 20,
            };
            hilbert(&graph, d, &engine)
        }
        Command::Gb { graph, basis, engine } => gb(&graph, basis, &engine),
        Command::Crossvalidate {
            max_leaves,
            allow_seven,
            engine,
        } => crossvalidate(max_leaves, allow_seven, &engine),
        Command::Witness {
            graph,
            max_block_len,
            check,
            engine,
        } => witness(&graph, max_block_len, check, &engine),
        Command::Enumerate { leaves, json } => enumerate(leaves, json),
    }
}

fn read_graph(spec: &str) -> Result<TwoColoredStar> {
    let parsed = parse_graph(spec).with_context(|| format!("cannot parse graph `{spec}`"))?;
    if parsed.duplicates > 0 {
        eprintln!("warning: ignored {} duplicate dashed pair(s)", parsed.duplicates);
    }
    Ok(parsed.graph)
}

fn write_json(path: &Option<PathBuf>, value: &impl serde::Serialize) -> Result<()> {
    let Some(path) = path else { return Ok(()) };
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn json_to_stdout(path: &Option<PathBuf>) -> bool {
    path.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn parse_word(text: &str, generators: usize) -> Result<Word> {
    let w = Word::parse(text).with_context(|| format!("cannot parse word `{text}`"))?;
    if let Some(&g) = w.letters().iter().find(|&&g| g as usize >= generators) {
        bail!("generator index {g} out of range 0..{generators} in `{text}`");
    }
    Ok(w)
}

fn classify(spec: &str, method: Method, max_degree: usize, max_block_len: usize, timings: bool, flags: &EngineFlags) -> Result<Outcome> {
    let g = read_graph(spec)?;
    let opts = AnalysisOptions {
        method,
        degree_bound: flags.degree_bound,
        mode: flags.t.clone(),
        max_degree,
        max_block_len,
    };
    let mut report = analyze(&g, &opts)?;
    if !timings {
        report.timings = None;
    }
    if !json_to_stdout(&flags.json) {
        print_report(&report);
    }
    write_json(&flags.json, &report)?;
    Ok(if report.has_discrepancy() { Outcome::Discrepancy } else { Outcome::Ok })
}

fn print_report(r: &AnalysisReport) {
    println!("graph:         {}", r.graph);
    if r.removed_leaves.is_empty() {
        println!("pruned:        {} (no isolated leaves)", r.pruned);
    } else {
        println!("pruned:        {} (removed leaves {})", r.pruned, join(&r.removed_leaves, ", "));
    }
    println!("nu:            {}", r.nu);
    println!("parameter:     t = {}", r.parameter);
    let t = &r.theorem;
    println!("theorem:       {} [{}]", t.coarse, t.branch);
    if let Some(w) = &t.witness {
        println!("  witness:     {} via {}", w.pattern, join(&w.embedding.map, ","));
    }
    if let Some(gb) = &r.groebner {
        println!(
            "groebner:      {} basis elements, {} obstructions, {} (degree bound {})",
            gb.basis_size,
            gb.obstructions.len(),
            if gb.complete { "complete" } else { "INCOMPLETE" },
            gb.degree_bound
        );
    }
    if let Some(g) = &r.growth {
        let caveat = if g.upper_bound_only { " (upper bound only)" } else { "" };
        println!("engine:        {}{caveat}", g.class);
    }
    if let Some(d) = &r.dimension {
        println!("dimension:     {} with unit, {} without", d.unital, d.nonunital);
    }
    if let Some(h) = &r.hilbert_prefix {
        println!("hilbert:       {}", join(h, " "));
    }
    if let Some(c) = &r.free_pair {
        println!("free pair:     q1 = {}, q2 = {} (window {})", c.q1.to_index_list(), c.q2.to_index_list(), c.window_bound);
    }
    for n in &r.notes {
        println!("note:          {n}");
    }
    if r.discrepancies.is_empty() {
        println!("discrepancies: none");
    } else {
        for d in &r.discrepancies {
            println!("DISCREPANCY:   {d}");
        }
    }
}

fn hilbert(spec: &str, max_degree: usize, flags: &EngineFlags) -> Result<Outcome> {
    if max_degree > HILBERT_CAP {
        bail!("max degree {max_degree} exceeds the cap {HILBERT_CAP}");
    }
    let g = read_graph(spec)?;
    let run = run_engine(&g, &flags.t, flags.degree_bound)?;
    let prefix = hilbert_prefix(&run.automaton, max_degree);
    let mut total = num::BigUint::from(0u32);
    let mut cumulative = Vec::with_capacity(prefix.len());
    for a in &prefix {
        total += a;
        cumulative.push(total.clone());
    }
    let complete = run.groebner.complete;
    if !json_to_stdout(&flags.json) {
        println!("graph: {g}");
        if !complete {
            println!("caveat: Groebner basis incomplete at degree bound {}; entries are upper bounds", run.groebner.degree_bound);
        }
        println!("{:>6} {:>24} {:>28}", "degree", "dimension", "cumulative");
        for (d, (a, c)) in prefix.iter().zip(&cumulative).enumerate() {
            println!("{d:>6} {a:>24} {c:>28}");
        }
        println!("total through degree {max_degree}: {total}");
    }
    let value = json!({
        "graph": g,
        "parameter": flags.t.to_string(),
        "complete": complete,
        "upper_bound_only": !complete,
        "degree_bound": run.groebner.degree_bound,
        "hilbert_prefix": prefix.iter().map(big_json).collect::<Vec<_>>(),
        "cumulative": cumulative.iter().map(big_json).collect::<Vec<_>>(),
    });
    write_json(&flags.json, &value)?;
    Ok(if complete { Outcome::Ok } else { Outcome::Discrepancy })
}

/// Exact integer as a JSON number, falling back to a string beyond `u64`.
fn big_json(n: &num::BigUint) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn gb(spec: &str, show_basis: bool, flags: &EngineFlags) -> Result<Outcome> {
    let g = read_graph(spec)?;
    let run = run_engine(&g, &flags.t, flags.degree_bound)?;
    let r = &run.groebner;
    if !json_to_stdout(&flags.json) {
        println!("graph:        {g}");
        println!("parameter:    t = {}", flags.t);
        println!(
            "status:       {} at degree bound {} ({} unresolved overlaps)",
            if r.complete { "complete" } else { "INCOMPLETE" },
            r.degree_bound,
            r.unresolved_overlaps
        );
        println!("basis size:   {}", r.basis.len());
        println!("obstructions: {}", r.obstructions.len());
        for w in r.obstructions.words() {
            println!("  {}", w.to_index_list());
        }
        if show_basis {
            println!("basis:");
            print!("{}", r.basis_text());
        }
    }
    let mut value = json!({
        "graph": g,
        "parameter": flags.t.to_string(),
        "complete": r.complete,
        "degree_bound": r.degree_bound,
        "unresolved_overlaps": r.unresolved_overlaps,
        "basis_size": r.basis.len(),
        "obstructions": r.obstructions,
    });
    if show_basis {
        value["basis"] = json!(r.basis.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    write_json(&flags.json, &value)?;
    Ok(if r.complete { Outcome::Ok } else { Outcome::Discrepancy })
}

fn crossvalidate(max_leaves: usize, allow_seven: bool, flags: &EngineFlags) -> Result<Outcome> {
    if max_leaves == 0 {
        bail!("max leaves must be at least 1");
    }
    let cap = if allow_seven { DEFAULT_ENUMERATION_CAP } else { DEFAULT_SWEEP_LEAVES };
    if max_leaves > cap {
        bail!("max leaves {max_leaves} exceeds {cap}; pass --allow-seven for 7");
    }
    let summary = cross_validate(max_leaves, cap, flags.degree_bound, &flags.t)?;
    if !json_to_stdout(&flags.json) {
        println!("classes:      {}", summary.classes);
        for (n, count) in &summary.classes_by_leaves {
            println!("  {n} leaves:    {count}");
        }
        println!("agreements:   {}", summary.agreements);
        println!("incomplete:   {}", summary.incomplete);
        println!("agreement matrix (theorem -> engine):");
        for (theorem, row) in &summary.agreement_matrix {
            for (engine, count) in row {
                println!("  {theorem:<18} -> {engine:<12} {count}");
            }
        }
        for row in summary.disagreements() {
            for d in &row.discrepancies {
                println!("DISCREPANCY: {}: {d}", row.graph);
            }
        }
        println!("{}", if summary.all_agree() { "result: full agreement" } else { "result: DISAGREEMENT" });
    }
    write_json(&flags.json, &summary)?;
    Ok(if summary.all_agree() { Outcome::Ok } else { Outcome::Discrepancy })
}

fn witness(spec: &str, max_block_len: usize, check: Option<Vec<String>>, flags: &EngineFlags) -> Result<Outcome> {
    let g = read_graph(spec)?;
    let run = run_engine(&g, &flags.t, flags.degree_bound)?;
    let obs = &run.groebner.obstructions;
    let quiet = json_to_stdout(&flags.json);
    if !run.groebner.complete && !quiet {
        println!("caveat: Groebner basis incomplete; obstruction set may be too small");
    }
    let (value, outcome) = match check {
        Some(pair) => {
            let q1 = parse_word(&pair[0], g.leaves() + 1)?;
            let q2 = parse_word(&pair[1], g.leaves() + 1)?;
            match check_free_pair(&q1, &q2, obs) {
                Ok(cert) => {
                    if !quiet {
                        println!("verified: q1 = {}, q2 = {} generate a free subalgebra", q1.to_index_list(), q2.to_index_list());
                        println!("window:   all sequences of {} consecutive blocks are normal", cert.window_bound);
                    }
                    (json!({"graph": g, "mode": "check", "verified": true, "certificate": cert}), Outcome::Ok)
                }
                Err(violation) => {
                    if !quiet {
                        println!("FAILED: {violation}");
                    }
                    let value = json!({
                        "graph": g,
                        "mode": "check",
                        "verified": false,
                        "q1": q1,
                        "q2": q2,
                        "window_bound": window_blocks(&q1, &q2, obs),
                        "violation": violation.to_string(),
                    });
                    (value, Outcome::Discrepancy)
                }
            }
        }
        None => {
            let found = search_free_pair(&run.automaton, max_block_len);
            if !quiet {
                match &found {
                    Some(c) => println!(
                        "free pair: q1 = {}, q2 = {} (window {})",
                        c.q1.to_index_list(),
                        c.q2.to_index_list(),
                        c.window_bound
                    ),
                    None => println!("none (block length bound {max_block_len})"),
                }
            }
            let value = json!({"graph": g, "mode": "search", "max_block_len": max_block_len, "certificate": found});
            (value, Outcome::Ok)
        }
    };
    write_json(&flags.json, &value)?;
    Ok(outcome)
}

fn enumerate(leaves: usize, json_path: Option<PathBuf>) -> Result<Outcome> {
    if leaves == 0 || leaves > MAX_LEAVES {
        bail!("leaf count must be in 1..={MAX_LEAVES}");
    }
    let graphs = enumerate_graphs_with_cap(leaves, DEFAULT_ENUMERATION_CAP)?;
    if !json_to_stdout(&json_path) {
        for g in &graphs {
            println!("{g}");
        }
        println!("{} classes", graphs.len());
    }
    let rows: Vec<Value> = graphs
        .iter()
        .map(|g| json!({"graph": g, "canonical": canonical_form(g)}))
        .collect();
    write_json(&json_path, &rows)?;
    Ok(Outcome::Ok)
}

//! `qdposet`: build, compare and verify posets of quasistable pseudo-divisors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qdposet::divisor::Polarization;
use qdposet::graph::io::{parse_graph, ParsedGraph};
use qdposet::oracle::run_oracle;
use qdposet::poset::{enumerate_qd, maximal_elements, poset_isomorphism, RankedPoset};
use qdposet::torelli::torelli_compare;
use qdposet::tropical::{build_jacobian_complex, top_volume, tropical_torelli_compare, TropicalError};
use qdposet::verify::{verify_corpus, CorpusEntry, VerifyOptions, DEFAULT_SEED};
use qdposet::{Graph, RationalMetricGraph};

const PARSE: u8 = 2;
const DISCONNECTED: u8 = 3;
const FALSIFIED: u8 = 4;
const BRIDGED: u8 = 5;

#[derive(Parser)]
#[command(name = "qdposet", version, about = "Posets of quasistable pseudo-divisors on multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate QD(Γ) and write it as JSON or DOT.
    Build(Common),
    /// Decide isomorphism of two posets (graph or poset files).
    Iso(Common),
    /// Compare two graphs through their posets and their biconnected components.
    Torelli(Common),
    /// Build the Jacobian cell complex of a metric graph, or compare two curves.
    Tropical(Common),
    /// Run the invariant suite over a corpus directory.
    Verify(VerifyArgs),
    /// Recompute a poset by brute force and compare with the enumerator and cache.
    Oracle(Common),
}

#[derive(Args)]
struct Common {
    /// Graph file (JSON or edge list).
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
    /// Second input, also accepted as `-h2`.
    #[arg(long = "graph2")]
    graph2: Option<PathBuf>,
    /// Basepoint vertex id; defaults to the least id.
    #[arg(long)]
    base: Option<String>,
    /// `canonical` or a polarization JSON file.
    #[arg(long, default_value = "canonical")]
    polarization: String,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Corpus directory.
    #[arg(default_value = "corpus")]
    corpus: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the table here.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

/// A failure carrying its exit code.
struct Exit(u8, String);

type Res<T> = Result<T, Exit>;

fn main() -> ExitCode {
    // `-h2` is not a valid clap short flag
    let args = std::env::args().map(|a| if a == "-h2" { "--graph2".to_string() } else { a });
    let cli = Cli::parse_from(args);
    let result = match cli.command {
        Command::Build(c) => build(&c),
        Command::Iso(c) => iso(&c),
        Command::Torelli(c) => torelli(&c),
        Command::Tropical(c) => tropical(&c),
        Command::Verify(v) => verify(&v),
        Command::Oracle(c) => oracle(&c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code, message)) => {
            eprintln!("qdposet: {message}");
            ExitCode::from(code)
        }
    }
}

fn max_edges() -> usize {
    std::env::var("QDPOSET_MAX_EDGES").ok().and_then(|s| s.parse().ok()).unwrap_or(14)
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Exit(PARSE, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Res<ParsedGraph> {
    let parsed = parse_graph(&read(path)?).map_err(|e| {
        let code = if e.is_disconnected() { DISCONNECTED } else { PARSE };
        Exit(code, format!("{}: {e}", path.display()))
    })?;
    let (m, cap) = (parsed.graph.edge_count(), max_edges());
    if m > cap {
        return Err(Exit(PARSE, format!("{}: {m} edges exceed QDPOSET_MAX_EDGES={cap}", path.display())));
    }
    Ok(parsed)
}

fn second(c: &Common) -> Res<&Path> {
    c.graph2.as_deref().ok_or_else(|| Exit(PARSE, "a second input is required (-h2/--graph2)".into()))
}

fn basepoint(g: &Graph, base: Option<&str>) -> Res<usize> {
    match base {
        Some(id) => g.vertex_by_id(id).map_err(|e| Exit(PARSE, e.to_string())),
        None => Ok(g.least_vertex()),
    }
}

fn polarization(g: &Graph, choice: &str) -> Res<Polarization> {
    if choice == "canonical" {
        return Ok(Polarization::canonical(g));
    }
    let path = Path::new(choice);
    let value: Value = serde_json::from_str(&read(path)?).map_err(|e| Exit(PARSE, format!("{choice}: {e}")))?;
    Polarization::from_json(g, &value).map_err(|e| Exit(PARSE, format!("{choice}: {e}")))
}

fn write_out(path: &Path, text: &str) -> Res<()> {
    fs::write(path, text).map_err(|e| Exit(PARSE, format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn build(c: &Common) -> Res<()> {
    let g = load(&c.graph)?.graph;
    let v0 = basepoint(&g, c.base.as_deref())?;
    let mu = polarization(&g, &c.polarization)?;
    let p = enumerate_qd(&g, v0, &mu).map_err(|e| Exit(PARSE, e.to_string()))?;
    if let Some(out) = &c.out {
        let text = match c.format {
            Format::Json => pretty(&p.to_json()),
            Format::Dot => p.to_dot(),
        };
        write_out(out, &text)?;
    }
    println!("elements={} maxima={} ranks={:?}", p.len(), maximal_elements(&p).len(), p.rank_histogram());
    Ok(())
}

// Graph files are enumerated at their default basepoint; poset documents are read directly.
fn ranked_input(path: &Path, polarization_choice: &str) -> Res<RankedPoset> {
    let text = read(path)?;
    if let Ok(value) = serde_json::from_str::<Value>(&text) {
        if value.get("size").is_some() || value.get("elements").is_some() {
            return RankedPoset::from_json(&value).map_err(|e| Exit(PARSE, format!("{}: {e}", path.display())));
        }
    }
    let g = load(path)?.graph;
    let mu = polarization(&g, polarization_choice)?;
    let p = enumerate_qd(&g, g.least_vertex(), &mu).map_err(|e| Exit(PARSE, e.to_string()))?;
    Ok(p.ranked().clone())
}

fn iso(c: &Common) -> Res<()> {
    let a = ranked_input(&c.graph, &c.polarization)?;
    let b = ranked_input(second(c)?, &c.polarization)?;
    let f = poset_isomorphism(&a, &b);
    let doc = json!({ "isomorphic": f.is_some(), "map": f.map(|f| f.map) });
    emit(c, &doc)
}

fn emit(c: &Common, doc: &Value) -> Res<()> {
    let text = pretty(doc);
    if let Some(out) = &c.out {
        write_out(out, &text)?;
    }
    print!("{text}");
    Ok(())
}

fn report_path(c: &Common) -> PathBuf {
    c.out.clone().unwrap_or_else(|| PathBuf::from("qdposet-report.json"))
}

fn torelli(c: &Common) -> Res<()> {
    let g = load(&c.graph)?.graph;
    let h = load(second(c)?)?.graph;
    match torelli_compare(&g, &h) {
        Ok(v) => {
            let doc = v.to_json();
            if v.agree {
                return emit(c, &doc);
            }
            let path = report_path(c);
            write_out(&path, &pretty(&doc))?;
            print!("{}", pretty(&doc));
            Err(Exit(FALSIFIED, format!("verdicts disagree; report written to {}", path.display())))
        }
        Err(e) => match e.falsifier() {
            Some(f) => {
                let path = report_path(c);
                write_out(&path, &pretty(&f.to_json()))?;
                Err(Exit(FALSIFIED, format!("{f}; report written to {}", path.display())))
            }
            None => Err(Exit(PARSE, e.to_string())),
        },
    }
}

fn metric(path: &Path) -> Res<RationalMetricGraph> {
    let parsed = load(path)?;
    let lengths =
        parsed.complete_lengths().ok_or_else(|| Exit(PARSE, format!("{}: every edge needs a length", path.display())))?;
    RationalMetricGraph::new(parsed.graph, lengths).map_err(|e| Exit(PARSE, format!("{}: {e}", path.display())))
}

fn tropical(c: &Common) -> Res<()> {
    let x = metric(&c.graph)?;
    if let Some(other) = &c.graph2 {
        let y = metric(other)?;
        let v = tropical_torelli_compare(&x, &y).map_err(|e| match e {
            TropicalError::Bridged(_) => Exit(BRIDGED, e.to_string()),
            e => Exit(PARSE, e.to_string()),
        })?;
        let doc = v.to_json();
        if !v.agree {
            let path = report_path(c);
            write_out(&path, &pretty(&doc))?;
            print!("{}", pretty(&doc));
            return Err(Exit(FALSIFIED, format!("verdicts disagree; report written to {}", path.display())));
        }
        return emit(c, &doc);
    }
    let v0 = basepoint(x.graph(), c.base.as_deref())?;
    let j = build_jacobian_complex(&x, v0).map_err(|e| Exit(PARSE, e.to_string()))?;
    if let Some(out) = &c.out {
        let text = match c.format {
            Format::Json => pretty(&j.to_json()),
            Format::Dot => j.poset.to_dot(),
        };
        write_out(out, &text)?;
    }
    println!("volume={} fvector={:?}", top_volume(&j), j.f_vector());
    Ok(())
}

/// `name.poset.json` next to a graph file.
fn cache_path(graph: &Path) -> PathBuf {
    let stem = graph.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    graph.with_file_name(format!("{stem}.poset.json"))
}

fn is_graph_file(path: &Path) -> bool {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
    (name.ends_with(".json") && !name.ends_with(".poset.json")) || name.ends_with(".edges")
}

fn load_corpus(dir: &Path) -> Res<Vec<CorpusEntry>> {
    let listing = fs::read_dir(dir).map_err(|e| Exit(PARSE, format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = listing.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| is_graph_file(p)).collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Exit(PARSE, format!("{}: no graph files", dir.display())));
    }
    let mut entries = Vec::with_capacity(paths.len());
    for path in paths {
        let parsed = load(&path)?;
        let cache = cache_path(&path);
        let cached = if cache.exists() {
            Some(serde_json::from_str(&read(&cache)?).map_err(|e| Exit(PARSE, format!("{}: {e}", cache.display())))?)
        } else {
            None
        };
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("?").to_string();
        let lengths = parsed.complete_lengths().filter(|l| !l.is_empty());
        entries.push(CorpusEntry { name, graph: parsed.graph, lengths, cached });
    }
    Ok(entries)
}

fn verify(v: &VerifyArgs) -> Res<()> {
    let entries = load_corpus(&v.corpus)?;
    let options = VerifyOptions { seed: v.seed, ..VerifyOptions::default() };
    let report = verify_corpus(&entries, options);
    let table = report.table();
    print!("{table}");
    if let Some(out) = &v.out {
        write_out(out, &table)?;
    }
    match report.falsifier {
        None => Ok(()),
        Some(f) => {
            eprintln!("{}", f.to_json());
            Err(Exit(FALSIFIED, format!("check {:?} failed", f.statement)))
        }
    }
}

fn oracle(c: &Common) -> Res<()> {
    let g = load(&c.graph)?.graph;
    let v0 = basepoint(&g, c.base.as_deref())?;
    let mu = polarization(&g, &c.polarization)?;
    let (p, r) = run_oracle(&g, v0, &mu).map_err(|e| Exit(PARSE, e.to_string()))?;
    let cache = cache_path(&c.graph);
    let cache_state = if cache.exists() {
        let cached: Value = serde_json::from_str(&read(&cache)?).map_err(|e| Exit(PARSE, format!("{}: {e}", cache.display())))?;
        if cached == p.to_json() {
            "match"
        } else {
            "differs"
        }
    } else {
        "absent"
    };
    println!(
        "elements={} brute_force={} kirchhoff={} elements_match={} covers_match={} hemispheres={} cache={cache_state}",
        r.elements, r.brute_force, r.kirchhoff, r.elements_match, r.covers_match, r.hemispheres_suffice
    );
    if r.all_match() && cache_state != "differs" {
        Ok(())
    } else {
        Err(Exit(FALSIFIED, "recomputation disagrees".into()))
    }
}

//! `rcg`: command-line front end for rcgraph.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rcgraph::catalog::{Catalog, ExportFormat, Query};
use rcgraph::circulant::{
    canonical_edge, construct_rc_circulant, make_circulant_with_cap, mod3_class, orbit_partition, CirculantSpec,
    SCAN_ORDER_CAP,
};
use rcgraph::constructions::{cartesian_product_with_cap, fact2_construct_with_cap, solve_clique_partition};
use rcgraph::graph::DEFAULT_ORDER_CAP;
use rcgraph::nonexistence::{certify_nonexistence, planar_arithmetic};
use rcgraph::search::{generate_rc_graphs, smallest_rc_graph, Budget, SearchConfig, SearchMode, SearchStats};
use rcgraph::{graph6, SmallGraph};

mod schema;

#[derive(Parser)]
#[command(name = "rcg", version, about = "Construct, search and certify (r,c)-constant graphs")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print (r,c) for every graph6 line of a file, or "not constant".
    Verify { file: PathBuf },
    /// Generate (r,c)-graphs of order n.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        planar: bool,
        /// Emit every graph instead of the first in canonical order.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
    /// Smallest order of an (r,c)-graph up to --n-max.
    Smallest {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long)]
        planar: bool,
    },
    /// Build an (r,c)-circulant.
    Circulant {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
    },
    /// Orbit partition of the link of 0 in Circ(n, S).
    Orbits {
        #[arg(long)]
        n: usize,
        /// Comma-separated jumps, e.g. "1,3,4,6".
        #[arg(long)]
        s: String,
    },
    /// Nonexistence certificate for (r,c), or for (r,c)-planar graphs.
    Nonexist {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        planar: bool,
    },
    /// Cartesian product of the first graphs of two graph6 files.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: usize,
    },
    /// Complement of every graph in a graph6 file.
    Complement { file: PathBuf },
    /// Product of cliques realising (r,c).
    Fact2 {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: usize,
    },
    /// Catalog of verified graphs.
    Catalog {
        /// JSONL store; the bundled seed records are used when omitted.
        #[arg(long, global = true)]
        db: Option<PathBuf>,
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Print the JSON schema of a subcommand's --json output.
    Schema { command: String },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Add the (r,c)-graphs of a graph6 file.
    Ingest {
        file: PathBuf,
        #[arg(long, default_value = "")]
        source: String,
    },
    Query {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        planar: Option<bool>,
    },
    Export {
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// c values (with smallest stored order) for degree r, or r values for link size c.
    Spectrum {
        #[arg(long, conflicts_with = "c", required_unless_present = "c")]
        r: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

/// Exit status and message for failures.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<rcgraph::catalog::CatalogError> for Failure {
    fn from(e: rcgraph::catalog::CatalogError) -> Self {
        Failure::domain(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("rcg: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("rcg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn print_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn stats_to_stderr(stats: &SearchStats) {
    eprintln!("{}", serde_json::to_string(stats).expect("stats serialise"));
}

/// Non-empty lines of a graph6 file, with 1-based line numbers.
fn graph6_lines(path: &Path) -> Result<Vec<(usize, String)>, Failure> {
    let f = File::open(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut lines = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && t != ">>graph6<<" {
            lines.push((i + 1, t.to_string()));
        }
    }
    Ok(lines)
}

fn first_graph(path: &Path, cap: usize) -> Result<SmallGraph, Failure> {
    let (line, text) = graph6_lines(path)?
        .into_iter()
        .next()
        .ok_or_else(|| Failure::usage(format!("{}: no graph", path.display())))?;
    graph6::decode_with_cap(&text, cap).map_err(|e| Failure::usage(format!("{}:{line}: {e}", path.display())))
}

fn signature_json(g: &SmallGraph) -> Value {
    match g.rc_signature() {
        Some(s) => json!({"r": s.r, "c": s.c}),
        None => Value::Null,
    }
}

fn signature_text(g: &SmallGraph) -> String {
    match g.rc_signature() {
        Some(s) => format!("({},{})", s.r, s.c),
        None => "not constant".into(),
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    match &cli.command {
        Command::Verify { file } => verify(cli.json, file, out),
        Command::Search {
            n,
            r,
            c,
            planar,
            all,
            limit,
        } => {
            let cfg = SearchConfig::new(*n, *r, *c)
                .planar(*planar)
                .limit(*limit)
                .mode(if *all { SearchMode::AllGraphs } else { SearchMode::FirstFound });
            let res = generate_rc_graphs(&cfg).map_err(|e| Failure::usage(e.to_string()))?;
            stats_to_stderr(&res.stats);
            let g6: Vec<String> = res.graphs.iter().map(graph6::encode).collect();
            if cli.json {
                print_json(
                    out,
                    &json!({
                        "n": n, "r": r, "c": c, "planar": planar,
                        "complete": res.complete,
                        "graphs": g6,
                        "stats": res.stats,
                    }),
                )?;
            } else {
                for s in &g6 {
                    writeln!(out, "{s}")?;
                }
            }
            if !res.complete {
                return Err(Failure::domain("budget exceeded; output is partial"));
            }
            Ok(0)
        }
        Command::Smallest { r, c, n_max, planar } => {
            let res = smallest_rc_graph(*r, *c, *n_max, *planar, Budget::default())
                .map_err(|e| Failure::usage(e.to_string()))?;
            stats_to_stderr(&res.stats);
            let witness = res.witness.as_ref().map(|(g, n)| (graph6::encode(g), *n));
            if cli.json {
                print_json(
                    out,
                    &json!({
                        "r": r, "c": c, "planar": planar,
                        "order": witness.as_ref().map(|w| w.1),
                        "graph6": witness.as_ref().map(|w| w.0.clone()),
                        "complete": res.complete,
                        "last_completed_n": res.last_completed_n,
                        "stats": res.stats,
                    }),
                )?;
            } else if let Some((g6, n)) = &witness {
                writeln!(out, "order {n}")?;
                writeln!(out, "{g6}")?;
            }
            match (&witness, res.complete) {
                (Some(_), _) => Ok(0),
                (None, true) => Err(Failure::domain(format!("no ({r},{c})-graph of order <= {n_max}"))),
                (None, false) => Err(Failure::domain(format!(
                    "budget exceeded; last completed order {:?}",
                    res.last_completed_n
                ))),
            }
        }
        Command::Circulant { r, c } => {
            let spec = construct_rc_circulant(*r, *c).map_err(|e| Failure::domain(e.to_string()))?;
            let g = make_circulant_with_cap(&spec, SCAN_ORDER_CAP).map_err(|e| Failure::domain(e.to_string()))?;
            let g6 = graph6::encode(&g);
            if cli.json {
                print_json(
                    out,
                    &json!({"r": r, "c": c, "spec": spec, "n": spec.order(), "jumps": spec.jumps(), "graph6": g6}),
                )?;
            } else {
                writeln!(out, "{spec}")?;
                writeln!(out, "{g6}")?;
            }
            Ok(0)
        }
        Command::Orbits { n, s } => {
            let spec: CirculantSpec = format!("{n}:{s}").parse().map_err(|e: rcgraph::circulant::CirculantError| {
                Failure::usage(e.to_string())
            })?;
            let orbits = orbit_partition(&spec);
            if cli.json {
                let list: Vec<Value> = orbits
                    .iter()
                    .map(|o| {
                        let ce = canonical_edge(&spec, o.edges[0]).expect("orbit edges are link edges");
                        json!({"x": ce.x, "y": ce.y, "size": o.len(), "edges": o.edges})
                    })
                    .collect();
                print_json(
                    out,
                    &json!({
                        "spec": spec,
                        "link_edges": spec.link_size(),
                        "mod3": mod3_class(&spec),
                        "orbits": list,
                    }),
                )?;
            } else {
                let jumps: Vec<String> = spec.jumps().iter().map(usize::to_string).collect();
                writeln!(
                    out,
                    "Circ({}, {{{}}}): e(0) = {} ≡ {} (mod 3)",
                    spec.order(),
                    jumps.join(","),
                    spec.link_size(),
                    mod3_class(&spec)
                )?;
                for o in &orbits {
                    let ce = canonical_edge(&spec, o.edges[0]).expect("orbit edges are link edges");
                    let edges: Vec<String> = o.edges.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
                    writeln!(out, "x={} y={} size {}: {}", ce.x, ce.y, o.len(), edges.join(" "))?;
                }
            }
            Ok(0)
        }
        Command::Nonexist { r, c, planar } => {
            let cert = if *planar {
                planar_arithmetic(*r, *c)
            } else {
                certify_nonexistence(*r, *c)
            };
            match cert {
                Some(cert) => {
                    let v = serde_json::to_value(&cert).expect("certificates serialise");
                    if cli.json {
                        print_json(out, &json!({"r": r, "c": c, "planar": planar, "certificate": v}))?;
                    } else {
                        print_json(out, &v)?;
                    }
                    Ok(0)
                }
                None => {
                    if cli.json {
                        print_json(out, &json!({"r": r, "c": c, "planar": planar, "certificate": null}))?;
                    } else {
                        writeln!(out, "no certificate found")?;
                    }
                    Ok(1)
                }
            }
        }
        Command::Product { a, b, cap } => {
            let (ga, gb) = (first_graph(a, *cap)?, first_graph(b, *cap)?);
            let p = cartesian_product_with_cap(&ga, &gb, *cap).map_err(|e| Failure::domain(e.to_string()))?;
            emit_graph(cli.json, &p, out)
        }
        Command::Complement { file } => {
            let mut items = Vec::new();
            for (line, text) in graph6_lines(file)? {
                let g = graph6::decode(&text)
                    .map_err(|e| Failure::usage(format!("{}:{line}: {e}", file.display())))?;
                items.push(g.complement());
            }
            if cli.json {
                let list: Vec<Value> = items
                    .iter()
                    .map(|g| json!({"graph6": graph6::encode(g), "n": g.order(), "signature": signature_json(g)}))
                    .collect();
                print_json(out, &json!({ "graphs": list }))?;
            } else {
                for g in &items {
                    writeln!(out, "{}\t{}", graph6::encode(g), signature_text(g))?;
                }
            }
            Ok(0)
        }
        Command::Fact2 { r, c, cap } => {
            let g = fact2_construct_with_cap(*r, *c, *cap).map_err(|e| Failure::domain(e.to_string()))?;
            let parts = solve_clique_partition(*r, *c).expect("construction succeeded").parts;
            if cli.json {
                print_json(
                    out,
                    &json!({"r": r, "c": c, "parts": parts, "n": g.order(), "graph6": graph6::encode(&g)}),
                )?;
            } else {
                let parts: Vec<String> = parts.iter().map(|x| format!("K{}", x + 1)).collect();
                writeln!(out, "{}", parts.join(" □ "))?;
                writeln!(out, "{}", graph6::encode(&g))?;
            }
            Ok(0)
        }
        Command::Catalog { db, action } => catalog(cli.json, db.as_deref(), action, out),
        Command::Schema { command } => {
            let s = schema::for_command(command)
                .ok_or_else(|| Failure::usage(format!("no schema for {command:?}; known: {}", schema::NAMES.join(", "))))?;
            writeln!(out, "{s}")?;
            Ok(0)
        }
    }
}

fn emit_graph(json_out: bool, g: &SmallGraph, out: &mut impl Write) -> Outcome {
    let g6 = graph6::encode(g);
    if json_out {
        print_json(out, &json!({"graph6": g6, "n": g.order(), "signature": signature_json(g)}))?;
    } else {
        writeln!(out, "{g6}\t{}", signature_text(g))?;
    }
    Ok(0)
}

fn verify(json_out: bool, file: &Path, out: &mut impl Write) -> Outcome {
    let mut rows = Vec::new();
    let mut malformed = 0;
    for (line, text) in graph6_lines(file)? {
        match graph6::decode(&text) {
            Ok(g) => {
                if json_out {
                    rows.push(json!({"line": line, "graph6": text, "n": g.order(), "signature": signature_json(&g)}));
                } else {
                    writeln!(out, "{}", signature_text(&g))?;
                }
            }
            Err(e) => {
                malformed += 1;
                eprintln!("rcg: {}:{line}: {e}", file.display());
                if json_out {
                    rows.push(json!({"line": line, "graph6": text, "error": e.to_string()}));
                }
            }
        }
    }
    if json_out {
        print_json(out, &json!({ "graphs": rows }))?;
    }
    Ok(if malformed > 0 { 1 } else { 0 })
}

fn catalog(json_out: bool, db: Option<&Path>, action: &CatalogAction, out: &mut impl Write) -> Outcome {
    let mut cat = match db {
        Some(path) => Catalog::open(path)?,
        None => Catalog::seed(),
    };
    for q in cat.quarantined() {
        eprintln!("rcg: quarantined line {}: {}", q.line, q.reason);
    }
    match action {
        CatalogAction::Ingest { file, source } => {
            if db.is_none() {
                return Err(Failure::usage("ingest needs --db"));
            }
            let f = File::open(file).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
            let report = cat.ingest(BufReader::new(f), source)?;
            if json_out {
                print_json(out, &serde_json::to_value(&report).expect("report serialises"))?;
            } else {
                writeln!(
                    out,
                    "accepted {} rejected {} duplicates {} malformed {}",
                    report.accepted,
                    report.rejected,
                    report.duplicates,
                    report.malformed.len()
                )?;
                for m in &report.malformed {
                    eprintln!("rcg: {}:{}: {}", file.display(), m.line, m.reason);
                }
            }
            Ok(0)
        }
        CatalogAction::Query { r, c, n_max, planar } => {
            let q = Query {
                r: *r,
                c: *c,
                n_max: *n_max,
                planar: *planar,
            };
            let recs = cat.query(&q);
            if json_out {
                print_json(out, &json!({ "records": recs }))?;
            } else {
                for rec in recs {
                    writeln!(
                        out,
                        "{}\t{}\tn={} r={} c={} planar={}",
                        rec.id, rec.g6, rec.n, rec.r, rec.c, rec.planar
                    )?;
                }
            }
            Ok(0)
        }
        CatalogAction::Export { format } => {
            let format = match format {
                Format::Jsonl => ExportFormat::Jsonl,
                Format::Csv => ExportFormat::Csv,
            };
            cat.export(format, &mut *out)?;
            Ok(0)
        }
        CatalogAction::Spectrum { r, c } => {
            let (key, map) = match (r, c) {
                (Some(r), _) => ("r", (*r, cat.spectrum(*r))),
                (None, Some(c)) => ("c", (*c, cat.co_spectrum(*c))),
                (None, None) => unreachable!("clap requires one of --r, --c"),
            };
            let (value, map) = map;
            if json_out {
                let entries: Vec<Value> = map.iter().map(|(k, n)| json!({"value": k, "smallest_order": n})).collect();
                print_json(out, &json!({ key: value, "entries": entries }))?;
            } else {
                for (k, n) in &map {
                    writeln!(out, "{k}\t{n}")?;
                }
            }
            Ok(0)
        }
    }
}

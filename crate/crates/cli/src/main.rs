use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cinfty::frontier::{FrontierFn, FrontierTables, Mode, PureFrontier};
use cinfty::graph::{MinimalGraphOf, DEFAULT_MAX_HEIGHT};
use cinfty::oracle::{enumerate_cinfty, verify_suite};
use cinfty::probe::{
    containment_probe, glueing_search, glueing_sweep, reachability_probe, weakley_check_on,
    ProbeReport, DEFAULT_CONTAINMENT_CAP,
};
use cinfty::vertical::{decode, encode, min_word, Rooting, VerticalRep, VerticalWord};
use cinfty::word::{self, Word};
use cinfty::{Error, MinimalGraph};

#[derive(Parser, Debug)]
#[command(name = "cinf", version, about = "Derivatives, frontiers and minimal classes of C∞-words")]
struct Cli {
    /// Emit JSON instead of the bare value.
    #[arg(long, global = true)]
    json: bool,

    /// Frontier-table cache file; CINF_CACHE takes precedence.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derivative D(w).
    Derive { word: Word },
    /// Run-length encoding of w.
    Rle { word: Word },
    /// All non-empty derivatives of w, one per line.
    Tower { word: Word },
    /// Number of non-empty derivatives.
    Height { word: Word },
    /// Every word whose derivative is w.
    Primitives { word: Word },
    /// Minimality, maximality and extendability flags.
    Classify { word: Word },
    /// Extends w by forced letters until it is doubly extendable on both sides.
    Extend { word: Word },
    /// First single-rooted minimal factor of full height.
    Minpart { word: Word },
    /// Vertical representation LEFT|RIGHT.
    Encode { word: Word },
    /// Word with the given vertical representation.
    Decode(DecodeArgs),
    /// Shortest word with the given left frontier.
    Minword {
        frontier: VerticalWord,
        #[arg(long)]
        double: bool,
    },
    /// Evaluate Γs, Γd, Θ or Π on a frontier.
    Frontier {
        function: FnArg,
        frontier: VerticalWord,
        #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
        mode: ModeArg,
    },
    /// Queries on the graph of minimal classes.
    Graph {
        #[command(subcommand)]
        query: GraphQuery,
    },
    /// All C∞-words of length n, one per line.
    Enumerate { n: usize },
    /// Prefix of length n of the Kolakoski word.
    Kolakoski { n: usize },
    /// Differential verification suite.
    Verify {
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
    },
    /// Empirical conjecture probes.
    Probe {
        #[command(subcommand)]
        probe: ProbeCmd,
    },
    /// Frontier-table cache management.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Args, Debug)]
struct DecodeArgs {
    /// LEFT|RIGHT (quote the pipe).
    #[arg(required_unless_present_all = ["left", "right"], conflicts_with_all = ["left", "right"])]
    rep: Option<VerticalRep>,
    #[arg(long, requires = "right")]
    left: Option<VerticalWord>,
    #[arg(long, requires = "left")]
    right: Option<VerticalWord>,
}

#[derive(Subcommand, Debug)]
enum GraphQuery {
    /// Outgoing edges as `label node`.
    Succ { node: Node },
    /// Number of origin-to-node paths.
    Count { node: Node },
    /// Labels of all origin-to-node paths.
    Paths {
        node: Node,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Length of the single-rooted minimal word.
    Length { node: Node },
    /// Letter counts (ones twos) of the single-rooted minimal word.
    Letters { node: Node },
    /// Length summary of all nodes of one height, per root letter.
    Stats {
        k: usize,
        /// Also total the letters of every minimal word.
        #[arg(long)]
        letters: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_HEIGHT)]
        max_height: usize,
    },
    /// Graphviz rendering of the nodes up to a height.
    Dot { max_height: usize },
}

#[derive(Subcommand, Debug)]
enum ProbeCmd {
    /// Common continuation of two nodes.
    Glueing {
        u1: Node,
        u2: Node,
        #[arg(long, default_value_t = 12)]
        budget: usize,
    },
    /// Glueing over every pair of nodes up to a length.
    GlueingSweep {
        max_len: usize,
        #[arg(long, default_value_t = 12)]
        budget: usize,
    },
    /// Whether every node of length m is reachable from every node of length k.
    Reach { k: usize, m: usize },
    /// Least height whose words contain every single-rooted minimal word of height k.
    Contain {
        k: usize,
        h_max: usize,
        #[arg(long, default_value_t = DEFAULT_CONTAINMENT_CAP)]
        length_cap: usize,
    },
    /// Monotonicity of minimal-word lengths across heights.
    Weakley { k_max: usize },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    /// Tabulate the frontier maps up to length k and write the cache.
    Build { k: usize },
    /// Describe the cache file.
    Info,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Direct,
    Recursive,
}

#[derive(Clone, Copy, Debug)]
struct FnArg(FrontierFn);

impl std::str::FromStr for FnArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(FnArg)
    }
}

/// A graph node: a 0-free frontier, with `ε` or `""` for the origin.
#[derive(Clone, Copy, Debug)]
struct Node(PureFrontier);

impl std::str::FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() || s == "ε" {
            return Ok(Node(PureFrontier::EMPTY));
        }
        s.parse().map(Node)
    }
}

/// What a command prints: the bare text and the JSON value.
struct Rendered {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Rendered {
    Rendered {
        text: text.into(),
        json,
    }
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

struct Cache {
    path: Option<PathBuf>,
}

impl Cache {
    fn from_cli(cli: &Cli) -> Cache {
        let env = std::env::var_os("CINF_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from);
        Cache {
            path: env.or_else(|| cli.cache.clone()),
        }
    }

    fn read(path: &Path) -> Result<FrontierTables, Error> {
        let file = File::open(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        FrontierTables::read_from(BufReader::new(file))
    }

    fn write(path: &Path, tables: &FrontierTables) -> Result<(), Error> {
        let file = File::create(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        tables
            .write_to(BufWriter::new(file))
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }

    /// Tables covering length `k`, from the cache file when it is large enough.
    fn tables(&self, k: usize) -> Result<FrontierTables, Error> {
        let Some(path) = &self.path else {
            return FrontierTables::build(k);
        };
        if path.exists() {
            match Cache::read(path) {
                Ok(t) if t.max_len() >= k => return Ok(t),
                Ok(_) => {}
                Err(e) => eprintln!("warning: ignoring cache: {e}"),
            }
        }
        let t = FrontierTables::build(k)?;
        Cache::write(path, &t)?;
        Ok(t)
    }

    fn graph(&self, height: usize) -> Result<MinimalGraph, Error> {
        self.graph_with(height, DEFAULT_MAX_HEIGHT)
    }

    fn graph_with(&self, height: usize, max_height: usize) -> Result<MinimalGraph, Error> {
        if height > max_height {
            return Err(Error::CapacityExceeded(format!(
                "graph height {height} above the configured maximum {max_height}"
            )));
        }
        let tables = self.tables(height)?;
        MinimalGraphOf::from_tables(tables, height)
    }
}

fn nonempty(node: Node) -> Result<PureFrontier, Error> {
    if node.0.is_empty() {
        Err(Error::EmptyWord)
    } else {
        Ok(node.0)
    }
}

enum Outcome {
    Done(Rendered),
    /// Printed like a success but exits with status 1.
    Failed(Rendered),
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let cache = Cache::from_cli(cli);
    Ok(Outcome::Done(match &cli.command {
        Command::Derive { word } => {
            let d = word::derivative(word)?;
            out(d.to_string(), to_json(&d))
        }
        Command::Rle { word } => {
            let r = word::rle(word);
            out(r.to_string(), json!(r.runs()))
        }
        Command::Tower { word } => {
            let t = word::tower(word)?;
            out(
                lines(t.levels()),
                json!({"word": word, "levels": t.levels(), "height": t.height(), "root": t.root()}),
            )
        }
        Command::Height { word } => {
            let h = word::height(word)?;
            out(h.to_string(), json!(h))
        }
        Command::Primitives { word } => {
            let ps = word::primitives(word)?;
            out(lines(&ps), to_json(&ps))
        }
        Command::Classify { word } => {
            let c = word::classify(word)?;
            let v = to_json(&c);
            let text = v
                .as_object()
                .expect("struct")
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join("\n");
            out(text, v)
        }
        Command::Extend { word } => {
            let e = word::extend_to_maximal(word)?;
            out(e.to_string(), to_json(&e))
        }
        Command::Minpart { word } => {
            let mp = word::minimal_part(word)?;
            out(mp.part.word.to_string(), to_json(&mp))
        }
        Command::Encode { word } => {
            let rep = encode(word)?;
            out(rep.to_string(), json!({"left": rep.left, "right": rep.right}))
        }
        Command::Decode(args) => {
            let rep = match (&args.rep, &args.left, &args.right) {
                (Some(rep), _, _) => rep.clone(),
                (None, Some(l), Some(r)) => VerticalRep::new(l.clone(), r.clone())?,
                _ => unreachable!("clap enforces one form"),
            };
            let w = decode(&rep)?;
            out(w.to_string(), to_json(&w))
        }
        Command::Minword { frontier, double } => {
            let rooting = if *double { Rooting::Double } else { Rooting::Single };
            let w = min_word(frontier, rooting)?;
            out(w.to_string(), to_json(&w))
        }
        Command::Frontier { function, frontier, mode } => {
            let image = match mode {
                ModeArg::Direct => cinfty::frontier::evaluate(function.0, frontier, Mode::Direct)?,
                ModeArg::Recursive => {
                    cache.tables(frontier.len().saturating_sub(1))?.eval(function.0, frontier)?
                }
            };
            out(image.to_string(), to_json(&image))
        }
        Command::Graph { query } => graph_query(&cache, query)?,
        Command::Enumerate { n } => {
            let ws = enumerate_cinfty(*n)?;
            out(lines(&ws), to_json(&ws))
        }
        Command::Kolakoski { n } => {
            let k = word::kolakoski(*n);
            out(k.to_string(), to_json(&k))
        }
        Command::Verify { n_max, k_max } => {
            let report = verify_suite(*n_max, *k_max)?;
            let text = report
                .checks
                .iter()
                .map(|c| match &c.counterexample {
                    None => format!("PASS {} ({} inputs)", c.name, c.checked),
                    Some(x) => format!("FAIL {} ({} inputs): {x}", c.name, c.checked),
                })
                .collect::<Vec<_>>()
                .join("\n");
            let r = out(text, to_json(&report));
            if !report.passed() {
                return Ok(Outcome::Failed(r));
            }
            r
        }
        Command::Probe { probe } => {
            let report = run_probe(&cache, probe)?;
            out(probe_text(&report), to_json(&report))
        }
        Command::Cache { action } => {
            let path = cache
                .path
                .clone()
                .ok_or_else(|| Error::Cache("no cache path: pass --cache or set CINF_CACHE".into()))?;
            match action {
                CacheCmd::Build { k } => {
                    let t = FrontierTables::build(*k)?;
                    Cache::write(&path, &t)?;
                    out(
                        path.display().to_string(),
                        json!({"path": path, "max_len": t.max_len(), "keys_per_function": t.keys_per_function()}),
                    )
                }
                CacheCmd::Info => {
                    let t = Cache::read(&path)?;
                    let bytes = std::fs::metadata(&path).map(|m| m.len()).unwrap_or(0);
                    out(
                        format!("max_len={} bytes={bytes}", t.max_len()),
                        json!({"path": path, "max_len": t.max_len(), "bytes": bytes,
                               "keys_per_function": t.keys_per_function()}),
                    )
                }
            }
        }
    }))
}

fn graph_query(cache: &Cache, query: &GraphQuery) -> Result<Rendered, Error> {
    Ok(match query {
        GraphQuery::Succ { node } => {
            let g = cache.graph(node.0.len())?;
            let succ = g.successors(node.0)?;
            let text = succ
                .iter()
                .map(|(l, v)| format!("{} {v}", l.to_char()))
                .collect::<Vec<_>>()
                .join("\n");
            let v: Vec<Value> = succ
                .iter()
                .map(|(l, v)| json!({"label": l.to_char().to_string(), "node": v}))
                .collect();
            out(text, json!(v))
        }
        GraphQuery::Count { node } => {
            let u = nonempty(*node)?;
            let c = cache.graph(u.len())?.path_count(u)?;
            out(c.to_string(), json!(c))
        }
        GraphQuery::Paths { node, budget } => {
            let u = nonempty(*node)?;
            let paths = cache.graph(u.len())?.paths_to(u, *budget)?;
            out(lines(&paths), to_json(&paths))
        }
        GraphQuery::Length { node } => {
            let u = nonempty(*node)?;
            let l = cache.graph(u.len())?.min_word_length(u)?;
            out(l.to_string(), json!(l))
        }
        GraphQuery::Letters { node } => {
            let (ones, twos) = cinfty::graph::letter_counts(nonempty(*node)?)?;
            out(format!("{ones} {twos}"), json!({"ones": ones, "twos": twos}))
        }
        GraphQuery::Stats { k, letters, max_height } => {
            let s = cache.graph_with(*k, *max_height)?.level_stats(*k, *letters)?;
            let text = s
                .roots
                .iter()
                .map(|r| {
                    let mut line = format!(
                        "root={} nodes={} min={} max={} distinct={}",
                        r.root,
                        r.nodes,
                        r.min_length,
                        r.max_length,
                        r.lengths.len()
                    );
                    if let (Some(o), Some(t)) = (r.ones, r.twos) {
                        line.push_str(&format!(" ones={o} twos={t}"));
                    }
                    line
                })
                .collect::<Vec<_>>()
                .join("\n");
            out(text, to_json(&s))
        }
        GraphQuery::Dot { max_height } => {
            if *max_height == 0 {
                return Err(Error::EmptyWord);
            }
            let dot = cache.graph(*max_height)?.dot(*max_height)?;
            out(dot.trim_end().to_string(), json!(dot))
        }
    })
}

fn run_probe(cache: &Cache, probe: &ProbeCmd) -> Result<ProbeReport, Error> {
    match probe {
        ProbeCmd::Glueing { u1, u2, budget } => glueing_search(u1.0, u2.0, *budget),
        ProbeCmd::GlueingSweep { max_len, budget } => glueing_sweep(*max_len, *budget),
        ProbeCmd::Reach { k, m } => reachability_probe(*k, *m),
        ProbeCmd::Contain { k, h_max, length_cap } => containment_probe(*k, *h_max, *length_cap),
        ProbeCmd::Weakley { k_max } => {
            let g = cache.graph((*k_max).max(2))?;
            weakley_check_on(&g, *k_max)
        }
    }
}

fn probe_text(r: &ProbeReport) -> String {
    let mut text = r.verdict.to_string();
    for w in &r.witnesses {
        text.push_str(&format!("\n{}: nodes={:?}", w.kind, w.nodes));
        if !w.labels.is_empty() {
            text.push_str(&format!(" labels={:?}", w.labels));
        }
        if !w.lengths.is_empty() {
            text.push_str(&format!(" lengths={:?}", w.lengths));
        }
    }
    for n in &r.notes {
        text.push_str(&format!("\n{n}"));
    }
    text
}

fn emit(as_json: bool, r: &Rendered) {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let _ = if as_json {
        writeln!(lock, "{}", r.json)
    } else {
        writeln!(lock, "{}", r.text)
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done(r)) => {
            emit(cli.json, &r);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(r)) => {
            emit(cli.json, &r);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

//! Command-line front end for the graph product toolkit.
//!
//! Exit codes: 0 success, 2 malformed input, 3 domain error, 4 budget or
//! window refusal.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use graph_product::expectations_modular::{
    commutation_suite, freeness_check, intersection_check, modular_data, moment_suite,
};
use graph_product::fock_space::FockSpace;
use graph_product::graph_words::SimplicialGraph;
use graph_product::rd_lab::{run_preset, Preset, RdRun, DEFAULT_TRIALS};
use graph_product::vertex_algebra::{VertexAlgebra, VertexSpec};
use graph_product::{Error, ErrorKind, Execution};
use serde::Deserialize;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    /// Errors met while reading inputs count as parse failures unless they
    /// are size refusals.
    fn loading(e: Error) -> Self {
        match e.kind() {
            ErrorKind::Budget => Failure {
                code: EXIT_BUDGET,
                message: e.to_string(),
            },
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Parse => EXIT_PARSE,
            ErrorKind::Domain => EXIT_DOMAIN,
            ErrorKind::Budget => EXIT_BUDGET,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gprod",
    version,
    about = "Graph products of operator algebras: words, Fock space checks and rapid-decay tables"
)]
pub struct Cli {
    /// JSON file supplying any of the command's options; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form, reducedness and the letter permutation between words.
    Words(WordsArgs),
    /// Moment, commutation, freeness and intersection checks on the Fock space.
    Fock(FockArgs),
    /// Shell-block norm table for a preset graph product of finite groups.
    Rd(RdArgs),
}

#[derive(Debug, Args, Default)]
pub struct WordsArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Comma separated vertex names.
    #[arg(long)]
    pub word: Option<String>,
    /// Second reduced word; prints the permutation from `--word` to it.
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct FockArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// JSON object mapping vertex names to vertex specs.
    #[arg(long)]
    pub vertices: Option<PathBuf>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Vertex around which freeness instances are built.
    #[arg(long)]
    pub center: Option<String>,
    /// Append the spectrum of the modular operator.
    #[arg(long)]
    pub modular_spectrum: bool,
}

#[derive(Debug, Args, Default)]
pub struct RdArgs {
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, visible_alias = "R")]
    pub radius: Option<usize>,
    /// Largest support length.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Options accepted from `--config`; paths are relative to the file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graph: Option<PathBuf>,
    pub vertices: Option<PathBuf>,
    pub word: Option<String>,
    pub sigma: Option<String>,
    pub cutoff: Option<usize>,
    pub radius: Option<usize>,
    pub k: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub preset: Option<String>,
    pub center: Option<String>,
    #[serde(default)]
    pub modular_spectrum: bool,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
        let mut cfg: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.graph, &mut cfg.vertices, &mut cfg.out]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Parse arguments, run, and return the process exit code. Normal output goes
/// to `stdout` (or `--out`), diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Words(a) => cmd_words(a, cfg, stdout),
        Command::Fock(a) => cmd_fock(a, cfg, exec, stdout),
        Command::Rd(a) => cmd_rd(a, cfg, exec, stdout),
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::parse(format!("missing --{flag}")))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SimplicialGraph, Failure> {
    SimplicialGraph::from_json(&read(path)?).map_err(Failure::loading)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VertexFile {
    Named(BTreeMap<String, VertexSpec>),
    Ordered(Vec<VertexSpec>),
}

fn load_vertices(path: &Path, g: &SimplicialGraph) -> Result<Vec<VertexAlgebra>, Failure> {
    let file: VertexFile = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let specs: Vec<VertexSpec> = match file {
        VertexFile::Ordered(list) => {
            if list.len() != g.len() {
                return Err(Failure::parse(format!(
                    "{} vertex specs for {} vertices",
                    list.len(),
                    g.len()
                )));
            }
            list
        }
        VertexFile::Named(mut map) => {
            let mut out = Vec::with_capacity(g.len());
            for name in g.names() {
                out.push(
                    map.remove(name)
                        .ok_or_else(|| Failure::parse(format!("no spec for vertex `{name}`")))?,
                );
            }
            if let Some(extra) = map.keys().next() {
                return Err(Failure::parse(format!("spec for unknown vertex `{extra}`")));
            }
            out
        }
    };
    specs
        .iter()
        .map(|s| s.build().map_err(Failure::loading))
        .collect()
}

fn emit(out: Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(&p, text).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", p.display()),
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure {
            code: 1,
            message: e.to_string(),
        }),
    }
}

pub fn cmd_words(
    a: WordsArgs,
    cfg: ExperimentConfig,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let g = load_graph(&required(a.graph.or(cfg.graph), "graph")?)?;
    let word = g
        .parse_word(&required(a.word.or(cfg.word), "word")?)
        .map_err(Failure::loading)?;
    let other = match a.sigma.or(cfg.sigma) {
        Some(s) => Some(g.parse_word(&s).map_err(Failure::loading)?),
        None => None,
    };
    let minimal = g.normalize(&word);
    let mut text = format!(
        "minimal: {}; reduced: {}\n",
        g.format_word(minimal.letters()),
        g.is_reduced(&word)
    );
    if let Some(w2) = other {
        let p = g.sigma(&word, &w2)?;
        let map: Vec<String> = p.mapping.iter().map(|i| i.to_string()).collect();
        text.push_str(&format!("sigma: {}\n", map.join(",")));
    }
    emit(None, &text, stdout)
}

const FOCK_HEADER: [&str; 5] = ["check", "instance", "value", "tolerance", "pass"];
const COMMUTATION_TOL: f64 = 1e-9;
const MOMENT_TOL: f64 = 1e-12;

struct FockCsv {
    w: csv::Writer<Vec<u8>>,
}

impl FockCsv {
    fn new() -> Self {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(FOCK_HEADER).expect("in-memory write");
        FockCsv { w }
    }

    fn row(&mut self, check: &str, instance: usize, value: f64, tol: Option<f64>) {
        let (tol_s, pass) = match tol {
            Some(t) => (
                format!("{t:e}"),
                if value <= t { "true" } else { "false" }.to_string(),
            ),
            None => (String::new(), String::new()),
        };
        self.w
            .write_record([
                check,
                &instance.to_string(),
                &format!("{value:.6e}"),
                &tol_s,
                &pass,
            ])
            .expect("in-memory write");
    }

    fn finish(self) -> String {
        String::from_utf8(self.w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

pub fn cmd_fock(
    a: FockArgs,
    cfg: ExperimentConfig,
    exec: Execution,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let g = load_graph(&required(a.graph.or(cfg.graph), "graph")?)?;
    let algebras = load_vertices(&required(a.vertices.or(cfg.vertices), "vertices")?, &g)?;
    let cutoff = a.cutoff.or(cfg.cutoff).unwrap_or(3);
    let trials = a.trials.or(cfg.trials).unwrap_or(50);
    let seed = a.seed.or(cfg.seed).unwrap_or(0);
    let center = match a.center.or(cfg.center) {
        Some(name) => Some(g.vertex(&name).map_err(Failure::loading)?),
        None => g
            .vertices()
            .find(|&v| g.star(v).map(|s| s.len() < g.len()).unwrap_or(false)),
    };
    let space = FockSpace::build(&g, &algebras, cutoff)?;
    let mut csv = FockCsv::new();

    for (i, v) in moment_suite(&space, trials, cutoff, seed, exec)?
        .into_iter()
        .enumerate()
    {
        csv.row("vacuum_moment", i, v, Some(MOMENT_TOL));
    }
    if g.len() >= 2 && cutoff >= 1 {
        let reach = cutoff.saturating_sub(1).max(1);
        let report = commutation_suite(&space, trials, reach, seed, exec)?;
        for (name, values) in [
            ("edge_commutation", &report.edge),
            ("left_right_commutation", &report.left_right),
            ("jaj_identity", &report.jaj),
        ] {
            for (i, v) in values.iter().enumerate() {
                csv.row(name, i, *v, Some(COMMUTATION_TOL));
            }
        }
    }
    if let Some(v) = center {
        if cutoff >= 1 {
            let report = freeness_check(&space, v, trials, cutoff, seed, exec)?;
            for r in &report.rows {
                csv.row(
                    "freeness",
                    r.instance,
                    r.residual,
                    Some(graph_product::expectations_modular::FREENESS_TOL),
                );
            }
        }
    }
    let n = g.len();
    if n <= 12 {
        let subsets = 1usize << n;
        let pairs = (subsets * subsets).min(trials.max(1));
        for i in 0..pairs {
            // walk the subset pairs with a fixed odd stride so small trial counts still mix
            let p = (i.wrapping_mul(2_654_435_761)) % (subsets * subsets);
            let pick = |mask: usize| (0..n).filter(|b| mask >> b & 1 == 1).collect::<Vec<_>>();
            let (g0, g1) = (pick(p / subsets), pick(p % subsets));
            let report = intersection_check(&space, &g0, &g1, cutoff, 1, seed ^ i as u64)?;
            csv.row(
                "intersection_survivors",
                i,
                report.survivors as f64,
                Some(0.0),
            );
        }
    }
    if a.modular_spectrum || cfg.modular_spectrum {
        for (i, ev) in modular_data(&space).spectrum().into_iter().enumerate() {
            csv.row("modular_eigenvalue", i, ev, None);
        }
    }
    emit(a.out.or(cfg.out), &csv.finish(), stdout)
}

pub fn cmd_rd(
    a: RdArgs,
    cfg: ExperimentConfig,
    exec: Execution,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let preset = Preset::parse(&required(a.preset.or(cfg.preset), "preset")?)?;
    let run = RdRun {
        radius: a.radius.or(cfg.radius),
        kmax: a.k.or(cfg.k),
        trials: a.trials.or(cfg.trials).unwrap_or(DEFAULT_TRIALS),
        seed: a.seed.or(cfg.seed).unwrap_or(0),
        exec,
    };
    let report = run_preset(&preset, run)?;
    emit(a.out.or(cfg.out), &report.to_csv(), stdout)
}

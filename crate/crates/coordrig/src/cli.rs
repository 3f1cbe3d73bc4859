//! Command-line front end.
//!
//! Exit codes: 0 for a rigid verdict or success, 1 for a flexible verdict,
//! 2 for invalid input or usage.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use coordrig_core::framework::{
    coordinated_matrix, equilibrium_stresses_with, infinitesimal_motions_with, trivial_dimension, Configuration,
};
use coordrig_core::generic::{decide_generic_coordinated_rigidity, generic_rank, OracleParams};
use coordrig_core::henneberg::henneberg_k1_sample;
use coordrig_core::pebble::laman_rank;
use coordrig_core::planar::{decide_d2, union_rank_d2};
use coordrig_core::sample::{float_configuration, fp_configuration, random_coloured_graph, rng, trial_seed};
use coordrig_core::{rigid_rank, ColouredGraph, Fp};
use serde::Serialize;
use thiserror::Error;

use crate::format::{parse_document, serialize, GraphDocument};
use crate::report::{verdict_json, MotionsJson, RankJson, StressesJson};
use crate::svg::render;

#[derive(Debug, Parser)]
#[command(name = "coordrig", version, about = "Generic rigidity of coordinated frameworks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide generic rigidity and print a verdict with its certificate.
    Check(CheckArgs),
    /// Infinitesimal motions at a configuration.
    Motions(LinalgArgs),
    /// Equilibrium stresses at a configuration.
    Stresses(LinalgArgs),
    /// Generate graph files.
    Gen(GenArgs),
    /// Render a graph as SVG.
    Draw(DrawArgs),
    /// Generic ranks at random configurations.
    Rank(RankArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Root seed of all random choices.
    #[arg(long, env = "COORDRIG_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Print compact single-line JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Combinatorial,
    Numeric,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[arg(long, default_value_t = OracleParams::DEFAULT_TRIALS)]
    pub trials: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoordsArg {
    Random,
    FromFile,
}

#[derive(Debug, Args)]
pub struct LinalgArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = CoordsArg::Random)]
    pub coords: CoordsArg,
    /// Singular-value cutoff; defaults to max(rows, cols) * eps * sigma_max.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Include the matrix in the output.
    #[arg(long)]
    pub dump_matrix: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenMode {
    HennebergK1,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = GenMode::HennebergK1)]
    pub mode: GenMode,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Edge count in random mode; defaults to 2n - 3 + k.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DrawArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = OracleParams::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long)]
    pub dump_matrix: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: crate::format::FormatError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Linalg(#[from] coordrig_core::framework::LinalgError),
    #[error(transparent)]
    Generic(#[from] coordrig_core::generic::GenericError),
    #[error(transparent)]
    Planar(#[from] coordrig_core::planar::PlanarError),
    #[error(transparent)]
    Henneberg(#[from] coordrig_core::henneberg::HennebergError),
}

/// Parses `args` and runs the command; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check(a) => check(a),
        Command::Motions(a) => motions(a),
        Command::Stresses(a) => stresses(a),
        Command::Gen(a) => gen(a),
        Command::Draw(a) => draw(a),
        Command::Rank(a) => rank(a),
    }
}

fn emit<T: Serialize>(value: &T, compact: bool) {
    let text = if compact { serde_json::to_string(value) } else { serde_json::to_string_pretty(value) };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", text.expect("payloads serialize"));
}

fn load(path: &Path) -> Result<GraphDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_document(&text).map_err(|source| CliError::Format { path: path.into(), source })
}

fn oracle(dim: usize, trials: usize, seed: u64) -> Result<OracleParams, CliError> {
    Ok(OracleParams::new(dim, trials, seed)?)
}

fn check(a: &CheckArgs) -> Result<i32, CliError> {
    let doc = load(&a.file)?;
    let g = &doc.graph;
    if a.method == MethodArg::Combinatorial && a.dim != 2 {
        return Err(CliError::Usage(format!("combinatorial method needs --dim 2, got {}", a.dim)));
    }
    let params = oracle(a.dim, a.trials, a.common.seed)?;
    let verdict = match a.method {
        MethodArg::Numeric => decide_generic_coordinated_rigidity(g, &params)?,
        MethodArg::Combinatorial => decide_d2(g)?,
        MethodArg::Auto if a.dim == 2 => decide_d2(g)?,
        MethodArg::Auto => decide_generic_coordinated_rigidity(g, &params)?,
    };
    emit(&verdict_json(g, &verdict), a.common.json);
    Ok(if verdict.is_rigid() { 0 } else { 1 })
}

fn configuration(doc: &GraphDocument, a: &LinalgArgs) -> Result<Configuration<f64>, CliError> {
    if a.dim == 0 {
        return Err(CliError::Usage("--dim must be at least 1".into()));
    }
    match a.coords {
        CoordsArg::Random => Ok(float_configuration(doc.graph.n(), a.dim, &mut rng(a.common.seed))),
        CoordsArg::FromFile => match &doc.coords {
            None => Err(CliError::Usage("file has no \"coords\"".into())),
            Some(p) if p.d() != a.dim => {
                Err(CliError::Usage(format!("coords have dimension {}, --dim is {}", p.d(), a.dim)))
            }
            Some(p) => Ok(p.clone()),
        },
    }
}

fn points(p: &Configuration<f64>) -> Vec<Vec<f64>> {
    (0..p.n()).map(|i| p.point(i).to_vec()).collect()
}

fn motions(a: &LinalgArgs) -> Result<i32, CliError> {
    let doc = load(&a.file)?;
    let p = configuration(&doc, a)?;
    let space = infinitesimal_motions_with(&doc.graph, &p, a.tol)?;
    let matrix = a.dump_matrix.then(|| coordinated_matrix(&doc.graph, &p).map(|r| r.matrix().to_rows())).transpose()?;
    emit(
        &MotionsJson {
            d: a.dim,
            nullity: space.nullity(),
            trivial_dim: space.trivial_dim,
            nontrivial_dim: space.nontrivial_dim,
            infinitesimally_rigid: space.is_infinitesimally_rigid(),
            basis: space.basis,
            flex: space.flex,
            coords: points(&p),
            matrix,
        },
        a.common.json,
    );
    Ok(0)
}

fn stresses(a: &LinalgArgs) -> Result<i32, CliError> {
    let doc = load(&a.file)?;
    let g = &doc.graph;
    let p = configuration(&doc, a)?;
    let basis = equilibrium_stresses_with(g, &p, a.tol)?;
    let matrix = a
        .dump_matrix
        .then(|| coordrig_core::framework::rigidity_matrix(g, &p).map(|r| r.matrix().to_rows()))
        .transpose()?;
    emit(
        &StressesJson {
            d: a.dim,
            dimension: basis.len(),
            independent: basis.is_empty(),
            edges: g.triples().map(|(u, v, c)| [u, v, c]).collect(),
            basis,
            coords: points(&p),
            matrix,
        },
        a.common.json,
    );
    Ok(0)
}

fn rank(a: &RankArgs) -> Result<i32, CliError> {
    let doc = load(&a.file)?;
    let g = &doc.graph;
    let params = oracle(a.dim, a.trials, a.common.seed)?;
    let seeds = params.trial_seeds();
    let configs: Vec<_> = seeds.iter().map(|&s| fp_configuration(g.n(), a.dim, &mut rng(s))).collect();
    let coordinated = configs
        .iter()
        .map(|p| coordinated_matrix(g, p).map(|r| r.rank()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let matrix = if a.dump_matrix {
        let r = coordinated_matrix(g, &configs[0])?;
        Some(r.matrix().to_rows().iter().map(|row| row.iter().map(|x| x.value()).collect()).collect())
    } else {
        None
    };
    emit(
        &RankJson {
            d: a.dim,
            n: g.n(),
            m: g.m(),
            k: g.k(),
            seed: a.common.seed,
            trial_seeds: seeds,
            generic_rank: generic_rank(g, &params),
            coordinated_rank: coordinated,
            trivial_dim: configs.first().map_or(0, trivial_dimension::<Fp>),
            laman_rank: (a.dim == 2).then(|| laman_rank(g)),
            union_rank: (a.dim == 2).then(|| union_rank_d2(g).union_rank),
            matrix,
        },
        a.common.json,
    );
    Ok(0)
}

#[derive(Serialize)]
struct GenJson {
    mode: &'static str,
    seed: u64,
    files: Vec<String>,
}

fn gen(a: &GenArgs) -> Result<i32, CliError> {
    let (mode, graphs): (&str, Vec<ColouredGraph>) = match a.mode {
        GenMode::HennebergK1 => {
            if a.k != 1 {
                return Err(CliError::Usage(format!("henneberg-k1 needs --k 1, got {}", a.k)));
            }
            let graphs = (0..a.count)
                .map(|i| henneberg_k1_sample(a.n, trial_seed(a.common.seed, i)))
                .collect::<Result<_, _>>()?;
            ("henneberg-k1", graphs)
        }
        GenMode::Random => {
            let m = a.m.unwrap_or((rigid_rank(a.n, 2) + a.k).min(a.n * a.n.saturating_sub(1) / 2));
            let graphs = (0..a.count)
                .map(|i| {
                    random_coloured_graph(a.n, a.k, m, &mut rng(trial_seed(a.common.seed, i)))
                        .ok_or_else(|| CliError::Usage(format!("no simple graph with n = {}, k = {}, m = {m}", a.n, a.k)))
                })
                .collect::<Result<_, _>>()?;
            ("random", graphs)
        }
    };
    fs::create_dir_all(&a.out_dir).map_err(|source| CliError::Io { path: a.out_dir.clone(), source })?;
    let mut files = Vec::with_capacity(graphs.len());
    for (i, g) in graphs.iter().enumerate() {
        let path = a.out_dir.join(format!("{mode}-n{}-k{}-{i:03}.json", g.n(), g.k()));
        fs::write(&path, serialize(g) + "\n").map_err(|source| CliError::Io { path: path.clone(), source })?;
        files.push(path.display().to_string());
    }
    emit(&GenJson { mode, seed: a.common.seed, files }, a.common.json);
    Ok(0)
}

#[derive(Serialize)]
struct DrawJson {
    out: String,
    edges: usize,
    coords: &'static str,
}

fn draw(a: &DrawArgs) -> Result<i32, CliError> {
    let doc = load(&a.file)?;
    let svg = render(&doc.graph, doc.coords.as_ref());
    fs::write(&a.out, svg).map_err(|source| CliError::Io { path: a.out.clone(), source })?;
    emit(
        &DrawJson {
            out: a.out.display().to_string(),
            edges: doc.graph.m(),
            coords: if doc.coords.is_some() { "from-file" } else { "spring" },
        },
        a.json,
    );
    Ok(0)
}

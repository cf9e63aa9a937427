//! Command-line front end: `gen`, `cover` and `verify`.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 for usage and
//! input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::banana::annulus_cover_components;
use crate::cover::{verify_cover, Cover, SweepRow, VerificationReport};
use crate::error::{Error, Result};
use crate::generators::{
    gen_cycle, gen_grid, gen_interval_graph, gen_path, gen_separated_points, gen_torus_grid, gen_tree,
    gen_unit_ball_points, stretch, StretchParams,
};
use crate::geometric::{geometric_cover, unit_ball_graph, Embedding, EmbeddingMode};
use crate::graph::WeightedGraph;
use crate::metric::DistanceOracle;
use crate::pathwidth::{pw_cover, PathDecomposition};
use crate::pipelines::{chordal_scheme, genus_cover_with, k3p_cover_with, planar_cover_with, PipelineParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "asdim", version, about = "Covers of graphs with certified diameter and coverage")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Run a scheme over a sweep of scales and write one cover per scale.
    Cover(CoverArgs),
    /// Re-verify covers against a graph.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Output graph file; auxiliary files go next to it. Stdout when absent.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    /// Write the graph as JSON instead of the line format.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Grid with the given side lengths; also writes a `.emb` embedding.
    Grid { dims: Vec<usize> },
    /// Grid with wrap-around edges.
    Torus { dims: Vec<usize> },
    Path { n: usize },
    Cycle { n: usize },
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Interval graph plus its path decomposition (`.pd`).
    Interval {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// (k, p)-stretch of a base graph: `grid4x4`, `path5`, `cycle6` or a file.
    Stretch {
        #[arg(long)]
        base: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
    /// Points at least 1 apart, adjacent within `--stretch`; writes `.emb`.
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        side: f64,
        #[arg(long, default_value_t = 2.0)]
        stretch: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniform points and their unit-ball graph; writes `.emb`.
    UnitBall {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        side: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Banana,
    K3p,
    Planar,
    Genus,
    Pathwidth,
    Geometric,
    UnitBall,
    Chordal,
}

impl Scheme {
    fn name(self) -> &'static str {
        match self {
            Scheme::Banana => "banana",
            Scheme::K3p => "k3p",
            Scheme::Planar => "planar",
            Scheme::Genus => "genus",
            Scheme::Pathwidth => "pathwidth",
            Scheme::Geometric => "geometric",
            Scheme::UnitBall => "unit-ball",
            Scheme::Chordal => "chordal",
        }
    }

    fn needs_aux(self) -> bool {
        matches!(self, Scheme::Pathwidth | Scheme::Geometric | Scheme::UnitBall)
    }
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long, value_enum)]
    pub scheme: Scheme,
    /// Comma-separated scales.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Split heavy edges instead of rejecting them (k3p, planar, genus).
    #[arg(long)]
    pub subdivide: bool,
    /// Verify every cover and print a CSV sweep.
    #[arg(long)]
    pub verify: bool,
    /// With `--verify`: write nothing and exit 1 if any cover fails.
    #[arg(long, requires = "verify")]
    pub strict: bool,
    /// Directory for the cover files (defaults to the graph's directory).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    pub graph: PathBuf,
    /// Path decomposition (pathwidth) or embedding (geometric, unit-ball).
    pub aux: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    #[arg(required = true)]
    pub covers: Vec<PathBuf>,
    /// Print the sweep CSV instead of JSON reports.
    #[arg(long)]
    pub csv: bool,
}

/// Failures the CLI reports, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn read(path: &Path) -> std::result::Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::File { path: path.into(), source: e.into() })
}

fn write(path: &Path, s: &str) -> std::result::Result<(), CliError> {
    fs::write(path, s).map_err(|e| CliError::File { path: path.into(), source: e.into() })
}

fn load_graph(path: &Path) -> std::result::Result<WeightedGraph, CliError> {
    WeightedGraph::parse(&read(path)?).map_err(|e| CliError::File { path: path.into(), source: e })
}

/// Parses arguments and runs; returns the exit code and prints errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut out = String::new();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    print!("{out}");
    code
}

/// Runs one command, appending stdout text to `out`.
pub fn run(cli: &Cli, out: &mut String) -> std::result::Result<i32, CliError> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, out).map(|_| EXIT_OK),
        Command::Cover(a) => cmd_cover(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

enum Aux {
    Pd(PathDecomposition),
    Emb(Embedding),
}

fn base_graph(name: &str) -> std::result::Result<WeightedGraph, CliError> {
    let num = |s: &str| s.parse::<usize>().map_err(|_| CliError::Usage(format!("bad base graph {name:?}")));
    if let Some(rest) = name.strip_prefix("grid") {
        let dims = rest.split('x').map(num).collect::<std::result::Result<Vec<_>, _>>()?;
        return Ok(gen_grid(&dims)?.0);
    }
    if let Some(rest) = name.strip_prefix("path") {
        return Ok(gen_path(num(rest)?));
    }
    if let Some(rest) = name.strip_prefix("cycle") {
        return Ok(gen_cycle(num(rest)?));
    }
    load_graph(Path::new(name))
}

pub fn cmd_gen(a: &GenArgs, out: &mut String) -> std::result::Result<(), CliError> {
    let (g, aux) = match &a.family {
        Family::Grid { dims } => {
            if dims.is_empty() {
                return usage("grid needs at least one dimension");
            }
            let (g, coords) = gen_grid(dims)?;
            let emb = Embedding::new(EmbeddingMode::Separation, dims.len(), 1.0, coords)?;
            (g, Some(Aux::Emb(emb)))
        }
        Family::Torus { dims } => (gen_torus_grid(dims)?, None),
        Family::Path { n } => (gen_path(*n), None),
        Family::Cycle { n } => (gen_cycle(*n), None),
        Family::Tree { n, seed } => (gen_tree(*seed, *n), None),
        Family::Interval { n, k, seed } => {
            let (g, pd) = gen_interval_graph(*seed, *n, *k)?;
            (g, Some(Aux::Pd(pd)))
        }
        Family::Stretch { base, k, p } => (stretch(&base_graph(base)?, StretchParams { k: *k, p: *p }), None),
        Family::Points { n, d, side, stretch, seed } => {
            let (g, emb) = gen_separated_points(*seed, *n, *d, *side, *stretch)?;
            (g, Some(Aux::Emb(emb)))
        }
        Family::UnitBall { n, d, side, seed } => {
            let pts = gen_unit_ball_points(*seed, *n, *side, *d);
            let g = unit_ball_graph(&pts);
            (g, Some(Aux::Emb(Embedding::new(EmbeddingMode::UnitBall, *d, 1.0, pts)?)))
        }
    };
    let text = if a.json { g.to_json() + "\n" } else { g.to_text() };
    let aux_text = aux.map(|x| match x {
        Aux::Pd(pd) => ("pd", pd.to_text()),
        Aux::Emb(e) => ("emb", e.to_text()),
    });
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            if let Some((ext, s)) = aux_text {
                write(&path.with_extension(ext), &s)?;
            }
        }
        None => {
            out.push_str(&text);
            if let Some((_, s)) = aux_text {
                out.push_str(&s);
            }
        }
    }
    Ok(())
}

fn check_params(a: &CoverArgs) -> std::result::Result<(), CliError> {
    let given = |name: &str, set: bool, allowed: &[Scheme]| {
        if set && !allowed.contains(&a.scheme) {
            usage(format!("--{name} does not apply to scheme {}", a.scheme.name()))
        } else {
            Ok(())
        }
    };
    given("p", a.p.is_some(), &[Scheme::Banana, Scheme::K3p])?;
    given("genus", a.genus.is_some(), &[Scheme::Genus])?;
    given("q", a.q.is_some(), &[Scheme::Banana])?;
    given("m", a.m.is_some(), &[Scheme::Banana])?;
    given("subdivide", a.subdivide, &[Scheme::K3p, Scheme::Planar, Scheme::Genus])?;
    match a.scheme {
        Scheme::Banana if a.p.is_none() || a.q.is_none() => return usage("banana needs --p and --q"),
        Scheme::K3p if a.p.is_none() => return usage("k3p needs --p"),
        Scheme::Genus if a.genus.is_none() => return usage("genus needs --genus"),
        _ => {}
    }
    if a.scheme.needs_aux() != a.aux.is_some() {
        return usage(match a.scheme.needs_aux() {
            true => format!("scheme {} needs an auxiliary file", a.scheme.name()),
            false => format!("scheme {} takes only a graph", a.scheme.name()),
        });
    }
    if let Some(r) = a.r.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
        return usage(format!("scales must be positive, got {r}"));
    }
    Ok(())
}

fn run_scheme(a: &CoverArgs, g: &WeightedGraph, aux: Option<&Aux>, r: f64) -> Result<Cover> {
    let pipeline = |p: usize| PipelineParams { p, r, subdivide: a.subdivide };
    match (a.scheme, aux) {
        (Scheme::Banana, _) => annulus_cover_components(g, r, a.q.unwrap(), a.p.unwrap(), a.m.unwrap_or(2)),
        (Scheme::K3p, _) => k3p_cover_with(g, &pipeline(a.p.unwrap())),
        (Scheme::Planar, _) => planar_cover_with(g, r, a.subdivide),
        (Scheme::Genus, _) => genus_cover_with(g, a.genus.unwrap(), r, a.subdivide),
        (Scheme::Chordal, _) => chordal_scheme(g, r),
        (Scheme::Pathwidth, Some(Aux::Pd(pd))) => pw_cover(g, pd, r),
        (Scheme::Geometric | Scheme::UnitBall, Some(Aux::Emb(e))) => geometric_cover(g, e, r),
        _ => unreachable!("auxiliary file kind is checked on load"),
    }
}

fn cover_path(dir: &Path, graph: &Path, scheme: Scheme, r: f64) -> PathBuf {
    let stem = graph.file_stem().and_then(|s| s.to_str()).unwrap_or("graph");
    dir.join(format!("{stem}.{}.r{r}.cover.json", scheme.name()))
}

pub fn cmd_cover(a: &CoverArgs, out: &mut String) -> std::result::Result<i32, CliError> {
    check_params(a)?;
    let g = load_graph(&a.graph)?;
    let aux = match (&a.aux, a.scheme) {
        (None, _) => None,
        (Some(path), Scheme::Pathwidth) => {
            let pd = PathDecomposition::from_text(g.vertex_count(), read(path)?.as_bytes())
                .map_err(|e| CliError::File { path: path.clone(), source: e })?;
            Some(Aux::Pd(pd))
        }
        (Some(path), scheme) => {
            let e = Embedding::from_text(read(path)?.as_bytes())
                .map_err(|e| CliError::File { path: path.clone(), source: e })?;
            let want = if scheme == Scheme::UnitBall { EmbeddingMode::UnitBall } else { EmbeddingMode::Separation };
            if e.mode != want {
                return usage(format!("scheme {} needs a {} embedding", scheme.name(), want.name()));
            }
            Some(Aux::Emb(e))
        }
    };
    let covers = a
        .r
        .par_iter()
        .map(|&r| run_scheme(a, &g, aux.as_ref(), r))
        .collect::<Result<Vec<_>>>()?;

    let mut failed = false;
    if a.verify {
        let oracle = DistanceOracle::new(&g);
        out.push_str(SweepRow::HEADER);
        out.push('\n');
        for c in &covers {
            let rep = verify_cover(c, &oracle);
            failed |= !rep.pass;
            out.push_str(&SweepRow::new(&g, c, &rep).to_csv());
            out.push('\n');
        }
    }
    if failed && a.strict {
        eprintln!("verification failed; no covers written");
        return Ok(EXIT_VERIFY);
    }
    let dir = match &a.out_dir {
        Some(d) => d.clone(),
        None => a.graph.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    for (c, &r) in covers.iter().zip(&a.r) {
        write(&cover_path(&dir, &a.graph, a.scheme, r), &(c.to_json() + "\n"))?;
    }
    Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
}

#[derive(serde::Serialize)]
struct NamedReport<'a> {
    file: String,
    scheme: &'a str,
    r: f64,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut String) -> std::result::Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    let oracle = DistanceOracle::new(&g);
    let mut covers = Vec::new();
    for path in &a.covers {
        let c = Cover::from_json(&read(path)?).map_err(|e| CliError::File { path: path.clone(), source: e })?;
        if c.vertex_count != g.vertex_count() {
            return Err(CliError::File {
                path: path.clone(),
                source: Error::InvalidInput(format!(
                    "cover is over {} vertices, graph has {}",
                    c.vertex_count,
                    g.vertex_count()
                )),
            });
        }
        covers.push(c);
    }
    let reports: Vec<VerificationReport> = covers.iter().map(|c| verify_cover(c, &oracle)).collect();
    if a.csv {
        out.push_str(SweepRow::HEADER);
        out.push('\n');
        for (c, rep) in covers.iter().zip(&reports) {
            out.push_str(&SweepRow::new(&g, c, rep).to_csv());
            out.push('\n');
        }
    } else {
        let named: Vec<NamedReport> = a
            .covers
            .iter()
            .zip(&covers)
            .zip(&reports)
            .map(|((p, c), rep)| NamedReport {
                file: p.display().to_string(),
                scheme: &c.certificate.scheme_name,
                r: c.certificate.scale_r,
                report: rep,
            })
            .collect();
        out.push_str(&serde_json::to_string_pretty(&named).map_err(Error::from)?);
        out.push('\n');
    }
    Ok(if reports.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_VERIFY })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("asdim").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn gen_to_stdout() {
        let mut s = String::new();
        cmd_gen_cli(&parse(&["gen", "grid", "8", "8"]), &mut s);
        assert!(s.starts_with("64 112\n"));
    }

    fn cmd_gen_cli(cli: &Cli, out: &mut String) {
        assert_eq!(run(cli, out).unwrap(), EXIT_OK);
    }

    #[test]
    fn parameter_mismatch_is_usage() {
        let cli = parse(&["cover", "--scheme", "planar", "--r", "1", "--q", "2", "g.g"]);
        let err = run(&cli, &mut String::new()).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let cli = parse(&["cover", "--scheme", "pathwidth", "--r", "1", "g.g"]);
        assert!(matches!(run(&cli, &mut String::new()), Err(CliError::Usage(_))));
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(main_with_args(["asdim", "cover", "--bogus"]), EXIT_USAGE);
        assert_eq!(main_with_args(["asdim", "gen", "stretch", "--base", "blob9", "--k", "1", "--p", "1"]), EXIT_USAGE);
    }

    #[test]
    fn stretch_base_names() {
        assert_eq!(base_graph("grid4x4").unwrap().vertex_count(), 16);
        assert_eq!(base_graph("cycle6").unwrap().edge_count(), 6);
        assert!(base_graph("gridx").is_err());
    }
}

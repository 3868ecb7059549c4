//! Command-line front end for the `brc` binary.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cayley::{
    self, enumerate_spectrum, enumerate_spectrum_parallel, markov_estimate, multifractal_curves,
    Convention, Functional, SpectrumSummary,
};
use crate::error::{Error, Result};
use crate::group::{self, GroupWord};
use crate::hyperbolic::{arc_length, dist_ball, geodesic_between, BallPoint};
use crate::io;
use crate::sine_gordon;
use crate::teich::{self, Decoration, McgWord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

const DEFAULT_DEPTH: usize = 6;
const DEFAULT_Q_MIN: f64 = -10.0;
const DEFAULT_Q_MAX: f64 = 10.0;
const DEFAULT_Q_STEPS: usize = 201;
const DEFAULT_TOL: f64 = 1e-9;
const DEFAULT_SAMPLES: usize = 100;
const DEFAULT_SEED: u64 = 42;
const DEFAULT_EDGE_SAMPLES: usize = 33;
const DEFAULT_PATH_SAMPLES: usize = 201;
const DEFAULT_MCG_WORD: &str = "t1 t2 t1^-1 t3";
const DEFAULT_HEIGHTS: [f64; 6] = [0.8; 6];

#[derive(Debug, Parser)]
#[command(name = "brc", version, about = "Borromean-rings cusp group experiments")]
pub struct Cli {
    /// JSON file with default values for any flag; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for tree enumeration (1 = serial).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group relations and octahedron orbits.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Exact path spectrum, partition function and multifractal curves.
    Tree(TreeArgs),
    /// Markov-chain estimate of the spectrum.
    Markov(MarkovArgs),
    /// Decorated octahedron: λ-lengths, face hexagons, mapping class group.
    #[command(subcommand)]
    Teich(TeichCmd),
    /// Sine-Gordon kink, phase portrait and action variable.
    #[command(subcommand)]
    Sg(SgCmd),
    /// Geodesic arc between two ball points.
    Geodesic(GeodesicArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    Verify(VerifyArgs),
    Orbit(OrbitArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Words separated by ';', e.g. "h1;g2 g3^-1". The empty word is the identity.
    #[arg(long)]
    pub words: Option<String>,
    /// Points per ideal edge.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub q_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub q_steps: Option<usize>,
    #[arg(long)]
    pub functional: Option<Functional>,
    #[arg(long)]
    pub convention: Option<Convention>,
    #[arg(long)]
    pub bin_width: Option<f64>,
    /// Output prefix; files `<prefix>.spectrum.csv`, `.summary.json`, `.curves.csv`, `.hist.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MarkovArgs {
    #[arg(long)]
    pub depth: Option<usize>,
    /// Largest correlation lag kept in the variance.
    #[arg(long)]
    pub truncation: Option<usize>,
    /// Spectrum cache to compare against; defaults to the `tree` default prefix.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecorationArgs {
    /// Six heights in vertex order +x,+y,+t,-x,-y,-t.
    #[arg(long)]
    pub heights: Option<String>,
    /// JSON file with key "heights".
    #[arg(long)]
    pub decoration: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TeichCmd {
    Lambda(DecorationArgs),
    Hexagons(DecorationArgs),
    Mcg {
        #[command(flatten)]
        deco: DecorationArgs,
        /// Word over t1, t2, t3, e.g. "t1 t2 t1^-1 t3".
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct SgArgs {
    /// Comma-separated values of ε for `action`.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SgCmd {
    Kink(SgArgs),
    Portrait(SgArgs),
    Action(SgArgs),
}

#[derive(Debug, Args)]
pub struct GeodesicArgs {
    /// Start point "x,y,t".
    #[arg(long, allow_hyphen_values = true)]
    pub from: String,
    /// End point "x,y,t".
    #[arg(long, allow_hyphen_values = true)]
    pub to: String,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Defaults read from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub depth: Option<usize>,
    pub q_min: Option<f64>,
    pub q_max: Option<f64>,
    pub q_steps: Option<usize>,
    pub functional: Option<Functional>,
    pub convention: Option<Convention>,
    pub bin_width: Option<f64>,
    pub truncation: Option<usize>,
    pub heights: Option<[f64; 6]>,
    pub word: Option<String>,
    pub words: Option<String>,
    pub epsilon: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::OutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("bad number {t:?} in {s:?}")))
        })
        .collect()
}

fn parse_point(s: &str) -> Result<BallPoint> {
    let v = parse_list(s)?;
    if v.len() != 3 {
        return Err(usage(format!("expected x,y,t, got {s:?}")));
    }
    BallPoint::new(v[0], v[1], v[2]).map_err(|e| usage(format!("{s:?}: {e}")))
}

/// Writes to `out` if given, else to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => io::write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn default_tree_prefix(n: usize, f: Functional, c: Convention) -> PathBuf {
    PathBuf::from(format!("brc_tree_N{n}_{f}_{c}"))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Runs the enumeration honoring the thread count; `Some(1)` is serial.
pub fn compute_spectrum(
    n: usize,
    f: Functional,
    c: Convention,
    threads: Option<usize>,
) -> Result<SpectrumSummary> {
    match threads {
        Some(1) => enumerate_spectrum(n, f, c),
        Some(0) => Err(Error::OutOfRange {
            name: "threads",
            value: 0,
            min: 1,
            max: i64::MAX,
        }),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Numeric(format!("thread pool: {e}")))?
            .install(|| enumerate_spectrum_parallel(n, f, c)),
        None => enumerate_spectrum_parallel(n, f, c),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let threads = cli.threads.or(cfg.threads);
    match cli.command {
        Command::Group(GroupCmd::Verify(a)) => cmd_group_verify(a, &cfg),
        Command::Group(GroupCmd::Orbit(a)) => cmd_group_orbit(a, &cfg),
        Command::Tree(a) => cmd_tree(a, &cfg, threads),
        Command::Markov(a) => cmd_markov(a, &cfg),
        Command::Teich(t) => cmd_teich(t, &cfg),
        Command::Sg(s) => cmd_sg(s, &cfg),
        Command::Geodesic(a) => cmd_geodesic(a, &cfg),
    }
}

fn cmd_group_verify(a: VerifyArgs, cfg: &RunConfig) -> Result<i32> {
    let tol = a.tol.or(cfg.tol).unwrap_or(DEFAULT_TOL);
    let samples = a.samples.or(cfg.samples).unwrap_or(DEFAULT_SAMPLES);
    let seed = a.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
    let wirtinger = group::verify_wirtinger(samples, tol, seed)?;
    let parent = group::verify_parent_relations(samples, tol, seed)?;
    let passed = wirtinger.passed && parent.passed;
    let failing: Vec<&str> = wirtinger
        .failures()
        .into_iter()
        .chain(parent.failures())
        .collect();
    let report = json!({
        "passed": passed,
        "tol": tol,
        "samples": samples,
        "seed": seed,
        "wirtinger": wirtinger,
        "parent_relations": parent,
        "failing": failing,
    });
    emit(a.out.as_deref().or(cfg.out.as_deref()), &io::to_json(&report)?)?;
    if passed {
        Ok(EXIT_OK)
    } else {
        eprintln!("failing relations: {}", failing.join(", "));
        Ok(EXIT_CHECK_FAILED)
    }
}

fn cmd_group_orbit(a: OrbitArgs, cfg: &RunConfig) -> Result<i32> {
    let words_text = a
        .words
        .or_else(|| cfg.words.clone())
        .unwrap_or_else(|| ";h1;h2;h3;h4".to_string());
    let words = words_text
        .split(';')
        .map(str::parse::<GroupWord>)
        .collect::<Result<Vec<_>>>()?;
    let samples = a.samples.or(cfg.samples).unwrap_or(DEFAULT_EDGE_SAMPLES);
    let mesh = group::octahedron_orbit(&words, samples)?;
    emit(a.out.as_deref().or(cfg.out.as_deref()), &mesh.to_text())?;
    Ok(EXIT_OK)
}

fn cmd_tree(a: TreeArgs, cfg: &RunConfig, threads: Option<usize>) -> Result<i32> {
    let n = a.depth.or(cfg.depth).unwrap_or(DEFAULT_DEPTH);
    let f = a.functional.or(cfg.functional).unwrap_or(Functional::L);
    let c = a.convention.or(cfg.convention).unwrap_or(Convention::Outermost);
    let q_min = a.q_min.or(cfg.q_min).unwrap_or(DEFAULT_Q_MIN);
    let q_max = a.q_max.or(cfg.q_max).unwrap_or(DEFAULT_Q_MAX);
    let steps = a.q_steps.or(cfg.q_steps).unwrap_or(DEFAULT_Q_STEPS);
    let bin = a.bin_width.or(cfg.bin_width).unwrap_or(cayley::DEFAULT_BIN_WIDTH);
    let prefix = a
        .out
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| default_tree_prefix(n, f, c));

    let cache_path = with_suffix(&prefix, ".spectrum.csv");
    let (s, cached) = match io::read_spectrum_cache(&cache_path, n, f, c)? {
        Some(s) => (s, true),
        None => {
            let s = compute_spectrum(n, f, c, threads)?;
            io::write_spectrum_cache(&cache_path, &s)?;
            (s, false)
        }
    };
    let curves = multifractal_curves(&s, q_min, q_max, steps)?;
    let hist = cayley::histogram(&s, bin)?;
    let record = io::SummaryRecord::new(&s);
    io::write_atomic(&with_suffix(&prefix, ".summary.json"), &io::to_json(&record)?)?;
    io::write_atomic(&with_suffix(&prefix, ".curves.csv"), &io::curves_csv(&curves))?;
    io::write_atomic(&with_suffix(&prefix, ".hist.csv"), &io::histogram_csv(&hist))?;

    println!(
        "N={} {} {} count={}{}",
        n,
        f,
        c,
        s.count(),
        if cached { " (cached)" } else { "" }
    );
    println!(
        "l_min={:.6} l_max={:.6} mean={:.6} sigma={:.6}",
        s.l_min, s.l_max, s.mean, s.sigma
    );
    println!(
        "alpha_min={:.6} alpha_max={:.6}",
        record.alpha_min, record.alpha_max
    );
    Ok(EXIT_OK)
}

fn cmd_markov(a: MarkovArgs, cfg: &RunConfig) -> Result<i32> {
    let n = a.depth.or(cfg.depth).unwrap_or(DEFAULT_DEPTH);
    let m = markov_estimate(n, a.truncation.or(cfg.truncation))?;
    let cache = a.cache.unwrap_or_else(|| {
        with_suffix(
            &default_tree_prefix(n, Functional::L, Convention::Outermost),
            ".spectrum.csv",
        )
    });
    let exact = io::read_spectrum_cache(&cache, n, Functional::L, Convention::Outermost)?;
    let comparison = exact.as_ref().map(|s| {
        json!({
            "l_min": s.l_min,
            "l_max": s.l_max,
            "mean": s.mean,
            "sigma": s.sigma,
            "diff_l_min": m.l_min_star - s.l_min,
            "diff_l_max": m.l_max_star - s.l_max,
            "diff_mean": m.mean_star - s.mean,
            "diff_sigma": m.sigma_star - s.sigma,
        })
    });
    let weight_sum = m.weights[0] + 2 * m.weights[1..].iter().sum::<u64>();
    let report = json!({
        "n": n,
        "l_min_star": m.l_min_star,
        "l_max_star": m.l_max_star,
        "mean_star": m.mean_star,
        "sigma_star": m.sigma_star,
        "xi_bar": m.xi_bar,
        "xi": m.xi,
        "xi2_t": m.xi2_t,
        "weights": m.weights,
        "weight_sum": weight_sum,
        "weight_identity": m.weight_identity,
        "truncation": m.truncation,
        "exact": comparison,
    });
    emit(a.out.as_deref().or(cfg.out.as_deref()), &io::to_json(&report)?)?;
    Ok(EXIT_OK)
}

fn load_decoration(d: &DecorationArgs, cfg: &RunConfig) -> Result<Decoration> {
    if let Some(h) = &d.heights {
        let v = parse_list(h)?;
        let arr: [f64; 6] = v
            .try_into()
            .map_err(|v: Vec<f64>| usage(format!("expected 6 heights, got {}", v.len())))?;
        return Decoration::new(arr);
    }
    if let Some(p) = &d.decoration {
        let text = fs::read_to_string(p)?;
        return serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display())));
    }
    Decoration::new(cfg.heights.unwrap_or(DEFAULT_HEIGHTS))
}

fn cmd_teich(t: TeichCmd, cfg: &RunConfig) -> Result<i32> {
    match t {
        TeichCmd::Lambda(d) => {
            let deco = load_decoration(&d, cfg)?;
            let ll = deco.lambda_lengths();
            let edges: Vec<_> = ll
                .edges
                .iter()
                .zip(&ll.lambda)
                .map(|((a, b), l)| json!({"a": a, "b": b, "lambda": l}))
                .collect();
            let report = json!({
                "heights": deco.heights(),
                "u_bar": deco.u_bar(),
                "w": ll.w,
                "edges": edges,
            });
            emit(d.out.as_deref().or(cfg.out.as_deref()), &io::to_json(&report)?)?;
        }
        TeichCmd::Hexagons(d) => {
            let deco = load_decoration(&d, cfg)?;
            let hexes = teich::face_hexagons(&deco)?;
            emit(d.out.as_deref().or(cfg.out.as_deref()), &io::to_json(&hexes)?)?;
        }
        TeichCmd::Mcg { deco, word } => {
            let dec = load_decoration(&deco, cfg)?;
            let word_text = word
                .or_else(|| cfg.word.clone())
                .unwrap_or_else(|| DEFAULT_MCG_WORD.to_string());
            let w: McgWord = word_text.parse()?;
            let u = dec.u_bar();
            let image = teich::mcg_apply(&w, &u);
            let structure = teich::mcg_structure_report();
            let report = json!({
                "word": w.to_string(),
                "u_bar": u,
                "image": image,
                "orbit_size": teich::mcg_orbit(&u).len(),
                "structure_passed": structure.iter().all(|c| c.passed),
                "structure": structure,
            });
            emit(deco.out.as_deref().or(cfg.out.as_deref()), &io::to_json(&report)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_sg(s: SgCmd, cfg: &RunConfig) -> Result<i32> {
    match s {
        SgCmd::Kink(a) => {
            let energy = sine_gordon::kink_energy()?;
            let n = a.samples.or(cfg.samples).unwrap_or(DEFAULT_PATH_SAMPLES).max(2);
            let mut csv = String::from("u_bar,phi,residual\n");
            for k in 0..n {
                let u = 5.0 * k as f64 / (n - 1) as f64;
                csv.push_str(&format!(
                    "{},{},{}\n",
                    u,
                    sine_gordon::phi_of_u(u),
                    sine_gordon::eom_residual(u)
                ));
            }
            eprintln!("kink energy = {energy:.6}");
            emit(a.out.as_deref().or(cfg.out.as_deref()), &csv)?;
        }
        SgCmd::Portrait(a) => {
            let n = a.samples.or(cfg.samples).unwrap_or(DEFAULT_PATH_SAMPLES);
            let rows = sine_gordon::phase_portrait(&sine_gordon::DEFAULT_PORTRAIT_LEVELS, n)?;
            emit(a.out.as_deref().or(cfg.out.as_deref()), &io::portrait_csv(&rows))?;
        }
        SgCmd::Action(a) => {
            let eps = match &a.epsilon {
                Some(e) => parse_list(e)?,
                None => cfg
                    .epsilon
                    .clone()
                    .unwrap_or_else(|| (0..=10).map(|k| k as f64 / 10.0).collect()),
            };
            let rows = eps
                .iter()
                .map(|&e| sine_gordon::action_variable(e).map(|j| (e, j)))
                .collect::<Result<Vec<_>>>()?;
            emit(a.out.as_deref().or(cfg.out.as_deref()), &io::action_csv(&rows))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_geodesic(a: GeodesicArgs, cfg: &RunConfig) -> Result<i32> {
    let p = parse_point(&a.from)?;
    let q = parse_point(&a.to)?;
    let arc = geodesic_between(p, q)?;
    let n = a.samples.or(cfg.samples).unwrap_or(DEFAULT_PATH_SAMPLES);
    let report = json!({
        "from": p.to_array(),
        "to": q.to_array(),
        "distance": dist_ball(p, q),
        "arc_length": arc_length(&arc)?,
        "is_diameter": arc.is_diameter,
        "center": arc.center.to_array(),
        "radius": arc.radius,
        "theta_end": arc.theta_end,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(out) = a.out.as_deref().or(cfg.out.as_deref()) {
        let mesh = group::PolylineMesh {
            polylines: vec![arc.sample(n)],
        };
        io::write_atomic(out, &mesh.to_text())?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_samples_is_usage_error() {
        assert_eq!(run(["brc", "group", "verify", "--samples", "0"]), EXIT_USAGE);
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(run(["brc", "tree", "--bogus"]), EXIT_USAGE);
    }

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"depht": 3}"#).is_err());
        let c: RunConfig = serde_json::from_str(r#"{"depth": 3, "functional": "L0"}"#).unwrap();
        assert_eq!(c.depth, Some(3));
        assert_eq!(c.functional, Some(Functional::L0));
    }
}

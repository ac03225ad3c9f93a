//! The `splitforge` command line.
//!
//! Exit codes: 0 success, 1 other failure, 2 invalid parameters,
//! 3 incomplete or non-independent partition, 4 forbidden pattern found
//! (takes precedence over 3), 5 search budget exhausted.

use crate::bounds::{
    admissible_pair_for, berge_path_k_lb, k2d_upper_coeff, min_k_lower, small_d_table, tree_bound, BoundsError,
    TuranEnvelope,
};
use crate::constructions::{construct, ConstructionError, ConstructionParams, NormQuotientParams, PatchStrategy};
use crate::forbidden::{detect_with_budget, Detection, ForbiddenError, ForbiddenPattern, DEFAULT_NODE_BUDGET};
use crate::oracle::{exact_f, OracleError, OracleOutcome, OracleQuery};
use crate::spectral::{
    greedy_split, mixing_check, spectrum_with_limit, GreedyOptions, MixingMode, SpectralError, DENSE_LIMIT,
};
use crate::structures::{
    read_hypergraph, read_partition, verify_rk, write_hypergraph, write_partition, HypergraphFile, LabeledHypergraph,
    StructureError,
};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARAMS: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;
pub const EXIT_FORBIDDEN: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.3)";
pub const THREADS_ENV: &str = "SPLITFORGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "splitforge", version, about = "Build and certify H-free (r,k)-graphs and hypergraphs")]
pub struct Cli {
    /// Worker threads (falls back to SPLITFORGE_THREADS); results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and write its graph and partition.
    Construct(ConstructArgs),
    /// Certify a partition and check forbidden patterns.
    Verify(VerifyArgs),
    /// Adjacency spectrum of a regular graph.
    Spectrum(SpectrumArgs),
    /// Expander mixing check for vertex sets.
    Mixing(MixingArgs),
    /// Bound calculators.
    Bound(BoundArgs),
    /// Exact f_m(r, H) for tiny instances.
    Oracle(OracleArgs),
    /// Greedy split of a pseudorandom H-free graph.
    PartitionGreedy(GreedyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Graph output file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Partition output file.
    #[arg(long, global = true)]
    pub partition: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub family: Family,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Wenger graph W_M(q) with its merged partition (M in {2, 4}).
    Wenger {
        #[arg(long = "M")]
        m: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Patched quotient of the projective norm graph.
    NormQuotient {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value = "matching")]
        patch: PatchStrategy,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Theta graph over F_q, q an even power of an odd prime.
    Theta {
        #[arg(long)]
        q: u64,
    },
    /// 3-uniform hypergraph on F_q^2 minus a parabola.
    Berge3 {
        #[arg(long)]
        q: u64,
    },
    /// Split of a catalog design: fano, PG(2,q), AG(2,q), STS(9), all-m-subsets(r,m).
    Design {
        #[arg(long)]
        id: String,
    },
    /// Rainbow hypergraph with a fixed color profile.
    PropertyB {
        #[arg(long)]
        m: usize,
        /// Composition of m, e.g. 2,1.
        #[arg(long, value_delimiter = ',')]
        c: Vec<usize>,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub partition: PathBuf,
    /// Forbidden pattern, e.g. C_6, K_{2,2}, theta_{3,4}, bergeC_3 (repeatable).
    #[arg(long, value_parser = parse_pattern)]
    pub forbid: Vec<ForbiddenPattern>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Also write the report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = DENSE_LIMIT)]
    pub dense_limit: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    General,
    Bipartite,
}

#[derive(Debug, Args)]
pub struct MixingArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long = "U", value_delimiter = ',')]
    pub u: Vec<u32>,
    #[arg(long = "W", value_delimiter = ',')]
    pub w: Vec<u32>,
    #[arg(long, value_enum, default_value = "general")]
    pub mode: ModeArg,
    /// Check this many random (U, W) pairs instead.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("quantity").required(true).multiple(false)))]
pub struct BoundArgs {
    /// Least k with C(r,m) <= C (rk)^e.
    #[arg(long, group = "quantity")]
    pub lower: bool,
    /// C(r-1,m-1)/C(t-1,m-1).
    #[arg(long, group = "quantity")]
    pub berge_path: bool,
    /// Admissible pair (D, D+1) for d >= 12.
    #[arg(long, group = "quantity")]
    pub admissible: bool,
    /// Coefficient of r^{1/3} for K_{2,d+1}, d >= 12.
    #[arg(long, group = "quantity")]
    pub k2d: bool,
    /// Reference constants c_d for small d.
    #[arg(long, group = "quantity")]
    pub table: bool,
    /// (r-1)/(t-1).
    #[arg(long, group = "quantity")]
    pub tree: bool,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub d: Option<u64>,
    /// Envelope constant C (a fraction like 1/2 is accepted).
    #[arg(long = "C", value_parser = parse_number)]
    pub c: Option<f64>,
    /// Envelope exponent e (a fraction like 3/2 is accepted).
    #[arg(long, value_parser = parse_number)]
    pub e: Option<f64>,
    /// Largest prime listed for --admissible.
    #[arg(long, default_value_t = 1000)]
    pub limit: u64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    #[arg(long, value_parser = parse_pattern, required = true)]
    pub forbid: Vec<ForbiddenPattern>,
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GreedyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Number of parts.
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_parser = parse_pattern)]
    pub forbid: ForbiddenPattern,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub seed_size: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub target_s: Option<usize>,
    /// Per-iteration trace as JSON lines.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_pattern(s: &str) -> Result<ForbiddenPattern, String> {
    s.parse().map_err(|e: ForbiddenError| e.to_string())
}

fn parse_number(s: &str) -> Result<f64, String> {
    let bad = || format!("{s:?} is not a number or fraction");
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0.0 {
                return Err(bad());
            }
            Ok(a / b)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

/// A failed run: exit code and one-line reason.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn params(message: impl Into<String>) -> Self {
        Failure { code: EXIT_PARAMS, message: message.into() }
    }
    fn other(message: impl Into<String>) -> Self {
        Failure { code: EXIT_OTHER, message: message.into() }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Structure(s) => s.into(),
            other => Failure::params(other.to_string()),
        }
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::Io(_) | StructureError::Json(_) => Failure::other(e.to_string()),
            other => Failure::params(other.to_string()),
        }
    }
}

impl From<ForbiddenError> for Failure {
    fn from(e: ForbiddenError) -> Self {
        Failure::params(e.to_string())
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::Structure(s) => s.into(),
            SpectralError::NoConvergence { .. } => Failure::other(e.to_string()),
            other => Failure::params(other.to_string()),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        Failure::params(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Structure(s) => s.into(),
            other => Failure::params(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::other(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::other(e.to_string())
    }
}

/// Embedded in every output file under "provenance".
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub generator: &'static str,
    pub tool_version: &'static str,
    /// Payload digests of input files.
    pub inputs: BTreeMap<String, String>,
}

impl RunManifest {
    fn new(command: &str, params: Value, seed: Option<u64>) -> Self {
        RunManifest {
            command: command.into(),
            params,
            seed,
            generator: GENERATOR,
            tool_version: env!("CARGO_PKG_VERSION"),
            inputs: BTreeMap::new(),
        }
    }

    fn value(&self) -> Result<Value, Failure> {
        Ok(serde_json::to_value(self)?)
    }
}

fn print_json(v: &impl Serialize) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string_pretty(v)?) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Writes whichever outputs were requested; returns their digests.
fn write_outputs(
    output: &OutputArgs,
    g: &LabeledHypergraph,
    p: &crate::structures::SplitPartition,
    manifest: &RunManifest,
) -> Result<Value, Failure> {
    let prov = manifest.value()?;
    let graph_digest = match &output.out {
        Some(path) => write_hypergraph(path, g, Some(prov.clone()))?,
        None => HypergraphFile::from_graph(g).digest()?,
    };
    let partition_digest = match &output.partition {
        Some(path) => write_partition(path, p, Some(prov))?,
        None => crate::structures::PartitionFile::from_partition(p).digest()?,
    };
    Ok(json!({ "graph_digest": graph_digest, "partition_digest": partition_digest }))
}

fn input_graph(path: &Path, manifest: &mut RunManifest) -> Result<LabeledHypergraph, Failure> {
    let (g, _) = read_hypergraph(path)?;
    manifest.inputs.insert("graph".into(), HypergraphFile::from_graph(&g).digest()?);
    Ok(g)
}

fn run_construct(args: ConstructArgs) -> Result<i32, Failure> {
    let start = Instant::now();
    let (params, seed) = match args.family {
        Family::Wenger { m, q, seed } => (ConstructionParams::Wenger { m, q, seed }, seed),
        Family::NormQuotient { q, t, d, h, a, patch, seed } => {
            (ConstructionParams::NormQuotient(NormQuotientParams { q, t, d, h, a, patch, seed }), seed)
        }
        Family::Theta { q } => (ConstructionParams::Theta { q }, None),
        Family::Berge3 { q } => (ConstructionParams::Berge3 { q }, None),
        Family::Design { id } => (ConstructionParams::DesignSplit { id }, None),
        Family::PropertyB { m, c, r } => (ConstructionParams::PropertyB { m, c, r }, None),
    };
    let (con, stats) = construct(&params)?;
    let manifest = RunManifest::new("construct", serde_json::to_value(&params)?, seed);
    let digests = write_outputs(&args.output, &con.graph, &con.partition, &manifest)?;
    print_json(&json!({
        "params": params,
        "vertices": con.graph.num_vertices(),
        "edges": con.graph.num_edges(),
        "m": con.graph.m(),
        "r": con.partition.r(),
        "k": con.partition.k,
        "intra_part_edges_removed": con.intra_part_edges_removed,
        "notes": con.notes,
        "patch_stats": stats,
        "digests": digests,
        "wall_time_ms": start.elapsed().as_millis() as u64,
    }))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PatternResult {
    pattern: String,
    #[serde(flatten)]
    detection: Detection,
}

fn run_verify(args: VerifyArgs) -> Result<i32, Failure> {
    let (g, _) = read_hypergraph(&args.graph)?;
    let p = read_partition(&args.partition)?;
    let mut report = verify_rk(&g, &p)?;
    let mut results = Vec::new();
    let (mut found, mut budget) = (false, false);
    for pattern in &args.forbid {
        let detection = detect_with_budget(&g, pattern, args.budget)?;
        match &detection {
            Detection::Found { witness } => {
                found = true;
                if report.forbidden_witness.is_none() {
                    report.forbidden_witness = Some(witness.clone());
                }
            }
            Detection::BudgetExceeded { .. } => budget = true,
            Detection::Free => {}
        }
        results.push(PatternResult { pattern: pattern.to_string(), detection });
    }
    let code = if found {
        EXIT_FORBIDDEN
    } else if !(report.completeness_ok && report.independence_ok) {
        EXIT_INCOMPLETE
    } else if budget {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    let out = json!({ "report": report, "patterns": results, "exit_code": code });
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&out)? + "\n")?;
    }
    print_json(&out)?;
    Ok(code)
}

fn run_spectrum(args: SpectrumArgs) -> Result<i32, Failure> {
    let (g, _) = read_hypergraph(&args.graph)?;
    print_json(&spectrum_with_limit(&g, args.dense_limit)?)?;
    Ok(EXIT_OK)
}

fn run_mixing(args: MixingArgs) -> Result<i32, Failure> {
    let (g, _) = read_hypergraph(&args.graph)?;
    let summary = spectrum_with_limit(&g, DENSE_LIMIT)?;
    let mode = match args.mode {
        ModeArg::General => MixingMode::General,
        ModeArg::Bipartite => MixingMode::Bipartite,
    };
    let Some(trials) = args.random else {
        let res = mixing_check(&g, &summary, &args.u, &args.w, mode)?;
        let ok = res.ok;
        print_json(&json!({ "rho": summary.rho, "result": res }))?;
        return Ok(if ok { EXIT_OK } else { EXIT_OTHER });
    };
    let sg = g.to_graph()?;
    let (xs, ys): (Vec<u32>, Vec<u32>) = match mode {
        MixingMode::General => ((0..g.num_vertices() as u32).collect(), (0..g.num_vertices() as u32).collect()),
        MixingMode::Bipartite => {
            let colors = sg.bipartition().ok_or_else(|| Failure::params("graph is not bipartite"))?;
            (0..g.num_vertices() as u32).partition(|&v| colors[v as usize] == 0)
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let u = random_subset(&xs, &mut rng);
        let w = random_subset(&ys, &mut rng);
        let res = mixing_check(&g, &summary, &u, &w, mode)?;
        failures += usize::from(!res.ok);
        worst = worst.max(res.lhs - res.bound);
    }
    print_json(&json!({ "rho": summary.rho, "trials": trials, "failures": failures, "max_excess": worst }))?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_OTHER })
}

/// Nonempty subset of uniformly random size.
pub fn random_subset(pool: &[u32], rng: &mut ChaCha8Rng) -> Vec<u32> {
    use rand::Rng;
    if pool.is_empty() {
        return Vec::new();
    }
    let size = rng.gen_range(1..=pool.len());
    pool.choose_multiple(rng, size).copied().collect()
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::params(format!("--{flag} is required")))
}

fn run_bound(a: BoundArgs) -> Result<i32, Failure> {
    let out = if a.lower {
        let (r, m) = (need(a.r, "r")?, need(a.m, "m")?);
        let env = TuranEnvelope::new(need(a.c, "C")?, need(a.e, "e")?, m)?;
        let b = min_k_lower(r, &env)?;
        json!({
            "quantity": "min_k_lower",
            "value": b.k,
            "relaxed": b.k_relaxed,
            "formula_ref": "least k with C(r,m) <= C (rk)^e; relaxed: (r-m)^m/m! <= C (rk)^e",
        })
    } else if a.berge_path {
        let v = berge_path_k_lb(need(a.r, "r")?, need(a.m, "m")?, need(a.t, "t")?)?;
        json!({
            "quantity": "berge_path_k_lb",
            "value": v.to_string(),
            "approx": *v.numer() as f64 / *v.denom() as f64,
            "formula_ref": "C(r-1,m-1)/C(t-1,m-1)",
        })
    } else if a.admissible {
        let pair = admissible_pair_for(need(a.d, "d")?, a.limit)?;
        json!({
            "quantity": "admissible_pair",
            "value": pair,
            "formula_ref": "D(D+1) < d <= (D+1)(D+2); x+1 = 0 mod D, x-1 = 0 mod D+1",
        })
    } else if a.k2d {
        json!({
            "quantity": "k2d_upper_coeff",
            "value": k2d_upper_coeff(need(a.d, "d")?)?,
            "formula_ref": "2 d^{-1/3} (1 - 1.5 d^{-1/2})^{-5/3}",
        })
    } else if a.table {
        let table: BTreeMap<String, f64> = small_d_table().into_iter().map(|(d, c)| (format!("c{d}"), c)).collect();
        json!({ "quantity": "small_d_table", "value": table, "formula_ref": "reference constants c_d" })
    } else {
        let v = tree_bound(need(a.r, "r")? as u64, need(a.t, "t")? as u64)?;
        json!({ "quantity": "tree_bound", "value": v.to_string(), "formula_ref": "(r-1)/(t-1)" })
    };
    print_json(&out)?;
    Ok(EXIT_OK)
}

fn run_oracle(a: OracleArgs) -> Result<i32, Failure> {
    let query = OracleQuery { r: a.r, m: a.m, k_max: a.k_max, patterns: a.forbid.clone(), budget: a.budget };
    let outcome = exact_f(&query)?;
    let patterns: Vec<String> = a.forbid.iter().map(ToString::to_string).collect();
    let params = json!({ "r": a.r, "m": a.m, "k_max": a.k_max, "forbid": patterns, "budget": a.budget });
    match outcome {
        OracleOutcome::Exact { value, certificate, nodes } => {
            let manifest = RunManifest::new("oracle", params, None);
            let digests = write_outputs(&a.output, &certificate.graph, &certificate.partition, &manifest)?;
            print_json(&json!({ "outcome": "exact", "value": value, "nodes": nodes, "digests": digests }))?;
            Ok(EXIT_OK)
        }
        OracleOutcome::AboveMax { k_max, nodes } => {
            print_json(&json!({ "outcome": "above_max", "k_max": k_max, "nodes": nodes }))?;
            Ok(EXIT_OK)
        }
        OracleOutcome::Unknown { k, reason } => {
            print_json(&json!({ "outcome": "unknown", "k": k, "reason": reason }))?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn run_greedy(a: GreedyArgs) -> Result<i32, Failure> {
    let params = json!({
        "m": a.m,
        "forbid": a.forbid.to_string(),
        "seed_size": a.seed_size,
        "max_iters": a.max_iters,
        "target_s": a.target_s,
    });
    let mut manifest = RunManifest::new("partition-greedy", params, a.seed);
    let g = input_graph(&a.graph, &mut manifest)?;
    let opts = GreedyOptions {
        parts: a.m,
        seed_size: a.seed_size,
        max_iters: a.max_iters,
        target_s: a.target_s,
        seed: a.seed,
        rho: None,
    };
    let out = greedy_split(&g, &a.forbid, &opts)?;
    if let Some(path) = &a.trace {
        let mut lines = String::new();
        for it in &out.trace.iterations {
            lines += &serde_json::to_string(it)?;
            lines.push('\n');
        }
        fs::write(path, lines)?;
    }
    let digests = write_outputs(&a.output, &out.graph, &out.partition, &manifest)?;
    let detection = detect_with_budget(&out.graph, &a.forbid, a.budget)?;
    let code = match detection {
        Detection::Found { .. } => EXIT_FORBIDDEN,
        Detection::BudgetExceeded { .. } => EXIT_BUDGET,
        Detection::Free => EXIT_OK,
    };
    let mut summary = serde_json::to_value(&out.trace)?;
    if let Value::Object(map) = &mut summary {
        map.remove("iterations");
        map.insert("iteration_count".into(), json!(out.trace.iterations.len()));
    }
    print_json(&json!({
        "r": out.partition.r(),
        "k": out.partition.k,
        "trace": summary,
        "freeness": detection,
        "digests": digests,
    }))?;
    Ok(code)
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    let threads = match threads {
        Some(t) => Some(t),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => {
                Some(v.trim().parse().map_err(|_| Failure::params(format!("{THREADS_ENV}={v:?} is not a count")))?)
            }
            Err(_) => None,
        },
    };
    if let Some(t) = threads {
        // A pool can only be installed once per process; later calls keep it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(())
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> Result<i32, Failure> {
    configure_threads(cli.threads)?;
    match cli.command {
        Command::Construct(a) => run_construct(a),
        Command::Verify(a) => run_verify(a),
        Command::Spectrum(a) => run_spectrum(a),
        Command::Mixing(a) => run_mixing(a),
        Command::Bound(a) => run_bound(a),
        Command::Oracle(a) => run_oracle(a),
        Command::PartitionGreedy(a) => run_greedy(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_line_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_fractions_and_patterns() {
        assert_eq!(parse_number("3/2").unwrap(), 1.5);
        assert_eq!(parse_number("0.58").unwrap(), 0.58);
        assert!(parse_number("1/0").is_err());
        assert_eq!(parse_pattern("K_{2,2}").unwrap(), ForbiddenPattern::complete_bipartite(2, 2).unwrap());
        assert!(parse_pattern("Q_5").is_err());
    }

    #[test]
    fn construct_flags_parse() {
        let cli = Cli::try_parse_from(["splitforge", "construct", "wenger", "--M", "2", "--q", "3"]).unwrap();
        assert!(matches!(
            cli.command,
            Command::Construct(ConstructArgs { family: Family::Wenger { m: 2, q: 3, .. }, .. })
        ));
        let cli = Cli::try_parse_from(["splitforge", "construct", "property-b", "--m", "3", "--c", "2,1", "--r", "4"]);
        assert!(cli.is_ok());
        assert!(Cli::try_parse_from(["splitforge", "bound", "--lower", "--table"]).is_err());
    }
}

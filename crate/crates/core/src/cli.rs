//! Command-line front end.
//!
//! Every subcommand prints one JSON report (or CSV with `--format csv`).
//! Exit codes: 0 on success, 1 when a finite search legitimately finds
//! nothing or a verification fails, 2 on invalid input.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::barrier::{check_axioms, BarrierDescriptor, DEFAULT_FUEL, DEFAULT_PROBE};
use crate::block::{block_compare, enumerate_blocks, from_concat, Block, BlockFamily};
use crate::error::Error;
use crate::model::{
    consistency_check, equivalence_constants, spreading_check, BarrierSequence, ModelConfig, ModelEvaluator,
};
use crate::norm::{basis_constant, block_vector, degenerate_limit_demo, dk_distance, norm_eval, norm_eval_flagged, NormSpec, Vector};
use crate::ordinal::{ordinal_compare, Ordinal};
use crate::oscillation::{
    asymptotic_stability_check, find_stable_subsequence, oscillation_gap, psi_eval, ToleranceSchedule,
    DEFAULT_STAGES,
};
use crate::ramsey::{diagonal_stabilize, find_monochromatic, metric_stabilize, ColoringSpec, Search, Strategy};
use crate::ratio::{self, Rational};
use crate::section6::{verify_section6, Section6Config};
use crate::sets::{compare_sets, FiniteSet, SetGenerator};

pub const SCHEMA_VERSION: u32 = 1;

/// Reports are also written to this directory when set and `--out` is not.
pub const OUT_DIR_ENV: &str = "BARRIER_MODELS_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "barrier-models", version, about = "Barriers, block families, Ramsey searches and block asymptotic models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to this file as well as stdout. Without it, a
    /// `BARRIER_MODELS_OUT_DIR` environment variable names a directory that
    /// receives `<command>-<subcommand>.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership, fronts, enumeration and rank of barriers
    #[command(subcommand)]
    Barrier(BarrierCmd),
    /// Blocks of a barrier family and the concatenation bijection
    #[command(subcommand)]
    Blocks(BlocksCmd),
    /// Monochromatic and metric stabilization searches
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Exact norms, block vectors, d_k and basis constants
    #[command(subcommand)]
    Norm(NormCmd),
    /// Block oscillation gaps and stable subsequences
    #[command(subcommand)]
    Oscillation(OscillationCmd),
    /// Block asymptotic models computed from far-out blocks
    #[command(subcommand)]
    Model(ModelCmd),
    /// Check the worked example's closed forms against direct computation
    #[command(name = "verify-section6")]
    VerifySection6(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum BarrierCmd {
    /// Test membership of a finite set
    Contains {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        set: String,
    },
    /// Front of an infinite set (the unique member it starts with)
    Front {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        generator: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// List members inside {1..n}
    Enumerate {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        n: u32,
    },
    /// Check the barrier axioms on a truncation
    CheckAxioms {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ordinal rank, structural or from enumeration
    Rank {
        #[arg(long)]
        descriptor: String,
        #[arg(long, default_value_t = DEFAULT_PROBE)]
        probe: u32,
    },
    /// Validate a descriptor and print its canonical form
    Build {
        #[arg(long)]
        descriptor: String,
    },
    /// Compare two sets in lex order and by initial segment
    CompareSets {
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
    /// Compare two ordinals
    CompareOrdinals {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BlocksCmd {
    /// List blocks inside {1..n}
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        universe: Option<String>,
    },
    /// Concatenate a block into one set
    Concat {
        #[arg(long)]
        block: String,
    },
    /// Split a set into a block of the family
    Split {
        #[arg(long)]
        family: String,
        #[arg(long)]
        set: String,
    },
    /// Compare blocks in the directed order
    Compare {
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
    },
}

/// A block family, or a single barrier standing for a one-part family.
#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, conflicts_with = "descriptor", required_unless_present = "descriptor")]
    family: Option<String>,
    #[arg(long)]
    descriptor: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum RamseyCmd {
    /// Search for a monochromatic subset under a coloring
    Mono {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        universe: String,
        #[arg(long)]
        target: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
    },
    /// Values are `Ψ_k(S)(coeffs)` under `--spec`.
    /// Search for a subset where block values lie within epsilon
    Metric {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        universe: String,
        #[arg(long)]
        target: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
    },
    /// Diagonal stabilization along a tolerance schedule
    Diagonal {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long)]
        universe: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Greedy,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Greedy => Strategy::Greedy,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum NormCmd {
    /// Evaluate the norm of a finitely supported vector
    Eval {
        #[arg(long)]
        spec: String,
        /// Object `{"index": "p/q"}` or array of coefficients from index 1.
        #[arg(long)]
        vector: String,
    },
    /// Normalized indicator of a set
    BlockVector {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        set: String,
    },
    /// Grid lower bound of `d_k` between the norms of two specs on `ℝ^k`.
    /// Lower bound for d_k between two norms
    Dk {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        other: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        grid_q: u32,
    },
    /// Basis constant over a finite horizon
    BasisConstant {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = 2)]
        grid_q: u32,
    },
    /// A limit of norms that is only a seminorm
    DegenerateDemo {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 8)]
        grid_q: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum OscillationCmd {
    /// Evaluate Psi(S)(a) for one block
    Psi {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        block: String,
        #[arg(long)]
        coeffs: String,
    },
    /// Oscillation gap over a universe
    Gap {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        universe: String,
        #[arg(long, default_value_t = 8)]
        grid_q: u32,
    },
    /// Least stable subset of a given size
    Stable {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        universe: String,
        #[arg(long)]
        target: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 8)]
        grid_q: u32,
    },
    /// Tail criterion along a tolerance schedule
    Asymptotic {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long)]
        universe: String,
        #[arg(long, default_value_t = 8)]
        grid_q: u32,
        #[arg(long, default_value_t = DEFAULT_STAGES)]
        stages: usize,
    },
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    spec: String,
    #[arg(long)]
    sequence: String,
    #[arg(long)]
    tail_offset: Option<u32>,
    #[arg(long, default_value_t = 5)]
    probes: usize,
    #[arg(long, default_value = "0")]
    tolerance: String,
}

#[derive(Debug, Subcommand)]
pub enum ModelCmd {
    /// Model norm of a coefficient tuple
    Eval {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        coeffs: String,
    },
    /// Prefix consistency on a grid
    Consistency {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        grid_q: u32,
    },
    /// Test spreading on placements
    Spreading {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        k: usize,
        /// JSON array of `k`-sets.
        #[arg(long)]
        placements: String,
        #[arg(long, default_value_t = 4)]
        grid_q: u32,
    },
    /// Equivalence constants between two models
    Equivalence {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        other: String,
        #[arg(long)]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        grid_q: u32,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    #[arg(long, default_value_t = 4)]
    grid_q: u32,
    #[arg(long, default_value_t = 8)]
    placement_universe: u32,
}

/// A failed run: exit code and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NoFrontFound { .. } => "no-front-found",
            Error::NotInSum { .. } => "not-in-sum",
            Error::DegenerateBlock(_) => "degenerate-block",
            Error::InsufficientBlocks { .. } => "insufficient-blocks",
            Error::InsufficientUniverse(_) => "insufficient-universe",
            Error::NotTotal(_) => "not-total",
            Error::NotStabilized { .. } => "not-stabilized",
        };
        Failure { code: 2, kind, message: e.to_string() }
    }
}

type CliResult = std::result::Result<Outcome, Failure>;

/// A report and whether it counts as a success.
struct Outcome {
    report: Value,
    ok: bool,
}

fn ok(v: impl Serialize) -> CliResult {
    Ok(Outcome { report: to_value(v), ok: true })
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn search<T: Serialize>(s: Search<T>) -> CliResult {
    let found = s.is_found();
    Ok(Outcome { report: to_value(s), ok: found })
}

/// Parses inline JSON, or the contents of a file when prefixed with `@`.
fn parse<T: DeserializeOwned>(flag: &str, text: &str) -> std::result::Result<T, Failure> {
    let owned;
    let text = match text.strip_prefix('@') {
        Some(path) => {
            owned = std::fs::read_to_string(path).map_err(|e| Failure {
                code: 2,
                kind: "invalid-argument",
                message: format!("--{flag}: cannot read {path}: {e}"),
            })?;
            owned.as_str()
        }
        None => text,
    };
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Failure {
            code: 2,
            kind: "invalid-json",
            message: format!("--{flag} at `{path}`: {}", e.into_inner()),
        }
    })
}

fn rational(flag: &str, text: &str) -> std::result::Result<Rational, Failure> {
    ratio::parse(text.trim_matches('"')).map_err(|e| Failure { code: 2, kind: "invalid-argument", message: format!("--{flag}: {e}") })
}

#[derive(Deserialize)]
#[serde(transparent)]
struct Coeffs(#[serde(with = "ratio::pq_vec")] Vec<Rational>);

/// An array of coefficients from index 1, or an `{"index": "p/q"}` object.
fn vector(text: &str) -> std::result::Result<Vector, Failure> {
    let raw: Value = parse("vector", text)?;
    let bad = |e: serde_json::Error| Failure { code: 2, kind: "invalid-json", message: format!("--vector: {e}") };
    if raw.is_array() {
        Ok(Vector::from_coeffs(&serde_json::from_value::<Coeffs>(raw).map_err(bad)?.0))
    } else {
        serde_json::from_value(raw).map_err(bad)
    }
}

/// `a..b` for an interval, otherwise a JSON array.
fn universe(text: &str) -> std::result::Result<FiniteSet, Failure> {
    if let Some((a, b)) = text.split_once("..") {
        let bad = |_| Failure { code: 2, kind: "invalid-argument", message: format!("--universe: bad interval {text}") };
        let (a, b): (u32, u32) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        if a == 0 || a > b {
            return Err(Failure { code: 2, kind: "invalid-argument", message: format!("--universe: bad interval {text}") });
        }
        return Ok(FiniteSet::interval(a, b));
    }
    parse("universe", text)
}

impl FamilyArgs {
    fn get(&self) -> std::result::Result<BlockFamily, Failure> {
        match (&self.family, &self.descriptor) {
            (Some(f), _) => parse("family", f),
            (None, Some(d)) => Ok(BlockFamily::new(vec![parse("descriptor", d)?])?),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

impl ModelArgs {
    fn evaluator(&self, sequence: Option<&str>) -> std::result::Result<ModelEvaluator, Failure> {
        let spec: NormSpec = parse("spec", &self.spec)?;
        let seq: BarrierSequence = parse("sequence", sequence.unwrap_or(&self.sequence))?;
        let config = ModelConfig {
            tail_offset: self.tail_offset,
            probe_count: self.probes,
            tolerance: rational("tolerance", &self.tolerance)?,
        };
        Ok(ModelEvaluator::new(spec, seq, config)?)
    }
}

fn schedule(text: &Option<String>) -> std::result::Result<ToleranceSchedule, Failure> {
    let s: ToleranceSchedule = match text {
        Some(t) => parse("schedule", t)?,
        None => ToleranceSchedule::default(),
    };
    s.validate()?;
    Ok(s)
}

fn barrier(cmd: BarrierCmd) -> CliResult {
    match cmd {
        BarrierCmd::Contains { descriptor, set } => {
            let b: BarrierDescriptor = parse("descriptor", &descriptor)?;
            let s: FiniteSet = parse("set", &set)?;
            ok(json!({"contains": b.contains(&s)?}))
        }
        BarrierCmd::Front { descriptor, generator, fuel } => {
            let b: BarrierDescriptor = parse("descriptor", &descriptor)?;
            let m: SetGenerator = parse("generator", &generator)?;
            ok(json!({"front": b.front(&m, fuel)?}))
        }
        BarrierCmd::Enumerate { descriptor, n } => {
            let b: BarrierDescriptor = parse("descriptor", &descriptor)?;
            ok(b.enumerate(n))
        }
        BarrierCmd::CheckAxioms { descriptor, n, samples, seed } => {
            let b: BarrierDescriptor = parse("descriptor", &descriptor)?;
            let r = check_axioms(&b, n, samples, seed);
            let good = r.sperner_ok && r.front_failures.is_empty();
            Ok(Outcome { report: to_value(r), ok: good })
        }
        BarrierCmd::Rank { descriptor, probe } => {
            let b: BarrierDescriptor = parse("descriptor", &descriptor)?;
            ok(b.rank_with_probe(probe))
        }
        BarrierCmd::Build { descriptor } => {
            let b: BarrierDescriptor = parse("descriptor", &descriptor)?;
            ok(json!({"descriptor": b, "display": b.to_string()}))
        }
        BarrierCmd::CompareSets { s, t } => {
            let (s, t): (FiniteSet, FiniteSet) = (parse("s", &s)?, parse("t", &t)?);
            ok(compare_sets(&s, &t)?)
        }
        BarrierCmd::CompareOrdinals { a, b } => {
            let (a, b): (Ordinal, Ordinal) = (parse("a", &a)?, parse("b", &b)?);
            let o = ordinal_compare(&a, &b)?;
            ok(json!({"ordering": format!("{o:?}").to_lowercase(), "a": a.to_string(), "b": b.to_string()}))
        }
    }
}

fn blocks(cmd: BlocksCmd) -> CliResult {
    match cmd {
        BlocksCmd::Enumerate { family, n, universe: u } => {
            let fam: BlockFamily = parse("family", &family)?;
            let within = u.as_deref().map(universe).transpose()?;
            if let Some(w) = &within {
                if w.max().is_some_and(|m| m > n) {
                    return Err(Error::InvalidArgument(format!("universe {w} is not inside 1..={n}")).into());
                }
            }
            ok(enumerate_blocks(&fam, n, within.as_ref()))
        }
        BlocksCmd::Concat { block } => {
            let b: Block = parse("block", &block)?;
            ok(json!({"concat": b.to_concat()}))
        }
        BlocksCmd::Split { family, set } => {
            let fam: BlockFamily = parse("family", &family)?;
            let s: FiniteSet = parse("set", &set)?;
            ok(json!({"block": from_concat(&fam, &s)?}))
        }
        BlocksCmd::Compare { s, t } => {
            let (s, t): (Block, Block) = (parse("s", &s)?, parse("t", &t)?);
            ok(json!({"ordering": block_compare(&s, &t)?}))
        }
    }
}

fn ramsey(cmd: RamseyCmd) -> CliResult {
    match cmd {
        RamseyCmd::Mono { family, coloring, universe: u, target, strategy } => {
            let fam = family.get()?;
            let c = parse::<ColoringSpec>("coloring", &coloring)?.build()?;
            search(find_monochromatic(&fam, &c, &universe(&u)?, target, strategy.into())?)
        }
        RamseyCmd::Metric { family, spec, coeffs, epsilon, universe: u, target, strategy } => {
            let fam = family.get()?;
            let spec: NormSpec = parse("spec", &spec)?;
            let a = parse::<Coeffs>("coeffs", &coeffs)?.0;
            let eps = rational("epsilon", &epsilon)?;
            search(metric_stabilize(&fam, |b| psi_eval(&spec, b, &a), &eps, &universe(&u)?, target, strategy.into())?)
        }
        RamseyCmd::Diagonal { family, spec, coeffs, schedule: sched, universe: u } => {
            let fam = family.get()?;
            let spec: NormSpec = parse("spec", &spec)?;
            let a = parse::<Coeffs>("coeffs", &coeffs)?.0;
            let sched = schedule(&sched)?;
            let r = diagonal_stabilize(&fam, |b| psi_eval(&spec, b, &a), |i| sched.at(i), &universe(&u)?)?;
            let complete = r.stalled_at.is_none();
            Ok(Outcome { report: to_value(r), ok: complete })
        }
    }
}

fn norm(cmd: NormCmd) -> CliResult {
    match cmd {
        NormCmd::Eval { spec, vector } => {
            let spec: NormSpec = parse("spec", &spec)?;
            let v = self::vector(&vector)?;
            let e = norm_eval_flagged(&spec, &v);
            ok(json!({"value": ratio::to_pq(&e.value), "exact": e.exact}))
        }
        NormCmd::BlockVector { spec, set } => {
            let spec: NormSpec = parse("spec", &spec)?;
            let s: FiniteSet = parse("set", &set)?;
            ok(json!({"vector": block_vector(&spec, &s)?}))
        }
        NormCmd::Dk { spec, other, k, grid_q } => {
            let (a, b): (NormSpec, NormSpec) = (parse("spec", &spec)?, parse("other", &other)?);
            let rho1 = |x: &[Rational]| norm_eval(&a, &Vector::from_coeffs(x));
            let rho2 = |x: &[Rational]| norm_eval(&b, &Vector::from_coeffs(x));
            ok(dk_distance(rho1, rho2, k, grid_q))
        }
        NormCmd::BasisConstant { spec, horizon, grid_q } => {
            let spec: NormSpec = parse("spec", &spec)?;
            ok(basis_constant(&spec, horizon, grid_q)?)
        }
        NormCmd::DegenerateDemo { n_max, grid_q } => ok(degenerate_limit_demo(n_max, grid_q)?),
    }
}

fn oscillation(cmd: OscillationCmd) -> CliResult {
    match cmd {
        OscillationCmd::Psi { spec, block, coeffs } => {
            let spec: NormSpec = parse("spec", &spec)?;
            let b: Block = parse("block", &block)?;
            let a = parse::<Coeffs>("coeffs", &coeffs)?.0;
            ok(json!({"value": ratio::to_pq(&psi_eval(&spec, &b, &a)?)}))
        }
        OscillationCmd::Gap { spec, family, universe: u, grid_q } => {
            let spec: NormSpec = parse("spec", &spec)?;
            let fam: BlockFamily = parse("family", &family)?;
            ok(oscillation_gap(&spec, &fam, &universe(&u)?, grid_q)?)
        }
        OscillationCmd::Stable { spec, family, epsilon, universe: u, target, strategy, grid_q } => {
            let spec: NormSpec = parse("spec", &spec)?;
            let fam: BlockFamily = parse("family", &family)?;
            let eps = rational("epsilon", &epsilon)?;
            search(find_stable_subsequence(&spec, &fam, &eps, &universe(&u)?, target, strategy.into(), grid_q)?)
        }
        OscillationCmd::Asymptotic { spec, family, schedule: sched, universe: u, grid_q, stages } => {
            let spec: NormSpec = parse("spec", &spec)?;
            let fam: BlockFamily = parse("family", &family)?;
            let r = asymptotic_stability_check(&spec, &fam, &schedule(&sched)?, &universe(&u)?, grid_q, stages)?;
            let passed = r.all_passed;
            Ok(Outcome { report: to_value(r), ok: passed })
        }
    }
}

fn model(cmd: ModelCmd) -> CliResult {
    match cmd {
        ModelCmd::Eval { model, coeffs } => {
            let mut e = model.evaluator(None)?;
            let v = e.eval(&parse::<Coeffs>("coeffs", &coeffs)?.0)?;
            let stable = v.stabilized;
            Ok(Outcome { report: to_value(v), ok: stable })
        }
        ModelCmd::Consistency { model, k_max, grid_q } => {
            let r = consistency_check(&mut model.evaluator(None)?, k_max, grid_q)?;
            let holds = r.holds;
            Ok(Outcome { report: to_value(r), ok: holds })
        }
        ModelCmd::Spreading { model, k, placements, grid_q } => {
            let p: Vec<FiniteSet> = parse("placements", &placements)?;
            ok(spreading_check(&mut model.evaluator(None)?, k, &p, grid_q)?)
        }
        ModelCmd::Equivalence { model, other, k_max, grid_q } => {
            let mut a = model.evaluator(None)?;
            let mut b = model.evaluator(Some(&other))?;
            ok(equivalence_constants(&mut a, &mut b, k_max, grid_q)?)
        }
    }
}

fn verify(args: VerifyArgs) -> CliResult {
    let mut cfg = Section6Config {
        k_max: args.k_max,
        grid_q: args.grid_q,
        placement_universe: args.placement_universe,
        ..Default::default()
    };
    if let Some(s) = &args.spec {
        cfg.spec = parse("spec", s)?;
    }
    let r = verify_section6(&cfg)?;
    let passed = r.all_passed;
    Ok(Outcome { report: to_value(r), ok: passed })
}

fn dispatch(cmd: Command) -> CliResult {
    match cmd {
        Command::Barrier(c) => barrier(c),
        Command::Blocks(c) => blocks(c),
        Command::Ramsey(c) => ramsey(c),
        Command::Norm(c) => norm(c),
        Command::Oscillation(c) => oscillation(c),
        Command::Model(c) => model(c),
        Command::VerifySection6(a) => verify(a),
    }
}

/// Top-level report: the result object with `schema_version` added, or
/// `{"schema_version", "result"}` for non-object results.
fn envelope(report: Value) -> Value {
    match report {
        Value::Object(mut m) => {
            m.insert("schema_version".into(), json!(SCHEMA_VERSION));
            Value::Object(m)
        }
        other => json!({"schema_version": SCHEMA_VERSION, "result": other}),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arrays of objects become one row per element; other arrays one value
/// per row; objects one `key,value` row per field.
fn to_csv(report: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let result = match report {
        Value::Object(m) if m.contains_key("result") => &m["result"],
        other => other,
    };
    match result {
        Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
            let keys: Vec<String> = rows[0].as_object().expect("object").keys().cloned().collect();
            w.write_record(&keys).expect("in-memory write");
            for r in rows {
                w.write_record(keys.iter().map(|k| cell(&r[k]))).expect("in-memory write");
            }
        }
        Value::Array(rows) => {
            w.write_record(["value"]).expect("in-memory write");
            for r in rows {
                w.write_record([cell(r)]).expect("in-memory write");
            }
        }
        Value::Object(m) => {
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in m {
                w.write_record([k.clone(), cell(v)]).expect("in-memory write");
            }
        }
        other => {
            w.write_record([cell(other)]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// `barrier-rank` for `barrier rank --descriptor ...`.
fn report_name(args: &[std::ffi::OsString]) -> String {
    let words: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .take_while(|a| !a.starts_with('-'))
        .take(2)
        .collect();
    words.join("-")
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code and the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString>,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let (code, report) = match dispatch(cli.command) {
        Ok(o) => (if o.ok { 0 } else { 1 }, envelope(o.report)),
        Err(f) => (f.code, json!({"schema_version": SCHEMA_VERSION, "error": f.kind, "message": f.message})),
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Csv => to_csv(&report),
    };
    let ext = match cli.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let target = cli.out.or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{}.{ext}", report_name(&args))))
    });
    if let Some(path) = target {
        if let Err(e) = std::fs::write(&path, &text) {
            return (2, format!("cannot write {}: {e}\n", path.display()));
        }
    }
    (code, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, Value) {
        let mut full = vec!["barrier-models"];
        full.extend_from_slice(args);
        let (code, text) = run(full);
        (code, serde_json::from_str(&text).unwrap_or(Value::String(text)))
    }

    #[test]
    fn rank_report() {
        let (code, v) = run_args(&["barrier", "rank", "--descriptor", r#"{"type":"cube","k":3}"#]);
        assert_eq!(code, 0);
        assert_eq!(v["rank"], "w^3");
        assert_eq!(v["confirmed"], true);
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn invalid_input_exits_two() {
        let (code, v) = run_args(&["barrier", "rank", "--descriptor", r#"{"type":"cube","k":0}"#]);
        assert_eq!(code, 2);
        assert_eq!(v["error"], "invalid-json");
        let (code, v) = run_args(&["barrier", "rank", "--descriptor", r#"{"type":"restrict","base":{"type":"cube"},"to":{"kind":"arithmetic","start":2,"step":2}}"#]);
        assert_eq!(code, 2);
        assert!(v["message"].as_str().unwrap().contains("missing field `k`"), "{v}");
        let (code, _) = run_args(&["barrier", "rank", "--bogus", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn no_witness_exits_one() {
        let (code, v) = run_args(&[
            "ramsey", "mono", "--family", r#"[{"type":"cube","k":2}]"#, "--coloring", r#"{"rule":"sum-parity"}"#,
            "--universe", "1..4", "--target", "3",
        ]);
        assert_eq!(code, 1);
        assert_eq!(v["status"], "not-found");
    }

    #[test]
    fn csv_rows() {
        let (code, text) = run(["barrier-models", "barrier", "enumerate", "--descriptor", r#"{"type":"cube","k":2}"#, "--n", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(text, "value\n\"[1,2]\"\n\"[1,3]\"\n\"[2,3]\"\n");
    }
}

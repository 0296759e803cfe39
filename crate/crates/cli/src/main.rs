use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qalg_core::algebra::BoundQuiverAlgebra;
use qalg_core::bounds::{
    best_v_search_in, syzygy_finiteness_certificate, BoundContext, CertificateOptions, SearchStrategy,
    DEFAULT_SEARCH_CAP,
};
use qalg_core::error::TheoryError;
use qalg_core::harness::campaign::{replay, write_failures, CampaignParams, Check, Outcome};
use qalg_core::harness::{run_campaign, GenParams};
use qalg_core::par::Execution;
use qalg_core::qdsl::{
    emit_report, load_algebra, parse_presentation, pd_json, pd_table_json, to_json_string, Format, ParseError,
};
use qalg_core::repr::Module;
use qalg_core::torsion::{classify_simples, layer_length, PdOptions, SimpleSet};

mod selector;

use selector::VSelector;

#[derive(Parser, Debug)]
#[command(name = "qalg", version, about = "Homological invariants of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Greedy,
}

#[derive(Args, Debug)]
struct Common {
    /// Presentation file.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Replace the field characteristic declared in the file.
    #[arg(long)]
    modulus: Option<u64>,
    /// Largest syzygy index examined for projective dimensions (default 4 dim A).
    #[arg(long)]
    cutoff: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, Loewy length and projective sizes.
    Info(Common),
    /// Projective dimensions of the simples and the global dimension.
    Pd(Common),
    /// Radical layer length of A relative to the torsion class of V.
    Llt {
        #[command(flatten)]
        common: Common,
        /// Simples in V: `3..9`, `3,4,7`, `all`, `none` or `auto`.
        #[arg(long = "V", default_value = "none")]
        v: VSelector,
    },
    /// The five upper bounds for the derived dimension.
    Bounds {
        #[command(flatten)]
        common: Common,
        /// Simples in V: `3..9`, `3,4,7`, `all`, `none` or `auto`.
        #[arg(long = "V")]
        v: Option<VSelector>,
        /// Search all subsets of the finite-pd simples for the best bound.
        #[arg(long)]
        search: bool,
        #[arg(long, value_enum, default_value = "exhaustive")]
        strategy: StrategyArg,
        /// Refuse exhaustive search over more than this many simples.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: usize,
    },
    /// Syzygy-finiteness certificate on the smoke set and random modules.
    Syzcheck {
        #[command(flatten)]
        common: Common,
        /// Simples in V: `3..9`, `3,4,7`, `all`, `none` or `auto`.
        #[arg(long = "V")]
        v: VSelector,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 24)]
        budget: usize,
    },
    /// Randomized invariant campaign, or replay of a saved failure.
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 50)]
    algebras: usize,
    /// Draws per check.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Restrict to the named checks; repeatable.
    #[arg(long = "check")]
    checks: Vec<Check>,
    /// Module dimension budget per draw.
    #[arg(long, default_value_t = 24)]
    budget: usize,
    #[arg(long, default_value = "failures")]
    failures: PathBuf,
    #[arg(long)]
    no_shrink: bool,
    /// Re-run one draw against the algebra stored in a failure file.
    #[arg(long)]
    replay: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

/// An error mapped to the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<TheoryError> for Failure {
    fn from(e: TheoryError) -> Self {
        let code = match e {
            TheoryError::UndeterminedPd(_) | TheoryError::HypothesisFailed(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Info(c) => cmd_info(&c),
        Command::Pd(c) => cmd_pd(&c),
        Command::Llt { common, v } => cmd_llt(&common, &v),
        Command::Bounds {
            common,
            v,
            search,
            strategy,
            cap,
        } => {
            let v = match (v, search) {
                (_, true) | (Some(VSelector::Auto), _) => VSelector::Auto,
                (Some(v), false) => v,
                (None, false) => return Err(Failure::usage("bounds needs --V or --search")),
            };
            let strategy = match strategy {
                StrategyArg::Exhaustive => SearchStrategy::Exhaustive,
                StrategyArg::Greedy => SearchStrategy::Greedy,
            };
            cmd_bounds(&common, &v, strategy, cap)
        }
        Command::Syzcheck {
            common,
            v,
            samples,
            seed,
            budget,
        } => {
            let seed = resolve_seed(seed)?;
            cmd_syzcheck(&common, &v, samples, seed, budget)
        }
        Command::Fuzz(args) => cmd_fuzz(args),
    }
}

fn resolve_seed(seed: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    if std::env::var("QALG_CI").is_ok_and(|v| v == "1") {
        return Err(Failure::usage("QALG_CI=1 requires an explicit --seed"));
    }
    let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos());
    Ok(nanos as u64)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::usage(format!("{}:{e}", path.display()))
}

fn load(common: &Common) -> Result<Arc<BoundQuiverAlgebra>, Failure> {
    load_path(&common.file, common.modulus)
}

fn load_path(path: &Path, modulus: Option<u64>) -> Result<Arc<BoundQuiverAlgebra>, Failure> {
    let text = read_file(path)?;
    let Some(p) = modulus else {
        return load_algebra(&text)
            .map(|(_, alg)| alg)
            .map_err(|e| parse_failure(path, e));
    };
    let mut ast = parse_presentation(&text).map_err(|e| parse_failure(path, e))?;
    ast.field = Some(p);
    load_algebra(&ast.pretty())
        .map(|(_, alg)| alg)
        .map_err(|e| Failure::usage(format!("{}: --modulus {p}: {e}", path.display())))
}

fn pd_options(common: &Common, alg: &BoundQuiverAlgebra) -> PdOptions {
    let opts = PdOptions::for_algebra(alg);
    match common.cutoff {
        Some(c) => opts.with_cutoff(c),
        None => opts,
    }
}

fn print(format: Format, json: Value, text: String) {
    match format {
        Format::Json => print!("{}", to_json_string(&json)),
        Format::Text => print!("{text}"),
    }
}

fn set_json(v: &SimpleSet) -> Value {
    json!(v.vertices())
}

fn cmd_info(common: &Common) -> CmdResult {
    let alg = load(common)?;
    let n = alg.num_vertices();
    let proj: Vec<usize> = (1..=n).map(|i| Module::projective(&alg, i).dim()).collect();
    let ll = alg.loewy_length();
    let json = json!({
        "algebra": alg.name(),
        "field": alg.field().modulus(),
        "vertices": n,
        "arrows": alg.quiver().arrows().len(),
        "relations": alg.relations().len(),
        "dim": alg.dim(),
        "loewy_length": ll,
        "nilpotency_index": ll,
        "projective_dims": proj,
    });
    let mut text = String::new();
    let _ = writeln!(text, "algebra {} over GF({})", alg.name(), alg.field().modulus());
    let _ = writeln!(text, "vertices = {}, arrows = {}", n, alg.quiver().arrows().len());
    let _ = writeln!(text, "dim A = {}", alg.dim());
    let _ = writeln!(text, "LL = {ll}");
    let _ = writeln!(text, "nilpotency index of rad A = {ll}");
    for (i, d) in proj.iter().enumerate() {
        let _ = writeln!(text, "dim P({}) = {d}", i + 1);
    }
    print(common.format.into(), json, text);
    Ok(0)
}

fn cmd_pd(common: &Common) -> CmdResult {
    let alg = load(common)?;
    let opts = pd_options(common, &alg);
    let class = classify_simples(&alg, &opts);
    let undetermined = class.undetermined();
    let json = json!({
        "algebra": alg.name(),
        "cutoff": opts.cutoff,
        "pd_table": pd_table_json(&class.table),
        "finite": set_json(&class.finite),
        "infinite": set_json(&class.infinite),
        "undetermined": undetermined,
        "gldim": pd_json(&class.gldim),
    });
    let mut text = String::new();
    let _ = writeln!(text, "algebra {}", alg.name());
    for (i, r) in class.table.iter().enumerate() {
        let _ = writeln!(text, "pd S({}) = {r}", i + 1);
    }
    let _ = writeln!(text, "S^inf = {}", class.infinite);
    let _ = writeln!(text, "S^fin = {}", class.finite);
    if !undetermined.is_empty() {
        let _ = writeln!(text, "undetermined = {undetermined:?}");
    }
    let _ = writeln!(text, "gldim = {}", class.gldim);
    print(common.format.into(), json, text);
    Ok(if undetermined.is_empty() { 0 } else { 3 })
}

/// Resolves a selector; `auto` runs the best-bound search.
fn resolve_v(ctx: &BoundContext, v: &VSelector) -> Result<SimpleSet, Failure> {
    match v {
        VSelector::Auto => Ok(best_v_search_in(
            ctx,
            SearchStrategy::Exhaustive,
            DEFAULT_SEARCH_CAP,
            Execution::default(),
        )?
        .v_set),
        other => other
            .resolve(ctx.algebra().num_vertices())
            .map_err(|e| Failure::usage(e.to_string())),
    }
}

fn cmd_llt(common: &Common, v: &VSelector) -> CmdResult {
    let alg = load(common)?;
    let v = match v {
        VSelector::Auto => {
            let ctx = BoundContext::new(&alg, &pd_options(common, &alg), Execution::default());
            resolve_v(&ctx, v)?
        }
        other => other
            .resolve(alg.num_vertices())
            .map_err(|e| Failure::usage(e.to_string()))?,
    };
    let whole = layer_length(&Module::regular(&alg), &v);
    let per: Vec<_> = (1..=alg.num_vertices())
        .map(|i| layer_length(&Module::projective(&alg, i), &v))
        .collect();
    let json = json!({
        "algebra": alg.name(),
        "v_set": set_json(&v),
        "ll_tv": whole.value,
        "chain": whole.chain,
        "projectives": per.iter().enumerate().map(|(i, t)| json!({
            "vertex": i + 1,
            "ll_tv": t.value,
            "chain": t.chain,
        })).collect::<Vec<_>>(),
    });
    let chain = |c: &[usize]| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ");
    let mut text = String::new();
    let _ = writeln!(text, "algebra {}", alg.name());
    let _ = writeln!(text, "V = {v}");
    let _ = writeln!(text, "ll^tV(A) = {} (chain {})", whole.value, chain(&whole.chain));
    for (i, t) in per.iter().enumerate() {
        let _ = writeln!(text, "ll^tV(P({})) = {} (chain {})", i + 1, t.value, chain(&t.chain));
    }
    print(common.format.into(), json, text);
    Ok(0)
}

fn cmd_bounds(common: &Common, v: &VSelector, strategy: SearchStrategy, cap: usize) -> CmdResult {
    let alg = load(common)?;
    let ctx = BoundContext::new(&alg, &pd_options(common, &alg), Execution::default());
    let report = match v {
        VSelector::Auto => best_v_search_in(&ctx, strategy, cap, Execution::default())?,
        other => {
            let set = other
                .resolve(alg.num_vertices())
                .map_err(|e| Failure::usage(e.to_string()))?;
            ctx.report(&set)?
        }
    };
    print!("{}", emit_report(&report, common.format.into()));
    Ok(0)
}

fn cmd_syzcheck(common: &Common, v: &VSelector, samples: usize, seed: u64, budget: usize) -> CmdResult {
    let alg = load(common)?;
    let ctx = BoundContext::new(&alg, &pd_options(common, &alg), Execution::default());
    let v = resolve_v(&ctx, v)?;
    let cert = CertificateOptions {
        samples,
        seed,
        module_budget: budget,
        ..Default::default()
    };
    let report = syzygy_finiteness_certificate(&ctx, &v, &cert, Execution::default())?;
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["seed"] = json!(seed);
    json["samples"] = json!(samples);
    let mut text = String::new();
    let _ = writeln!(text, "algebra {}", report.algebra);
    let _ = writeln!(text, "V = {v}");
    let _ = writeln!(
        text,
        "pd V = {}, ll^tV(A) = {}, k = {}",
        report.pd_v, report.ll_tv, report.k
    );
    let _ = writeln!(text, "seed = {seed}, generator dim = {}", report.generator_dim);
    for e in &report.entries {
        let verdict = if e.passed { "ok" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{verdict:4} {:12} dim Omega^{} = {}",
            e.label, report.k, e.syzygy_dim
        );
    }
    let _ = writeln!(text, "{}", if report.passed { "PASS" } else { "FAIL" });
    print(common.format.into(), json, text);
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_fuzz(args: FuzzArgs) -> CmdResult {
    let seed = resolve_seed(args.seed)?;
    let format: Format = args.format.into();
    if let Some(path) = &args.replay {
        let [check] = args.checks[..] else {
            return Err(Failure::usage("--replay needs exactly one --check"));
        };
        let alg = load_path(path, None)?;
        let outcome = replay(check, &alg, seed, args.budget);
        let (verdict, detail) = match &outcome {
            Outcome::Pass => ("pass", String::new()),
            Outcome::Skip(d) => ("skip", d.clone()),
            Outcome::Fail(d) => ("fail", d.clone()),
        };
        let json =
            json!({ "check": check.name(), "seed": seed, "budget": args.budget, "outcome": verdict, "detail": detail });
        let text = format!("{check} seed {seed}: {verdict} {detail}\n");
        print(format, json, text);
        return Ok(if matches!(outcome, Outcome::Fail(_)) { 1 } else { 0 });
    }
    let params = CampaignParams {
        seed,
        algebras: args.algebras,
        count: args.count,
        checks: if args.checks.is_empty() {
            Check::ALL.to_vec()
        } else {
            args.checks
        },
        gen: GenParams {
            module_budget: args.budget,
            ..GenParams::default()
        },
        exec: Execution::default(),
        shrink: !args.no_shrink,
    };
    let result = run_campaign(&params);
    write_failures(&result, &args.failures).map_err(|e| Failure::usage(format!("{}: {e}", args.failures.display())))?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "seed {seed}, {} algebras, {} draws per check",
        result.algebras, result.count
    );
    for c in &result.checks {
        let _ = writeln!(
            text,
            "{:24} passed {:5} failed {:5} skipped {:5}",
            c.name, c.passed, c.failed, c.skipped
        );
        for f in &c.failures {
            let _ = writeln!(text, "  draw {}: {}", f.draw, f.detail);
            let _ = writeln!(text, "  replay: {}", f.replay);
        }
    }
    let _ = writeln!(
        text,
        "{}",
        if result.all_passed() {
            "all checks green"
        } else {
            "FAILURES"
        }
    );
    print(format, serde_json::to_value(&result).expect("serializable"), text);
    Ok(if result.all_passed() { 0 } else { 1 })
}

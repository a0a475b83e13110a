//! Command-line front end: argument parsing, command dispatch and output.
//!
//! Human-readable tables go to standard output; `--json <path>` writes the
//! deterministic JSON report (`--json -` writes it to standard output instead).
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::braid::{self, BraidWord, RickardConvention};
use crate::cartan::{CartanData, GraphData, GraphFile};
use crate::error::{Error, Result};
use crate::ktheory::{self, CheckKind, SuiteConfig};
use crate::operator::BlockReport;
use crate::quiver::{self, DimRow};
use crate::relations::{self, RelationFamily};
use crate::rep::{IntegrableModule, ModuleFile};
use crate::report::{Report, RunConfig};
use crate::udot::{UdotExpr, UdotTerm};

#[derive(Parser, Debug)]
#[command(
    name = "kquiver",
    version,
    about = "Exact quantum-group modules, braid operators and localized K-theory checks"
)]
pub struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true, env = "KQUIVER_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Cartan data of a graph.
    #[command(subcommand)]
    Cartan(CartanCmd),
    /// Quiver-variety dimension tables.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Integrable highest-weight modules.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Braid operators on modules.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Localized K-theory of T*G(k,N).
    #[command(subcommand)]
    Ktheory(KtheoryCmd),
}

#[derive(Subcommand, Debug)]
pub enum CartanCmd {
    /// Cartan matrix plus pairings, dimensions and canonical weights up to a height.
    Info(TableArgs),
}

#[derive(Subcommand, Debug)]
pub enum QuiverCmd {
    /// Dimension table of quiver varieties for all v up to a height.
    Dims(TableArgs),
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    /// Build a module; `--json` writes the module file.
    Build(BuildArgs),
    /// Check the relation families on a built or loaded module.
    Verify(VerifyArgs),
    /// Evaluate a sum of U-dot terms, e.g. --term "E1^(2) F2 a[w=1,0;v=0,0]".
    Eval(EvalArgs),
}

#[derive(Subcommand, Debug)]
pub enum BraidCmd {
    /// Operator of a braid word; words act right to left ("T1 T2" applies T2 first).
    Eval(BraidEvalArgs),
    /// Braid relations, invertibility and weight compatibility for every generator pair.
    Verify(ModuleArgs),
}

#[derive(Subcommand, Debug)]
pub enum KtheoryCmd {
    /// Exact identity checks on the localization model.
    Verify(KtheoryArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph file (JSON: vertices, edges, optional orientation and w).
    #[arg(long, conflicts_with = "kind")]
    pub graph: Option<PathBuf>,
    /// Graph shorthand instead of a file, e.g. A2 or A1xA1.
    #[arg(long = "type", value_name = "TYPE")]
    pub kind: Option<String>,
    /// Framing w in vertex order, e.g. 1,0 (overrides the file's w).
    #[arg(long, value_delimiter = ',')]
    pub w: Option<Vec<i64>>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the JSON report to this path ("-" for standard output).
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Largest total height sum(v) listed (default: lowest-weight height, or 4).
    #[arg(long)]
    pub height: Option<i64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Depth limit (required for graphs not of finite type).
    #[arg(long)]
    pub depth: Option<i64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// Load a module file instead of building one.
    #[arg(long, conflicts_with_all = ["graph", "kind"])]
    pub module_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// A term; repeat to sum several.
    #[arg(long = "term", required = true, allow_hyphen_values = true)]
    pub terms: Vec<String>,
}

#[derive(Args, Debug)]
pub struct BraidEvalArgs {
    #[command(flatten)]
    pub module: ModuleArgs,
    /// Braid word, e.g. "T1 T2 T1" (inverses as T1^-1).
    #[arg(long)]
    pub word: String,
    /// Subtract the operator of this word.
    #[arg(long)]
    pub minus: Option<String>,
}

#[derive(Args, Debug)]
pub struct KtheoryArgs {
    /// N in T*G(k,N).
    #[arg(long = "N", value_name = "N")]
    pub n: usize,
    /// Restrict to these k (default: all 0..=N).
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    /// Comma-separated checks (default: all).
    #[arg(long)]
    pub checks: Option<String>,
    /// Exact symbolic rational functions instead of evaluation points.
    #[arg(long)]
    pub symbolic: bool,
    /// Seed for the evaluation points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of evaluation points (at least 5).
    #[arg(long, default_value_t = 5)]
    pub points: usize,
    #[command(flatten)]
    pub out: Output,
}

struct Loaded {
    cd: CartanData,
    w: Option<Vec<i64>>,
    label: String,
}

fn load_graph(g: &GraphArgs) -> Result<Loaded> {
    let (graph, file_w, label) = match (&g.graph, &g.kind) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let file = GraphFile::parse(&text).map_err(|e| match e {
                Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
                other => other,
            })?;
            let cd = CartanData::new(file.graph())?;
            let w = file.framing(&cd)?;
            (file.graph(), w, path.display().to_string())
        }
        (None, Some(t)) => (GraphData::from_type(t)?, None, format!("type:{t}")),
        (None, None) => return Err(Error::Parse("give --graph <file> or --type <TYPE>".into())),
    };
    let cd = CartanData::new(graph)?;
    let w = g.w.clone().or(file_w);
    if let Some(w) = &w {
        if w.len() != cd.rank() {
            return Err(Error::Shape(format!(
                "w has {} entries, graph has {} vertices",
                w.len(),
                cd.rank()
            )));
        }
    }
    Ok(Loaded { cd, w, label })
}

fn need_w(l: &Loaded) -> Result<Vec<i64>> {
    l.w.clone()
        .ok_or_else(|| Error::Parse("no framing: give --w or put w in the graph file".into()))
}

/// A closed pipe (e.g. `| head`) ends output quietly.
fn quiet_pipe(r: std::io::Result<()>) -> Result<()> {
    match r {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn emit<T: Serialize>(
    out: &Output,
    report: &Report<T>,
    human: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match out.json.as_deref() {
        Some("-") => quiet_pipe(lock.write_all(report.to_json()?.as_bytes())),
        Some(path) => {
            fs::write(path, report.to_json()?).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            quiet_pipe(human(&mut lock))
        }
        None => quiet_pipe(human(&mut lock)),
    }
}

fn config(
    command: &str,
    l: Option<&Loaded>,
    w: Option<Vec<i64>>,
    depth: Option<i64>,
    out: &Output,
) -> RunConfig {
    RunConfig {
        command: command.into(),
        graph: l.map(|l| l.label.clone()),
        w,
        depth,
        output: out.json.clone(),
        ..Default::default()
    }
}

#[derive(Serialize)]
struct TableResult {
    vertices: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cartan_matrix: Option<Vec<Vec<i64>>>,
    finite_type: bool,
    height: i64,
    rows: Vec<DimRow>,
}

fn table(args: &TableArgs, with_matrix: bool, command: &str) -> Result<bool> {
    let l = load_graph(&args.graph)?;
    let w = need_w(&l)?;
    let finite = l.cd.is_finite_type();
    let height = match args.height {
        Some(h) if h < 0 => return Err(Error::OutOfRange("height must be nonnegative".into())),
        Some(h) => h,
        None if finite => l.cd.lowest_weight_height(&w)?,
        None => 4,
    };
    let rows = quiver::dimension_table(&l.cd, &w, height)?;
    let result = TableResult {
        vertices: l.cd.graph.vertices.clone(),
        cartan_matrix: with_matrix.then(|| l.cd.matrix.clone()),
        finite_type: finite,
        height,
        rows,
    };
    let report = Report::new(
        config(command, Some(&l), Some(w), None, &args.out),
        None,
        &result,
    );
    emit(&args.out, &report, |o| {
        if let Some(m) = &result.cartan_matrix {
            writeln!(
                o,
                "Cartan matrix ({})",
                if finite {
                    "finite type"
                } else {
                    "not finite type"
                }
            )?;
            for row in m {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                writeln!(o, "  {}", cells.join(""))?;
            }
        }
        writeln!(
            o,
            "{:<16} {:<16} {:>6} {:>10} empty",
            "v", "pairings", "dim", "canonical"
        )?;
        for r in &result.rows {
            writeln!(
                o,
                "{:<16} {:<16} {:>6} {:>10} {}",
                format!("{:?}", r.v),
                format!("{:?}", r.pairings),
                r.dim,
                r.canonical_weight,
                r.empty
            )?;
        }
        Ok(())
    })?;
    Ok(true)
}

fn build_module(args: &ModuleArgs) -> Result<(Loaded, IntegrableModule)> {
    let l = load_graph(&args.graph)?;
    let w = need_w(&l)?;
    let m = IntegrableModule::build(&l.cd, &w, args.depth)?;
    Ok((l, m))
}

fn rep_build(args: &BuildArgs) -> Result<bool> {
    let (_, m) = build_module(&args.module)?;
    let file = m.to_json();
    let text = {
        let mut s = serde_json::to_string_pretty(&file)?;
        s.push('\n');
        s
    };
    let stdout = std::io::stdout();
    let mut o = stdout.lock();
    match args.module.out.json.as_deref() {
        Some("-") => quiet_pipe(o.write_all(text.as_bytes()))?,
        other => {
            if let Some(path) = other {
                fs::write(path, &text).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            }
            quiet_pipe((|| {
                writeln!(
                    o,
                    "total dimension {}{}",
                    m.total_dim(),
                    if m.truncated { " (truncated)" } else { "" }
                )?;
                for e in &file.weights {
                    writeln!(o, "  v={:?} pairings={:?} dim={}", e.v, e.pairings, e.dim)?;
                }
                Ok(())
            })())?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyResult {
    total_dim: usize,
    truncated: bool,
    families: Vec<RelationFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weyl_symmetric: Option<bool>,
}

fn print_checks(
    o: &mut dyn Write,
    rows: &[(String, String, usize, bool, Option<String>)],
) -> std::io::Result<()> {
    for (id, identity, n, passed, cex) in rows {
        writeln!(
            o,
            "{} {id}: {identity} ({n} instances)",
            if *passed { "PASS" } else { "FAIL" }
        )?;
        if let Some(c) = cex {
            writeln!(o, "    counterexample: {c}")?;
        }
    }
    Ok(())
}

fn rep_verify(args: &VerifyArgs) -> Result<bool> {
    let (label, m) = match &args.module_file {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let file: ModuleFile = serde_json::from_str(&text)?;
            (
                path.display().to_string(),
                IntegrableModule::from_json(&file)?,
            )
        }
        None => {
            let (l, m) = build_module(&args.module)?;
            (l.label, m)
        }
    };
    let families = relations::verify_module(&m)?;
    let weyl = if m.truncated {
        None
    } else {
        Some(relations::weyl_symmetric(&m)?)
    };
    let passed = families.iter().all(|f| f.passed) && weyl != Some(false);
    let mut cfg = config(
        "rep verify",
        None,
        Some(m.w.clone()),
        args.module.depth,
        &args.module.out,
    );
    cfg.graph = Some(label);
    cfg.checks = vec!["relations".into()];
    let result = VerifyResult {
        total_dim: m.total_dim(),
        truncated: m.truncated,
        families,
        weyl_symmetric: weyl,
    };
    let report = Report::new(cfg, Some(passed), &result);
    emit(&args.module.out, &report, |o| {
        let rows: Vec<_> = result
            .families
            .iter()
            .map(|f| {
                let cex = f.counterexample.as_ref().map(|c| {
                    format!(
                        "{} at {}: lhs {:?} rhs {:?}",
                        c.detail, c.weight, c.lhs, c.rhs
                    )
                });
                (f.id.clone(), f.identity.clone(), f.instances, f.passed, cex)
            })
            .collect();
        print_checks(o, &rows)?;
        if let Some(ws) = weyl {
            writeln!(
                o,
                "{} weyl: dim M(lambda) = dim M(s_i lambda)",
                if ws { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    })?;
    Ok(passed)
}

#[derive(Serialize)]
struct OperatorResult {
    expression: Vec<String>,
    zero: bool,
    blocks: Vec<BlockReport>,
}

fn print_blocks(o: &mut dyn Write, blocks: &[BlockReport]) -> std::io::Result<()> {
    for b in blocks {
        if b.matrix.is_empty() {
            writeln!(o, "{} -> {} (target space is zero)", b.source, b.target)?;
            continue;
        }
        writeln!(o, "{} -> {}", b.source, b.target)?;
        for row in &b.matrix {
            writeln!(o, "    [{}]", row.join(", "))?;
        }
    }
    Ok(())
}

fn rep_eval(args: &EvalArgs) -> Result<bool> {
    let (l, m) = build_module(&args.module)?;
    let terms: Vec<UdotTerm> = args
        .terms
        .iter()
        .map(|t| UdotTerm::parse(&l.cd, t))
        .collect::<Result<_>>()?;
    let op = UdotExpr::new(terms.clone()).evaluate(&m)?;
    let result = OperatorResult {
        expression: terms.iter().map(|t| t.display(&l.cd)).collect(),
        zero: op.is_zero(),
        blocks: op.report(),
    };
    let report = Report::new(
        config(
            "rep eval",
            Some(&l),
            m.w.clone().into(),
            args.module.depth,
            &args.module.out,
        ),
        None,
        &result,
    );
    emit(&args.module.out, &report, |o| {
        writeln!(o, "{}", result.expression.join(" + "))?;
        if result.zero {
            writeln!(o, "zero operator")?;
        }
        print_blocks(o, &result.blocks)
    })?;
    Ok(true)
}

/// Braid convention calibrated on the graph, or on A2 when the graph has no
/// edge (the coefficient does not depend on the graph).
fn braid_convention(cd: &CartanData) -> Result<(RickardConvention, String)> {
    let has_edge = !cd.graph.edges.is_empty();
    let cal = if has_edge && cd.is_finite_type() {
        braid::calibrate(cd)?
    } else {
        braid::calibrate(&CartanData::new(GraphData::path(2))?)?
    };
    Ok((cal.chosen, cal.rule))
}

#[derive(Serialize)]
struct BraidEvalResult {
    convention: String,
    #[serde(flatten)]
    operator: OperatorResult,
}

fn braid_eval(args: &BraidEvalArgs) -> Result<bool> {
    let (l, m) = build_module(&args.module)?;
    let (conv, _) = braid_convention(&l.cd)?;
    let word = BraidWord::parse(&l.cd, &args.word)?;
    let mut op = braid::evaluate_word(&word, &m, &conv)?;
    let mut expression = vec![word.display(&l.cd)];
    if let Some(minus) = &args.minus {
        let other = BraidWord::parse(&l.cd, minus)?;
        op = op.sub(&braid::evaluate_word(&other, &m, &conv)?)?;
        expression.push(format!("-({})", other.display(&l.cd)));
    }
    let result = BraidEvalResult {
        convention: conv.to_string(),
        operator: OperatorResult {
            expression,
            zero: op.is_zero(),
            blocks: op.report(),
        },
    };
    let report = Report::new(
        config(
            "braid eval",
            Some(&l),
            Some(m.w.clone()),
            args.module.depth,
            &args.module.out,
        ),
        None,
        &result,
    );
    emit(&args.module.out, &report, |o| {
        writeln!(
            o,
            "{} (convention {})",
            result.operator.expression.join(" "),
            result.convention
        )?;
        if result.operator.zero {
            writeln!(o, "zero operator")?;
        }
        print_blocks(o, &result.operator.blocks)
    })?;
    Ok(true)
}

#[derive(Serialize)]
struct BraidVerifyResult {
    convention: String,
    calibration_rule: String,
    checks: Vec<braid::BraidCheck>,
}

fn braid_verify(args: &ModuleArgs) -> Result<bool> {
    let (l, m) = build_module(args)?;
    let (conv, rule) = braid_convention(&l.cd)?;
    let checks = braid::verify_braid(&m, &conv)?;
    let passed = checks.iter().all(|c| c.passed);
    let result = BraidVerifyResult {
        convention: conv.to_string(),
        calibration_rule: rule,
        checks,
    };
    let mut cfg = config(
        "braid verify",
        Some(&l),
        Some(m.w.clone()),
        args.depth,
        &args.out,
    );
    cfg.checks = vec!["braid".into(), "invertible".into(), "weight".into()];
    let report = Report::new(cfg, Some(passed), &result);
    emit(&args.out, &report, |o| {
        writeln!(o, "convention {}", result.convention)?;
        let rows: Vec<_> = result
            .checks
            .iter()
            .map(|c| {
                (
                    c.id.clone(),
                    c.identity.clone(),
                    c.instances,
                    c.passed,
                    c.counterexample.clone(),
                )
            })
            .collect();
        print_checks(o, &rows)
    })?;
    Ok(passed)
}

fn ktheory_verify(args: &KtheoryArgs) -> Result<bool> {
    let checks = match &args.checks {
        Some(s) => CheckKind::parse_list(s)?,
        None => CheckKind::ALL.to_vec(),
    };
    let cfg = SuiteConfig {
        n: args.n,
        ks: args.k.clone(),
        checks: checks.clone(),
        symbolic: args.symbolic,
        seed: args.seed,
        points: args.points,
    };
    let suite = ktheory::run_suite(&cfg)?;
    let passed = suite.passed;
    let run = RunConfig {
        command: "ktheory verify".into(),
        checks: checks.iter().map(|c| c.name().to_string()).collect(),
        seed: Some(args.seed),
        output: args.out.json.clone(),
        symbolic: args.symbolic,
        ..Default::default()
    };
    let report = Report::new(run, Some(passed), &suite);
    emit(&args.out, &report, |o| {
        writeln!(
            o,
            "T*G(k,{}) for k in {:?}, {} mode, fibre weight t^{}, {}, Rickard term {}",
            suite.n,
            suite.ks,
            suite.mode,
            suite.conventions.fibre_exponent,
            suite.shift_convention,
            suite.rickard_term
        )?;
        for c in &suite.checks {
            writeln!(
                o,
                "{} {}: {} ({} instances)",
                if c.passed { "PASS" } else { "FAIL" },
                c.id,
                c.identity,
                c.instances
            )?;
            for ob in &c.observations {
                match ob.k {
                    Some(k) => writeln!(o, "    k={k} {}: {}", ob.label, ob.value)?,
                    None => writeln!(o, "    {}: {}", ob.label, ob.value)?,
                }
            }
            if let Some(cex) = &c.counterexample {
                writeln!(o, "    counterexample: {cex}")?;
            }
        }
        Ok(())
    })?;
    Ok(passed)
}

fn dispatch(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Cartan(CartanCmd::Info(a)) => table(a, true, "cartan info"),
        Cmd::Quiver(QuiverCmd::Dims(a)) => table(a, false, "quiver dims"),
        Cmd::Rep(RepCmd::Build(a)) => rep_build(a),
        Cmd::Rep(RepCmd::Verify(a)) => rep_verify(a),
        Cmd::Rep(RepCmd::Eval(a)) => rep_eval(a),
        Cmd::Braid(BraidCmd::Eval(a)) => braid_eval(a),
        Cmd::Braid(BraidCmd::Verify(a)) => braid_verify(a),
        Cmd::Ktheory(KtheoryCmd::Verify(a)) => ktheory_verify(a),
    }
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.jobs {
        Some(0) => Err(Error::OutOfRange("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(&cli))),
        None => dispatch(&cli),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

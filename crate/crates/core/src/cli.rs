//! The `unclogic` command line: `eval`, `gate` and `demo`.
//!
//! Exit codes: 0 on success, 1 when evaluation fails, 2 on parse or usage
//! errors. Text output rounds to four significant digits; CSV and JSON carry
//! full precision and are byte-stable for identical inputs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::boolean_ops::{sample_pairs, sample_pearson, OpCode};
use crate::error::Error;
use crate::fault_tree::{
    evaluate_interval, evaluate_pbox, explain, fixtures, fmt_iv, parse_tree, sig4, ExplainMode, FaultTree,
};
use crate::interval::{apply_op_i, joint_i};
use crate::kernel::{c_and, RhoInterval, UnitInterval};
use crate::pbox::{cdf_bounds_at, to_csv, to_svg, PBox, DEFAULT_STEPS};

/// Threshold used for the pressure-tank requirement table.
const TANK_REQUIREMENT: f64 = 1e-4;
const GRID_RHOS: [f64; 6] = [-1.0, -0.8, -0.4, 0.4, 0.8, 1.0];
const GRID_POINTS: usize = 51;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Interval,
    Pbox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Csv,
    Json,
}

/// Evaluation settings shared by `eval`.
#[derive(Debug, Clone, Copy, PartialEq, clap::Args)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Mode::Interval)]
    pub mode: Mode,
    /// Quantile levels per p-box (at least 10 in p-box mode).
    #[arg(long = "steps", default_value_t = DEFAULT_STEPS)]
    pub n_steps: usize,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

impl RunConfig {
    fn validate(&self) -> Result<(), String> {
        if self.mode == Mode::Pbox && self.n_steps < 10 {
            return Err(format!("--steps must be at least 10 in p-box mode, got {}", self.n_steps));
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "unclogic", version, about = "Boolean operations on uncertain, correlated events")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a fault-tree file.
    Eval(EvalArgs),
    /// Apply one binary operation to interval probabilities.
    Gate(GateArgs),
    /// Write the bundled demonstration files.
    Demo(DemoArgs),
}

#[derive(Debug, clap::Args)]
struct EvalArgs {
    path: PathBuf,
    #[command(flatten)]
    config: RunConfig,
    /// Report bounds on P(top <= t) (p-box mode). In CSV output this replaces
    /// the per-node table.
    #[arg(long, allow_negative_numbers = true)]
    query: Option<f64>,
    /// Print every node, not just the top event (text output).
    #[arg(long)]
    explain: bool,
    /// Write the top-event p-box as CSV (p-box mode).
    #[arg(long, value_name = "PATH")]
    pbox_csv: Option<PathBuf>,
    /// Write the top-event p-box as an SVG band chart (p-box mode).
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
struct GateArgs {
    /// Operation name: `and`, `or`, `nand`, `nor`, `xor`, `equiv`,
    /// `implies_ab`, `implies_ba`, `inhibit_ab`, `inhibit_ba`, `not_a`, ...
    op: String,
    a_lo: f64,
    a_hi: f64,
    b_lo: f64,
    b_hi: f64,
    /// Correlation interval between the two events.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [0.0, 0.0])]
    rho: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Also draw this many correlated sample pairs and report the empirical
    /// frequency (point inputs only).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Demo {
    PressureTank,
    CopulaGrid,
}

#[derive(Debug, clap::Args)]
struct DemoArgs {
    #[arg(value_enum)]
    name: Demo,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Quantile levels for the p-box table.
    #[arg(long = "steps", default_value_t = DEFAULT_STEPS)]
    n_steps: usize,
}

enum Failure {
    Usage(String),
    Eval(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Eval(other.to_string()),
        }
    }
}

/// Runs the command line with `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a, out, err),
        Command::Gate(a) => cmd_gate(&a, out),
        Command::Demo(a) => cmd_demo(&a, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Eval(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn iv_json(iv: UnitInterval) -> serde_json::Value {
    json!({ "lo": iv.lo(), "hi": iv.hi() })
}

/// A point is shown as a single number, an interval as `[lo, hi]`.
fn fmt_value(iv: UnitInterval) -> String {
    if iv.lo() == iv.hi() {
        sig4(iv.lo())
    } else {
        fmt_iv(iv)
    }
}

fn load_tree(path: &Path, err: &mut dyn Write) -> Result<FaultTree, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    match parse_tree(&text) {
        Ok(t) => Ok(t),
        Err(Error::Parse(diags)) => {
            for d in &diags {
                let sep = if d.line > 0 { ":" } else { ": " };
                let _ = writeln!(err, "{}{sep}{d}", path.display());
            }
            Err(Failure::Usage(format!("{} could not be parsed", path.display())))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    a.config.validate().map_err(Failure::Usage)?;
    if a.config.mode == Mode::Interval && (a.query.is_some() || a.pbox_csv.is_some() || a.svg.is_some()) {
        return Err(Failure::Usage("--query, --pbox-csv and --svg need --mode pbox".into()));
    }
    let tree = load_tree(&a.path, err)?;
    match a.config.mode {
        Mode::Interval => eval_interval(a, &tree, out),
        Mode::Pbox => eval_pbox(a, &tree, out),
    }
}

fn eval_interval(a: &EvalArgs, tree: &FaultTree, out: &mut dyn Write) -> Result<(), Failure> {
    let report = explain(tree, ExplainMode::Interval)?;
    let top = evaluate_interval(tree)?;
    let text = match a.config.output {
        Output::Text if a.explain => report.to_text(),
        Output::Text => format!("{}  {}\n", tree.top, fmt_iv(top)),
        Output::Csv => report.to_csv(),
        Output::Json => {
            let doc = json!({
                "mode": "interval",
                "top": tree.top,
                "result": iv_json(top),
                "nodes": report.rows,
            });
            to_json(&doc)
        }
    };
    write_out(out, &text)
}

fn eval_pbox(a: &EvalArgs, tree: &FaultTree, out: &mut dyn Write) -> Result<(), Failure> {
    let steps = a.config.n_steps;
    let report = explain(tree, ExplainMode::PBox { steps })?;
    let top = evaluate_pbox(tree, steps)?;
    let query = a.query.map(|t| (t, cdf_bounds_at(&top, t)));
    let mut written = Vec::new();
    if let Some(path) = &a.pbox_csv {
        write_file(path, &to_csv(&top))?;
        written.push(path.display().to_string());
    }
    if let Some(path) = &a.svg {
        write_file(path, &to_svg(&top, &format!("{} ({} levels)", tree.top, steps)))?;
        written.push(path.display().to_string());
    }
    let text = match a.config.output {
        Output::Text => {
            let mut s = if a.explain { report.to_text() } else { pbox_summary(&tree.top, &top) };
            if let Some((t, cdf)) = query {
                let _ = writeln!(s, "P({} <= {t:e})  {}", tree.top, fmt_iv(cdf));
            }
            for w in &written {
                let _ = writeln!(s, "wrote {w}");
            }
            s
        }
        Output::Csv => match query {
            Some((t, cdf)) => format!("node,threshold,cdf_lo,cdf_hi\n{},{t},{},{}\n", tree.top, cdf.lo(), cdf.hi()),
            None => report.to_csv(),
        },
        Output::Json => {
            let doc = json!({
                "mode": "pbox",
                "steps": steps,
                "top": tree.top,
                "result": {
                    "support": iv_json(top.support()),
                    "mean": iv_json(top.mean()),
                },
                "query": query.map(|(t, cdf)| json!({ "threshold": t, "cdf": iv_json(cdf) })),
                "nodes": report.rows,
                "files": written,
            });
            to_json(&doc)
        }
    };
    write_out(out, &text)
}

fn pbox_summary(name: &str, x: &PBox) -> String {
    let mid = x.steps() / 2;
    format!(
        "{name}  p-box on {} levels\n  support {}\n  mean    {}\n  median  {}\n",
        x.steps(),
        fmt_iv(x.support()),
        fmt_iv(x.mean()),
        fmt_iv(UnitInterval::clamped(x.q_lo()[mid], x.q_hi()[mid])),
    )
}

fn to_json(doc: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialise");
    s.push('\n');
    s
}

fn cmd_gate(a: &GateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let op: OpCode = a.op.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let usage = |e: Error| Failure::Usage(e.to_string());
    let u = UnitInterval::new(a.a_lo, a.a_hi).map_err(usage)?;
    let v = UnitInterval::new(a.b_lo, a.b_hi).map_err(usage)?;
    let rho = RhoInterval::new(a.rho[0], a.rho[1]).map_err(usage)?;
    let result = apply_op_i(op, u, v, rho);
    let table = (op == OpCode::And).then(|| joint_i(u, v, rho));

    let sampled = match a.samples {
        None => None,
        Some(n) => {
            if u.width() > 0.0 || v.width() > 0.0 || !rho.is_point() {
                return Err(Failure::Usage("--samples needs point probabilities and a point correlation".into()));
            }
            let (x, y) = sample_pairs(u.lo(), v.lo(), rho.lo(), n, a.seed).map_err(usage)?;
            let tt = op.truth_table();
            let hits = x
                .bits()
                .iter()
                .zip(y.bits())
                .filter(|&(&p, &q)| {
                    tt[match (p, q) {
                        (true, true) => 0,
                        (true, false) => 1,
                        (false, true) => 2,
                        (false, false) => 3,
                    }]
                })
                .count();
            let r = sample_pearson(&x, &y).ok();
            Some((n, hits as f64 / n as f64, r))
        }
    };

    let text = match a.output {
        Output::Text => {
            let mut s = format!("{op}  {}\n", fmt_value(result));
            if let Some(t) = table {
                let cell = |iv: UnitInterval| format!("{:<22}", fmt_value(iv));
                let _ = writeln!(s, "\n{:<8}{}{}P(u)", "", cell_head("v = 0"), cell_head("v = 1"));
                let _ = writeln!(s, "{:<8}{}{}{}", "u = 0", cell(t.p00), cell(t.p01), fmt_value(u.complement()));
                let _ = writeln!(s, "{:<8}{}{}{}", "u = 1", cell(t.p10), cell(t.p11), fmt_value(u));
                let _ = writeln!(s, "{:<8}{}{}", "P(v)", cell(v.complement()), fmt_value(v));
            }
            if let Some((n, freq, r)) = sampled {
                let _ = writeln!(
                    s,
                    "\nsampled {n} pairs (seed {}): frequency {}, correlation {}",
                    a.seed,
                    sig4(freq),
                    r.map_or("undefined".to_string(), sig4)
                );
                if op == OpCode::And {
                    let _ = writeln!(s, "model P(a and b) {}", sig4(c_and(u.lo(), v.lo(), rho.lo())));
                }
            }
            s
        }
        Output::Csv => {
            let mut s = format!("quantity,lo,hi\n{op},{},{}\n", result.lo(), result.hi());
            if let Some(t) = table {
                for (name, iv) in ["p11", "p10", "p01", "p00"].iter().zip(t.cells()) {
                    let _ = writeln!(s, "{name},{},{}", iv.lo(), iv.hi());
                }
            }
            if let Some((_, freq, _)) = sampled {
                let _ = writeln!(s, "sampled,{freq},{freq}");
            }
            s
        }
        Output::Json => {
            let doc = json!({
                "op": op.name(),
                "a": iv_json(u),
                "b": iv_json(v),
                "rho": { "lo": rho.lo(), "hi": rho.hi() },
                "result": iv_json(result),
                "joint": table.map(|t| json!({
                    "p11": iv_json(t.p11),
                    "p10": iv_json(t.p10),
                    "p01": iv_json(t.p01),
                    "p00": iv_json(t.p00),
                })),
                "sampled": sampled.map(|(n, freq, r)| json!({
                    "samples": n,
                    "seed": a.seed,
                    "frequency": freq,
                    "correlation": r,
                })),
            });
            to_json(&doc)
        }
    };
    write_out(out, &text)
}

fn cell_head(s: &str) -> String {
    format!("{s:<22}")
}

fn cmd_demo(a: &DemoArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.n_steps < 10 {
        return Err(Failure::Usage(format!("--steps must be at least 10, got {}", a.n_steps)));
    }
    std::fs::create_dir_all(&a.out).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", a.out.display())))?;
    let files = match a.name {
        Demo::PressureTank => demo_pressure_tank(a.n_steps)?,
        Demo::CopulaGrid => demo_copula_grid()?,
    };
    let mut log = String::new();
    for (name, contents) in files {
        let path = a.out.join(name);
        write_file(&path, &contents)?;
        let _ = writeln!(log, "wrote {}", path.display());
    }
    write_out(out, &log)
}

/// The six fixtures plus `table5.csv` (top-event intervals) and `table6.csv`
/// (bounds on P(E1 <= 1e-4)).
fn demo_pressure_tank(steps: usize) -> Result<Vec<(String, String)>, Failure> {
    let mut files: Vec<(String, String)> = Vec::new();
    let mut table5 = String::from("case,lo,hi\n");
    let mut table6 = String::from("case,threshold,cdf_lo,cdf_hi\n");
    for (name, label, text) in fixtures::ALL {
        files.push((name.to_string(), text.to_string()));
        let tree = parse_tree(text)?;
        if name.contains("_interval_") {
            let r = evaluate_interval(&tree)?;
            let _ = writeln!(table5, "{label},{},{}", r.lo(), r.hi());
        } else {
            let cdf = cdf_bounds_at(&evaluate_pbox(&tree, steps)?, TANK_REQUIREMENT);
            let _ = writeln!(table6, "{label},{TANK_REQUIREMENT},{},{}", cdf.lo(), cdf.hi());
        }
    }
    files.push(("table5.csv".into(), table5));
    files.push(("table6.csv".into(), table6));
    Ok(files)
}

/// `C_rho(u, v)` on a 51 x 51 grid of `[0, 1]^2`, one long-format CSV per rho.
fn demo_copula_grid() -> Result<Vec<(String, String)>, Failure> {
    let step = 1.0 / (GRID_POINTS - 1) as f64;
    Ok(GRID_RHOS
        .iter()
        .map(|&r| {
            let mut s = String::from("u,v,c\n");
            for i in 0..GRID_POINTS {
                for j in 0..GRID_POINTS {
                    let (u, v) = (i as f64 * step, j as f64 * step);
                    let _ = writeln!(s, "{u},{v},{}", c_and(u, v, r));
                }
            }
            (format!("copula_grid_rho_{r}.csv"), s)
        })
        .collect())
}

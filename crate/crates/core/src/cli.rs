//! Command-line front end.
//!
//! Output is assembled in memory and written once, to stdout or `--out`.
//! Exit codes: 0 success, 1 a check failed, 2 bad configuration.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cyclo::{CoeffMode, CycNum, GenericCoeff};
use crate::error::{Error, Result};
use crate::ice::{
    asm_count_oracle, count_states, enumerate_states, exchange_strip, Flow, ht_asm_count_oracle, loop_tangle,
    state_to_asm, state_json, ybe_tangles, IceGraph, ModelKind, StripEnd, TangleSpec,
};
use crate::laurent::{Coefficient, EvalPoint, VarId};
use crate::partition::{
    a_value, partition_function, partition_value, transfer_matrix_partition, transfer_matrix_value, Convention,
};
use crate::verifier::{run_suite, CheckName, HtModel, SuiteConfig, SuiteModel};

#[derive(Debug, Parser)]
#[command(name = "square-ice", version, about = "Exact partition functions of square ice models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream the ice states of a model (with ASMs for dwbc).
    Enumerate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Symbolic partition function, or its value with --eval.
    Partition {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::GenericA)]
        mode: ModeArg,
        /// Point such as `all=1, x2=1+a, y1=-1/2`; generic-a also needs `a=`.
        #[arg(long)]
        eval: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run verification checks; exits 1 if any fails.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::GenericA)]
        mode: ModeArg,
        /// Comma-separated check names (default: all applicable).
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock times in the reports.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// State counts next to the independent matrix counts.
    Counts {
        #[arg(long, value_enum, default_value_t = ModelArg::Dwbc)]
        model: ModelArg,
        /// A range `a..b` (inclusive) or a list `1,3,4`.
        #[arg(long, default_value = "1..5")]
        sizes: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Dwbc)]
    pub model: ModelArg,
    /// dwbc: n×n grid; ht-even: order 2n; ht-odd: order 2n+1; tangle: strip width.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub size: u64,
    /// Which tangle for `--model tangle`.
    #[arg(long, value_enum, default_value_t = TangleArg::Loop)]
    pub tangle: TangleArg,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Dwbc,
    HtEven,
    HtOdd,
    Tangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    GenericA,
    Omega6,
}

impl From<ModeArg> for CoeffMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::GenericA => CoeffMode::GenericA,
            ModeArg::Omega6 => CoeffMode::Omega6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TangleArg {
    YbeLeft,
    YbeRight,
    Loop,
    StripLoop,
    StripOpen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Outcome of a run: text to emit and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// Parses arguments, runs, writes output, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out_path = match &cli.command {
        Command::Enumerate { output, .. }
        | Command::Partition { output, .. }
        | Command::Verify { output, .. }
        | Command::Counts { output, .. } => output.out.clone(),
    };
    match run(&cli.command) {
        Ok(o) => {
            let written = match out_path {
                Some(p) => std::fs::write(&p, &o.output).map_err(|e| format!("{}: {e}", p.display())),
                None => std::io::stdout().write_all(o.output.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => o.code,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn tangle_spec(t: TangleArg, width: usize) -> TangleSpec {
    let (x, y) = (VarId::aux(1), VarId::aux(2));
    match t {
        TangleArg::YbeLeft => ybe_tangles().0,
        TangleArg::YbeRight => ybe_tangles().1,
        TangleArg::Loop => loop_tangle(),
        TangleArg::StripLoop => exchange_strip(width, x, y, StripEnd::Loop),
        TangleArg::StripOpen => exchange_strip(width, x, y, StripEnd::Open),
    }
}

/// The graphs of a model: one for closed models, one per external
/// assignment for tangles.
fn graphs(m: &ModelArgs) -> Result<Vec<(IceGraph, Option<String>)>> {
    let n = m.size as usize;
    Ok(match m.model {
        ModelArg::Dwbc => vec![(crate::ice::dwbc(n)?, None)],
        ModelArg::HtEven => vec![(crate::ice::ht_even(n)?, None)],
        ModelArg::HtOdd => vec![(crate::ice::ht_odd(n)?, None)],
        ModelArg::Tangle => {
            let spec = tangle_spec(m.tangle, n);
            spec.external_assignments()
                .into_iter()
                .map(|f| {
                    let label = f.iter().map(|x| if *x == Flow::In { 'i' } else { 'o' }).collect();
                    Ok((crate::ice::build_tangle(&spec, &f)?, Some(label)))
                })
                .collect::<Result<_>>()?
        }
    })
}

fn render_json(v: &Value) -> String {
    serde_json::to_string(v).expect("plain data")
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Enumerate { model, output } => enumerate(model, output.format),
        Command::Partition { model, mode, eval, output } => {
            let point = eval.as_deref().map(str::parse::<EvalPoint>).transpose()?;
            partition(model, (*mode).into(), point, output.format)
        }
        Command::Verify { model, mode, checks, trials, seed, timing, output } => {
            let names = parse_checks(checks.as_deref())?;
            let suite_model = match model.model {
                ModelArg::Dwbc => SuiteModel::Dwbc,
                ModelArg::HtEven => SuiteModel::Ht(HtModel::Even),
                ModelArg::HtOdd => SuiteModel::Ht(HtModel::Odd),
                ModelArg::Tangle => SuiteModel::Tangle,
            };
            let cfg = SuiteConfig {
                model: suite_model,
                size: model.size as usize,
                mode: (*mode).into(),
                trials: *trials as usize,
                seed: *seed,
            };
            let reports = run_suite(&names, &cfg)?;
            let mut text = String::new();
            for r in &reports {
                match output.format {
                    Format::Json => writeln!(text, "{}", render_json(&r.to_json(*timing))),
                    Format::Text => writeln!(text, "{r}"),
                }
                .expect("string write");
            }
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
            Ok(Outcome { output: text, code })
        }
        Command::Counts { model, sizes, output } => counts(*model, &parse_sizes(sizes)?, output.format),
    }
}

/// Comma-separated check names, all validated before any work.
pub fn parse_checks(s: Option<&str>) -> Result<Vec<CheckName>> {
    match s {
        None => Ok(Vec::new()),
        Some(s) => s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(str::parse).collect(),
    }
}

/// `a..b` (inclusive) or `a,b,c`; sizes must be at least 1.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad size `{t}`")));
    let sizes = match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            (a..=b).collect::<Vec<_>>()
        }
        None => s.split(',').map(num).collect::<Result<_>>()?,
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::Parse(format!("sizes `{s}` must be a nonempty set of integers ≥ 1")));
    }
    Ok(sizes)
}

fn enumerate(m: &ModelArgs, format: Format) -> Result<Outcome> {
    let mut text = String::new();
    for (g, flows) in graphs(m)? {
        for s in enumerate_states(&g) {
            let asm = matches!(g.kind, ModelKind::Dwbc { .. }).then(|| state_to_asm(&g, &s)).transpose()?;
            match format {
                Format::Json => {
                    let mut v = state_json(&g, &s);
                    if let Some(a) = &asm {
                        v["asm"] = json!(a.rows());
                    }
                    if let Some(f) = &flows {
                        v["flows"] = json!(f);
                    }
                    writeln!(text, "{}", render_json(&v))
                }
                Format::Text => match &asm {
                    Some(a) => writeln!(text, "{a}"),
                    None => {
                        let heads: Vec<String> =
                            g.edges.iter().zip(&s.heads).map(|(e, h)| e.ends[*h as usize].0.to_string()).collect();
                        let f = flows.as_deref().map(|f| format!(" [{f}]")).unwrap_or_default();
                        writeln!(text, "{}{f} {}", g.kind.name(), heads.join(" "))
                    }
                },
            }
            .expect("string write");
        }
    }
    Ok(Outcome { output: text, code: 0 })
}

fn partition(m: &ModelArgs, mode: CoeffMode, point: Option<EvalPoint>, format: Format) -> Result<Outcome> {
    let mut text = String::new();
    for (g, flows) in graphs(m)? {
        let mut v = json!({
            "model": g.kind.name(),
            "n": g.kind.size(),
            "mode": mode,
        });
        if let Some(f) = flows {
            v["flows"] = json!(f);
        }
        let labels = g.split.as_ref().map(|s| s.labels.clone());
        match &point {
            Some(pt) => {
                let a = a_value(mode, pt)?;
                let (value, split, count) = evaluate(&g, pt, &a)?;
                v["value"] = json!(value);
                v["split"] = split.map_or(Value::Null, |[p, q]| json!({"or1": p, "or2": q}));
                v["state_count"] = json!(count);
            }
            None => {
                let body = match mode {
                    CoeffMode::GenericA => symbolic::<GenericCoeff>(&g)?,
                    CoeffMode::Omega6 => symbolic::<CycNum>(&g)?,
                };
                for (k, x) in body.as_object().expect("object") {
                    v[k] = x.clone();
                }
            }
        }
        if let Some(l) = labels {
            v["split_labels"] = json!({"or1": l[0], "or2": l[1]});
        }
        match format {
            Format::Json => writeln!(text, "{}", render_json(&v)),
            Format::Text => writeln!(text, "{}", partition_text(&v)),
        }
        .expect("string write");
    }
    Ok(Outcome { output: text, code: 0 })
}

type Evaluated = (CycNum, Option<[CycNum; 2]>, u64);

fn evaluate(g: &IceGraph, pt: &EvalPoint, a: &CycNum) -> Result<Evaluated> {
    if matches!(g.kind, ModelKind::Dwbc { .. }) {
        Ok((transfer_matrix_value(g, Convention::Standard, pt, a)?, None, count_states(g)))
    } else {
        let p = partition_value(g, Convention::Standard, pt, a)?;
        Ok((p.value, p.split, p.state_count))
    }
}

fn symbolic<C: Coefficient>(g: &IceGraph) -> Result<Value> {
    let to = |p: &crate::laurent::LaurentPoly<C>| serde_json::to_value(p).expect("plain data");
    if matches!(g.kind, ModelKind::Dwbc { .. }) {
        let z = transfer_matrix_partition::<C>(g, Convention::Standard)?;
        return Ok(json!({"Z": to(&z), "split": Value::Null, "state_count": count_states(g)}));
    }
    let p = partition_function::<C>(g, Convention::Standard);
    let split = p.split.as_ref().map_or(Value::Null, |[u, d]| json!({"or1": to(u), "or2": to(d)}));
    Ok(json!({"Z": to(&p.value), "split": split, "state_count": p.state_count}))
}

fn partition_text(v: &Value) -> String {
    let mut out = format!("{}({})", v["model"].as_str().unwrap_or(""), v["n"]);
    if let Some(f) = v.get("flows").and_then(Value::as_str) {
        write!(out, " flows {f}").expect("string write");
    }
    write!(out, ": {} states", v["state_count"]).expect("string write");
    let show = |x: &Value| -> String {
        if let (Some(p), Some(q)) = (x.get("p").and_then(Value::as_str), x.get("q").and_then(Value::as_str)) {
            return format!("{p} + ({q})a");
        }
        format!("{} terms", x["terms"].as_array().map_or(0, Vec::len))
    };
    let z = v.get("value").or_else(|| v.get("Z")).unwrap_or(&Value::Null);
    write!(out, "\n  Z = {}", show(z)).expect("string write");
    if let Some(s) = v.get("split").and_then(Value::as_object) {
        for key in ["or1", "or2"] {
            let label = v["split_labels"][key].as_str().unwrap_or(key);
            write!(out, "\n  Z{label} = {}", show(&s[key])).expect("string write");
        }
    }
    out
}

fn counts(model: ModelArg, sizes: &[usize], format: Format) -> Result<Outcome> {
    let mut text = String::new();
    let mut all_agree = true;
    for &n in sizes {
        let (g, oracle, order) = match model {
            ModelArg::Dwbc => (crate::ice::dwbc(n)?, asm_count_oracle(n), n),
            ModelArg::HtEven => (crate::ice::ht_even(n)?, ht_asm_count_oracle(2 * n) as u128, 2 * n),
            ModelArg::HtOdd => (crate::ice::ht_odd(n)?, ht_asm_count_oracle(2 * n + 1) as u128, 2 * n + 1),
            ModelArg::Tangle => return Err(Error::MalformedSpec("counts needs dwbc, ht-even or ht-odd".into())),
        };
        let states = count_states(&g) as u128;
        all_agree &= states == oracle;
        match format {
            Format::Json => writeln!(
                text,
                "{}",
                render_json(&json!({
                    "model": g.kind.name(),
                    "n": n,
                    "order": order,
                    "states": states.to_string(),
                    "oracle": oracle.to_string(),
                    "agree": states == oracle,
                }))
            ),
            Format::Text => writeln!(
                text,
                "{} n={n} order={order} states={states} oracle={oracle} {}",
                g.kind.name(),
                if states == oracle { "ok" } else { "MISMATCH" }
            ),
        }
        .expect("string write");
    }
    Ok(Outcome { output: text, code: if all_agree { 0 } else { 1 } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("square-ice").chain(args.iter().copied())).unwrap();
        run(&cli.command)
    }

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_sizes("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(parse_sizes("2,4").unwrap(), vec![2, 4]);
        assert!(parse_sizes("0..2").is_err());
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn unknown_check_rejected() {
        assert!(matches!(parse_checks(Some("theorem-main,bogus")), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn partition_all_ones() {
        let o = run_args(&["partition", "--model", "dwbc", "--size", "2", "--mode", "omega6", "--eval", "all=1"]).unwrap();
        let v: Value = serde_json::from_str(o.output.trim()).unwrap();
        assert_eq!(v["value"], json!({"p": "18", "q": "0"}));
        assert_eq!(v["state_count"], json!(2));
    }

    #[test]
    fn generic_eval_needs_a() {
        let e = run_args(&["partition", "--size", "2", "--eval", "all=1"]).unwrap_err();
        assert_eq!(e, Error::UnboundVariable("a".into()));
    }

    #[test]
    fn counts_table() {
        let o = run_args(&["counts", "--model", "dwbc", "--sizes", "1..5", "--format", "text"]).unwrap();
        assert_eq!(o.code, 0);
        let states: Vec<&str> = o.output.lines().map(|l| l.split_whitespace().nth(3).unwrap()).collect();
        assert_eq!(states, ["states=1", "states=2", "states=7", "states=42", "states=429"]);
    }
}

//! Executable checks of the model identities.
//!
//! Every check returns a [`CheckReport`]. A failing report always carries a
//! witness: the first differing monomial in canonical order for symbolic
//! comparisons, or the evaluation point for randomized ones.
//!
//! Randomized checks draw points `p + q·a` with `p, q ∈ [−4, 4]` from a
//! seeded ChaCha8 stream. Draws that are zero, or that repeat a value already
//! used for the same variable, are rejected and counted, so every variable
//! takes pairwise distinct values; the number of values must exceed the
//! variable's degree width (an a priori bound read off the graph), which is
//! what makes finitely many points conclusive for a Laurent polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclo::{CoeffMode, CycNum, GenericCoeff};
use crate::error::{Error, Result};
use crate::ice::{
    build_dwbc, build_ht_even, build_ht_odd, build_tangle, count_states, exchange_strip, ht_asm_count_oracle,
    loop_tangle, ybe_tangles, asm_count_oracle, Flow, IceGraph, ModelKind, StripEnd, TangleSpec,
};
use crate::laurent::{sigma_of, Coefficient, EvalPoint, LaurentPoly, TermDiff, VarId};
use crate::partition::{
    pair_ax_prefactor, pair_bax_prefactor, partition_function, partition_value, spec_factor_a, spec_factor_abar,
    spec_factor_ht, transfer_matrix_partition, transfer_matrix_value, Convention, HtFactor,
};

/// The convention selected by [`check_calibration`].
pub const CALIBRATED: Convention = Convention::Standard;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Symbolic,
    Random { trials: usize, seed: u64 },
}

impl Strategy {
    fn describe(&self, params: &mut BTreeMap<String, Value>) {
        match self {
            Strategy::Symbolic => {
                params.insert("strategy".into(), json!("symbolic"));
            }
            Strategy::Random { trials, seed } => {
                params.insert("strategy".into(), json!("random"));
                params.insert("trials".into(), json!(trials));
                params.insert("seed".into(), json!(seed));
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Evidence of a failed identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Monomial { context: String, monomial: String, left: String, right: String },
    Point { context: String, point: BTreeMap<String, String>, left: String, right: String },
}

impl Witness {
    fn monomial<C: Coefficient>(context: impl Into<String>, d: TermDiff<C>) -> Self {
        let mono: Vec<String> = d.exps.iter().filter(|(_, e)| *e != 0).map(|(v, e)| format!("{v}^{e}")).collect();
        Witness::Monomial {
            context: context.into(),
            monomial: if mono.is_empty() { "1".into() } else { mono.join("*") },
            left: d.left.to_string(),
            right: d.right.to_string(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Monomial { context, monomial, left, right } => {
                write!(f, "{context}: coefficient of {monomial} is {left} vs {right}")
            }
            Witness::Point { context, point, left, right } => {
                let p: Vec<String> = point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "{context}: at {} got {left} vs {right}", p.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One JSON line. Timing is omitted (`null`) unless requested, so that
    /// reports are reproducible byte for byte.
    pub fn to_json(&self, timing: bool) -> Value {
        json!({
            "check": self.check,
            "params": self.params,
            "verdict": self.verdict,
            "witness": self.witness,
            "notes": self.notes,
            "elapsed_ms": if timing { json!(self.elapsed.as_millis() as u64) } else { Value::Null },
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", v.to_string().trim_matches('"'))).collect();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({})", self.check, params.join(", "))?;
        for n in &self.notes {
            write!(f, "\n  {n}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

struct Report {
    name: String,
    params: BTreeMap<String, Value>,
    notes: Vec<String>,
    start: Instant,
}

impl Report {
    fn new(name: &str) -> Self {
        Report { name: name.into(), params: BTreeMap::new(), notes: Vec::new(), start: Instant::now() }
    }

    fn param(mut self, k: &str, v: impl Serialize) -> Self {
        self.params.insert(k.into(), serde_json::to_value(v).expect("plain data"));
        self
    }

    fn strategy(mut self, s: Strategy) -> Self {
        s.describe(&mut self.params);
        self
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, witness: Option<Witness>) -> CheckReport {
        CheckReport {
            check: self.name,
            params: self.params,
            verdict: if witness.is_some() { Verdict::Fail } else { Verdict::Pass },
            witness,
            notes: self.notes,
            elapsed: self.start.elapsed(),
        }
    }
}

fn compare<C: Coefficient>(context: impl Into<String>, lhs: &LaurentPoly<C>, rhs: &LaurentPoly<C>) -> Option<Witness> {
    lhs.compare(rhs).err().map(|d| Witness::monomial(context, d))
}

fn point_witness(context: impl Into<String>, pt: &EvalPoint, vars: &[VarId], a: Option<&CycNum>, l: &CycNum, r: &CycNum) -> Witness {
    let mut point: BTreeMap<String, String> =
        vars.iter().map(|v| (v.to_string(), pt.value(*v).map(|c| c.to_string()).unwrap_or_default())).collect();
    if let Some(a) = a {
        point.insert("a".into(), a.to_string());
    }
    Witness::Point { context: context.into(), point, left: l.to_string(), right: r.to_string() }
}

/// Seeded sampler of exact evaluation points.
pub struct PointSampler {
    rng: ChaCha8Rng,
    pub rejections: u64,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), rejections: 0 }
    }

    fn draw(&mut self) -> CycNum {
        CycNum::from_ints(self.rng.gen_range(-4..=4), self.rng.gen_range(-4..=4))
    }

    /// `count` pairwise distinct nonzero values.
    pub fn distinct(&mut self, count: usize) -> Result<Vec<CycNum>> {
        if count > 80 {
            return Err(Error::SizeMismatch(format!("at most 80 distinct sample values, asked for {count}")));
        }
        let mut out: Vec<CycNum> = Vec::with_capacity(count);
        while out.len() < count {
            let c = self.draw();
            if c.is_zero() || out.contains(&c) {
                self.rejections += 1;
            } else {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// `trials` points; each variable runs through distinct values.
    pub fn points(&mut self, vars: &[VarId], trials: usize) -> Result<Vec<EvalPoint>> {
        let columns: Vec<Vec<CycNum>> = vars.iter().map(|_| self.distinct(trials)).collect::<Result<_>>()?;
        (0..trials)
            .map(|t| {
                let mut pt = EvalPoint::new();
                for (v, col) in vars.iter().zip(&columns) {
                    pt.set(*v, col[t].clone())?;
                }
                Ok(pt)
            })
            .collect()
    }
}

/// Upper bound on the width (max − min exponent) of a partition function
/// in `v`: every weighted vertex involving `v` contributes at most ±1.
pub fn degree_width_bound(g: &IceGraph, v: VarId) -> usize {
    2 * g
        .vertices
        .iter()
        .filter(|x| x.weighted && (x.param.row == Some(v)) != (x.param.col == Some(v)))
        .count()
}

fn ensure_enough_points(g: &IceGraph, vars: &[VarId], trials: usize) -> Result<()> {
    for v in vars {
        let w = degree_width_bound(g, *v);
        if trials <= w {
            return Err(Error::SizeMismatch(format!("{trials} points do not exceed the width bound {w} in {v}")));
        }
    }
    Ok(())
}

fn numeric_z(g: &IceGraph, pt: &EvalPoint, a: &CycNum) -> Result<CycNum> {
    if matches!(g.kind, ModelKind::Dwbc { .. }) {
        transfer_matrix_value(g, CALIBRATED, pt, a)
    } else {
        Ok(partition_value(g, CALIBRATED, pt, a)?.value)
    }
}

fn symbolic_z<C: Coefficient>(g: &IceGraph) -> LaurentPoly<C> {
    if matches!(g.kind, ModelKind::Dwbc { .. }) {
        transfer_matrix_partition(g, CALIBRATED).expect("dwbc grid")
    } else {
        partition_function(g, CALIBRATED).value
    }
}

macro_rules! by_mode {
    ($mode:expr, $f:ident ( $($arg:expr),* )) => {
        match $mode {
            CoeffMode::GenericA => $f::<GenericCoeff>($($arg),*),
            CoeffMode::Omega6 => $f::<CycNum>($($arg),*),
        }
    };
}

/// Invariance of the partition function of `g` under each transposition.
pub fn check_transpositions(
    name: &str,
    g: &IceGraph,
    mode: CoeffMode,
    pairs: &[(VarId, VarId)],
    strategy: Strategy,
) -> Result<CheckReport> {
    let report = Report::new(name).param("model", g.kind.name()).param("n", g.kind.size()).param("mode", mode).strategy(strategy);
    let pairs_txt: Vec<String> = pairs.iter().map(|(u, v)| format!("{u}<->{v}")).collect();
    let report = report.param("transpositions", pairs_txt);
    match strategy {
        Strategy::Symbolic => Ok(by_mode!(mode, symmetric_symbolic(report, g, pairs))),
        Strategy::Random { trials, seed } => symmetric_random(report, g, mode, pairs, trials, seed),
    }
}

fn symmetric_symbolic<C: Coefficient>(report: Report, g: &IceGraph, pairs: &[(VarId, VarId)]) -> CheckReport {
    let z = symbolic_z::<C>(g);
    for &(u, v) in pairs {
        let swapped = z.swap(u, v).expect("graph variables");
        if let Some(w) = compare(format!("swap {u}<->{v}"), &z, &swapped) {
            return report.finish(Some(w));
        }
    }
    report.finish(None)
}

fn symmetric_random(
    mut report: Report,
    g: &IceGraph,
    mode: CoeffMode,
    pairs: &[(VarId, VarId)],
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    let vars = g.variables();
    ensure_enough_points(g, &vars, trials)?;
    let mut sampler = PointSampler::new(seed);
    let a_values = match mode {
        CoeffMode::Omega6 => vec![CycNum::a(); trials],
        CoeffMode::GenericA => sampler.distinct(trials)?,
    };
    for &(u, v) in pairs {
        let points = sampler.points(&vars, trials)?;
        for (pt, a) in points.iter().zip(&a_values) {
            let l = numeric_z(g, pt, a)?;
            let r = numeric_z(g, &pt.swapped(u, v)?, a)?;
            if l != r {
                let a_shown = (mode == CoeffMode::GenericA).then_some(a);
                let w = point_witness(format!("swap {u}<->{v}"), pt, &vars, a_shown, &l, &r);
                report.note(format!("rejected draws: {}", sampler.rejections));
                return Ok(report.finish(Some(w)));
            }
        }
    }
    report.note(format!("rejected draws: {}", sampler.rejections));
    Ok(report.finish(None))
}

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::SizeMismatch(msg.into()))
    }
}

/// Symmetry of `Z(n)` within `{x_i}` and within `{y_j}`.
pub fn check_partial_symmetry(n: usize, mode: CoeffMode) -> Result<CheckReport> {
    need(n >= 2, "partial symmetry needs n ≥ 2")?;
    let g = build_dwbc(n, &VarId::xs(n), &VarId::ys(n))?;
    let mut pairs: Vec<(VarId, VarId)> = (1..n as u32).map(|i| (VarId::x(i), VarId::x(i + 1))).collect();
    pairs.extend((1..n as u32).map(|i| (VarId::y(i), VarId::y(i + 1))));
    check_transpositions("partial-symmetry", &g, mode, &pairs, Strategy::Symbolic)
}

/// Adjacent transpositions of `x1..xn, y1..yn` (in that order), which
/// generate the symmetric group on all `2n` variables.
pub fn full_generators(n: usize) -> Vec<(VarId, VarId)> {
    let all: Vec<VarId> = VarId::xs(n).into_iter().chain(VarId::ys(n)).collect();
    all.windows(2).map(|w| (w[0], w[1])).collect()
}

/// Full symmetry of `Z(n)` at `a = ω6`. Runs in Omega6 mode; `mode` exists so
/// that the failure in generic mode can be demonstrated.
pub fn check_theorem_main(n: usize, mode: CoeffMode, strategy: Strategy) -> Result<CheckReport> {
    need(n >= 1, "size must be at least 1")?;
    let g = build_dwbc(n, &VarId::xs(n), &VarId::ys(n))?;
    check_transpositions("theorem-main", &g, mode, &full_generators(n), strategy)
}

fn parity_of(k: usize) -> crate::laurent::Parity {
    if k.is_multiple_of(2) {
        crate::laurent::Parity::Even
    } else {
        crate::laurent::Parity::Odd
    }
}

fn shape_witness<C: Coefficient>(
    context: String,
    z: &LaurentPoly<C>,
    v: VarId,
    half_width: usize,
) -> Option<Witness> {
    let shape = match z.parity_and_centered(v) {
        Ok(s) => s,
        Err(e) => {
            return Some(Witness::Monomial { context, monomial: v.to_string(), left: e.to_string(), right: String::new() })
        }
    };
    let want = parity_of(half_width);
    if shape.centered && shape.max == half_width as i32 && shape.parity == want {
        return None;
    }
    Some(Witness::Monomial {
        context,
        monomial: v.to_string(),
        left: format!("degrees {}..{} ({:?})", shape.min, shape.max, shape.parity),
        right: format!("degrees -{half_width}..{half_width} ({want:?})"),
    })
}

/// Each variable of `Z(n)` occurs with exponents in `−(n−1)..(n−1)`, both
/// ends attained, all of the parity of `n − 1`.
pub fn check_half_width(n: usize, mode: CoeffMode) -> Result<CheckReport> {
    need(n >= 1, "size must be at least 1")?;
    let report = Report::new("half-width").param("model", "dwbc").param("n", n).param("mode", mode);
    Ok(by_mode!(mode, half_width_impl(report, n)))
}

fn half_width_impl<C: Coefficient>(report: Report, n: usize) -> CheckReport {
    let g = build_dwbc(n, &VarId::xs(n), &VarId::ys(n)).expect("n ≥ 1");
    let z = symbolic_z::<C>(&g);
    for v in VarId::xs(n).into_iter().chain(VarId::ys(n)) {
        if let Some(w) = shape_witness(format!("Z({n}) in {v}"), &z, v, n - 1) {
            return report.finish(Some(w));
        }
    }
    report.finish(None)
}

/// Half-widths in `y` of the split half-turn functions: `N − 1` for `↑` and
/// `↖`, `N` for `↓` and `↘`, each with the parity of its half-width.
pub fn check_half_width_ht(model: HtModel, n: usize) -> Result<CheckReport> {
    need(n >= 1, "size must be at least 1")?;
    let report = Report::new("half-width-ht").param("model", model.name()).param("n", n).param("mode", CoeffMode::GenericA);
    let g = model.build(n)?;
    let part = partition_function::<GenericCoeff>(&g, CALIBRATED);
    let labels = part.split_labels.clone().expect("half-turn graphs are split");
    let parts = part.split.expect("half-turn graphs are split");
    let y = VarId::aux(2);
    for (i, (label, z)) in labels.iter().zip(&parts).enumerate() {
        let want = if i == 0 { n - 1 } else { n };
        if let Some(w) = shape_witness(format!("Z{label} of {}({n}) in y", model.name()), z, y, want) {
            return Ok(report.finish(Some(w)));
        }
    }
    Ok(report.finish(None))
}

/// Which way the domain-wall recursion's prefactors are attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefactors {
    AsStated,
    Swapped,
}

/// `Z(n; x₁ = ā y₁) = Ā·Z(n−1)` and `Z(n; x₁ = a y₁) = A·Z(n−1)`, with
/// `Z(n−1)` on `x2..xn, y2..yn`.
pub fn check_specialization_dwbc(n: usize) -> Result<CheckReport> {
    check_specialization_dwbc_with(n, CALIBRATED, Prefactors::AsStated)
}

pub fn check_specialization_dwbc_with(n: usize, conv: Convention, pre: Prefactors) -> Result<CheckReport> {
    need(n >= 2, "the recursion needs n ≥ 2")?;
    let mut report = Report::new("specialization-dwbc").param("n", n).param("mode", CoeffMode::GenericA);
    if conv != CALIBRATED {
        report = report.param("convention", conv);
    }
    if pre == Prefactors::Swapped {
        report = report.param("prefactors", "swapped");
    }
    let (xs, ys) = (VarId::xs(n), VarId::ys(n));
    let z = transfer_matrix_partition::<GenericCoeff>(&build_dwbc(n, &xs, &ys)?, conv)?;
    let smaller = transfer_matrix_partition::<GenericCoeff>(&build_dwbc(n - 1, &xs[1..], &ys[1..])?, conv)?;
    let (mut fa, mut fabar) = (spec_factor_a(&xs, &ys)?, spec_factor_abar(&xs, &ys)?);
    if pre == Prefactors::Swapped {
        std::mem::swap(&mut fa, &mut fabar);
    }
    let y1 = LaurentPoly::<GenericCoeff>::var(ys[0]);
    for (label, a_exp, factor) in [("x1 = a^-1 y1", -1, &fabar), ("x1 = a y1", 1, &fa)] {
        let lhs = z.substitute_monomial(xs[0], &(&LaurentPoly::a_pow(a_exp) * &y1))?;
        let rhs = factor * &smaller;
        if let Some(w) = compare(label, &lhs, &rhs) {
            return Ok(report.finish(Some(w)));
        }
    }
    Ok(report.finish(None))
}

/// Sum over internal states of a tangle with fixed external flows.
pub fn tangle_value<C: Coefficient>(spec: &TangleSpec, flows: &[Flow], conv: Convention) -> Result<LaurentPoly<C>> {
    Ok(partition_function::<C>(&build_tangle(spec, flows)?, conv).value)
}

fn flows_label(flows: &[Flow]) -> String {
    flows.iter().map(|f| if *f == Flow::In { 'i' } else { 'o' }).collect()
}

/// Whether the spectral constraint `xyz = ā` is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbeConstraint {
    Imposed,
    Dropped,
}

/// The two three-crossing tangles agree for every external assignment once
/// `z = ā x̄ ȳ`.
pub fn check_yang_baxter(mode: CoeffMode, strategy: Strategy) -> Result<CheckReport> {
    check_yang_baxter_with(mode, strategy, YbeConstraint::Imposed)
}

pub fn check_yang_baxter_with(mode: CoeffMode, strategy: Strategy, constraint: YbeConstraint) -> Result<CheckReport> {
    let mut report = Report::new("yang-baxter").param("mode", mode).strategy(strategy);
    if constraint == YbeConstraint::Dropped {
        report = report.param("constraint", "dropped");
    }
    by_mode!(mode, ybe_impl(report, strategy, constraint))
}

fn ybe_impl<C: Coefficient>(mut report: Report, strategy: Strategy, constraint: YbeConstraint) -> Result<CheckReport> {
    let (left, right) = ybe_tangles();
    let (x, y, z) = (VarId::aux(1), VarId::aux(2), VarId::aux(3));
    let zsub = LaurentPoly::<C>::a_pow(-1) * LaurentPoly::monomial(&[(x, -1), (y, -1)]);
    let mut points = Vec::new();
    let mut sampler = PointSampler::new(match strategy {
        Strategy::Random { seed, .. } => seed,
        Strategy::Symbolic => 0,
    });
    if let Strategy::Random { trials, .. } = strategy {
        let xs = sampler.distinct(trials)?;
        let ys = sampler.distinct(trials)?;
        let zs_free = sampler.distinct(trials)?;
        let a_vals = match C::MODE {
            CoeffMode::Omega6 => vec![CycNum::a(); trials],
            CoeffMode::GenericA => sampler.distinct(trials)?,
        };
        for i in 0..trials {
            let zv = match constraint {
                YbeConstraint::Imposed => (&a_vals[i] * &(&xs[i] * &ys[i])).inv()?,
                YbeConstraint::Dropped => zs_free[i].clone(),
            };
            let pt = EvalPoint::new().with(x, xs[i].clone())?.with(y, ys[i].clone())?.with(z, zv)?.with_a(a_vals[i].clone())?;
            points.push((pt, a_vals[i].clone()));
        }
    }
    let mut nonzero = 0;
    for flows in left.external_assignments() {
        let l = tangle_value::<C>(&left, &flows, CALIBRATED)?;
        let r = tangle_value::<C>(&right, &flows, CALIBRATED)?;
        if !l.is_zero() || !r.is_zero() {
            nonzero += 1;
        }
        let context = format!("external flows {}", flows_label(&flows));
        match strategy {
            Strategy::Symbolic => {
                let (l, r) = match constraint {
                    YbeConstraint::Imposed => (l.substitute_monomial(z, &zsub)?, r.substitute_monomial(z, &zsub)?),
                    YbeConstraint::Dropped => (l, r),
                };
                if let Some(w) = compare(context, &l, &r) {
                    return Ok(report.finish(Some(w)));
                }
            }
            Strategy::Random { .. } => {
                for (pt, a) in &points {
                    let (lv, rv) = (l.evaluate(pt)?, r.evaluate(pt)?);
                    if lv != rv {
                        let shown = (C::MODE == CoeffMode::GenericA).then_some(a);
                        return Ok(report.finish(Some(point_witness(context, pt, &[x, y, z], shown, &lv, &rv))));
                    }
                }
            }
        }
    }
    report.note(format!("{nonzero} of 64 external assignments admit states"));
    if matches!(strategy, Strategy::Random { .. }) {
        report.note(format!("rejected draws: {}", sampler.rejections));
    }
    Ok(report.finish(None))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopFactor {
    /// `σ(az) + σ(a²)`.
    Full,
    /// `σ(az)` alone.
    CrossingOnly,
}

/// A crossing closed by a U-turn equals `σ(az) + σ(a²)` times the plain
/// U-turn (nonzero exactly when the two free ends have opposite flows).
pub fn check_loop_identity(strategy: Strategy) -> Result<CheckReport> {
    check_loop_identity_with(strategy, LoopFactor::Full)
}

pub fn check_loop_identity_with(strategy: Strategy, factor: LoopFactor) -> Result<CheckReport> {
    let mut report = Report::new("loop-identity").param("mode", CoeffMode::GenericA).strategy(strategy);
    if factor == LoopFactor::CrossingOnly {
        report = report.param("factor", "crossing-only");
    }
    let spec = loop_tangle();
    let z = VarId::aux(3);
    let mut f = sigma_of::<GenericCoeff>(1, &[(z, 1)]);
    if factor == LoopFactor::Full {
        f = &f + &sigma_of(2, &[]);
    }
    let mut sampler = PointSampler::new(match strategy {
        Strategy::Random { seed, .. } => seed,
        Strategy::Symbolic => 0,
    });
    for flows in spec.external_assignments() {
        let lhs = tangle_value::<GenericCoeff>(&spec, &flows, CALIBRATED)?;
        let rhs = if flows[0] != flows[1] { f.clone() } else { LaurentPoly::zero() };
        let context = format!("external flows {}", flows_label(&flows));
        match strategy {
            Strategy::Symbolic => {
                if let Some(w) = compare(context, &lhs, &rhs) {
                    return Ok(report.finish(Some(w)));
                }
            }
            Strategy::Random { trials, .. } => {
                let zs = sampler.distinct(trials)?;
                let az = sampler.distinct(trials)?;
                for (zv, av) in zs.into_iter().zip(az) {
                    let pt = EvalPoint::new().with(z, zv)?.with_a(av.clone())?;
                    let (l, r) = (lhs.evaluate(&pt)?, rhs.evaluate(&pt)?);
                    if l != r {
                        return Ok(report.finish(Some(point_witness(context, &pt, &[z], Some(&av), &l, &r))));
                    }
                }
            }
        }
    }
    Ok(report.finish(None))
}

/// Coefficient placement in the open-strip exchange identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeCoefficients {
    AsStated,
    /// `σ(x ȳ)` and `σ(a²)` exchanged in the first open-strip identity.
    SwappedInFirst,
}

/// The three exchange identities for two adjacent rows of width `w`, after
/// multiplying through by `σ(a² y x̄)`:
///
/// * closed by a U-turn: `σ(a²yx̄)·L(x,y) = (σ(a²) + σ(xȳ))·L(y,x)`;
/// * open, upper end out and lower end in:
///   `σ(a²yx̄)·L(x,y; o,i) = σ(xȳ)·L(y,x; i,o) + σ(a²)·L(y,x; o,i)`;
/// * the same with the two right ends exchanged.
///
/// Left ends point in; all assignments of the column ends are checked.
pub fn check_exchange_loop(w: usize) -> Result<CheckReport> {
    check_exchange_loop_with(w, ExchangeCoefficients::AsStated)
}

pub fn check_exchange_loop_with(w: usize, coeffs: ExchangeCoefficients) -> Result<CheckReport> {
    need(w >= 1, "strip width must be at least 1")?;
    let mut report = Report::new("exchange-loop").param("width", w).param("mode", CoeffMode::GenericA);
    if coeffs == ExchangeCoefficients::SwappedInFirst {
        report = report.param("coefficients", "swapped");
    }
    let (x, y) = (VarId::aux(1), VarId::aux(2));
    let clear = sigma_of::<GenericCoeff>(2, &[(y, 1), (x, -1)]);
    let s_xy = sigma_of::<GenericCoeff>(0, &[(x, 1), (y, -1)]);
    let s_a2 = sigma_of::<GenericCoeff>(2, &[]);
    let loop_xy = exchange_strip(w, x, y, StripEnd::Loop);
    let loop_yx = exchange_strip(w, y, x, StripEnd::Loop);
    let open_xy = exchange_strip(w, x, y, StripEnd::Open);
    let open_yx = exchange_strip(w, y, x, StripEnd::Open);
    let (o, i) = (Flow::Out, Flow::In);
    for mask in 0..1usize << (2 * w) {
        let cols: Vec<Flow> = (0..2 * w).map(|k| if mask >> k & 1 == 0 { i } else { o }).collect();
        let with = |ends: &[Flow]| -> Vec<Flow> { [i, i].iter().chain(&cols).chain(ends).copied().collect() };
        let cols_label = flows_label(&cols);

        let lhs = &clear * &tangle_value::<GenericCoeff>(&loop_xy, &with(&[]), CALIBRATED)?;
        let rhs = &(&s_a2 + &s_xy) * &tangle_value::<GenericCoeff>(&loop_yx, &with(&[]), CALIBRATED)?;
        if let Some(wit) = compare(format!("closed strip, column ends {cols_label}"), &lhs, &rhs) {
            return Ok(report.finish(Some(wit)));
        }

        // right ends listed as (lower, upper)
        for (case, lower, upper) in [("upper out, lower in", i, o), ("upper in, lower out", o, i)] {
            let (mut c_cross, mut c_keep) = (&s_xy, &s_a2);
            if coeffs == ExchangeCoefficients::SwappedInFirst && upper == o {
                std::mem::swap(&mut c_cross, &mut c_keep);
            }
            let lhs = &clear * &tangle_value::<GenericCoeff>(&open_xy, &with(&[lower, upper]), CALIBRATED)?;
            let rhs = &(c_cross * &tangle_value::<GenericCoeff>(&open_yx, &with(&[upper, lower]), CALIBRATED)?)
                + &(c_keep * &tangle_value::<GenericCoeff>(&open_yx, &with(&[lower, upper]), CALIBRATED)?);
            if let Some(wit) = compare(format!("open strip, {case}, column ends {cols_label}"), &lhs, &rhs) {
                return Ok(report.finish(Some(wit)));
            }
        }
    }
    Ok(report.finish(None))
}

/// Which half-turn family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HtModel {
    Even,
    Odd,
}

impl HtModel {
    pub fn name(self) -> &'static str {
        match self {
            HtModel::Even => "ht-even",
            HtModel::Odd => "ht-odd",
        }
    }

    pub fn build(self, n: usize) -> Result<IceGraph> {
        match self {
            HtModel::Even => crate::ice::ht_even(n),
            HtModel::Odd => crate::ice::ht_odd(n),
        }
    }
}

/// `σ(a²yx̄)·Z⋆(x,y) = σ(a²)·Z⋆(y,x) + σ(xȳ)·Z□(y,x)` for the even half-turn
/// model of order `2n`, with `(⋆, □) = (↑, ↓)` and `(↓, ↑)`.
pub fn check_pseudo_sym(n: usize) -> Result<CheckReport> {
    need(n >= 1, "size must be at least 1")?;
    let report = Report::new("pseudo-sym").param("model", "ht-even").param("n", n).param("mode", CoeffMode::GenericA);
    let (x, y) = (VarId::aux(1), VarId::aux(2));
    let part = partition_function::<GenericCoeff>(&crate::ice::ht_even(n)?, CALIBRATED);
    let [up, down] = part.split.expect("split graph");
    let clear = sigma_of::<GenericCoeff>(2, &[(y, 1), (x, -1)]);
    let s_xy = sigma_of::<GenericCoeff>(0, &[(x, 1), (y, -1)]);
    let s_a2 = sigma_of::<GenericCoeff>(2, &[]);
    for (star, box_, labels) in [(&up, &down, "↑/↓"), (&down, &up, "↓/↑")] {
        let lhs = &clear * star;
        let rhs = &(&s_a2 * &star.swap(x, y)?) + &(&s_xy * &box_.swap(x, y)?);
        if let Some(w) = compare(format!("pair {labels}"), &lhs, &rhs) {
            return Ok(report.finish(Some(w)));
        }
    }
    Ok(report.finish(None))
}

/// How the split parts of the two sides of a half-turn specialization are
/// matched. `Straight` pairs `↖` with `↑` and `↘` with `↓`; `Crossed` pairs
/// `↖` with `↓` and `↘` with `↑`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HtPairing {
    Straight,
    Crossed,
}

impl HtPairing {
    pub const ALL: [HtPairing; 2] = [HtPairing::Straight, HtPairing::Crossed];

    fn other(self, i: usize) -> usize {
        match self {
            HtPairing::Straight => i,
            HtPairing::Crossed => 1 - i,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            HtPairing::Straight => "↖=↑, ↘=↓",
            HtPairing::Crossed => "↖=↓, ↘=↑",
        }
    }
}

/// The four half-turn specialization identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HtEquation {
    /// odd at `y = a x₁` against even.
    ImpairAx,
    /// odd at `y = ā x₁` against even.
    ImpairBax,
    /// even at `y = a y₁` against odd of one size less.
    PairAx,
    /// even at `x = ā y₁` against odd of one size less.
    PairBax,
}

impl HtEquation {
    pub const ALL: [HtEquation; 4] = [HtEquation::ImpairAx, HtEquation::ImpairBax, HtEquation::PairAx, HtEquation::PairBax];

    pub fn name(self) -> &'static str {
        match self {
            HtEquation::ImpairAx => "impair-ax",
            HtEquation::ImpairBax => "impair-bax",
            HtEquation::PairAx => "pair-ax",
            HtEquation::PairBax => "pair-bax",
        }
    }

    /// The pairing selected by calibration.
    pub fn pinned_pairing(self) -> HtPairing {
        match self {
            HtEquation::ImpairAx => HtPairing::Straight,
            HtEquation::ImpairBax => HtPairing::Crossed,
            HtEquation::PairAx => HtPairing::Crossed,
            HtEquation::PairBax => HtPairing::Straight,
        }
    }
}

/// Both sides of one identity, split parts in `[or1, or2]` order, with the
/// right-hand side's prefactor already applied. For the odd→even equations
/// the left side is odd; for the even→odd ones the left side is even. Parts
/// of the odd side are indexed `[↖, ↘]`, of the even side `[↑, ↓]`.
struct HtSides {
    lhs: [LaurentPoly<GenericCoeff>; 2],
    rhs: [LaurentPoly<GenericCoeff>; 2],
    odd_on_left: bool,
}

fn ht_sides(eq: HtEquation, n: usize, conv: Convention) -> Result<HtSides> {
    type P = LaurentPoly<GenericCoeff>;
    let (x, y) = (VarId::aux(1), VarId::aux(2));
    let xs = VarId::xs(n);
    let ys = VarId::ys(n);
    let parts = |g: IceGraph| -> [P; 2] { partition_function::<GenericCoeff>(&g, conv).split.expect("split graph") };
    let scaled = |f: &P, p: [P; 2]| p.map(|q| f * &q);
    Ok(match eq {
        HtEquation::ImpairAx | HtEquation::ImpairBax => {
            let odd = parts(build_ht_odd(n, &xs, x, y, &ys)?);
            let (a_exp, kind, even_x, even_y) = if eq == HtEquation::ImpairAx {
                (1, HtFactor::AH1, xs[0], x)
            } else {
                (-1, HtFactor::AbarH1, x, xs[0])
            };
            let sub = P::a_pow(a_exp) * P::var(xs[0]);
            let lhs = odd.map(|p| p.substitute_monomial(y, &sub).expect("unit substitution"));
            let even = parts(build_ht_even(n, &xs[1..], even_x, even_y, &ys)?);
            let f = spec_factor_ht::<GenericCoeff>(kind, &xs, &ys)?;
            HtSides { lhs, rhs: scaled(&f, even), odd_on_left: true }
        }
        HtEquation::PairAx | HtEquation::PairBax => {
            need(n >= 1, "size must be at least 1")?;
            let even = parts(build_ht_even(n, &xs[..n - 1], x, y, &ys)?);
            let y1 = ys[0];
            let (target, a_exp, odd_x, pre, kind) = if eq == HtEquation::PairAx {
                (y, 1, x, pair_ax_prefactor::<GenericCoeff>(x, y1), HtFactor::AH0)
            } else {
                (x, -1, y, pair_bax_prefactor::<GenericCoeff>(y1, y), HtFactor::AbarH0)
            };
            let sub = P::a_pow(a_exp) * P::var(y1);
            let lhs = even.map(|p| p.substitute_monomial(target, &sub).expect("unit substitution"));
            let odd = parts(build_ht_odd(n - 1, &xs[..n - 1], odd_x, y1, &ys[1..])?);
            let f = &pre * &spec_factor_ht::<GenericCoeff>(kind, &xs[..n - 1], &ys)?;
            HtSides { lhs, rhs: scaled(&f, odd), odd_on_left: false }
        }
    })
}

fn ht_pairing_witness(eq: HtEquation, n: usize, sides: &HtSides, pairing: HtPairing) -> Option<Witness> {
    let (odd_labels, even_labels) = (["↖", "↘"], ["↑", "↓"]);
    for i in 0..2 {
        let j = pairing.other(i);
        let label = if sides.odd_on_left {
            format!("{} N={n}: {} vs {}", eq.name(), odd_labels[i], even_labels[j])
        } else {
            format!("{} N={n}: {} vs {}", eq.name(), even_labels[i], odd_labels[j])
        };
        if let Some(w) = compare(label, &sides.lhs[i], &sides.rhs[j]) {
            return Some(w);
        }
    }
    None
}

/// The pairings (if any) under which an identity holds.
pub fn valid_ht_pairings(eq: HtEquation, n: usize, conv: Convention) -> Result<Vec<HtPairing>> {
    let sides = ht_sides(eq, n, conv)?;
    Ok(HtPairing::ALL.into_iter().filter(|p| ht_pairing_witness(eq, n, &sides, *p).is_none()).collect())
}

/// All four half-turn specializations at size `n`, with the pinned pairings.
pub fn check_specialization_ht(n: usize) -> Result<CheckReport> {
    check_specialization_ht_with(n, CALIBRATED, HtEquation::ALL.map(HtEquation::pinned_pairing))
}

pub fn check_specialization_ht_with(n: usize, conv: Convention, pairings: [HtPairing; 4]) -> Result<CheckReport> {
    need(n >= 1, "size must be at least 1")?;
    let mut report = Report::new("specialization-ht").param("n", n).param("mode", CoeffMode::GenericA);
    if conv != CALIBRATED {
        report = report.param("convention", conv);
    }
    for (eq, p) in HtEquation::ALL.into_iter().zip(pairings) {
        report.note(format!("{}: {}", eq.name(), p.describe()));
        let sides = ht_sides(eq, n, conv)?;
        if let Some(w) = ht_pairing_witness(eq, n, &sides, p) {
            return Ok(report.finish(Some(w)));
        }
    }
    Ok(report.finish(None))
}

/// Symmetry of the half-turn partition function at `a = ω6`.
///
/// Odd order `2n+1`: in the `2n` variables `x1..xn, y1..yn` (with `x`, `y`
/// free). Even order `2n`: with both central rows set to `xn`
/// (`equal_central`), in `x1..xn, y1..yn`; with `equal_central = false` the
/// rows keep distinct `x`, `y`, and `x` takes the place of `xn` among the
/// permuted variables; this fails, showing the hypothesis is needed.
pub fn check_theorem_ht(model: HtModel, n: usize, mode: CoeffMode, strategy: Strategy) -> Result<CheckReport> {
    check_theorem_ht_with(model, n, mode, strategy, true)
}

pub fn check_theorem_ht_with(
    model: HtModel,
    n: usize,
    mode: CoeffMode,
    strategy: Strategy,
    equal_central: bool,
) -> Result<CheckReport> {
    need(n >= 1, "size must be at least 1")?;
    let (x, y) = (VarId::aux(1), VarId::aux(2));
    let (g, vars) = match model {
        HtModel::Odd => (build_ht_odd(n, &VarId::xs(n), x, y, &VarId::ys(n))?, VarId::xs(n)),
        HtModel::Even if equal_central => {
            let xs = VarId::xs(n);
            (build_ht_even(n, &xs[..n - 1], xs[n - 1], xs[n - 1], &VarId::ys(n))?, xs)
        }
        HtModel::Even => {
            let mut xs = VarId::xs(n - 1);
            xs.push(VarId::aux(1));
            (crate::ice::ht_even(n)?, xs)
        }
    };
    let all: Vec<VarId> = vars.into_iter().chain(VarId::ys(n)).collect();
    let pairs: Vec<(VarId, VarId)> = all.windows(2).map(|w| (w[0], w[1])).collect();
    let mut r = check_transpositions("theorem-ht", &g, mode, &pairs, strategy)?;
    if model == HtModel::Even && !equal_central {
        r.params.insert("central-rows".into(), json!("distinct"));
    }
    Ok(r)
}

/// At `a = ω6` with every variable 1 each weighted vertex contributes
/// `2a − 1`, so `Z = (2a − 1)^{#weighted} · #states`; the state counts are
/// also compared with the independent matrix counts.
pub fn check_homogeneous_counts() -> Result<CheckReport> {
    let mut report = Report::new("homogeneous-counts").param("mode", CoeffMode::Omega6);
    let pt = EvalPoint::all(CycNum::one())?;
    let base = CycNum::from_ints(-1, 2);
    let mut cases: Vec<(IceGraph, u64)> = Vec::new();
    for n in 1..=5 {
        cases.push((build_dwbc(n, &VarId::xs(n), &VarId::ys(n))?, asm_count_oracle(n) as u64));
    }
    for n in 1..=2 {
        cases.push((crate::ice::ht_even(n)?, ht_asm_count_oracle(2 * n)));
        cases.push((crate::ice::ht_odd(n)?, ht_asm_count_oracle(2 * n + 1)));
    }
    for (g, oracle) in cases {
        let label = format!("{}({})", g.kind.name(), g.kind.size());
        let states = count_states(&g);
        if states != oracle {
            let w = Witness::Point {
                context: format!("{label} state count"),
                point: BTreeMap::new(),
                left: states.to_string(),
                right: oracle.to_string(),
            };
            return Ok(report.finish(Some(w)));
        }
        let z = numeric_z(&g, &pt, &CycNum::a())?;
        let want = &base.pow(g.num_weighted() as i64)? * &CycNum::from_int(states as i64);
        if z != want {
            let w = point_witness(format!("{label} at all-ones"), &pt, &g.variables(), None, &z, &want);
            return Ok(report.finish(Some(w)));
        }
        report.note(format!("{label}: {states} states"));
    }
    Ok(report.finish(None))
}

/// The enumeration and transfer engines agree on `Z(n)`.
pub fn check_engines_agree(n: usize, mode: CoeffMode, strategy: Strategy) -> Result<CheckReport> {
    need(n >= 1, "size must be at least 1")?;
    let report = Report::new("oracle-equivalence").param("model", "dwbc").param("n", n).param("mode", mode).strategy(strategy);
    let g = build_dwbc(n, &VarId::xs(n), &VarId::ys(n))?;
    match strategy {
        Strategy::Symbolic => Ok(by_mode!(mode, engines_symbolic(report, &g))),
        Strategy::Random { trials, seed } => {
            let mut report = report;
            let vars = g.variables();
            ensure_enough_points(&g, &vars, trials)?;
            let mut sampler = PointSampler::new(seed);
            let points = sampler.points(&vars, trials)?;
            let a_vals = match mode {
                CoeffMode::Omega6 => vec![CycNum::a(); trials],
                CoeffMode::GenericA => sampler.distinct(trials)?,
            };
            for (pt, a) in points.iter().zip(&a_vals) {
                let e = partition_value(&g, CALIBRATED, pt, a)?.value;
                let t = transfer_matrix_value(&g, CALIBRATED, pt, a)?;
                if e != t {
                    let shown = (mode == CoeffMode::GenericA).then_some(a);
                    return Ok(report.finish(Some(point_witness("enumeration vs transfer", pt, &vars, shown, &e, &t))));
                }
            }
            report.note(format!("rejected draws: {}", sampler.rejections));
            Ok(report.finish(None))
        }
    }
}

fn engines_symbolic<C: Coefficient>(report: Report, g: &IceGraph) -> CheckReport {
    let e = partition_function::<C>(g, CALIBRATED).value;
    let t = transfer_matrix_partition::<C>(g, CALIBRATED).expect("dwbc grid");
    report.finish(compare("enumeration vs transfer", &e, &t))
}

/// Outcome of the convention calibration for one convention.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationEntry {
    pub convention: Convention,
    pub dwbc_pass: bool,
    /// Valid pairings per half-turn identity at sizes 1 and 2.
    pub ht_pairings: Vec<(HtEquation, Vec<HtPairing>)>,
}

impl CalibrationEntry {
    pub fn passes(&self) -> bool {
        self.dwbc_pass && self.ht_pairings.iter().all(|(_, p)| !p.is_empty())
    }
}

/// Runs the domain-wall recursion (`n = 2, 3`) and the half-turn
/// specializations (`N = 1, 2`) under both conventions.
pub fn calibrate() -> Result<Vec<CalibrationEntry>> {
    let mut out = Vec::new();
    for conv in Convention::ALL {
        let mut dwbc_pass = true;
        for n in [2, 3] {
            dwbc_pass &= check_specialization_dwbc_with(n, conv, Prefactors::AsStated)?.passed();
        }
        let mut ht_pairings = Vec::new();
        for eq in HtEquation::ALL {
            let mut ok: Vec<HtPairing> = HtPairing::ALL.to_vec();
            for n in [1, 2] {
                let valid = valid_ht_pairings(eq, n, conv)?;
                ok.retain(|p| valid.contains(p));
            }
            ht_pairings.push((eq, ok));
        }
        out.push(CalibrationEntry { convention: conv, dwbc_pass, ht_pairings });
    }
    Ok(out)
}

/// Exactly one convention satisfies both recursions; it must be the pinned
/// one, with each half-turn identity holding under exactly the pinned
/// pairing.
pub fn check_calibration() -> Result<CheckReport> {
    let mut report = Report::new("calibration").param("mode", CoeffMode::GenericA);
    let entries = calibrate()?;
    for e in &entries {
        let pairs: Vec<String> = e
            .ht_pairings
            .iter()
            .map(|(eq, p)| {
                let names: Vec<&str> = p.iter().map(|x| x.describe()).collect();
                format!("{} [{}]", eq.name(), names.join("; "))
            })
            .collect();
        report.note(format!("{}: dwbc {}, ht {}", e.convention, if e.dwbc_pass { "pass" } else { "fail" }, pairs.join(", ")));
    }
    let winners: Vec<Convention> = entries.iter().filter(|e| e.passes()).map(|e| e.convention).collect();
    let chosen = entries.iter().find(|e| e.convention == CALIBRATED).expect("both conventions ran");
    let pinned_ok = chosen
        .ht_pairings
        .iter()
        .all(|(eq, p)| p.as_slice() == [eq.pinned_pairing()]);
    if winners == [CALIBRATED] && pinned_ok {
        report.note(format!("selected: {CALIBRATED}"));
        return Ok(report.finish(None));
    }
    let w = Witness::Point {
        context: "conventions passing both recursions".into(),
        point: BTreeMap::new(),
        left: format!("{winners:?}"),
        right: format!("[{CALIBRATED:?}] with pinned pairings"),
    };
    Ok(report.finish(Some(w)))
}

/// Names of the checks runnable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    YangBaxter,
    PartialSymmetry,
    HalfWidth,
    HalfWidthHt,
    SpecializationDwbc,
    TheoremMain,
    LoopIdentity,
    ExchangeLoop,
    PseudoSym,
    SpecializationHt,
    TheoremHt,
    HomogeneousCounts,
    OracleEquivalence,
    Calibration,
}

impl CheckName {
    pub const ALL: [CheckName; 14] = [
        CheckName::YangBaxter,
        CheckName::PartialSymmetry,
        CheckName::HalfWidth,
        CheckName::HalfWidthHt,
        CheckName::SpecializationDwbc,
        CheckName::TheoremMain,
        CheckName::LoopIdentity,
        CheckName::ExchangeLoop,
        CheckName::PseudoSym,
        CheckName::SpecializationHt,
        CheckName::TheoremHt,
        CheckName::HomogeneousCounts,
        CheckName::OracleEquivalence,
        CheckName::Calibration,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::YangBaxter => "yang-baxter",
            CheckName::PartialSymmetry => "partial-symmetry",
            CheckName::HalfWidth => "half-width",
            CheckName::HalfWidthHt => "half-width-ht",
            CheckName::SpecializationDwbc => "specialization-dwbc",
            CheckName::TheoremMain => "theorem-main",
            CheckName::LoopIdentity => "loop-identity",
            CheckName::ExchangeLoop => "exchange-loop",
            CheckName::PseudoSym => "pseudo-sym",
            CheckName::SpecializationHt => "specialization-ht",
            CheckName::TheoremHt => "theorem-ht",
            CheckName::HomogeneousCounts => "homogeneous-counts",
            CheckName::OracleEquivalence => "oracle-equivalence",
            CheckName::Calibration => "calibration",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| Error::UnknownCheck(s.into()))
    }
}

/// Model selector for suite runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteModel {
    Dwbc,
    Ht(HtModel),
    Tangle,
}

/// Parameters of a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub model: SuiteModel,
    pub size: usize,
    pub mode: CoeffMode,
    pub trials: usize,
    pub seed: u64,
}

impl SuiteConfig {
    /// Symbolic up to the given size, seeded random points beyond.
    fn strategy(&self, symbolic_up_to: usize) -> Strategy {
        if self.size <= symbolic_up_to {
            Strategy::Symbolic
        } else {
            Strategy::Random { trials: self.trials, seed: self.seed }
        }
    }
}

impl CheckName {
    /// Whether the check is meaningful for the given model and mode.
    pub fn applies(self, model: SuiteModel, mode: CoeffMode) -> bool {
        use CheckName::*;
        let generic = mode == CoeffMode::GenericA;
        let omega = mode == CoeffMode::Omega6;
        match self {
            YangBaxter => true,
            LoopIdentity | ExchangeLoop => model == SuiteModel::Tangle && generic,
            PartialSymmetry | HalfWidth | OracleEquivalence => model == SuiteModel::Dwbc,
            SpecializationDwbc => model == SuiteModel::Dwbc && generic,
            TheoremMain => model == SuiteModel::Dwbc && omega,
            HalfWidthHt | SpecializationHt => matches!(model, SuiteModel::Ht(_)) && generic,
            PseudoSym => model == SuiteModel::Ht(HtModel::Even) && generic,
            TheoremHt => matches!(model, SuiteModel::Ht(_)) && omega,
            HomogeneousCounts => omega,
            Calibration => generic,
        }
    }

    pub fn run(self, cfg: &SuiteConfig) -> Result<CheckReport> {
        use CheckName::*;
        let n = cfg.size;
        match self {
            YangBaxter => check_yang_baxter(cfg.mode, Strategy::Symbolic),
            PartialSymmetry => check_partial_symmetry(n, cfg.mode),
            HalfWidth => check_half_width(n, cfg.mode),
            HalfWidthHt => match cfg.model {
                SuiteModel::Ht(m) => check_half_width_ht(m, n),
                _ => Err(Error::SizeMismatch("half-width-ht needs a half-turn model".into())),
            },
            SpecializationDwbc => check_specialization_dwbc(n),
            TheoremMain => check_theorem_main(n, cfg.mode, cfg.strategy(3)),
            LoopIdentity => check_loop_identity(Strategy::Symbolic),
            ExchangeLoop => check_exchange_loop(n),
            PseudoSym => check_pseudo_sym(n),
            SpecializationHt => check_specialization_ht(n),
            TheoremHt => match cfg.model {
                SuiteModel::Ht(m) => check_theorem_ht(m, n, cfg.mode, cfg.strategy(1)),
                _ => Err(Error::SizeMismatch("theorem-ht needs a half-turn model".into())),
            },
            HomogeneousCounts => check_homogeneous_counts(),
            OracleEquivalence => check_engines_agree(n, cfg.mode, cfg.strategy(5)),
            Calibration => check_calibration(),
        }
    }
}

/// Runs the given checks, or every applicable one when `names` is empty.
pub fn run_suite(names: &[CheckName], cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let selected: Vec<CheckName> = if names.is_empty() {
        CheckName::ALL.into_iter().filter(|c| c.applies(cfg.model, cfg.mode)).collect()
    } else {
        names.to_vec()
    };
    selected.into_iter().map(|c| c.run(cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_values_are_distinct_and_nonzero() {
        let mut s = PointSampler::new(7);
        let v = s.distinct(40).unwrap();
        for (i, a) in v.iter().enumerate() {
            assert!(!a.is_zero());
            assert!(v[..i].iter().all(|b| b != a));
        }
        assert!(s.distinct(81).is_err());
    }

    #[test]
    fn check_names_round_trip() {
        for c in CheckName::ALL {
            assert_eq!(c.as_str().parse::<CheckName>().unwrap(), c);
        }
        assert!(matches!("nope".parse::<CheckName>(), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn small_checks_pass() {
        assert!(check_yang_baxter(CoeffMode::GenericA, Strategy::Symbolic).unwrap().passed());
        assert!(check_loop_identity(Strategy::Symbolic).unwrap().passed());
        assert!(check_specialization_dwbc(2).unwrap().passed());
        assert!(check_partial_symmetry(2, CoeffMode::GenericA).unwrap().passed());
    }
}

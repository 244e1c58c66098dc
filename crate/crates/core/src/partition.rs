//! Vertex weights and partition functions.
//!
//! Two engines compute the same sums. The reference engine walks every ice
//! state (see [`crate::ice::search_states`]) and multiplies vertex weights
//! along the way. The transfer engine handles domain-wall grids only: it
//! sweeps the grid vertex by vertex, keeping one accumulator per profile of
//! column partial sums.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::cyclo::{CoeffMode, CycNum};
use crate::error::{Error, Result};
use crate::ice::{search_states, Flow, IceGraph, ModelKind, Orientation, VertexParam};
use crate::laurent::{sigma_of, Coefficient, EvalPoint, LaurentPoly, VarId};

/// Assignment of the two zero-entry weight classes to orientations.
///
/// `Standard` gives `σ(a t)` to O3/O4 and `σ(a t̄)` to O5/O6; `Mirrored`
/// exchanges them (it is the transposed grid convention). Only `Standard`
/// satisfies the specialization recursions; the test suite pins this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Standard,
    Mirrored,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Standard, Convention::Mirrored];
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Standard => "standard",
            Convention::Mirrored => "mirrored",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Convention::Standard),
            "mirrored" => Ok(Convention::Mirrored),
            _ => Err(Error::Parse(format!("unknown convention `{s}`"))),
        }
    }
}

/// Weight class of an orientation: 0 for `σ(a²)`, 1 for `σ(a t)`, 2 for
/// `σ(a t̄)`.
pub fn weight_class(conv: Convention, o: Orientation) -> usize {
    let class = match o {
        Orientation::O1 | Orientation::O2 => 0,
        Orientation::O3 | Orientation::O4 => 1,
        Orientation::O5 | Orientation::O6 => 2,
    };
    match (conv, class) {
        (Convention::Mirrored, 1) => 2,
        (Convention::Mirrored, 2) => 1,
        _ => class,
    }
}

fn param_exps(p: &VertexParam, sign: i32) -> Vec<(VarId, i32)> {
    let mut out = Vec::new();
    if let Some(r) = p.row {
        out.push((r, sign));
    }
    if let Some(c) = p.col {
        if Some(c) == p.row {
            out.clear();
        } else {
            out.push((c, -sign));
        }
    }
    out
}

/// The three weights of a vertex with parameter `t`: `[σ(a²), σ(a t), σ(a t̄)]`.
pub fn class_weights<C: Coefficient>(p: &VertexParam) -> [LaurentPoly<C>; 3] {
    [sigma_of(2, &[]), sigma_of(1, &param_exps(p, 1)), sigma_of(1, &param_exps(p, -1))]
}

/// Weight of one orientation.
pub fn vertex_weight<C: Coefficient>(conv: Convention, p: &VertexParam, o: Orientation) -> LaurentPoly<C> {
    let [w0, w1, w2] = class_weights::<C>(p);
    [w0, w1, w2].into_iter().nth(weight_class(conv, o)).unwrap()
}

/// Numeric class weights at a point, `a` given explicitly.
pub fn class_values(p: &VertexParam, pt: &EvalPoint, a: &CycNum) -> Result<[CycNum; 3]> {
    let mut t = CycNum::one();
    if let Some(r) = p.row {
        t = &t * pt.value(r)?;
    }
    if let Some(c) = p.col {
        t = &t * &pt.value(c)?.inv()?;
    }
    let s = |u: CycNum| u.sigma();
    Ok([s(a * a)?, s(a * &t)?, s(a * &t.inv()?)?])
}

/// Commutative accumulation used by both engines.
pub trait Semiring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
}

impl<C: Coefficient> Semiring for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        LaurentPoly::add_assign_ref(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Semiring for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Result of a summation over states.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition<W> {
    pub value: W,
    /// Parts keyed by the split slot: flowing in, then flowing out.
    pub split: Option<[W; 2]>,
    pub split_labels: Option<[String; 2]>,
    pub state_count: u64,
}

pub type PartitionResult<C> = Partition<LaurentPoly<C>>;

impl<W> Partition<W> {
    /// The part with the given label (e.g. `"↑"`).
    pub fn part(&self, label: &str) -> Option<&W> {
        let labels = self.split_labels.as_ref()?;
        let i = labels.iter().position(|l| l == label)?;
        self.split.as_ref().map(|s| &s[i])
    }
}

/// Per-vertex class weights, with unweighted vertices mapped to 1.
fn sum_states<W: Semiring>(g: &IceGraph, conv: Convention, classes: &[[W; 3]]) -> Partition<W> {
    let mut parts = [W::zero(), W::zero()];
    let mut count = 0u64;
    let split = g.split.clone();
    search_states(
        g,
        W::one(),
        &mut |acc, v, o| {
            if g.vertices[v].weighted {
                acc.mul_ref(&classes[v][weight_class(conv, o)])
            } else {
                acc.clone()
            }
        },
        &mut |state, acc| {
            count += 1;
            let part = match &split {
                Some(s) if g.slot_flow(state, s.vertex, s.side) == Flow::Out => 1,
                _ => 0,
            };
            parts[part].add_assign_ref(acc);
        },
    );
    let [p0, p1] = parts;
    match split {
        Some(s) => {
            let mut value = p0.clone();
            value.add_assign_ref(&p1);
            Partition { value, split: Some([p0, p1]), split_labels: Some(s.labels), state_count: count }
        }
        None => Partition { value: p0, split: None, split_labels: None, state_count: count },
    }
}

fn symbolic_classes<C: Coefficient>(g: &IceGraph) -> Vec<[LaurentPoly<C>; 3]> {
    let vars = g.variables();
    g.vertices
        .iter()
        .map(|v| class_weights::<C>(&v.param).map(|w| w.with_vars(&vars).expect("graph variables")))
        .collect()
}

/// Exact symbolic partition function by state enumeration.
pub fn partition_function<C: Coefficient>(g: &IceGraph, conv: Convention) -> PartitionResult<C> {
    sum_states(g, conv, &symbolic_classes::<C>(g))
}

/// The value of `a` used for numeric evaluation in the given mode.
pub fn a_value(mode: CoeffMode, pt: &EvalPoint) -> Result<CycNum> {
    match mode {
        CoeffMode::Omega6 => Ok(CycNum::a()),
        CoeffMode::GenericA => pt.a().cloned().ok_or_else(|| Error::UnboundVariable("a".into())),
    }
}

fn numeric_classes(g: &IceGraph, pt: &EvalPoint, a: &CycNum) -> Result<Vec<[CycNum; 3]>> {
    g.vertices.iter().map(|v| class_values(&v.param, pt, a)).collect()
}

/// Exact value of the partition function at a point, by enumeration.
pub fn partition_value(g: &IceGraph, conv: Convention, pt: &EvalPoint, a: &CycNum) -> Result<Partition<CycNum>> {
    Ok(sum_states(g, conv, &numeric_classes(g, pt, a)?))
}

/// Orientation of the DWBC vertex entered with row partial sum `h` and
/// column partial sum `v`, with entry `e`.
fn dwbc_orientation(h: i8, v: i8, e: i8) -> Option<Orientation> {
    let (h2, v2) = (h + e, v + e);
    if !(0..=1).contains(&h2) || !(0..=1).contains(&v2) {
        return None;
    }
    let flow = |into: bool| if into { Flow::In } else { Flow::Out };
    Orientation::from_flows([flow(h == 0), flow(h2 == 1), flow(v2 == 0), flow(v == 1)])
}

fn transfer<W: Semiring>(g: &IceGraph, conv: Convention, classes: &[[W; 3]]) -> Result<W> {
    let n = match g.kind {
        ModelKind::Dwbc { n } if g.vertices.len() == n * n => n,
        _ => return Err(Error::NotDwbcGraph),
    };
    // key: column profile bits, plus the row partial sum in bit n
    let mut layer: FxHashMap<u32, W> = FxHashMap::default();
    layer.insert(0, W::one());
    for r in 0..n {
        for c in 0..n {
            let v = g.vertex_at(r, c).ok_or(Error::NotDwbcGraph)?;
            let mut next: FxHashMap<u32, W> = FxHashMap::default();
            let mut keys: Vec<u32> = layer.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                let acc = &layer[&key];
                let h = (key >> n & 1) as i8;
                let vc = (key >> c & 1) as i8;
                for e in [-1i8, 0, 1] {
                    let Some(o) = dwbc_orientation(h, vc, e) else { continue };
                    let mut k2 = key & !(1 << n) & !(1 << c);
                    k2 |= (((h + e) as u32) << n) | (((vc + e) as u32) << c);
                    if c + 1 == n {
                        if h + e != 1 {
                            continue;
                        }
                        k2 &= !(1 << n);
                    }
                    let term = acc.mul_ref(&classes[v][weight_class(conv, o)]);
                    match next.entry(k2) {
                        std::collections::hash_map::Entry::Occupied(mut slot) => slot.get_mut().add_assign_ref(&term),
                        std::collections::hash_map::Entry::Vacant(slot) => {
                            slot.insert(term);
                        }
                    }
                }
            }
            layer = next;
        }
    }
    Ok(layer.remove(&((1u32 << n) - 1)).unwrap_or_else(W::zero))
}

/// Symbolic partition function of a domain-wall grid by the transfer sweep.
pub fn transfer_matrix_partition<C: Coefficient>(g: &IceGraph, conv: Convention) -> Result<LaurentPoly<C>> {
    transfer(g, conv, &symbolic_classes::<C>(g))
}

/// Value of a domain-wall partition function at a point by the transfer
/// sweep.
pub fn transfer_matrix_value(g: &IceGraph, conv: Convention, pt: &EvalPoint, a: &CycNum) -> Result<CycNum> {
    transfer(g, conv, &numeric_classes(g, pt, a)?)
}

fn product<C: Coefficient>(factors: impl IntoIterator<Item = LaurentPoly<C>>) -> LaurentPoly<C> {
    factors.into_iter().fold(LaurentPoly::one(), |acc, f| &acc * &f)
}

fn check_square(xs: &[VarId], ys: &[VarId]) -> Result<()> {
    if xs.is_empty() || xs.len() != ys.len() {
        return Err(Error::IndexRange(format!("need N ≥ 1 row and column variables, got {} and {}", xs.len(), ys.len())));
    }
    Ok(())
}

/// `A = ∏_{k≥2} σ(a x_k ȳ₁) · ∏_{k≥1} σ(a² y₁ ȳ_k)`, the factor picked up
/// when `x₁ = a·y₁`.
pub fn spec_factor_a<C: Coefficient>(xs: &[VarId], ys: &[VarId]) -> Result<LaurentPoly<C>> {
    check_square(xs, ys)?;
    let y1 = ys[0];
    Ok(product(
        xs[1..]
            .iter()
            .map(|&x| sigma_of(1, &[(x, 1), (y1, -1)]))
            .chain(ys.iter().map(|&y| sigma_of(2, &[(y1, 1), (y, -1)]))),
    ))
}

/// `Ā = ∏_{k≥2} σ(a y₁ x̄_k) · ∏_{k≥1} σ(a² y_k ȳ₁)`, the factor picked up
/// when `x₁ = ā·y₁`.
pub fn spec_factor_abar<C: Coefficient>(xs: &[VarId], ys: &[VarId]) -> Result<LaurentPoly<C>> {
    check_square(xs, ys)?;
    let y1 = ys[0];
    Ok(product(
        xs[1..]
            .iter()
            .map(|&x| sigma_of(1, &[(y1, 1), (x, -1)]))
            .chain(ys.iter().map(|&y| sigma_of(2, &[(y, 1), (y1, -1)]))),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HtFactor {
    /// `∏ σ(a² x₁ x̄_k) · ∏ σ(a y_k x̄₁)`, `k = 1..N`.
    AH1,
    /// `∏ σ(a² x_k x̄₁) · ∏ σ(a x₁ ȳ_k)`, `k = 1..N`.
    AbarH1,
    /// `∏_{k<N} σ(a x_k ȳ₁) · ∏_{k≤N} σ(a² y₁ ȳ_k)`.
    AH0,
    /// `∏_{k<N} σ(a y₁ x̄_k) · ∏_{k≤N} σ(a² y_k ȳ₁)`.
    AbarH0,
}

/// Prefactors of the half-turn specialization identities. The `H1` kinds
/// take `N` row and `N` column variables, the `H0` kinds `N − 1` and `N`.
pub fn spec_factor_ht<C: Coefficient>(kind: HtFactor, xs: &[VarId], ys: &[VarId]) -> Result<LaurentPoly<C>> {
    let s = |k: i32, e: &[(VarId, i32)]| sigma_of::<C>(k, e);
    match kind {
        HtFactor::AH1 | HtFactor::AbarH1 => {
            check_square(xs, ys)?;
            let x1 = xs[0];
            Ok(if kind == HtFactor::AH1 {
                product(
                    xs.iter()
                        .map(|&x| s(2, &[(x1, 1), (x, -1)]))
                        .chain(ys.iter().map(|&y| s(1, &[(y, 1), (x1, -1)]))),
                )
            } else {
                product(
                    xs.iter()
                        .map(|&x| s(2, &[(x, 1), (x1, -1)]))
                        .chain(ys.iter().map(|&y| s(1, &[(x1, 1), (y, -1)]))),
                )
            })
        }
        HtFactor::AH0 | HtFactor::AbarH0 => {
            if ys.is_empty() || xs.len() + 1 != ys.len() {
                return Err(Error::IndexRange(format!(
                    "need N − 1 row and N column variables, got {} and {}",
                    xs.len(),
                    ys.len()
                )));
            }
            let y1 = ys[0];
            Ok(if kind == HtFactor::AH0 {
                product(
                    xs.iter()
                        .map(|&x| s(1, &[(x, 1), (y1, -1)]))
                        .chain(ys.iter().map(|&y| s(2, &[(y1, 1), (y, -1)]))),
                )
            } else {
                product(
                    xs.iter()
                        .map(|&x| s(1, &[(y1, 1), (x, -1)]))
                        .chain(ys.iter().map(|&y| s(2, &[(y, 1), (y1, -1)]))),
                )
            })
        }
    }
}

/// `σ(a x ȳ₁)`, the extra factor when the `x` row meets `x₁`-specialized `y`.
pub fn pair_ax_prefactor<C: Coefficient>(x: VarId, y1: VarId) -> LaurentPoly<C> {
    sigma_of(1, &[(x, 1), (y1, -1)])
}

/// `σ(a y₁ ȳ)`.
pub fn pair_bax_prefactor<C: Coefficient>(y1: VarId, y: VarId) -> LaurentPoly<C> {
    sigma_of(1, &[(y1, 1), (y, -1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::GenericCoeff;
    use crate::ice::dwbc;
    use crate::laurent::GenericPoly;

    fn s(k: i32, e: &[(VarId, i32)]) -> GenericPoly {
        sigma_of(k, e)
    }

    #[test]
    fn size_one_is_sigma_a_squared() {
        let g = dwbc(1).unwrap();
        let z = partition_function::<GenericCoeff>(&g, Convention::Standard);
        assert_eq!(z.value, s(2, &[]));
        assert_eq!(z.state_count, 1);
        assert_eq!(transfer_matrix_partition::<GenericCoeff>(&g, Convention::Standard).unwrap(), s(2, &[]));
    }

    #[test]
    fn size_two_by_hand() {
        // identity state: two O1 and two zero vertices with h = v
        // anti-diagonal state: two O1 and two zero vertices with h ≠ v
        let (x1, x2, y1, y2) = (VarId::x(1), VarId::x(2), VarId::y(1), VarId::y(2));
        let expect = &s(2, &[]).pow(2)
            * &(&(&s(1, &[(y2, 1), (x1, -1)]) * &s(1, &[(y1, 1), (x2, -1)]))
                + &(&s(1, &[(x1, 1), (y1, -1)]) * &s(1, &[(x2, 1), (y2, -1)])));
        let g = dwbc(2).unwrap();
        let z = partition_function::<GenericCoeff>(&g, Convention::Standard);
        assert_eq!(z.value, expect);
        assert_eq!(transfer_matrix_partition::<GenericCoeff>(&g, Convention::Standard).unwrap(), expect);
    }

    #[test]
    fn engines_agree_up_to_four() {
        for conv in Convention::ALL {
            for n in 1..=4 {
                let g = dwbc(n).unwrap();
                let e = partition_function::<CycNum>(&g, conv).value;
                let t = transfer_matrix_partition::<CycNum>(&g, conv).unwrap();
                assert_eq!(e, t, "n = {n}, {conv}");
            }
        }
    }

    #[test]
    fn all_ones_at_omega6() {
        let g = dwbc(2).unwrap();
        let pt = EvalPoint::all(CycNum::one()).unwrap();
        let v = partition_value(&g, Convention::Standard, &pt, &CycNum::a()).unwrap();
        assert_eq!(v.value, CycNum::from_int(18));
        assert_eq!(transfer_matrix_value(&g, Convention::Standard, &pt, &CycNum::a()).unwrap(), CycNum::from_int(18));
    }

    #[test]
    fn prefactors_at_size_one() {
        let (x1, y1) = (VarId::x(1), VarId::y(1));
        assert_eq!(spec_factor_a::<GenericCoeff>(&[x1], &[y1]).unwrap(), s(2, &[]));
        assert_eq!(spec_factor_abar::<GenericCoeff>(&[x1], &[y1]).unwrap(), s(2, &[]));
        assert_eq!(spec_factor_ht::<GenericCoeff>(HtFactor::AH0, &[], &[y1]).unwrap(), s(2, &[]));
        assert_eq!(
            spec_factor_ht::<GenericCoeff>(HtFactor::AH1, &[x1], &[y1]).unwrap(),
            &s(2, &[]) * &s(1, &[(y1, 1), (x1, -1)])
        );
        assert!(matches!(spec_factor_a::<GenericCoeff>(&[], &[]), Err(Error::IndexRange(_))));
        assert!(matches!(spec_factor_ht::<GenericCoeff>(HtFactor::AH0, &[x1], &[y1]), Err(Error::IndexRange(_))));
    }

    #[test]
    fn transfer_rejects_other_models() {
        let g = crate::ice::ht_even(1).unwrap();
        assert_eq!(transfer_matrix_partition::<CycNum>(&g, Convention::Standard), Err(Error::NotDwbcGraph));
    }
}

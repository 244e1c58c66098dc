//! Sparse multivariate Laurent polynomials.
//!
//! A [`LaurentPoly<C>`] is a finite sum of terms `c · ∏ vᵢ^eᵢ` with integer
//! (possibly negative) exponents over a declared, ordered variable list. The
//! coefficient domain `C` is either [`CycNum`] (the value `a = exp(iπ/3)`) or
//! [`GenericCoeff`] (`a` left indeterminate).
//!
//! Internally a term is stored as a packed exponent vector plus a scalar. In
//! generic mode the exponent of `a` is kept in the last lane of the packed
//! vector and the scalar is a plain integer, so the coefficient of a monomial
//! is spread over several stored entries; [`LaurentPoly::terms`] reassembles
//! it. Canonical (lexicographic) order is applied whenever terms are listed or
//! serialized.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{CoeffMode, CycNum, CycScalar, GenericCoeff};
use crate::error::{Error, Result};
use crate::int::Int;

/// Maximum number of named variables in one polynomial.
pub const MAX_VARS: usize = 15;
const LANES: usize = MAX_VARS + 1;
const A_LANE: usize = MAX_VARS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    X,
    Y,
    Aux,
}

/// A named variable: `x_i`, `y_i`, or an auxiliary variable.
///
/// Auxiliary variables 1, 2, 3 print as `x`, `y`, `z`; they are the spectral
/// parameters of local tangles and the two half-line parameters of the
/// half-turn models.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub kind: VarKind,
    pub index: u32,
}

impl VarId {
    pub const fn x(index: u32) -> Self {
        VarId { kind: VarKind::X, index }
    }

    pub const fn y(index: u32) -> Self {
        VarId { kind: VarKind::Y, index }
    }

    pub const fn aux(index: u32) -> Self {
        VarId { kind: VarKind::Aux, index }
    }

    pub fn xs(n: usize) -> Vec<VarId> {
        (1..=n as u32).map(VarId::x).collect()
    }

    pub fn ys(n: usize) -> Vec<VarId> {
        (1..=n as u32).map(VarId::y).collect()
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.index) {
            (VarKind::X, i) => write!(f, "x{i}"),
            (VarKind::Y, i) => write!(f, "y{i}"),
            (VarKind::Aux, 1) => f.write_str("x"),
            (VarKind::Aux, 2) => f.write_str("y"),
            (VarKind::Aux, 3) => f.write_str("z"),
            (VarKind::Aux, i) => write!(f, "u{i}"),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for VarId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => return Ok(VarId::aux(1)),
            "y" => return Ok(VarId::aux(2)),
            "z" => return Ok(VarId::aux(3)),
            _ => {}
        }
        let bad = || Error::Parse(format!("`{s}` is not a variable name"));
        let (kind, rest) = match s.split_at(s.len().min(1)) {
            ("x", r) => (VarKind::X, r),
            ("y", r) => (VarKind::Y, r),
            ("u", r) => (VarKind::Aux, r),
            _ => return Err(bad()),
        };
        let index: u32 = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(VarId { kind, index })
    }
}

impl Serialize for VarId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VarId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Packed exponent vector; lane `i < MAX_VARS` belongs to the i-th declared
/// variable, the last lane to `a` (generic mode only).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) struct Mono([i8; LANES]);

impl Mono {
    pub(crate) const ONE: Mono = Mono([0; LANES]);

    #[inline]
    pub(crate) fn mul(self, other: Mono) -> Mono {
        let mut out = [0i8; LANES];
        for i in 0..LANES {
            out[i] = self.0[i].checked_add(other.0[i]).expect("exponent out of range (|e| > 127)");
        }
        Mono(out)
    }

    fn pow(self, k: i32) -> Mono {
        let mut out = [0i8; LANES];
        for i in 0..LANES {
            let e = self.0[i] as i32 * k;
            out[i] = i8::try_from(e).expect("exponent out of range (|e| > 127)");
        }
        Mono(out)
    }

    fn a_exp(&self) -> i32 {
        self.0[A_LANE] as i32
    }

    fn with_lane(mut self, lane: usize, e: i32) -> Mono {
        self.0[lane] = i8::try_from(e).expect("exponent out of range (|e| > 127)");
        self
    }

    fn without_a(mut self) -> Mono {
        self.0[A_LANE] = 0;
        self
    }
}

/// Arithmetic of one stored scalar.
pub trait Scalar: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, when it exists in the scalar ring.
    fn try_inv(&self) -> Option<Self>;
    fn to_cyc(&self) -> CycNum;
}

impl Scalar for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn one() -> Self {
        Int::ONE
    }
    fn from_i64(v: i64) -> Self {
        Int::from(v)
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        Int::add_assign_ref(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Int::mul_ref(self, other)
    }
    fn neg_ref(&self) -> Self {
        Int::neg_ref(self)
    }
    fn try_inv(&self) -> Option<Self> {
        match self {
            Int::Small(1) => Some(Int::ONE),
            Int::Small(-1) => Some(Int::Small(-1)),
            _ => None,
        }
    }
    fn to_cyc(&self) -> CycNum {
        CycNum::from_bigint(self.to_bigint())
    }
}

impl Scalar for CycScalar {
    fn zero() -> Self {
        CycScalar::Small(0, 0)
    }
    fn one() -> Self {
        CycScalar::Small(1, 0)
    }
    fn from_i64(v: i64) -> Self {
        CycScalar::Small(v, 0)
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        CycScalar::add_assign_ref(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        CycScalar::mul_ref(self, other)
    }
    fn neg_ref(&self) -> Self {
        CycScalar::neg_ref(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.to_cyc().inv().ok().map(|c| CycScalar::from_cyc(&c))
    }
    fn to_cyc(&self) -> CycNum {
        CycScalar::to_cyc(self)
    }
}

/// A coefficient domain for [`LaurentPoly`].
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Serialize + for<'de> Deserialize<'de> + Send + Sync + 'static
{
    type Scalar: Scalar;
    const MODE: CoeffMode;

    /// `a^k` split into a shift of the `a` lane and a scalar factor.
    fn a_power(k: i32) -> (i32, Self::Scalar);
    /// Reassemble a coefficient from `(a exponent, scalar)` parts.
    fn from_parts(parts: impl IntoIterator<Item = (i32, Self::Scalar)>) -> Self;
    fn to_parts(&self) -> Vec<(i32, Self::Scalar)>;
    /// Value at `a = exp(iπ/3)`.
    fn at_omega6(&self) -> CycNum;
}

impl Coefficient for GenericCoeff {
    type Scalar = Int;
    const MODE: CoeffMode = CoeffMode::GenericA;

    fn a_power(k: i32) -> (i32, Int) {
        (k, Int::ONE)
    }
    fn from_parts(parts: impl IntoIterator<Item = (i32, Int)>) -> Self {
        GenericCoeff::from_terms(parts.into_iter().map(|(k, c)| (k, c.to_bigint())))
    }
    fn to_parts(&self) -> Vec<(i32, Int)> {
        self.terms().map(|(k, c)| (k, Int::from(c.clone()))).collect()
    }
    fn at_omega6(&self) -> CycNum {
        GenericCoeff::at_omega6(self)
    }
}

impl Coefficient for CycNum {
    type Scalar = CycScalar;
    const MODE: CoeffMode = CoeffMode::Omega6;

    fn a_power(k: i32) -> (i32, CycScalar) {
        (0, CycScalar::from_cyc(&CycNum::a_pow(k as i64)))
    }
    fn from_parts(parts: impl IntoIterator<Item = (i32, CycScalar)>) -> Self {
        parts.into_iter().fold(CycNum::zero(), |acc, (k, c)| &acc + &(&CycNum::a_pow(k as i64) * &c.to_cyc()))
    }
    fn to_parts(&self) -> Vec<(i32, CycScalar)> {
        if self.is_zero() {
            Vec::new()
        } else {
            vec![(0, CycScalar::from_cyc(self))]
        }
    }
    fn at_omega6(&self) -> CycNum {
        self.clone()
    }
}

/// Parity of the exponents of one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Shape of a polynomial viewed as a Laurent polynomial in one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeShape {
    pub min: i32,
    pub max: i32,
    pub centered: bool,
    pub parity: Parity,
}

impl DegreeShape {
    /// Half-width of a centered polynomial.
    pub fn half_width(&self) -> Option<i32> {
        self.centered.then_some(self.max)
    }
}

/// First monomial (canonical order) where two polynomials differ.
#[derive(Debug, Clone, PartialEq)]
pub struct TermDiff<C> {
    pub exps: Vec<(VarId, i32)>,
    pub left: C,
    pub right: C,
}

impl<C: Coefficient> fmt::Display for TermDiff<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coefficient of ")?;
        if self.exps.iter().all(|(_, e)| *e == 0) {
            f.write_str("1")?;
        }
        for (v, e) in self.exps.iter().filter(|(_, e)| *e != 0) {
            write!(f, "{v}^{e}")?;
        }
        write!(f, ": {} vs {}", self.left, self.right)
    }
}

/// Sparse Laurent polynomial with coefficients in `C`.
pub struct LaurentPoly<C: Coefficient> {
    vars: Vec<VarId>,
    terms: FxHashMap<Mono, C::Scalar>,
    _mode: PhantomData<C>,
}

pub type GenericPoly = LaurentPoly<GenericCoeff>;
pub type Omega6Poly = LaurentPoly<CycNum>;

impl<C: Coefficient> Clone for LaurentPoly<C> {
    fn clone(&self) -> Self {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.clone(), _mode: PhantomData }
    }
}

fn union_vars(a: &[VarId], b: &[VarId]) -> Vec<VarId> {
    let mut out: Vec<VarId> = a.iter().chain(b).copied().collect();
    out.sort();
    out.dedup();
    assert!(out.len() <= MAX_VARS, "{}", Error::TooManyVariables(out.len()));
    out
}

impl<C: Coefficient> LaurentPoly<C> {
    fn from_raw(vars: Vec<VarId>, terms: FxHashMap<Mono, C::Scalar>) -> Self {
        LaurentPoly { vars, terms, _mode: PhantomData }
    }

    pub fn mode(&self) -> CoeffMode {
        C::MODE
    }

    pub fn zero() -> Self {
        Self::from_raw(Vec::new(), FxHashMap::default())
    }

    pub fn one() -> Self {
        Self::from_scalar(C::Scalar::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_scalar(C::Scalar::from_i64(v))
    }

    pub fn from_scalar(s: C::Scalar) -> Self {
        let mut terms = FxHashMap::default();
        if !s.is_zero() {
            terms.insert(Mono::ONE, s);
        }
        Self::from_raw(Vec::new(), terms)
    }

    pub fn constant(c: &C) -> Self {
        let mut terms = FxHashMap::default();
        for (k, s) in c.to_parts() {
            let (shift, f) = C::a_power(k);
            push_term(&mut terms, Mono::ONE.with_lane(A_LANE, shift), s.mul_ref(&f));
        }
        Self::from_raw(Vec::new(), terms)
    }

    /// `a^k` as a constant polynomial.
    pub fn a_pow(k: i32) -> Self {
        let (shift, s) = C::a_power(k);
        let mut terms = FxHashMap::default();
        terms.insert(Mono::ONE.with_lane(A_LANE, shift), s);
        Self::from_raw(Vec::new(), terms)
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(&[(v, 1)])
    }

    /// `∏ v^e` with coefficient 1.
    pub fn monomial(exps: &[(VarId, i32)]) -> Self {
        let vars = union_vars(&exps.iter().map(|(v, _)| *v).collect::<Vec<_>>(), &[]);
        let mut m = Mono::ONE;
        for (v, e) in exps {
            let lane = vars.binary_search(v).unwrap();
            m = m.with_lane(lane, m.0[lane] as i32 + e);
        }
        let mut terms = FxHashMap::default();
        terms.insert(m, C::Scalar::one());
        Self::from_raw(vars, terms)
    }

    /// Builds a polynomial from explicit `(exponents, coefficient)` terms,
    /// exponents listed in the order of `vars`.
    pub fn from_terms(vars: &[VarId], terms: impl IntoIterator<Item = (Vec<i32>, C)>) -> Result<Self> {
        let mut sorted = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(Error::MalformedSpec("duplicate variable".into()));
        }
        if sorted.len() > MAX_VARS {
            return Err(Error::TooManyVariables(sorted.len()));
        }
        let lanes: Vec<usize> = vars.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
        let mut out = FxHashMap::default();
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::SizeMismatch(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    vars.len()
                )));
            }
            let mut m = Mono::ONE;
            for (lane, e) in lanes.iter().zip(&exps) {
                if i8::try_from(*e).is_err() {
                    return Err(Error::IndexRange(format!("exponent {e} out of range")));
                }
                m = m.with_lane(*lane, *e);
            }
            for (k, s) in c.to_parts() {
                let (shift, f) = C::a_power(k);
                push_term(&mut out, m.with_lane(A_LANE, m.a_exp() + shift), s.mul_ref(&f));
            }
        }
        Ok(Self::from_raw(sorted, out))
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored entries. In generic mode each power of `a` in a
    /// coefficient is a separate entry.
    pub fn stored_len(&self) -> usize {
        self.terms.len()
    }

    /// Number of distinct monomials in the declared variables.
    pub fn num_monomials(&self) -> usize {
        if C::MODE == CoeffMode::Omega6 {
            return self.terms.len();
        }
        let mut seen: Vec<Mono> = self.terms.keys().map(|m| m.without_a()).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    fn lane(&self, v: VarId) -> Option<usize> {
        self.vars.binary_search(&v).ok()
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn with_vars(&self, vars: &[VarId]) -> Result<Self> {
        let target = union_vars(vars, &[]);
        if target == self.vars {
            return Ok(self.clone());
        }
        if self.vars.iter().any(|v| target.binary_search(v).is_err()) {
            return Err(Error::MalformedSpec("target variable set must contain the current one".into()));
        }
        Ok(self.remapped(&target))
    }

    fn remapped(&self, target: &[VarId]) -> Self {
        if target == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self.vars.iter().map(|v| target.binary_search(v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, s)| {
                let mut out = [0i8; LANES];
                for (i, &j) in map.iter().enumerate() {
                    out[j] = m.0[i];
                }
                out[A_LANE] = m.0[A_LANE];
                (Mono(out), s.clone())
            })
            .collect();
        Self::from_raw(target.to_vec(), terms)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let vars = union_vars(&self.vars, &other.vars);
        (self.remapped(&vars), other.remapped(&vars))
    }

    /// `self += other` without copying `self`.
    pub fn add_assign_ref(&mut self, other: &Self) {
        if self.vars != other.vars {
            let vars = union_vars(&self.vars, &other.vars);
            if vars != self.vars {
                *self = self.remapped(&vars);
            }
            let other = other.remapped(&vars);
            for (m, s) in other.terms {
                push_term(&mut self.terms, m, s);
            }
            return;
        }
        for (m, s) in &other.terms {
            push_term(&mut self.terms, *m, s.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self * &Self::constant(c)
    }

    pub fn scale_scalar(&self, s: &C::Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, t)| (*m, t.mul_ref(s))).collect();
        Self::from_raw(self.vars.clone(), terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The single term `(monomial, scalar)` of a one-term polynomial.
    fn single_term(&self) -> Option<(Mono, &C::Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, s)| (*m, s))
        } else {
            None
        }
    }

    /// Inverse of a unit (one term with invertible coefficient).
    pub fn inverse_unit(&self) -> Result<Self> {
        let (m, s) = self.single_term().ok_or_else(|| Error::NotInvertible(format!("{self}")))?;
        let inv = s.try_inv().ok_or_else(|| Error::NotInvertible(format!("{self}")))?;
        let mut terms = FxHashMap::default();
        terms.insert(m.pow(-1), inv);
        Ok(Self::from_raw(self.vars.clone(), terms))
    }

    /// `σ(t) = t − t⁻¹` for a unit `t`.
    pub fn sigma(&self) -> Result<Self> {
        Ok(self - &self.inverse_unit()?)
    }

    /// Exchanges the exponents of `u` and `v` in every term.
    pub fn swap(&self, u: VarId, v: VarId) -> Result<Self> {
        let lu = self.lane(u).ok_or(Error::UnknownVariable(u))?;
        let lv = self.lane(v).ok_or(Error::UnknownVariable(v))?;
        let terms = self
            .terms
            .iter()
            .map(|(m, s)| {
                let mut out = *m;
                out.0.swap(lu, lv);
                (out, s.clone())
            })
            .collect();
        Ok(Self::from_raw(self.vars.clone(), terms))
    }

    pub fn is_symmetric(&self, u: VarId, v: VarId) -> Result<bool> {
        Ok(self.swap(u, v)? == *self)
    }

    /// Invariance under every adjacent transposition of `vars`, which
    /// generate the full symmetric group on them.
    pub fn is_symmetric_set(&self, vars: &[VarId]) -> Result<bool> {
        for w in vars.windows(2) {
            if !self.is_symmetric(w[0], w[1])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimum and maximum exponent of `v`; `(0, 0)` when `v` does not occur.
    pub fn degree_range(&self, v: VarId) -> Result<(i32, i32)> {
        if self.is_zero() {
            return Err(Error::EmptyPolynomial);
        }
        let Some(lane) = self.lane(v) else { return Ok((0, 0)) };
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for m in self.terms.keys() {
            let e = m.0[lane] as i32;
            lo = lo.min(e);
            hi = hi.max(e);
        }
        Ok((lo, hi))
    }

    pub fn parity_and_centered(&self, v: VarId) -> Result<DegreeShape> {
        let (min, max) = self.degree_range(v)?;
        let parity = match self.lane(v) {
            None => Parity::Even,
            Some(lane) => {
                let mut even = false;
                let mut odd = false;
                for m in self.terms.keys() {
                    if m.0[lane] % 2 == 0 {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
                match (even, odd) {
                    (true, false) => Parity::Even,
                    (false, true) => Parity::Odd,
                    _ => Parity::Mixed,
                }
            }
        };
        Ok(DegreeShape { min, max, centered: min == -max, parity })
    }

    /// Replaces `v` by the unit `replacement` (one term, invertible
    /// coefficient), e.g. `x₁ := a·y₁`.
    pub fn substitute_monomial(&self, v: VarId, replacement: &Self) -> Result<Self> {
        let (rm, rs) = replacement.single_term().ok_or(Error::NonUnitSubstitution(replacement.terms.len()))?;
        let rs_inv = rs.try_inv().ok_or_else(|| Error::NotInvertible(format!("{replacement}")))?;
        let Some(lane) = self.lane(v) else {
            return Ok(self.clone());
        };
        let rest: Vec<VarId> = self.vars.iter().copied().filter(|w| *w != v).collect();
        let vars = union_vars(&rest, &replacement.vars);
        // positions of the surviving variables in the new layout
        let map: Vec<Option<usize>> =
            self.vars.iter().map(|w| if *w == v { None } else { vars.binary_search(w).ok() }).collect();
        let rep = replacement.remapped(&vars);
        let (rep_m, _) = rep.single_term().unwrap();

        let mut cache: BTreeMap<i32, (Mono, C::Scalar)> = BTreeMap::new();
        let mut out = FxHashMap::default();
        for (m, s) in &self.terms {
            let k = m.0[lane] as i32;
            let (pm, ps) = cache
                .entry(k)
                .or_insert_with(|| {
                    let base = if k >= 0 { rs.clone() } else { rs_inv.clone() };
                    let mut c = C::Scalar::one();
                    for _ in 0..k.unsigned_abs() {
                        c = c.mul_ref(&base);
                    }
                    (rep_m.pow(k), c)
                })
                .clone();
            let mut moved = [0i8; LANES];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    moved[*j] = m.0[i];
                }
            }
            moved[A_LANE] = m.0[A_LANE];
            push_term(&mut out, Mono(moved).mul(pm), s.mul_ref(&ps));
        }
        let _ = rm;
        Ok(Self::from_raw(vars, out))
    }

    /// Renames variables; the map must be injective on the variables present.
    pub fn rename(&self, map: &[(VarId, VarId)]) -> Result<Self> {
        let renamed: Vec<VarId> =
            self.vars.iter().map(|v| map.iter().find(|(from, _)| from == v).map_or(*v, |(_, to)| *to)).collect();
        let mut sorted = renamed.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != renamed.len() {
            return Err(Error::MalformedSpec("renaming merges variables".into()));
        }
        let lanes: Vec<usize> = renamed.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, s)| {
                let mut out = [0i8; LANES];
                for (i, &j) in lanes.iter().enumerate() {
                    out[j] = m.0[i];
                }
                out[A_LANE] = m.0[A_LANE];
                (Mono(out), s.clone())
            })
            .collect();
        Ok(Self::from_raw(sorted, terms))
    }

    /// Reduction modulo `a² = a − 1`.
    pub fn to_omega6(&self) -> Omega6Poly {
        let terms = self.terms().into_iter().map(|(e, c)| (e, c.at_omega6()));
        Omega6Poly::from_terms(&self.vars, terms).expect("same variables")
    }

    /// Exact value at a point. Every variable (and `a` in generic mode) must
    /// be assigned a nonzero value.
    pub fn evaluate(&self, pt: &EvalPoint) -> Result<CycNum> {
        let mut tables: Vec<(i32, Vec<CycNum>)> = Vec::with_capacity(self.vars.len() + 1);
        let mut lanes: Vec<usize> = (0..self.vars.len()).collect();
        let mut values: Vec<CycNum> = Vec::with_capacity(self.vars.len() + 1);
        for v in &self.vars {
            values.push(pt.value(*v)?.clone());
        }
        if C::MODE == CoeffMode::GenericA {
            values.push(pt.a.clone().ok_or_else(|| Error::UnboundVariable("a".into()))?);
            lanes.push(A_LANE);
        }
        for (value, &lane) in values.iter().zip(&lanes) {
            let (lo, hi) = self
                .terms
                .keys()
                .fold((0i32, 0i32), |(lo, hi), m| (lo.min(m.0[lane] as i32), hi.max(m.0[lane] as i32)));
            let mut table = Vec::with_capacity((hi - lo + 1) as usize);
            for k in lo..=hi {
                table.push(value.pow(k as i64)?);
            }
            tables.push((lo, table));
        }
        let mut acc = CycNum::zero();
        for (m, s) in &self.terms {
            let mut t = s.to_cyc();
            for ((lo, table), &lane) in tables.iter().zip(&lanes) {
                let e = m.0[lane] as i32;
                if e != 0 {
                    t = &t * &table[(e - lo) as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Terms grouped by monomial in canonical (lexicographic) order.
    pub fn terms(&self) -> Vec<(Vec<i32>, C)> {
        let n = self.vars.len();
        let mut grouped: BTreeMap<Mono, Vec<(i32, C::Scalar)>> = BTreeMap::new();
        for (m, s) in &self.terms {
            grouped.entry(m.without_a()).or_default().push((m.a_exp(), s.clone()));
        }
        grouped.into_iter().map(|(m, parts)| (m.0[..n].iter().map(|e| *e as i32).collect(), C::from_parts(parts))).collect()
    }

    /// Coefficient of the monomial with the given exponents (in `vars` order).
    pub fn coefficient(&self, exps: &[(VarId, i32)]) -> C {
        let mut key = Mono::ONE;
        for (v, e) in exps {
            match self.lane(*v) {
                Some(l) => key = key.with_lane(l, *e),
                None if *e == 0 => {}
                None => return C::from_parts(std::iter::empty()),
            }
        }
        let parts = self.terms.iter().filter(|(m, _)| m.without_a() == key).map(|(m, s)| (m.a_exp(), s.clone()));
        C::from_parts(parts)
    }

    /// The first monomial, in canonical order, whose coefficients differ.
    pub fn first_difference(&self, other: &Self) -> Option<TermDiff<C>> {
        let diff = self - other;
        let (first, _) = diff.terms.keys().map(|m| (m.without_a(), ())).min()?;
        let (l, r) = self.aligned(other);
        let exps: Vec<(VarId, i32)> = l.vars.iter().enumerate().map(|(i, v)| (*v, first.0[i] as i32)).collect();
        let _ = r;
        Some(TermDiff { left: self.coefficient(&exps), right: other.coefficient(&exps), exps })
    }

    /// Like `==` but reports the first differing monomial.
    pub fn compare(&self, other: &Self) -> std::result::Result<(), TermDiff<C>> {
        if self == other {
            Ok(())
        } else {
            Err(self.first_difference(other).expect("unequal polynomials differ somewhere"))
        }
    }
}

fn push_term<S: Scalar>(terms: &mut FxHashMap<Mono, S>, m: Mono, s: S) {
    if s.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            e.get_mut().add_assign_ref(&s);
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(s);
        }
    }
}

impl<C: Coefficient> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (l, r) = self.aligned(other);
        l.terms == r.terms
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", C::MODE, self)
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, c)) in terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (v, e) in self.vars.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    e => write!(f, "*{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl<'a, C: Coefficient> std::ops::Add<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let (mut l, r) = if self.vars == rhs.vars { (self.clone(), rhs.clone()) } else { self.aligned(rhs) };
        for (m, s) in r.terms {
            push_term(&mut l.terms, m, s);
        }
        l
    }
}

impl<'a, C: Coefficient> std::ops::Sub<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let (mut l, r) = if self.vars == rhs.vars { (self.clone(), rhs.clone()) } else { self.aligned(rhs) };
        for (m, s) in r.terms {
            push_term(&mut l.terms, m, s.neg_ref());
        }
        l
    }
}

impl<'a, C: Coefficient> std::ops::Mul<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let (l, r);
        let (lhs, rhs) = if self.vars == rhs.vars {
            (self, rhs)
        } else {
            (l, r) = self.aligned(rhs);
            (&l, &r)
        };
        let (big, small) = if lhs.terms.len() >= rhs.terms.len() { (lhs, rhs) } else { (rhs, lhs) };
        let mut out: FxHashMap<Mono, C::Scalar> = FxHashMap::default();
        out.reserve(big.terms.len().saturating_mul(small.terms.len()).min(1 << 24));
        for (m2, s2) in &small.terms {
            for (m1, s1) in &big.terms {
                let p = s1.mul_ref(s2);
                match out.entry(m1.mul(*m2)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&p),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        out.retain(|_, s| !s.is_zero());
        LaurentPoly::from_raw(lhs.vars.clone(), out)
    }
}

impl<C: Coefficient> std::ops::Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        let terms = self.terms.iter().map(|(m, s)| (*m, s.neg_ref())).collect();
        LaurentPoly::from_raw(self.vars.clone(), terms)
    }
}

macro_rules! forward_poly_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<C: Coefficient> std::ops::$tr<LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> { std::ops::$tr::$m(&self, &rhs) }
        }
        impl<'a, C: Coefficient> std::ops::$tr<&'a LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> { std::ops::$tr::$m(&self, rhs) }
        }
    )*};
}
forward_poly_ops!(Add::add, Sub::sub, Mul::mul);

impl<C: Coefficient> std::ops::Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coefficient> std::iter::Sum for LaurentPoly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

impl<C: Coefficient> std::iter::Product for LaurentPoly<C> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| &acc * &p)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<C> {
    exps: Vec<i32>,
    coeff: C,
}

#[derive(Deserialize)]
struct PolyRepr<C> {
    mode: CoeffMode,
    vars: Vec<VarId>,
    terms: Vec<TermRepr<C>>,
}

impl<C: Coefficient> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr<C>> = self.terms().into_iter().map(|(exps, coeff)| TermRepr { exps, coeff }).collect();
        let mut st = s.serialize_struct("LaurentPoly", 3)?;
        st.serialize_field("mode", &C::MODE)?;
        st.serialize_field("vars", &self.vars)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolyRepr::<C>::deserialize(d)?;
        if r.mode != C::MODE {
            return Err(D::Error::custom(Error::ModeMismatch {
                left: r.mode.to_string(),
                right: C::MODE.to_string(),
            }));
        }
        LaurentPoly::from_terms(&r.vars, r.terms.into_iter().map(|t| (t.exps, t.coeff))).map_err(D::Error::custom)
    }
}

/// A polynomial whose coefficient mode is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoly {
    Generic(GenericPoly),
    Omega6(Omega6Poly),
}

impl AnyPoly {
    pub fn mode(&self) -> CoeffMode {
        match self {
            AnyPoly::Generic(_) => CoeffMode::GenericA,
            AnyPoly::Omega6(_) => CoeffMode::Omega6,
        }
    }

    fn mismatch(&self, other: &AnyPoly) -> Error {
        Error::ModeMismatch { left: self.mode().to_string(), right: other.mode().to_string() }
    }

    pub fn try_add(&self, other: &AnyPoly) -> Result<AnyPoly> {
        match (self, other) {
            (AnyPoly::Generic(f), AnyPoly::Generic(g)) => Ok(AnyPoly::Generic(f + g)),
            (AnyPoly::Omega6(f), AnyPoly::Omega6(g)) => Ok(AnyPoly::Omega6(f + g)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &AnyPoly) -> Result<AnyPoly> {
        match (self, other) {
            (AnyPoly::Generic(f), AnyPoly::Generic(g)) => Ok(AnyPoly::Generic(f - g)),
            (AnyPoly::Omega6(f), AnyPoly::Omega6(g)) => Ok(AnyPoly::Omega6(f - g)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_mul(&self, other: &AnyPoly) -> Result<AnyPoly> {
        match (self, other) {
            (AnyPoly::Generic(f), AnyPoly::Generic(g)) => Ok(AnyPoly::Generic(f * g)),
            (AnyPoly::Omega6(f), AnyPoly::Omega6(g)) => Ok(AnyPoly::Omega6(f * g)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn evaluate(&self, pt: &EvalPoint) -> Result<CycNum> {
        match self {
            AnyPoly::Generic(f) => f.evaluate(pt),
            AnyPoly::Omega6(f) => f.evaluate(pt),
        }
    }
}

impl Serialize for AnyPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AnyPoly::Generic(f) => f.serialize(s),
            AnyPoly::Omega6(f) => f.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AnyPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let mode: CoeffMode = v
            .get("mode")
            .cloned()
            .ok_or_else(|| D::Error::custom("missing mode"))
            .and_then(|m| serde_json::from_value(m).map_err(D::Error::custom))?;
        match mode {
            CoeffMode::GenericA => serde_json::from_value(v).map(AnyPoly::Generic).map_err(D::Error::custom),
            CoeffMode::Omega6 => serde_json::from_value(v).map(AnyPoly::Omega6).map_err(D::Error::custom),
        }
    }
}

/// An assignment of nonzero exact values to variables.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalPoint {
    values: BTreeMap<VarId, CycNum>,
    default: Option<CycNum>,
    a: Option<CycNum>,
}

impl EvalPoint {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every variable takes the value `v` unless set explicitly.
    pub fn all(v: CycNum) -> Result<Self> {
        Self::new().with_default(v)
    }

    pub fn with_default(mut self, v: CycNum) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroDivision);
        }
        self.default = Some(v);
        Ok(self)
    }

    pub fn set(&mut self, var: VarId, v: CycNum) -> Result<()> {
        if v.is_zero() {
            return Err(Error::ZeroDivision);
        }
        self.values.insert(var, v);
        Ok(())
    }

    pub fn with(mut self, var: VarId, v: CycNum) -> Result<Self> {
        self.set(var, v)?;
        Ok(self)
    }

    /// Value of the indeterminate `a` for generic-mode polynomials.
    pub fn with_a(mut self, v: CycNum) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroDivision);
        }
        self.a = Some(v);
        Ok(self)
    }

    pub fn a(&self) -> Option<&CycNum> {
        self.a.as_ref()
    }

    pub fn value(&self, var: VarId) -> Result<&CycNum> {
        self.values.get(&var).or(self.default.as_ref()).ok_or_else(|| Error::UnboundVariable(var.to_string()))
    }

    pub fn explicit(&self) -> impl Iterator<Item = (&VarId, &CycNum)> {
        self.values.iter()
    }

    /// Point with the values of `u` and `v` exchanged.
    pub fn swapped(&self, u: VarId, v: VarId) -> Result<Self> {
        let (vu, vv) = (self.value(u)?.clone(), self.value(v)?.clone());
        let mut out = self.clone();
        out.values.insert(u, vv);
        out.values.insert(v, vu);
        Ok(out)
    }
}

/// Parses `name=value,...` with values in the `p[/q][+r[/s]a]` literal
/// syntax; `all=value` sets every unnamed variable and `a=value` the generic
/// parameter. Errors name the offending entry.
impl FromStr for EvalPoint {
    type Err = Error;
    /// Parses `name=value, ...`; every malformed entry is reported.
    fn from_str(s: &str) -> Result<Self> {
        let mut pt = EvalPoint::new();
        let mut errors = Vec::new();
        for entry in s.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let Some((name, value)) = entry.split_once('=') else {
                errors.push(format!("`{entry}`: expected name=value"));
                continue;
            };
            let (name, value) = (name.trim(), value.trim());
            let num: CycNum = match value.parse() {
                Ok(n) => n,
                Err(e) => {
                    errors.push(format!("{name}: {e}"));
                    continue;
                }
            };
            if num.is_zero() {
                errors.push(format!("{name}: value must be nonzero"));
                continue;
            }
            match name {
                "all" => pt.default = Some(num),
                "a" => pt.a = Some(num),
                _ => match name.parse::<VarId>() {
                    Ok(var) => {
                        pt.values.insert(var, num);
                    }
                    Err(e) => errors.push(e.to_string()),
                },
            }
        }
        if errors.is_empty() {
            Ok(pt)
        } else {
            Err(Error::Parse(errors.join("; ")))
        }
    }
}

/// `σ(a^k · ∏ v^e)` for a monomial argument.
pub fn sigma_of<C: Coefficient>(a_exp: i32, exps: &[(VarId, i32)]) -> LaurentPoly<C> {
    let t = &LaurentPoly::<C>::a_pow(a_exp) * &LaurentPoly::monomial(exps);
    t.sigma().expect("monomials are units")
}

/// `(exponent, coefficient)` parts of a generic coefficient as big integers.
pub fn generic_parts(c: &GenericCoeff) -> Vec<(i32, BigInt)> {
    c.terms().map(|(k, v)| (k, v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GenericPoly;
    type W = Omega6Poly;

    fn x1() -> VarId {
        VarId::x(1)
    }
    fn y1() -> VarId {
        VarId::y(1)
    }

    #[test]
    fn difference_of_squares() {
        let x = G::var(x1());
        let xi = x.inverse_unit().unwrap();
        let prod = &(&x - &xi) * &(&x + &xi);
        let expect = &G::monomial(&[(x1(), 2)]) - &G::monomial(&[(x1(), -2)]);
        assert_eq!(prod, expect);
        assert_eq!(&prod + &G::zero(), prod);
    }

    #[test]
    fn product_of_two_sigmas_expands_termwise() {
        // σ(a x ȳ)·σ(a x̄ y) = (a x ȳ − ā x̄ y)(a x̄ y − ā x ȳ)
        //                  = a² − x²ȳ² − x̄²y² + ā²
        let s1 = sigma_of::<GenericCoeff>(1, &[(x1(), 1), (y1(), -1)]);
        let s2 = sigma_of::<GenericCoeff>(1, &[(x1(), -1), (y1(), 1)]);
        let expect = &(&(&G::a_pow(2) - &G::monomial(&[(x1(), 2), (y1(), -2)]))
            - &G::monomial(&[(x1(), -2), (y1(), 2)]))
            + &G::a_pow(-2);
        assert_eq!(&s1 * &s2, expect);
    }

    #[test]
    fn substitution_examples() {
        let s = sigma_of::<GenericCoeff>(1, &[(x1(), 1), (y1(), -1)]);
        let to_y1 = s.substitute_monomial(x1(), &G::var(y1())).unwrap();
        assert_eq!(to_y1, G::constant(&GenericCoeff::a_pow(1).sigma().unwrap()));
        assert!(!to_y1.vars().contains(&x1()));

        let abar_y1 = &G::a_pow(-1) * &G::var(y1());
        assert!(s.substitute_monomial(x1(), &abar_y1).unwrap().is_zero());

        // x^-2 with x := a·y1 at omega6 gives a^-2 = -a
        let f = W::monomial(&[(VarId::aux(1), -2)]);
        let rep = &W::a_pow(1) * &W::var(y1());
        let got = f.substitute_monomial(VarId::aux(1), &rep).unwrap();
        let expect = W::monomial(&[(y1(), -2)]).scale(&CycNum::from_ints(0, -1));
        assert_eq!(got, expect);

        let two_terms = &G::var(y1()) + &G::one();
        assert_eq!(s.substitute_monomial(x1(), &two_terms), Err(Error::NonUnitSubstitution(2)));
    }

    #[test]
    fn degree_queries() {
        let s = sigma_of::<GenericCoeff>(1, &[(x1(), 1), (y1(), -1)]);
        assert_eq!(s.degree_range(x1()).unwrap(), (-1, 1));
        assert_eq!(G::one().degree_range(x1()).unwrap(), (0, 0));
        assert_eq!(G::zero().degree_range(x1()), Err(Error::EmptyPolynomial));

        let sx = sigma_of::<GenericCoeff>(0, &[(x1(), 1)]);
        let shape = sx.parity_and_centered(x1()).unwrap();
        assert!(shape.centered);
        assert_eq!(shape.parity, Parity::Odd);

        let skew = &G::var(x1()) + &G::monomial(&[(x1(), 2)]);
        let shape = skew.parity_and_centered(x1()).unwrap();
        assert!(!shape.centered);
        assert_eq!(shape.parity, Parity::Mixed);
    }

    #[test]
    fn symmetry_queries() {
        let (x, y) = (VarId::aux(1), VarId::aux(2));
        let f = &G::monomial(&[(x, 1), (y, 1)]) + &G::monomial(&[(x, -1), (y, -1)]);
        assert!(f.is_symmetric(x, y).unwrap());
        let s = sigma_of::<GenericCoeff>(1, &[(x, 1), (y, -1)]);
        assert!(!s.is_symmetric(x, y).unwrap());
        let w = s.first_difference(&s.swap(x, y).unwrap()).unwrap();
        assert_eq!(w.exps, vec![(x, -1), (y, 1)]);
    }

    #[test]
    fn evaluation() {
        let sx = sigma_of::<CycNum>(0, &[(x1(), 1)]);
        let pt = EvalPoint::all(CycNum::one()).unwrap();
        assert!(sx.evaluate(&pt).unwrap().is_zero());
        let unbound = EvalPoint::new();
        assert!(matches!(sx.evaluate(&unbound), Err(Error::UnboundVariable(_))));

        let g = sigma_of::<GenericCoeff>(2, &[]);
        assert!(matches!(g.evaluate(&pt), Err(Error::UnboundVariable(_))));
        let pt_a = pt.clone().with_a(CycNum::a()).unwrap();
        assert_eq!(g.evaluate(&pt_a).unwrap(), CycNum::from_ints(-1, 2));
    }

    #[test]
    fn eval_point_parsing() {
        let pt: EvalPoint = "all=1, x2=1+a, y1=-1/2".parse().unwrap();
        assert_eq!(pt.value(VarId::x(7)).unwrap(), &CycNum::one());
        assert_eq!(pt.value(VarId::x(2)).unwrap(), &CycNum::from_ints(1, 1));
        assert!("x1=0".parse::<EvalPoint>().unwrap_err().to_string().contains("x1"));
        assert!("x1=foo".parse::<EvalPoint>().unwrap_err().to_string().contains("x1"));
        assert!("q1=1".parse::<EvalPoint>().is_err());
        let both = "x1=0, y2=1/0".parse::<EvalPoint>().unwrap_err().to_string();
        assert!(both.contains("x1") && both.contains("y2"), "{both}");
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let s = sigma_of::<GenericCoeff>(1, &[(x1(), 1), (y1(), -1)]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"mode":"generic-a","vars":["x1","y1"],"terms":[{"exps":[-1,1],"coeff":{"a_terms":[[-1,"-1"]]}},{"exps":[1,-1],"coeff":{"a_terms":[[1,"1"]]}}]}"#
        );
        let back: G = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let any: AnyPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(any, AnyPoly::Generic(s));
        assert!(serde_json::from_str::<W>(&text).is_err());
    }

    #[test]
    fn mixed_modes_are_rejected_at_run_time() {
        let g = AnyPoly::Generic(G::one());
        let w = AnyPoly::Omega6(W::one());
        assert!(matches!(g.try_add(&w), Err(Error::ModeMismatch { .. })));
        assert!(g.try_mul(&g).is_ok());
    }

    #[test]
    fn var_names() {
        for name in ["x1", "y12", "x", "y", "z", "u4"] {
            assert_eq!(name.parse::<VarId>().unwrap().to_string(), name);
        }
        assert!("x0".parse::<VarId>().is_err());
        assert!("w1".parse::<VarId>().is_err());
    }
}

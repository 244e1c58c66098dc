//! Coefficient arithmetic.
//!
//! Two coefficient domains are supported:
//!
//! * [`CycNum`]: exact elements `p + q·a` of `Q(a)` with `a = exp(iπ/3)`, so
//!   `a² = a − 1`. This is the domain of every statement that only holds at
//!   the sixth root of unity.
//! * [`GenericCoeff`]: integer Laurent polynomials in an indeterminate `a`,
//!   with no relation imposed. Identities that hold for every value of the
//!   global parameter are checked here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which coefficient domain a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffMode {
    /// `a` is an indeterminate.
    GenericA,
    /// `a = exp(iπ/3)`.
    Omega6,
}

impl CoeffMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoeffMode::GenericA => "generic-a",
            CoeffMode::Omega6 => "omega6",
        }
    }
}

impl fmt::Display for CoeffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoeffMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic-a" | "generic" => Ok(CoeffMode::GenericA),
            "omega6" => Ok(CoeffMode::Omega6),
            other => Err(Error::Parse(format!("unknown coefficient mode `{other}`"))),
        }
    }
}

impl Serialize for CoeffMode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CoeffMode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// An element `p + q·a` of `Q(a)`, `a² − a + 1 = 0`.
///
/// The pair `(p, q)` is the canonical form: two values are equal exactly when
/// their pairs are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: BigRational,
    q: BigRational,
}

impl CycNum {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        CycNum { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        CycNum {
            p: BigRational::from_integer(p.into()),
            q: BigRational::from_integer(q.into()),
        }
    }

    pub fn from_int(p: i64) -> Self {
        Self::from_ints(p, 0)
    }

    pub fn from_bigint(p: BigInt) -> Self {
        CycNum { p: BigRational::from_integer(p), q: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    /// The generator `a = exp(iπ/3)`.
    pub fn a() -> Self {
        Self::from_ints(0, 1)
    }

    /// `a^k`, using `a⁶ = 1`.
    pub fn a_pow(k: i64) -> Self {
        match k.rem_euclid(6) {
            0 => Self::from_ints(1, 0),
            1 => Self::from_ints(0, 1),
            2 => Self::from_ints(-1, 1),
            3 => Self::from_ints(-1, 0),
            4 => Self::from_ints(0, -1),
            _ => Self::from_ints(1, -1),
        }
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    /// True when both components are integers.
    pub fn is_integral(&self) -> bool {
        self.p.is_integer() && self.q.is_integer()
    }

    /// Complex conjugate; `ā = 1 − a`.
    pub fn conj(&self) -> Self {
        CycNum { p: &self.p + &self.q, q: -&self.q }
    }

    /// Field norm `p² + pq + q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p + &self.p * &self.q + &self.q * &self.q
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(CycNum { p: c.p / &n, q: c.q / &n })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `σ(t) = t − t⁻¹`.
    pub fn sigma(&self) -> Result<Self> {
        Ok(self - &self.inv()?)
    }
}

impl<'a> std::ops::Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl<'a> std::ops::Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl<'a> std::ops::Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        // (p + qa)(r + sa) = pr + (ps + qr)a + qs·a², and a² = a − 1
        let qs = &self.q * &rhs.q;
        CycNum {
            p: &self.p * &rhs.p - &qs,
            q: &self.p * &rhs.q + &self.q * &rhs.p + qs,
        }
    }
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { p: -&self.p, q: -&self.q }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl std::ops::$tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { std::ops::$tr::$m(&self, &rhs) }
        }
    )*};
}
forward_owned!(CycNum, Add::add, Sub::sub, Mul::mul);

impl std::ops::Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) => write_a_term(f, &self.q, false),
            (false, false) => {
                write!(f, "{}", self.p)?;
                write_a_term(f, &self.q, true)
            }
        }
    }
}

fn write_a_term(f: &mut fmt::Formatter<'_>, q: &BigRational, leading_sign: bool) -> fmt::Result {
    let mag = q.abs();
    if q.is_negative() {
        f.write_str(if leading_sign { " - " } else { "-" })?;
    } else if leading_sign {
        f.write_str(" + ")?;
    }
    if mag.is_one() {
        f.write_str("a")
    } else {
        write!(f, "{mag}a")
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::ZeroDivision);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses literals of the form `p[/q][+r[/s]a]`, e.g. `3`, `-1/2`, `1-a`,
/// `2/3+5a`, `a`.
impl FromStr for CycNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        for (from, to) in [("+-", "-"), ("-+", "-"), ("--", "+")] {
            s = s.replace(from, to);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let Some(body) = s.strip_suffix('a') else {
            return Ok(CycNum { p: parse_rational(&s)?, q: BigRational::zero() });
        };
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (real, acoef) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let p = if real.is_empty() { BigRational::zero() } else { parse_rational(real)? };
        let q = match acoef {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Ok(CycNum { p, q })
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    p: String,
    q: String,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr { p: self.p.to_string(), q: self.q.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CycNumRepr::deserialize(d)?;
        Ok(CycNum {
            p: parse_rational(&r.p).map_err(D::Error::custom)?,
            q: parse_rational(&r.q).map_err(D::Error::custom)?,
        })
    }
}

/// Storage form of a `CycNum` inside polynomials: a pair of machine
/// integers while the value is integral and small, a boxed `CycNum` otherwise.
#[derive(Clone, Debug)]
pub enum CycScalar {
    Small(i64, i64),
    Big(Box<CycNum>),
}

impl CycScalar {
    pub fn from_cyc(c: &CycNum) -> Self {
        use num_traits::ToPrimitive;
        if c.p.is_integer() && c.q.is_integer() {
            if let (Some(p), Some(q)) = (c.p.numer().to_i64(), c.q.numer().to_i64()) {
                return CycScalar::Small(p, q);
            }
        }
        CycScalar::Big(Box::new(c.clone()))
    }

    pub fn to_cyc(&self) -> CycNum {
        match self {
            CycScalar::Small(p, q) => CycNum::from_ints(*p, *q),
            CycScalar::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CycScalar::Small(0, 0))
    }

    pub fn add_assign_ref(&mut self, other: &CycScalar) {
        if let (CycScalar::Small(p, q), CycScalar::Small(r, s)) = (&*self, other) {
            if let (Some(x), Some(y)) = (p.checked_add(*r), q.checked_add(*s)) {
                *self = CycScalar::Small(x, y);
                return;
            }
        }
        *self = CycScalar::from_cyc(&(&self.to_cyc() + &other.to_cyc()));
    }

    pub fn mul_ref(&self, other: &CycScalar) -> CycScalar {
        if let (CycScalar::Small(p, q), CycScalar::Small(r, s)) = (self, other) {
            let small = || {
                let qs = q.checked_mul(*s)?;
                let x = p.checked_mul(*r)?.checked_sub(qs)?;
                let y = p.checked_mul(*s)?.checked_add(q.checked_mul(*r)?)?.checked_add(qs)?;
                Some(CycScalar::Small(x, y))
            };
            if let Some(v) = small() {
                return v;
            }
        }
        CycScalar::from_cyc(&(&self.to_cyc() * &other.to_cyc()))
    }

    pub fn neg_ref(&self) -> CycScalar {
        if let CycScalar::Small(p, q) = self {
            if let (Some(x), Some(y)) = (p.checked_neg(), q.checked_neg()) {
                return CycScalar::Small(x, y);
            }
        }
        CycScalar::from_cyc(&-self.to_cyc())
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (CycScalar::Small(p, q), CycScalar::Small(r, s)) => p == r && q == s,
            (CycScalar::Big(a), CycScalar::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for CycScalar {}

impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            CycScalar::Small(p, q) => (p, q).hash(state),
            CycScalar::Big(b) => b.hash(state),
        }
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_cyc(), f)
    }
}

/// Integer Laurent polynomial in the indeterminate `a`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GenericCoeff {
    // no zero values stored
    terms: BTreeMap<i32, BigInt>,
}

impl GenericCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c·a^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        let mut g = Self::zero();
        g.add_term(k, BigInt::from(c));
        g
    }

    pub fn a_pow(k: i32) -> Self {
        Self::monomial(1, k)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, BigInt)>) -> Self {
        let mut g = Self::zero();
        for (k, c) in terms {
            g.add_term(k, c);
        }
        g
    }

    fn add_term(&mut self, k: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of `Z[a, a⁻¹]` are `±a^k`.
    pub fn as_unit(&self) -> Option<(i32, bool)> {
        match self.terms.iter().next() {
            Some((k, c)) if self.terms.len() == 1 && c.abs().is_one() => Some((*k, c.is_negative())),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self.as_unit() {
            Some((k, neg)) => Ok(Self::monomial(if neg { -1 } else { 1 }, -k)),
            None => Err(Error::NotInvertible(self.to_string())),
        }
    }

    /// `σ(u) = u − u⁻¹` for a unit `u`.
    pub fn sigma(&self) -> Result<Self> {
        Ok(self - &self.inv()?)
    }

    /// Value at `a = exp(iπ/3)`.
    pub fn at_omega6(&self) -> CycNum {
        self.terms.iter().fold(CycNum::zero(), |acc, (k, c)| {
            &acc + &(&CycNum::a_pow(*k as i64) * &CycNum::from_bigint(c.clone()))
        })
    }
}

impl<'a> std::ops::Add<&'a GenericCoeff> for &'a GenericCoeff {
    type Output = GenericCoeff;
    fn add(self, rhs: &GenericCoeff) -> GenericCoeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a GenericCoeff> for &'a GenericCoeff {
    type Output = GenericCoeff;
    fn sub(self, rhs: &GenericCoeff) -> GenericCoeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a GenericCoeff> for &'a GenericCoeff {
    type Output = GenericCoeff;
    fn mul(self, rhs: &GenericCoeff) -> GenericCoeff {
        let mut out = GenericCoeff::zero();
        for (i, c) in &self.terms {
            for (j, d) in &rhs.terms {
                out.add_term(i + j, c * d);
            }
        }
        out
    }
}

impl std::ops::Neg for &GenericCoeff {
    type Output = GenericCoeff;
    fn neg(self) -> GenericCoeff {
        GenericCoeff { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

forward_owned!(GenericCoeff, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for GenericCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("a")?,
                (k, true) => write!(f, "a^{k}")?,
                (1, false) => write!(f, "{mag}a")?,
                (k, false) => write!(f, "{mag}a^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GenericCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenericCoeff({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct GenericRepr {
    a_terms: Vec<(i32, String)>,
}

impl Serialize for GenericCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GenericRepr { a_terms: self.terms.iter().map(|(k, c)| (*k, c.to_string())).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenericCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GenericRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(r.a_terms.len());
        for (k, c) in r.a_terms {
            terms.push((k, c.parse::<BigInt>().map_err(D::Error::custom)?));
        }
        Ok(GenericCoeff::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyc_scalar_overflows_into_rationals() {
        let big = CycScalar::Small(i64::MAX, 1);
        let sq = big.mul_ref(&big);
        assert!(matches!(sq, CycScalar::Big(_)));
        let c = CycNum::from_ints(i64::MAX, 1);
        assert_eq!(sq.to_cyc(), &c * &c);
        let mut s = CycScalar::Small(i64::MAX, 0);
        s.add_assign_ref(&CycScalar::Small(1, 0));
        s.add_assign_ref(&CycScalar::Small(-1, 0));
        assert_eq!(s, CycScalar::Small(i64::MAX, 0));
        let half = CycScalar::from_cyc(&"1/2".parse().unwrap());
        assert!(matches!(half, CycScalar::Big(_)));
    }

    #[test]
    fn a_squared_reduces() {
        let a = CycNum::a();
        assert_eq!(&a * &a, CycNum::from_ints(-1, 1));
        assert_eq!(a.pow(3).unwrap(), CycNum::from_int(-1));
        assert_eq!(a.pow(6).unwrap(), CycNum::one());
        let min_poly = &(&(&a * &a) - &a) + &CycNum::one();
        assert!(min_poly.is_zero());
    }

    #[test]
    fn inverses() {
        let a = CycNum::a();
        assert_eq!(a.inv().unwrap(), CycNum::from_ints(1, -1));
        assert_eq!(&a * &CycNum::from_ints(1, -1), CycNum::one());
        assert_eq!(CycNum::one().inv().unwrap(), CycNum::one());
        let u = CycNum::from_ints(-1, 2);
        assert_eq!(&u * &u, CycNum::from_int(-3));
        assert_eq!(&u.inv().unwrap() * &u, CycNum::one());
        assert_eq!(CycNum::zero().inv(), Err(Error::ZeroDivision));
        for k in -12..12 {
            assert_eq!(CycNum::a_pow(k), a.pow(k).unwrap());
        }
    }

    #[test]
    fn sigma_values() {
        assert!(CycNum::one().sigma().unwrap().is_zero());
        let two_a_minus_one = CycNum::from_ints(-1, 2);
        assert_eq!(CycNum::a().sigma().unwrap(), two_a_minus_one);
        assert_eq!(CycNum::a_pow(2).sigma().unwrap(), two_a_minus_one);
        assert_eq!(CycNum::zero().sigma(), Err(Error::ZeroDivision));

        let s = GenericCoeff::a_pow(2).sigma().unwrap();
        assert_eq!(s, &GenericCoeff::a_pow(2) - &GenericCoeff::a_pow(-2));
        assert_eq!(s.len(), 2);
        assert!(GenericCoeff::monomial(2, 1).sigma().is_err());
    }

    #[test]
    fn literal_parsing() {
        let cases = [
            ("3", (3, 1, 0, 1)),
            ("-1/2", (-1, 2, 0, 1)),
            ("a", (0, 1, 1, 1)),
            ("-a", (0, 1, -1, 1)),
            ("1-a", (1, 1, -1, 1)),
            ("2/3+5a", (2, 3, 5, 1)),
            ("1/2+3/4a", (1, 2, 3, 4)),
            ("-2-1/3a", (-2, 1, -1, 3)),
        ];
        for (text, (pn, pd, qn, qd)) in cases {
            let v: CycNum = text.parse().unwrap();
            assert_eq!(v.p(), &BigRational::new(pn.into(), pd.into()), "{text}");
            assert_eq!(v.q(), &BigRational::new(qn.into(), qd.into()), "{text}");
        }
        assert!("x".parse::<CycNum>().is_err());
        assert!("1/0".parse::<CycNum>().is_err());
        assert!("".parse::<CycNum>().is_err());
    }

    #[test]
    fn json_shapes() {
        let v = CycNum::from_ints(18, 0);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"p":"18","q":"0"}"#);
        let back: CycNum = serde_json::from_str(r#"{"p":"-3/4","q":"2"}"#).unwrap();
        assert_eq!(back, "-3/4+2a".parse().unwrap());

        let g = GenericCoeff::a_pow(2).sigma().unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"a_terms":[[-2,"-1"],[2,"1"]]}"#);
        assert_eq!(serde_json::from_str::<GenericCoeff>(&text).unwrap(), g);
    }

    #[test]
    fn generic_evaluates_at_omega6() {
        let s = GenericCoeff::a_pow(2).sigma().unwrap();
        assert_eq!(s.at_omega6(), CycNum::from_ints(-1, 2));
    }
}

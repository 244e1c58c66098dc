//! Arbitrary precision integer that stays on the machine word while it can.
//!
//! Symbolic partition functions hold millions of small coefficients; a heap
//! allocated `BigInt` per term costs several times the memory of the term
//! itself, so values only leave `i64` when an operation overflows.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Int {
    Small(i64),
    // invariant: never representable as i64
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn add_assign_ref(&mut self, other: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_add(*b) {
                *self = Int::Small(s);
                return;
            }
        }
        *self = Int::from_big(self.to_bigint() + other.to_bigint());
    }

    pub fn sub_assign_ref(&mut self, other: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&*self, other) {
            if let Some(s) = a.checked_sub(*b) {
                *self = Int::Small(s);
                return;
            }
        }
        *self = Int::from_big(self.to_bigint() - other.to_bigint());
    }

    pub fn mul_ref(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(p) = a.checked_mul(*b) {
                return Int::Small(p);
            }
        }
        Int::from_big(self.to_bigint() * other.to_bigint())
    }

    pub fn neg_ref(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        v.to_bigint()
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => v.hash(state),
            Int::Big(b) => b.hash(state),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl std::ops::Add for Int {
    type Output = Int;
    fn add(mut self, rhs: Int) -> Int {
        self.add_assign_ref(&rhs);
        self
    }
}

impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        self.mul_ref(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let mut x = Int::from(i64::MAX);
        x.add_assign_ref(&Int::ONE);
        assert!(matches!(x, Int::Big(_)));
        x.sub_assign_ref(&Int::ONE);
        assert_eq!(x, Int::Small(i64::MAX));

        let sq = Int::from(i64::MIN).mul_ref(&Int::from(i64::MIN));
        assert_eq!(sq.to_bigint(), BigInt::from(i64::MIN) * BigInt::from(i64::MIN));
        assert_eq!(Int::from(i64::MIN).neg_ref().neg_ref(), Int::from(i64::MIN));
    }
}

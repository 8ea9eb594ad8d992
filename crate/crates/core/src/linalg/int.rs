//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Boundary matrices start out with entries in {-1, 0, 1}; growth only
//! happens during elimination, so nearly every value stays small. Values
//! are promoted to `BigInt` on overflow and demoted again whenever they fit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    /// Boxed so the common small case keeps `Int` at two words.
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

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn is_even(&self) -> bool {
        match self {
            Int::Small(v) => v & 1 == 0,
            Int::Big(b) => b.is_even(),
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(Box::new(BigInt::from(*v).abs())),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    /// Floor division and the matching non-negative-or-sign-of-divisor remainder.
    pub fn div_mod_floor(&self, other: &Int) -> (Int, Int) {
        assert!(!other.is_zero(), "division by zero");
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                let (q, r) = a.div_mod_floor(b);
                (Int::Small(q), Int::Small(r))
            }
            _ => {
                let (q, r) = self.to_big().div_mod_floor(&other.to_big());
                (Int::from_big(q), Int::from_big(r))
            }
        }
    }

    /// Exact division; panics if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        let (q, r) = self.div_mod_floor(other);
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Non-negative residue modulo a positive modulus.
    pub fn rem_euclid(&self, modulus: &Int) -> Int {
        let m = modulus.abs();
        self.div_mod_floor(&m).1
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => Int::Small(a.gcd(b)),
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    /// Parity as a bit.
    pub fn mod2(&self) -> bool {
        !self.is_even()
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        Int::from_big(BigInt::from(v))
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl From<&Int> for BigInt {
    fn from(v: &Int) -> Self {
        v.to_big()
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

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl<'a> $trait<&'a Int> for &'a Int {
            type Output = Int;
            fn $method(self, rhs: &'a Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_big(self.to_big() $op rhs.to_big())
            }
        }

        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &'a Int) -> Int {
                (&self).$method(rhs)
            }
        }
    };
}

checked_binop!(Add, add, checked_add, +);
checked_binop!(Sub, sub, checked_sub, -);
checked_binop!(Mul, mul, checked_mul, *);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(Box::new(-BigInt::from(*v))),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Int::from(i64::MAX) + Int::ONE;
        assert!(matches!(big, Int::Big(_)));
        let back = big - Int::ONE;
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = Int::from(i64::MAX) * Int::from(i64::MAX);
        assert_eq!(sq.div_exact(&Int::from(i64::MAX)), Int::from(i64::MAX));
    }

    #[test]
    fn floor_division_matches_sign_of_divisor() {
        let (q, r) = Int::from(-7).div_mod_floor(&Int::from(2));
        assert_eq!((q, r), (Int::from(-4), Int::from(1)));
        assert_eq!(Int::from(-7).rem_euclid(&Int::from(4)), Int::from(1));
        assert_eq!(Int::from(i64::MIN).abs().to_string(), "9223372036854775808");
    }

    #[test]
    fn gcd_handles_signs() {
        assert_eq!(Int::from(-12).gcd(&Int::from(18)), Int::from(6));
        assert_eq!(Int::ZERO.gcd(&Int::from(-5)), Int::from(5));
    }
}

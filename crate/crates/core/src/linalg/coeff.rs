use std::fmt::Debug;

use super::int::Int;

/// Coefficient ring for sparse chain-complex reduction.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Inverse of a unit.
    fn unit_inverse(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coeff for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn one() -> Self {
        Int::ONE
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        Int::is_unit(self)
    }
    fn unit_inverse(&self) -> Self {
        debug_assert!(self.is_unit());
        self.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gf2(pub bool);

impl Coeff for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_unit(&self) -> bool {
        self.0
    }
    fn unit_inverse(&self) -> Self {
        *self
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
}

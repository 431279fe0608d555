//! The coefficient-ring abstraction shared by series, matrices and tensors.

use std::fmt;

use crate::exactfield::RatFunc;

/// A (possibly noncommutative) unital ring that is also a module over the
/// rational-function scalars.
///
/// Method names avoid the `std::ops` ones so both can be in scope.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scale(&self, c: &RatFunc) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }

    /// The scalar `c` embedded as `c * 1`.
    fn from_scalar(c: &RatFunc) -> Self {
        Self::one().scale(c)
    }

    /// Two-sided inverse when the element is a unit that is cheap to invert.
    fn try_inverse(&self) -> Option<Self> {
        None
    }

    /// Z2 degree of a homogeneous element; `None` when inhomogeneous.
    fn parity(&self) -> Option<u8> {
        Some(0)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &RatFunc) -> Self {
        self * c
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn from_scalar(c: &RatFunc) -> Self {
        c.clone()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Sum of a slice of ring elements.
pub fn sum<R: Ring>(items: impl IntoIterator<Item = R>) -> R {
    items.into_iter().fold(R::zero(), |acc, x| acc.plus(&x))
}

/// `(-1)^e` as a scalar.
pub fn sign(e: i64) -> RatFunc {
    if e.rem_euclid(2) == 0 {
        RatFunc::one()
    } else {
        RatFunc::int(-1)
    }
}

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

/// Commutative ring with the handful of operations the polynomial and
/// series code needs.
///
/// Constants are produced from an existing element (`zero_like`,
/// `one_like`, `scalar_like`) so that types carrying a working
/// precision can propagate it.
pub trait Ring: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scalar_like(&self, q: &ExactScalar) -> Self;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn mul_int(&self, k: i64) -> Self {
        self.mul(&self.scalar_like(&ExactScalar::from_integer(k.into())))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Integral domain with exact division: `a.exact_div(b)` succeeds iff `b`
/// divides `a`.
pub trait ExactDiv: Ring {
    fn exact_div(&self, divisor: &Self) -> Result<Self>;
}

/// Field (or a floating approximation of one).
pub trait Field: Ring {
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl Ring for ExactScalar {
    fn zero_like(&self) -> Self {
        ExactScalar::zero()
    }
    fn one_like(&self) -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scalar_like(&self, q: &ExactScalar) -> Self {
        q.clone()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl ExactDiv for ExactScalar {
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        Field::div(self, divisor)
    }
}

impl Field for ExactScalar {
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// Sign of an exact scalar as -1, 0, 1.
pub fn sign_of(q: &ExactScalar) -> i8 {
    if Zero::is_zero(q) {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

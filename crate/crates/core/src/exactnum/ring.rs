use std::fmt::Debug;

use num_traits::{One, Zero};

use super::QiScalar;

/// Commutative rings over Q(i) that polynomial evaluation and the base-change
/// operator can run in.
///
/// Elements may carry context (a variable count, a radical), so constants are
/// made "like" an existing element rather than from nothing.
pub trait Ring: Clone + PartialEq + Debug {
    fn constant_like(&self, c: &QiScalar) -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_scale(&self, c: &QiScalar) -> Self;
    fn ring_is_zero(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.constant_like(&QiScalar::zero())
    }

    fn one_like(&self) -> Self {
        self.constant_like(&QiScalar::one())
    }

    fn ring_sub(&self, rhs: &Self) -> Self {
        self.ring_add(&rhs.ring_scale(&QiScalar::from_int(-1)))
    }

    fn ring_pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.ring_mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.ring_mul(&base);
            }
        }
        acc
    }
}

impl Ring for QiScalar {
    fn constant_like(&self, c: &QiScalar) -> Self {
        c.clone()
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn ring_scale(&self, c: &QiScalar) -> Self {
        self * c
    }

    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }

    fn ring_pow(&self, k: u32) -> Self {
        self.pow(k)
    }
}

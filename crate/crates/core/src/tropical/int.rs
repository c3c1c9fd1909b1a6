//! Integer arithmetic backends for the combinatorial kernels: `i64` when a
//! magnitude bound proves it safe, `BigInt` otherwise.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

pub trait Int: Clone + Ord + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_u(&self, k: u64) -> Self;
}

impl Int for i64 {
    fn zero() -> Self {
        0
    }
    fn from_big(b: &BigInt) -> Self {
        b.to_i64().expect("magnitude bound violated")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_u(&self, k: u64) -> Self {
        self * k as i64
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_u(&self, k: u64) -> Self {
        self * k
    }
}

/// Whether every intermediate bounded by `max_abs * factor` fits in an i64
/// with headroom.
pub fn fits_i64(max_abs: &BigInt, factor: u64) -> bool {
    let bound = max_abs.abs() * BigInt::from(factor.max(1));
    bound < BigInt::from(1i64 << 61)
}

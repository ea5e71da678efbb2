//! Coefficient types for the truncated cohomology rings and genus evaluation.
//!
//! Integer rings only invert `±1`; fields invert every nonzero element. All
//! integer results of the crate use [`BigInt`](num_bigint::BigInt), but the
//! ring code works just as well over machine integers (fast, overflow is the
//! caller's problem), rationals, or floats.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + FromPrimitive {
    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
}

macro_rules! int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn unit_inverse(&self) -> Option<Self> {
                if self.is_one() || (-self.clone()).is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
        }
    )*};
}

int_scalar!(i32, i64, i128, BigInt);

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + FromPrimitive,
    Ratio<T>: FromPrimitive,
{
    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

macro_rules! float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn unit_inverse(&self) -> Option<Self> {
                if *self == 0.0 { None } else { Some(1.0 / self) }
            }
        }
    )*};
}

float_scalar!(f32, f64);

/// `base^exp` by repeated squaring.
pub fn pow<T: Scalar>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// `(-1)^e` in `T`.
pub fn sign_power<T: Scalar>(e: u64) -> T {
    if e.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

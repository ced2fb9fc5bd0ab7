//! Exact scalar fields the library computes over.
//!
//! Every decision the library makes (ranks, containments, equality of
//! subspaces) must be exact, so only fraction fields of integer types
//! implement [`Scalar`]. Floating-point types are deliberately absent.
//! Ranks of rational matrices are the same over the complex numbers, which
//! is what lets rational sample points stand in for complex ones.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive};

use crate::linalg::elimination;

/// An exact field scalar.
///
/// The fixed-width fraction types (`Rational64` and friends) panic on
/// overflow in debug builds; they are only suitable for small instances.
/// [`BigRational`] never overflows and is the default everywhere.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + FromStr
    + Num
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(value: i64) -> Self;

    /// Brings `rows` (each of length `cols`) to reduced row-echelon form in
    /// place, dropping zero rows, and returns the pivot columns.
    fn row_reduce(rows: &mut Vec<Vec<Self>>, cols: usize) -> Vec<usize> {
        elimination::gauss_jordan(rows, cols)
    }

    /// Image in `Z/p` for a prime `p < 2^63`, or `None` when `p` divides the
    /// denominator.
    fn residue(&self, p: u64) -> Option<u64>;
}

fn ratio_residue<I>(r: &Ratio<I>, p: u64) -> Option<u64>
where
    I: Clone + Integer + Into<BigInt>,
{
    let p_big = BigInt::from(p);
    let reduce = |i: &I| -> u64 {
        let v: BigInt = i.clone().into();
        v.mod_floor(&p_big).to_u64().expect("residue below p")
    };
    let num = reduce(r.numer());
    let den = reduce(r.denom());
    (den != 0).then(|| elimination::mul_mod(num, elimination::inv_mod(den, p), p))
}

macro_rules! fixed_width_scalar {
    ($($int:ty),*) => {$(
        impl Scalar for Ratio<$int> {
            fn from_i64(value: i64) -> Self {
                Ratio::from_integer(<$int>::try_from(value).expect("integer out of range"))
            }

            fn residue(&self, p: u64) -> Option<u64> {
                ratio_residue(self, p)
            }
        }
    )*};
}

fixed_width_scalar!(i32, i64, i128);

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(BigInt::from(value))
    }

    fn row_reduce(rows: &mut Vec<Vec<Self>>, cols: usize) -> Vec<usize> {
        elimination::fraction_free(rows, cols)
    }

    fn residue(&self, p: u64) -> Option<u64> {
        ratio_residue(self, p)
    }
}

pub(crate) fn factorial<T: Scalar>(n: u32) -> T {
    (2..=n as i64).fold(T::one(), |acc, m| acc * T::from_i64(m))
}

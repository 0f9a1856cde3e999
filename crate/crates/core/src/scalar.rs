//! Scalar ring for exact matrix arithmetic.
//!
//! Everything downstream (Smith forms, kernels, homology) only needs an
//! integer-like ring with exact division data: gcd, extended gcd, sign.
//! The engine runs on `BigInt` (see the `Int` alias at the crate root) so no
//! computation ever overflows; `i64`/`i128` instantiations exist for small
//! experiments and tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::fmt::{Debug, Display};
use std::hash::Hash;

pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// `a * b` without consuming either operand. Overridden where the
    /// concrete type has a by-reference multiply that avoids a clone.
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a.clone() * b.clone()
    }

    fn add_assign_ref(acc: &mut Self, x: &Self) {
        *acc = acc.clone() + x.clone();
    }

    fn sub_assign_ref(acc: &mut Self, x: &Self) {
        *acc = acc.clone() - x.clone();
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }

    fn add_assign_ref(acc: &mut Self, x: &Self) {
        *acc += x;
    }

    fn sub_assign_ref(acc: &mut Self, x: &Self) {
        *acc -= x;
    }
}

//! Scalar abstractions shared by the polynomial and counting code.
//!
//! Coefficients of binomials and Hilbert numerators live in a [`Ring`]; facet
//! counts and multiplicities live in a [`Count`]. Both are blanket-implemented
//! for every type satisfying the bounds, so `i64`/`BigInt` and `u64`/`BigUint`
//! work out of the box.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed, Unsigned};

/// Signed exact coefficient ring (e.g. `i64`, `i128`, `BigInt`).
pub trait Ring: Num + Signed + Clone + Debug {}

impl<T> Ring for T where T: Num + Signed + Clone + Debug {}

/// Unsigned counting type (e.g. `u64`, `u128`, `BigUint`).
pub trait Count: Num + Unsigned + Clone + Ord + Debug + FromPrimitive {}

impl<T> Count for T where T: Num + Unsigned + Clone + Ord + Debug + FromPrimitive {}

pub(crate) fn from_u64<T: FromPrimitive>(value: u64) -> T {
    T::from_u64(value).expect("counting type must represent small integers")
}

/// `binom(n, k)` computed by the exact multiplicative recurrence.
///
/// Intermediate products are `binom(n, i) * (n - i)`, so fixed-width types
/// overflow well before the final value does; use `BigUint` for large inputs.
pub fn binomial<T: Count>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * from_u64::<T>(n - i) / from_u64::<T>(i + 1);
    }
    acc
}

/// Serde helpers: big integers become JSON numbers when they fit in 64 bits,
/// decimal strings otherwise.
pub mod big_serde {
    use num_bigint::{BigInt, BigUint};
    use num_traits::ToPrimitive;
    use serde::Serializer;

    pub fn uint<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match x.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn int_seq<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&Wrapped(x))?;
        }
        seq.end()
    }

    struct Wrapped<'a>(&'a BigInt);

    impl serde::Serialize for Wrapped<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            int(self.0, s)
        }
    }
}

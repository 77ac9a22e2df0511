//! Integer scalar types usable as coefficients.
//!
//! All ring and polynomial types are generic over a [`Scalar`]. The default
//! instantiation is [`BigInt`]; fixed-width integers are accepted for small
//! computations where overflow is known not to happen.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssignRef, NumRef, Signed, ToPrimitive};

/// An exact signed integer type.
pub trait Scalar:
    NumRef + NumAssignRef + Signed + Clone + Debug + Display + Eq + Ord + Hash + Send + Sync + 'static
{
    fn to_bigint(&self) -> BigInt;

    /// `None` when the value does not fit.
    fn from_bigint(v: &BigInt) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.to_bigint())
    }

    /// Integral rationals only.
    fn from_rational(v: &BigRational) -> Option<Self> {
        if v.is_integer() {
            Self::from_bigint(v.numer())
        } else {
            None
        }
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

macro_rules! impl_scalar_prim {
    ($($t:ty => $to:ident),*) => {
        $(
            impl Scalar for $t {
                fn to_bigint(&self) -> BigInt {
                    BigInt::from(*self)
                }

                fn from_bigint(v: &BigInt) -> Option<Self> {
                    v.$to()
                }

                fn from_i64(v: i64) -> Self {
                    <$t>::try_from(v).expect("scalar out of range")
                }
            }
        )*
    };
}

impl_scalar_prim!(i32 => to_i32, i64 => to_i64, i128 => to_i128);

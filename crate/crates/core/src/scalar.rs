//! Coefficient rings for group-ring elements.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

/// An exact coefficient ring: integers or rationals.
pub trait Scalar: Num + Signed + Clone + Debug + Display + Eq + Hash + Send + Sync + 'static {
    fn to_rational(&self) -> BigRational;

    /// Returns `None` when the value has a nontrivial denominator.
    fn to_integer(&self) -> Option<BigInt>;

    fn from_integer(n: BigInt) -> Self;

    /// Returns `None` when the value is not representable.
    fn from_rational(q: BigRational) -> Option<Self>;
}

impl Scalar for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn to_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }

    fn from_integer(n: BigInt) -> Self {
        n
    }

    fn from_rational(q: BigRational) -> Option<Self> {
        q.is_integer().then(|| q.to_integer())
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| BigRational::to_integer(self))
    }

    fn from_integer(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn from_rational(q: BigRational) -> Option<Self> {
        Some(q)
    }
}

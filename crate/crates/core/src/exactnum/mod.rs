//! Exact scalars: big rationals, univariate polynomials, reduced rational
//! functions in one formal variable, and the scalar trait the rest of the
//! crate is generic over.

mod poly;
mod ratfunc;
pub mod series;

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Textual form used in reports: `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// Coefficient type for group-algebra elements and operators.
///
/// Exact types (`Rational`, `RationalFunction`) and the float types both
/// implement it; elimination and rank live on the exact path only.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: &Rational) -> Self;

    /// `self / rhs`, or `None` when `rhs` is zero.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl Scalar for RationalFunction {
    fn from_rational(r: &Rational) -> Self {
        RationalFunction::constant(r.clone())
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
}

macro_rules! float_scalar {
    ($t:ty, $conv:ident) => {
        impl Scalar for $t {
            fn from_rational(r: &Rational) -> Self {
                r.$conv().unwrap_or(<$t>::NAN)
            }

            fn try_div(&self, rhs: &Self) -> Option<Self> {
                if *rhs == 0.0 {
                    None
                } else {
                    Some(self / rhs)
                }
            }
        }
    };
}

float_scalar!(f64, to_f64);
float_scalar!(f32, to_f32);

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

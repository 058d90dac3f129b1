use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Ratio of two polynomials in the formal variable ε, kept reduced:
/// numerator and denominator are coprime and the denominator is monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = Polynomial::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).unwrap().0, den.div_rem(&g).unwrap().0)
        };
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    /// The formal variable ε.
    pub fn epsilon() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn inverse(&self) -> Result<Self> {
        RationalFunction::one().checked_div(self)
    }

    /// Value at ε = 0. Since the function is reduced, a vanishing denominator
    /// there is a genuine pole.
    pub fn eval_at_zero(&self) -> Result<Rational> {
        self.eval(&Rational::zero())
            .map_err(|_| Error::PoleAtLimit(format!("{self} has a pole at 0")))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtLimit(format!("{self} has a pole at {x}")));
        }
        Ok(self.num.eval(x) / d)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn lin(a: i64, b: i64) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::linear(int(a), int(b)))
    }

    #[test]
    fn cancellation() {
        let e = RationalFunction::epsilon();
        let inv = e.inverse().unwrap();
        assert_eq!(&inv * &e, RationalFunction::one());
    }

    #[test]
    fn sum_of_reciprocals() {
        let a = lin(1, -1).inverse().unwrap();
        let b = lin(1, 1).inverse().unwrap();
        let expected = RationalFunction::new(
            Polynomial::constant(int(2)),
            Polynomial::new(vec![int(1), int(0), int(-1)]),
        )
        .unwrap();
        assert_eq!(&a + &b, expected);
    }

    #[test]
    fn divide_by_zero() {
        assert_eq!(lin(0, 1).checked_div(&RationalFunction::zero()), Err(Error::DivisionByZero));
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn values_at_zero() {
        let f = lin(2, 1).checked_div(&lin(1, 1)).unwrap();
        assert_eq!(f.eval_at_zero().unwrap(), int(2));
        let g = lin(0, 1).checked_div(&lin(0, 1)).unwrap();
        assert_eq!(g.eval_at_zero().unwrap(), int(1));
        let h = RationalFunction::one().checked_div(&lin(0, 1)).unwrap();
        assert!(matches!(h.eval_at_zero(), Err(Error::PoleAtLimit(_))));
    }

    #[test]
    fn denominator_is_monic() {
        let f = lin(1, 0).checked_div(&lin(4, 2)).unwrap();
        assert_eq!(f.den().leading().cloned(), Some(int(1)));
    }
}

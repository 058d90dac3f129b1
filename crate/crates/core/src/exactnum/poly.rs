use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial over the rationals, coefficients in ascending degree.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `a + b·x`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = Rational::one() / lc;
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * di;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    /// `gcd(0, 0)` is `0`.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("b is nonzero").1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})e")?,
                _ => write!(f, "({c})e^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_identity() {
        let a = p(&[-1, 0, 0, 1]);
        let d = p(&[-1, 1]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(a.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[-2, 0, 2]); // 2(x-1)(x+1)
        let b = p(&[3, 3]); // 3(x+1)
        assert_eq!(Polynomial::gcd(&a, &b), p(&[1, 1]));
        assert_eq!(Polynomial::gcd(&p(&[2]), &p(&[0, 1])), Polynomial::one());
    }

    #[test]
    fn eval_horner() {
        assert_eq!(p(&[1, 2, 3]).eval(&rat(1, 2)), rat(11, 4));
    }
}

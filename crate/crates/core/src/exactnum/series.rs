//! Limits of ordered products of factors `1 - X/(a + b·ε)` at `ε = 0`.
//!
//! Each factor equals `((a + bε) - X) / (a + bε)`. The numerators are
//! multiplied as polynomials in ε with algebra-valued coefficients, truncated
//! at degree `K`, the number of factors whose constant term `a` vanishes.
//! The denominator is `ε^K · (C + O(ε))` with `C` the product of the `b` of the
//! singular factors and the `a` of the others, so the value at `ε = 0` is
//! the degree-`K` numerator coefficient over `C`, provided every lower
//! coefficient vanishes. A nonzero lower coefficient is a genuine pole.

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Minimal algebra interface the limit engine needs.
pub trait LimitAlgebra: Clone {
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn times(&self, other: &Self) -> Self;
}

/// Numerator series of a partial product together with its denominator data.
#[derive(Clone, Debug)]
pub struct EpsilonProduct<A> {
    coeffs: Vec<A>,
    order: usize,
    constant: Rational,
    cap: usize,
}

/// Number of factors `a + bε` with `a = 0`; fails if some factor is identically zero.
pub fn singular_count<'a>(denoms: impl IntoIterator<Item = (&'a Rational, &'a Rational)>) -> Result<usize> {
    let mut k = 0;
    for (a, b) in denoms {
        if a.is_zero() {
            if b.is_zero() {
                return Err(Error::PoleAtLimit("a factor is singular along the whole line".into()));
            }
            k += 1;
        }
    }
    Ok(k)
}

impl<A: LimitAlgebra> EpsilonProduct<A> {
    /// Start from `one`, keeping numerator coefficients up to degree `cap`.
    pub fn new(one: A, cap: usize) -> Self {
        EpsilonProduct { coeffs: vec![one], order: 0, constant: Rational::one(), cap }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[A] {
        &self.coeffs
    }

    /// Multiply on the right by `1 - x/(a + bε)`.
    pub fn mul_factor(&mut self, x: &A, a: &Rational, b: &Rational) -> Result<()> {
        if a.is_zero() {
            if b.is_zero() {
                return Err(Error::PoleAtLimit("a factor is singular along the whole line".into()));
            }
            self.order += 1;
            self.constant = &self.constant * b;
        } else {
            self.constant = &self.constant * a;
        }
        let grow = usize::from(!b.is_zero());
        let len = (self.coeffs.len() + grow).min(self.cap + 1);
        let mut next = Vec::with_capacity(len);
        for d in 0..len {
            let mut term: Option<A> = None;
            if let Some(c) = self.coeffs.get(d) {
                let cx = c.times(x);
                term = Some(if a.is_zero() { cx.scaled(&-Rational::one()) } else { c.scaled(a).plus(&cx.scaled(&-Rational::one())) });
            }
            if d > 0 && !b.is_zero() {
                let prev = self.coeffs[d - 1].scaled(b);
                term = Some(match term {
                    Some(t) => t.plus(&prev),
                    None => prev,
                });
            }
            next.push(term.expect("every slot receives a contribution"));
        }
        self.coeffs = next;
        Ok(())
    }

    /// Cauchy product `self · other`, truncated at the smaller cap.
    pub fn mul_product(&self, other: &EpsilonProduct<A>) -> EpsilonProduct<A> {
        let cap = self.cap.min(other.cap);
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(cap + 1);
        let mut coeffs = Vec::with_capacity(len);
        for d in 0..len {
            let mut acc: Option<A> = None;
            for i in 0..=d {
                let (Some(x), Some(y)) = (self.coeffs.get(i), other.coeffs.get(d - i)) else {
                    continue;
                };
                if x.is_zero_elem() || y.is_zero_elem() {
                    continue;
                }
                let p = x.times(y);
                acc = Some(match acc {
                    Some(s) => s.plus(&p),
                    None => p,
                });
            }
            coeffs.push(acc.unwrap_or_else(|| self.coeffs[0].scaled(&Rational::zero())));
        }
        EpsilonProduct {
            coeffs,
            order: self.order + other.order,
            constant: &self.constant * &other.constant,
            cap,
        }
    }

    /// Apply a linear map coefficientwise (e.g. group algebra to operators).
    pub fn map<B: LimitAlgebra>(&self, f: impl Fn(&A) -> B) -> EpsilonProduct<B> {
        EpsilonProduct {
            coeffs: self.coeffs.iter().map(f).collect(),
            order: self.order,
            constant: self.constant.clone(),
            cap: self.cap,
        }
    }

    /// Value of the product at `ε = 0`.
    pub fn limit(&self) -> Result<A> {
        if self.order > self.cap {
            return Err(Error::PoleAtLimit(format!(
                "truncation cap {} below pole order {}",
                self.cap, self.order
            )));
        }
        for (d, c) in self.coeffs.iter().enumerate().take(self.order) {
            if !c.is_zero_elem() {
                return Err(Error::PoleAtLimit(format!(
                    "nonzero coefficient of e^{d} against a pole of order {}",
                    self.order
                )));
            }
        }
        let inv = Rational::one() / &self.constant;
        Ok(match self.coeffs.get(self.order) {
            Some(c) => c.scaled(&inv),
            None => self.coeffs[0].scaled(&Rational::zero()),
        })
    }
}

impl LimitAlgebra for Rational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

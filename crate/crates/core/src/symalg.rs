//! The group algebra of the symmetric group: permutations, Young
//! symmetrizers, the diagonal matrix elements `e_Λ`, the skew elements `e_Ω`
//! and the fusion procedure.
//!
//! Composition convention: `(s∘t)(i) = s(t(i))`, the right factor acts first.
//! The product of group elements `s·t` is `s∘t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::series::{singular_count, EpsilonProduct, LimitAlgebra};
use crate::exactnum::{format_rational, int, Rational, RationalFunction, Scalar};
use crate::shapes::{dim_sym_irrep, Partition, StandardTableau};

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n as u8).collect() }
    }

    /// From 1-based images `[s(1), ..., s(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Index(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { img: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    /// The cycle `(a_1 a_2 ... a_r)`: `a_1 -> a_2 -> ... -> a_1`.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut img: Vec<u8> = (0..n as u8).collect();
        let mut seen = vec![false; n];
        for (idx, &p) in points.iter().enumerate() {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::Index(format!("bad cycle {points:?} in S_{n}")));
            }
            seen[p - 1] = true;
            img[p - 1] = (points[(idx + 1) % points.len()] - 1) as u8;
        }
        Ok(Permutation { img })
    }

    /// The transposition `(i j)`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::Index(format!("({i} {j}) is not a transposition")));
        }
        Permutation::cycle(n, &[i, j])
    }

    /// `k -> n+1-k`, the longest element.
    pub fn reversal(n: usize) -> Self {
        Permutation { img: (0..n as u8).rev().collect() }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// `s(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    /// 1-based one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn compose(&self, t: &Permutation) -> Result<Self> {
        if self.degree() != t.degree() {
            return Err(Error::DegreeMismatch(self.degree(), t.degree()));
        }
        Ok(self.compose_unchecked(t))
    }

    fn compose_unchecked(&self, t: &Permutation) -> Self {
        Permutation { img: t.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut img = vec![0u8; self.degree()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u8;
        }
        Permutation { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.img[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.img[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Whether the permutation maps `{1..m}` onto itself.
    pub fn preserves_prefix(&self, m: usize) -> bool {
        self.img[..m].iter().all(|&x| (x as usize) < m)
    }

    /// `ι_m`: the same permutation acting on `m+1..m+n` inside `S_{m+n}`.
    pub fn shift(&self, m: usize) -> Self {
        let mut img: Vec<u8> = (0..m as u8).collect();
        img.extend(self.img.iter().map(|&x| x + m as u8));
        Permutation { img }
    }

    /// Embed into `S_total`, fixing the points past the current degree.
    pub fn pad(&self, total: usize) -> Self {
        let mut img = self.img.clone();
        img.extend(self.degree() as u8..total as u8);
        Permutation { img }
    }

    /// If the permutation fixes `1..m` pointwise, its action on the remaining
    /// points renumbered from 1.
    pub fn restrict_tail(&self, m: usize) -> Option<Self> {
        if !(0..m).all(|i| self.img[i] as usize == i) {
            return None;
        }
        Some(Permutation { img: self.img[m..].iter().map(|&x| x - m as u8).collect() })
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation { img: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Parse cycle notation such as `"(1 3)(2 4)"`; `"()"` or `""` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let mut p = Permutation::identity(n);
        for chunk in s.split(')') {
            let chunk = chunk.trim().trim_start_matches('(');
            if chunk.trim().is_empty() {
                continue;
            }
            let pts = chunk
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad cycle {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            p = p.compose(&Permutation::cycle(n, &pts)?)?;
        }
        Ok(p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}

/// Formal combination of permutations of a fixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<S> {
    degree: usize,
    terms: BTreeMap<Permutation, S>,
}

impl<S: Scalar> GroupAlgebraElement<S> {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement { degree, terms: BTreeMap::new() }
    }

    pub fn identity(degree: usize) -> Self {
        Self::from_perm(Permutation::identity(degree))
    }

    pub fn from_perm(p: Permutation) -> Self {
        Self::from_terms(p.degree(), [(p, S::one())])
    }

    /// Sum of `coeff · perm`; repeated permutations accumulate.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Permutation, S)>) -> Self {
        let mut out = Self::zero(degree);
        for (p, c) in terms {
            assert_eq!(p.degree(), degree, "permutation degree");
            out.add_term(p, c);
        }
        out
    }

    /// `1 - coeff·(i j)`.
    pub fn one_minus_transposition(degree: usize, i: usize, j: usize, coeff: S) -> Result<Self> {
        let mut e = Self::identity(degree);
        e.add_term(Permutation::transposition(degree, i, j)?, -coeff);
        Ok(e)
    }

    fn add_term(&mut self, p: Permutation, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Permutation) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    pub fn identity_coeff(&self) -> S {
        self.coeff(&Permutation::identity(self.degree))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch(self.degree, rhs.degree));
        }
        let mut acc: BTreeMap<Permutation, S> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                let st = s.compose_unchecked(t);
                let v = a.clone() * b.clone();
                match acc.get_mut(&st) {
                    Some(x) => *x = x.clone() + v,
                    None => {
                        acc.insert(st, v);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(GroupAlgebraElement { degree: self.degree, terms: acc })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GroupAlgebraElement<T> {
        GroupAlgebraElement::from_terms(self.degree, self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<GroupAlgebraElement<T>> {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| Ok((p.clone(), f(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupAlgebraElement::from_terms(self.degree, terms))
    }

    /// `θ_m`: keep the terms whose permutation maps `{1..m}` onto itself.
    pub fn theta(&self, m: usize) -> Self {
        let terms = self.terms.iter().filter(|(p, _)| p.preserves_prefix(m));
        GroupAlgebraElement::from_terms(self.degree, terms.map(|(p, c)| (p.clone(), c.clone())))
    }

    /// `ι_m`: act on the last `degree` of `m + degree` points.
    pub fn shift(&self, m: usize) -> Self {
        let terms = self.terms.iter().map(|(p, c)| (p.shift(m), c.clone()));
        GroupAlgebraElement::from_terms(self.degree + m, terms)
    }

    /// Embed into `ℂS_total` acting on the first points.
    pub fn pad(&self, total: usize) -> Self {
        let terms = self.terms.iter().map(|(p, c)| (p.pad(total), c.clone()));
        GroupAlgebraElement::from_terms(total, terms)
    }
}

impl<S: Scalar> Add for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn add(self, rhs: &GroupAlgebraElement<S>) -> GroupAlgebraElement<S> {
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn sub(self, rhs: &GroupAlgebraElement<S>) -> GroupAlgebraElement<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Neg for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn neg(self) -> GroupAlgebraElement<S> {
        self.map(|c| -c.clone())
    }
}

impl<S: Scalar> Mul for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn mul(self, rhs: &GroupAlgebraElement<S>) -> GroupAlgebraElement<S> {
        self.try_mul(rhs).expect("degree mismatch")
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for GroupAlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{c}·{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl LimitAlgebra for GroupAlgebraElement<Rational> {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// One term of a serialized group-algebra element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub cycles: String,
    pub coeff: String,
}

impl GroupAlgebraElement<Rational> {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(p, c)| TermJson { cycles: p.to_string(), coeff: format_rational(c) })
            .collect()
    }

    pub fn from_json(degree: usize, terms: &[TermJson]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|t| Ok((Permutation::parse_cycles(degree, &t.cycles)?, crate::exactnum::parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(degree, terms))
    }
}

type Element = GroupAlgebraElement<Rational>;

/// All permutations preserving each block setwise.
fn block_stabilizer(n: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut group = vec![Permutation::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let k = block.len();
        let local = Permutation::all(k);
        let mut next = Vec::with_capacity(group.len() * local.len());
        for g in &group {
            for s in &local {
                let mut img = g.images();
                for (a, &pt) in block.iter().enumerate() {
                    img[pt - 1] = g.apply(block[s.apply(a + 1) - 1]);
                }
                next.push(Permutation::from_images(&img).expect("block permutation"));
            }
        }
        group = next;
    }
    group
}

fn rows_of(t: &StandardTableau) -> Vec<Vec<usize>> {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 1..=t.n() {
        rows.entry(t.row_of(k)).or_default().push(k);
    }
    rows.into_values().collect()
}

fn cols_of(t: &StandardTableau) -> Vec<Vec<usize>> {
    let mut cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 1..=t.n() {
        cols.entry(t.col_of(k)).or_default().push(k);
    }
    cols.into_values().collect()
}

fn require_straight(t: &StandardTableau) -> Result<()> {
    if t.shape().is_skew() {
        return Err(Error::SkewShape(t.shape().to_string()));
    }
    Ok(())
}

/// `p_Λ`, the sum over the row stabilizer.
pub fn young_p(t: &StandardTableau) -> Result<Element> {
    require_straight(t)?;
    let n = t.n();
    Ok(Element::from_terms(n, block_stabilizer(n, &rows_of(t)).into_iter().map(|s| (s, Rational::one()))))
}

/// `q_Λ`, the signed sum over the column stabilizer.
pub fn young_q(t: &StandardTableau) -> Result<Element> {
    require_straight(t)?;
    let n = t.n();
    let terms = block_stabilizer(n, &cols_of(t)).into_iter().map(|s| {
        let sg = int(s.sign());
        (s, sg)
    });
    Ok(Element::from_terms(n, terms))
}

fn check_identity_coeff(e: &Element, what: &str) {
    assert!(e.identity_coeff().is_one(), "{what}: identity coefficient is {}", e.identity_coeff());
}

/// `e_Λ` for the row tableau: `p q p / (λ_1! λ_2! ...)`.
pub fn e_row(t: &StandardTableau) -> Result<Element> {
    require_straight(t)?;
    if !t.is_row_tableau() {
        return Err(Error::WrongTableau("row"));
    }
    let (p, q) = (young_p(t)?, young_q(t)?);
    let denom = Rational::from_integer(t.shape().lambda().factorial_product());
    let e = (&(&p * &q) * &p).scale(&(Rational::one() / denom));
    check_identity_coeff(&e, "e_row");
    Ok(e)
}

/// `e_Λ` for the column tableau: `q p q / (λ'_1! λ'_2! ...)`.
pub fn e_col(t: &StandardTableau) -> Result<Element> {
    require_straight(t)?;
    if !t.is_column_tableau() {
        return Err(Error::WrongTableau("column"));
    }
    let (p, q) = (young_p(t)?, young_q(t)?);
    let denom = Rational::from_integer(t.shape().lambda().conjugate().factorial_product());
    let e = (&(&q * &p) * &q).scale(&(Rational::one() / denom));
    check_identity_coeff(&e, "e_col");
    Ok(e)
}

/// Which admissible adjacent transposition to take at each step of the
/// chain from `Λ` down to the row tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainRule {
    Smallest,
    Largest,
}

/// `e_Λ` for any standard `Λ` of non-skew shape, by the seminormal
/// recursion `(1 - h²) e_{s_kΛ} = (s_k - h) e_Λ (s_k - h)`,
/// `h = 1/(c_{k+1} - c_k)`, starting from the row tableau.
pub fn e_tableau(t: &StandardTableau) -> Result<Element> {
    e_tableau_via(t, ChainRule::Smallest)
}

pub fn e_tableau_via(t: &StandardTableau, rule: ChainRule) -> Result<Element> {
    require_straight(t)?;
    let n = t.n();
    let mut chain = Vec::new();
    let mut cur = t.clone();
    loop {
        let mut ks = (1..n).filter(|&k| cur.row_of(k) > cur.row_of(k + 1));
        let k = match rule {
            ChainRule::Smallest => ks.next(),
            ChainRule::Largest => ks.next_back(),
        };
        let Some(k) = k else { break };
        chain.push(k);
        cur = cur.swap(k).expect("row descent gives a standard neighbour");
    }
    let mut e = e_row(&cur)?;
    for &k in chain.iter().rev() {
        let h = Rational::one() / int(cur.content(k + 1) - cur.content(k));
        let mut s_minus_h = Element::from_perm(Permutation::transposition(n, k, k + 1)?);
        s_minus_h.add_term(Permutation::identity(n), -h.clone());
        let scale = Rational::one() / (Rational::one() - &h * &h);
        e = (&(&s_minus_h * &e) * &s_minus_h).scale(&scale);
        cur = cur.swap(k).expect("chain reversal stays standard");
    }
    debug_assert_eq!(&cur, t);
    check_identity_coeff(&e, "e_tableau");
    Ok(e)
}

/// Scalar `l!/dim U_λ` with `e_Λ² = (l!/dim U_λ) e_Λ`.
pub fn idempotency_scalar(lambda: &Partition) -> Rational {
    Rational::from_integer(crate::exactnum::factorial(lambda.size())) / int(dim_sym_irrep(lambda) as i64)
}

/// Which variables are tied together on the constraint set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstraintMode {
    /// `t_i = t_j` when `i, j` share a row.
    Row,
    /// `t_i = t_j` when `i, j` share a column.
    Column,
}

/// Index of the free variable attached to `k` on the constraint set: its
/// row or its column.
pub fn constraint_group(t: &StandardTableau, k: usize, mode: ConstraintMode) -> i64 {
    match mode {
        ConstraintMode::Row => t.row_of(k) as i64,
        ConstraintMode::Column => t.col_of(k) as i64,
    }
}

/// `(a, b)` with `c_i - c_j + t_i - t_j = a + b·ε` on the line `t = g·ε`.
pub(crate) fn pair_denominator(t: &StandardTableau, i: usize, j: usize, mode: ConstraintMode) -> (Rational, Rational) {
    (
        int(t.content(i) - t.content(j)),
        int(constraint_group(t, i, mode) - constraint_group(t, j, mode)),
    )
}

pub(crate) fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// Value of the ordered product of `1 - (i j)/(c_i - c_j + t_i - t_j)` over
/// `i < j` on the constraint set, at equal `t`. Works for skew shapes too.
pub fn fusion_e(t: &StandardTableau, mode: ConstraintMode) -> Result<Element> {
    fusion_series(t, mode, None)?.limit()
}

/// [`fusion_e`] for a skew tableau; the procedure is the same.
pub fn fusion_e_skew(t: &StandardTableau, mode: ConstraintMode) -> Result<Element> {
    fusion_e(t, mode)
}

/// The fusion product as an ε-series, optionally with a larger truncation
/// cap so it can be combined with further factors.
pub(crate) fn fusion_series(t: &StandardTableau, mode: ConstraintMode, cap: Option<usize>) -> Result<EpsilonProduct<Element>> {
    let n = t.n();
    let factors: Vec<_> = ordered_pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = pair_denominator(t, i, j, mode);
            (i, j, a, b)
        })
        .collect();
    let k = singular_count(factors.iter().map(|(_, _, a, b)| (a, b)))?;
    let mut prod = EpsilonProduct::new(Element::identity(n), cap.unwrap_or(k).max(k));
    for (i, j, a, b) in &factors {
        let x = Element::from_perm(Permutation::transposition(n, *i, *j)?);
        prod.mul_factor(&x, a, b)?;
    }
    Ok(prod)
}

/// Independent route for [`fusion_e`]: multiply with rational-function
/// coefficients in ε, then evaluate every coefficient at zero.
pub fn fusion_e_rf(t: &StandardTableau, mode: ConstraintMode) -> Result<Element> {
    let n = t.n();
    let mut acc = GroupAlgebraElement::<RationalFunction>::identity(n);
    for (i, j) in ordered_pairs(n) {
        let (a, b) = pair_denominator(t, i, j, mode);
        let den = RationalFunction::from_poly(crate::exactnum::Polynomial::linear(a, b));
        let f = GroupAlgebraElement::one_minus_transposition(n, i, j, den.inverse()?)?;
        acc = &acc * &f;
    }
    acc.try_map(|c| c.eval_at_zero())
}

/// `f_ij(x, y) = 1 - (i j)/(x - y)` in `ℂS_n`.
pub fn fusion_function(n: usize, i: usize, j: usize, x: &Rational, y: &Rational) -> Result<Element> {
    let d = x - y;
    if d.is_zero() {
        return Err(Error::SampleAtPole(format!("x = y = {x}")));
    }
    Element::one_minus_transposition(n, i, j, Rational::one() / d)
}

/// `θ_m`.
pub fn theta<S: Scalar>(a: &GroupAlgebraElement<S>, m: usize) -> GroupAlgebraElement<S> {
    a.theta(m)
}

/// `e_Ω` read off from `θ_m(e_Λ) = e_Υ · ι_m(e_Ω)`: the coefficients of the
/// terms whose `S_m` part is trivial.
pub fn e_skew_extract(lambda_t: &StandardTableau, m: usize) -> Result<Element> {
    require_straight(lambda_t)?;
    let l = lambda_t.n();
    if m >= l {
        return Err(Error::Index(format!("m = {m} must be below l = {l}")));
    }
    Ok(skew_part(&e_tableau(lambda_t)?, m))
}

/// Terms of `a` whose permutation fixes `1..m` pointwise, renumbered to act on `1..degree-m`.
pub fn skew_part(a: &Element, m: usize) -> Element {
    let terms = a.terms().filter_map(|(p, c)| p.restrict_tail(m).map(|q| (q, c.clone())));
    Element::from_terms(a.degree() - m, terms)
}

/// Check `θ_m(e_Λ) = e_Υ · ι_m(e_Ω)` with `e_Ω` from [`e_skew_extract`].
pub fn verify_skew_factorization(lambda_t: &StandardTableau, m: usize) -> Result<bool> {
    let l = lambda_t.n();
    let (upsilon, _) = lambda_t.split(m)?;
    let e_up = if m == 0 { Element::identity(0) } else { e_tableau(&upsilon)? };
    let rhs = &e_up.pad(l) * &e_skew_extract(lambda_t, m)?.shift(m);
    Ok(theta(&e_tableau(lambda_t)?, m) == rhs)
}

/// Check `f_12(x,c_1)…f_{1,l+1}(x,c_l)·ι_1(e_Λ) = (1 - Σ_k (1 k+1)/x)·ι_1(e_Λ)`
/// at every sample.
pub fn check_prop25(lambda_t: &StandardTableau, samples: &[Rational]) -> Result<bool> {
    let l = lambda_t.n();
    let e = e_tableau(lambda_t)?.shift(1);
    let contents: Vec<Rational> = lambda_t.contents().into_iter().map(int).collect();
    for x in samples {
        if x.is_zero() || contents.contains(x) {
            return Err(Error::SampleAtPole(format!("x = {x}")));
        }
        let mut lhs = Element::identity(l + 1);
        for (k, c) in contents.iter().enumerate() {
            lhs = &lhs * &fusion_function(l + 1, 1, k + 2, x, c)?;
        }
        let lhs = &lhs * &e;
        let mut sum = Element::identity(l + 1);
        let inv = Rational::one() / x;
        for k in 1..=l {
            sum.add_term(Permutation::transposition(l + 1, 1, k + 1)?, -inv.clone());
        }
        if lhs != &sum * &e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `e` lies in both the left ideal `ℂS_n·d` and the right ideal `d·ℂS_n`.
pub fn is_divisible(e: &Element, d: &Element) -> Result<bool> {
    use crate::tensorop::linalg::SubspaceBasis;
    if e.degree() != d.degree() {
        return Err(Error::DegreeMismatch(e.degree(), d.degree()));
    }
    let n = e.degree();
    let all = Permutation::all(n);
    let index: BTreeMap<&Permutation, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let to_vec = |a: &Element| -> Vec<(usize, Rational)> {
        let mut v: Vec<_> = a.terms().map(|(p, c)| (index[p], c.clone())).collect();
        v.sort_by_key(|x| x.0);
        v
    };
    let left = SubspaceBasis::from_vectors(all.len(), all.iter().map(|g| to_vec(&(&Element::from_perm(g.clone()) * d))));
    let right = SubspaceBasis::from_vectors(all.len(), all.iter().map(|g| to_vec(&(d * &Element::from_perm(g.clone())))));
    let v = to_vec(e);
    Ok(left.contains(&v) && right.contains(&v))
}

//! Exact sparse operators on `(ℂ^N)^⊗n`: permutation operators, the
//! contraction operators `Q_kl` of a bilinear form, and the action of the
//! group algebra.
//!
//! Basis order: the multi-index `(i_1, ..., i_n)` with `i_k ∈ 1..=N` sits at
//! row `Σ (i_k - 1)·N^{n-k}`, so `i_1` is the most significant digit.

pub mod linalg;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::series::LimitAlgebra;
use crate::exactnum::{format_rational, Rational, Scalar};
use crate::symalg::{GroupAlgebraElement, Permutation};

/// Row of the basis tensor `e_{i_1} ⊗ ... ⊗ e_{i_n}` (1-based indices).
pub fn encode(index: &[usize], n_dim: usize) -> usize {
    index.iter().fold(0, |acc, &i| acc * n_dim + (i - 1))
}

/// Inverse of [`encode`].
pub fn decode(mut row: usize, n_dim: usize, slots: usize) -> Vec<usize> {
    let mut out = vec![0; slots];
    for k in (0..slots).rev() {
        out[k] = row % n_dim + 1;
        row /= n_dim;
    }
    out
}

fn power(n_dim: usize, slots: usize) -> usize {
    n_dim.pow(slots as u32)
}

/// Sparse square matrix acting on `(ℂ^N)^⊗n`, stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<S> {
    n_dim: usize,
    slots: usize,
    rows: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseOperator<S> {
    pub fn zero(n_dim: usize, slots: usize) -> Self {
        SparseOperator { n_dim, slots, rows: vec![Vec::new(); power(n_dim, slots)] }
    }

    pub fn identity(n_dim: usize, slots: usize) -> Self {
        let rows = (0..power(n_dim, slots)).map(|i| vec![(i, S::one())]).collect();
        SparseOperator { n_dim, slots, rows }
    }

    /// Sum of `(row, col, value)` entries; repeated positions accumulate.
    pub fn from_triplets(n_dim: usize, slots: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let dim = power(n_dim, slots);
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); dim];
        for (r, c, v) in entries {
            assert!(r < dim && c < dim, "entry ({r},{c}) outside {dim}x{dim}");
            rows[r].push((c, v));
        }
        for row in rows.iter_mut() {
            *row = normalize_row(std::mem::take(row));
        }
        SparseOperator { n_dim, slots, rows }
    }

    pub fn from_dense(n_dim: usize, slots: usize, m: &[Vec<S>]) -> Self {
        let entries = m
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, x)| (i, j, x.clone())));
        Self::from_triplets(n_dim, slots, entries)
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    /// Side length `N^n` of the matrix.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, S)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        match self.rows[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn triplets(&self) -> Vec<(usize, usize, S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone())))
            .collect()
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.n_dim != rhs.n_dim || self.slots != rhs.slots {
            return Err(Error::AmbientMismatch(self.dim(), rhs.dim()));
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let dim = self.dim();
        let mut scratch: Vec<Option<S>> = vec![None; dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(dim);
        for row in &self.rows {
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k] {
                    let p = a.clone() * b.clone();
                    match &mut scratch[*j] {
                        Some(x) => *x = x.clone() + p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let x = scratch[j].take().unwrap();
                if !x.is_zero() {
                    out.push((j, x));
                }
            }
            touched.clear();
            rows.push(out);
        }
        Ok(SparseOperator { n_dim: self.n_dim, slots: self.slots, rows })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| normalize_row(a.iter().chain(b.iter()).cloned().collect()))
            .collect();
        Ok(SparseOperator { n_dim: self.n_dim, slots: self.slots, rows })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseOperator<T> {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(c, x)| (*c, f(x))).filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        SparseOperator { n_dim: self.n_dim, slots: self.slots, rows }
    }

    pub fn transpose(&self) -> Self {
        let entries = self.triplets().into_iter().map(|(r, c, v)| (c, r, v));
        Self::from_triplets(self.n_dim, self.slots, entries)
    }

    /// `A v` for a sparse vector `v`.
    pub fn apply(&self, v: &[(usize, S)]) -> Vec<(usize, S)> {
        let mut dense: Vec<Option<S>> = vec![None; self.dim()];
        for (k, x) in v {
            dense[*k] = Some(x.clone());
        }
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let mut acc = S::zero();
                for (c, a) in row {
                    if let Some(x) = &dense[*c] {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                (!acc.is_zero()).then_some((r, acc))
            })
            .collect()
    }

    /// Place this operator in the tensor slots `positions` (1-based, in the
    /// order of this operator's own slots) of `(ℂ^N)^⊗total`, identity on the rest.
    pub fn lift(&self, total: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.slots || positions.iter().any(|&p| p == 0 || p > total) {
            return Err(Error::Index(format!("cannot place {} slots at {positions:?} of {total}", self.slots)));
        }
        let n = self.n_dim;
        let mut entries = Vec::new();
        for col in 0..power(n, total) {
            let idx = decode(col, n, total);
            let local: Vec<usize> = positions.iter().map(|&p| idx[p - 1]).collect();
            let local_col = encode(&local, n);
            // column `local_col` of self, via the transpose would be faster; sizes are small
            for (r, row) in self.rows.iter().enumerate() {
                if let Ok(k) = row.binary_search_by_key(&local_col, |e| e.0) {
                    let out_local = decode(r, n, self.slots);
                    let mut out = idx.clone();
                    for (q, &p) in positions.iter().enumerate() {
                        out[p - 1] = out_local[q];
                    }
                    entries.push((encode(&out, n), col, row[k].1.clone()));
                }
            }
        }
        Ok(Self::from_triplets(n, total, entries))
    }

    /// `self ⊗ other`, with `self` on the leading slots.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.n_dim != other.n_dim {
            return Err(Error::AmbientMismatch(self.n_dim, other.n_dim));
        }
        let od = other.dim();
        let mut entries = Vec::new();
        for (r1, c1, a) in self.triplets() {
            for (r2, c2, b) in other.triplets() {
                entries.push((r1 * od + r2, c1 * od + c2, a.clone() * b));
            }
        }
        Ok(Self::from_triplets(self.n_dim, self.slots + other.slots, entries))
    }
}

fn normalize_row<S: Scalar>(mut row: Vec<(usize, S)>) -> Vec<(usize, S)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, S)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl<S: Scalar> Add for &SparseOperator<S> {
    type Output = SparseOperator<S>;
    fn add(self, rhs: &SparseOperator<S>) -> SparseOperator<S> {
        self.try_add(rhs).expect("operator shapes differ")
    }
}

impl<S: Scalar> Neg for &SparseOperator<S> {
    type Output = SparseOperator<S>;
    fn neg(self) -> SparseOperator<S> {
        self.map(|x| -x.clone())
    }
}

impl<S: Scalar> Sub for &SparseOperator<S> {
    type Output = SparseOperator<S>;
    fn sub(self, rhs: &SparseOperator<S>) -> SparseOperator<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Mul for &SparseOperator<S> {
    type Output = SparseOperator<S>;
    fn mul(self, rhs: &SparseOperator<S>) -> SparseOperator<S> {
        self.try_mul(rhs).expect("operator shapes differ")
    }
}

impl LimitAlgebra for SparseOperator<Rational> {
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

/// One nonzero entry of a serialized operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletJson {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

impl SparseOperator<Rational> {
    pub fn to_json(&self) -> Vec<TripletJson> {
        self.triplets()
            .into_iter()
            .map(|(row, col, v)| TripletJson { row, col, value: format_rational(&v) })
            .collect()
    }

    pub fn from_json(n_dim: usize, slots: usize, entries: &[TripletJson]) -> Result<Self> {
        let dim = power(n_dim, slots);
        let mut triplets = Vec::with_capacity(entries.len());
        for e in entries {
            if e.row >= dim || e.col >= dim {
                return Err(Error::Index(format!("entry ({}, {}) outside {dim}x{dim}", e.row, e.col)));
            }
            triplets.push((e.row, e.col, crate::exactnum::parse_rational(&e.value)?));
        }
        Ok(Self::from_triplets(n_dim, slots, triplets))
    }
}

/// Basis tensor image under `s`: factor `k` moves to slot `s(k)`.
fn permute_index(s: &Permutation, index: &[usize]) -> Vec<usize> {
    let mut out = vec![0; index.len()];
    for (k, &i) in index.iter().enumerate() {
        out[s.image0(k)] = i;
    }
    out
}

/// Operator of `s` on `(ℂ^N)^⊗n`.
pub fn perm_op<S: Scalar>(s: &Permutation, n_dim: usize) -> SparseOperator<S> {
    let n = s.degree();
    let entries = (0..power(n_dim, n)).map(|col| {
        let row = encode(&permute_index(s, &decode(col, n_dim, n)), n_dim);
        (row, col, S::one())
    });
    SparseOperator::from_triplets(n_dim, n, entries)
}

/// `P_kl`, the flip of slots `k` and `l`.
pub fn p_op<S: Scalar>(k: usize, l: usize, n_dim: usize, slots: usize) -> Result<SparseOperator<S>> {
    Ok(perm_op(&Permutation::transposition(slots, k, l)?, n_dim))
}

/// Operator of a group-algebra element on `(ℂ^N)^⊗n`.
pub fn act<S: Scalar>(a: &GroupAlgebraElement<S>, n_dim: usize) -> SparseOperator<S> {
    let n = a.degree();
    let mut entries = Vec::new();
    for col in 0..power(n_dim, n) {
        let idx = decode(col, n_dim, n);
        for (s, c) in a.terms() {
            entries.push((encode(&permute_index(s, &idx), n_dim), col, c.clone()));
        }
    }
    SparseOperator::from_triplets(n_dim, n, entries)
}

/// Symmetric (orthogonal groups) or alternating (symplectic groups).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Symmetric,
    Alternating,
}

impl FormKind {
    /// `+1` for symmetric, `-1` for alternating: the upper and lower signs.
    pub fn sign(self) -> i64 {
        match self {
            FormKind::Symmetric => 1,
            FormKind::Alternating => -1,
        }
    }
}

impl FromStr for FormKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "o" | "so" | "symmetric" | "orthogonal" => Ok(FormKind::Symmetric),
            "sp" | "alternating" | "symplectic" => Ok(FormKind::Alternating),
            other => Err(Error::Parse(format!("unknown form {other:?}"))),
        }
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::Symmetric => "O",
            FormKind::Alternating => "Sp",
        })
    }
}

/// A nondegenerate symmetric or alternating form on `ℂ^N`, by its Gram
/// matrix `G[i][j] = ⟨e_i, e_j⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    kind: FormKind,
    gram: Vec<Vec<Rational>>,
    inverse: Vec<Vec<Rational>>,
}

impl BilinearForm {
    pub fn new(kind: FormKind, gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidForm("Gram matrix must be square and nonempty".into()));
        }
        if kind == FormKind::Alternating && n % 2 == 1 {
            return Err(Error::Parity(n));
        }
        for i in 0..n {
            for j in 0..n {
                let ok = match kind {
                    FormKind::Symmetric => gram[i][j] == gram[j][i],
                    FormKind::Alternating => gram[i][j] == -gram[j][i].clone(),
                };
                if !ok {
                    return Err(Error::InvalidForm(format!("Gram matrix is not {kind:?} at ({i},{j})")));
                }
            }
        }
        let inverse = linalg::dense_inverse(&gram).ok_or(Error::SingularForm)?;
        Ok(BilinearForm { kind, gram, inverse })
    }

    /// Identity Gram for symmetric forms; `⟨e_{2k-1}, e_{2k}⟩ = 1` for alternating.
    pub fn standard(kind: FormKind, n_dim: usize) -> Result<Self> {
        let mut gram = vec![vec![Rational::zero(); n_dim]; n_dim];
        match kind {
            FormKind::Symmetric => {
                for (i, row) in gram.iter_mut().enumerate() {
                    row[i] = Rational::one();
                }
            }
            FormKind::Alternating => {
                if n_dim % 2 == 1 {
                    return Err(Error::Parity(n_dim));
                }
                for k in (0..n_dim).step_by(2) {
                    gram[k][k + 1] = Rational::one();
                    gram[k + 1][k] = -Rational::one();
                }
            }
        }
        BilinearForm::new(kind, gram)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `v_1, ..., v_N` with `⟨e_i, v_j⟩ = δ_ij`.
    pub fn dual_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (0..n).map(|j| (0..n).map(|b| self.inverse[b][j].clone()).collect()).collect()
    }

    /// Coefficients of `w(N) = Σ_j e_j ⊗ v_j`: `w[a][b]`.
    pub fn w(&self) -> Vec<Vec<Rational>> {
        self.dual_basis()
    }

    /// The form in the basis `f_i = Σ_k A[k][i] e_k`: Gram `Aᵀ G A`.
    pub fn change_basis(&self, a: &[Vec<Rational>]) -> Result<Self> {
        let n = self.dim();
        let mut g = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    for l in 0..n {
                        acc += &a[k][i] * &self.gram[k][l] * &a[l][j];
                    }
                }
                g[i][j] = acc;
            }
        }
        BilinearForm::new(self.kind, g)
    }

    /// Orthogonal direct sum on `ℂ^{N+M}`, `self` on the first `N` coordinates.
    pub fn direct_sum(&self, other: &BilinearForm) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::InvalidForm("direct sum of forms of different kinds".into()));
        }
        let (n, m) = (self.dim(), other.dim());
        let mut g = vec![vec![Rational::zero(); n + m]; n + m];
        for i in 0..n {
            g[i][..n].clone_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            g[n + i][n..].clone_from_slice(&other.gram[i]);
        }
        BilinearForm::new(self.kind, g)
    }
}

/// `Q_kl` on `(ℂ^N)^⊗n`: `u ⊗ v ↦ ⟨u, v⟩ w(N)` in slots `k, l`.
pub fn q_op(k: usize, l: usize, form: &BilinearForm, slots: usize) -> Result<SparseOperator<Rational>> {
    if k == l || k == 0 || l == 0 || k > slots || l > slots {
        return Err(Error::Index(format!("Q_{{{k},{l}}} on {slots} slots")));
    }
    let (k, l) = (k.min(l), k.max(l));
    let n = form.dim();
    let w = form.w();
    let w_terms: Vec<(usize, usize, &Rational)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !w[a][b].is_zero())
        .map(|(a, b)| (a, b, &w[a][b]))
        .collect();
    let mut entries = Vec::new();
    for col in 0..power(n, slots) {
        let idx = decode(col, n, slots);
        let g = &form.gram[idx[k - 1] - 1][idx[l - 1] - 1];
        if g.is_zero() {
            continue;
        }
        for &(a, b, x) in &w_terms {
            let mut out = idx.clone();
            out[k - 1] = a + 1;
            out[l - 1] = b + 1;
            entries.push((encode(&out, n), col, g * x));
        }
    }
    Ok(SparseOperator::from_triplets(n, slots, entries))
}

/// Basis of the traceless tensors `∩_{k<l} ker Q_kl`.
pub fn traceless_basis(form: &BilinearForm, slots: usize) -> Result<linalg::SubspaceBasis> {
    let dim = power(form.dim(), slots);
    let qs = pairs(slots)
        .into_iter()
        .map(|(k, l)| q_op(k, l, form, slots))
        .collect::<Result<Vec<_>>>()?;
    linalg::common_kernel(&qs, dim)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// `A^{⊗n}` for a single-site matrix `A`.
pub fn site_power(a: &[Vec<Rational>], slots: usize) -> SparseOperator<Rational> {
    let n = a.len();
    let single = SparseOperator::from_dense(n, 1, a);
    let mut out = SparseOperator::identity(n, 0);
    for _ in 0..slots {
        out = out.kron(&single).expect("same dimension");
    }
    out
}

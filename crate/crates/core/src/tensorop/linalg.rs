//! Exact linear algebra over the rationals on sparse vectors.
//!
//! Elimination runs on primitive integer rows (fraction-free, each new row
//! divided by the gcd of its entries); the resulting echelon form is then
//! brought to the canonical reduced row echelon form over the rationals, so
//! two spans are equal exactly when their reduced forms are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::SparseOperator;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

type IntVec = Vec<(usize, BigInt)>;

fn to_primitive(v: &[(usize, Rational)]) -> IntVec {
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out: IntVec = v
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (*i, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut IntVec) {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn coeff_at(v: &IntVec, col: usize) -> Option<&BigInt> {
    v.binary_search_by_key(&col, |e| e.0).ok().map(|i| &v[i].1)
}

/// `a·v - b·r`.
fn combine(a: &BigInt, v: &IntVec, b: &BigInt, r: &IntVec) -> IntVec {
    let mut out = Vec::with_capacity(v.len() + r.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < r.len() {
        let take_v = j >= r.len() || (i < v.len() && v[i].0 < r[j].0);
        let take_r = i >= v.len() || (j < r.len() && r[j].0 < v[i].0);
        let (col, val) = if take_v {
            i += 1;
            (v[i - 1].0, a * &v[i - 1].1)
        } else if take_r {
            j += 1;
            (r[j - 1].0, -(b * &r[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (v[i - 1].0, a * &v[i - 1].1 - b * &r[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// A subspace of `ℚ^ambient` held as its canonical reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis { ambient, rows: (0..ambient).map(|i| vec![(i, Rational::one())]).collect() }
    }

    /// Span of the given sparse vectors.
    pub fn from_vectors<I, V>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[(usize, Rational)]>,
    {
        // echelon rows sorted by pivot
        let mut echelon: Vec<IntVec> = Vec::new();
        for v in vectors {
            let mut v = to_primitive(v.as_ref());
            for r in &echelon {
                if v.is_empty() {
                    break;
                }
                let p = r[0].0;
                if v[0].0 > p {
                    continue;
                }
                if let Some(c) = coeff_at(&v, p).cloned() {
                    v = combine(&r[0].1, &v, &c, r);
                    make_primitive(&mut v);
                }
            }
            if !v.is_empty() {
                let pos = echelon.partition_point(|r| r[0].0 < v[0].0);
                echelon.insert(pos, v);
            }
        }
        Self::from_echelon(ambient, echelon)
    }

    fn from_echelon(ambient: usize, echelon: Vec<IntVec>) -> Self {
        let mut rows: Vec<SparseVec> = echelon
            .into_iter()
            .map(|r| {
                let lead = Rational::from_integer(r[0].1.clone());
                r.into_iter().map(|(i, x)| (i, Rational::from_integer(x) / &lead)).collect()
            })
            .collect();
        for i in (0..rows.len()).rev() {
            let p = rows[i][0].0;
            let pivot_row = rows[i].clone();
            for row in rows.iter_mut().take(i) {
                if let Ok(k) = row.binary_search_by_key(&p, |e| e.0) {
                    let c = row[k].1.clone();
                    *row = axpy(row, &-c, &pivot_row);
                }
            }
        }
        SubspaceBasis { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis vectors (reduced row echelon form).
    pub fn vectors(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// `v` minus its projection along the pivot columns; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut v: SparseVec = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        for r in &self.rows {
            let p = r[0].0;
            if let Ok(k) = v.binary_search_by_key(&p, |e| e.0) {
                let c = v[k].1.clone();
                v = axpy(&v, &-c, r);
            }
        }
        v
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &SubspaceBasis) -> Result<bool> {
        check_ambient(self, other)?;
        Ok(other.rows.iter().all(|r| self.contains(r)))
    }

    /// Basis of the vectors `y` with `v·y = 0` for every `v` in the span.
    pub fn annihilator(&self) -> SubspaceBasis {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ambient];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // entries of each row at free columns, looked up per free column
        let mut by_free: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ambient];
        for r in &self.rows {
            let p = r[0].0;
            for (j, x) in r.iter().skip(1) {
                by_free[*j].push((p, -x.clone()));
            }
        }
        let vecs = (0..self.ambient).filter(|&f| !is_pivot[f]).map(|f| {
            let mut v = std::mem::take(&mut by_free[f]);
            v.push((f, Rational::one()));
            v.sort_by_key(|e| e.0);
            v
        });
        let vecs: Vec<SparseVec> = vecs.collect();
        SubspaceBasis::from_vectors(self.ambient, vecs)
    }

    pub fn dense_vectors(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| to_dense(r, self.ambient)).collect()
    }
}

fn check_ambient(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch(a.ambient, b.ambient));
    }
    Ok(())
}

/// `v + c·w` on sparse vectors.
pub fn axpy(v: &[(usize, Rational)], c: &Rational, w: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j >= w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i >= v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, c * &w[j].1));
            j += 1;
        } else {
            let x = &v[i].1 + c * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn to_dense(v: &[(usize, Rational)], ambient: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ambient];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Span of the rows.
pub fn row_space(a: &SparseOperator<Rational>) -> SubspaceBasis {
    SubspaceBasis::from_vectors(a.dim(), a.rows())
}

pub fn rank(a: &SparseOperator<Rational>) -> usize {
    row_space(a).dim()
}

/// Span of the columns.
pub fn image_basis(a: &SparseOperator<Rational>) -> SubspaceBasis {
    row_space(&a.transpose())
}

/// Null space `{v : A v = 0}`.
pub fn kernel_basis(a: &SparseOperator<Rational>) -> SubspaceBasis {
    row_space(a).annihilator()
}

/// Common null space of several operators on the same space.
pub fn common_kernel<'a>(ops: impl IntoIterator<Item = &'a SparseOperator<Rational>>, ambient: usize) -> Result<SubspaceBasis> {
    let mut rows: Vec<&SparseVec> = Vec::new();
    for op in ops {
        if op.dim() != ambient {
            return Err(Error::AmbientMismatch(op.dim(), ambient));
        }
        rows.extend(op.rows());
    }
    Ok(SubspaceBasis::from_vectors(ambient, rows).annihilator())
}

pub fn subspace_equal(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool> {
    check_ambient(a, b)?;
    Ok(a == b)
}

pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    check_ambient(a, b)?;
    let (x, y) = (a.annihilator(), b.annihilator());
    Ok(SubspaceBasis::from_vectors(a.ambient, x.rows.iter().chain(&y.rows)).annihilator())
}

/// Inverse of a small dense matrix, `None` if singular.
pub fn dense_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rational::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &c * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

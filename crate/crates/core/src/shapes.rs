//! Partitions, skew diagrams, standard tableaux and their contents.
//!
//! Cells use 1-based matrix coordinates `(row, column)` with rows growing
//! downward.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers (trailing zeros trimmed).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Row length `λ_i` for 1-based `i`, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    /// Length of the first column, `λ'_1`.
    pub fn first_column(&self) -> usize {
        self.parts.len()
    }

    pub fn contains(&self, mu: &Partition) -> bool {
        mu.parts.len() <= self.parts.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// All partitions of `l`, largest first in reverse lexicographic order.
    pub fn all_of_size(l: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(l, l, &mut Vec::new(), &mut out);
        out
    }

    /// Every partition `μ` with `μ ⊆ λ`, including `∅` and `λ` itself.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn go(lam: &[usize], i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if i == lam.len() {
                out.push(Partition::new(cur.clone()).unwrap());
                return;
            }
            for p in 0..=lam[i].min(max) {
                cur.push(p);
                go(lam, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.parts, 0, usize::MAX, &mut Vec::new(), &mut out);
        out
    }

    /// Product of the factorials of the parts.
    pub fn factorial_product(&self) -> num_bigint::BigInt {
        self.parts.iter().map(|&p| crate::exactnum::factorial(p)).product()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; `""`, `"0"` and `"∅"` give the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// The skew diagram `λ/μ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    lambda: Partition,
    mu: Partition,
    cells: Vec<(usize, usize)>,
}

impl SkewShape {
    pub fn new(lambda: Partition, mu: Partition) -> Result<Self> {
        if !lambda.contains(&mu) {
            return Err(Error::Containment { lambda: lambda.to_string(), mu: mu.to_string() });
        }
        let mut cells = Vec::new();
        for i in 1..=lambda.len() {
            for j in mu.part(i) + 1..=lambda.part(i) {
                cells.push((i, j));
            }
        }
        Ok(SkewShape { lambda, mu, cells })
    }

    pub fn straight(lambda: Partition) -> Self {
        SkewShape::new(lambda, Partition::empty()).expect("∅ is contained in every partition")
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    /// Cells sorted by `(row, column)`.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn is_skew(&self) -> bool {
        !self.mu.is_empty()
    }

    pub fn contains_cell(&self, (i, j): (usize, usize)) -> bool {
        i >= 1 && j > self.mu.part(i) && j <= self.lambda.part(i)
    }

    fn cell_index(&self, cell: (usize, usize)) -> Option<usize> {
        self.cells.binary_search(&cell).ok()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.lambda, self.mu)
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    /// `"λ/μ"` or just `"λ"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((l, m)) => SkewShape::new(l.parse()?, m.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

/// A standard filling of a skew diagram by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: SkewShape,
    /// Entry of each cell, aligned with `shape.cells()`.
    entries: Vec<usize>,
    /// Cell holding `k`, at index `k - 1`.
    positions: Vec<(usize, usize)>,
}

impl StandardTableau {
    /// Build from the entries of the cells in `(row, column)` order.
    pub fn from_entries(shape: SkewShape, entries: Vec<usize>) -> Result<Self> {
        let n = shape.n();
        if entries.len() != n {
            return Err(Error::InvalidTableau(format!("{} entries for {} cells", entries.len(), n)));
        }
        let mut positions = vec![(0, 0); n];
        let mut seen = vec![false; n];
        for (&cell, &e) in shape.cells().iter().zip(&entries) {
            if e == 0 || e > n || seen[e - 1] {
                return Err(Error::InvalidTableau(format!("entries {entries:?} are not a permutation of 1..{n}")));
            }
            seen[e - 1] = true;
            positions[e - 1] = cell;
        }
        let t = StandardTableau { shape, entries, positions };
        for &(i, j) in t.shape.cells() {
            let e = t.entry_at((i, j)).unwrap();
            let left = t.entry_at((i, j.wrapping_sub(1)));
            let up = t.entry_at((i.wrapping_sub(1), j));
            if left.is_some_and(|x| x >= e) || up.is_some_and(|x| x >= e) {
                return Err(Error::InvalidTableau(format!("entries {:?} not increasing at ({i},{j})", t.entries)));
            }
        }
        Ok(t)
    }

    /// Build a non-skew tableau from its rows.
    pub fn from_rows(rows: &[&[usize]]) -> Result<Self> {
        let lambda = Partition::new(rows.iter().map(|r| r.len()).collect())?;
        let entries = rows.iter().flat_map(|r| r.iter().copied()).collect();
        StandardTableau::from_entries(SkewShape::straight(lambda), entries)
    }

    /// Fill rows downward, each left to right.
    pub fn row_tableau(shape: &SkewShape) -> Self {
        let entries = (1..=shape.n()).collect();
        StandardTableau::from_entries(shape.clone(), entries).expect("row filling is standard")
    }

    /// Fill columns left to right, each top to bottom.
    pub fn column_tableau(shape: &SkewShape) -> Self {
        let mut order: Vec<usize> = (0..shape.n()).collect();
        order.sort_by_key(|&c| (shape.cells()[c].1, shape.cells()[c].0));
        let mut entries = vec![0; shape.n()];
        for (k, &c) in order.iter().enumerate() {
            entries[c] = k + 1;
        }
        StandardTableau::from_entries(shape.clone(), entries).expect("column filling is standard")
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn entry_at(&self, cell: (usize, usize)) -> Option<usize> {
        self.shape.cell_index(cell).map(|c| self.entries[c])
    }

    /// Cell `(row, column)` holding `k` (1-based).
    pub fn cell(&self, k: usize) -> (usize, usize) {
        self.positions[k - 1]
    }

    pub fn row_of(&self, k: usize) -> usize {
        self.positions[k - 1].0
    }

    pub fn col_of(&self, k: usize) -> usize {
        self.positions[k - 1].1
    }

    /// Content `j - i` of the cell holding `k`.
    pub fn content(&self, k: usize) -> i64 {
        let (i, j) = self.cell(k);
        j as i64 - i as i64
    }

    pub fn contents(&self) -> Vec<i64> {
        (1..=self.n()).map(|k| self.content(k)).collect()
    }

    pub fn is_row_tableau(&self) -> bool {
        *self == StandardTableau::row_tableau(&self.shape)
    }

    pub fn is_column_tableau(&self) -> bool {
        *self == StandardTableau::column_tableau(&self.shape)
    }

    /// `s_k` applied to the tableau (swap `k` and `k+1`), if still standard.
    pub fn swap(&self, k: usize) -> Option<StandardTableau> {
        if k == 0 || k >= self.n() {
            return None;
        }
        let entries = self
            .entries
            .iter()
            .map(|&e| if e == k { k + 1 } else if e == k + 1 { k } else { e })
            .collect();
        StandardTableau::from_entries(self.shape.clone(), entries).ok()
    }

    /// Split a non-skew tableau at `m`: the tableau `Υ` of the entries `1..=m`
    /// and the skew tableau `Ω` of the rest, renumbered from 1.
    pub fn split(&self, m: usize) -> Result<(StandardTableau, StandardTableau)> {
        if self.shape.is_skew() {
            return Err(Error::SkewShape(self.shape.to_string()));
        }
        if m > self.n() {
            return Err(Error::Index(format!("split point {m} past {} boxes", self.n())));
        }
        let lambda = self.shape.lambda();
        let mut mu_parts = vec![0; lambda.len()];
        for k in 1..=m {
            mu_parts[self.row_of(k) - 1] += 1;
        }
        let mu = Partition::new(mu_parts)?;
        let up_shape = SkewShape::straight(mu.clone());
        let up_entries = up_shape.cells().iter().map(|&c| self.entry_at(c).unwrap()).collect();
        let upsilon = StandardTableau::from_entries(up_shape, up_entries)?;
        let om_shape = SkewShape::new(lambda.clone(), mu)?;
        let om_entries = om_shape.cells().iter().map(|&c| self.entry_at(c).unwrap() - m).collect();
        let omega = StandardTableau::from_entries(om_shape, om_entries)?;
        Ok((upsilon, omega))
    }

    /// Inverse of [`split`](Self::split): `Υ` of shape `μ` and `Ω` of shape `λ/μ`.
    pub fn join(upsilon: &StandardTableau, omega: &StandardTableau) -> Result<StandardTableau> {
        if upsilon.shape.is_skew() || upsilon.shape.lambda() != omega.shape.mu() {
            return Err(Error::InvalidTableau(format!(
                "cannot join {} with {}",
                upsilon.shape, omega.shape
            )));
        }
        let m = upsilon.n();
        let shape = SkewShape::straight(omega.shape.lambda().clone());
        let entries = shape
            .cells()
            .iter()
            .map(|&c| upsilon.entry_at(c).unwrap_or_else(|| omega.entry_at(c).unwrap() + m))
            .collect();
        StandardTableau::from_entries(shape, entries)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lambda = self.shape.lambda();
        let rows: Vec<String> = (1..=lambda.len())
            .map(|i| {
                (1..=lambda.part(i))
                    .map(|j| self.entry_at((i, j)).map_or("·".to_string(), |e| e.to_string()))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join(" | "))
    }
}

/// All standard tableaux of a shape, ordered lexicographically by entries.
pub fn standard_tableaux(shape: &SkewShape) -> Vec<StandardTableau> {
    fn go(shape: &SkewShape, k: usize, entries: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = shape.n();
        if k > n {
            out.push(entries.clone());
            return;
        }
        for (c, &(i, j)) in shape.cells().iter().enumerate() {
            if entries[c] != 0 {
                continue;
            }
            let ready = |cell: (usize, usize)| match shape.cell_index(cell) {
                Some(idx) => entries[idx] != 0,
                None => true,
            };
            if ready((i, j.wrapping_sub(1))) && ready((i.wrapping_sub(1), j)) {
                entries[c] = k;
                go(shape, k + 1, entries, out);
                entries[c] = 0;
            }
        }
    }
    let mut raw = Vec::new();
    go(shape, 1, &mut vec![0; shape.n()], &mut raw);
    raw.sort();
    raw.into_iter()
        .map(|e| StandardTableau::from_entries(shape.clone(), e).expect("enumeration is standard"))
        .collect()
}

/// Dimension of the irreducible `S_l`-module `U_λ` by the hook length formula.
pub fn dim_sym_irrep(p: &Partition) -> u64 {
    let conj = p.conjugate();
    let mut hooks: u128 = 1;
    for i in 1..=p.len() {
        for j in 1..=p.part(i) {
            hooks *= ((p.part(i) - j) + (conj.part(j) - i) + 1) as u128;
        }
    }
    let fact: u128 = (1..=p.size() as u128).product();
    (fact / hooks) as u64
}

/// The classical groups whose labels are validated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    GL,
    O,
    Sp,
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GL" | "gl" => Ok(Group::GL),
            "O" | "o" => Ok(Group::O),
            "Sp" | "sp" | "SP" => Ok(Group::Sp),
            _ => Err(Error::Parse(format!("unknown group {s:?}"))),
        }
    }
}

/// Whether `p` labels an irreducible polynomial representation of the group
/// of the given dimension.
pub fn validate_label(p: &Partition, group: Group, dim: usize) -> Result<bool> {
    let c = p.conjugate();
    Ok(match group {
        Group::GL => c.part(1) <= dim,
        Group::O => c.part(1) + c.part(2) <= dim,
        Group::Sp => {
            if dim % 2 != 0 {
                return Err(Error::Parity(dim));
            }
            2 * c.part(1) <= dim
        }
    })
}

/// Brute-force count of semistandard fillings of `shape` by `1..=n`.
pub fn count_semistandard(shape: &SkewShape, n: usize) -> u64 {
    fn go(shape: &SkewShape, c: usize, n: usize, vals: &mut Vec<usize>) -> u64 {
        if c == shape.n() {
            return 1;
        }
        let (i, j) = shape.cells()[c];
        let mut lo = 1;
        if let Some(idx) = shape.cell_index((i, j.wrapping_sub(1))) {
            lo = lo.max(vals[idx]);
        }
        if let Some(idx) = shape.cell_index((i.wrapping_sub(1), j)) {
            lo = lo.max(vals[idx] + 1);
        }
        let mut total = 0;
        for v in lo..=n {
            vals[c] = v;
            total += go(shape, c + 1, n, vals);
        }
        vals[c] = 0;
        total
    }
    go(shape, 0, n, &mut vec![0; shape.n()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(part("").conjugate(), part(""));
        assert_eq!(part("5,3,3,3,3").conjugate(), part("5,5,5,1,1"));
        assert_eq!(part("3,1").conjugate(), part("2,1,1"));
    }

    #[test]
    fn normalization_and_parsing() {
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part("2,1"));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(part("0"), Partition::empty());
        assert_eq!(part("∅").to_string(), "∅");
        assert!("a,1".parse::<Partition>().is_err());
    }

    #[test]
    fn skew_construction() {
        let s = SkewShape::new(part("2"), part("0")).unwrap();
        assert_eq!(s.cells(), &[(1, 1), (1, 2)]);
        let s = SkewShape::new(part("5,3,3,3,3"), part("3,3,2")).unwrap();
        assert_eq!(s.n(), 9);
        assert!(matches!(SkewShape::new(part("1"), part("2")), Err(Error::Containment { .. })));
        assert_eq!("2,1/1".parse::<SkewShape>().unwrap().to_string(), "2,1/1");
    }

    #[test]
    fn example_contents() {
        let s = SkewShape::new(part("5,3,3,3,3"), part("3,3,2")).unwrap();
        assert_eq!(StandardTableau::row_tableau(&s).contents(), vec![3, 4, 0, -3, -2, -1, -4, -3, -2]);
        assert_eq!(StandardTableau::column_tableau(&s).contents(), vec![-3, -4, -2, -3, 0, -1, -2, 3, 4]);
    }

    #[test]
    fn row_tableau_entries() {
        let t = StandardTableau::row_tableau(&SkewShape::straight(part("2,1")));
        assert_eq!(t.entry_at((1, 1)), Some(1));
        assert_eq!(t.entry_at((1, 2)), Some(2));
        assert_eq!(t.entry_at((2, 1)), Some(3));
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(standard_tableaux(&SkewShape::straight(part("1"))).len(), 1);
        assert_eq!(standard_tableaux(&SkewShape::straight(part("2,1"))).len(), 2);
        assert_eq!(standard_tableaux(&"2,1/1".parse().unwrap()).len(), 2);
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(dim_sym_irrep(&part("4")), 1);
        assert_eq!(dim_sym_irrep(&part("2,1")), 2);
        assert_eq!(dim_sym_irrep(&part("2,2")), 2);
        assert_eq!(dim_sym_irrep(&part("")), 1);
    }

    #[test]
    fn labels() {
        assert!(validate_label(&part("1,1"), Group::O, 2).unwrap());
        assert!(!validate_label(&part("1,1"), Group::Sp, 2).unwrap());
        assert!(validate_label(&part("2"), Group::GL, 1).unwrap());
        assert_eq!(validate_label(&part("1"), Group::Sp, 3), Err(Error::Parity(3)));
    }

    #[test]
    fn semistandard_counts() {
        assert_eq!(count_semistandard(&SkewShape::straight(part("2")), 2), 3);
        assert_eq!(count_semistandard(&SkewShape::straight(part("1,1")), 2), 1);
        assert_eq!(count_semistandard(&SkewShape::straight(part("1,1")), 1), 0);
        assert_eq!(count_semistandard(&"2,1/1".parse().unwrap(), 2), 4);
    }

    #[test]
    fn split_and_join() {
        let t = StandardTableau::from_rows(&[&[1, 2, 4], &[3]]).unwrap();
        let (up, om) = t.split(2).unwrap();
        assert_eq!(up.shape().lambda(), &part("2"));
        assert_eq!(om.shape().to_string(), "3,1/2");
        assert_eq!(om.entries(), &[2, 1]);
        assert_eq!(StandardTableau::join(&up, &om).unwrap(), t);
    }

    #[test]
    fn swaps() {
        let t = StandardTableau::row_tableau(&SkewShape::straight(part("2,1")));
        assert!(t.swap(1).is_none());
        assert!(t.swap(2).unwrap().is_column_tableau());
    }
}

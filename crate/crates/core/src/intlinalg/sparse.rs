//! Sorted sparse integer vectors used as working columns by the elimination
//! routines. Public matrices stay dense; these never escape the crate's
//! algorithms except through conversion helpers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, BigInt::from(1))],
        }
    }

    pub fn from_dense(v: &[BigInt]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Entries must be sorted by index with no zeros and no duplicates.
    pub fn from_sorted(entries: Vec<(usize, BigInt)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, x)| !x.is_zero()));
        SparseVec { entries }
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_unsorted(mut entries: Vec<(usize, BigInt)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (i, x) in entries {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => out.push((i, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        SparseVec { entries: out }
    }

    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); len];
        for (i, x) in &self.entries {
            v[*i] = x.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> BigInt {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn get_ref(&self, i: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn first(&self) -> Option<&(usize, BigInt)> {
        self.entries.first()
    }

    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(_, x)| x.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &BigInt, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + c * y;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    /// `s * self + t * other`
    pub fn combine(s: &BigInt, a: &SparseVec, t: &BigInt, b: &SparseVec) -> SparseVec {
        let mut out = a.scale(s);
        out.add_scaled(t, b);
        out
    }

    pub fn dot_dense(&self, dense: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, x) in &self.entries {
            let y = &dense[*i];
            if !y.is_zero() {
                acc += x * y;
            }
        }
        acc
    }

    pub fn dot(&self, other: &SparseVec) -> BigInt {
        let mut acc = BigInt::zero();
        let (mut p, mut q) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while p < a.len() && q < b.len() {
            match a[p].0.cmp(&b[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc += &a[p].1 * &b[q].1;
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// Keeps only entries with index in `range`, shifted down by `range.start`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| range.contains(i))
                .map(|(i, x)| (i - range.start, x.clone()))
                .collect(),
        }
    }

    /// Shifts every index up by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (i + offset, x.clone()))
                .collect(),
        }
    }

    pub fn map_values(&self, mut f: impl FnMut(&BigInt) -> BigInt) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (*i, f(x)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }
}

/// Row-compressed view of a dense matrix, built once for repeated row access.
pub struct SparseRows {
    pub cols: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseRows {
    pub fn from_matrix(m: &crate::intlinalg::IntMatrix) -> Self {
        SparseRows {
            cols: m.cols(),
            rows: (0..m.rows())
                .map(|i| SparseVec::from_dense(m.row(i)))
                .collect(),
        }
    }
}

/// Column-compressed view of a dense matrix.
pub fn sparse_columns(m: &crate::intlinalg::IntMatrix) -> Vec<SparseVec> {
    let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); m.cols()];
    for i in 0..m.rows() {
        for (j, x) in m.row(i).iter().enumerate() {
            if !x.is_zero() {
                cols[j].push((i, x.clone()));
            }
        }
    }
    cols.into_iter().map(SparseVec::from_sorted).collect()
}

pub fn columns_to_matrix(rows: usize, cols: &[SparseVec]) -> crate::intlinalg::IntMatrix {
    let mut m = crate::intlinalg::IntMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.entries() {
            m[(*i, j)] = x.clone();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn add_scaled_merges_and_cancels() {
        let mut a = sv(&[1, 0, 2, 0, 3]);
        let b = sv(&[0, 1, 1, 0, -1]);
        a.add_scaled(&BigInt::from(3), &b);
        assert_eq!(a, sv(&[1, 3, 5, 0, 0]));
        assert_eq!(a.nnz(), 3);
    }

    #[test]
    fn dots_agree() {
        let a = sv(&[1, 0, 2, 4]);
        let b = sv(&[3, 5, 0, 1]);
        assert_eq!(a.dot(&b), BigInt::from(7));
        assert_eq!(a.dot_dense(&b.to_dense(4)), BigInt::from(7));
    }

    #[test]
    fn unsorted_duplicates_sum() {
        let v = SparseVec::from_unsorted(vec![
            (3, BigInt::from(1)),
            (1, BigInt::from(2)),
            (3, BigInt::from(-1)),
        ]);
        assert_eq!(v, sv(&[0, 2, 0, 0]));
    }
}

//! Column-style Hermite elimination over the integers.
//!
//! Columns are reduced by unimodular column operations until every column has
//! a distinct leading row. The leading entries are made positive and, when
//! requested, entries to the left of a pivot are reduced into `[0, pivot)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::sparse::{columns_to_matrix, sparse_columns, SparseVec};

/// Symmetric residue of `x` modulo `m > 0`, in `(-m/2, m/2]`.
pub fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Reduces the columns listed in `active` so that at most one carries a
/// nonzero value, where `vals[k]` is the value attached to column `active[k]`
/// (an entry, or a linear functional of the column). Values are combined
/// alongside the columns; with a modulus they are only tracked modulo it.
/// Returns the position in `active` of the surviving column, if any.
pub(crate) fn euclid_reduce(
    cols: &mut [SparseVec],
    active: &[usize],
    vals: &mut [BigInt],
    modulus: Option<&BigInt>,
) -> Option<usize> {
    if let Some(m) = modulus {
        for v in vals.iter_mut() {
            *v = sym_mod(v, m);
        }
    }
    let live: Vec<usize> = (0..active.len()).filter(|&k| !vals[k].is_zero()).collect();
    let &piv = live.iter().min_by(|&&a, &&b| {
        vals[a]
            .abs()
            .cmp(&vals[b].abs())
            .then(cols[active[a]].nnz().cmp(&cols[active[b]].nnz()))
    })?;
    for &l in &live {
        if l == piv {
            continue;
        }
        let (pk, lk) = (active[piv], active[l]);
        let (vp, vl) = (vals[piv].clone(), vals[l].clone());
        if (&vl % &vp).is_zero() {
            let q = -(&vl / &vp);
            let pc = cols[pk].clone();
            cols[lk].add_scaled(&q, &pc);
        } else {
            let e = vp.extended_gcd(&vl);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let new_p = SparseVec::combine(&s, &cols[pk], &t, &cols[lk]);
            let new_l = SparseVec::combine(&(&vl / &g), &cols[pk], &(-(&vp / &g)), &cols[lk]);
            cols[pk] = new_p;
            cols[lk] = new_l;
            vals[piv] = g;
        }
        vals[l] = BigInt::zero();
    }
    if let Some(m) = modulus {
        vals[piv] = sym_mod(&vals[piv], m);
        if vals[piv].is_zero() {
            return None;
        }
    }
    Some(piv)
}

/// Result of an echelon pass over columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Pivot columns sorted by pivot row, leading entry positive.
    pub pivots: Vec<(usize, SparseVec)>,
    /// Columns whose head (rows below `head_rows`) vanished; only the tail remains.
    pub tails: Vec<SparseVec>,
}

/// Column echelon form using only rows `< head_rows` as pivot rows.
///
/// Rows at or beyond `head_rows` are carried along untouched, which lets a
/// caller track the transformation by appending identity coordinates.
pub fn echelon(gens: Vec<SparseVec>, head_rows: usize, canonical: bool) -> Echelon {
    let mut cols: Vec<SparseVec> = gens;
    let mut by_lead: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut tails = Vec::new();
    for (k, c) in cols.iter().enumerate() {
        match c.first() {
            Some((i, _)) if *i < head_rows => by_lead.entry(*i).or_default().push(k),
            Some(_) => tails.push(k),
            None => {}
        }
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    while let Some((&row, _)) = by_lead.iter().next() {
        let active = by_lead.remove(&row).unwrap();
        let mut vals: Vec<BigInt> = active.iter().map(|&k| cols[k].get(row)).collect();
        let piv = euclid_reduce(&mut cols, &active, &mut vals, None)
            .expect("leading entries are nonzero");
        for (pos, &k) in active.iter().enumerate() {
            if pos == piv {
                continue;
            }
            match cols[k].first() {
                Some((i, _)) if *i < head_rows => {
                    debug_assert!(*i > row);
                    by_lead.entry(*i).or_default().push(k)
                }
                Some(_) => tails.push(k),
                None => {}
            }
        }
        let pk = active[piv];
        if cols[pk].get(row).is_negative() {
            cols[pk] = cols[pk].neg();
        }
        pivots.push((row, pk));
    }
    if canonical {
        for a in 0..pivots.len() {
            let (row, pk) = pivots[a];
            let h = cols[pk].get(row);
            for &(_, ok) in pivots.iter().take(a) {
                let x = cols[ok].get(row);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&h);
                if !q.is_zero() {
                    let pc = cols[pk].clone();
                    cols[ok].add_scaled(&(-q), &pc);
                }
            }
        }
    }
    let mut taken: Vec<Option<SparseVec>> = cols.into_iter().map(Some).collect();
    Echelon {
        pivots: pivots
            .into_iter()
            .map(|(r, k)| (r, taken[k].take().unwrap()))
            .collect(),
        tails: tails
            .into_iter()
            .map(|k| taken[k].take().unwrap())
            .collect(),
    }
}

/// Column Hermite normal form `H = M·V` with the unimodular transform `V`.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub v: IntMatrix,
    /// Pivot row of each nonzero column of `h`, in order.
    pub pivot_rows: Vec<usize>,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteDecomposition {
    let (r, c) = (m.rows(), m.cols());
    let gens: Vec<SparseVec> = sparse_columns(m)
        .into_iter()
        .enumerate()
        .map(|(j, col)| {
            let mut v = col;
            v.add_scaled(&BigInt::one(), &SparseVec::unit(r + j));
            v
        })
        .collect();
    let ech = echelon(gens, r, true);
    let mut h_cols = Vec::new();
    let mut v_cols = Vec::new();
    let mut pivot_rows = Vec::new();
    for (row, col) in &ech.pivots {
        h_cols.push(col.restrict(0..r));
        v_cols.push(col.restrict(r..r + c));
        pivot_rows.push(*row);
    }
    for t in &ech.tails {
        h_cols.push(SparseVec::new());
        v_cols.push(t.restrict(r..r + c));
    }
    HermiteDecomposition {
        h: columns_to_matrix(r, &h_cols),
        v: columns_to_matrix(c, &v_cols),
        pivot_rows,
    }
}

/// Canonical integer solution of `M·x = b`, or `None` when `b ∉ im(M)`.
///
/// The solution is the Hermite back-substitution: `b` is expressed in the
/// pivot columns of `H = M·V` and pulled back through `V`.
pub fn solve_in_lattice(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(
        m.rows(),
        b.len(),
        "right-hand side length must equal row count"
    );
    let dec = hermite_normal_form(m);
    let mut rest = SparseVec::from_dense(b);
    let mut x = vec![BigInt::zero(); m.cols()];
    let h_cols = sparse_columns(&dec.h);
    for (j, &row) in dec.pivot_rows.iter().enumerate() {
        match rest.first() {
            None => break,
            Some((lead, _)) if *lead < row => return None,
            _ => {}
        }
        let val = rest.get(row);
        if val.is_zero() {
            continue;
        }
        let h = h_cols[j].get(row);
        if !(&val % &h).is_zero() {
            return None;
        }
        let q = &val / &h;
        rest.add_scaled(&(-&q), &h_cols[j]);
        for (xi, vij) in x.iter_mut().zip(dec.v.column(j)) {
            if !vij.is_zero() {
                *xi += &q * vij;
            }
        }
    }
    if rest.is_zero() {
        Some(x)
    } else {
        None
    }
}

/// Basis of the integer kernel `{x : M·x = 0}`, as columns of the returned matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let dec = hermite_normal_form(m);
    let k = dec.pivot_rows.len();
    dec.v.select_columns(&(k..m.cols()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::matrix::int_vec;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows, 0)
    }

    #[test]
    fn hermite_transform_is_consistent() {
        let m = mat(&[vec![2, 4, 6], vec![1, 3, 5], vec![0, 1, 7]]);
        let dec = hermite_normal_form(&m);
        assert_eq!(m.mul(&dec.v), dec.h);
        assert!(dec.v.is_unimodular());
        for (j, &row) in dec.pivot_rows.iter().enumerate() {
            assert!(dec.h[(row, j)].is_positive());
            for i in 0..row {
                assert!(dec.h[(i, j)].is_zero());
            }
        }
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve_in_lattice(&mat(&[vec![2]]), &int_vec(&[4])),
            Some(int_vec(&[2]))
        );
        assert_eq!(solve_in_lattice(&mat(&[vec![2]]), &int_vec(&[3])), None);
        let m = mat(&[vec![1, 0], vec![0, 3]]);
        assert_eq!(
            solve_in_lattice(&m, &int_vec(&[5, 6])),
            Some(int_vec(&[5, 2]))
        );
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = mat(&[vec![1, 2, 3]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn sym_mod_range() {
        let m = BigInt::from(4);
        let got: Vec<BigInt> = (-4..5).map(|x| sym_mod(&BigInt::from(x), &m)).collect();
        assert_eq!(got, int_vec(&[0, 1, 2, -1, 0, 1, 2, -1, 0]));
    }
}

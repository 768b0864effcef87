use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::hermite::sym_mod;
use super::matrix::IntMatrix;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_i` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Working state for the elimination; the transforms are tracked on demand.
pub(crate) struct SmithWork {
    pub a: IntMatrix,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl SmithWork {
    pub fn new(m: IntMatrix, track_u: bool, track_u_inv: bool, track_v: bool) -> Self {
        let (r, c) = (m.rows(), m.cols());
        SmithWork {
            a: m,
            u: track_u.then(|| IntMatrix::identity(r)),
            u_inv: track_u_inv.then(|| IntMatrix::identity(r)),
            v: track_v.then(|| IntMatrix::identity(c)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    /// row_i += c·row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        add_row_multiple(&mut self.a, i, j, c);
        if let Some(u) = &mut self.u {
            add_row_multiple(u, i, j, c);
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse operation on the right: col_j -= c·col_i
            add_col_multiple(ui, j, i, &(-c));
        }
    }

    /// col_i += c·col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        add_col_multiple(&mut self.a, i, j, c);
        if let Some(v) = &mut self.v {
            add_col_multiple(v, i, j, c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a.row_mut(i) {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u.row_mut(i) {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in 0..ui.rows() {
                let x = -&ui[(r, i)];
                ui[(r, i)] = x;
            }
        }
    }

    /// Nonzero entry of the trailing block at `t` with the least absolute
    /// value, ties broken by the Markowitz count of its row and column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let row_nnz: Vec<usize> = (0..rows)
            .map(|i| (t..cols).filter(|&j| !self.a[(i, j)].is_zero()).count())
            .collect();
        let col_nnz: Vec<usize> = (0..cols)
            .map(|j| (t..rows).filter(|&i| !self.a[(i, j)].is_zero()).count())
            .collect();
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let key = (x.abs(), (row_nnz[i] - 1) * (col_nnz[j] - 1));
                if best
                    .as_ref()
                    .map_or(true, |(v, m, _, _)| (&key.0, key.1) < (v, *m))
                {
                    best = Some((key.0, key.1, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    /// Reduces row `t` right of the pivot `p` by column operations; true when it clears.
    fn reduce_row(&mut self, t: usize, p: &BigInt) -> bool {
        let mut clean = true;
        for j in t + 1..self.a.cols() {
            let x = &self.a[(t, j)];
            if x.is_zero() {
                continue;
            }
            let r = sym_mod(x, p);
            let q = (x - &r) / p;
            self.add_col(j, t, &(-q));
            clean &= r.is_zero();
        }
        clean
    }

    /// Runs the elimination to completion.
    ///
    /// Every sweep re-selects the smallest entry of the whole trailing block
    /// and reduces with nearest-integer quotients, so each unfinished sweep at
    /// least halves the pivot. Sticking with one pivot row instead lets the
    /// block grow without bound on some small inputs.
    pub fn run(&mut self) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            loop {
                let Some((bi, bj)) = self.pivot(t) else {
                    return;
                };
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);
                if self.a[(t, t)].is_negative() {
                    self.negate_row(t);
                }
                let p = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    let x = &self.a[(i, t)];
                    if x.is_zero() {
                        continue;
                    }
                    let r = sym_mod(x, &p);
                    let q = (x - &r) / &p;
                    self.add_row(i, t, &(-q));
                    clean &= r.is_zero();
                }
                clean &= self.reduce_row(t, &p);
                if !clean {
                    continue;
                }
                // divisibility of the trailing block
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&self.a[(i, j)] % &p).is_zero()));
                match bad {
                    Some(i) => {
                        // leaves a remainder below |p| in row t before the next sweep
                        self.add_row(t, i, &BigInt::one());
                        self.reduce_row(t, &p);
                    }
                    None => break,
                }
            }
        }
    }
}

fn add_row_multiple(m: &mut IntMatrix, i: usize, j: usize, c: &BigInt) {
    let cols = m.cols();
    for k in 0..cols {
        let x = &m[(j, k)];
        if !x.is_zero() {
            let y = c * x;
            m[(i, k)] += y;
        }
    }
}

fn add_col_multiple(m: &mut IntMatrix, i: usize, j: usize, c: &BigInt) {
    for k in 0..m.rows() {
        let x = &m[(k, j)];
        if !x.is_zero() {
            let y = c * x;
            m[(k, i)] += y;
        }
    }
}

/// Smith normal form with both transforms. Total on all inputs, including empty matrices.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut w = SmithWork::new(m.clone(), true, false, true);
    w.run();
    SmithDecomposition {
        u: w.u.unwrap(),
        d: w.a,
        v: w.v.unwrap(),
    }
}

/// Structure of `Z^rows / im(M)`: free rank and invariant factors greater than one.
pub fn cokernel_structure(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let mut w = SmithWork::new(m.clone(), false, false, false);
    w.run();
    let diag: Vec<BigInt> = (0..m.rows().min(m.cols()))
        .map(|i| w.a[(i, i)].clone())
        .collect();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let torsion = diag
        .into_iter()
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect();
    (m.rows() - rank, torsion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::matrix::int_vec;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        s
    }

    #[test]
    fn identity_stays_identity() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]], 0));
        assert_eq!(s.diagonal(), int_vec(&[2, 4]));
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&IntMatrix::zeros(3, 2));
        assert!(s.d.is_zero());
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }

    #[test]
    fn cokernels() {
        assert_eq!(
            cokernel_structure(&IntMatrix::from_i64_rows(&[vec![2]], 0)),
            (0, int_vec(&[2]))
        );
        assert_eq!(
            cokernel_structure(&IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 6]], 0)),
            (0, int_vec(&[6]))
        );
        assert_eq!(cokernel_structure(&IntMatrix::zeros(2, 0)), (2, vec![]));
        assert_eq!(
            cokernel_structure(&IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]], 0)),
            (0, int_vec(&[6]))
        );
    }

    #[test]
    fn inverse_tracking() {
        let m = IntMatrix::from_i64_rows(&[vec![4, 6, 2], vec![2, 8, 4], vec![6, 2, 2]], 0);
        let mut w = SmithWork::new(m, true, true, false);
        w.run();
        let u = w.u.unwrap();
        let ui = w.u_inv.unwrap();
        assert_eq!(u.mul(&ui), IntMatrix::identity(3));
    }

    #[test]
    fn entries_stay_small_on_a_growth_prone_input() {
        let m = IntMatrix::from_i64_rows(
            &[
                vec![-12, 12, 24, 48, -6, 48],
                vec![-186, 234, 435, 654, -135, 663],
                vec![184, -324, -1194, -256, 581, -258],
                vec![-221, 394, 1474, 289, -721, 291],
                vec![-10, 19, 76, 9, -38, 9],
            ],
            6,
        );
        let s = check(&m);
        assert_eq!(s.diagonal(), int_vec(&[1, 1, 3, 3, 0]));
        let bits =
            s.u.entries()
                .iter()
                .chain(s.v.entries())
                .map(|x| x.bits())
                .max()
                .unwrap();
        assert!(bits < 128, "transform entries reached {bits} bits");
    }
}

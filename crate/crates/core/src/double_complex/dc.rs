use crate::abgroups::{AbCochainComplex, AbMorphism, FgAbelianGroup, Preimager};
use crate::error::{Error, Result};
use crate::intlinalg::{columns_to_matrix, sparse_columns, IntMatrix};

/// Default limit on `p_max` and `q_max`.
pub const DEFAULT_BOUND: usize = 6;

/// A bounded first-quadrant double complex of presented groups, with
/// anticommuting squares `d_h d_v + d_v d_h = 0`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    p_max: usize,
    q_max: usize,
    /// `terms[p][q]`.
    terms: Vec<Vec<FgAbelianGroup>>,
    /// `dh[p][q]: (p, q) → (p + 1, q)` for `p < p_max`.
    dh: Vec<Vec<IntMatrix>>,
    /// `dv[p][q]: (p, q) → (p, q + 1)` for `q < q_max`.
    dv: Vec<Vec<IntMatrix>>,
}

impl DoubleComplex {
    pub fn new(
        terms: Vec<Vec<FgAbelianGroup>>,
        dh: Vec<Vec<IntMatrix>>,
        dv: Vec<Vec<IntMatrix>>,
    ) -> Result<Self> {
        Self::with_bound(terms, dh, dv, DEFAULT_BOUND)
    }

    /// As [`DoubleComplex::new`] with a custom bound on both directions.
    pub fn with_bound(
        terms: Vec<Vec<FgAbelianGroup>>,
        dh: Vec<Vec<IntMatrix>>,
        dv: Vec<Vec<IntMatrix>>,
        bound: usize,
    ) -> Result<Self> {
        let dc = Self::unchecked(terms, dh, dv, bound)?;
        dc.check()?;
        Ok(dc)
    }

    pub(crate) fn unchecked(
        terms: Vec<Vec<FgAbelianGroup>>,
        dh: Vec<Vec<IntMatrix>>,
        dv: Vec<Vec<IntMatrix>>,
        bound: usize,
    ) -> Result<Self> {
        let p_count = terms.len();
        if p_count == 0 || terms[0].is_empty() {
            return Err(Error::InvalidInput(
                "double complex needs at least one term".into(),
            ));
        }
        let q_count = terms[0].len();
        if terms.iter().any(|c| c.len() != q_count) {
            return Err(Error::DimensionMismatch(
                "columns of different heights".into(),
            ));
        }
        let (p_max, q_max) = (p_count - 1, q_count - 1);
        if p_max > bound || q_max > bound {
            return Err(Error::InvalidInput(format!(
                "bounds ({p_max}, {q_max}) exceed the limit {bound}"
            )));
        }
        if dh.len() != p_max || dh.iter().any(|c| c.len() != q_count) {
            return Err(Error::DimensionMismatch(
                "horizontal maps have the wrong shape".into(),
            ));
        }
        if dv.len() != p_count || dv.iter().any(|c| c.len() != q_max) {
            return Err(Error::DimensionMismatch(
                "vertical maps have the wrong shape".into(),
            ));
        }
        for p in 0..=p_max {
            for q in 0..=q_max {
                let r = terms[p][q].rank();
                if p < p_max && (dh[p][q].cols() != r || dh[p][q].rows() != terms[p + 1][q].rank())
                {
                    return Err(Error::DimensionMismatch(format!("d_h at ({p}, {q})")));
                }
                if q < q_max && (dv[p][q].cols() != r || dv[p][q].rows() != terms[p][q + 1].rank())
                {
                    return Err(Error::DimensionMismatch(format!("d_v at ({p}, {q})")));
                }
            }
        }
        Ok(DoubleComplex {
            p_max,
            q_max,
            terms,
            dh,
            dv,
        })
    }

    /// Relations respected, `d_h² = 0`, `d_v² = 0` and anticommutation, all
    /// modulo relations of the targets.
    pub fn check(&self) -> Result<()> {
        let zero_mod = |m: &IntMatrix, target: &FgAbelianGroup| {
            sparse_columns(m)
                .iter()
                .all(|c| target.is_relation_sparse(c))
        };
        for p in 0..=self.p_max {
            for q in 0..=self.q_max {
                let rel = self.terms[p][q].relations();
                if p < self.p_max && !zero_mod(&self.dh[p][q].mul(&rel), &self.terms[p + 1][q]) {
                    return Err(Error::MalformedComplex(format!(
                        "d_h at ({p}, {q}) does not respect relations"
                    )));
                }
                if q < self.q_max && !zero_mod(&self.dv[p][q].mul(&rel), &self.terms[p][q + 1]) {
                    return Err(Error::MalformedComplex(format!(
                        "d_v at ({p}, {q}) does not respect relations"
                    )));
                }
                if p + 1 < self.p_max
                    && !zero_mod(
                        &self.dh[p + 1][q].mul(&self.dh[p][q]),
                        &self.terms[p + 2][q],
                    )
                {
                    return Err(Error::MalformedComplex(format!("d_h² ≠ 0 at ({p}, {q})")));
                }
                if q + 1 < self.q_max
                    && !zero_mod(
                        &self.dv[p][q + 1].mul(&self.dv[p][q]),
                        &self.terms[p][q + 2],
                    )
                {
                    return Err(Error::MalformedComplex(format!("d_v² ≠ 0 at ({p}, {q})")));
                }
                if p < self.p_max && q < self.q_max {
                    let s = self.dv[p + 1][q]
                        .mul(&self.dh[p][q])
                        .add(&self.dh[p][q + 1].mul(&self.dv[p][q]));
                    if !zero_mod(&s, &self.terms[p + 1][q + 1]) {
                        return Err(Error::MalformedComplex(format!(
                            "square at ({p}, {q}) does not anticommute"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    /// `(p, q)`, zero outside the bounds.
    pub fn term(&self, p: usize, q: usize) -> FgAbelianGroup {
        if p <= self.p_max && q <= self.q_max {
            self.terms[p][q].clone()
        } else {
            FgAbelianGroup::zero()
        }
    }

    pub fn dh(&self, p: usize, q: usize) -> IntMatrix {
        if p < self.p_max && q <= self.q_max {
            self.dh[p][q].clone()
        } else {
            IntMatrix::zeros(self.term(p + 1, q).rank(), self.term(p, q).rank())
        }
    }

    pub fn dv(&self, p: usize, q: usize) -> IntMatrix {
        if p <= self.p_max && q < self.q_max {
            self.dv[p][q].clone()
        } else {
            IntMatrix::zeros(self.term(p, q + 1).rank(), self.term(p, q).rank())
        }
    }

    /// Highest total degree.
    pub fn n_max(&self) -> usize {
        self.p_max + self.q_max
    }

    /// Columns `p` present in total degree `n`, ascending.
    pub fn columns_in(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        n.saturating_sub(self.q_max)..=n.min(self.p_max)
    }

    /// Offset of block `(p, n − p)` within `Tot^n`; `None` if it is not a summand.
    pub fn offset(&self, n: usize, p: usize) -> Option<usize> {
        if !self.columns_in(n).contains(&p) {
            return None;
        }
        Some(
            self.columns_in(n)
                .take_while(|&c| c < p)
                .map(|c| self.terms[c][n - c].rank())
                .sum(),
        )
    }

    pub fn tot_rank(&self, n: usize) -> usize {
        if n > self.n_max() {
            return 0;
        }
        self.columns_in(n)
            .map(|p| self.terms[p][n - p].rank())
            .sum()
    }

    pub fn tot_term(&self, n: usize) -> FgAbelianGroup {
        if n > self.n_max() {
            return FgAbelianGroup::zero();
        }
        let parts: Vec<&FgAbelianGroup> =
            self.columns_in(n).map(|p| &self.terms[p][n - p]).collect();
        FgAbelianGroup::direct_sum(&parts)
    }

    /// `d_h + d_v : Tot^n → Tot^{n+1}`.
    pub fn tot_differential(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.tot_rank(n + 1), self.tot_rank(n));
        if n >= self.n_max() {
            return m;
        }
        for p in self.columns_in(n) {
            let q = n - p;
            let c0 = self.offset(n, p).expect("summand");
            if let Some(r0) = self.offset(n + 1, p + 1) {
                m.set_block(r0, c0, &self.dh[p][q]);
            }
            if let Some(r0) = self.offset(n + 1, p) {
                m.set_block(r0, c0, &self.dv[p][q]);
            }
        }
        m
    }

    pub fn total_complex(&self) -> AbCochainComplex {
        let terms = (0..=self.n_max()).map(|n| self.tot_term(n)).collect();
        let diffs = (0..self.n_max())
            .map(|n| self.tot_differential(n))
            .collect();
        AbCochainComplex::new(terms, diffs).expect("total complex dimensions are consistent")
    }

    /// The complex in row `q`.
    pub fn row(&self, q: usize) -> AbCochainComplex {
        let terms = (0..=self.p_max).map(|p| self.terms[p][q].clone()).collect();
        AbCochainComplex::new(terms, self.dh.iter().map(|c| c[q].clone()).collect())
            .expect("row dimensions")
    }

    /// The complex in column `p`.
    pub fn column(&self, p: usize) -> AbCochainComplex {
        AbCochainComplex::new(self.terms[p].clone(), self.dv[p].clone()).expect("column dimensions")
    }

    /// A double complex with one nonzero row `q = 0`.
    pub fn from_row(c: &AbCochainComplex, q_max: usize) -> Result<Self> {
        let p_max = c
            .n_max()
            .ok_or_else(|| Error::InvalidInput("empty complex".into()))?;
        let mut terms = Vec::new();
        let mut dh = Vec::new();
        let mut dv = Vec::new();
        for p in 0..=p_max {
            let rank = c.term(p).rank();
            let mut col = vec![c.term(p)];
            col.extend((0..q_max).map(|_| FgAbelianGroup::zero()));
            let vcol = (0..q_max)
                .map(|q| IntMatrix::zeros(0, if q == 0 { rank } else { 0 }))
                .collect();
            terms.push(col);
            dv.push(vcol);
            if p < p_max {
                let mut hcol = vec![c.differential(p)];
                hcol.extend((0..q_max).map(|_| IntMatrix::zeros(0, 0)));
                dh.push(hcol);
            }
        }
        Self::with_bound(terms, dh, dv, p_max.max(q_max))
    }
}

/// The two-row double complex of a complex of presented groups: row 0 holds
/// free groups on a basis of the relations, row 1 the free groups on the
/// generators, and `d_v` is the relation inclusion. Then
/// `H^{n+1}(Tot) ≅ H^n` of the original complex.
///
/// Fails unless each differential lifts to relations with `d² = 0` exactly.
pub fn two_row_complex(c: &AbCochainComplex) -> Result<DoubleComplex> {
    let n_max = c
        .n_max()
        .ok_or_else(|| Error::InvalidInput("empty complex".into()))?;
    let mut rel = Vec::new();
    for n in 0..=n_max {
        let t = c.term(n);
        rel.push(columns_to_matrix(t.rank(), &t.relation_columns()));
    }
    let mut terms = Vec::new();
    let mut dh = Vec::new();
    let mut dv = Vec::new();
    for n in 0..=n_max {
        terms.push(vec![
            FgAbelianGroup::free(rel[n].cols()),
            FgAbelianGroup::free(c.term(n).rank()),
        ]);
        dv.push(vec![rel[n].clone()]);
        if n < n_max {
            let d = c.differential(n);
            // d R_n = R_{n+1} L_n
            let rn1 = AbMorphism::new(
                FgAbelianGroup::free(rel[n + 1].cols()),
                FgAbelianGroup::free(rel[n + 1].rows()),
                rel[n + 1].clone(),
            )?;
            let solver = Preimager::new(&rn1);
            let target = d.mul(&rel[n]);
            let mut cols = Vec::with_capacity(target.cols());
            for j in 0..target.cols() {
                let l = solver.preimage(&target.column(j)).ok_or_else(|| {
                    Error::MalformedComplex(format!("d^{n} does not map relations into relations"))
                })?;
                cols.push(l.iter().map(|x| -x).collect::<Vec<_>>());
            }
            let l = IntMatrix::from_columns(rel[n + 1].cols(), &cols);
            dh.push(vec![l, d]);
        }
    }
    let bound = n_max.max(1);
    DoubleComplex::with_bound(terms, dh, dv, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times(k: i64) -> IntMatrix {
        IntMatrix::from_i64_rows(&[vec![k]], 1)
    }

    #[test]
    fn single_row_total_complex_is_the_row() {
        let c = AbCochainComplex::new(vec![FgAbelianGroup::free(1); 3], vec![times(2), times(0)])
            .unwrap();
        let dc = DoubleComplex::from_row(&c, 2).unwrap();
        let tot = dc.total_complex();
        for n in 0..3 {
            assert_eq!(
                tot.cohomology_at(n).unwrap().structure(),
                c.cohomology_at(n).unwrap().structure()
            );
        }
    }

    #[test]
    fn two_row_needs_exact_square_zero() {
        // Z/4 --×2--> Z/4 --×2--> Z/4 has d² = 4, zero only modulo relations
        let z4 = FgAbelianGroup::cyclic(4);
        let c = AbCochainComplex::new(vec![z4.clone(), z4.clone(), z4], vec![times(2), times(2)])
            .unwrap();
        assert!(two_row_complex(&c).is_err());
    }

    #[test]
    fn two_row_complex_shifts_cohomology_by_one() {
        // Z/4 → Z/4 ⊕ Z/2 → Z/2 with x ↦ (2x, x) and (y, z) ↦ y − 2z
        let mid =
            FgAbelianGroup::direct_sum(&[&FgAbelianGroup::cyclic(4), &FgAbelianGroup::cyclic(2)]);
        let c = AbCochainComplex::new(
            vec![FgAbelianGroup::cyclic(4), mid, FgAbelianGroup::cyclic(2)],
            vec![
                IntMatrix::from_i64_rows(&[vec![2], vec![1]], 1),
                IntMatrix::from_i64_rows(&[vec![1, -2]], 2),
            ],
        )
        .unwrap();
        c.check().unwrap();
        let dc = two_row_complex(&c).unwrap();
        let tot = dc.total_complex();
        assert!(tot.cohomology_at(0).unwrap().is_trivial());
        for n in 0..3 {
            assert_eq!(
                tot.cohomology_at(n + 1).unwrap().structure(),
                c.cohomology_at(n).unwrap().structure()
            );
        }
    }

    #[test]
    fn commuting_square_is_rejected() {
        let z = || FgAbelianGroup::free(1);
        let terms = vec![vec![z(), z()], vec![z(), z()]];
        let dh = vec![vec![times(1), times(1)]];
        let dv = vec![vec![times(1)], vec![times(1)]];
        assert!(matches!(
            DoubleComplex::new(terms, dh, dv),
            Err(Error::MalformedComplex(_))
        ));
    }

    #[test]
    fn bound_is_enforced() {
        let c = AbCochainComplex::new(vec![FgAbelianGroup::free(1); 8], vec![times(0); 7]).unwrap();
        let terms: Vec<Vec<FgAbelianGroup>> = c.terms().iter().map(|t| vec![t.clone()]).collect();
        let dh = c.differentials().iter().map(|d| vec![d.clone()]).collect();
        let dv = (0..8).map(|_| Vec::new()).collect();
        assert!(DoubleComplex::new(terms, dh, dv).is_err());
    }
}

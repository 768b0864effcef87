use num_bigint::BigInt;

use super::cohomology::CohomologyGroup;
use super::group::FgAbelianGroup;
use super::morphism::apply_columns;
use crate::error::{Error, Result};
use crate::intlinalg::{sparse_columns, IntMatrix, SparseVec};

/// Cochain complex `C⁰ → C¹ → … → C^{n_max}` of presented groups.
/// Degrees outside the stored range are zero.
#[derive(Clone, Debug)]
pub struct AbCochainComplex {
    terms: Vec<FgAbelianGroup>,
    differentials: Vec<IntMatrix>,
}

impl AbCochainComplex {
    /// `differentials[n]` maps `terms[n]` to `terms[n + 1]`.
    pub fn new(terms: Vec<FgAbelianGroup>, differentials: Vec<IntMatrix>) -> Result<Self> {
        if terms.is_empty() {
            if !differentials.is_empty() {
                return Err(Error::DimensionMismatch(
                    "differentials without terms".into(),
                ));
            }
        } else if differentials.len() != terms.len() - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.cols() != terms[n].rank() || d.rows() != terms[n + 1].rank() {
                return Err(Error::DimensionMismatch(format!(
                    "differential {n} is {}×{}, expected {}×{}",
                    d.rows(),
                    d.cols(),
                    terms[n + 1].rank(),
                    terms[n].rank()
                )));
            }
        }
        Ok(AbCochainComplex {
            terms,
            differentials,
        })
    }

    pub fn n_max(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, n: usize) -> FgAbelianGroup {
        self.terms
            .get(n)
            .cloned()
            .unwrap_or_else(FgAbelianGroup::zero)
    }

    pub fn terms(&self) -> &[FgAbelianGroup] {
        &self.terms
    }

    /// `d^n : C^n → C^{n+1}`, zero outside the stored range.
    pub fn differential(&self, n: usize) -> IntMatrix {
        self.differentials
            .get(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.term(n + 1).rank(), self.term(n).rank()))
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    pub fn apply_differential(&self, n: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.differential(n).mul_vec(v)
    }

    /// Verifies `d^{n+1}∘d^n ≡ 0` on every generator and that each
    /// differential respects relations.
    pub fn check(&self) -> Result<()> {
        for n in 0..self.differentials.len() {
            let dn = &self.differentials[n];
            for (j, rel) in self.terms[n].relation_columns().iter().enumerate() {
                let img = apply_columns(&sparse_columns(dn), rel);
                if !self.terms[n + 1].is_relation_sparse(&img) {
                    return Err(Error::MalformedComplex(format!(
                        "d^{n} does not respect relation {j}"
                    )));
                }
            }
            if n + 1 < self.differentials.len() {
                let next = sparse_columns(&self.differentials[n + 1]);
                for (j, col) in sparse_columns(dn).iter().enumerate() {
                    let img = apply_columns(&next, col);
                    if !self.terms[n + 2].is_relation_sparse(&img) {
                        return Err(Error::MalformedComplex(format!(
                            "d^{}∘d^{n} ≠ 0 on generator {j}",
                            n + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `H^n = ker d^n / im d^{n-1}`. Degrees beyond the stored range are zero;
    /// the top stored degree is treated as having a zero outgoing map.
    pub fn cohomology_at(&self, n: usize) -> Result<CohomologyGroup> {
        let term = self.term(n);
        let incoming = if n >= 1 && n < self.terms.len() {
            Some(&self.differentials[n - 1])
        } else {
            None
        };
        let target;
        let outgoing = match self.differentials.get(n) {
            Some(d) => {
                target = self.terms[n + 1].clone();
                Some((d, &target))
            }
            None => None,
        };
        CohomologyGroup::compute(n, &term, incoming, outgoing)
    }

    /// The truncation to degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> AbCochainComplex {
        let k = (n + 1).min(self.terms.len());
        AbCochainComplex {
            terms: self.terms[..k].to_vec(),
            differentials: self.differentials[..k.saturating_sub(1)].to_vec(),
        }
    }

    /// Applies the differential to a sparse cochain.
    pub fn d_sparse(&self, n: usize, v: &SparseVec) -> SparseVec {
        apply_columns(&sparse_columns(&self.differential(n)), v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::int_vec;

    #[test]
    fn times_two_has_cokernel_z2() {
        let z = FgAbelianGroup::free(1);
        let c = AbCochainComplex::new(
            vec![z.clone(), z],
            vec![IntMatrix::from_i64_rows(&[vec![2]], 1)],
        )
        .unwrap();
        c.check().unwrap();
        let h1 = c.cohomology_at(1).unwrap();
        assert_eq!(h1.structure(), (0, int_vec(&[2])));
        assert!(c.cohomology_at(0).unwrap().is_trivial());
        assert!(c.cohomology_at(5).unwrap().is_trivial());
    }

    #[test]
    fn zero_differentials_give_terms() {
        let g = FgAbelianGroup::direct_sum(&[&FgAbelianGroup::cyclic(2), &FgAbelianGroup::free(1)]);
        let c = AbCochainComplex::new(vec![g.clone(), g.clone()], vec![IntMatrix::zeros(2, 2)])
            .unwrap();
        for n in 0..2 {
            assert_eq!(c.cohomology_at(n).unwrap().structure(), g.structure());
        }
    }

    #[test]
    fn d_squared_violation_reported() {
        let z = FgAbelianGroup::free(1);
        let one = IntMatrix::identity(1);
        let c =
            AbCochainComplex::new(vec![z.clone(), z.clone(), z], vec![one.clone(), one]).unwrap();
        assert!(matches!(c.check(), Err(Error::MalformedComplex(_))));
        assert!(matches!(
            c.cohomology_at(1),
            Err(Error::MalformedComplex(_))
        ));
    }

    #[test]
    fn torsion_coefficients() {
        // Z/4 --×2--> Z/4 --×2--> Z/4
        let g = FgAbelianGroup::cyclic(4);
        let two = IntMatrix::from_i64_rows(&[vec![2]], 1);
        let c =
            AbCochainComplex::new(vec![g.clone(), g.clone(), g], vec![two.clone(), two]).unwrap();
        c.check().unwrap();
        assert_eq!(c.cohomology_at(1).unwrap().structure(), (0, vec![]));
        assert_eq!(c.cohomology_at(0).unwrap().structure(), (0, int_vec(&[2])));
        let h2 = c.cohomology_at(2).unwrap();
        assert_eq!(h2.structure(), (0, int_vec(&[2])));
        assert_eq!(h2.classify(&int_vec(&[3])).unwrap(), int_vec(&[1]));
    }
}

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::intlinalg::{echelon, refine, sparse_columns, IntMatrix, Lattice, SparseVec};

/// A homomorphism of presented groups, given by an integer matrix on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbMorphism {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl AbMorphism {
    /// Checks dimensions and that relations of the source land in relations of the target.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        let m = Self::new_unchecked(source, target, matrix)?;
        for (j, rel) in m.source.relation_columns().iter().enumerate() {
            if !m.target.is_relation_sparse(&m.apply_sparse(rel)) {
                return Err(Error::InvalidInput(format!(
                    "matrix does not respect relations (relation column {j})"
                )));
            }
        }
        Ok(m)
    }

    /// Dimension checks only; for callers that establish well-definedness themselves.
    pub fn new_unchecked(
        source: FgAbelianGroup,
        target: FgAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} matrix for a map Z^{} → Z^{}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        Ok(AbMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        AbMorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.rank()),
        }
    }

    pub fn zero(source: &FgAbelianGroup, target: &FgAbelianGroup) -> Self {
        AbMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.rank(), source.rank()),
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// Image in normal form.
    pub fn apply_normal(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.target.normal_form(&self.apply(v))
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let cols = sparse_columns(&self.matrix);
        apply_columns(&cols, v)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &AbMorphism) -> Result<AbMorphism> {
        if self.target.rank() != other.source.rank() {
            return Err(Error::DimensionMismatch(
                "composition of incompatible maps".into(),
            ));
        }
        Ok(AbMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    /// Whether the map is zero on the quotients.
    pub fn is_zero(&self) -> bool {
        sparse_columns(&self.matrix)
            .iter()
            .all(|c| self.target.is_relation_sparse(c))
    }

    /// Whether two maps agree on the quotients.
    pub fn equals(&self, other: &AbMorphism) -> bool {
        self.source.rank() == other.source.rank()
            && self.target.rank() == other.target.rank()
            && sparse_columns(&self.matrix.sub(&other.matrix))
                .iter()
                .all(|c| self.target.is_relation_sparse(c))
    }

    /// `{x : f(x) ∈ relations of the target}`, a lattice containing the source relations.
    pub fn kernel_lattice(&self) -> Lattice {
        let basis = (0..self.source.rank()).map(SparseVec::unit).collect();
        let conds = self.target.membership_conditions(&self.matrix);
        Lattice::from_generators(self.source.rank(), refine(basis, conds))
    }

    /// `im(f) + relations of the target`.
    pub fn image_lattice(&self) -> Lattice {
        let mut gens = sparse_columns(&self.matrix);
        gens.extend(self.target.relation_columns());
        Lattice::from_generators(self.target.rank(), gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_lattice() == self.source.relation_lattice()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice() == Lattice::full(self.target.rank())
    }
}

pub(crate) fn apply_columns(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (j, x) in v.entries() {
        out.add_scaled(x, &cols[*j]);
    }
    out
}

/// Canonical solver for `f(x) ≡ y` modulo the target relations.
#[derive(Clone, Debug)]
pub struct Preimager {
    source_rank: usize,
    target_rank: usize,
    /// Pivot columns of the Hermite form of `[F | R]`, with transform coordinates appended.
    pivots: Vec<(usize, SparseVec)>,
    /// Kernel of `x ↦ f(x)` modulo relations, projected to the source coordinates.
    kernel: Vec<SparseVec>,
}

impl Preimager {
    pub fn new(f: &AbMorphism) -> Self {
        let (s, t) = (f.source.rank(), f.target.rank());
        let mut gens: Vec<SparseVec> = sparse_columns(&f.matrix)
            .into_iter()
            .enumerate()
            .map(|(j, mut c)| {
                c.add_scaled(&BigInt::one(), &SparseVec::unit(t + j));
                c
            })
            .collect();
        gens.extend(f.target.relation_columns());
        let ech = echelon(gens, t, true);
        let kernel = ech
            .tails
            .iter()
            .map(|c| c.restrict(t..t + s))
            .filter(|c| !c.is_zero())
            .collect();
        Preimager {
            source_rank: s,
            target_rank: t,
            pivots: ech.pivots,
            kernel,
        }
    }

    /// Canonical `x` with `f(x) ≡ y`, or `None` if `y` is not in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(y.len(), self.target_rank);
        let mut rest = SparseVec::from_dense(y);
        for (row, col) in &self.pivots {
            match rest.first() {
                Some((lead, _)) if *lead >= self.target_rank => break,
                Some((lead, _)) if lead < row => return None,
                None => break,
                _ => {}
            }
            let val = rest.get(*row);
            if val.is_zero() {
                continue;
            }
            let h = col.get(*row);
            if !(&val % &h).is_zero() {
                return None;
            }
            rest.add_scaled(&(-(&val / &h)), col);
        }
        if rest.first().map_or(false, |(i, _)| *i < self.target_rank) {
            return None;
        }
        // rest now holds -x in the transform coordinates
        let x = rest
            .restrict(self.target_rank..self.target_rank + self.source_rank)
            .neg();
        Some(x.to_dense(self.source_rank))
    }

    pub fn kernel_generators(&self) -> &[SparseVec] {
        &self.kernel
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::int_vec;

    #[test]
    fn preimage_modulo_relations() {
        // Z → Z/4, 1 ↦ 2
        let f = AbMorphism::new(
            FgAbelianGroup::free(1),
            FgAbelianGroup::cyclic(4),
            IntMatrix::from_i64_rows(&[vec![2]], 1),
        )
        .unwrap();
        let p = Preimager::new(&f);
        let x = p.preimage(&int_vec(&[6])).unwrap();
        assert!(f.target().equal_elements(&f.apply(&x), &int_vec(&[6])));
        assert!(p.preimage(&int_vec(&[1])).is_none());
        assert_eq!(p.kernel_generators().len(), 1);
    }

    #[test]
    fn injective_and_surjective() {
        let z2 = FgAbelianGroup::cyclic(2);
        let z4 = FgAbelianGroup::cyclic(4);
        let i = AbMorphism::new(
            z2.clone(),
            z4.clone(),
            IntMatrix::from_i64_rows(&[vec![2]], 1),
        )
        .unwrap();
        let p = AbMorphism::new(z4, z2, IntMatrix::from_i64_rows(&[vec![1]], 1)).unwrap();
        assert!(i.is_injective() && !i.is_surjective());
        assert!(p.is_surjective() && !p.is_injective());
        assert!(i.then(&p).unwrap().is_zero());
    }

    #[test]
    fn ill_defined_matrix_rejected() {
        let r = AbMorphism::new(
            FgAbelianGroup::cyclic(2),
            FgAbelianGroup::cyclic(3),
            IntMatrix::from_i64_rows(&[vec![1]], 1),
        );
        assert!(r.is_err());
    }
}

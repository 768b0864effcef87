use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::FgAbelianGroup;
use super::morphism::AbMorphism;
use crate::error::{Error, Result};
use crate::intlinalg::{refine, sparse_columns, IntMatrix, Lattice, SparseVec, Subquotient};

/// `ker / im` at one node of a complex of presented groups, with representatives
/// and a classifier taking cocycles to coordinates.
///
/// Coordinates follow the summands in order: torsion (ascending), then free.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    term: FgAbelianGroup,
    quotient: Subquotient,
}

impl CohomologyGroup {
    /// Cohomology at `term` given the incoming differential (into `term`) and the
    /// outgoing one (out of `term`, with its target group).
    pub fn compute(
        degree: usize,
        term: &FgAbelianGroup,
        incoming: Option<&IntMatrix>,
        outgoing: Option<(&IntMatrix, &FgAbelianGroup)>,
    ) -> Result<Self> {
        let r = term.rank();
        let cocycles = match outgoing {
            None => Lattice::full(r),
            Some((d, target)) => {
                if d.cols() != r || d.rows() != target.rank() {
                    return Err(Error::DimensionMismatch(format!(
                        "outgoing differential in degree {degree}"
                    )));
                }
                let basis = (0..r).map(SparseVec::unit).collect();
                Lattice::from_generators(r, refine(basis, target.membership_conditions(d)))
            }
        };
        let mut denominators = Vec::new();
        if let Some(d) = incoming {
            if d.rows() != r {
                return Err(Error::DimensionMismatch(format!(
                    "incoming differential in degree {degree}"
                )));
            }
            for (j, c) in sparse_columns(d).into_iter().enumerate() {
                if !cocycles.contains(&c) {
                    return Err(Error::MalformedComplex(format!(
                        "d∘d ≠ 0 in degree {degree} (on generator {j} of the previous term)"
                    )));
                }
                denominators.push(c);
            }
        }
        for c in term.relation_columns() {
            if !cocycles.contains(&c) {
                return Err(Error::MalformedComplex(format!(
                    "differential out of degree {degree} does not respect relations"
                )));
            }
            denominators.push(c);
        }
        let quotient = Subquotient::new(cocycles, &denominators)?;
        Ok(CohomologyGroup {
            degree,
            term: term.clone(),
            quotient,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The cochain group this cohomology is a subquotient of.
    pub fn term(&self) -> &FgAbelianGroup {
        &self.term
    }

    pub fn free_rank(&self) -> usize {
        self.quotient.free_rank()
    }

    pub fn torsion(&self) -> &[BigInt] {
        self.quotient.torsion()
    }

    pub fn structure(&self) -> (usize, Vec<BigInt>) {
        (self.free_rank(), self.torsion().to_vec())
    }

    pub fn ngens(&self) -> usize {
        self.quotient.ngens()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.is_trivial()
    }

    /// Order of the group, or `None` if it has a free part.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank() == 0).then(|| self.torsion().iter().product())
    }

    /// One cocycle per summand (torsion first, then free).
    pub fn representatives(&self) -> Vec<Vec<BigInt>> {
        let r = self.term.rank();
        self.quotient
            .representatives()
            .iter()
            .map(|v| v.to_dense(r))
            .collect()
    }

    pub fn representative(&self, t: usize) -> Vec<BigInt> {
        self.quotient.representatives()[t].to_dense(self.term.rank())
    }

    /// Cocycle lattice (kernel of the outgoing differential modulo relations).
    pub fn cocycles(&self) -> &Lattice {
        self.quotient.numerator()
    }

    pub fn is_cocycle(&self, v: &[BigInt]) -> bool {
        self.cocycles().contains_dense(v)
    }

    /// Coordinates of the class of `v`; errors when `v` is not a cocycle.
    pub fn classify(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.term.rank() {
            return Err(Error::DimensionMismatch(format!(
                "cochain of length {} in degree {} of rank {}",
                v.len(),
                self.degree,
                self.term.rank()
            )));
        }
        self.classify_sparse(&SparseVec::from_dense(v))
    }

    pub fn classify_sparse(&self, v: &SparseVec) -> Result<Vec<BigInt>> {
        self.quotient.classify(v).ok_or_else(|| {
            Error::NotACocycle(format!(
                "element is not a cocycle in degree {}",
                self.degree
            ))
        })
    }

    pub fn is_zero_class(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.classify(v)?.iter().all(Zero::is_zero))
    }

    /// A cocycle with the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.quotient.lift(coords).to_dense(self.term.rank())
    }

    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.quotient.normalize(coords)
    }

    /// The abstract group `⊕ Z/tᵢ ⊕ Z^f` in the coordinates used by [`CohomologyGroup::classify`].
    pub fn as_group(&self) -> FgAbelianGroup {
        let mut orders: Vec<BigInt> = self.torsion().to_vec();
        orders.extend((0..self.free_rank()).map(|_| BigInt::zero()));
        FgAbelianGroup::from_invariants(&orders)
    }

    /// Matrix of the map on cohomology induced by a cochain-level map `f` into `target`.
    pub fn induced(&self, f: &IntMatrix, target: &CohomologyGroup) -> Result<AbMorphism> {
        let cols = sparse_columns(f);
        let mut m = IntMatrix::zeros(target.ngens(), self.ngens());
        for (t, rep) in self.quotient.representatives().iter().enumerate() {
            let mut img = SparseVec::new();
            for (j, x) in rep.entries() {
                img.add_scaled(x, &cols[*j]);
            }
            let c = target.classify_sparse(&img)?;
            for (s, x) in c.into_iter().enumerate() {
                m[(s, t)] = x;
            }
        }
        AbMorphism::new(self.as_group(), target.as_group(), m)
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_structure(self.free_rank(), self.torsion()))
    }
}

/// `0`, `Z`, `Z^2 ⊕ Z/2`, … in a fixed textual form.
pub fn format_structure(free: usize, torsion: &[BigInt]) -> String {
    let mut parts: Vec<String> = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".into()),
        k => parts.push(format!("Z^{k}")),
    }
    for t in torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

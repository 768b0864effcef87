use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{smith_normal_form, Congruence, IntMatrix, Lattice, SparseRows, SparseVec};

/// Relations of one diagonal block of a presentation, with the data needed
/// for normal forms (Hermite basis) and membership tests (Smith rows).
#[derive(Debug)]
pub struct RelationBlock {
    rank: usize,
    relations: IntMatrix,
    hermite: Lattice,
    smith_u: Option<IntMatrix>,
    moduli: Vec<BigInt>,
    invariants: Vec<BigInt>,
}

impl RelationBlock {
    fn new(relations: IntMatrix) -> Self {
        let rank = relations.rows();
        let hermite = Lattice::from_matrix(&relations);
        let smith = smith_normal_form(&relations);
        let diag = smith.diagonal();
        let moduli: Vec<BigInt> = (0..rank)
            .map(|i| diag.get(i).cloned().unwrap_or_default())
            .collect();
        let smith_u = (smith.u != IntMatrix::identity(rank)).then_some(smith.u);
        let invariants = moduli.iter().filter(|d| !d.is_one()).cloned().collect();
        RelationBlock {
            rank,
            relations,
            hermite,
            smith_u,
            moduli,
            invariants,
        }
    }

    fn free(rank: usize) -> Self {
        Self::new(IntMatrix::zeros(rank, 0))
    }
}

impl PartialEq for RelationBlock {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.hermite == other.hermite
    }
}

/// A finitely generated abelian group `Z^rank / im(relations)`.
///
/// The relation matrix is block diagonal; blocks are shared, so direct sums
/// and powers of a fixed group are cheap to build and to test against.
#[derive(Clone)]
pub struct FgAbelianGroup {
    rank: usize,
    blocks: Arc<Vec<(usize, Arc<RelationBlock>)>>,
}

impl PartialEq for FgAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        if self.rank != other.rank || self.blocks.len() != other.blocks.len() {
            return self.rank == other.rank && self.relation_lattice() == other.relation_lattice();
        }
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|((o1, b1), (o2, b2))| o1 == o2 && (Arc::ptr_eq(b1, b2) || b1 == b2))
    }
}

impl Eq for FgAbelianGroup {}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (free, torsion) = self.structure();
        write!(f, "FgAbelianGroup(rank {}, ≅ Z^{}", self.rank, free)?;
        for t in torsion {
            write!(f, " ⊕ Z/{t}")?;
        }
        write!(f, ")")
    }
}

impl FgAbelianGroup {
    /// `Z^rank / im(relations)`; `relations` must have `rank` rows.
    pub fn new(rank: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != rank {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows for rank {}",
                relations.rows(),
                rank
            )));
        }
        Ok(Self::from_block(Arc::new(RelationBlock::new(relations))))
    }

    fn from_block(block: Arc<RelationBlock>) -> Self {
        let rank = block.rank;
        let blocks = if rank == 0 { vec![] } else { vec![(0, block)] };
        FgAbelianGroup {
            rank,
            blocks: Arc::new(blocks),
        }
    }

    pub fn zero() -> Self {
        FgAbelianGroup {
            rank: 0,
            blocks: Arc::new(vec![]),
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_block(Arc::new(RelationBlock::free(rank)))
    }

    /// `Z/m`; `m = 0` gives `Z`.
    pub fn cyclic(m: u64) -> Self {
        let rel = if m == 0 {
            IntMatrix::zeros(1, 0)
        } else {
            IntMatrix::from_i64_rows(&[vec![m as i64]], 1)
        };
        Self::from_block(Arc::new(RelationBlock::new(rel)))
    }

    /// `⊕ Z/dᵢ` as a single block with diagonal relations (`dᵢ = 0` gives `Z`).
    pub fn from_invariants(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let nonzero: Vec<usize> = (0..n).filter(|&i| !orders[i].is_zero()).collect();
        let mut rel = IntMatrix::zeros(n, nonzero.len());
        for (j, &i) in nonzero.iter().enumerate() {
            rel[(i, j)] = orders[i].clone();
        }
        Self::from_block(Arc::new(RelationBlock::new(rel)))
    }

    pub fn direct_sum(groups: &[&FgAbelianGroup]) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for g in groups {
            for (o, b) in g.blocks.iter() {
                blocks.push((offset + o, b.clone()));
            }
            offset += g.rank;
        }
        FgAbelianGroup {
            rank: offset,
            blocks: Arc::new(blocks),
        }
    }

    /// `self^k`, the direct sum of `k` copies.
    pub fn power(&self, k: usize) -> Self {
        let mut blocks = Vec::with_capacity(self.blocks.len() * k);
        for c in 0..k {
            for (o, b) in self.blocks.iter() {
                blocks.push((c * self.rank + o, b.clone()));
            }
        }
        FgAbelianGroup {
            rank: self.rank * k,
            blocks: Arc::new(blocks),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The full relation matrix (block diagonal).
    pub fn relations(&self) -> IntMatrix {
        let cols: usize = self.blocks.iter().map(|(_, b)| b.relations.cols()).sum();
        let mut m = IntMatrix::zeros(self.rank, cols);
        let mut c0 = 0;
        for (o, b) in self.blocks.iter() {
            m.set_block(*o, c0, &b.relations);
            c0 += b.relations.cols();
        }
        m
    }

    /// A basis of the relation lattice (Hermite columns of every block).
    pub fn relation_columns(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for (o, b) in self.blocks.iter() {
            for c in b.hermite.basis() {
                out.push(c.shifted(*o));
            }
        }
        out
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_generators(self.rank, self.relation_columns())
    }

    pub fn has_relations(&self) -> bool {
        self.blocks.iter().any(|(_, b)| b.hermite.rank() > 0)
    }

    /// Conditions on `x` expressing `M·x ∈ relations`, where `M` has `rank` rows.
    pub fn membership_conditions(&self, m: &IntMatrix) -> Vec<Congruence> {
        assert_eq!(m.rows(), self.rank, "map target rank mismatch");
        let rows = SparseRows::from_matrix(m);
        self.membership_conditions_rows(&rows.rows)
    }

    pub fn membership_conditions_rows(&self, rows: &[SparseVec]) -> Vec<Congruence> {
        let mut out = Vec::with_capacity(self.rank);
        let mut covered = vec![false; self.rank];
        for (o, b) in self.blocks.iter() {
            for i in 0..b.rank {
                covered[o + i] = true;
                if b.moduli[i].is_one() {
                    continue;
                }
                let row = match &b.smith_u {
                    None => rows[o + i].clone(),
                    Some(u) => {
                        let mut acc = SparseVec::new();
                        for l in 0..b.rank {
                            acc.add_scaled(&u[(i, l)], &rows[o + l]);
                        }
                        acc
                    }
                };
                out.push(Congruence {
                    row,
                    modulus: b.moduli[i].clone(),
                });
            }
        }
        for (i, c) in covered.iter().enumerate() {
            if !c {
                out.push(Congruence {
                    row: rows[i].clone(),
                    modulus: BigInt::zero(),
                });
            }
        }
        out
    }

    fn check_len(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in a group of rank {}",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// Whether `v` lies in the relation lattice (represents zero).
    pub fn is_relation(&self, v: &[BigInt]) -> bool {
        debug_assert_eq!(v.len(), self.rank);
        self.is_relation_sparse(&SparseVec::from_dense(v))
    }

    pub fn is_relation_sparse(&self, v: &SparseVec) -> bool {
        let mut covered = vec![false; self.rank];
        for (o, b) in self.blocks.iter() {
            let part = v.restrict(*o..o + b.rank);
            for i in 0..b.rank {
                covered[o + i] = true;
            }
            if part.is_zero() {
                continue;
            }
            if !b.hermite.contains(&part) {
                return false;
            }
        }
        v.entries().iter().all(|(i, _)| covered[*i])
    }

    pub fn equal_elements(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let d: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_relation(&d)
    }

    /// Canonical representative: residue after Hermite reduction against each block.
    pub fn normal_form(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for (o, b) in self.blocks.iter() {
            if b.hermite.rank() == 0 {
                continue;
            }
            let part = SparseVec::from_dense(&v[*o..o + b.rank]);
            let red = b.hermite.reduce(&part).to_dense(b.rank);
            out[*o..o + b.rank].clone_from_slice(&red);
        }
        out
    }

    pub fn try_normal_form(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.check_len(v)?;
        Ok(self.normal_form(v))
    }

    /// Free rank and invariant factors (each > 1), in divisibility order.
    pub fn structure(&self) -> (usize, Vec<BigInt>) {
        let mut free = self.rank;
        let mut factors = Vec::new();
        for (_, b) in self.blocks.iter() {
            free -= b.moduli.iter().filter(|d| !d.is_zero()).count();
            factors.extend(b.invariants.iter().filter(|d| !d.is_zero()).cloned());
        }
        (free, invariant_factor_form(&factors))
    }

    pub fn order(&self) -> Option<BigInt> {
        let (free, torsion) = self.structure();
        (free == 0).then(|| torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        let (free, torsion) = self.structure();
        free == 0 && torsion.is_empty()
    }

    /// Per-coordinate residue bounds when the group is finite: the element set
    /// is the box `∏ [0, hᵢ)` over Hermite pivots (all coordinates are pivots).
    fn box_bounds(&self) -> Option<Vec<BigInt>> {
        let mut bounds = vec![BigInt::zero(); self.rank];
        let mut seen = vec![false; self.rank];
        for (o, b) in self.blocks.iter() {
            if b.hermite.rank() != b.rank {
                return None;
            }
            for (j, &p) in b.hermite.pivot_rows().iter().enumerate() {
                bounds[o + p] = b.hermite.basis()[j].get(p);
                seen[o + p] = true;
            }
        }
        seen.iter().all(|&s| s).then_some(bounds)
    }

    /// All elements in normal form, in mixed-radix order (last coordinate fastest).
    /// Returns `None` for infinite groups or when the order exceeds `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let bounds: Vec<usize> = self
            .box_bounds()?
            .iter()
            .map(|b| b.to_usize())
            .collect::<Option<Vec<_>>>()?;
        let mut total: usize = 1;
        for b in &bounds {
            total = total.checked_mul(*b)?;
            if total > limit {
                return None;
            }
        }
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            out.push(decode_mixed(idx, &bounds));
        }
        Some(out)
    }

    /// Index of an element in the order of [`FgAbelianGroup::elements`].
    pub fn element_index(&self, v: &[BigInt]) -> Option<usize> {
        let nf = self.normal_form(v);
        let bounds = self.box_bounds()?;
        let mut idx: usize = 0;
        for (x, b) in nf.iter().zip(&bounds) {
            idx = idx * b.to_usize()? + x.to_usize()?;
        }
        Some(idx)
    }
}

fn decode_mixed(mut idx: usize, bounds: &[usize]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); bounds.len()];
    for i in (0..bounds.len()).rev() {
        v[i] = BigInt::from(idx % bounds[i]);
        idx /= bounds[i];
    }
    v
}

/// Rewrites a list of cyclic orders (all > 0) as an invariant factor chain,
/// dropping trivial factors.
pub fn invariant_factor_form(orders: &[BigInt]) -> Vec<BigInt> {
    let small: Option<Vec<u64>> = orders.iter().map(|o| o.to_u64()).collect();
    match small {
        Some(v) => {
            let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
            for mut n in v {
                let mut p = 2;
                while p * p <= n {
                    if n % p == 0 {
                        let mut q = 1;
                        while n % p == 0 {
                            n /= p;
                            q *= p;
                        }
                        by_prime.entry(p).or_default().push(q);
                    }
                    p += 1;
                }
                if n > 1 {
                    by_prime.entry(n).or_default().push(n);
                }
            }
            let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
            let mut out = vec![BigInt::one(); len];
            for powers in by_prime.values_mut() {
                powers.sort_unstable_by(|a, b| b.cmp(a));
                for (i, q) in powers.iter().enumerate() {
                    out[i] *= BigInt::from(*q);
                }
            }
            out.reverse();
            out
        }
        None => {
            let n = orders.len();
            let m = IntMatrix::diagonal(n, n, orders);
            smith_normal_form(&m)
                .diagonal()
                .into_iter()
                .filter(|d| !d.is_one())
                .map(|d| d.abs())
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::int_vec;
    use num_integer::Integer;

    #[test]
    fn structure_of_direct_sums() {
        let z2 = FgAbelianGroup::cyclic(2);
        let z3 = FgAbelianGroup::cyclic(3);
        let z = FgAbelianGroup::free(1);
        let g = FgAbelianGroup::direct_sum(&[&z2, &z3, &z, &z2]);
        assert_eq!(g.structure(), (1, int_vec(&[2, 6])));
        assert_eq!(z2.power(3).structure(), (0, int_vec(&[2, 2, 2])));
    }

    #[test]
    fn invariant_factor_chain() {
        assert_eq!(
            invariant_factor_form(&int_vec(&[4, 6, 1])),
            int_vec(&[2, 12])
        );
        assert_eq!(invariant_factor_form(&int_vec(&[2, 3])), int_vec(&[6]));
    }

    #[test]
    fn normal_forms_and_membership() {
        let g =
            FgAbelianGroup::new(2, IntMatrix::from_i64_rows(&[vec![2, 0], vec![1, 3]], 0)).unwrap();
        assert_eq!(g.order(), Some(BigInt::from(6)));
        let a = int_vec(&[5, 7]);
        let nf = g.normal_form(&a);
        assert!(g.equal_elements(&a, &nf));
        assert_eq!(g.normal_form(&nf), nf);
        assert!(g.is_relation(&int_vec(&[2, 1])));
        assert!(!g.is_relation(&int_vec(&[1, 0])));
        let elems = g.elements(100).unwrap();
        assert_eq!(elems.len(), 6);
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(g.element_index(e), Some(i));
        }
    }

    #[test]
    fn membership_conditions_match_relation_test() {
        let g =
            FgAbelianGroup::new(2, IntMatrix::from_i64_rows(&[vec![2, 4], vec![6, 8]], 0)).unwrap();
        let id = IntMatrix::identity(2);
        let conds = g.membership_conditions(&id);
        for a in -5i64..5 {
            for b in -5i64..5 {
                let v = SparseVec::from_dense(&int_vec(&[a, b]));
                let ok = conds.iter().all(|c| {
                    let d = c.row.dot(&v);
                    if c.modulus.is_zero() {
                        d.is_zero()
                    } else {
                        d.mod_floor(&c.modulus).is_zero()
                    }
                });
                assert_eq!(ok, g.is_relation_sparse(&v));
            }
        }
    }
}

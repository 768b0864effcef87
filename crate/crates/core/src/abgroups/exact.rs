use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cohomology::CohomologyGroup;
use super::complex::AbCochainComplex;
use super::group::FgAbelianGroup;
use super::morphism::{AbMorphism, Preimager};
use crate::error::{Error, Result};
use crate::intlinalg::{sparse_columns, IntMatrix};

/// How the snake lemma picks set-theoretic preimages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreimagePolicy {
    /// Hermite back-substitution; fully deterministic.
    Canonical,
    /// Canonical preimage plus the image of a pseudo-random element of the
    /// kernel term, drawn from a seeded generator.
    Randomized { seed: u64 },
}

/// Solver for `f(x) ≡ y`, either on the whole matrix or on repeated diagonal blocks.
#[derive(Clone, Debug)]
enum Lifter {
    Generic(Preimager),
    Blocked {
        block: Preimager,
        source: usize,
        target: usize,
        count: usize,
    },
}

impl Lifter {
    fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        match self {
            Lifter::Generic(p) => p.preimage(y),
            Lifter::Blocked {
                block,
                source,
                target,
                count,
            } => {
                let mut out = Vec::with_capacity(source * count);
                for k in 0..*count {
                    let part = &y[k * target..(k + 1) * target];
                    if part.iter().all(Zero::is_zero) {
                        out.extend((0..*source).map(|_| BigInt::zero()));
                    } else {
                        out.extend(block.preimage(part)?);
                    }
                }
                Some(out)
            }
        }
    }
}

/// Degreewise maps `0 → A → B → C → 0` of cochain complexes.
#[derive(Debug)]
pub struct SesOfComplexes {
    a: AbCochainComplex,
    b: AbCochainComplex,
    c: AbCochainComplex,
    inclusions: Vec<IntMatrix>,
    projections: Vec<IntMatrix>,
    blocks: Option<(AbMorphism, AbMorphism)>,
    lift_p: Vec<OnceLock<Lifter>>,
    lift_i: Vec<OnceLock<Lifter>>,
}

impl SesOfComplexes {
    /// Checks dimensions and that both families are chain maps. Exactness is
    /// checked separately by [`SesOfComplexes::validate`].
    pub fn new(
        a: AbCochainComplex,
        b: AbCochainComplex,
        c: AbCochainComplex,
        inclusions: Vec<IntMatrix>,
        projections: Vec<IntMatrix>,
    ) -> Result<Self> {
        let len = b.len();
        if a.len() != len || c.len() != len || inclusions.len() != len || projections.len() != len {
            return Err(Error::DimensionMismatch(
                "short exact sequence needs equal lengths".into(),
            ));
        }
        for n in 0..len {
            let (i, p) = (&inclusions[n], &projections[n]);
            if i.cols() != a.term(n).rank() || i.rows() != b.term(n).rank() {
                return Err(Error::DimensionMismatch(format!("inclusion in degree {n}")));
            }
            if p.cols() != b.term(n).rank() || p.rows() != c.term(n).rank() {
                return Err(Error::DimensionMismatch(format!(
                    "projection in degree {n}"
                )));
            }
        }
        for n in 0..len.saturating_sub(1) {
            chain_map_check(&a, &b, &inclusions, n, "inclusion")?;
            chain_map_check(&b, &c, &projections, n, "projection")?;
        }
        Ok(SesOfComplexes {
            a,
            b,
            c,
            inclusions,
            projections,
            blocks: None,
            lift_p: (0..len).map(|_| OnceLock::new()).collect(),
            lift_i: (0..len).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Declares that in every degree the maps are `I_k ⊗ i0` and `I_k ⊗ p0`, with
    /// the terms being `k` copies of the corresponding base groups. Preimages are
    /// then solved block by block.
    pub fn with_block_structure(mut self, i0: AbMorphism, p0: AbMorphism) -> Result<Self> {
        for n in 0..self.b.len() {
            let rb = self.b.term(n).rank();
            let k = if i0.target().rank() == 0 {
                0
            } else {
                rb / i0.target().rank()
            };
            if k * i0.target().rank() != rb
                || k * i0.source().rank() != self.a.term(n).rank()
                || k * p0.target().rank() != self.c.term(n).rank()
            {
                return Err(Error::DimensionMismatch(format!(
                    "degree {n} is not a block repetition"
                )));
            }
        }
        self.blocks = Some((i0, p0));
        Ok(self)
    }

    pub fn a(&self) -> &AbCochainComplex {
        &self.a
    }

    pub fn b(&self) -> &AbCochainComplex {
        &self.b
    }

    pub fn c(&self) -> &AbCochainComplex {
        &self.c
    }

    pub fn inclusion(&self, n: usize) -> &IntMatrix {
        &self.inclusions[n]
    }

    pub fn projection(&self, n: usize) -> &IntMatrix {
        &self.projections[n]
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Degreewise exactness: `i` injective, `p` surjective, `ker p = im i` modulo relations.
    pub fn validate(&self) -> Result<()> {
        for n in 0..self.len() {
            let i = AbMorphism::new_unchecked(
                self.a.term(n),
                self.b.term(n),
                self.inclusions[n].clone(),
            )?;
            let p = AbMorphism::new_unchecked(
                self.b.term(n),
                self.c.term(n),
                self.projections[n].clone(),
            )?;
            if !i.is_injective() {
                return Err(Error::NotExact(format!(
                    "inclusion not injective in degree {n}"
                )));
            }
            if !p.is_surjective() {
                return Err(Error::NotExact(format!(
                    "projection not surjective in degree {n}"
                )));
            }
            if p.kernel_lattice() != i.image_lattice() {
                return Err(Error::NotExact(format!("ker p ≠ im i in degree {n}")));
            }
        }
        Ok(())
    }

    fn lifter(&self, which: Which, n: usize) -> &Lifter {
        let (cells, m) = match which {
            Which::Projection => (&self.lift_p, &self.projections[n]),
            Which::Inclusion => (&self.lift_i, &self.inclusions[n]),
        };
        cells[n].get_or_init(|| {
            if let Some((i0, p0)) = &self.blocks {
                let base = match which {
                    Which::Projection => p0,
                    Which::Inclusion => i0,
                };
                let count = match i0.target().rank() {
                    0 => 0,
                    r => self.b.term(n).rank() / r,
                };
                return Lifter::Blocked {
                    block: Preimager::new(base),
                    source: base.source().rank(),
                    target: base.target().rank(),
                    count,
                };
            }
            let (src, tgt) = match which {
                Which::Projection => (self.b.term(n), self.c.term(n)),
                Which::Inclusion => (self.a.term(n), self.b.term(n)),
            };
            let f = AbMorphism::new_unchecked(src, tgt, m.clone())
                .expect("dimensions checked at construction");
            Lifter::Generic(Preimager::new(&f))
        })
    }

    /// Some `b ∈ B^n` with `p(b) ≡ z`.
    pub fn lift(&self, n: usize, z: &[BigInt], policy: PreimagePolicy) -> Result<Vec<BigInt>> {
        let mut b = self
            .lifter(Which::Projection, n)
            .preimage(z)
            .ok_or_else(|| {
                Error::NotExact(format!(
                    "projection not surjective onto a degree-{n} element"
                ))
            })?;
        if let PreimagePolicy::Randomized { seed } = policy {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let a: Vec<BigInt> = (0..self.a.term(n).rank())
                .map(|_| BigInt::from(rng.gen_range(-3i64..=3)))
                .collect();
            for (x, y) in b.iter_mut().zip(self.inclusions[n].mul_vec(&a)) {
                *x += y;
            }
        }
        Ok(b)
    }

    /// The unique (modulo relations) `a ∈ A^n` with `i(a) ≡ y`.
    pub fn pull_back(&self, n: usize, y: &[BigInt]) -> Result<Vec<BigInt>> {
        self.lifter(Which::Inclusion, n).preimage(y).ok_or_else(|| {
            Error::NotExact(format!("element of B^{n} is not in the image of A^{n}"))
        })
    }

    /// Snake lemma on one cocycle `z ∈ C^n`: an `(n+1)`-cocycle of `A`.
    pub fn connecting_cocycle(
        &self,
        n: usize,
        z: &[BigInt],
        policy: PreimagePolicy,
    ) -> Result<Vec<BigInt>> {
        if n + 1 >= self.len() {
            return Ok(vec![BigInt::zero(); self.a.term(n + 1).rank()]);
        }
        let b = self.lift(n, z, policy)?;
        let db = self.b.apply_differential(n, &b);
        self.pull_back(n + 1, &db)
    }

    /// `δ : H^n(C) → H^{n+1}(A)` between the given cohomology groups.
    pub fn connecting_between(
        &self,
        n: usize,
        hc: &CohomologyGroup,
        ha: &CohomologyGroup,
        policy: PreimagePolicy,
    ) -> Result<AbMorphism> {
        let mut m = IntMatrix::zeros(ha.ngens(), hc.ngens());
        for (t, z) in hc.representatives().iter().enumerate() {
            let a = self.connecting_cocycle(n, z, policy)?;
            let coords = ha.classify(&a).map_err(|_| {
                Error::NotExact(format!(
                    "connecting image of generator {t} in degree {n} is not a cocycle"
                ))
            })?;
            for (s, x) in coords.into_iter().enumerate() {
                m[(s, t)] = x;
            }
        }
        AbMorphism::new(hc.as_group(), ha.as_group(), m)
    }

    pub fn connecting_homomorphism(&self, n: usize, policy: PreimagePolicy) -> Result<AbMorphism> {
        let hc = self.c.cohomology_at(n)?;
        let ha = self.a.cohomology_at(n + 1)?;
        self.connecting_between(n, &hc, &ha, policy)
    }

    /// `H^0(A) → H^0(B) → H^0(C) → H^1(A) → … → H^{n_max}(C) → H^{n_max+1}(A)`.
    ///
    /// Cohomology in a degree is only meaningful when the complexes extend one
    /// degree past it, so callers should supply at least `n_max + 3` terms for
    /// truncated complexes.
    pub fn long_exact_sequence(
        &self,
        n_max: usize,
        policy: PreimagePolicy,
    ) -> Result<LongExactSequence> {
        let mut nodes = Vec::new();
        let mut maps = Vec::new();
        let mut ha = self.a.cohomology_at(0)?;
        for n in 0..=n_max {
            let hb = self.b.cohomology_at(n)?;
            let hc = self.c.cohomology_at(n)?;
            let ha_next = self.a.cohomology_at(n + 1)?;
            let i_star = ha.induced(&self.map_or_zero(Which::Inclusion, n), &hb)?;
            let p_star = hb.induced(&self.map_or_zero(Which::Projection, n), &hc)?;
            let delta = self.connecting_between(n, &hc, &ha_next, policy)?;
            nodes.push(LesNode::new("A", n, &ha));
            nodes.push(LesNode::new("B", n, &hb));
            nodes.push(LesNode::new("C", n, &hc));
            maps.push(i_star);
            maps.push(p_star);
            maps.push(delta);
            ha = ha_next;
        }
        nodes.push(LesNode::new("A", n_max + 1, &ha));
        Ok(LongExactSequence { nodes, maps })
    }

    fn map_or_zero(&self, which: Which, n: usize) -> IntMatrix {
        let list = match which {
            Which::Inclusion => &self.inclusions,
            Which::Projection => &self.projections,
        };
        list.get(n).cloned().unwrap_or_else(|| match which {
            Which::Inclusion => IntMatrix::zeros(self.b.term(n).rank(), self.a.term(n).rank()),
            Which::Projection => IntMatrix::zeros(self.c.term(n).rank(), self.b.term(n).rank()),
        })
    }
}

#[derive(Clone, Copy)]
enum Which {
    Inclusion,
    Projection,
}

fn chain_map_check(
    src: &AbCochainComplex,
    tgt: &AbCochainComplex,
    maps: &[IntMatrix],
    n: usize,
    name: &str,
) -> Result<()> {
    let lhs = tgt.differential(n).mul(&maps[n]);
    let rhs = maps[n + 1].mul(&src.differential(n));
    let target = tgt.term(n + 1);
    for (j, col) in sparse_columns(&lhs.sub(&rhs)).iter().enumerate() {
        if !target.is_relation_sparse(col) {
            return Err(Error::MalformedComplex(format!(
                "{name} does not commute with the differential in degree {n} (generator {j})"
            )));
        }
    }
    Ok(())
}

/// One group of a long exact sequence, in its cohomology coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub complex: String,
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl LesNode {
    fn new(complex: &str, degree: usize, h: &CohomologyGroup) -> Self {
        LesNode {
            complex: complex.into(),
            degree,
            free_rank: h.free_rank(),
            torsion: h.torsion().to_vec(),
        }
    }
}

impl fmt::Display for LesNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H^{}({}) = {}",
            self.degree,
            self.complex,
            super::cohomology::format_structure(self.free_rank, &self.torsion)
        )
    }
}

/// Alternating groups and maps; `maps[k]` goes from node `k` to node `k + 1`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub nodes: Vec<LesNode>,
    pub maps: Vec<AbMorphism>,
}

impl LongExactSequence {
    pub fn verify(&self) -> ExactnessReport {
        verify_exactness(&self.maps)
    }

    /// Corrupts a single matrix entry (used to exercise the checker).
    pub fn with_corrupted_entry(
        &self,
        map: usize,
        row: usize,
        col: usize,
        delta: i64,
    ) -> LongExactSequence {
        let mut out = self.clone();
        let f = &out.maps[map];
        let mut m = f.matrix().clone();
        m[(row, col)] += BigInt::from(delta);
        out.maps[map] = AbMorphism::new_unchecked(f.source().clone(), f.target().clone(), m)
            .expect("same dimensions as before");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// In the kernel of the outgoing map but not in the image of the incoming one.
    KernelNotImage,
    /// In the image of the incoming map but not killed by the outgoing one.
    ImageNotKernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeExactness {
    /// Index of the group in the sequence (the target of `maps[node - 1]`).
    pub node: usize,
    pub exact: bool,
    pub witness: Option<(WitnessKind, Vec<BigInt>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeExactness>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    pub fn first_failure(&self) -> Option<&NodeExactness> {
        self.nodes.iter().find(|n| !n.exact)
    }
}

/// Checks `ker(maps[k]) = im(maps[k-1])` at the source of every map; the source
/// of `maps[0]` is checked against the zero incoming map.
pub fn verify_exactness(maps: &[AbMorphism]) -> ExactnessReport {
    let mut nodes = Vec::new();
    for (k, out) in maps.iter().enumerate() {
        let kernel = out.kernel_lattice();
        let image = match k.checked_sub(1) {
            Some(prev) => maps[prev].image_lattice(),
            None => out.source().relation_lattice(),
        };
        let witness = kernel
            .basis()
            .iter()
            .find(|v| !image.contains(v))
            .map(|v| (WitnessKind::KernelNotImage, v.to_dense(kernel.ambient())))
            .or_else(|| {
                image
                    .basis()
                    .iter()
                    .find(|v| !kernel.contains(v))
                    .map(|v| (WitnessKind::ImageNotKernel, v.to_dense(image.ambient())))
            });
        nodes.push(NodeExactness {
            node: k,
            exact: witness.is_none(),
            witness,
        });
    }
    ExactnessReport { nodes }
}

/// Builds the sequence `maps` for a plain list of morphisms (for external callers).
pub fn sequence_of(groups: &[FgAbelianGroup], matrices: &[IntMatrix]) -> Result<Vec<AbMorphism>> {
    if groups.len() != matrices.len() + 1 {
        return Err(Error::DimensionMismatch(
            "need one more group than maps".into(),
        ));
    }
    matrices
        .iter()
        .enumerate()
        .map(|(k, m)| AbMorphism::new(groups[k].clone(), groups[k + 1].clone(), m.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::int_vec;

    #[test]
    fn split_sequence_has_zero_connecting_maps() {
        // (Z --2--> Z) ⊕ (Z --2--> Z) with the obvious inclusion and projection.
        let z = FgAbelianGroup::free(1);
        let z2 = FgAbelianGroup::free(2);
        let two = IntMatrix::from_i64_rows(&[vec![2]], 1);
        let a = AbCochainComplex::new(vec![z.clone(), z.clone()], vec![two.clone()]).unwrap();
        let c = a.clone();
        let b = AbCochainComplex::new(
            vec![z2.clone(), z2.clone()],
            vec![IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]], 2)],
        )
        .unwrap();
        let i = IntMatrix::from_i64_rows(&[vec![1], vec![0]], 1);
        let p = IntMatrix::from_i64_rows(&[vec![0, 1]], 2);
        let s = SesOfComplexes::new(a, b, c, vec![i.clone(), i], vec![p.clone(), p]).unwrap();
        s.validate().unwrap();
        assert!(s
            .connecting_homomorphism(0, PreimagePolicy::Canonical)
            .unwrap()
            .is_zero());
        let les = s.long_exact_sequence(1, PreimagePolicy::Canonical).unwrap();
        assert!(les.verify().all_exact());
    }

    #[test]
    fn acyclic_sequence_is_policy_independent() {
        // Z --1--> Z  ⊂  Z --1--> Z  ↠  Z/2 --1--> Z/2, included by ×2.
        let z = FgAbelianGroup::free(1);
        let a = AbCochainComplex::new(vec![z.clone(), z.clone()], vec![IntMatrix::identity(1)])
            .unwrap();
        let b = AbCochainComplex::new(vec![z.clone(), z.clone()], vec![IntMatrix::identity(1)])
            .unwrap();
        let c = AbCochainComplex::new(
            vec![FgAbelianGroup::cyclic(2), FgAbelianGroup::cyclic(2)],
            vec![IntMatrix::identity(1)],
        )
        .unwrap();
        let two = IntMatrix::from_i64_rows(&[vec![2]], 1);
        let one = IntMatrix::identity(1);
        let s =
            SesOfComplexes::new(a, b, c, vec![two.clone(), two], vec![one.clone(), one]).unwrap();
        s.validate().unwrap();
        let les = s.long_exact_sequence(1, PreimagePolicy::Canonical).unwrap();
        assert!(les.verify().all_exact());
        let r1 = s
            .connecting_homomorphism(0, PreimagePolicy::Randomized { seed: 7 })
            .unwrap();
        let r0 = s
            .connecting_homomorphism(0, PreimagePolicy::Canonical)
            .unwrap();
        assert!(r0.equals(&r1));
    }

    #[test]
    fn corrupted_map_gives_witness() {
        let groups = vec![
            FgAbelianGroup::free(1),
            FgAbelianGroup::free(1),
            FgAbelianGroup::cyclic(2),
        ];
        let mats = vec![
            IntMatrix::from_i64_rows(&[vec![2]], 1),
            IntMatrix::identity(1),
        ];
        let seq = sequence_of(&groups, &mats).unwrap();
        assert!(verify_exactness(&seq).all_exact());
        let bad = sequence_of(&groups, &[mats[0].clone(), IntMatrix::zeros(1, 1)]).unwrap();
        let report = verify_exactness(&bad);
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.node, 1);
        assert_eq!(
            fail.witness,
            Some((WitnessKind::KernelNotImage, int_vec(&[1])))
        );
    }

    #[test]
    fn zero_sequence_is_exact() {
        let z = FgAbelianGroup::zero();
        let seq = vec![AbMorphism::zero(&z, &z); 3];
        assert!(verify_exactness(&seq).all_exact());
    }
}

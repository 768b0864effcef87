use num_bigint::BigInt;
use num_traits::One;

use super::group::FiniteGroup;
use crate::abgroups::{AbMorphism, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::intlinalg::{refine, sparse_columns, IntMatrix, Lattice, SparseVec};

/// A finitely generated abelian group with a left action of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: FiniteGroup,
    underlying: FgAbelianGroup,
    action: Vec<IntMatrix>,
}

impl GModule {
    /// Checks that each matrix preserves relations, that the identity acts
    /// trivially and that `ρ(g)ρ(h) ≡ ρ(gh)` modulo relations.
    pub fn new(
        group: &FiniteGroup,
        underlying: FgAbelianGroup,
        action: Vec<IntMatrix>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(group, underlying, action)?;
        m.check()?;
        Ok(m)
    }

    pub fn new_unchecked(
        group: &FiniteGroup,
        underlying: FgAbelianGroup,
        action: Vec<IntMatrix>,
    ) -> Result<Self> {
        let r = underlying.rank();
        if action.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        if let Some(g) = action.iter().position(|a| a.rows() != r || a.cols() != r) {
            return Err(Error::DimensionMismatch(format!(
                "action matrix of element {g} is not {r}×{r}"
            )));
        }
        Ok(GModule {
            group: group.clone(),
            underlying,
            action,
        })
    }

    fn check(&self) -> Result<()> {
        let a = &self.underlying;
        let eq = |x: &IntMatrix, y: &IntMatrix| {
            sparse_columns(&x.sub(y))
                .iter()
                .all(|c| a.is_relation_sparse(c))
        };
        for (g, m) in self.action.iter().enumerate() {
            if AbMorphism::new(a.clone(), a.clone(), m.clone()).is_err() {
                return Err(Error::InvalidModule(format!(
                    "action of element {g} does not preserve relations"
                )));
            }
        }
        if !eq(&self.action[0], &IntMatrix::identity(a.rank())) {
            return Err(Error::InvalidModule(
                "identity does not act trivially".into(),
            ));
        }
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                if !eq(
                    &self.action[g].mul(&self.action[h]),
                    &self.action[self.group.mul(g, h)],
                ) {
                    return Err(Error::InvalidModule(format!("ρ({g})ρ({h}) ≠ ρ({g}·{h})")));
                }
            }
        }
        Ok(())
    }

    /// `A` with every element acting as the identity.
    pub fn trivial(group: &FiniteGroup, underlying: FgAbelianGroup) -> Self {
        let r = underlying.rank();
        GModule {
            group: group.clone(),
            underlying,
            action: vec![IntMatrix::identity(r); group.order()],
        }
    }

    /// The action through a homomorphism `G → {±1}` given by a sign per element.
    pub fn signed(group: &FiniteGroup, underlying: FgAbelianGroup, signs: &[i64]) -> Result<Self> {
        let r = underlying.rank();
        let action = signs
            .iter()
            .map(|&s| IntMatrix::identity(r).scale(&BigInt::from(s)))
            .collect();
        Self::new(group, underlying, action)
    }

    /// The action of a cyclic group `Z/m` generated by a single matrix `t`
    /// (element `k` acts by `tᵏ`).
    pub fn cyclic_action(
        group: &FiniteGroup,
        underlying: FgAbelianGroup,
        t: &IntMatrix,
    ) -> Result<Self> {
        let mut action = vec![IntMatrix::identity(underlying.rank())];
        for k in 1..group.order() {
            action.push(action[k - 1].mul(t));
        }
        Self::new(group, underlying, action)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn underlying(&self) -> &FgAbelianGroup {
        &self.underlying
    }

    pub fn rank(&self) -> usize {
        self.underlying.rank()
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn act(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        if g == 0 {
            return v.to_vec();
        }
        self.action[g].mul_vec(v)
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = IntMatrix::identity(self.rank());
        self.action.iter().all(|m| {
            sparse_columns(&m.sub(&id))
                .iter()
                .all(|c| self.underlying.is_relation_sparse(c))
        })
    }

    /// `{v : ρ(g)v − v ∈ relations for all g}` as a sublattice of the generators.
    pub fn invariant_lattice(&self) -> Lattice {
        let r = self.rank();
        let id = IntMatrix::identity(r);
        let mut basis: Vec<SparseVec> = (0..r).map(SparseVec::unit).collect();
        for g in 1..self.group.order() {
            let conds = self
                .underlying
                .membership_conditions(&self.action[g].sub(&id));
            basis = refine(basis, conds);
        }
        Lattice::from_generators(r, basis)
    }

    /// `self ⊕ other` with the diagonal action.
    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.same_group(other)?;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| IntMatrix::block_diagonal(&[a, b]))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            underlying: FgAbelianGroup::direct_sum(&[&self.underlying, &other.underlying]),
            action,
        })
    }

    /// `self ⊗ other` with generator `eᵢ ⊗ fⱼ` at index `i·r' + j`, relations
    /// `R ⊗ I` and `I ⊗ R'`, and the diagonal action.
    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.same_group(other)?;
        let (r, s) = (self.rank(), other.rank());
        let id_r = IntMatrix::identity(r);
        let id_s = IntMatrix::identity(s);
        let rel = kron(&self.underlying.relations(), &id_s)
            .hcat(&kron(&id_r, &other.underlying.relations()));
        let underlying = FgAbelianGroup::new(r * s, rel)?;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| kron(a, b))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            underlying,
            action,
        })
    }

    pub(crate) fn same_group(&self, other: &GModule) -> Result<()> {
        if self.group != other.group {
            return Err(Error::InvalidModule("modules over different groups".into()));
        }
        Ok(())
    }
}

/// Kronecker product, `(a ⊗ b)[(i·p + k, j·q + l)] = a[i,j]·b[k,l]`.
pub fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (p, q) = (b.rows(), b.cols());
    let mut out = IntMatrix::zeros(a.rows() * p, a.cols() * q);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = &a[(i, j)];
            if x == &BigInt::from(0) {
                continue;
            }
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = x * &b[(k, l)];
                }
            }
        }
    }
    out
}

/// A `G`-equivariant homomorphism between modules over the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMorphism {
    source: GModule,
    target: GModule,
    map: AbMorphism,
}

impl GMorphism {
    pub fn new(source: &GModule, target: &GModule, matrix: IntMatrix) -> Result<Self> {
        source.same_group(target)?;
        let map = AbMorphism::new(source.underlying.clone(), target.underlying.clone(), matrix)?;
        for g in 0..source.group.order() {
            let lhs = map.matrix().mul(&source.action[g]);
            let rhs = target.action[g].mul(map.matrix());
            if !sparse_columns(&lhs.sub(&rhs))
                .iter()
                .all(|c| target.underlying.is_relation_sparse(c))
            {
                return Err(Error::NotEquivariant(format!(
                    "map does not commute with element {g}"
                )));
            }
        }
        Ok(GMorphism {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn identity(m: &GModule) -> Self {
        GMorphism {
            source: m.clone(),
            target: m.clone(),
            map: AbMorphism::identity(&m.underlying),
        }
    }

    pub fn source(&self) -> &GModule {
        &self.source
    }

    pub fn target(&self) -> &GModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.map.matrix()
    }

    pub fn as_ab(&self) -> &AbMorphism {
        &self.map
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.map.apply(v)
    }

    pub fn then(&self, other: &GMorphism) -> Result<GMorphism> {
        GMorphism::new(
            &self.source,
            &other.target,
            other.matrix().mul(self.matrix()),
        )
    }
}

/// A short exact sequence `0 → A → B → C → 0` of modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSes {
    pub inclusion: GMorphism,
    pub projection: GMorphism,
}

impl ModuleSes {
    /// Checks composability and exactness as abelian groups.
    pub fn new(inclusion: GMorphism, projection: GMorphism) -> Result<Self> {
        if inclusion.target != projection.source {
            return Err(Error::InvalidInput(
                "inclusion target differs from projection source".into(),
            ));
        }
        let (i, p) = (inclusion.as_ab(), projection.as_ab());
        if !i.is_injective() {
            return Err(Error::NotExact("inclusion is not injective".into()));
        }
        if !p.is_surjective() {
            return Err(Error::NotExact("projection is not surjective".into()));
        }
        if p.kernel_lattice() != i.image_lattice() {
            return Err(Error::NotExact(
                "kernel of the projection differs from the image of the inclusion".into(),
            ));
        }
        Ok(ModuleSes {
            inclusion,
            projection,
        })
    }

    pub fn a(&self) -> &GModule {
        self.inclusion.source()
    }

    pub fn b(&self) -> &GModule {
        self.inclusion.target()
    }

    pub fn c(&self) -> &GModule {
        self.projection.target()
    }

    /// `0 → A → A ⊕ C → C → 0`.
    pub fn split(a: &GModule, c: &GModule) -> Result<Self> {
        let b = a.direct_sum(c)?;
        let (r, s) = (a.rank(), c.rank());
        let mut i = IntMatrix::zeros(r + s, r);
        let mut p = IntMatrix::zeros(s, r + s);
        for k in 0..r {
            i[(k, k)] = BigInt::one();
        }
        for k in 0..s {
            p[(k, r + k)] = BigInt::one();
        }
        Self::new(GMorphism::new(a, &b, i)?, GMorphism::new(&b, c, p)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::int_vec;

    #[test]
    fn sign_module_invariants() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        assert_eq!(m.invariant_lattice().rank(), 0);
        let m2 = GModule::signed(&g, FgAbelianGroup::cyclic(2), &[1, -1]).unwrap();
        assert!(m2.is_trivial_action());
        assert_eq!(m2.invariant_lattice(), Lattice::full(1));
    }

    #[test]
    fn bad_action_rejected() {
        let g = FiniteGroup::cyclic(3);
        let r = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1, -1]);
        assert!(matches!(r, Err(Error::InvalidModule(_))));
    }

    #[test]
    fn tensor_of_cyclic_groups() {
        let g = FiniteGroup::cyclic(2);
        let a = GModule::trivial(&g, FgAbelianGroup::cyclic(4));
        let b = GModule::trivial(&g, FgAbelianGroup::cyclic(6));
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.underlying().structure(), (0, int_vec(&[2])));
    }

    #[test]
    fn equivariance_enforced() {
        let g = FiniteGroup::cyclic(2);
        let triv = GModule::trivial(&g, FgAbelianGroup::free(1));
        let sign = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        assert!(GMorphism::new(&triv, &sign, IntMatrix::identity(1)).is_err());
        assert!(GMorphism::new(&triv, &sign, IntMatrix::zeros(1, 1)).is_ok());
    }
}

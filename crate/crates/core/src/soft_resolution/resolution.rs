use num_bigint::BigInt;

use super::soft::{quotient_module_of, soft_module_with, QuotientPresentation, SoftModuleData};
use crate::abgroups::{
    AbCochainComplex, AbMorphism, CohomologyGroup, FgAbelianGroup, PreimagePolicy, SesOfComplexes,
};
use crate::error::{Error, Result};
use crate::group_cohomology::{GModule, GMorphism, ModuleSes};
use crate::intlinalg::{IntMatrix, Lattice, SparseVec};

/// `A → E_G(A) → E_G(B_G A) → E_G(B_G² A) → …`, each map being the
/// projection to `B_G^{k+1} A` followed by the constants into `E_G` of it.
#[derive(Clone, Debug)]
pub struct SmResolution {
    levels: Vec<SoftModuleData>,
    differentials: Vec<IntMatrix>,
}

pub fn sm_resolution(a: &GModule, length: usize) -> Result<SmResolution> {
    sm_resolution_with(a, length, QuotientPresentation::Normalized)
}

pub fn sm_resolution_with(
    a: &GModule,
    length: usize,
    presentation: QuotientPresentation,
) -> Result<SmResolution> {
    if length == 0 {
        return Err(Error::InvalidInput(
            "resolution length must be at least 1".into(),
        ));
    }
    let mut levels: Vec<SoftModuleData> = vec![soft_module_with(a, presentation)?];
    for _ in 1..length {
        let next = soft_module_with(&levels.last().expect("nonempty").quotient, presentation)?;
        levels.push(next);
    }
    let differentials = (0..length - 1)
        .map(|k| {
            levels[k + 1]
                .embedding
                .matrix()
                .mul(levels[k].projection.matrix())
        })
        .collect();
    Ok(SmResolution {
        levels,
        differentials,
    })
}

impl SmResolution {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level(&self, k: usize) -> &SoftModuleData {
        &self.levels[k]
    }

    /// `E_G(B_G^k A)`.
    pub fn term(&self, k: usize) -> &GModule {
        &self.levels[k].soft
    }

    pub fn terms(&self) -> Vec<GModule> {
        self.levels.iter().map(|l| l.soft.clone()).collect()
    }

    pub fn differential(&self, k: usize) -> &IntMatrix {
        &self.differentials[k]
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    pub fn augmentation(&self) -> &GMorphism {
        &self.levels[0].embedding
    }

    /// The `E` terms as a complex of abelian groups.
    pub fn complex(&self) -> AbCochainComplex {
        let terms = self
            .levels
            .iter()
            .map(|l| l.soft.underlying().clone())
            .collect();
        AbCochainComplex::new(terms, self.differentials.clone()).expect("resolution dimensions")
    }

    /// Exactness of `0 → A → E_0 → … → E_{len−1}` at `A` and at every `E_k`
    /// except the last; the first failing position is reported.
    pub fn verify_exact(&self) -> Result<()> {
        let aug = self.augmentation().as_ab();
        if !aug.is_injective() {
            return Err(Error::NotExact("augmentation not injective".into()));
        }
        let mut incoming = aug.clone();
        for k in 0..self.len().saturating_sub(1) {
            let e = self.levels[k].soft.underlying().clone();
            let next = self.levels[k + 1].soft.underlying().clone();
            let d = AbMorphism::new(e, next, self.differentials[k].clone())?;
            if d.kernel_lattice() != incoming.image_lattice() {
                return Err(Error::NotExact(format!("resolution not exact at term {k}")));
            }
            incoming = d;
        }
        Ok(())
    }
}

/// Invariant subgroups of a complex of modules, presented in the coordinates
/// of their lattice bases, with the restricted differentials.
#[derive(Clone, Debug)]
pub struct InvariantComplex {
    lattices: Vec<Lattice>,
    complex: AbCochainComplex,
}

/// Matrix of `m` restricted to `src → tgt`, in lattice coordinates.
pub fn restrict_to_lattices(m: &IntMatrix, src: &Lattice, tgt: &Lattice) -> Result<IntMatrix> {
    let mut out = IntMatrix::zeros(tgt.rank(), src.rank());
    let cols = crate::intlinalg::sparse_columns(m);
    for (j, b) in src.basis().iter().enumerate() {
        let mut img = SparseVec::new();
        for (i, x) in b.entries() {
            img.add_scaled(x, &cols[*i]);
        }
        let c = tgt
            .coordinates(&img)
            .ok_or_else(|| Error::NotEquivariant("map does not preserve invariants".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    Ok(out)
}

fn presented_sublattice(module: &GModule) -> Result<(Lattice, FgAbelianGroup)> {
    let lat = module.invariant_lattice();
    let rels: Vec<Vec<BigInt>> = module
        .underlying()
        .relation_columns()
        .iter()
        .map(|c| lat.coordinates(c).expect("relations are invariant"))
        .collect();
    let group = FgAbelianGroup::new(lat.rank(), IntMatrix::from_columns(lat.rank(), &rels))?;
    Ok((lat, group))
}

impl InvariantComplex {
    pub fn new(modules: &[GModule], differentials: &[IntMatrix]) -> Result<Self> {
        let mut lattices = Vec::with_capacity(modules.len());
        let mut terms = Vec::with_capacity(modules.len());
        for m in modules {
            let (lat, g) = presented_sublattice(m)?;
            lattices.push(lat);
            terms.push(g);
        }
        let diffs = differentials
            .iter()
            .enumerate()
            .map(|(k, d)| restrict_to_lattices(d, &lattices[k], &lattices[k + 1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(InvariantComplex {
            lattices,
            complex: AbCochainComplex::new(terms, diffs)?,
        })
    }

    pub fn complex(&self) -> &AbCochainComplex {
        &self.complex
    }

    pub fn lattice(&self, k: usize) -> &Lattice {
        &self.lattices[k]
    }

    /// Lattice coordinates to an element of the ambient term.
    pub fn to_ambient(&self, k: usize, coords: &[BigInt]) -> Vec<BigInt> {
        self.lattices[k]
            .combination(coords)
            .to_dense(self.lattices[k].ambient())
    }

    pub fn to_coords(&self, k: usize, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.lattices[k].coordinates(&SparseVec::from_dense(v))
    }
}

/// The invariant complex in compact form: `(E_G M)^G ≅ M` via `f ↦ f(e)`, so the
/// complex of invariants is `M₀ → M₁ → …` with `M_{k+1} = B_G(M_k)` and
/// `Φ_k(m) = (x ↦ x.m − m)` on `G ∖ {e}`.
///
/// This is isomorphic, term by term and compatibly with the differentials, to
/// [`InvariantComplex`] of [`SmResolution`], without materialising `E_G`.
#[derive(Clone, Debug)]
pub struct SmComplex {
    pub module: GModule,
    levels: Vec<GModule>,
    complex: AbCochainComplex,
}

/// `Φ : M → B_G(M)`, `m ↦ (x.m − m)_{x ≠ e}`.
pub fn invariant_differential(m: &GModule) -> IntMatrix {
    let (n, r) = (m.group().order(), m.rank());
    let id = IntMatrix::identity(r);
    let mut d = IntMatrix::zeros((n - 1) * r, r);
    for x in 1..n {
        d.set_block((x - 1) * r, 0, &m.action(x).sub(&id));
    }
    d
}

impl SmComplex {
    /// Enough terms to compute `H^n` for `n ≤ n_max`.
    pub fn new(a: &GModule, n_max: usize) -> Result<Self> {
        let mut levels = vec![a.clone()];
        for _ in 0..n_max + 1 {
            let next = quotient_module_of(levels.last().expect("nonempty"))?;
            levels.push(next);
        }
        let terms = levels.iter().map(|m| m.underlying().clone()).collect();
        let diffs = levels[..levels.len() - 1]
            .iter()
            .map(invariant_differential)
            .collect();
        Ok(SmComplex {
            module: a.clone(),
            levels,
            complex: AbCochainComplex::new(terms, diffs)?,
        })
    }

    pub fn complex(&self) -> &AbCochainComplex {
        &self.complex
    }

    /// `B_G^k(A)`.
    pub fn level(&self, k: usize) -> &GModule {
        &self.levels[k]
    }

    pub fn cohomology(&self, n: usize) -> Result<CohomologyGroup> {
        self.complex.cohomology_at(n)
    }

    /// `B_G^k(f)`, the map a morphism induces on the degree-`k` term.
    pub fn level_map(&self, f: &GMorphism, k: usize) -> IntMatrix {
        let order = self.module.group().order();
        let copies = (order - 1).pow(k as u32);
        IntMatrix::block_diagonal(&vec![f.matrix(); copies])
    }

    /// `H^n_SM(f) : H^n_SM(A) → H^n_SM(A')`.
    pub fn induced(&self, f: &GMorphism, other: &SmComplex, n: usize) -> Result<AbMorphism> {
        let hs = self.cohomology(n)?;
        let ht = other.cohomology(n)?;
        hs.induced(&self.level_map(f, n), &ht)
    }
}

/// The short exact sequence of invariant complexes attached to `0 → A → B → C → 0`.
pub fn sm_ses(
    ses: &ModuleSes,
    sa: &SmComplex,
    sb: &SmComplex,
    sc: &SmComplex,
) -> Result<SesOfComplexes> {
    let len = sb.complex.len();
    let incl = (0..len).map(|k| sa.level_map(&ses.inclusion, k)).collect();
    let proj = (0..len).map(|k| sb.level_map(&ses.projection, k)).collect();
    SesOfComplexes::new(
        sa.complex.clone(),
        sb.complex.clone(),
        sc.complex.clone(),
        incl,
        proj,
    )?
    .with_block_structure(
        ses.inclusion.as_ab().clone(),
        ses.projection.as_ab().clone(),
    )
}

/// `H^n` of `(E_G A)^G → (E_G B_G A)^G → …`.
pub fn sm_cohomology(a: &GModule, n: usize) -> Result<CohomologyGroup> {
    let resolution = sm_resolution(a, n + 2)?;
    let inv = InvariantComplex::new(&resolution.terms(), resolution.differentials())?;
    inv.complex().cohomology_at(n)
}

/// Connecting map `H^n_SM(C) → H^{n+1}_SM(A)` of a module sequence.
pub fn sm_connecting(ses: &ModuleSes, n: usize, policy: PreimagePolicy) -> Result<AbMorphism> {
    let sa = SmComplex::new(ses.a(), n + 1)?;
    let sb = SmComplex::new(ses.b(), n + 1)?;
    let sc = SmComplex::new(ses.c(), n + 1)?;
    sm_ses(ses, &sa, &sb, &sc)?.connecting_homomorphism(n, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_cohomology::{cohomology, FiniteGroup};
    use crate::intlinalg::int_vec;

    #[test]
    fn resolution_ranks_for_z2() {
        let g = FiniteGroup::cyclic(2);
        let a = GModule::trivial(&g, FgAbelianGroup::free(1));
        let cok = sm_resolution_with(&a, 4, QuotientPresentation::Cokernel).unwrap();
        let ranks: Vec<usize> = (0..4).map(|k| cok.term(k).rank()).collect();
        assert_eq!(ranks, vec![2, 4, 8, 16]);
        // functions on G ∖ {e} keep rank 1 for |G| = 2
        let norm = sm_resolution(&a, 4).unwrap();
        let ranks: Vec<usize> = (0..4).map(|k| norm.term(k).rank()).collect();
        assert_eq!(ranks, vec![2, 2, 2, 2]);
        for r in [&cok, &norm] {
            r.complex().check().unwrap();
            r.verify_exact().unwrap();
        }
        let inv = InvariantComplex::new(&cok.terms(), cok.differentials()).unwrap();
        for n in 0..3 {
            assert_eq!(
                inv.complex().cohomology_at(n).unwrap().structure(),
                sm_cohomology(&a, n).unwrap().structure()
            );
        }
    }

    #[test]
    fn sm_matches_bar_for_z2() {
        let g = FiniteGroup::cyclic(2);
        let a = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        for n in 0..4 {
            assert_eq!(
                sm_cohomology(&a, n).unwrap().structure(),
                (0, int_vec(&[2]))
            );
        }
        let s = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        for n in 0..4 {
            assert_eq!(
                sm_cohomology(&s, n).unwrap().structure(),
                cohomology(&s, n).unwrap().structure()
            );
        }
    }

    #[test]
    fn degree_zero_is_invariants() {
        let g = FiniteGroup::cyclic(3);
        let t = IntMatrix::from_i64_rows(&[vec![0, -1], vec![1, -1]], 2);
        let a = GModule::cyclic_action(&g, FgAbelianGroup::free(2), &t).unwrap();
        assert!(sm_cohomology(&a, 0).unwrap().is_trivial());
        // Z[ζ₃]: H¹ = Z/3, H² = 0
        assert_eq!(
            sm_cohomology(&a, 1).unwrap().structure(),
            (0, int_vec(&[3]))
        );
        assert!(sm_cohomology(&a, 2).unwrap().is_trivial());
    }
}

#[cfg(test)]
mod compact_tests {
    use super::*;
    use crate::group_cohomology::FiniteGroup;

    #[test]
    fn compact_and_literal_invariant_complexes_agree() {
        let g = FiniteGroup::cyclic(4);
        let a = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1, 1, -1]).unwrap();
        let c = SmComplex::new(&a, 3).unwrap();
        for n in 0..4 {
            assert_eq!(
                c.cohomology(n).unwrap().structure(),
                sm_cohomology(&a, n).unwrap().structure()
            );
        }
    }
}

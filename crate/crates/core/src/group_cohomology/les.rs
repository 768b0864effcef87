use super::bar::{bar_cochain_complex, cohomology};
use super::group::tuple_count;
use super::module::{GMorphism, ModuleSes};
use crate::abgroups::{
    AbMorphism, ExactnessReport, LongExactSequence, PreimagePolicy, SesOfComplexes,
};
use crate::error::Result;
use crate::intlinalg::IntMatrix;

/// `I_k ⊗ m`, the map a module morphism induces on `n`-cochains (`k = |G|^n`).
pub fn cochain_map_matrix(m: &IntMatrix, order: usize, n: usize) -> IntMatrix {
    let k = tuple_count(order, n);
    let blocks: Vec<&IntMatrix> = (0..k).map(|_| m).collect();
    IntMatrix::block_diagonal(&blocks)
}

/// Bar complexes of `A → B → C` through degree `n_max`, as a sequence of complexes.
pub fn bar_ses(ses: &ModuleSes, n_max: usize) -> Result<SesOfComplexes> {
    let order = ses.b().group().order();
    let (i, p) = (ses.inclusion.matrix(), ses.projection.matrix());
    let incl = (0..=n_max)
        .map(|n| cochain_map_matrix(i, order, n))
        .collect();
    let proj = (0..=n_max)
        .map(|n| cochain_map_matrix(p, order, n))
        .collect();
    SesOfComplexes::new(
        bar_cochain_complex(ses.a(), n_max),
        bar_cochain_complex(ses.b(), n_max),
        bar_cochain_complex(ses.c(), n_max),
        incl,
        proj,
    )?
    .with_block_structure(
        ses.inclusion.as_ab().clone(),
        ses.projection.as_ab().clone(),
    )
}

/// Map on `H^n` induced by an equivariant morphism, in cohomology coordinates.
pub fn induced_on_cohomology(f: &GMorphism, n: usize) -> Result<AbMorphism> {
    let order = f.source().group().order();
    let hs = cohomology(f.source(), n)?;
    let ht = cohomology(f.target(), n)?;
    hs.induced(&cochain_map_matrix(f.matrix(), order, n), &ht)
}

/// The long exact sequence in group cohomology of `0 → A → B → C → 0`
/// through `H^{n_max + 1}(A)`, with its exactness report.
#[derive(Clone, Debug)]
pub struct CoefficientLes {
    pub sequence: LongExactSequence,
    pub report: ExactnessReport,
}

pub fn coefficient_les(
    ses: &ModuleSes,
    n_max: usize,
    policy: PreimagePolicy,
) -> Result<CoefficientLes> {
    let s = bar_ses(ses, n_max + 2)?;
    let sequence = s.long_exact_sequence(n_max, policy)?;
    let report = sequence.verify();
    Ok(CoefficientLes { sequence, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::{FiniteGroup, GModule};
    use crate::intlinalg::int_vec;

    #[test]
    fn bockstein_for_z2() {
        let g = FiniteGroup::cyclic(2);
        let z = GModule::trivial(&g, FgAbelianGroup::free(1));
        let z2 = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let i = GMorphism::new(&z, &z, IntMatrix::from_i64_rows(&[vec![2]], 1)).unwrap();
        let p = GMorphism::new(&z, &z2, IntMatrix::identity(1)).unwrap();
        let ses = ModuleSes::new(i, p).unwrap();
        let les = coefficient_les(&ses, 3, PreimagePolicy::Canonical).unwrap();
        assert!(les.report.all_exact());
        let delta = bar_ses(&ses, 3)
            .unwrap()
            .connecting_homomorphism(1, PreimagePolicy::Canonical)
            .unwrap();
        assert_eq!(delta.matrix(), &IntMatrix::from_i64_rows(&[vec![1]], 1));
        assert_eq!(delta.source().structure(), (0, int_vec(&[2])));
        assert!(delta.is_injective() && delta.is_surjective());
    }

    #[test]
    fn split_sequence_connecting_maps_vanish() {
        let g = FiniteGroup::cyclic(3);
        let a = GModule::trivial(&g, FgAbelianGroup::cyclic(3));
        let c = GModule::trivial(&g, FgAbelianGroup::free(1));
        let ses = ModuleSes::split(&a, &c).unwrap();
        let s = bar_ses(&ses, 4).unwrap();
        for n in 0..3 {
            assert!(s
                .connecting_homomorphism(n, PreimagePolicy::Canonical)
                .unwrap()
                .is_zero());
        }
    }
}

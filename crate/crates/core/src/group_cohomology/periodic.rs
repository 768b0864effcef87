use super::module::GModule;
use crate::abgroups::{AbCochainComplex, CohomologyGroup};
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// `A →(T−1) A →(N) A →(T−1) A → …` for a cyclic group generated by element 1,
/// where `T` is the action of the generator and `N = 1 + T + … + T^{m−1}`.
///
/// This is the cochain complex of the 2-periodic free resolution, and computes
/// the same cohomology as the bar complex with no reference to it.
pub fn periodic_complex(module: &GModule, n_max: usize) -> Result<AbCochainComplex> {
    let g = module.group();
    let m = g.order();
    let gen = if m == 1 { 0 } else { 1 };
    if g.element_order(gen) != m {
        return Err(Error::InvalidGroup(
            "the periodic resolution needs a cyclic group generated by 1".into(),
        ));
    }
    let r = module.rank();
    let t = module.action(gen).clone();
    let t_minus_1 = t.sub(&IntMatrix::identity(r));
    let mut norm = IntMatrix::zeros(r, r);
    let mut power = IntMatrix::identity(r);
    for _ in 0..m {
        norm = norm.add(&power);
        power = t.mul(&power);
    }
    let terms = vec![module.underlying().clone(); n_max + 2];
    let differentials = (0..=n_max)
        .map(|n| {
            if n % 2 == 0 {
                t_minus_1.clone()
            } else {
                norm.clone()
            }
        })
        .collect();
    AbCochainComplex::new(terms, differentials)
}

pub fn periodic_cohomology(module: &GModule, n: usize) -> Result<CohomologyGroup> {
    periodic_complex(module, n + 1)?.cohomology_at(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::{cohomology, FiniteGroup};

    #[test]
    fn matches_bar_for_small_cyclic_groups() {
        for m in 1..=4 {
            let g = FiniteGroup::cyclic(m);
            let a = GModule::trivial(&g, FgAbelianGroup::free(1));
            for n in 0..=3 {
                assert_eq!(
                    periodic_cohomology(&a, n).unwrap().structure(),
                    cohomology(&a, n).unwrap().structure()
                );
            }
        }
    }
}

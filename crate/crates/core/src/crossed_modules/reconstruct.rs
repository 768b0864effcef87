use super::cocycle::class_equal;
use super::xmod::{additive_group, element_of, CrossedModule, FourTermData};
use crate::abgroups::{PreimagePolicy, Preimager};
use crate::error::{Error, Result};
use crate::group_cohomology::{
    bar_ses, cohomology, extension_from_2cocycle, group_differential, is_cocycle, Cochain, GModule,
    ModuleSes,
};
use crate::soft_resolution::{soft_module, SoftModuleData};

/// A crossed module `E_G(A) → B_G(A) ×_α G` built from a 3-cocycle, with the
/// 2-cocycle `α` whose connecting image is the class of the input.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub crossed: CrossedModule,
    pub data: FourTermData,
    pub alpha: Cochain,
    pub soft: SoftModuleData,
}

/// A normalized 2-cocycle `α` on `B_G(A)` with `δ[α] = [γ]` in `H³(G; A)`.
pub fn shift_down(soft: &SoftModuleData, gamma: &Cochain) -> Result<Cochain> {
    let (a, b) = (&soft.base, &soft.quotient);
    let ses = ModuleSes::new(soft.embedding.clone(), soft.projection.clone())?;
    let s = bar_ses(&ses, 4)?;
    let h2 = cohomology(b, 2)?;
    let h3 = cohomology(a, 3)?;
    let delta = s.connecting_between(2, &h2, &h3, PreimagePolicy::Canonical)?;
    let target = h3.classify(gamma.values())?;
    let coords = Preimager::new(&delta).preimage(&target).ok_or_else(|| {
        Error::PreconditionFailed("the connecting map onto H³(G; A) is not surjective".into())
    })?;
    let mut alpha = Cochain::zero(b, 2);
    for (t, c) in coords.iter().enumerate() {
        alpha = alpha.add(&Cochain::new(b, 2, h2.representative(t))?.scale(c));
    }
    // subtract d of the constant 1-cochain α(e, e)
    let order = b.group().order();
    let aee = alpha.value_at(order, &[0, 0]).to_vec();
    let c = Cochain::from_fn(b, 1, |_| aee.clone());
    Ok(alpha.sub(&group_differential(b, &c)?))
}

pub fn reconstruct_from_3cocycle(module: &GModule, gamma: &Cochain) -> Result<Reconstruction> {
    if gamma.degree() != 3 || !is_cocycle(module, gamma)? {
        return Err(Error::NotACocycle(
            "reconstruction needs a 3-cocycle".into(),
        ));
    }
    let soft = soft_module(module)?;
    let alpha = shift_down(&soft, gamma)?;
    let b = &soft.quotient;
    let e = soft.soft.underlying();
    let (m, e_elems) = additive_group(e)?;
    let ext = extension_from_2cocycle(b, &alpha)?;
    let mu: Vec<usize> = e_elems
        .iter()
        .map(|x| {
            let y = b.underlying().normal_form(&soft.projection.apply(x));
            ext.index_of(&y, 0)
                .expect("normalized extension contains the kernel")
        })
        .collect();
    let action: Vec<Vec<usize>> = ext
        .elements()
        .iter()
        .map(|(_, g)| {
            e_elems
                .iter()
                .map(|x| element_of(e, &soft.soft.act(*g, x)))
                .collect()
        })
        .collect();
    let crossed = CrossedModule::new(m, ext.group().clone(), mu, action)?;
    let a_elems = module
        .underlying()
        .elements(super::xmod::TABLE_LIMIT)
        .ok_or_else(|| Error::InvalidInput("coefficients must be finite".into()))?;
    let kernel_elements = a_elems
        .iter()
        .map(|v| element_of(e, &soft.embedding.apply(v)))
        .collect();
    let data = FourTermData::with_identification(
        &crossed,
        module.clone(),
        ext.projection().to_vec(),
        kernel_elements,
    )?;
    Ok(Reconstruction {
        crossed,
        data,
        alpha,
        soft,
    })
}

/// Whether `three_cocycle_of(reconstruct(γ))` is cohomologous to `γ`.
pub fn roundtrip(module: &GModule, gamma: &Cochain, policy: PreimagePolicy) -> Result<bool> {
    let r = reconstruct_from_3cocycle(module, gamma)?;
    let back = super::cocycle::three_cocycle_of(&r.crossed, &r.data, policy)?;
    Ok(class_equal(module, gamma, &back)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::{tuple_count, FiniteGroup};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roundtrip_every_3_cocycle_over_z2() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let len = tuple_count(2, 3);
        let mut count = 0;
        for bits in 0u32..1 << len {
            let v = (0..len)
                .map(|i| num_bigint::BigInt::from((bits >> i) & 1))
                .collect();
            let c = Cochain::new(&m, 3, v).unwrap();
            if !is_cocycle(&m, &c).unwrap() {
                continue;
            }
            count += 1;
            assert!(roundtrip(&m, &c, PreimagePolicy::Canonical).unwrap());
        }
        assert!(count > 1);
    }

    #[test]
    fn roundtrip_samples_over_z3() {
        let g = FiniteGroup::cyclic(3);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(3));
        let h = cohomology(&m, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 0..3 {
            let b = Cochain::random(&m, 2, &mut rng, -2..=2);
            let c = Cochain::new(&m, 3, h.representative(0))
                .unwrap()
                .scale(&num_bigint::BigInt::from(k))
                .add(&group_differential(&m, &b).unwrap());
            let r = reconstruct_from_3cocycle(&m, &c).unwrap();
            assert_eq!(r.crossed.m().order(), 27);
            assert_eq!(r.crossed.n().order(), 27);
            assert!(
                roundtrip(&m, &c, PreimagePolicy::Canonical).unwrap(),
                "class {k}"
            );
        }
    }
}

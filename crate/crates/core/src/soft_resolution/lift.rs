use num_bigint::BigInt;

use super::soft::soft_module_of;
use crate::abgroups::Preimager;
use crate::error::{Error, Result};
use crate::group_cohomology::{GModule, ModuleSes};
use crate::intlinalg::sub_vec;

/// For `0 → E_G(A₀) → B → C → 0` and an invariant `y ∈ C`, an invariant
/// element of `B` mapping to `y`.
///
/// With `x` the canonical preimage of `y`, `g.x − x` comes from `E_G(A₀)`; call
/// it `ψ(g, −)`. Then `ξ(h) = h.ψ(h⁻¹, e)` defines an element of `E_G(A₀)` and
/// `x − ξ` is invariant.
pub fn lift_invariant(base: &GModule, ses: &ModuleSes, y: &[BigInt]) -> Result<Vec<BigInt>> {
    let soft = soft_module_of(base)?;
    if ses.a() != &soft {
        return Err(Error::PreconditionFailed(
            "first term is not the soft module of the base".into(),
        ));
    }
    let (b, c) = (ses.b(), ses.c());
    let g = base.group();
    let (n, r) = (g.order(), base.rank());
    for h in 0..n {
        if !c.underlying().is_relation(&sub_vec(&c.act(h, y), y)) {
            return Err(Error::PreconditionFailed(format!(
                "element is not invariant under {h}"
            )));
        }
    }
    let x = Preimager::new(ses.projection.as_ab())
        .preimage(y)
        .ok_or_else(|| Error::NotExact("projection is not surjective".into()))?;
    let pull = Preimager::new(ses.inclusion.as_ab());
    let mut xi = vec![BigInt::from(0); n * r];
    for h in 0..n {
        let hinv = g.inv(h);
        let w = sub_vec(&b.act(hinv, &x), &x);
        let psi = pull.preimage(&w).ok_or_else(|| {
            Error::NotExact("g.x − x is not in the image of the soft term".into())
        })?;
        let at_e = &psi[0..r];
        xi[h * r..(h + 1) * r].clone_from_slice(&base.act(h, at_e));
    }
    Ok(sub_vec(&x, &ses.inclusion.apply(&xi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::FiniteGroup;
    use crate::soft_resolution::soft_module;

    #[test]
    fn lift_of_zero_and_of_a_quotient_invariant() {
        let g = FiniteGroup::cyclic(2);
        let a = GModule::trivial(&g, FgAbelianGroup::free(1));
        let s = soft_module(&a).unwrap();
        // 0 → E_G(A) → E_G(A) ⊕ A → A → 0 with the obvious maps
        let ses = ModuleSes::split(&s.soft, &a).unwrap();
        assert_eq!(
            lift_invariant(&a, &ses, &[BigInt::from(0)]).unwrap(),
            vec![BigInt::from(0); 3]
        );
        let l = lift_invariant(&a, &ses, &[BigInt::from(5)]).unwrap();
        assert_eq!(ses.projection.apply(&l), vec![BigInt::from(5)]);
    }
}

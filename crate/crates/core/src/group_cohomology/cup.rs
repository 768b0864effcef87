use num_bigint::BigInt;
use num_traits::Zero;

use super::bar::{cohomology, Cochain};
use super::group::{tuple_count, tuple_from_index};
use super::module::{GModule, GMorphism};
use crate::error::{Error, Result};

/// An equivariant bilinear pairing `A ⊗ A' → A''`, as a morphism out of the
/// tensor presentation of [`GModule::tensor`].
#[derive(Clone, Debug)]
pub struct Pairing {
    left: GModule,
    right: GModule,
    map: GMorphism,
}

impl Pairing {
    pub fn new(left: &GModule, right: &GModule, map: GMorphism) -> Result<Self> {
        let t = left.tensor(right)?;
        if map.source().underlying().rank() != t.rank() || map.source().actions() != t.actions() {
            return Err(Error::InvalidInput(
                "pairing is not defined on the tensor product of its factors".into(),
            ));
        }
        if map.source().underlying().relation_lattice() != t.underlying().relation_lattice() {
            return Err(Error::InvalidInput(
                "pairing source has the wrong relations".into(),
            ));
        }
        Ok(Pairing {
            left: left.clone(),
            right: right.clone(),
            map,
        })
    }

    /// Multiplication `Z/m ⊗ Z/m → Z/m` (or `Z ⊗ Z → Z` for `m = 0`) of
    /// a rank-one module with itself.
    pub fn multiplication(module: &GModule) -> Result<Self> {
        if module.rank() != 1 {
            return Err(Error::InvalidInput(
                "multiplication pairing needs a rank-one module".into(),
            ));
        }
        let t = module.tensor(module)?;
        let map = GMorphism::new(&t, module, crate::intlinalg::IntMatrix::identity(1))?;
        Self::new(module, module, map)
    }

    pub fn left(&self) -> &GModule {
        &self.left
    }

    pub fn right(&self) -> &GModule {
        &self.right
    }

    pub fn target(&self) -> &GModule {
        self.map.target()
    }

    /// `α(u ⊗ v)`.
    pub fn apply(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut t = Vec::with_capacity(u.len() * v.len());
        for x in u {
            for y in v {
                t.push(x * y);
            }
        }
        self.map.apply(&t)
    }
}

/// `(c ∪ c')(g₁,…,g_{p+q}) = α(c(g₁,…,g_p) ⊗ (g₁⋯g_p).c'(g_{p+1},…,g_{p+q}))`.
pub fn cup_product(pairing: &Pairing, c: &Cochain, c2: &Cochain) -> Result<Cochain> {
    let g = pairing.left.group();
    let order = g.order();
    let (p, q) = (c.degree(), c2.degree());
    if c.values().len() != tuple_count(order, p) * pairing.left.rank()
        || c2.values().len() != tuple_count(order, q) * pairing.right.rank()
    {
        return Err(Error::DimensionMismatch(
            "cochains do not match the pairing".into(),
        ));
    }
    let out = pairing.target();
    let mut values = Vec::with_capacity(tuple_count(order, p + q) * out.rank());
    for idx in 0..tuple_count(order, p + q) {
        let t = tuple_from_index(order, p + q, idx);
        let x = g.product(&t[..p]);
        let u = c.value_at(order, &t[..p]);
        let v = pairing.right.act(x, c2.value_at(order, &t[p..]));
        values.extend(pairing.apply(u, &v));
    }
    Cochain::new(out, p + q, values)
}

/// Coordinates in `H^{p+q}(A'')` of the product of the `s`-th generator of
/// `H^p(A)` with the `t`-th generator of `H^q(A')`.
pub fn cup_on_generators(
    pairing: &Pairing,
    p: usize,
    s: usize,
    q: usize,
    t: usize,
) -> Result<Vec<BigInt>> {
    let hp = cohomology(&pairing.left, p)?;
    let hq = cohomology(&pairing.right, q)?;
    let hpq = cohomology(pairing.target(), p + q)?;
    let c = Cochain::new(&pairing.left, p, hp.representative(s))?;
    let c2 = Cochain::new(&pairing.right, q, hq.representative(t))?;
    let prod = cup_product(pairing, &c, &c2)?;
    hpq.classify(prod.values())
}

/// Whether `c ∪ c'` is a coboundary.
pub fn cup_is_trivial(pairing: &Pairing, c: &Cochain, c2: &Cochain) -> Result<bool> {
    let prod = cup_product(pairing, c, c2)?;
    let h = cohomology(pairing.target(), prod.degree())?;
    Ok(h.classify(prod.values())?.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::bar::group_differential;
    use crate::group_cohomology::FiniteGroup;
    use crate::intlinalg::int_vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_zero_product_is_the_pairing() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::free(1));
        let pr = Pairing::multiplication(&m).unwrap();
        let a = Cochain::new(&m, 0, int_vec(&[3])).unwrap();
        let b = Cochain::new(&m, 0, int_vec(&[-4])).unwrap();
        assert_eq!(
            cup_product(&pr, &a, &b).unwrap().values(),
            &int_vec(&[-12])[..]
        );
    }

    #[test]
    fn leibniz_with_twisted_coefficients() {
        let g = FiniteGroup::cyclic(2);
        let sign = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        let triv = GModule::trivial(&g, FgAbelianGroup::free(1));
        let t = sign.tensor(&sign).unwrap();
        let pr = Pairing::new(
            &sign,
            &sign,
            GMorphism::new(&t, &triv, crate::intlinalg::IntMatrix::identity(1)).unwrap(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, q) in [(1, 1), (1, 2), (2, 1), (0, 2)] {
            let c = Cochain::random(&sign, p, &mut rng, -4..=4);
            let c2 = Cochain::random(&sign, q, &mut rng, -4..=4);
            let lhs = group_differential(&triv, &cup_product(&pr, &c, &c2).unwrap()).unwrap();
            let a = cup_product(&pr, &group_differential(&sign, &c).unwrap(), &c2).unwrap();
            let b = cup_product(&pr, &c, &group_differential(&sign, &c2).unwrap()).unwrap();
            let rhs = if p % 2 == 0 { a.add(&b) } else { a.sub(&b) };
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn square_of_degree_one_class_mod_two() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let pr = Pairing::multiplication(&m).unwrap();
        assert_eq!(cup_on_generators(&pr, 1, 0, 1, 0).unwrap(), int_vec(&[1]));
    }
}

use std::collections::HashMap;

use num_bigint::BigInt;

use super::bar::{group_differential, Cochain};
use super::group::{tuple_from_index, FiniteGroup};
use super::module::GModule;
use crate::error::{Error, Result};

/// The group `A ×_f G` with `(a, g)(b, h) = (a + g.b + f(g, h), gh)`.
#[derive(Clone, Debug)]
pub struct Extension {
    group: FiniteGroup,
    /// `(a, g)` for each element index, `a` in normal form.
    elements: Vec<(Vec<BigInt>, usize)>,
    lookup: HashMap<(Vec<BigInt>, usize), usize>,
    projection: Vec<usize>,
    section: Vec<usize>,
}

/// Upper bound on the number of elements enumerated for an extension.
pub const EXTENSION_LIMIT: usize = 1 << 14;

/// Builds the extension of `G` by the finite module `A` defined by the 2-cochain `f`.
///
/// When `f` is not a cocycle the construction is not associative; the error then
/// names three elements `(0, g), (0, h), (0, k)` witnessing this.
pub fn extension_from_2cocycle(module: &GModule, f: &Cochain) -> Result<Extension> {
    if f.degree() != 2 {
        return Err(Error::InvalidInput(
            "extension data must be a 2-cochain".into(),
        ));
    }
    let a = module.underlying();
    let g = module.group();
    let order = g.order();
    let elems_a = a
        .elements(EXTENSION_LIMIT / order.max(1))
        .ok_or_else(|| Error::InvalidInput("coefficient group must be finite and small".into()))?;

    let mut elements: Vec<(Vec<BigInt>, usize)> = Vec::with_capacity(elems_a.len() * order);
    for x in &elems_a {
        for h in 0..order {
            elements.push((x.clone(), h));
        }
    }
    // identity is (−f(e,e), e); give it index 0
    let neg_fee: Vec<BigInt> = f.value_at(order, &[0, 0]).iter().map(|x| -x).collect();
    let id_key = (a.normal_form(&neg_fee), 0);
    let id_pos = elements
        .iter()
        .position(|e| *e == id_key)
        .expect("identity is enumerated");
    elements.swap(0, id_pos);
    let lookup: HashMap<(Vec<BigInt>, usize), usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();

    let df = group_differential(module, f)?;
    let r = module.rank();
    for idx in 0..order.pow(3) {
        let v = &df.values()[idx * r..(idx + 1) * r];
        if !a.is_relation(v) {
            let t = tuple_from_index(order, 3, idx);
            let zero = vec![BigInt::from(0); r];
            let w: Vec<usize> = t
                .iter()
                .map(|&x| lookup[&(a.normal_form(&zero), x)])
                .collect();
            return Err(Error::NonAssociative(w[0], w[1], w[2]));
        }
    }

    let n = elements.len();
    let mut table = vec![0usize; n * n];
    for (i, (x, gx)) in elements.iter().enumerate() {
        for (j, (y, hy)) in elements.iter().enumerate() {
            let gy = module.act(*gx, y);
            let fv = f.value_at(order, &[*gx, *hy]);
            let sum: Vec<BigInt> = x
                .iter()
                .zip(&gy)
                .zip(fv)
                .map(|((p, q), s)| p + q + s)
                .collect();
            table[i * n + j] = lookup[&(a.normal_form(&sum), g.mul(*gx, *hy))];
        }
    }
    let group = FiniteGroup::new(n, table)?;
    let projection = elements.iter().map(|(_, h)| *h).collect();
    let zero = a.normal_form(&vec![BigInt::from(0); r]);
    let section = (0..order).map(|h| lookup[&(zero.clone(), h)]).collect();
    Ok(Extension {
        group,
        elements,
        lookup,
        projection,
        section,
    })
}

impl Extension {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[(Vec<BigInt>, usize)] {
        &self.elements
    }

    /// Index of `(a, g)`, `a` in normal form.
    pub fn index_of(&self, a: &[BigInt], g: usize) -> Option<usize> {
        self.lookup.get(&(a.to_vec(), g)).copied()
    }

    /// Element index ↦ image in `G`.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// `g ↦ (0, g)`.
    pub fn section(&self) -> &[usize] {
        &self.section
    }

    /// How many elements have each order, sorted by order.
    pub fn order_census(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for x in 0..self.group.order() {
            *counts.entry(self.group.element_order(x)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

/// The map `E_{f + db} → E_f`, `(a, g) ↦ (a + b(g), g)`, checked to be a group
/// isomorphism over `G`.
pub fn extension_equivalence(
    module: &GModule,
    shifted: &Extension,
    base: &Extension,
    b: &Cochain,
) -> Result<Vec<usize>> {
    let order = module.group().order();
    let a = module.underlying();
    let mut map = Vec::with_capacity(shifted.elements.len());
    for (x, g) in &shifted.elements {
        let y: Vec<BigInt> = x
            .iter()
            .zip(b.value_at(order, &[*g]))
            .map(|(p, q)| p + q)
            .collect();
        let img = base
            .index_of(&a.normal_form(&y), *g)
            .ok_or_else(|| Error::InvalidInput("extensions over different modules".into()))?;
        map.push(img);
    }
    if !is_isomorphism(&shifted.group, &base.group, &map) {
        return Err(Error::PreconditionFailed(
            "the shift by b is not an isomorphism of extensions".into(),
        ));
    }
    if map
        .iter()
        .enumerate()
        .any(|(i, &j)| shifted.projection[i] != base.projection[j])
    {
        return Err(Error::PreconditionFailed(
            "the shift by b does not commute with the projections".into(),
        ));
    }
    Ok(map)
}

/// Whether `map` is a bijective homomorphism between the two tables.
pub fn is_isomorphism(src: &FiniteGroup, tgt: &FiniteGroup, map: &[usize]) -> bool {
    let n = src.order();
    if tgt.order() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..n).all(|x| (0..n).all(|y| map[src.mul(x, y)] == tgt.mul(map[x], map[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::intlinalg::int_vec;

    fn z2_over_z2() -> GModule {
        GModule::trivial(&FiniteGroup::cyclic(2), FgAbelianGroup::cyclic(2))
    }

    #[test]
    fn zero_cocycle_gives_direct_product() {
        let m = z2_over_z2();
        let e = extension_from_2cocycle(&m, &Cochain::zero(&m, 2)).unwrap();
        assert_eq!(e.order_census(), vec![(1, 1), (2, 3)]);
    }

    #[test]
    fn nontrivial_cocycle_gives_cyclic_group() {
        let m = z2_over_z2();
        let f = Cochain::new(&m, 2, int_vec(&[0, 0, 0, 1])).unwrap();
        let e = extension_from_2cocycle(&m, &f).unwrap();
        assert_eq!(e.order_census(), vec![(1, 1), (2, 1), (4, 2)]);
    }

    #[test]
    fn non_cocycle_reports_triple() {
        let g = FiniteGroup::cyclic(3);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(3));
        let mut v = vec![0i64; 9];
        v[4] = 1; // f(1, 1) = 1 only
        let f = Cochain::new(&m, 2, int_vec(&v)).unwrap();
        assert!(matches!(
            extension_from_2cocycle(&m, &f),
            Err(Error::NonAssociative(_, _, _))
        ));
    }
}

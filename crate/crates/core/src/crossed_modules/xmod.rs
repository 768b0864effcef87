use std::collections::HashMap;

use num_bigint::BigInt;

use crate::abgroups::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::group_cohomology::{FiniteGroup, GModule};
use crate::intlinalg::IntMatrix;

/// Largest group enumerated when turning a finite abelian group into a table.
pub const TABLE_LIMIT: usize = 1 << 12;

/// A homomorphism `μ : M → N` with an action of `N` on `M` by automorphisms,
/// equivariant and satisfying the Peiffer identity `μ(m).m′ = m m′ m⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    m: FiniteGroup,
    n: FiniteGroup,
    mu: Vec<usize>,
    /// `action[n][m] = n.m`.
    action: Vec<Vec<usize>>,
}

fn is_hom(src: &FiniteGroup, tgt: &FiniteGroup, f: &[usize]) -> bool {
    f.len() == src.order()
        && f.iter().all(|&x| x < tgt.order())
        && (0..src.order())
            .all(|a| (0..src.order()).all(|b| f[src.mul(a, b)] == tgt.mul(f[a], f[b])))
}

impl CrossedModule {
    pub fn new(
        m: FiniteGroup,
        n: FiniteGroup,
        mu: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if !is_hom(&m, &n, &mu) {
            return Err(Error::InvalidInput("μ is not a homomorphism".into()));
        }
        if action.len() != n.order() {
            return Err(Error::InvalidInput(
                "the action needs one map per element of N".into(),
            ));
        }
        for (x, a) in action.iter().enumerate() {
            let mut hit = vec![false; m.order()];
            if !is_hom(&m, &m, a) || a.iter().any(|&y| std::mem::replace(&mut hit[y], true)) {
                return Err(Error::InvalidInput(format!(
                    "element {x} of N does not act by an automorphism"
                )));
            }
        }
        for x in 0..n.order() {
            for y in 0..n.order() {
                let xy = n.mul(x, y);
                if (0..m.order()).any(|e| action[xy][e] != action[x][action[y][e]]) {
                    return Err(Error::InvalidInput(format!(
                        "the action is not multiplicative at ({x}, {y})"
                    )));
                }
            }
        }
        for x in 0..n.order() {
            for e in 0..m.order() {
                if mu[action[x][e]] != n.mul(n.mul(x, mu[e]), n.inv(x)) {
                    return Err(Error::NotEquivariant(format!(
                        "μ({x}.{e}) ≠ {x} μ({e}) {x}⁻¹"
                    )));
                }
            }
        }
        for e in 0..m.order() {
            for f in 0..m.order() {
                if action[mu[e]][f] != m.mul(m.mul(e, f), m.inv(e)) {
                    return Err(Error::InvalidInput(format!(
                        "Peiffer identity fails for ({e}, {f})"
                    )));
                }
            }
        }
        Ok(CrossedModule { m, n, mu, action })
    }

    /// `A → G` with `μ` trivial and `G` acting through the module: kernel `A`, cokernel `G`.
    pub fn trivial(module: &GModule) -> Result<Self> {
        let (m, elems) = additive_group(module.underlying())?;
        let a = module.underlying();
        let g = module.group();
        let action = (0..g.order())
            .map(|x| {
                elems
                    .iter()
                    .map(|v| element_of(a, &module.act(x, v)))
                    .collect()
            })
            .collect();
        Self::new(m.clone(), g.clone(), vec![0; m.order()], action)
    }

    /// `Z/4 → Z/4`, `μ = ×2`, odd elements acting by inversion: kernel and
    /// cokernel are both `Z/2`.
    pub fn z4_doubling() -> Self {
        let z4 = FiniteGroup::cyclic(4);
        let mu = (0..4).map(|x| (2 * x) % 4).collect();
        let action = (0..4)
            .map(|n| {
                (0..4)
                    .map(|x| if n % 2 == 1 { (4 - x) % 4 } else { x })
                    .collect()
            })
            .collect();
        Self::new(z4.clone(), z4, mu, action).expect("a valid crossed module")
    }

    pub fn m(&self) -> &FiniteGroup {
        &self.m
    }

    pub fn n(&self) -> &FiniteGroup {
        &self.n
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn act(&self, n: usize, m: usize) -> usize {
        self.action[n][m]
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.m.order()).filter(|&x| self.mu[x] == 0).collect()
    }

    /// `ker μ` commutes with all of `M` (a consequence of the Peiffer identity).
    pub fn kernel_is_central(&self) -> bool {
        let k = self.kernel();
        k.iter()
            .all(|&a| (0..self.m.order()).all(|b| self.m.mul(a, b) == self.m.mul(b, a)))
    }

    /// `im μ` is normal in `N`.
    pub fn image_is_normal(&self) -> bool {
        let mut img = vec![false; self.n.order()];
        for &y in &self.mu {
            img[y] = true;
        }
        (0..self.n.order()).all(|x| {
            (0..self.n.order())
                .filter(|&y| img[y])
                .all(|y| img[self.n.mul(self.n.mul(x, y), self.n.inv(x))])
        })
    }
}

/// The additive group of a finite abelian group as a table, elements in the
/// order of [`FgAbelianGroup::elements`].
pub fn additive_group(a: &FgAbelianGroup) -> Result<(FiniteGroup, Vec<Vec<BigInt>>)> {
    let elems = a
        .elements(TABLE_LIMIT)
        .ok_or_else(|| Error::InvalidInput("group is infinite or too large to tabulate".into()))?;
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            let s: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            table.push(element_of(a, &s));
        }
    }
    Ok((FiniteGroup::new(n, table)?, elems))
}

pub(crate) fn element_of(a: &FgAbelianGroup, v: &[BigInt]) -> usize {
    a.element_index(v)
        .expect("finite group elements are indexed")
}

/// The kernel `A = ker μ` as a `G = coker μ`-module, with the identifications.
#[derive(Clone, Debug)]
pub struct FourTermData {
    pub module: GModule,
    /// `N → G`.
    pub projection: Vec<usize>,
    /// Element of `M` for each element of `A`, in the order of [`FgAbelianGroup::elements`].
    pub kernel_elements: Vec<usize>,
    /// Coordinates in `A` of each kernel element of `M`.
    pub kernel_lookup: HashMap<usize, Vec<BigInt>>,
}

impl FourTermData {
    /// Computes the cokernel as a table of cosets and a presentation of the kernel.
    pub fn compute(x: &CrossedModule) -> Result<Self> {
        if !x.image_is_normal() {
            return Err(Error::InvalidInput("im μ is not normal".into()));
        }
        if !x.kernel_is_central() {
            return Err(Error::InvalidInput("ker μ is not central".into()));
        }
        let n = &x.n;
        let mut img = vec![false; n.order()];
        for &y in &x.mu {
            img[y] = true;
        }
        // cosets, numbered by first appearance so the identity coset is 0
        let mut projection = vec![usize::MAX; n.order()];
        let mut reps = Vec::new();
        for y in 0..n.order() {
            if projection[y] != usize::MAX {
                continue;
            }
            let label = reps.len();
            reps.push(y);
            for z in 0..n.order() {
                if img[z] {
                    projection[n.mul(y, z)] = label;
                }
            }
        }
        let k = reps.len();
        let table = (0..k)
            .flat_map(|a| {
                (0..k)
                    .map(|b| projection[n.mul(reps[a], reps[b])])
                    .collect::<Vec<_>>()
            })
            .collect();
        let g = FiniteGroup::new(k, table)?;

        let kernel = x.kernel();
        let (a, coords) = present_abelian(&x.m, &kernel)?;
        let action: Vec<IntMatrix> = (0..k)
            .map(|h| {
                let cols: Vec<Vec<BigInt>> = coords_of_generators(&a, &coords, &kernel)
                    .iter()
                    .map(|&gen| coords[&x.act(reps[h], gen)].clone())
                    .collect();
                IntMatrix::from_columns(a.rank(), &cols)
            })
            .collect();
        let module = GModule::new(&g, a.clone(), action)?;
        Self::with_module(x, module, projection)
    }

    /// Uses a given module for the kernel, identified with `ker μ` by matching
    /// elements through the supplied projection.
    pub fn with_identification(
        x: &CrossedModule,
        module: GModule,
        projection: Vec<usize>,
        kernel_elements: Vec<usize>,
    ) -> Result<Self> {
        let a = module.underlying();
        let elems = a
            .elements(TABLE_LIMIT)
            .ok_or_else(|| Error::InvalidInput("kernel module must be finite".into()))?;
        if elems.len() != kernel_elements.len() {
            return Err(Error::InvalidInput(
                "kernel identification has the wrong size".into(),
            ));
        }
        let kernel_lookup = kernel_elements.iter().cloned().zip(elems).collect();
        let data = FourTermData {
            module,
            projection,
            kernel_elements,
            kernel_lookup,
        };
        data.validate(x)?;
        Ok(data)
    }

    fn with_module(x: &CrossedModule, module: GModule, projection: Vec<usize>) -> Result<Self> {
        let a = module.underlying().clone();
        let kernel = x.kernel();
        let (_, coords) = present_abelian(&x.m, &kernel)?;
        let elems = a.elements(TABLE_LIMIT).expect("kernel is finite");
        let mut kernel_elements = vec![usize::MAX; elems.len()];
        for (&e, c) in &coords {
            kernel_elements[element_of(&a, c)] = e;
        }
        Self::with_identification(x, module, projection, kernel_elements)
    }

    /// Checks that the projection has kernel `im μ`, that the identification is a
    /// group isomorphism onto `ker μ`, and that the actions match.
    pub fn validate(&self, x: &CrossedModule) -> Result<()> {
        let g = self.module.group();
        let a = self.module.underlying();
        if !is_hom(&x.n, g, &self.projection) {
            return Err(Error::InvalidInput(
                "projection is not a homomorphism onto G".into(),
            ));
        }
        let mut hit = vec![false; g.order()];
        for &y in &self.projection {
            hit[y] = true;
        }
        if hit.contains(&false) {
            return Err(Error::InvalidInput("projection is not surjective".into()));
        }
        let mut img = vec![false; x.n.order()];
        for &y in &x.mu {
            img[y] = true;
        }
        if (0..x.n.order()).any(|y| (self.projection[y] == 0) != img[y]) {
            return Err(Error::InvalidInput(
                "projection kernel differs from im μ".into(),
            ));
        }
        let mut kernel = self.kernel_elements.clone();
        kernel.sort_unstable();
        kernel.dedup();
        if kernel != x.kernel() || kernel.len() != self.kernel_elements.len() {
            return Err(Error::InvalidInput(
                "identification is not a bijection onto ker μ".into(),
            ));
        }
        let elems = a.elements(TABLE_LIMIT).expect("validated as finite");
        for (i, u) in elems.iter().enumerate() {
            for (j, v) in elems.iter().enumerate() {
                let s: Vec<BigInt> = u.iter().zip(v).map(|(p, q)| p + q).collect();
                if self.kernel_elements[element_of(a, &s)]
                    != x.m.mul(self.kernel_elements[i], self.kernel_elements[j])
                {
                    return Err(Error::InvalidInput("identification is not additive".into()));
                }
            }
        }
        for y in 0..x.n.order() {
            for (i, u) in elems.iter().enumerate() {
                let moved = self.module.act(self.projection[y], u);
                if x.act(y, self.kernel_elements[i]) != self.kernel_elements[element_of(a, &moved)]
                {
                    return Err(Error::InvalidInput(format!(
                        "N acts on the kernel differently from G at {y}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The element of `A` represented by a kernel element of `M`.
    pub fn coordinates(&self, m: usize) -> Option<&[BigInt]> {
        self.kernel_lookup.get(&m).map(Vec::as_slice)
    }
}

/// Greedy generators of an abelian subgroup `K ⊂ M`, its presentation on them,
/// and coordinates for every element.
fn present_abelian(
    m: &FiniteGroup,
    k: &[usize],
) -> Result<(FgAbelianGroup, HashMap<usize, Vec<BigInt>>)> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span: Vec<usize> = vec![0];
    for &x in k {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut next = span.clone();
        let mut frontier = span.clone();
        while let Some(y) = frontier.pop() {
            let z = m.mul(y, x);
            if !next.contains(&z) {
                next.push(z);
                frontier.push(z);
            }
        }
        span = next;
    }
    let orders: Vec<usize> = gens.iter().map(|&x| m.element_order(x)).collect();
    let mut coords: HashMap<usize, Vec<BigInt>> = HashMap::new();
    let mut relations: Vec<Vec<BigInt>> = Vec::new();
    for (i, &o) in orders.iter().enumerate() {
        let mut v = vec![BigInt::from(0); gens.len()];
        v[i] = BigInt::from(o);
        relations.push(v);
    }
    let total: usize = orders.iter().product();
    for idx in 0..total {
        let mut rest = idx;
        let mut v = vec![0usize; gens.len()];
        for i in (0..gens.len()).rev() {
            v[i] = rest % orders[i];
            rest /= orders[i];
        }
        let mut e = 0;
        for (i, &c) in v.iter().enumerate() {
            for _ in 0..c {
                e = m.mul(e, gens[i]);
            }
        }
        let bv: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
        match coords.get(&e) {
            Some(prev) => relations.push(bv.iter().zip(prev).map(|(a, b)| a - b).collect()),
            None => {
                coords.insert(e, bv);
            }
        }
    }
    let a = FgAbelianGroup::new(gens.len(), IntMatrix::from_columns(gens.len(), &relations))?;
    for c in coords.values_mut() {
        *c = a.normal_form(c);
    }
    Ok((a, coords))
}

fn coords_of_generators(
    a: &FgAbelianGroup,
    coords: &HashMap<usize, Vec<BigInt>>,
    kernel: &[usize],
) -> Vec<usize> {
    (0..a.rank())
        .map(|i| {
            let mut unit = vec![BigInt::from(0); a.rank()];
            unit[i] = BigInt::from(1);
            let target = a.normal_form(&unit);
            *kernel
                .iter()
                .find(|&&e| coords[&e] == target)
                .expect("generators are kernel elements")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_crossed_module() {
        let x = CrossedModule::z4_doubling();
        assert!(x.kernel_is_central() && x.image_is_normal());
        let d = FourTermData::compute(&x).unwrap();
        assert_eq!(d.module.group().order(), 2);
        assert_eq!(
            d.module.underlying().structure(),
            (0, vec![BigInt::from(2)])
        );
        assert!(d.module.is_trivial_action());
    }

    #[test]
    fn trivial_crossed_module() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let x = CrossedModule::trivial(&m).unwrap();
        let d = FourTermData::compute(&x).unwrap();
        assert_eq!(d.module.group().order(), 2);
        assert_eq!(d.kernel_elements.len(), 2);
    }

    #[test]
    fn equivariance_violation_rejected() {
        let z4 = FiniteGroup::cyclic(4);
        let action = (0..4)
            .map(|n| {
                (0..4)
                    .map(|x| if n % 2 == 1 { (4 - x) % 4 } else { x })
                    .collect()
            })
            .collect();
        let err = CrossedModule::new(z4.clone(), z4, (0..4).collect(), action).unwrap_err();
        assert!(matches!(err, Error::NotEquivariant(_)));
    }

    #[test]
    fn peiffer_violation_rejected() {
        // Z/2 swapping the factors of Z/2 × Z/2, μ the sum of coordinates
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        let mu = (0..4).map(|x| (x / 2 + x % 2) % 2).collect();
        let action = vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]];
        let err = CrossedModule::new(v4, FiniteGroup::cyclic(2), mu, action).unwrap_err();
        assert!(
            matches!(err, Error::InvalidInput(ref s) if s.contains("Peiffer")),
            "{err:?}"
        );
    }
}

use std::collections::HashMap;

use num_bigint::BigInt;

use super::cover::SemiSimplicialCover;
use super::simplicial::SemiSimplicialSet;
use crate::double_complex::DoubleComplex;
use crate::error::{Error, Result};
use crate::group_cohomology::{tuple_count, GModule};
use crate::intlinalg::IntMatrix;

/// Largest total rank of a single Čech term that will be assembled.
pub const CECH_RANK_LIMIT: usize = 4096;

/// `U ↦ Map(U, A)` on the levels of a semi-simplicial set, with structure maps
/// `D_i` pulling back along `d^i`; `D_0` is additionally twisted by the action
/// of `twist[k][x]`, which on the nerve is the first entry `g_0` of `x`.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    module: GModule,
    twist: Vec<Vec<usize>>,
}

impl CoefficientSystem {
    /// Coefficients on the nerve: `(D_0 f)(g_0, …, g_n) = g_0.f(g_1, …, g_n)`.
    pub fn nerve(module: &GModule, x: &SemiSimplicialSet) -> Result<Self> {
        let n = module.group().order();
        let mut twist = vec![Vec::new()];
        for k in 1..=x.k_max() {
            if x.size(k) != tuple_count(n, k) {
                return Err(Error::InvalidInput(
                    "space is not the nerve of the module's group".into(),
                ));
            }
            let stride = tuple_count(n, k - 1);
            twist.push((0..x.size(k)).map(|e| e / stride).collect());
        }
        Ok(CoefficientSystem {
            module: module.clone(),
            twist,
        })
    }

    /// Untwisted coefficients on any space.
    pub fn constant(module: &GModule, x: &SemiSimplicialSet) -> Self {
        let id = module.group().identity();
        let twist = (0..=x.k_max())
            .map(|k| {
                if k == 0 {
                    Vec::new()
                } else {
                    vec![id; x.size(k)]
                }
            })
            .collect();
        CoefficientSystem {
            module: module.clone(),
            twist,
        }
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    /// The group element acting in `D_0` at `x ∈ X_k`.
    pub fn twist(&self, k: usize, x: usize) -> usize {
        self.twist[k][x]
    }

    /// `(D_i f)(x)` for a function on `X_{k−1}` given pointwise.
    pub fn pull_back(
        &self,
        space: &SemiSimplicialSet,
        k: usize,
        i: usize,
        f: &[Vec<BigInt>],
    ) -> Vec<Vec<BigInt>> {
        (0..space.size(k))
            .map(|x| {
                let v = &f[space.face(k, i, x)];
                if i == 0 {
                    self.module.act(self.twist(k, x), v)
                } else {
                    v.clone()
                }
            })
            .collect()
    }

    /// `D_j D_i = D_i D_{j−1}` for `i < j` on basis functions of
    /// `Map(X_k, A)`, `k + 2 ≤ k_max`.
    pub fn check_identities(&self, space: &SemiSimplicialSet, k: usize) -> bool {
        let r = self.module.rank();
        for x in 0..space.size(k) {
            for c in 0..r {
                let mut f = vec![vec![BigInt::from(0); r]; space.size(k)];
                f[x][c] = BigInt::from(1);
                for j in 1..=k + 2 {
                    for i in 0..j {
                        let a =
                            self.pull_back(space, k + 2, j, &self.pull_back(space, k + 1, i, &f));
                        let b = self.pull_back(
                            space,
                            k + 2,
                            i,
                            &self.pull_back(space, k + 1, j - 1, &f),
                        );
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// One summand `Map(U_{j_0} ∩ … ∩ U_{j_q}, A)` of a Čech term.
#[derive(Clone, Debug)]
pub struct CechBlock {
    pub indices: Vec<usize>,
    pub set: Vec<usize>,
    pub offset: usize,
}

/// The summands of every `Č^{p,q}`, in lexicographic order of index tuples;
/// tuples with empty intersection are omitted.
#[derive(Clone, Debug)]
pub struct CechLayout {
    pub blocks: Vec<Vec<Vec<CechBlock>>>,
    lookup: Vec<Vec<HashMap<Vec<usize>, usize>>>,
    rank: usize,
}

impl CechLayout {
    pub fn new(cover: &SemiSimplicialCover, q_max: usize, rank: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut lookup = Vec::new();
        for p in 0..=cover.k_max() {
            let mut col = Vec::new();
            let mut col_lookup = Vec::new();
            let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = (0..cover.count(p))
                .map(|j| (vec![j], cover.set(p, j).to_vec()))
                .collect();
            for q in 0..=q_max {
                if q > 0 {
                    let mut next = Vec::new();
                    for (t, s) in &frontier {
                        for j in 0..cover.count(p) {
                            let meet = intersect(s, cover.set(p, j));
                            if !meet.is_empty() {
                                let mut t2 = t.clone();
                                t2.push(j);
                                next.push((t2, meet));
                            }
                        }
                    }
                    frontier = next;
                }
                let mut offset = 0;
                let mut level = Vec::with_capacity(frontier.len());
                let mut map = HashMap::with_capacity(frontier.len());
                for (t, s) in &frontier {
                    map.insert(t.clone(), level.len());
                    level.push(CechBlock {
                        indices: t.clone(),
                        set: s.clone(),
                        offset,
                    });
                    offset += s.len() * rank;
                }
                if offset > CECH_RANK_LIMIT {
                    return Err(Error::InvalidInput(format!(
                        "Čech term ({p}, {q}) has rank {offset}, above the limit {CECH_RANK_LIMIT}"
                    )));
                }
                col.push(level);
                col_lookup.push(map);
            }
            blocks.push(col);
            lookup.push(col_lookup);
        }
        Ok(CechLayout {
            blocks,
            lookup,
            rank,
        })
    }

    pub fn term_rank(&self, p: usize, q: usize) -> usize {
        self.blocks[p][q]
            .last()
            .map_or(0, |b| b.offset + b.set.len() * self.rank)
    }

    pub fn block(&self, p: usize, q: usize, indices: &[usize]) -> Option<&CechBlock> {
        self.lookup[p][q]
            .get(indices)
            .map(|&i| &self.blocks[p][q][i])
    }

    /// Coordinate of component `c` of the value at `x` on the block `indices`.
    pub fn position(
        &self,
        p: usize,
        q: usize,
        indices: &[usize],
        x: usize,
        c: usize,
    ) -> Option<usize> {
        let b = self.block(p, q, indices)?;
        let pos = b.set.binary_search(&x).ok()?;
        Some(b.offset + pos * self.rank + c)
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `Č^{p,q} = ∏_{j_0…j_q} Map(U^p_{j_0…j_q}, A)` with the alternating Čech
/// differential as `d_v` and `d_h = Σ_i (−1)^{i+q} D_i (ε^i)^*`.
pub fn cech_double_complex(
    space: &SemiSimplicialSet,
    cover: &SemiSimplicialCover,
    coeffs: &CoefficientSystem,
    q_max: usize,
) -> Result<DoubleComplex> {
    Ok(cech_double_complex_with_layout(space, cover, coeffs, q_max)?.0)
}

pub fn cech_double_complex_with_layout(
    space: &SemiSimplicialSet,
    cover: &SemiSimplicialCover,
    coeffs: &CoefficientSystem,
    q_max: usize,
) -> Result<(DoubleComplex, CechLayout)> {
    cover.validate(space)?;
    let a = coeffs.module();
    let r = a.rank();
    let layout = CechLayout::new(cover, q_max, r)?;
    let p_max = cover.k_max();
    let mut terms = Vec::new();
    let mut dh = Vec::new();
    let mut dv = Vec::new();
    for p in 0..=p_max {
        let mut col = Vec::new();
        for q in 0..=q_max {
            let points: usize = layout.blocks[p][q].iter().map(|b| b.set.len()).sum();
            col.push(a.underlying().power(points));
        }
        terms.push(col);
        let mut vcol = Vec::new();
        for q in 0..q_max {
            let mut m = IntMatrix::zeros(layout.term_rank(p, q + 1), layout.term_rank(p, q));
            for b in &layout.blocks[p][q + 1] {
                for m_drop in 0..=q + 1 {
                    let mut face = b.indices.clone();
                    face.remove(m_drop);
                    let sign = BigInt::from(if m_drop % 2 == 0 { 1 } else { -1 });
                    for (pos, &x) in b.set.iter().enumerate() {
                        for c in 0..r {
                            let col_i = layout
                                .position(p, q, &face, x, c)
                                .expect("faces of nonempty intersections");
                            m[(b.offset + pos * r + c, col_i)] += &sign;
                        }
                    }
                }
            }
            vcol.push(m);
        }
        dv.push(vcol);
    }
    for p in 0..p_max {
        let mut hcol = Vec::new();
        for q in 0..=q_max {
            let mut m = IntMatrix::zeros(layout.term_rank(p + 1, q), layout.term_rank(p, q));
            for b in &layout.blocks[p + 1][q] {
                for i in 0..=p + 1 {
                    let src: Vec<usize> =
                        b.indices.iter().map(|&j| cover.eps(p + 1, i, j)).collect();
                    let sign: i64 = if (i + q) % 2 == 0 { 1 } else { -1 };
                    for (pos, &x) in b.set.iter().enumerate() {
                        let y = space.face(p + 1, i, x);
                        let col0 = layout.position(p, q, &src, y, 0).ok_or_else(|| {
                            Error::InvalidInput("cover violates containment".into())
                        })?;
                        let row0 = b.offset + pos * r;
                        if i == 0 {
                            let act = a.action(coeffs.twist(p + 1, x));
                            for s in 0..r {
                                for t in 0..r {
                                    let v = &act[(s, t)] * sign;
                                    m[(row0 + s, col0 + t)] += v;
                                }
                            }
                        } else {
                            for s in 0..r {
                                m[(row0 + s, col0 + s)] += sign;
                            }
                        }
                    }
                }
            }
            hcol.push(m);
        }
        dh.push(hcol);
    }
    let dc = DoubleComplex::with_bound(terms, dh, dv, p_max.max(q_max))?;
    Ok((dc, layout))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::cech::{nerve, pointwise_cover, singleton_cover, translate_cover};
    use crate::double_complex::page;
    use crate::group_cohomology::{cohomology, FiniteGroup};

    fn compare_with_bar(module: &GModule, cover: &SemiSimplicialCover, x: &SemiSimplicialSet) {
        let coeffs = CoefficientSystem::nerve(module, x).unwrap();
        let dc = cech_double_complex(x, cover, &coeffs, 4).unwrap();
        let tot = dc.total_complex();
        for n in 0..=3 {
            assert_eq!(
                tot.cohomology_at(n).unwrap().structure(),
                cohomology(module, n).unwrap().structure(),
                "degree {n}"
            );
        }
    }

    #[test]
    fn singleton_and_pointwise_covers_give_bar_cohomology() {
        for m in [2, 3] {
            let g = FiniteGroup::cyclic(m);
            let x = nerve(&g, 4);
            let module = GModule::trivial(&g, FgAbelianGroup::cyclic(m as u64));
            compare_with_bar(&module, &singleton_cover(&x), &x);
            compare_with_bar(&module, &pointwise_cover(&x), &x);
        }
    }

    #[test]
    fn twisted_coefficients_and_identities() {
        let g = FiniteGroup::cyclic(2);
        let x = nerve(&g, 4);
        let sign = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        let coeffs = CoefficientSystem::nerve(&sign, &x).unwrap();
        assert!(coeffs.check_identities(&x, 1));
        compare_with_bar(&sign, &pointwise_cover(&x), &x);
    }

    #[test]
    fn pointwise_e1_lives_in_row_zero() {
        let g = FiniteGroup::cyclic(2);
        let x = nerve(&g, 3);
        let a = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let dc = cech_double_complex(
            &x,
            &pointwise_cover(&x),
            &CoefficientSystem::nerve(&a, &x).unwrap(),
            3,
        )
        .unwrap();
        let e1 = page(&dc, 1).unwrap();
        for p in 0..=3 {
            for q in 1..3 {
                assert!(e1.entry(p, q).is_trivial(), "({p}, {q})");
            }
            assert_eq!(e1.structure(p, 0).1.len(), x.size(p));
        }
    }

    #[test]
    fn translate_cover_total_cohomology() {
        let g = FiniteGroup::cyclic(2);
        let x = nerve(&g, 2);
        let a = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let cover = translate_cover(&g, &x, &[0, 1]).unwrap();
        let dc =
            cech_double_complex(&x, &cover, &CoefficientSystem::nerve(&a, &x).unwrap(), 2).unwrap();
        let tot = dc.total_complex();
        for n in 0..=1 {
            assert_eq!(
                tot.cohomology_at(n).unwrap().structure(),
                cohomology(&a, n).unwrap().structure()
            );
        }
    }
}

/// An element of one `Č^{p,q}`, stored block by block: for each index tuple
/// with nonempty intersection, the values at the (sorted) points of the
/// intersection. Missing tuples are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechElement {
    pub p: usize,
    pub q: usize,
    pub values: std::collections::BTreeMap<Vec<usize>, Vec<Vec<BigInt>>>,
}

/// Points of `U_{j_0} ∩ … ∩ U_{j_q}` at level `p`.
pub fn intersection(cover: &SemiSimplicialCover, p: usize, indices: &[usize]) -> Vec<usize> {
    let mut it = indices.iter();
    let Some(&first) = it.next() else {
        return Vec::new();
    };
    it.fold(cover.set(p, first).to_vec(), |acc, &j| {
        intersect(&acc, cover.set(p, j))
    })
}

/// All `(q + 1)`-tuples of level-`p` indices with nonempty intersection, with the intersections.
pub fn nonempty_tuples(
    cover: &SemiSimplicialCover,
    p: usize,
    q: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = (0..cover.count(p))
        .map(|j| (vec![j], cover.set(p, j).to_vec()))
        .collect();
    for _ in 0..q {
        let mut next = Vec::new();
        for (t, s) in &frontier {
            for j in 0..cover.count(p) {
                let meet = intersect(s, cover.set(p, j));
                if !meet.is_empty() {
                    let mut t2 = t.clone();
                    t2.push(j);
                    next.push((t2, meet));
                }
            }
        }
        frontier = next;
    }
    frontier
}

impl CechElement {
    pub fn zero(p: usize, q: usize) -> Self {
        CechElement {
            p,
            q,
            values: Default::default(),
        }
    }

    /// Builds an element from a rule `(indices, point) ↦ value`.
    pub fn from_fn(
        cover: &SemiSimplicialCover,
        p: usize,
        q: usize,
        mut f: impl FnMut(&[usize], usize) -> Vec<BigInt>,
    ) -> Self {
        let mut values = std::collections::BTreeMap::new();
        for (t, s) in nonempty_tuples(cover, p, q) {
            let v: Vec<Vec<BigInt>> = s.iter().map(|&x| f(&t, x)).collect();
            values.insert(t, v);
        }
        CechElement { p, q, values }
    }

    /// Value at `x` on the block `indices` (zero when absent).
    pub fn value(
        &self,
        cover: &SemiSimplicialCover,
        indices: &[usize],
        x: usize,
        rank: usize,
    ) -> Vec<BigInt> {
        self.values
            .get(indices)
            .and_then(|vals| {
                let s = intersection(cover, self.p, indices);
                s.binary_search(&x).ok().map(|pos| vals[pos].clone())
            })
            .unwrap_or_else(|| vec![BigInt::from(0); rank])
    }

    /// Whether every value is a relation of `A`.
    pub fn is_zero_in(&self, module: &GModule) -> bool {
        self.values
            .values()
            .all(|vals| vals.iter().all(|v| module.underlying().is_relation(v)))
    }

    pub fn sub(&self, other: &CechElement) -> CechElement {
        let mut out = self.clone();
        for (t, vals) in &other.values {
            let entry = out.values.entry(t.clone()).or_insert_with(|| {
                vals.iter()
                    .map(|v| vec![BigInt::from(0); v.len()])
                    .collect()
            });
            for (a, b) in entry.iter_mut().zip(vals) {
                for (x, y) in a.iter_mut().zip(b) {
                    *x -= y;
                }
            }
        }
        out
    }

    pub fn neg(&self) -> CechElement {
        CechElement::zero(self.p, self.q).sub(self)
    }

    /// Coordinates in `Č^{p,q}` under a layout.
    pub fn to_vector(&self, layout: &CechLayout) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::from(0); layout.term_rank(self.p, self.q)];
        for (t, vals) in &self.values {
            let b = layout.block(self.p, self.q, t).ok_or_else(|| {
                Error::InvalidInput("element has a block outside the layout".into())
            })?;
            for (pos, v) in vals.iter().enumerate() {
                for (c, x) in v.iter().enumerate() {
                    out[b.offset + pos * layout.rank + c] = x.clone();
                }
            }
        }
        Ok(out)
    }
}

/// The alternating Čech differential `Č^{p,q} → Č^{p,q+1}`.
pub fn apply_dv(cover: &SemiSimplicialCover, rank: usize, e: &CechElement) -> CechElement {
    CechElement::from_fn(cover, e.p, e.q + 1, |t, x| {
        let mut acc = vec![BigInt::from(0); rank];
        for m in 0..t.len() {
            let mut face = t.to_vec();
            face.remove(m);
            let v = e.value(cover, &face, x, rank);
            for (a, b) in acc.iter_mut().zip(v) {
                if m % 2 == 0 {
                    *a += b;
                } else {
                    *a -= b;
                }
            }
        }
        acc
    })
}

/// `d_h = Σ_i (−1)^{i+q} D_i (ε^i)^* : Č^{p,q} → Č^{p+1,q}`.
pub fn apply_dh(
    space: &SemiSimplicialSet,
    cover: &SemiSimplicialCover,
    coeffs: &CoefficientSystem,
    e: &CechElement,
) -> CechElement {
    let (p, q) = (e.p, e.q);
    let module = coeffs.module();
    let r = module.rank();
    CechElement::from_fn(cover, p + 1, q, |t, x| {
        let mut acc = vec![BigInt::from(0); r];
        for i in 0..=p + 1 {
            let src: Vec<usize> = t.iter().map(|&j| cover.eps(p + 1, i, j)).collect();
            let mut v = e.value(cover, &src, space.face(p + 1, i, x), r);
            if i == 0 {
                v = module.act(coeffs.twist(p + 1, x), &v);
            }
            let negative = (i + q) % 2 == 1;
            for (a, b) in acc.iter_mut().zip(v) {
                if negative {
                    *a -= b;
                } else {
                    *a += b;
                }
            }
        }
        acc
    })
}

#[cfg(test)]
mod element_tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::cech::{nerve, translate_cover};
    use crate::group_cohomology::FiniteGroup;

    #[test]
    fn direct_maps_agree_with_matrices() {
        let g = FiniteGroup::cyclic(2);
        let x = nerve(&g, 2);
        let a = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        let cover = translate_cover(&g, &x, &[0, 1]).unwrap();
        let coeffs = CoefficientSystem::nerve(&a, &x).unwrap();
        let (dc, layout) = cech_double_complex_with_layout(&x, &cover, &coeffs, 2).unwrap();
        let mut seed = 7i64;
        let e = CechElement::from_fn(&cover, 1, 1, |t, pt| {
            seed = (seed * 31 + (t[0] * 5 + t[1] * 3 + pt) as i64) % 11;
            vec![BigInt::from(seed - 5)]
        });
        let v = e.to_vector(&layout).unwrap();
        assert_eq!(
            apply_dh(&x, &cover, &coeffs, &e)
                .to_vector(&layout)
                .unwrap(),
            dc.dh(1, 1).mul_vec(&v)
        );
        assert_eq!(
            apply_dv(&cover, 1, &e).to_vector(&layout).unwrap(),
            dc.dv(1, 1).mul_vec(&v)
        );
    }
}

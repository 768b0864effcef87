use std::collections::BTreeMap;

use super::simplicial::{nerve_face, SemiSimplicialSet};
use crate::error::{Error, Result};
use crate::group_cohomology::{tuple_count, tuple_from_index, tuple_index, FiniteGroup};

/// Levelwise covers `(U_k^j)_{j ∈ J_k}` of `X_k` with index maps
/// `ε_k^i : J_k → J_{k−1}` such that `d_k^i(U_k^j) ⊆ U_{k−1}^{ε_k^i(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiSimplicialCover {
    /// `sets[k][j]`, sorted element lists.
    sets: Vec<Vec<Vec<usize>>>,
    /// `eps[k][i][j]` for `k ≥ 1`.
    eps: Vec<Vec<Vec<usize>>>,
}

impl SemiSimplicialCover {
    /// Checks the covering and containment properties against `x`.
    pub fn new(
        x: &SemiSimplicialSet,
        sets: Vec<Vec<Vec<usize>>>,
        eps: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let c = SemiSimplicialCover { sets, eps };
        c.validate(x)?;
        Ok(c)
    }

    pub fn validate(&self, x: &SemiSimplicialSet) -> Result<()> {
        if self.sets.len() != x.k_max() + 1 || self.eps.len() != self.sets.len() {
            return Err(Error::InvalidInput(
                "cover and space have different numbers of levels".into(),
            ));
        }
        for k in 0..=x.k_max() {
            let mut hit = vec![false; x.size(k)];
            for u in &self.sets[k] {
                for &e in u {
                    if e >= x.size(k) {
                        return Err(Error::InvalidInput(format!(
                            "cover set at level {k} leaves X_{k}"
                        )));
                    }
                    hit[e] = true;
                }
            }
            if let Some(e) = hit.iter().position(|h| !h) {
                return Err(Error::InvalidInput(format!(
                    "element {e} of X_{k} is not covered"
                )));
            }
            if k == 0 {
                continue;
            }
            if self.eps[k].len() != k + 1 {
                return Err(Error::InvalidInput(format!(
                    "level {k} needs {} index maps",
                    k + 1
                )));
            }
            for i in 0..=k {
                for (j, u) in self.sets[k].iter().enumerate() {
                    let t = *self.eps[k][i].get(j).ok_or_else(|| {
                        Error::InvalidInput(format!("ε_{k}^{i} is undefined on {j}"))
                    })?;
                    let target = self.sets[k - 1].get(t).ok_or_else(|| {
                        Error::InvalidInput(format!("ε_{k}^{i}({j}) is not an index"))
                    })?;
                    if let Some(&e) = u
                        .iter()
                        .find(|&&e| target.binary_search(&x.face(k, i, e)).is_err())
                    {
                        return Err(Error::InvalidInput(format!(
                            "d_{k}^{i} maps element {e} of U_{k}^{j} outside U_{}^{t}",
                            k - 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn k_max(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.sets[k].len()
    }

    pub fn set(&self, k: usize, j: usize) -> &[usize] {
        &self.sets[k][j]
    }

    pub fn sets(&self, k: usize) -> &[Vec<usize>] {
        &self.sets[k]
    }

    /// `ε_k^i(j)`.
    pub fn eps(&self, k: usize, i: usize, j: usize) -> usize {
        self.eps[k][i][j]
    }
}

/// Extends a cover of `X_0` through all levels: `U_k` indexed by tuples
/// `(j_0, …, j_k)` of level-`(k−1)` indices with `⋂ (d^i)^{-1} U_{j_i}`
/// nonempty, ordered lexicographically, with `ε^i` the `i`-th entry.
pub fn refine_cover(x: &SemiSimplicialSet, base: Vec<Vec<usize>>) -> Result<SemiSimplicialCover> {
    if base.is_empty() {
        return Err(Error::InvalidInput("empty cover".into()));
    }
    let mut base: Vec<Vec<usize>> = base
        .into_iter()
        .map(|mut u| {
            u.sort_unstable();
            u.dedup();
            u
        })
        .collect();
    base.retain(|u| !u.is_empty());
    let mut sets = vec![base];
    let mut eps = vec![Vec::new()];
    for k in 1..=x.k_max() {
        let prev = &sets[k - 1];
        // membership of each element of X_{k−1} in the previous sets
        let mut member: Vec<Vec<usize>> = vec![Vec::new(); x.size(k - 1)];
        for (j, u) in prev.iter().enumerate() {
            for &e in u {
                member[e].push(j);
            }
        }
        let mut level: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for e in 0..x.size(k) {
            let choices: Vec<&Vec<usize>> = (0..=k).map(|i| &member[x.face(k, i, e)]).collect();
            for_each_choice(&choices, &mut |t| {
                level.entry(t.to_vec()).or_default().push(e)
            });
        }
        let (keys, us): (Vec<Vec<usize>>, Vec<Vec<usize>>) = level.into_iter().unzip();
        let e_k = (0..=k)
            .map(|i| keys.iter().map(|t| t[i]).collect())
            .collect();
        sets.push(us);
        eps.push(e_k);
    }
    SemiSimplicialCover::new(x, sets, eps)
}

fn for_each_choice(choices: &[&Vec<usize>], f: &mut impl FnMut(&[usize])) {
    fn go(choices: &[&Vec<usize>], acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == choices.len() {
            f(acc);
            return;
        }
        for &c in choices[acc.len()] {
            acc.push(c);
            go(choices, acc, f);
            acc.pop();
        }
    }
    go(choices, &mut Vec::with_capacity(choices.len()), f);
}

/// Every level covered by the whole set.
pub fn singleton_cover(x: &SemiSimplicialSet) -> SemiSimplicialCover {
    let sets = (0..=x.k_max())
        .map(|k| vec![(0..x.size(k)).collect()])
        .collect();
    let eps = (0..=x.k_max())
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                vec![vec![0]; k + 1]
            }
        })
        .collect();
    SemiSimplicialCover::new(x, sets, eps).expect("the singleton cover is valid")
}

/// Every level covered by its points, `ε^i = d^i`.
pub fn pointwise_cover(x: &SemiSimplicialSet) -> SemiSimplicialCover {
    let sets = (0..=x.k_max())
        .map(|k| (0..x.size(k)).map(|e| vec![e]).collect())
        .collect();
    let eps = (0..=x.k_max())
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                (0..=k)
                    .map(|i| (0..x.size(k)).map(|e| x.face(k, i, e)).collect())
                    .collect()
            }
        })
        .collect();
    SemiSimplicialCover::new(x, sets, eps).expect("the pointwise cover is valid")
}

/// The cover of the nerve indexed by the nerve itself: `J_k = G^k`, level one
/// covered by the translates `gV`, level `k ≥ 2` by
/// `U_g = {x : d^i x ∈ U_{d_i g} for all i}`, and `ε^i` the nerve faces.
/// At level two this is `V_{g,h} = {(x, y) : x ∈ gV, y ∈ hV, xy ∈ ghV}`.
pub fn translate_cover(
    g: &FiniteGroup,
    x: &SemiSimplicialSet,
    v: &[usize],
) -> Result<SemiSimplicialCover> {
    if !v.contains(&g.identity()) {
        return Err(Error::InvalidInput("V must contain the identity".into()));
    }
    let n = g.order();
    let mut sets: Vec<Vec<Vec<usize>>> = vec![vec![vec![0]]];
    let mut eps = vec![Vec::new()];
    for k in 1..=x.k_max() {
        let count = tuple_count(n, k);
        let mut level = Vec::with_capacity(count);
        for j in 0..count {
            let t = tuple_from_index(n, k, j);
            let u: Vec<usize> = if k == 1 {
                let mut u: Vec<usize> = v.iter().map(|&y| g.mul(t[0], y)).collect();
                u.sort_unstable();
                u.dedup();
                u
            } else {
                let faces: Vec<usize> = (0..=k)
                    .map(|i| tuple_index(n, &nerve_face(g, &t, i)))
                    .collect();
                (0..x.size(k))
                    .filter(|&e| {
                        (0..=k).all(|i| {
                            sets[k - 1][faces[i]]
                                .binary_search(&x.face(k, i, e))
                                .is_ok()
                        })
                    })
                    .collect()
            };
            level.push(u);
        }
        let e_k = (0..=k)
            .map(|i| {
                (0..count)
                    .map(|j| tuple_index(n, &nerve_face(g, &tuple_from_index(n, k, j), i)))
                    .collect()
            })
            .collect();
        sets.push(level);
        eps.push(e_k);
    }
    SemiSimplicialCover::new(x, sets, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::nerve;

    #[test]
    fn singleton_base_refines_to_full_sets() {
        let x = nerve(&FiniteGroup::cyclic(2), 3);
        let c = refine_cover(&x, vec![vec![0]]).unwrap();
        for k in 0..=3 {
            assert_eq!(c.count(k), 1);
            assert_eq!(c.set(k, 0).len(), x.size(k));
        }
        assert_eq!(c, singleton_cover(&x));
    }

    #[test]
    fn two_set_base_satisfies_containment() {
        let x = nerve(&FiniteGroup::cyclic(2), 2);
        let c = refine_cover(&x, vec![vec![0], vec![0]]).unwrap();
        assert_eq!(c.count(1), 4);
        assert_eq!(c.count(2), 64);
        c.validate(&x).unwrap();
    }

    #[test]
    fn refinement_of_points_is_by_points() {
        // the standard 2-simplex: edges 01, 02, 12 and one triangle
        let x = SemiSimplicialSet::new(
            vec![3, 3, 1],
            vec![
                vec![],
                vec![vec![1, 2, 2], vec![0, 0, 1]],
                vec![vec![2], vec![1], vec![0]],
            ],
        )
        .unwrap();
        let c = refine_cover(&x, vec![vec![0], vec![1], vec![2]]).unwrap();
        for k in 0..=2 {
            assert_eq!(c.count(k), x.size(k));
            assert!(c.sets(k).iter().all(|u| u.len() == 1));
        }
    }

    #[test]
    fn translate_cover_level_two() {
        let g = FiniteGroup::cyclic(3);
        let x = nerve(&g, 3);
        let c = translate_cover(&g, &x, &[0, 1]).unwrap();
        // V_{g,h} contains (g, h) and sits over ε = (h, gh, g)
        for a in 0..3 {
            for b in 0..3 {
                let j = tuple_index(3, &[a, b]);
                assert!(c.set(2, j).contains(&j));
                assert_eq!(
                    (c.eps(2, 0, j), c.eps(2, 1, j), c.eps(2, 2, j)),
                    (b, g.mul(a, b), a)
                );
            }
        }
    }
}

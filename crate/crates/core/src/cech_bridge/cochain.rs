use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group_cohomology::{
    is_cocycle, tuple_count, tuple_from_index, tuple_index, Cochain, FiniteGroup, GModule,
};

/// The cover `(gV)_{g∈G}` of `G` by translates of a subset `V ∋ e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslateCover {
    group: FiniteGroup,
    v: Vec<usize>,
    sets: Vec<Vec<usize>>,
}

impl TranslateCover {
    pub fn new(group: &FiniteGroup, v: &[usize]) -> Result<Self> {
        if !v.contains(&group.identity()) {
            return Err(Error::InvalidInput("V must contain the identity".into()));
        }
        if v.iter().any(|&x| x >= group.order()) {
            return Err(Error::InvalidInput("V contains a non-element".into()));
        }
        let mut v = v.to_vec();
        v.sort_unstable();
        v.dedup();
        let sets = (0..group.order())
            .map(|g| {
                let mut s: Vec<usize> = v.iter().map(|&y| group.mul(g, y)).collect();
                s.sort_unstable();
                s
            })
            .collect();
        Ok(TranslateCover {
            group: group.clone(),
            v,
            sets,
        })
    }

    /// `V = G`: every intersection is all of `G`.
    pub fn full(group: &FiniteGroup) -> Self {
        let all: Vec<usize> = (0..group.order()).collect();
        Self::new(group, &all).expect("G contains the identity")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    pub fn set(&self, g: usize) -> &[usize] {
        &self.sets[g]
    }

    /// `g₁V ∩ … ∩ g_kV`, all of `G` for the empty tuple.
    pub fn intersection(&self, t: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.group.order()).collect();
        for &g in t {
            out.retain(|x| self.sets[g].binary_search(x).is_ok());
        }
        out
    }
}

/// A Čech cochain on a translate cover: for every tuple `(g₁,…,g_k)` a function
/// `g₁V ∩ … ∩ g_kV → A`. The Čech degree is `k − 1`; `k = 0` is a global function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechCochain {
    arity: usize,
    rank: usize,
    /// Indexed by the tuple; values at the sorted points of the intersection.
    values: Vec<Vec<Vec<BigInt>>>,
}

impl CechCochain {
    pub fn from_fn(
        cover: &TranslateCover,
        arity: usize,
        rank: usize,
        mut f: impl FnMut(&[usize], usize) -> Vec<BigInt>,
    ) -> Self {
        let n = cover.group.order();
        let values = (0..tuple_count(n, arity))
            .map(|idx| {
                let t = tuple_from_index(n, arity, idx);
                cover
                    .intersection(&t)
                    .into_iter()
                    .map(|x| f(&t, x))
                    .collect()
            })
            .collect();
        CechCochain {
            arity,
            rank,
            values,
        }
    }

    pub fn zero(cover: &TranslateCover, arity: usize, rank: usize) -> Self {
        Self::from_fn(cover, arity, rank, |_, _| vec![BigInt::from(0); rank])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Čech degree `arity − 1`.
    pub fn degree(&self) -> isize {
        self.arity as isize - 1
    }

    /// Value at `x` on the block `t`; `None` off the intersection.
    pub fn value(&self, cover: &TranslateCover, t: &[usize], x: usize) -> Option<&[BigInt]> {
        let n = cover.group.order();
        let pos = cover.intersection(t).binary_search(&x).ok()?;
        Some(&self.values[tuple_index(n, t)][pos])
    }

    /// Every `(tuple, point, value)`.
    pub fn entries<'a>(
        &'a self,
        cover: &'a TranslateCover,
    ) -> impl Iterator<Item = (Vec<usize>, usize, &'a [BigInt])> + 'a {
        let n = cover.group.order();
        self.values.iter().enumerate().flat_map(move |(idx, vals)| {
            let t = tuple_from_index(n, self.arity, idx);
            let pts = cover.intersection(&t);
            pts.into_iter()
                .zip(vals.iter())
                .map(move |(x, v)| (t.clone(), x, v.as_slice()))
        })
    }

    /// Number of evaluations stored.
    pub fn size(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }

    /// `δ̌c_{g₀…g_k}(x) = Σ_m (−1)^m c_{g₀…ĝ_m…g_k}(x)`.
    pub fn cech_differential(&self, cover: &TranslateCover) -> CechCochain {
        let r = self.rank;
        CechCochain::from_fn(cover, self.arity + 1, r, |t, x| {
            let mut acc = vec![BigInt::from(0); r];
            for m in 0..t.len() {
                let mut face = t.to_vec();
                face.remove(m);
                let v = self
                    .value(cover, &face, x)
                    .expect("a face contains the intersection");
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

    pub fn sub(&self, other: &CechCochain) -> CechCochain {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(u, v)| u.iter().zip(v).map(|(x, y)| x - y).collect())
                    .collect()
            })
            .collect();
        CechCochain {
            arity: self.arity,
            rank: self.rank,
            values,
        }
    }

    /// Applies a linear map to every value.
    pub fn map_values(&self, f: impl Fn(&[BigInt]) -> Vec<BigInt>, rank: usize) -> CechCochain {
        CechCochain {
            arity: self.arity,
            rank,
            values: self
                .values
                .iter()
                .map(|vals| vals.iter().map(|v| f(v)).collect())
                .collect(),
        }
    }

    /// Whether every value is a relation of `A`.
    pub fn is_zero_in(&self, module: &GModule) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|v| module.underlying().is_relation(v))
    }

    /// Whether `self − other` vanishes in `A` everywhere; `false` on a shape mismatch.
    pub fn equals_in(&self, other: &CechCochain, module: &GModule) -> bool {
        self.arity == other.arity
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.len() == b.len())
            && self.sub(other).is_zero_in(module)
    }

    /// The restriction to a cover by smaller translates `gV' ⊂ gV`.
    pub fn restrict(
        &self,
        cover: &TranslateCover,
        smaller: &TranslateCover,
    ) -> Result<CechCochain> {
        if smaller.v.iter().any(|x| cover.v.binary_search(x).is_err()) {
            return Err(Error::InvalidInput("restriction needs V' ⊂ V".into()));
        }
        Ok(CechCochain::from_fn(
            smaller,
            self.arity,
            self.rank,
            |t, x| {
                self.value(cover, t, x)
                    .expect("smaller intersections are contained in larger ones")
                    .to_vec()
            },
        ))
    }
}

fn add_into(acc: &mut [BigInt], v: &[BigInt], sign: bool) {
    for (a, b) in acc.iter_mut().zip(v) {
        if sign {
            *a += b;
        } else {
            *a -= b;
        }
    }
}

/// `(s₁, s₁⁻¹s₂, …, s_{k−1}⁻¹s_k, s_k⁻¹x)`, or `(x)` for the empty tuple.
fn chain_with_point(g: &FiniteGroup, s: &[usize], x: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.len() + 1);
    let mut prev = g.identity();
    for &si in s.iter().chain(std::iter::once(&x)) {
        out.push(g.mul(g.inv(prev), si));
        prev = si;
    }
    out
}

/// `(s₁, s₁⁻¹s₂, …, s_{k−1}⁻¹s_k)`.
fn chain(g: &FiniteGroup, s: &[usize]) -> Vec<usize> {
    let mut out = chain_with_point(g, s, g.identity());
    out.pop();
    out
}

/// `τ` on an arbitrary `n`-cochain, `n ≥ 1`:
/// `τ(f)_{g₁…g_n}(x) = g₁.f(g₁⁻¹g₂, …, g_n⁻¹x) − (−1)^n f(g₁, g₁⁻¹g₂, …, g_{n−1}⁻¹g_n)`.
pub fn tau_of_cochain(
    module: &GModule,
    f: &Cochain,
    cover: &TranslateCover,
) -> Result<CechCochain> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::InvalidInput(
            "τ needs a cochain of positive degree".into(),
        ));
    }
    check_group(module, cover)?;
    let g = module.group();
    let order = g.order();
    let r = module.rank();
    Ok(CechCochain::from_fn(cover, n, r, |t, x| {
        let first = &chain_with_point(g, t, x)[1..];
        let mut acc = module.act(t[0], f.value_at(order, first));
        add_into(&mut acc, f.value_at(order, &chain(g, t)), n % 2 == 1);
        acc
    }))
}

/// `τ(f)` for an `n`-cocycle `f`; a Čech cochain of degree `n − 1`.
pub fn tau(module: &GModule, f: &Cochain, cover: &TranslateCover) -> Result<CechCochain> {
    if !is_cocycle(module, f)? {
        return Err(Error::NotACocycle(format!(
            "τ needs a cocycle; f has a nonzero coboundary in degree {}",
            f.degree() + 1
        )));
    }
    tau_of_cochain(module, f, cover)
}

/// `κ(f)_{g₂…g_n}(x) = f(g₂, g₂⁻¹g₃, …, g_n⁻¹x)`, so that `τ(f) = δ̌κ(f)` for cocycles.
pub fn kappa(module: &GModule, f: &Cochain, cover: &TranslateCover) -> Result<CechCochain> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::InvalidInput(
            "κ needs a cochain of positive degree".into(),
        ));
    }
    check_group(module, cover)?;
    let g = module.group();
    let order = g.order();
    Ok(CechCochain::from_fn(cover, n - 1, module.rank(), |t, x| {
        f.value_at(order, &chain_with_point(g, t, x)).to_vec()
    }))
}

/// `ρ(b)` for an `(n−1)`-cochain `b`:
/// `ρ(b)_{g₁…g_{n−1}}(x) = g₁.b(g₁⁻¹g₂, …, g_{n−1}⁻¹x) + (−1)^n b(g₁, …, g_{n−2}⁻¹g_{n−1})`,
/// satisfying `δ̌ρ(b) = τ(d b)`. For `n = 1` this reads `ρ(b)(x) = x.b − b`.
pub fn rho(module: &GModule, b: &Cochain, cover: &TranslateCover) -> Result<CechCochain> {
    check_group(module, cover)?;
    let m = b.degree();
    let n = m + 1;
    let g = module.group();
    let order = g.order();
    Ok(CechCochain::from_fn(cover, m, module.rank(), |t, x| {
        if m == 0 {
            let mut acc = module.act(x, b.value_at(order, &[]));
            add_into(&mut acc, b.value_at(order, &[]), false);
            return acc;
        }
        let first = &chain_with_point(g, t, x)[1..];
        let mut acc = module.act(t[0], b.value_at(order, first));
        add_into(&mut acc, b.value_at(order, &chain(g, t)), n % 2 == 0);
        acc
    }))
}

fn check_group(module: &GModule, cover: &TranslateCover) -> Result<()> {
    if module.group() != &cover.group {
        return Err(Error::InvalidInput(
            "cover and module live over different groups".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::group_differential;
    use crate::intlinalg::int_vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2() -> (FiniteGroup, GModule) {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        (g, m)
    }

    #[test]
    fn zero_goes_to_zero() {
        let (g, m) = z2();
        let c = TranslateCover::full(&g);
        let t = tau(&m, &Cochain::zero(&m, 2), &c).unwrap();
        assert!(t.is_zero_in(&m));
        assert_eq!(t.size(), 8);
    }

    #[test]
    fn tau_of_nontrivial_2_cocycle_is_cech_closed() {
        let (g, m) = z2();
        let c = TranslateCover::full(&g);
        let f = Cochain::new(&m, 2, int_vec(&[0, 0, 0, 1])).unwrap();
        let t = tau(&m, &f, &c).unwrap();
        assert!(!t.is_zero_in(&m));
        assert!(t.cech_differential(&c).is_zero_in(&m));
        assert!(t.equals_in(&kappa(&m, &f, &c).unwrap().cech_differential(&c), &m));
    }

    #[test]
    fn non_cocycle_rejected() {
        let g = FiniteGroup::cyclic(3);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(3));
        let mut v = vec![0i64; 9];
        v[4] = 1;
        let f = Cochain::new(&m, 2, int_vec(&v)).unwrap();
        assert!(matches!(
            tau(&m, &f, &TranslateCover::full(&g)),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn rho_identity_in_low_degrees() {
        let g = FiniteGroup::cyclic(3);
        let t = crate::intlinalg::IntMatrix::from_i64_rows(&[vec![0, -1], vec![1, -1]], 2);
        let m = GModule::cyclic_action(&g, FgAbelianGroup::from_invariants(&int_vec(&[3, 3])), &t)
            .unwrap();
        let c = TranslateCover::full(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for deg in 0..3 {
            let b = Cochain::random(&m, deg, &mut rng, -2..=2);
            let db = group_differential(&m, &b).unwrap();
            let lhs = rho(&m, &b, &c).unwrap().cech_differential(&c);
            assert!(
                lhs.equals_in(&tau_of_cochain(&m, &db, &c).unwrap(), &m),
                "degree {deg}"
            );
        }
    }

    #[test]
    fn restriction_to_smaller_translates() {
        let g = FiniteGroup::cyclic(4);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(4));
        let big = TranslateCover::full(&g);
        let small = TranslateCover::new(&g, &[0, 1]).unwrap();
        let f = Cochain::from_fn(&m, 1, |t| vec![BigInt::from(t[0] as i64)]);
        let t_big = tau(&m, &f, &big).unwrap();
        let t_small = tau(&m, &f, &small).unwrap();
        assert_eq!(t_big.restrict(&big, &small).unwrap(), t_small);
        assert!(t_small.size() < t_big.size());
    }
}

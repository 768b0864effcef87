use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::functor::{shifting_sequence, vanishes_on_soft, DeltaFunctor};
use super::verify::{compare_maps, Witness};
use crate::abgroups::{AbMorphism, PreimagePolicy, Preimager};
use crate::error::{Error, Result};
use crate::group_cohomology::{GModule, GMorphism, ModuleSes};
use crate::intlinalg::IntMatrix;
use crate::soft_resolution::quotient_module_of;

/// The maps `φ^n_A : H^n(A) → K^n(A)` for one module and `0 ≤ n ≤ n_max`.
#[derive(Clone, Debug)]
pub struct ComparisonMorphism {
    pub source: String,
    pub target: String,
    pub module: GModule,
    pub maps: Vec<AbMorphism>,
}

impl ComparisonMorphism {
    pub fn degree(&self, n: usize) -> &AbMorphism {
        &self.maps[n]
    }

    pub fn n_max(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn is_isomorphism(&self, n: usize) -> bool {
        let m = &self.maps[n];
        m.is_injective() && m.is_surjective()
    }

    /// `other ∘ self` in each degree; `other` must start where `self` ends.
    pub fn then(&self, other: &ComparisonMorphism) -> Result<Vec<AbMorphism>> {
        self.maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.then(b))
            .collect()
    }
}

/// The canonical degree-zero map, through the identifications of both
/// `H^0(A)` and `K^0(A)` with the invariants `A^G`.
pub fn canonical_phi0<H, K>(h: &H, k: &K, a: &GModule) -> Result<AbMorphism>
where
    H: DeltaFunctor + ?Sized,
    K: DeltaFunctor + ?Sized,
{
    let h0 = h.evaluate(a, 0)?;
    let k0 = k.evaluate(a, 0)?;
    let mut m = IntMatrix::zeros(k0.ngens(), h0.ngens());
    for t in 0..h0.ngens() {
        let mut e = vec![BigInt::from(0); h0.ngens()];
        e[t] = BigInt::one();
        let v = h.class_to_invariant(a, &e)?;
        for (s, x) in k.invariant_to_class(a, &v)?.into_iter().enumerate() {
            m[(s, t)] = x;
        }
    }
    AbMorphism::new(h0.as_group(), k0.as_group(), m)
}

/// Extends the canonical degree-zero map to all degrees `≤ n_max` by
/// dimension shifting along `0 → A → E_G(A) → B_G(A) → 0`.
pub fn comparison_morphism<H, K>(
    h: &H,
    k: &K,
    a: &GModule,
    n_max: usize,
    policy: PreimagePolicy,
) -> Result<ComparisonMorphism>
where
    H: DeltaFunctor + ?Sized,
    K: DeltaFunctor + ?Sized,
{
    comparison_morphism_with(h, k, a, n_max, policy, &|m: &GModule| {
        canonical_phi0(h, k, m)
    })
}

/// As [`comparison_morphism`] with a caller-supplied degree-zero map.
pub fn comparison_morphism_with<H, K>(
    h: &H,
    k: &K,
    a: &GModule,
    n_max: usize,
    policy: PreimagePolicy,
    phi0: &dyn Fn(&GModule) -> Result<AbMorphism>,
) -> Result<ComparisonMorphism>
where
    H: DeltaFunctor + ?Sized,
    K: DeltaFunctor + ?Sized,
{
    // U^j(A) for j < n_max together with their shifting sequences
    let mut levels = vec![a.clone()];
    let mut shifts: Vec<ModuleSes> = Vec::new();
    for j in 0..n_max {
        if !vanishes_on_soft(h, &levels[j], n_max - j)? {
            return Err(Error::PreconditionFailed(format!(
                "{} does not vanish on the soft module of the level-{j} shift",
                h.name()
            )));
        }
        let s = shifting_sequence(&levels[j])?;
        levels.push(quotient_module_of(&levels[j])?);
        shifts.push(s);
    }
    let mut ctx = Ctx {
        h,
        k,
        levels,
        shifts,
        policy,
        phi0,
        memo: HashMap::new(),
    };
    let maps = (0..=n_max)
        .map(|n| ctx.phi(0, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonMorphism {
        source: h.name(),
        target: k.name(),
        module: a.clone(),
        maps,
    })
}

struct Ctx<'a, H: ?Sized, K: ?Sized> {
    h: &'a H,
    k: &'a K,
    levels: Vec<GModule>,
    shifts: Vec<ModuleSes>,
    policy: PreimagePolicy,
    phi0: &'a dyn Fn(&GModule) -> Result<AbMorphism>,
    memo: HashMap<(usize, usize), AbMorphism>,
}

impl<H: DeltaFunctor + ?Sized, K: DeltaFunctor + ?Sized> Ctx<'_, H, K> {
    /// `φ^n` on `U^j(A)`.
    fn phi(&mut self, j: usize, n: usize) -> Result<AbMorphism> {
        if let Some(m) = self.memo.get(&(j, n)) {
            return Ok(m.clone());
        }
        let out = if n == 0 {
            (self.phi0)(&self.levels[j])?
        } else {
            let below = self.phi(j + 1, n - 1)?;
            let shift = &self.shifts[j];
            let dh = self.h.connecting(shift, n - 1, self.policy)?;
            let dk = self.k.connecting(shift, n - 1, self.policy)?;
            let solver = Preimager::new(&dh);
            let mut rng = match self.policy {
                PreimagePolicy::Randomized { seed } => Some(ChaCha8Rng::seed_from_u64(
                    seed ^ ((j as u64) << 32) ^ n as u64,
                )),
                PreimagePolicy::Canonical => None,
            };
            let (src, tgt) = (dh.target().rank(), dk.target().rank());
            let mut m = IntMatrix::zeros(tgt, src);
            for z in 0..src {
                let mut e = vec![BigInt::from(0); src];
                e[z] = BigInt::one();
                let mut w = solver.preimage(&e).ok_or_else(|| {
                    Error::PreconditionFailed(format!(
                        "connecting map of {} in degree {} is not surjective",
                        self.h.name(),
                        n - 1
                    ))
                })?;
                if let Some(rng) = rng.as_mut() {
                    for g in solver.kernel_generators() {
                        let c = BigInt::from(rng.gen_range(-3i64..=3));
                        for (i, x) in g.entries() {
                            w[*i] += &c * x;
                        }
                    }
                }
                let image = dk.apply(&below.apply(&w));
                let image = dk.target().normal_form(&image);
                for (s, x) in image.into_iter().enumerate() {
                    m[(s, z)] = x;
                }
            }
            AbMorphism::new(dh.target().clone(), dk.target().clone(), m)?
        };
        self.memo.insert((j, n), out.clone());
        Ok(out)
    }
}

/// `K(f) ∘ φ_A = φ_B ∘ H(f)` in degree `n`, or the first failing generator.
pub fn naturality_witness<H, K>(
    h: &H,
    k: &K,
    phi_a: &ComparisonMorphism,
    phi_b: &ComparisonMorphism,
    f: &GMorphism,
    n: usize,
) -> Result<Option<Witness>>
where
    H: DeltaFunctor + ?Sized,
    K: DeltaFunctor + ?Sized,
{
    let left = phi_a.degree(n).then(&k.induced(f, n)?)?;
    let right = h.induced(f, n)?.then(phi_b.degree(n))?;
    Ok(compare_maps(&left, &right))
}

/// `φ^{n+1}_A ∘ δ_H = δ_K ∘ φ^n_C` for `0 → A → B → C → 0`.
pub fn connecting_witness<H, K>(
    h: &H,
    k: &K,
    phi_a: &ComparisonMorphism,
    phi_c: &ComparisonMorphism,
    ses: &ModuleSes,
    n: usize,
    policy: PreimagePolicy,
) -> Result<Option<Witness>>
where
    H: DeltaFunctor + ?Sized,
    K: DeltaFunctor + ?Sized,
{
    let left = h.connecting(ses, n, policy)?.then(phi_a.degree(n + 1))?;
    let right = phi_c.degree(n).then(&k.connecting(ses, n, policy)?)?;
    Ok(compare_maps(&left, &right))
}

/// Whether each map is the identity on the quotient.
pub fn is_identity(maps: &[AbMorphism]) -> bool {
    maps.iter().all(|m| {
        m.source().rank() == m.target().rank() && m.equals(&AbMorphism::identity(m.source()))
    })
}

use num_bigint::BigInt;

use crate::abgroups::{AbMorphism, CohomologyGroup, PreimagePolicy};
use crate::error::Result;
use crate::group_cohomology::{
    bar_ses, cohomology, induced_on_cohomology, GModule, GMorphism, ModuleSes,
};
use crate::intlinalg::IntMatrix;
use crate::soft_resolution::{sm_ses, soft_module_of, SmComplex};

/// A cohomological δ-functor on modules over a fixed finite group, given by
/// its values, induced maps and connecting maps (all in the cohomology
/// coordinates of [`CohomologyGroup`]).
pub trait DeltaFunctor {
    fn name(&self) -> String;

    fn evaluate(&self, a: &GModule, n: usize) -> Result<CohomologyGroup>;

    fn induced(&self, f: &GMorphism, n: usize) -> Result<AbMorphism>;

    fn connecting(&self, ses: &ModuleSes, n: usize, policy: PreimagePolicy) -> Result<AbMorphism>;

    /// Coordinates in `F^0(A)` of an invariant element of `A`.
    fn invariant_to_class(&self, a: &GModule, v: &[BigInt]) -> Result<Vec<BigInt>>;

    /// An invariant element of `A` representing the given `F^0(A)` coordinates.
    fn class_to_invariant(&self, a: &GModule, coords: &[BigInt]) -> Result<Vec<BigInt>>;
}

/// Cohomology of the bar complex.
#[derive(Clone, Copy, Debug, Default)]
pub struct BarFunctor;

impl DeltaFunctor for BarFunctor {
    fn name(&self) -> String {
        "bar".into()
    }

    fn evaluate(&self, a: &GModule, n: usize) -> Result<CohomologyGroup> {
        cohomology(a, n)
    }

    fn induced(&self, f: &GMorphism, n: usize) -> Result<AbMorphism> {
        induced_on_cohomology(f, n)
    }

    fn connecting(&self, ses: &ModuleSes, n: usize, policy: PreimagePolicy) -> Result<AbMorphism> {
        let s = bar_ses(ses, n + 2)?;
        let hc = cohomology(ses.c(), n)?;
        let ha = cohomology(ses.a(), n + 1)?;
        s.connecting_between(n, &hc, &ha, policy)
    }

    fn invariant_to_class(&self, a: &GModule, v: &[BigInt]) -> Result<Vec<BigInt>> {
        cohomology(a, 0)?.classify(v)
    }

    fn class_to_invariant(&self, a: &GModule, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(cohomology(a, 0)?.lift(coords))
    }
}

/// Cohomology of the invariants of the soft resolution.
#[derive(Clone, Copy, Debug, Default)]
pub struct SmFunctor;

impl DeltaFunctor for SmFunctor {
    fn name(&self) -> String {
        "sm".into()
    }

    fn evaluate(&self, a: &GModule, n: usize) -> Result<CohomologyGroup> {
        SmComplex::new(a, n)?.cohomology(n)
    }

    fn induced(&self, f: &GMorphism, n: usize) -> Result<AbMorphism> {
        let s = SmComplex::new(f.source(), n)?;
        let t = SmComplex::new(f.target(), n)?;
        s.induced(f, &t, n)
    }

    fn connecting(&self, ses: &ModuleSes, n: usize, policy: PreimagePolicy) -> Result<AbMorphism> {
        let sa = SmComplex::new(ses.a(), n + 1)?;
        let sb = SmComplex::new(ses.b(), n + 1)?;
        let sc = SmComplex::new(ses.c(), n + 1)?;
        let hc = sc.cohomology(n)?;
        let ha = sa.cohomology(n + 1)?;
        sm_ses(ses, &sa, &sb, &sc)?.connecting_between(n, &hc, &ha, policy)
    }

    fn invariant_to_class(&self, a: &GModule, v: &[BigInt]) -> Result<Vec<BigInt>> {
        SmComplex::new(a, 0)?.cohomology(0)?.classify(v)
    }

    fn class_to_invariant(&self, a: &GModule, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(SmComplex::new(a, 0)?.cohomology(0)?.lift(coords))
    }
}

/// How a [`CorruptedFunctor`] damages connecting maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Negate the whole matrix.
    SignFlip,
    /// Add `delta` to one matrix entry.
    Entry { row: usize, col: usize, delta: i64 },
}

/// Wraps a functor and corrupts its connecting map on one sequence in one degree.
pub struct CorruptedFunctor<F> {
    pub inner: F,
    pub victim: ModuleSes,
    pub degree: usize,
    pub corruption: Corruption,
}

impl<F: DeltaFunctor> DeltaFunctor for CorruptedFunctor<F> {
    fn name(&self) -> String {
        format!("corrupted-{}", self.inner.name())
    }

    fn evaluate(&self, a: &GModule, n: usize) -> Result<CohomologyGroup> {
        self.inner.evaluate(a, n)
    }

    fn induced(&self, f: &GMorphism, n: usize) -> Result<AbMorphism> {
        self.inner.induced(f, n)
    }

    fn connecting(&self, ses: &ModuleSes, n: usize, policy: PreimagePolicy) -> Result<AbMorphism> {
        let d = self.inner.connecting(ses, n, policy)?;
        if n != self.degree || ses != &self.victim {
            return Ok(d);
        }
        let mut m: IntMatrix = d.matrix().clone();
        match self.corruption {
            Corruption::SignFlip => m = m.neg(),
            Corruption::Entry { row, col, delta } => {
                if row < m.rows() && col < m.cols() {
                    m[(row, col)] += BigInt::from(delta);
                }
            }
        }
        AbMorphism::new(d.source().clone(), d.target().clone(), m)
    }

    fn invariant_to_class(&self, a: &GModule, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.inner.invariant_to_class(a, v)
    }

    fn class_to_invariant(&self, a: &GModule, coords: &[BigInt]) -> Result<Vec<BigInt>> {
        self.inner.class_to_invariant(a, coords)
    }
}

/// `0 → A → E_G(A) → B_G(A) → 0`, the dimension-shifting sequence.
pub fn shifting_sequence(a: &GModule) -> Result<ModuleSes> {
    let s = crate::soft_resolution::soft_module(a)?;
    ModuleSes::new(s.embedding, s.projection)
}

/// Whether `F^k(E_G(A)) = 0` for `1 ≤ k ≤ n_max`.
pub fn vanishes_on_soft<F: DeltaFunctor + ?Sized>(
    f: &F,
    a: &GModule,
    n_max: usize,
) -> Result<bool> {
    let e = soft_module_of(a)?;
    for k in 1..=n_max {
        if !f.evaluate(&e, k)?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

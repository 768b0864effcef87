use num_bigint::BigInt;
use num_traits::One;

use crate::abgroups::FgAbelianGroup;
use crate::error::Result;
use crate::group_cohomology::{cohomology, GModule, GMorphism};
use crate::intlinalg::IntMatrix;

/// `E_G(A) = Map(G, A)` with `(g.f)(x) = g.f(g⁻¹x)`, the constants
/// `i: A → E_G(A)`, and the quotient `B_G(A) = E_G(A)/i(A)`.
///
/// `E_G(A)` stores `f(x)` in block `x`. `B_G(A)` is presented as functions on
/// `G ∖ {e}` (block `x − 1` holds `φ(x)`), identifying the class of `f` with
/// `x ↦ f(x) − f(e)`.
#[derive(Clone, Debug)]
pub struct SoftModuleData {
    pub base: GModule,
    pub soft: GModule,
    pub embedding: GMorphism,
    pub quotient: GModule,
    pub projection: GMorphism,
}

/// `E_G(A)`.
pub fn soft_module_of(a: &GModule) -> Result<GModule> {
    let g = a.group();
    let (n, r) = (g.order(), a.rank());
    let mut action = Vec::with_capacity(n);
    for h in 0..n {
        let mut m = IntMatrix::zeros(n * r, n * r);
        for x in 0..n {
            m.set_block(x * r, g.mul(g.inv(h), x) * r, a.action(h));
        }
        action.push(m);
    }
    GModule::new(g, a.underlying().power(n), action)
}

/// `B_G(A)` in the normalized presentation, with action
/// `(g.φ)(x) = g.φ(g⁻¹x) − g.φ(g⁻¹)` where `φ(e) = 0`.
pub fn quotient_module_of(a: &GModule) -> Result<GModule> {
    let g = a.group();
    let (n, r) = (g.order(), a.rank());
    let k = n - 1;
    let mut action = Vec::with_capacity(n);
    for h in 0..n {
        let mut m = IntMatrix::zeros(k * r, k * r);
        let rho = a.action(h);
        let neg = rho.neg();
        let hinv = g.inv(h);
        for x in 1..n {
            let src = g.mul(hinv, x);
            if src != 0 {
                m.add_block((x - 1) * r, (src - 1) * r, rho);
            }
            if hinv != 0 {
                m.add_block((x - 1) * r, (hinv - 1) * r, &neg);
            }
        }
        action.push(m);
    }
    GModule::new(g, a.underlying().power(k), action)
}

/// How `B_G(A) = E_G(A)/i(A)` is presented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QuotientPresentation {
    /// Functions on `G ∖ {e}`: rank `r(|G| − 1)`, relations block diagonal.
    #[default]
    Normalized,
    /// Generators of `E_G(A)` with the constants added as relations: rank `r|G|`.
    Cokernel,
}

pub fn soft_module(a: &GModule) -> Result<SoftModuleData> {
    soft_module_with(a, QuotientPresentation::Normalized)
}

pub fn soft_module_with(a: &GModule, presentation: QuotientPresentation) -> Result<SoftModuleData> {
    if presentation == QuotientPresentation::Cokernel {
        return cokernel_soft_module(a);
    }
    let g = a.group();
    let (n, r) = (g.order(), a.rank());
    let soft = soft_module_of(a)?;
    let quotient = quotient_module_of(a)?;
    let mut i = IntMatrix::zeros(n * r, r);
    for x in 0..n {
        i.set_block(x * r, 0, &IntMatrix::identity(r));
    }
    let mut p = IntMatrix::zeros((n - 1) * r, n * r);
    for x in 1..n {
        for c in 0..r {
            p[((x - 1) * r + c, x * r + c)] = BigInt::one();
            p[((x - 1) * r + c, c)] = -BigInt::one();
        }
    }
    let embedding = GMorphism::new(a, &soft, i)?;
    let projection = GMorphism::new(&soft, &quotient, p)?;
    Ok(SoftModuleData {
        base: a.clone(),
        soft,
        embedding,
        quotient,
        projection,
    })
}

fn cokernel_soft_module(a: &GModule) -> Result<SoftModuleData> {
    let (n, r) = (a.group().order(), a.rank());
    let soft = soft_module_of(a)?;
    let mut i = IntMatrix::zeros(n * r, r);
    for x in 0..n {
        i.set_block(x * r, 0, &IntMatrix::identity(r));
    }
    let rel = soft.underlying().relations().hcat(&i);
    let quotient = GModule::new(
        a.group(),
        FgAbelianGroup::new(n * r, rel)?,
        soft.actions().to_vec(),
    )?;
    let embedding = GMorphism::new(a, &soft, i)?;
    let projection = GMorphism::new(&soft, &quotient, IntMatrix::identity(n * r))?;
    Ok(SoftModuleData {
        base: a.clone(),
        soft,
        embedding,
        quotient,
        projection,
    })
}

/// `B_G(f)`: `f` applied pointwise.
pub fn quotient_map(f: &GMorphism) -> Result<GMorphism> {
    let n = f.source().group().order();
    let m = IntMatrix::block_diagonal(&vec![f.matrix(); n - 1]);
    GMorphism::new(
        &quotient_module_of(f.source())?,
        &quotient_module_of(f.target())?,
        m,
    )
}

/// `E_G(f)`: `f` applied pointwise.
pub fn soft_map(f: &GMorphism) -> Result<GMorphism> {
    let n = f.source().group().order();
    let m = IntMatrix::block_diagonal(&vec![f.matrix(); n]);
    GMorphism::new(
        &soft_module_of(f.source())?,
        &soft_module_of(f.target())?,
        m,
    )
}

/// Structures of `H^n(G, E_G(A))` for `1 ≤ n ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub degrees: Vec<(usize, usize, Vec<BigInt>)>,
}

impl AcyclicityReport {
    pub fn acyclic(&self) -> bool {
        self.degrees.iter().all(|(_, f, t)| *f == 0 && t.is_empty())
    }
}

pub fn soft_acyclicity_check(a: &GModule, n_max: usize) -> Result<AcyclicityReport> {
    let e = soft_module_of(a)?;
    let mut degrees = Vec::new();
    for n in 1..=n_max {
        let h = cohomology(&e, n)?;
        degrees.push((n, h.free_rank(), h.torsion().to_vec()));
    }
    Ok(AcyclicityReport { degrees })
}

/// Underlying group of `E_G(A)` as a plain abelian group.
pub fn soft_underlying(a: &GModule) -> FgAbelianGroup {
    a.underlying().power(a.group().order())
}

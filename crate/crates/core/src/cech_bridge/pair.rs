use num_bigint::BigInt;

use super::cochain::{kappa, rho, tau, CechCochain, TranslateCover};
use crate::abgroups::{AbMorphism, Preimager};
use crate::cech::{
    apply_dh, apply_dv, cech_double_complex_with_layout, nerve, translate_cover, CechElement,
    CoefficientSystem, SemiSimplicialCover, SemiSimplicialSet,
};
use crate::error::{Error, Result};
use crate::group_cohomology::{group_differential, is_cocycle, tuple_from_index, Cochain, GModule};

/// The nerve through level three with the cover induced by `(gV)`, which is
/// where the pair `(τ(f), μ(f))` and its coboundary live.
#[derive(Clone, Debug)]
pub struct NerveCover {
    pub translates: TranslateCover,
    pub space: SemiSimplicialSet,
    pub cover: SemiSimplicialCover,
    pub coeffs: CoefficientSystem,
}

impl NerveCover {
    pub fn new(module: &GModule, v: &[usize], k_max: usize) -> Result<Self> {
        let g = module.group();
        let translates = TranslateCover::new(g, v)?;
        let space = nerve(g, k_max);
        let cover = translate_cover(g, &space, translates.v())?;
        let coeffs = CoefficientSystem::nerve(module, &space)?;
        Ok(NerveCover {
            translates,
            space,
            cover,
            coeffs,
        })
    }

    pub fn module(&self) -> &GModule {
        self.coeffs.module()
    }

    /// A Čech cochain on the level-one cover as an element of `Č^{1,k−1}`.
    pub fn embed_level_one(&self, c: &CechCochain) -> Result<CechElement> {
        if c.arity() == 0 {
            return Err(Error::InvalidInput(
                "a global function has no Čech degree in the double complex".into(),
            ));
        }
        Ok(CechElement::from_fn(
            &self.cover,
            1,
            c.arity() - 1,
            |t, x| {
                c.value(&self.translates, t, x)
                    .expect("same sets on level one")
                    .to_vec()
            },
        ))
    }

    /// A bar cochain restricted to every set of level `n`, an element of `Č^{n,0}`.
    pub fn embed_global(&self, f: &Cochain) -> CechElement {
        let order = self.module().group().order();
        let n = f.degree();
        CechElement::from_fn(&self.cover, n, 0, |_, x| {
            f.value_at(order, &tuple_from_index(order, n, x)).to_vec()
        })
    }

    pub fn dh(&self, e: &CechElement) -> CechElement {
        apply_dh(&self.space, &self.cover, &self.coeffs, e)
    }

    pub fn dv(&self, e: &CechElement) -> CechElement {
        apply_dv(&self.cover, self.module().rank(), e)
    }

    fn same(&self, a: &CechElement, b: &CechElement) -> bool {
        a.sub(b).is_zero_in(self.module())
    }
}

/// `τ(f)` in `Č^{1,1}` and `μ(f)_{g,h}(x, y) = f(g, g⁻¹x) + x.f(h, h⁻¹y) + f(x, y) − f(gh, (gh)⁻¹xy)`
/// in `Č^{2,0}`, on `V_{g,h} = {(x, y) : x ∈ gV, y ∈ hV, xy ∈ ghV}`.
#[derive(Clone, Debug)]
pub struct MuTauPair {
    pub nerve: NerveCover,
    pub tau: CechElement,
    pub mu: CechElement,
}

/// Which parts of `D(τ + μ) = 0` hold in the anticommuting total complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    /// `d_v τ = 0` in `Č^{1,2}`.
    pub dv_tau_vanishes: bool,
    /// `d_h τ + d_v μ = 0` in `Č^{2,1}`.
    pub mixed_terms_cancel: bool,
    /// `d_h μ = 0` in `Č^{3,0}`.
    pub dh_mu_vanishes: bool,
    /// Points at which values were compared.
    pub evaluations: usize,
}

impl PairCheck {
    pub fn is_total_cocycle(&self) -> bool {
        self.dv_tau_vanishes && self.mixed_terms_cancel && self.dh_mu_vanishes
    }
}

fn evaluations(e: &CechElement) -> usize {
    e.values.values().map(Vec::len).sum()
}

fn mu_of(nc: &NerveCover, f: &Cochain) -> CechElement {
    let m = nc.module();
    let g = m.group();
    let order = g.order();
    CechElement::from_fn(&nc.cover, 2, 0, |j, pt| {
        let gh = tuple_from_index(order, 2, j[0]);
        let xy = tuple_from_index(order, 2, pt);
        let (gg, h, x, y) = (gh[0], gh[1], xy[0], xy[1]);
        let prod = g.mul(gg, h);
        let mut acc = f.value_at(order, &[gg, g.mul(g.inv(gg), x)]).to_vec();
        let second = m.act(x, f.value_at(order, &[h, g.mul(g.inv(h), y)]));
        let third = f.value_at(order, &[x, y]);
        let fourth = f.value_at(order, &[prod, g.mul(g.inv(prod), g.mul(x, y))]);
        for (i, a) in acc.iter_mut().enumerate() {
            *a += &second[i] + &third[i] - &fourth[i];
        }
        acc
    })
}

/// The pair attached to a 2-cocycle `f`.
pub fn mu_tau_pair(module: &GModule, f: &Cochain, v: &[usize]) -> Result<MuTauPair> {
    if f.degree() != 2 {
        return Err(Error::InvalidInput(
            "the pair is built from a 2-cocycle".into(),
        ));
    }
    if !is_cocycle(module, f)? {
        return Err(Error::NotACocycle("f is not a 2-cocycle".into()));
    }
    let nc = NerveCover::new(module, v, 3)?;
    let t = nc.embed_level_one(&tau(module, f, &nc.translates)?)?;
    let mu = mu_of(&nc, f);
    Ok(MuTauPair {
        nerve: nc,
        tau: t,
        mu,
    })
}

impl MuTauPair {
    pub fn check(&self) -> PairCheck {
        let nc = &self.nerve;
        let dv_tau = nc.dv(&self.tau);
        let dh_tau = nc.dh(&self.tau);
        let dv_mu = nc.dv(&self.mu);
        let dh_mu = nc.dh(&self.mu);
        PairCheck {
            dv_tau_vanishes: dv_tau.is_zero_in(nc.module()),
            mixed_terms_cancel: nc.same(&dh_tau, &dv_mu.neg()),
            dh_mu_vanishes: dh_mu.is_zero_in(nc.module()),
            evaluations: evaluations(&dv_tau) + evaluations(&dh_tau) + evaluations(&dh_mu),
        }
    }

    /// `D(κ(f)) = τ(f) + μ(f) − f`, with `κ(f) ∈ Č^{1,0}` and `f` restricted into
    /// `Č^{2,0}`: the pair represents the same total class as `f` itself.
    pub fn homotopy_to_bar(&self, f: &Cochain) -> Result<bool> {
        let nc = &self.nerve;
        let k = nc.embed_level_one(&kappa(nc.module(), f, &nc.translates)?)?;
        let local = nc.embed_global(f);
        Ok(nc.same(&nc.dv(&k), &self.tau) && nc.same(&nc.dh(&k), &self.mu.sub(&local)))
    }

    /// The total degree-two vector `(0, τ, μ)` in the Čech double complex of
    /// the cover through level two.
    pub fn total_vector(&self, dc_cover: &TruncatedCech) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::from(0); dc_cover.dc.tot_rank(2)];
        for (p, e) in [(1usize, &self.tau), (2, &self.mu)] {
            let off = dc_cover.dc.offset(2, p).expect("column inside the bounds");
            let v = e.to_vector(&dc_cover.layout)?;
            out[off..off + v.len()].clone_from_slice(&v);
        }
        Ok(out)
    }
}

/// The Čech double complex of the translate cover through level and Čech degree two.
#[derive(Clone, Debug)]
pub struct TruncatedCech {
    pub dc: crate::double_complex::DoubleComplex,
    pub layout: crate::cech::CechLayout,
}

impl TruncatedCech {
    pub fn new(module: &GModule, v: &[usize]) -> Result<Self> {
        let nc = NerveCover::new(module, v, 2)?;
        let (dc, layout) = cech_double_complex_with_layout(&nc.space, &nc.cover, &nc.coeffs, 2)?;
        Ok(TruncatedCech { dc, layout })
    }

    /// Some `w ∈ Tot^1` with `Dw = y`, if one exists.
    pub fn solve(&self, y: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let d = AbMorphism::new(
            self.dc.tot_term(1),
            self.dc.tot_term(2),
            self.dc.tot_differential(1),
        )?;
        Ok(Preimager::new(&d).preimage(y))
    }
}

/// For `f = d b`: `ρ(b) ∈ Č^{1,0}` satisfies `D ρ(b) = τ(f) + μ(f)`. Returns
/// `ρ(b)` after checking both components.
pub fn pair_coboundary_witness(module: &GModule, b: &Cochain, v: &[usize]) -> Result<CechElement> {
    if b.degree() != 1 {
        return Err(Error::InvalidInput(
            "the witness is built from a 1-cochain".into(),
        ));
    }
    let f = group_differential(module, b)?;
    let pair = mu_tau_pair(module, &f, v)?;
    let nc = &pair.nerve;
    let w = nc.embed_level_one(&rho(module, b, &nc.translates)?)?;
    if !nc.same(&nc.dv(&w), &pair.tau) || !nc.same(&nc.dh(&w), &pair.mu) {
        return Err(Error::PreconditionFailed(
            "ρ(b) does not bound the pair of d b".into(),
        ));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::FiniteGroup;
    use crate::intlinalg::int_vec;

    fn z2() -> GModule {
        GModule::trivial(&FiniteGroup::cyclic(2), FgAbelianGroup::cyclic(2))
    }

    #[test]
    fn zero_pair() {
        let m = z2();
        let p = mu_tau_pair(&m, &Cochain::zero(&m, 2), &[0, 1]).unwrap();
        assert!(p.tau.is_zero_in(&m) && p.mu.is_zero_in(&m));
        assert!(p.check().is_total_cocycle());
    }

    #[test]
    fn nontrivial_pair_is_a_total_cocycle() {
        let m = z2();
        let f = Cochain::new(&m, 2, int_vec(&[0, 0, 0, 1])).unwrap();
        let p = mu_tau_pair(&m, &f, &[0, 1]).unwrap();
        let c = p.check();
        assert!(c.is_total_cocycle(), "{c:?}");
        assert!(c.evaluations <= 64 + 64 + 64);
        assert!(p.homotopy_to_bar(&f).unwrap());
    }

    #[test]
    fn coboundary_pair_bounds() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        let b = Cochain::new(&m, 1, int_vec(&[2, -3])).unwrap();
        pair_coboundary_witness(&m, &b, &[0, 1]).unwrap();
        let f = group_differential(&m, &b).unwrap();
        let pair = mu_tau_pair(&m, &f, &[0, 1]).unwrap();
        let tc = TruncatedCech::new(&m, &[0, 1]).unwrap();
        assert!(tc
            .solve(&pair.total_vector(&tc).unwrap())
            .unwrap()
            .is_some());
    }

    #[test]
    fn smaller_v_over_z3() {
        let g = FiniteGroup::cyclic(3);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(3));
        let f = Cochain::from_fn(&m, 2, |t| vec![BigInt::from(((t[0] + t[1]) / 3) as i64)]);
        let p = mu_tau_pair(&m, &f, &[0, 1]).unwrap();
        assert!(p.check().is_total_cocycle());
        assert!(p.homotopy_to_bar(&f).unwrap());
    }
}

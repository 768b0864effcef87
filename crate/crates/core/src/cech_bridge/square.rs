use super::cochain::{tau, tau_of_cochain, TranslateCover};
use crate::abgroups::Preimager;
use crate::error::{Error, Result};
use crate::group_cohomology::{coboundary_witness, group_differential, Cochain, ModuleSes};

/// Both routes around `τ ∘ δ = δ̌ ∘ τ` for a `C`-valued cocycle.
#[derive(Clone, Debug)]
pub struct TauDeltaSquare {
    /// The set-theoretic lift `f̃` of `f` to `B`.
    pub lift: Cochain,
    /// `δf = i⁻¹(d f̃)`, the connecting cocycle.
    pub connecting: Cochain,
    /// `δ̌τ(f̃) = τ(d f̃)` pointwise in `B`.
    pub pointwise: bool,
    /// `i ∘ τ(δf) = τ(d f̃)` pointwise in `B`.
    pub through_a: bool,
    /// Whether `δf` is a coboundary.
    pub connecting_is_coboundary: bool,
}

impl TauDeltaSquare {
    pub fn commutes(&self) -> bool {
        self.pointwise && self.through_a
    }
}

pub fn tau_delta_square(
    ses: &ModuleSes,
    f: &Cochain,
    cover: &TranslateCover,
) -> Result<TauDeltaSquare> {
    let (a, b, c) = (ses.a(), ses.b(), ses.c());
    if !crate::group_cohomology::is_cocycle(c, f)? {
        return Err(Error::NotACocycle(
            "the square starts from a C-valued cocycle".into(),
        ));
    }
    let order = c.group().order();
    let n = f.degree();
    let up = Preimager::new(ses.projection.as_ab());
    let mut missing = false;
    let lift = Cochain::from_fn(b, n, |t| {
        up.preimage(f.value_at(order, t)).unwrap_or_else(|| {
            missing = true;
            vec![0.into(); b.rank()]
        })
    });
    if missing {
        return Err(Error::NotExact(
            "projection is not surjective on a value of f".into(),
        ));
    }
    let dl = group_differential(b, &lift)?;
    let back = Preimager::new(ses.inclusion.as_ab());
    let connecting = Cochain::from_fn(a, n + 1, |t| {
        back.preimage(dl.value_at(order, t)).unwrap_or_else(|| {
            missing = true;
            vec![0.into(); a.rank()]
        })
    });
    if missing {
        return Err(Error::NotExact(
            "d of the lift leaves the image of A".into(),
        ));
    }

    let tau_dl = tau_of_cochain(b, &dl, cover)?;
    let pointwise = tau_of_cochain(b, &lift, cover)?
        .cech_differential(cover)
        .equals_in(&tau_dl, b);
    let via_a = tau(a, &connecting, cover)?.map_values(|v| ses.inclusion.apply(v), b.rank());
    let through_a = via_a.equals_in(&tau_dl, b);
    let connecting_is_coboundary = coboundary_witness(a, &connecting)?.is_some();
    Ok(TauDeltaSquare {
        lift,
        connecting,
        pointwise,
        through_a,
        connecting_is_coboundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::{FiniteGroup, GModule, GMorphism};
    use crate::intlinalg::{int_vec, IntMatrix};

    fn bockstein() -> ModuleSes {
        let g = FiniteGroup::cyclic(2);
        let z = GModule::trivial(&g, FgAbelianGroup::free(1));
        let z2 = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let i = GMorphism::new(&z, &z, IntMatrix::from_i64_rows(&[vec![2]], 1)).unwrap();
        let p = GMorphism::new(&z, &z2, IntMatrix::identity(1)).unwrap();
        ModuleSes::new(i, p).unwrap()
    }

    #[test]
    fn bockstein_square_commutes() {
        let ses = bockstein();
        let g = ses.c().group().clone();
        let f = Cochain::new(ses.c(), 1, int_vec(&[0, 1])).unwrap();
        let sq = tau_delta_square(&ses, &f, &TranslateCover::full(&g)).unwrap();
        assert!(sq.commutes());
        assert!(!sq.connecting_is_coboundary);
    }

    #[test]
    fn split_sequence_gives_zero() {
        let g = FiniteGroup::cyclic(2);
        let a = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let ses = ModuleSes::split(&a, &a).unwrap();
        let f = Cochain::new(&a, 1, int_vec(&[0, 1])).unwrap();
        let sq = tau_delta_square(&ses, &f, &TranslateCover::full(&g)).unwrap();
        assert!(sq.commutes() && sq.connecting_is_coboundary);
    }

    #[test]
    fn coboundary_input() {
        let ses = bockstein();
        let g = ses.c().group().clone();
        let f =
            group_differential(ses.c(), &Cochain::new(ses.c(), 0, int_vec(&[1])).unwrap()).unwrap();
        let sq = tau_delta_square(&ses, &f, &TranslateCover::full(&g)).unwrap();
        assert!(sq.commutes() && sq.connecting_is_coboundary);
    }
}

use num_bigint::BigInt;
use num_traits::One;

use super::functor::shifting_sequence;
use super::verify::SesMorphism;
use crate::abgroups::{FgAbelianGroup, Preimager};
use crate::error::{Error, Result};
use crate::group_cohomology::{GModule, GMorphism, ModuleSes};
use crate::intlinalg::IntMatrix;
use crate::soft_resolution::{soft_map, soft_module};

/// The data attached to an injection `f: A → B` sitting in `0 → A → B → C → 0`:
/// `Q_f = E_G(B)/e_B f(A)` with the sequence `0 → A → E_G(B) → Q_f → 0`, and the
/// maps `β_f: B_G(A) → Q_f`, `γ_f: C → Q_f` completing the two morphisms of
/// sequences out of `0 → A → E_G(A) → B_G(A) → 0` and out of the given one.
#[derive(Clone, Debug)]
pub struct QfData {
    pub quotient: GModule,
    pub sequence: ModuleSes,
    pub beta: GMorphism,
    pub gamma: GMorphism,
    /// `(id, E(f), β_f)` from the shifting sequence of `A`.
    pub from_shift: SesMorphism,
    /// `(id, e_B, γ_f)` from the given sequence.
    pub from_ses: SesMorphism,
}

pub fn q_f_construction(ses: &ModuleSes) -> Result<QfData> {
    let f = &ses.inclusion;
    if !f.as_ab().is_injective() {
        return Err(Error::PreconditionFailed("f is not injective".into()));
    }
    let (a, b, c) = (ses.a(), ses.b(), ses.c());
    let g = a.group();
    let n = g.order();
    let rb = b.rank();

    let sb = soft_module(b)?;
    let eb_f = f.then(&sb.embedding)?;
    let rel = sb.soft.underlying().relations().hcat(eb_f.matrix());
    let quotient = GModule::new(
        g,
        FgAbelianGroup::new(n * rb, rel)?,
        sb.soft.actions().to_vec(),
    )?;
    let q = GMorphism::new(&sb.soft, &quotient, IntMatrix::identity(n * rb))?;
    let sequence = ModuleSes::new(eb_f, q.clone())?;

    // β_f(φ) = q(E(f)(φ̃)) with φ̃(e) = 0, φ̃(x) = φ(x) otherwise
    let shift = shifting_sequence(a)?;
    let ef = soft_map(f)?;
    let ra = a.rank();
    let mut beta_m = IntMatrix::zeros(n * rb, (n - 1) * ra);
    for x in 1..n {
        beta_m.set_block(x * rb, (x - 1) * ra, f.matrix());
    }
    let beta = GMorphism::new(shift.c(), &quotient, beta_m)?;

    // γ_f(c) = class of the constant function at a lift of c
    let lifter = Preimager::new(ses.projection.as_ab());
    let mut gamma_m = IntMatrix::zeros(n * rb, c.rank());
    for j in 0..c.rank() {
        let mut e = vec![BigInt::from(0); c.rank()];
        e[j] = BigInt::one();
        let y = lifter
            .preimage(&e)
            .ok_or_else(|| Error::NotExact("projection is not surjective".into()))?;
        for x in 0..n {
            for (k, v) in y.iter().enumerate() {
                gamma_m[(x * rb + k, j)] = v.clone();
            }
        }
    }
    let gamma = GMorphism::new(c, &quotient, gamma_m)?;

    let from_shift = SesMorphism::new(
        shift,
        sequence.clone(),
        GMorphism::identity(a),
        ef,
        beta.clone(),
    )?;
    let from_ses = SesMorphism::new(
        ses.clone(),
        sequence.clone(),
        GMorphism::identity(a),
        sb.embedding,
        gamma.clone(),
    )?;
    Ok(QfData {
        quotient,
        sequence,
        beta,
        gamma,
        from_shift,
        from_ses,
    })
}

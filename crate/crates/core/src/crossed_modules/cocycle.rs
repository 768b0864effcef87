use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::xmod::{CrossedModule, FourTermData};
use crate::abgroups::PreimagePolicy;
use crate::error::{Error, Result};
use crate::group_cohomology::{coboundary_witness, is_cocycle, Cochain, GModule};

/// A set section `σ : G → N` with `σ(e) = e`, and for each pair an `m(g, h) ∈ M`
/// with `σ(g)σ(h) = μ(m(g, h)) σ(gh)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionData {
    pub sigma: Vec<usize>,
    /// Indexed by `g·|G| + h`.
    pub m: Vec<usize>,
}

pub fn section_data(
    x: &CrossedModule,
    data: &FourTermData,
    policy: PreimagePolicy,
) -> Result<SectionData> {
    let g = data.module.group();
    let k = g.order();
    let n = x.n();
    let mut rng = match policy {
        PreimagePolicy::Canonical => None,
        PreimagePolicy::Randomized { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut pick = |choices: &[usize]| -> usize {
        match rng.as_mut() {
            None => choices[0],
            Some(r) => *choices.choose(r).expect("fibres are nonempty"),
        }
    };
    let mut sigma = Vec::with_capacity(k);
    for h in 0..k {
        let fibre: Vec<usize> = (0..n.order())
            .filter(|&y| data.projection[y] == h)
            .collect();
        sigma.push(if h == 0 { 0 } else { pick(&fibre) });
    }
    let mut mu_fibres = vec![Vec::new(); n.order()];
    for (e, &y) in x.mu().iter().enumerate() {
        mu_fibres[y].push(e);
    }
    let mut m = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let target = n.mul(n.mul(sigma[a], sigma[b]), n.inv(sigma[g.mul(a, b)]));
            if mu_fibres[target].is_empty() {
                return Err(Error::InvalidInput(
                    "σ(g)σ(h)σ(gh)⁻¹ is not in the image of μ".into(),
                ));
            }
            m.push(pick(&mu_fibres[target]));
        }
    }
    Ok(SectionData { sigma, m })
}

/// The 3-cocycle `c(g, h, k) = σ(g).m(h, k) · m(g, hk) · (m(g, h) m(gh, k))⁻¹ ∈ ker μ`.
pub fn three_cocycle_with(
    x: &CrossedModule,
    data: &FourTermData,
    s: &SectionData,
) -> Result<Cochain> {
    let g = data.module.group();
    let k = g.order();
    let mm = x.m();
    let mut bad = false;
    let c = Cochain::from_fn(&data.module, 3, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let left = mm.mul(x.act(s.sigma[a], s.m[b * k + c]), s.m[a * k + g.mul(b, c)]);
        let right = mm.mul(s.m[a * k + b], s.m[g.mul(a, b) * k + c]);
        let e = mm.mul(left, mm.inv(right));
        match data.coordinates(e) {
            Some(v) => v.to_vec(),
            None => {
                bad = true;
                vec![BigInt::from(0); data.module.rank()]
            }
        }
    });
    if bad {
        return Err(Error::MalformedComplex(
            "coherence failure left the kernel of μ".into(),
        ));
    }
    if !is_cocycle(&data.module, &c)? {
        return Err(Error::MalformedComplex(
            "coherence failure is not a cocycle".into(),
        ));
    }
    Ok(c)
}

pub fn three_cocycle_of(
    x: &CrossedModule,
    data: &FourTermData,
    policy: PreimagePolicy,
) -> Result<Cochain> {
    three_cocycle_with(x, data, &section_data(x, data, policy)?)
}

/// `Some(b)` with `d b = γ′ − γ` when the cocycles are cohomologous.
pub fn class_equal(module: &GModule, gamma: &Cochain, gamma2: &Cochain) -> Result<Option<Cochain>> {
    for c in [gamma, gamma2] {
        if !is_cocycle(module, c)? {
            return Err(Error::NotACocycle("class comparison needs cocycles".into()));
        }
    }
    coboundary_witness(module, &gamma2.sub(gamma))
}

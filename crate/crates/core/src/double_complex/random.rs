use num_bigint::BigInt;
use rand::Rng;

use super::dc::DoubleComplex;
use crate::abgroups::{AbCochainComplex, FgAbelianGroup};
use crate::group_cohomology::kron;
use crate::intlinalg::IntMatrix;

/// A unimodular matrix and its inverse, as a product of a few elementary row operations.
fn random_unimodular(rng: &mut impl Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        // u ← E u with E = I + c e_{ij}; inv ← inv E⁻¹
        for k in 0..n {
            let v = &c * &u[(j, k)];
            u[(i, k)] += v;
        }
        for k in 0..n {
            let v = &c * &inv[(k, i)];
            inv[(k, j)] -= v;
        }
    }
    (u, inv)
}

/// A complex of free groups `C^0 → … → C^len` with `d² = 0` exactly: a direct
/// sum of pieces `Z` and `Z --m--> Z`, disguised by unimodular changes of basis.
pub fn random_free_complex(rng: &mut impl Rng, len: usize, max_pieces: usize) -> AbCochainComplex {
    let mut ranks = vec![0usize; len + 1];
    let mut arrows: Vec<(usize, usize, usize, i64)> = Vec::new();
    for _ in 0..rng.gen_range(1..=max_pieces) {
        let k = rng.gen_range(0..=len);
        if k < len && rng.gen_bool(0.6) {
            let m = rng.gen_range(0i64..=4);
            arrows.push((k, ranks[k], ranks[k + 1], m));
            ranks[k] += 1;
            ranks[k + 1] += 1;
        } else {
            ranks[k] += 1;
        }
    }
    let mut diffs: Vec<IntMatrix> = (0..len)
        .map(|k| IntMatrix::zeros(ranks[k + 1], ranks[k]))
        .collect();
    for (k, s, t, m) in arrows {
        diffs[k][(t, s)] = BigInt::from(m);
    }
    let bases: Vec<(IntMatrix, IntMatrix)> =
        ranks.iter().map(|&r| random_unimodular(rng, r)).collect();
    let diffs = diffs
        .iter()
        .enumerate()
        .map(|(k, d)| bases[k + 1].0.mul(d).mul(&bases[k].1))
        .collect();
    let terms = ranks.iter().map(|&r| FgAbelianGroup::free(r)).collect();
    AbCochainComplex::new(terms, diffs).expect("consistent shapes")
}

/// `C ⊗ D` with `d_h = d_C ⊗ 1` and `d_v = (−1)^p 1 ⊗ d_D`.
pub fn tensor_double_complex(c: &AbCochainComplex, d: &AbCochainComplex) -> DoubleComplex {
    let (pm, qm) = (c.len() - 1, d.len() - 1);
    let mut terms = Vec::new();
    let mut dh = Vec::new();
    let mut dv = Vec::new();
    for p in 0..=pm {
        let cp = c.term(p).rank();
        terms.push(
            (0..=qm)
                .map(|q| FgAbelianGroup::free(cp * d.term(q).rank()))
                .collect(),
        );
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let id_c = IntMatrix::identity(cp).scale(&BigInt::from(sign));
        dv.push((0..qm).map(|q| kron(&id_c, &d.differential(q))).collect());
        if p < pm {
            dh.push(
                (0..=qm)
                    .map(|q| kron(&c.differential(p), &IntMatrix::identity(d.term(q).rank())))
                    .collect(),
            );
        }
    }
    DoubleComplex::with_bound(terms, dh, dv, pm.max(qm)).expect("tensor products anticommute")
}

/// A small random double complex: the tensor product of two random free
/// complexes, with every term re-based by a random unimodular matrix.
pub fn random_double_complex(rng: &mut impl Rng) -> DoubleComplex {
    let (lc, ld) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let c = random_free_complex(rng, lc, 3);
    let d = random_free_complex(rng, ld, 3);
    let t = tensor_double_complex(&c, &d);
    let (pm, qm) = (t.p_max(), t.q_max());
    let bases: Vec<Vec<(IntMatrix, IntMatrix)>> = (0..=pm)
        .map(|p| {
            (0..=qm)
                .map(|q| random_unimodular(rng, t.term(p, q).rank()))
                .collect()
        })
        .collect();
    let terms = (0..=pm)
        .map(|p| (0..=qm).map(|q| t.term(p, q)).collect())
        .collect();
    let dh = (0..pm)
        .map(|p| {
            (0..=qm)
                .map(|q| bases[p + 1][q].0.mul(&t.dh(p, q)).mul(&bases[p][q].1))
                .collect()
        })
        .collect();
    let dv = (0..=pm)
        .map(|p| {
            (0..qm)
                .map(|q| bases[p][q + 1].0.mul(&t.dv(p, q)).mul(&bases[p][q].1))
                .collect()
        })
        .collect();
    DoubleComplex::with_bound(terms, dh, dv, pm.max(qm)).expect("conjugation preserves the axioms")
}

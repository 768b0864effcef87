//! Sublattices of `Z^n`, preimage lattices cut out by congruence conditions,
//! and subquotients `Z/B` with explicit structure, representatives and
//! coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hermite::{echelon, euclid_reduce};
use super::matrix::IntMatrix;
use super::smith::SmithWork;
use super::sparse::{columns_to_matrix, sparse_columns, SparseVec};
use crate::error::{Error, Result};

/// A subgroup of `Z^ambient`, stored as a canonical column Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: (0..ambient).map(SparseVec::unit).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_generators(ambient: usize, gens: Vec<SparseVec>) -> Self {
        Self::build(ambient, gens, true)
    }

    /// Like [`Lattice::from_generators`] but skips the off-pivot reduction;
    /// membership and coordinates still work, the basis is just not canonical.
    pub fn from_generators_unreduced(ambient: usize, gens: Vec<SparseVec>) -> Self {
        Self::build(ambient, gens, false)
    }

    fn build(ambient: usize, gens: Vec<SparseVec>, canonical: bool) -> Self {
        let ech = echelon(gens, ambient, canonical);
        let (pivots, basis) = ech.pivots.into_iter().unzip();
        Lattice {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        Self::from_generators(m.rows(), sparse_columns(m))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        columns_to_matrix(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the Hermite basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<BigInt>> {
        let mut rest = v.clone();
        let mut coords = vec![BigInt::zero(); self.basis.len()];
        while let Some((lead, val)) = rest.first().cloned() {
            let j = self.pivots.binary_search(&lead).ok()?;
            let h = self.basis[j].get(lead);
            let (q, r) = val.div_rem(&h);
            if !r.is_zero() {
                return None;
            }
            rest.add_scaled(&(-&q), &self.basis[j]);
            coords[j] = q;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_dense(&self, v: &[BigInt]) -> bool {
        self.contains(&SparseVec::from_dense(v))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Canonical residue of `v` modulo the lattice (pivot entries in `[0, h)`).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (j, &p) in self.pivots.iter().enumerate() {
            let x = out.get(p);
            if x.is_zero() {
                continue;
            }
            let h = self.basis[j].get(p);
            let q = x.div_floor(&h);
            if !q.is_zero() {
                out.add_scaled(&(-q), &self.basis[j]);
            }
        }
        out
    }

    pub fn combination(&self, coords: &[BigInt]) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(c, b);
        }
        out
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        let gens = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Lattice::from_generators(self.ambient, gens))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        let n = self.ambient;
        // (a; a) for a in A and (b; 0) for b in B: vanishing heads give A·x ∈ B.
        let mut gens: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|a| {
                let mut v = a.clone();
                v.add_scaled(&BigInt::one(), &a.shifted(n));
                v
            })
            .collect();
        gens.extend(other.basis.iter().cloned());
        let ech = echelon(gens, n, false);
        let tails = ech.tails.iter().map(|t| t.restrict(n..2 * n)).collect();
        Ok(Lattice::from_generators(n, tails))
    }

    /// Structure of `self / (self ∩ other)`.
    pub fn quotient_structure(&self, other: &Lattice) -> Result<(usize, Vec<BigInt>)> {
        let meet = self.intersection(other)?;
        let sq = Subquotient::new(self.clone(), meet.basis())?;
        Ok((sq.free_rank(), sq.torsion().to_vec()))
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "lattices in Z^{} and Z^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// One congruence condition `⟨row, v⟩ ≡ 0 (mod modulus)`; modulus zero means equality.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub row: SparseVec,
    pub modulus: BigInt,
}

/// Refines a basis to the sublattice satisfying all conditions. The input
/// basis must be linearly independent; the output is again independent.
pub fn refine(
    mut basis: Vec<SparseVec>,
    conditions: impl IntoIterator<Item = Congruence>,
) -> Vec<SparseVec> {
    for cond in conditions {
        if cond.modulus.is_one() || cond.row.is_zero() || basis.is_empty() {
            continue;
        }
        let active: Vec<usize> = (0..basis.len()).collect();
        let mut vals: Vec<BigInt> = basis.iter().map(|b| cond.row.dot(b)).collect();
        let modulus = (!cond.modulus.is_zero()).then_some(&cond.modulus);
        let Some(piv) = euclid_reduce(&mut basis, &active, &mut vals, modulus) else {
            continue;
        };
        match modulus {
            None => {
                basis.remove(piv);
            }
            Some(m) => {
                let g = vals[piv].gcd(m);
                let factor = m / g;
                basis[piv] = basis[piv].scale(&factor);
            }
        }
    }
    basis
}

/// A subquotient `Z / B` of `Z^ambient`, with `B ⊆ Z`.
///
/// The structure is torsion (ascending, divisibility chain) followed by free
/// summands. Coordinates of a class are reduced modulo the torsion orders.
#[derive(Clone, Debug)]
pub struct Subquotient {
    numerator: Lattice,
    torsion: Vec<BigInt>,
    free_rank: usize,
    /// Eliminated numerator coordinates: (index, relation column with unit entry there).
    steps: Vec<(usize, SparseVec, BigInt)>,
    /// Numerator coordinates that survive elimination, in order.
    survivors: Vec<usize>,
    /// Rows of the residual Smith transform that carry a nontrivial summand.
    classify_rows: Vec<Vec<BigInt>>,
    representatives: Vec<SparseVec>,
}

impl Subquotient {
    /// `denominators` must lie in `numerator`; otherwise an error names the first offender.
    pub fn new(numerator: Lattice, denominators: &[SparseVec]) -> Result<Self> {
        let k = numerator.rank();
        let mut rels: Vec<SparseVec> = Vec::with_capacity(denominators.len());
        for (idx, b) in denominators.iter().enumerate() {
            let c = numerator.coordinates(b).ok_or_else(|| {
                Error::MalformedComplex(format!(
                    "denominator generator {idx} is not in the numerator lattice"
                ))
            })?;
            let sv = SparseVec::from_dense(&c);
            if !sv.is_zero() {
                rels.push(sv);
            }
        }
        let mut alive = vec![true; k];
        let mut steps = Vec::new();
        loop {
            // pick the sparsest relation that has a unit entry
            let mut best: Option<(usize, usize)> = None;
            for (j, r) in rels.iter().enumerate() {
                if best.map_or(false, |(bj, _)| rels[bj].nnz() <= r.nnz()) {
                    continue;
                }
                if let Some((i, _)) = r.entries().iter().find(|(_, x)| x.abs().is_one()) {
                    best = Some((j, *i));
                }
            }
            let Some((j, i)) = best else { break };
            let pivot_col = rels.swap_remove(j);
            let u = pivot_col.get(i);
            for r in rels.iter_mut() {
                if let Some(x) = r.get_ref(i) {
                    let c = -(x * &u);
                    r.add_scaled(&c, &pivot_col);
                }
            }
            rels.retain(|r| !r.is_zero());
            alive[i] = false;
            steps.push((i, pivot_col, u));
        }
        let survivors: Vec<usize> = (0..k).filter(|&i| alive[i]).collect();
        let mut pos = vec![usize::MAX; k];
        for (p, &i) in survivors.iter().enumerate() {
            pos[i] = p;
        }
        let s = survivors.len();
        let mut residual = IntMatrix::zeros(s, rels.len());
        for (j, r) in rels.iter().enumerate() {
            for (i, x) in r.entries() {
                debug_assert!(alive[*i]);
                residual[(pos[*i], j)] = x.clone();
            }
        }
        let mut w = SmithWork::new(residual, true, true, false);
        w.run();
        let u = w.u.unwrap();
        let u_inv = w.u_inv.unwrap();
        let diag: Vec<BigInt> = (0..s)
            .map(|t| {
                if t < w.a.cols() {
                    w.a[(t, t)].clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        let mut classify_rows = Vec::new();
        let mut representatives = Vec::new();
        for (t, d) in diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            if d.is_zero() {
                free_rank += 1;
            } else {
                torsion.push(d.clone());
            }
            classify_rows.push(u.row(t).to_vec());
            let mut rep = SparseVec::new();
            for (p, &i) in survivors.iter().enumerate() {
                let c = &u_inv[(p, t)];
                if !c.is_zero() {
                    rep.add_scaled(c, &numerator.basis()[i]);
                }
            }
            representatives.push(rep);
        }
        Ok(Subquotient {
            numerator,
            torsion,
            free_rank,
            steps,
            survivors,
            classify_rows,
            representatives,
        })
    }

    pub fn numerator(&self) -> &Lattice {
        &self.numerator
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of cyclic summands (torsion first, then free).
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of summand `t` (zero for free summands).
    pub fn order_of(&self, t: usize) -> BigInt {
        self.torsion.get(t).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Coordinates of the class of `v`, or `None` when `v` is outside the numerator.
    pub fn classify(&self, v: &SparseVec) -> Option<Vec<BigInt>> {
        let mut y = self.numerator.coordinates(v)?;
        for (i, col, u) in &self.steps {
            let yi = &y[*i];
            if yi.is_zero() {
                continue;
            }
            let c = -(yi * u);
            for (r, x) in col.entries() {
                y[*r] += &c * x;
            }
        }
        let ys: Vec<BigInt> = self.survivors.iter().map(|&i| y[i].clone()).collect();
        let mut out = Vec::with_capacity(self.classify_rows.len());
        for (t, row) in self.classify_rows.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (a, b) in row.iter().zip(&ys) {
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            let order = self.order_of(t);
            if !order.is_zero() {
                acc = acc.mod_floor(&order);
            }
            out.push(acc);
        }
        Some(out)
    }

    /// Whether `v` (assumed in the numerator) represents the zero class.
    pub fn is_zero_class(&self, v: &SparseVec) -> Option<bool> {
        self.classify(v).map(|c| c.iter().all(Zero::is_zero))
    }

    /// An element of the numerator representing the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, r) in coords.iter().zip(&self.representatives) {
            out.add_scaled(c, r);
        }
        out
    }

    /// Reduces coordinates into canonical range.
    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .enumerate()
            .map(|(t, c)| {
                let o = self.order_of(t);
                if o.is_zero() {
                    c.clone()
                } else {
                    c.mod_floor(&o)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::matrix::int_vec;

    fn lat(ambient: usize, gens: &[&[i64]]) -> Lattice {
        Lattice::from_generators(
            ambient,
            gens.iter()
                .map(|g| SparseVec::from_dense(&int_vec(g)))
                .collect(),
        )
    }

    #[test]
    fn gcd_and_lcm_in_z() {
        let a = lat(1, &[&[2]]);
        let b = lat(1, &[&[3]]);
        assert_eq!(a.sum(&b).unwrap(), Lattice::full(1));
        assert_eq!(a.intersection(&b).unwrap(), lat(1, &[&[6]]));
    }

    #[test]
    fn quotients() {
        let a = lat(2, &[&[1, 1], &[0, 2]]);
        assert_eq!(a.quotient_structure(&a).unwrap(), (0, vec![]));
        let full = Lattice::full(2);
        assert_eq!(
            full.quotient_structure(&Lattice::zero(2)).unwrap(),
            (2, vec![])
        );
        assert!(a.intersection(&lat(3, &[])).is_err());
    }

    #[test]
    fn refine_to_even_sum() {
        let basis = (0..2).map(SparseVec::unit).collect();
        let cond = Congruence {
            row: SparseVec::from_dense(&int_vec(&[1, 1])),
            modulus: BigInt::from(2),
        };
        let out = refine(basis, vec![cond]);
        let l = Lattice::from_generators(2, out);
        assert_eq!(l, lat(2, &[&[1, 1], &[2, 0]]));
    }

    #[test]
    fn subquotient_of_z_mod_six() {
        let num = Lattice::full(1);
        let sq = Subquotient::new(num, &[SparseVec::from_dense(&int_vec(&[6]))]).unwrap();
        assert_eq!(sq.torsion(), &int_vec(&[6])[..]);
        assert_eq!(sq.free_rank(), 0);
        let c = sq.classify(&SparseVec::from_dense(&int_vec(&[7]))).unwrap();
        assert_eq!(c, int_vec(&[1]));
    }

    #[test]
    fn subquotient_mixed() {
        // Z^3 / <(2,0,0), (0,3,0)> = Z/6 ⊕ Z
        let sq = Subquotient::new(
            Lattice::full(3),
            &[
                SparseVec::from_dense(&int_vec(&[2, 0, 0])),
                SparseVec::from_dense(&int_vec(&[0, 3, 0])),
            ],
        )
        .unwrap();
        assert_eq!(sq.torsion(), &int_vec(&[6])[..]);
        assert_eq!(sq.free_rank(), 1);
        for (t, rep) in sq.representatives().iter().enumerate() {
            let c = sq.classify(rep).unwrap();
            for (s, x) in c.iter().enumerate() {
                assert_eq!(x, &BigInt::from((s == t) as i64));
            }
        }
    }

    #[test]
    fn denominators_outside_numerator_rejected() {
        let num = lat(1, &[&[2]]);
        assert!(Subquotient::new(num, &[SparseVec::unit(0)]).is_err());
    }
}

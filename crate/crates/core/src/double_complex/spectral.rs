use num_bigint::BigInt;
use num_traits::Zero;

use super::dc::DoubleComplex;
use crate::abgroups::{AbMorphism, CohomologyGroup, FgAbelianGroup, Preimager};
use crate::error::{Error, Result};
use crate::intlinalg::{refine, IntMatrix, Lattice, SparseVec, Subquotient};

/// One page `E_r` of the spectral sequence of the column filtration
/// `F^p Tot = ⊕_{p' ≥ p}`.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    /// `entries[p][q]`, a subquotient of `Tot^{p+q}`.
    pub entries: Vec<Vec<Subquotient>>,
    /// `differentials[p][q]: E_r^{p,q} → E_r^{p+r,q−r+1}` in class coordinates
    /// (zero rows when the target lies outside the bounds).
    pub differentials: Vec<Vec<IntMatrix>>,
}

impl SpectralPage {
    pub fn entry(&self, p: usize, q: usize) -> &Subquotient {
        &self.entries[p][q]
    }

    pub fn structure(&self, p: usize, q: usize) -> (usize, Vec<BigInt>) {
        let e = &self.entries[p][q];
        (e.free_rank(), e.torsion().to_vec())
    }

    pub fn group(&self, p: usize, q: usize) -> FgAbelianGroup {
        subquotient_group(&self.entries[p][q])
    }

    /// Whether every `d_r` on this page vanishes.
    pub fn degenerates(&self) -> bool {
        for (p, col) in self.differentials.iter().enumerate() {
            for (q, d) in col.iter().enumerate() {
                if let Some(t) = self.target(p, q) {
                    let g = self.group(t.0, t.1);
                    if !d.columns().iter().all(|c| g.is_relation(c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn target(&self, p: usize, q: usize) -> Option<(usize, usize)> {
        let (tp, tq) = (p + self.r, (q + 1).checked_sub(self.r)?);
        (tp < self.entries.len() && tq < self.entries[0].len()).then_some((tp, tq))
    }

    /// `ker d_r / im d_r` at `(p, q)`, computed from this page alone.
    pub fn homology(&self, p: usize, q: usize) -> Result<(usize, Vec<BigInt>)> {
        let term = self.group(p, q);
        let incoming = p
            .checked_sub(self.r)
            .map(|sp| (sp, q + self.r - 1))
            .filter(|&(_, sq)| sq < self.entries[0].len())
            .map(|(sp, sq)| self.differentials[sp][sq].clone());
        let target = self.target(p, q).map(|(tp, tq)| self.group(tp, tq));
        let out = target.as_ref().map(|t| (&self.differentials[p][q], t));
        let h = CohomologyGroup::compute(p + q, &term, incoming.as_ref(), out)?;
        Ok((h.free_rank(), h.torsion().to_vec()))
    }
}

/// The presented group `⊕ Z/t ⊕ Z^f` of a subquotient, in its class coordinates.
pub fn subquotient_group(s: &Subquotient) -> FgAbelianGroup {
    let mut inv = s.torsion().to_vec();
    inv.extend(std::iter::repeat(BigInt::zero()).take(s.free_rank()));
    FgAbelianGroup::from_invariants(&inv)
}

/// Number of coordinates of `Tot^n` lying in columns `< p`.
fn prefix(dc: &DoubleComplex, n: usize, p: isize) -> usize {
    if p <= 0 {
        return 0;
    }
    dc.columns_in(n)
        .take_while(|&c| (c as isize) < p)
        .map(|c| dc.term(c, n - c).rank())
        .sum()
}

/// `{x ∈ F^s Tot^n : dx ∈ F^{s+r} Tot^{n+1} + relations}`.
pub fn filtered_cocycles(dc: &DoubleComplex, n: usize, s: isize, r: isize) -> Lattice {
    let dim = dc.tot_rank(n);
    let start = prefix(dc, n, s);
    let basis: Vec<SparseVec> = (start..dim).map(SparseVec::unit).collect();
    let cut = prefix(dc, n + 1, s + r);
    if cut == 0 || basis.is_empty() {
        return Lattice::from_generators(dim, basis);
    }
    let d = dc.tot_differential(n);
    let low = d.submatrix(0..cut, 0..dim);
    let parts: Vec<FgAbelianGroup> = dc
        .columns_in(n + 1)
        .filter(|&c| (c as isize) < s + r)
        .map(|c| dc.term(c, n + 1 - c))
        .collect();
    let group = FgAbelianGroup::direct_sum(&parts.iter().collect::<Vec<_>>());
    Lattice::from_generators(dim, refine(basis, group.membership_conditions(&low)))
}

/// Drops the coordinates in columns `< p`.
fn project(dc: &DoubleComplex, n: usize, p: isize, v: &SparseVec) -> SparseVec {
    let start = prefix(dc, n, p);
    v.restrict(start..dc.tot_rank(n).max(start)).shifted(start)
}

fn relations_from(dc: &DoubleComplex, n: usize, p: usize) -> Vec<SparseVec> {
    let mut out = Vec::new();
    let mut offset = 0;
    for c in dc.columns_in(n) {
        let t = dc.term(c, n - c);
        if c >= p {
            out.extend(t.relation_columns().into_iter().map(|v| v.shifted(offset)));
        }
        offset += t.rank();
    }
    out
}

fn apply(d: &IntMatrix, v: &SparseVec) -> SparseVec {
    let mut out = vec![BigInt::zero(); d.rows()];
    for (j, x) in v.entries() {
        for (i, o) in out.iter_mut().enumerate() {
            let a = &d[(i, *j)];
            if !a.is_zero() {
                *o += a * x;
            }
        }
    }
    SparseVec::from_dense(&out)
}

/// `E_r^{p,q} = Z_r^p / (Z_{r−1}^{p+1} + π_p d Z_{r−1}^{p−r+1} + relations)`.
pub fn page_entry(dc: &DoubleComplex, r: usize, p: usize, q: usize) -> Result<Subquotient> {
    let n = p + q;
    let (pi, ri) = (p as isize, r as isize);
    let numerator = filtered_cocycles(dc, n, pi, ri);
    let mut denominators: Vec<SparseVec> =
        filtered_cocycles(dc, n, pi + 1, ri - 1).basis().to_vec();
    denominators.extend(relations_from(dc, n, p));
    if n >= 1 {
        let d = dc.tot_differential(n - 1);
        for y in filtered_cocycles(dc, n - 1, pi - ri + 1, ri - 1).basis() {
            let w = project(dc, n, pi, &apply(&d, y));
            if !w.is_zero() {
                denominators.push(w);
            }
        }
    }
    Subquotient::new(numerator, &denominators)
}

/// Pages `E_1, …, E_{r_max}`.
pub fn spectral_sequence(dc: &DoubleComplex, r_max: usize) -> Result<Vec<SpectralPage>> {
    if r_max == 0 {
        return Err(Error::InvalidInput("r_max must be at least 1".into()));
    }
    (1..=r_max).map(|r| page(dc, r)).collect()
}

/// The page `E_∞ = E_{p_max + 1}`.
pub fn e_infinity(dc: &DoubleComplex) -> Result<SpectralPage> {
    page(dc, dc.p_max() + 1)
}

pub fn page(dc: &DoubleComplex, r: usize) -> Result<SpectralPage> {
    let (pm, qm) = (dc.p_max(), dc.q_max());
    let mut entries = Vec::with_capacity(pm + 1);
    for p in 0..=pm {
        entries.push(
            (0..=qm)
                .map(|q| page_entry(dc, r, p, q))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut differentials = Vec::with_capacity(pm + 1);
    for p in 0..=pm {
        let mut col = Vec::with_capacity(qm + 1);
        for q in 0..=qm {
            let src = &entries[p][q];
            let n = p + q;
            let tgt = (q + 1)
                .checked_sub(r)
                .filter(|&tq| p + r <= pm && tq <= qm)
                .map(|tq| (p + r, tq));
            let Some((tp, tq)) = tgt else {
                col.push(IntMatrix::zeros(0, src.ngens()));
                continue;
            };
            let t = &entries[tp][tq];
            let d = dc.tot_differential(n);
            let mut m = IntMatrix::zeros(t.ngens(), src.ngens());
            for (j, x) in src.representatives().iter().enumerate() {
                let y = project(dc, n + 1, tp as isize, &apply(&d, x));
                let c = t.classify(&y).ok_or_else(|| {
                    Error::MalformedComplex(format!("d_{r} image at ({p}, {q}) leaves Z_{r}"))
                })?;
                for (i, v) in c.into_iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            col.push(m);
        }
        differentials.push(col);
    }
    Ok(SpectralPage {
        r,
        entries,
        differentials,
    })
}

/// `F^p H^n / F^{p+1} H^n` for each column, read off the total cohomology.
pub fn filtration_quotients(dc: &DoubleComplex, n: usize) -> Result<Vec<(usize, Vec<BigInt>)>> {
    let h = dc.total_complex().cohomology_at(n)?;
    let k = h.ngens();
    let mut torsion_rel: Vec<SparseVec> = Vec::new();
    for (t, o) in h.torsion().iter().enumerate() {
        torsion_rel.push(SparseVec::from_sorted(vec![(t, o.clone())]));
    }
    let big = (dc.p_max() + 2) as isize;
    let mut lat = Vec::new();
    for p in 0..=dc.p_max() + 1 {
        let z = filtered_cocycles(dc, n, p as isize, big + n as isize);
        let mut gens = torsion_rel.clone();
        for v in z.basis() {
            let c = h.classify_sparse(v)?;
            gens.push(SparseVec::from_dense(&c));
        }
        lat.push(Lattice::from_generators(k, gens));
    }
    let mut out = Vec::new();
    for p in 0..=dc.p_max() {
        out.push(lat[p].quotient_structure(&lat[p + 1])?);
    }
    Ok(out)
}

/// Per total degree, whether each `E_∞^{p,n−p}` matches `F^p H^n / F^{p+1} H^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub degrees: Vec<ConvergenceDegree>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceDegree {
    pub n: usize,
    pub total: (usize, Vec<BigInt>),
    pub graded: Vec<(usize, Vec<BigInt>)>,
    pub filtration: Vec<(usize, Vec<BigInt>)>,
}

impl ConvergenceDegree {
    pub fn matches(&self) -> bool {
        self.graded == self.filtration && {
            let free: usize = self.graded.iter().map(|g| g.0).sum();
            let order: BigInt = self.graded.iter().flat_map(|g| g.1.iter()).product();
            let torder: BigInt = self.total.1.iter().product();
            free == self.total.0 && order == torder
        }
    }
}

impl ConvergenceReport {
    pub fn converges(&self) -> bool {
        self.degrees.iter().all(ConvergenceDegree::matches)
    }
}

pub fn convergence_check(dc: &DoubleComplex, n_max: usize) -> Result<ConvergenceReport> {
    let einf = e_infinity(dc)?;
    let tot = dc.total_complex();
    let mut degrees = Vec::new();
    for n in 0..=n_max.min(dc.n_max()) {
        let h = tot.cohomology_at(n)?;
        let graded = (0..=dc.p_max())
            .map(|p| match n.checked_sub(p) {
                Some(q) if q <= dc.q_max() => einf.structure(p, q),
                _ => (0, Vec::new()),
            })
            .collect();
        degrees.push(ConvergenceDegree {
            n,
            total: (h.free_rank(), h.torsion().to_vec()),
            graded,
            filtration: filtration_quotients(dc, n)?,
        });
    }
    Ok(ConvergenceReport { degrees })
}

/// The edge map `H^n(Tot) → E_1^{1,n−1}`, defined when column 0 of `E_1`
/// vanishes in positive degrees (and, for `n = 1`, when `d_1` out of
/// `E_1^{0,0}` vanishes).
#[derive(Clone, Debug)]
pub struct EdgeMap {
    pub source: CohomologyGroup,
    pub target: Subquotient,
    pub map: AbMorphism,
}

pub fn edge_homomorphism(dc: &DoubleComplex, n: usize) -> Result<EdgeMap> {
    if n == 0 || n > dc.q_max() + 1 || dc.p_max() < 1 {
        return Err(Error::PreconditionFailed(format!(
            "edge map in degree {n} lies outside the bounds"
        )));
    }
    let e1 = page(dc, 1)?;
    for q in 1..=dc.q_max() {
        if !e1.entry(0, q).is_trivial() {
            return Err(Error::PreconditionFailed(format!(
                "E_1^{{0,{q}}} is not zero"
            )));
        }
    }
    if n == 1
        && !e1.differentials[0][0]
            .columns()
            .iter()
            .all(|c| e1.group(1, 0).is_relation(c))
    {
        return Err(Error::PreconditionFailed(
            "d_1 out of E_1^{0,0} does not vanish".into(),
        ));
    }
    let tot = dc.total_complex();
    let h = tot.cohomology_at(n)?;
    let target = e1.entry(1, n - 1).clone();
    let col0 = dc.term(0, n).rank();
    let dv = dc.dv(0, n - 1);
    let solver = Preimager::new(&AbMorphism::new(dc.term(0, n - 1), dc.term(0, n), dv)?);
    let d = tot.differential(n - 1);
    let mut m = IntMatrix::zeros(target.ngens(), h.ngens());
    for t in 0..h.ngens() {
        let mut x = h.representative(t);
        if n <= dc.q_max() && col0 > 0 {
            // kill the column-0 part with a vertical primitive
            let x0 = x[..col0].to_vec();
            let w = solver.preimage(&x0).ok_or_else(|| {
                Error::MalformedComplex("column-0 part of a total cocycle is not exact".into())
            })?;
            let mut wt = vec![BigInt::zero(); dc.tot_rank(n - 1)];
            wt[..w.len()].clone_from_slice(&w);
            let dw = d.mul_vec(&wt);
            for (a, b) in x.iter_mut().zip(dw) {
                *a -= b;
            }
        }
        let y = project(dc, n, 1, &SparseVec::from_dense(&x));
        let c = target.classify(&y).ok_or_else(|| {
            Error::MalformedComplex("edge image is not a vertical cocycle".into())
        })?;
        for (i, v) in c.into_iter().enumerate() {
            m[(i, t)] = v;
        }
    }
    let map = AbMorphism::new(h.as_group(), subquotient_group(&target), m)?;
    Ok(EdgeMap {
        source: h,
        target,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times(k: i64) -> IntMatrix {
        IntMatrix::from_i64_rows(&[vec![k]], 1)
    }

    /// Z at (0,0), (1,0), (0,1), (1,1) with d_v = ×a, d_h = ×b in row 0 and −b in row 1.
    fn square(a: i64, b: i64) -> DoubleComplex {
        let z = || FgAbelianGroup::free(1);
        DoubleComplex::new(
            vec![vec![z(), z()], vec![z(), z()]],
            vec![vec![times(b), times(-b)]],
            vec![vec![times(a)], vec![times(a)]],
        )
        .unwrap()
    }

    #[test]
    fn zero_differentials_keep_every_page() {
        let dc = square(0, 0);
        for pg in spectral_sequence(&dc, 3).unwrap() {
            for p in 0..2 {
                for q in 0..2 {
                    assert_eq!(pg.structure(p, q), (1, vec![]));
                }
            }
            assert!(pg.degenerates());
        }
    }

    #[test]
    fn e1_is_vertical_cohomology() {
        let dc = square(3, 2);
        let e1 = page(&dc, 1).unwrap();
        assert_eq!(e1.structure(0, 0), (0, vec![]));
        assert_eq!(e1.structure(0, 1), (0, vec![BigInt::from(3)]));
        let e2 = page(&dc, 2).unwrap();
        for p in 0..2 {
            for q in 0..2 {
                assert_eq!(e1.homology(p, q).unwrap(), e2.structure(p, q));
            }
        }
    }

    #[test]
    fn convergence_on_a_square() {
        for (a, b) in [(3, 2), (2, 2), (4, 6), (0, 5)] {
            let r = convergence_check(&square(a, b), 2).unwrap();
            assert!(r.converges(), "{r:?}");
        }
    }

    #[test]
    fn staircase_has_a_nonzero_d2() {
        // x at (0,1) ↦ y at (1,1) = d_v z, z at (1,0) ↦ 3w at (2,0)
        let z = FgAbelianGroup::free;
        let dc = DoubleComplex::new(
            vec![vec![z(0), z(1)], vec![z(1), z(1)], vec![z(1), z(0)]],
            vec![
                vec![IntMatrix::zeros(1, 0), times(1)],
                vec![times(3), IntMatrix::zeros(0, 1)],
            ],
            vec![
                vec![IntMatrix::zeros(1, 0)],
                vec![times(1)],
                vec![IntMatrix::zeros(0, 1)],
            ],
        )
        .unwrap();
        let pages = spectral_sequence(&dc, 3).unwrap();
        assert_eq!(pages[1].structure(0, 1), (1, vec![]));
        assert_eq!(pages[1].structure(2, 0), (1, vec![]));
        assert!(!pages[1].degenerates());
        assert_eq!(pages[2].structure(0, 1), (0, vec![]));
        assert_eq!(pages[2].structure(2, 0), (0, vec![BigInt::from(3)]));
        assert!(convergence_check(&dc, 3).unwrap().converges());
    }

    #[test]
    fn edge_of_single_column_is_an_isomorphism() {
        // only column 1 is nonzero: Z --×2--> Z vertically
        let z = FgAbelianGroup::free;
        let dc = DoubleComplex::new(
            vec![vec![z(0), z(0), z(0)], vec![z(1), z(1), z(0)]],
            vec![vec![
                IntMatrix::zeros(1, 0),
                IntMatrix::zeros(1, 0),
                IntMatrix::zeros(0, 0),
            ]],
            vec![
                vec![IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0)],
                vec![times(2), IntMatrix::zeros(0, 1)],
            ],
        )
        .unwrap();
        let e = edge_homomorphism(&dc, 2).unwrap();
        assert_eq!(e.source.structure(), (0, vec![BigInt::from(2)]));
        assert!(e.map.is_injective() && e.map.is_surjective());
    }
}

#[cfg(test)]
mod random_tests {
    use super::*;
    use crate::double_complex::random_double_complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_double_complexes_converge_and_turn_pages() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let dc = random_double_complex(&mut rng);
            let r = convergence_check(&dc, dc.n_max()).unwrap();
            assert!(r.converges(), "{r:?}");
            let pages = spectral_sequence(&dc, 2).unwrap();
            for p in 0..=dc.p_max() {
                for q in 0..=dc.q_max() {
                    assert_eq!(pages[0].homology(p, q).unwrap(), pages[1].structure(p, q));
                }
            }
        }
    }
}

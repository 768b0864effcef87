use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::group::{tuple_count, tuple_from_index, tuple_index};
use super::module::GModule;
use crate::abgroups::{AbCochainComplex, CohomologyGroup};
use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

/// An inhomogeneous `n`-cochain `G^n → A`, stored as the concatenation of the
/// values on tuples in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    rank: usize,
    values: Vec<BigInt>,
}

impl Cochain {
    pub fn new(module: &GModule, degree: usize, values: Vec<BigInt>) -> Result<Self> {
        let expected = tuple_count(module.group().order(), degree) * module.rank();
        if values.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{}-cochain needs {expected} entries, got {}",
                degree,
                values.len()
            )));
        }
        Ok(Cochain {
            degree,
            rank: module.rank(),
            values,
        })
    }

    pub fn zero(module: &GModule, degree: usize) -> Self {
        let len = tuple_count(module.group().order(), degree) * module.rank();
        Cochain {
            degree,
            rank: module.rank(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn from_fn(
        module: &GModule,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Vec<BigInt>,
    ) -> Self {
        let n = module.group().order();
        let mut values = Vec::with_capacity(tuple_count(n, degree) * module.rank());
        for idx in 0..tuple_count(n, degree) {
            let v = f(&tuple_from_index(n, degree, idx));
            assert_eq!(v.len(), module.rank(), "cochain value of wrong length");
            values.extend(v);
        }
        Cochain {
            degree,
            rank: module.rank(),
            values,
        }
    }

    /// Entries drawn uniformly from `range` on every generator coordinate.
    pub fn random(
        module: &GModule,
        degree: usize,
        rng: &mut impl Rng,
        range: std::ops::RangeInclusive<i64>,
    ) -> Self {
        let len = tuple_count(module.group().order(), degree) * module.rank();
        Cochain {
            degree,
            rank: module.rank(),
            values: (0..len)
                .map(|_| BigInt::from(rng.gen_range(range.clone())))
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn value_at(&self, order: usize, t: &[usize]) -> &[BigInt] {
        let i = tuple_index(order, t) * self.rank;
        &self.values[i..i + self.rank]
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.values.len(), other.values.len());
        Cochain {
            degree: self.degree,
            rank: self.rank,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.values.len(), other.values.len());
        Cochain {
            degree: self.degree,
            rank: self.rank,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Cochain {
        Cochain {
            degree: self.degree,
            rank: self.rank,
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }
}

/// `(df)(g₀,…,g_n) = g₀.f(g₁,…,g_n) + Σ_{j=1}^{n} (−1)^j f(…,g_{j−1}g_j,…) + (−1)^{n+1} f(g₀,…,g_{n−1})`,
/// evaluated directly on tuples.
pub fn group_differential(module: &GModule, f: &Cochain) -> Result<Cochain> {
    if f.rank != module.rank()
        || f.values.len() != tuple_count(module.group().order(), f.degree) * module.rank()
    {
        return Err(Error::DimensionMismatch(
            "cochain does not match the module".into(),
        ));
    }
    let g = module.group();
    let order = g.order();
    let n = f.degree;
    Ok(Cochain::from_fn(module, n + 1, |t| {
        let mut acc = module.act(t[0], f.value_at(order, &t[1..]));
        let mut merged = Vec::with_capacity(n);
        for j in 1..=n {
            merged.clear();
            merged.extend_from_slice(&t[..j - 1]);
            merged.push(g.mul(t[j - 1], t[j]));
            merged.extend_from_slice(&t[j + 1..]);
            let v = f.value_at(order, &merged);
            for (a, x) in acc.iter_mut().zip(v) {
                if j % 2 == 1 {
                    *a -= x;
                } else {
                    *a += x;
                }
            }
        }
        let v = f.value_at(order, &t[..n]);
        for (a, x) in acc.iter_mut().zip(v) {
            if n % 2 == 0 {
                *a -= x;
            } else {
                *a += x;
            }
        }
        acc
    }))
}

/// Matrix of `d^n : C^n(G, A) → C^{n+1}(G, A)` on generators.
pub fn bar_differential_matrix(module: &GModule, n: usize) -> IntMatrix {
    let g = module.group();
    let order = g.order();
    let r = module.rank();
    let rows = tuple_count(order, n + 1);
    let cols = tuple_count(order, n);
    let mut d = IntMatrix::zeros(rows * r, cols * r);
    let one = BigInt::one();
    let add_identity = |d: &mut IntMatrix, o: usize, c: usize, sign: &BigInt| {
        for k in 0..r {
            d[(o * r + k, c * r + k)] += sign;
        }
    };
    let neg = -BigInt::one();
    let mut merged = Vec::with_capacity(n);
    for o in 0..rows {
        let t = tuple_from_index(order, n + 1, o);
        let first = tuple_index(order, &t[1..]);
        if t[0] == 0 {
            add_identity(&mut d, o, first, &one);
        } else {
            let a = module.action(t[0]);
            for k in 0..r {
                for l in 0..r {
                    let x = &a[(k, l)];
                    if !x.is_zero() {
                        d[(o * r + k, first * r + l)] += x;
                    }
                }
            }
        }
        for j in 1..=n {
            merged.clear();
            merged.extend_from_slice(&t[..j - 1]);
            merged.push(g.mul(t[j - 1], t[j]));
            merged.extend_from_slice(&t[j + 1..]);
            let c = tuple_index(order, &merged);
            add_identity(&mut d, o, c, if j % 2 == 1 { &neg } else { &one });
        }
        let last = tuple_index(order, &t[..n]);
        add_identity(&mut d, o, last, if n % 2 == 0 { &neg } else { &one });
    }
    d
}

/// Terms `C^n = A^{G^n}` for `0 ≤ n ≤ n_max` with the bar differentials.
pub fn bar_cochain_complex(module: &GModule, n_max: usize) -> AbCochainComplex {
    let order = module.group().order();
    let terms = (0..=n_max)
        .map(|n| module.underlying().power(tuple_count(order, n)))
        .collect();
    let diffs = (0..n_max)
        .map(|n| bar_differential_matrix(module, n))
        .collect();
    AbCochainComplex::new(terms, diffs).expect("bar complex dimensions are consistent")
}

/// `H^n(G, A)` from the bar complex truncated at degree `n + 1`.
pub fn cohomology(module: &GModule, n: usize) -> Result<CohomologyGroup> {
    bar_cochain_complex(module, n + 1).cohomology_at(n)
}

/// Whether `f` is a coboundary, with a primitive when it is.
pub fn coboundary_witness(module: &GModule, f: &Cochain) -> Result<Option<Cochain>> {
    let n = f.degree;
    if n == 0 {
        let zero = module.underlying().is_relation(f.values());
        return Ok(zero.then(|| Cochain::zero(module, 0)));
    }
    let d = bar_differential_matrix(module, n - 1);
    let target = module
        .underlying()
        .power(tuple_count(module.group().order(), n));
    let source = module
        .underlying()
        .power(tuple_count(module.group().order(), n - 1));
    let map = crate::abgroups::AbMorphism::new_unchecked(source, target, d)?;
    let pre = crate::abgroups::Preimager::new(&map);
    Ok(pre.preimage(f.values()).map(|v| Cochain {
        degree: n - 1,
        rank: module.rank(),
        values: v,
    }))
}

/// Whether `df ≡ 0` modulo relations.
pub fn is_cocycle(module: &GModule, f: &Cochain) -> Result<bool> {
    let df = group_differential(module, f)?;
    let order = module.group().order();
    let a = module.underlying();
    let r = module.rank();
    Ok(
        (0..tuple_count(order, f.degree + 1))
            .all(|i| a.is_relation(&df.values[i * r..(i + 1) * r])),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroups::FgAbelianGroup;
    use crate::group_cohomology::FiniteGroup;
    use crate::intlinalg::int_vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_zero_trivial_action_is_closed() {
        let g = FiniteGroup::cyclic(3);
        let m = GModule::trivial(&g, FgAbelianGroup::free(1));
        let a = Cochain::new(&m, 0, int_vec(&[5])).unwrap();
        assert!(group_differential(&m, &a)
            .unwrap()
            .values()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn homomorphism_is_a_cocycle() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let f = Cochain::new(&m, 1, int_vec(&[0, 1])).unwrap();
        let df = group_differential(&m, &f).unwrap();
        // values 0, 0, 0, 2: every pair gives an even number
        assert!(is_cocycle(&m, &f).unwrap());
        assert_eq!(df.values().len(), 4);
    }

    #[test]
    fn matrix_matches_direct_formula_and_squares_to_zero() {
        let g = FiniteGroup::cyclic(3);
        let t = IntMatrix::from_i64_rows(&[vec![0, -1], vec![1, -1]], 2);
        let m = GModule::cyclic_action(&g, FgAbelianGroup::free(2), &t).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 0..3 {
            let f = Cochain::random(&m, n, &mut rng, -5..=5);
            let direct = group_differential(&m, &f).unwrap();
            assert_eq!(
                bar_differential_matrix(&m, n).mul_vec(f.values()),
                direct.values()
            );
            let dd = group_differential(&m, &direct).unwrap();
            assert!(dd.values().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn term_ranks() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::free(1));
        let c = bar_cochain_complex(&m, 3);
        let ranks: Vec<usize> = c.terms().iter().map(|t| t.rank()).collect();
        assert_eq!(ranks, vec![1, 2, 4, 8]);
        c.check().unwrap();
    }

    #[test]
    fn small_cohomology_values() {
        let g = FiniteGroup::cyclic(2);
        let triv = GModule::trivial(&g, FgAbelianGroup::free(1));
        let sign = GModule::signed(&g, FgAbelianGroup::free(1), &[1, -1]).unwrap();
        assert_eq!(cohomology(&sign, 0).unwrap().structure(), (0, vec![]));
        assert_eq!(
            cohomology(&sign, 1).unwrap().structure(),
            (0, int_vec(&[2]))
        );
        assert_eq!(
            cohomology(&triv, 2).unwrap().structure(),
            (0, int_vec(&[2]))
        );
        let z2 = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        assert_eq!(cohomology(&z2, 3).unwrap().structure(), (0, int_vec(&[2])));
    }

    #[test]
    fn coboundary_detection() {
        let g = FiniteGroup::cyclic(2);
        let m = GModule::trivial(&g, FgAbelianGroup::cyclic(2));
        let b = Cochain::new(&m, 1, int_vec(&[1, 0])).unwrap();
        let db = group_differential(&m, &b).unwrap();
        let w = coboundary_witness(&m, &db).unwrap().unwrap();
        let dw = group_differential(&m, &w).unwrap();
        assert!(m
            .underlying()
            .power(4)
            .equal_elements(dw.values(), db.values()));
        let f = Cochain::new(&m, 2, int_vec(&[0, 0, 0, 1])).unwrap();
        assert!(coboundary_witness(&m, &f).unwrap().is_none());
    }
}

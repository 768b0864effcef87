use cohomology_core::intlinalg::{
    cokernel_structure, refine, smith_normal_form, solve_in_lattice, Congruence, IntMatrix,
    Lattice, SparseVec, Subquotient,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

/// Random unimodular matrix as a product of elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            m.swap_rows(i, (i + 1) % n);
            continue;
        }
        for k in 0..n {
            let x = &m[(j, k)] * BigInt::from(c);
            m[(i, k)] += x;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_decomposition_is_valid(m in matrix_strategy(6)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.determinant().abs() == BigInt::from(1));
        prop_assert!(s.v.determinant().abs() == BigInt::from(1));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() { prop_assert!(w[1].is_zero()); } else { prop_assert!((&w[1] % &w[0]).is_zero()); }
        }
    }

    #[test]
    fn smith_transforms_stay_small(m in matrix_strategy(8)) {
        let s = smith_normal_form(&m);
        let bits = s.u.entries().iter().chain(s.v.entries()).map(|x| x.bits()).max().unwrap_or(0);
        prop_assert!(bits <= 512, "transform entries reached {} bits", bits);
    }

    #[test]
    fn cokernel_invariant_under_unimodular_change(
        m in matrix_strategy(5),
        left in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
        right in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
    ) {
        let p = unimodular(m.rows(), &left);
        let q = unimodular(m.cols(), &right);
        prop_assert_eq!(cokernel_structure(&m), cokernel_structure(&p.mul(&m).mul(&q)));
    }

    #[test]
    fn solve_matches_smith_criterion(m in matrix_strategy(5), seed in prop::collection::vec(-6i64..=6, 5)) {
        let b: Vec<BigInt> = (0..m.rows()).map(|i| BigInt::from(seed[i])).collect();
        let s = smith_normal_form(&m);
        let y = s.u.mul_vec(&b);
        let diag = s.diagonal();
        let solvable = y.iter().enumerate().all(|(i, yi)| match diag.get(i) {
            Some(d) if !d.is_zero() => (yi % d).is_zero(),
            _ => yi.is_zero(),
        });
        match solve_in_lattice(&m, &b) {
            Some(x) => { prop_assert!(solvable); prop_assert_eq!(m.mul_vec(&x), b); }
            None => prop_assert!(!solvable),
        }
    }

    #[test]
    fn subquotient_of_full_lattice_matches_cokernel(m in matrix_strategy(5)) {
        let sq = Subquotient::new(Lattice::full(m.rows()), &cohomology_core::intlinalg::sparse_columns(&m)).unwrap();
        let (free, torsion) = cokernel_structure(&m);
        prop_assert_eq!(sq.free_rank(), free);
        prop_assert_eq!(sq.torsion(), &torsion[..]);
        for (t, rep) in sq.representatives().iter().enumerate() {
            let c = sq.classify(rep).unwrap();
            for (s, x) in c.iter().enumerate() {
                prop_assert_eq!(x, &BigInt::from((s == t) as i64));
            }
        }
    }

    #[test]
    fn refine_matches_brute_force(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..3), mods in prop::collection::vec(0i64..5, 2)) {
        let conds: Vec<Congruence> = rows.iter().zip(&mods).map(|(r, m)| Congruence {
            row: SparseVec::from_dense(&r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()),
            modulus: BigInt::from(*m),
        }).collect();
        let basis = (0..3).map(SparseVec::unit).collect();
        let lat = Lattice::from_generators(3, refine(basis, conds.clone()));
        for a in -4i64..=4 { for b in -4i64..=4 { for c in -4i64..=4 {
            let v: Vec<BigInt> = vec![a.into(), b.into(), c.into()];
            let sv = SparseVec::from_dense(&v);
            let ok = conds.iter().all(|k| {
                let d = k.row.dot(&sv);
                if k.modulus.is_zero() { d.is_zero() } else { d.mod_floor(&k.modulus).is_zero() }
            });
            prop_assert_eq!(lat.contains(&sv), ok);
        }}}
    }

    #[test]
    fn intersection_and_sum_membership(g1 in prop::collection::vec(-5i64..=5, 4), g2 in prop::collection::vec(-5i64..=5, 4)) {
        let mk = |g: &[i64]| Lattice::from_generators(2, vec![
            SparseVec::from_dense(&[BigInt::from(g[0]), BigInt::from(g[1])]),
            SparseVec::from_dense(&[BigInt::from(g[2]), BigInt::from(g[3])]),
        ]);
        let (a, b) = (mk(&g1), mk(&g2));
        let sum = a.sum(&b).unwrap();
        let meet = a.intersection(&b).unwrap();
        for x in -6i64..=6 { for y in -6i64..=6 {
            let v = SparseVec::from_dense(&[BigInt::from(x), BigInt::from(y)]);
            prop_assert_eq!(meet.contains(&v), a.contains(&v) && b.contains(&v));
            if a.contains(&v) || b.contains(&v) { prop_assert!(sum.contains(&v)); }
        }}
    }
}

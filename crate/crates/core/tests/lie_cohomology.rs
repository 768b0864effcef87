use cohomology_core::lie_cohomology::{
    ce_complex, invariants_dim, lie_cohomology, LieAlgebra, LieModule, RatMatrix,
};
use proptest::prelude::*;

fn euler(g: &LieAlgebra, m: &LieModule) -> i64 {
    (0..=g.dim())
        .map(|n| {
            let d = lie_cohomology(g, m, n).unwrap().dim as i64;
            if n % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .sum()
}

#[test]
fn corpus_algebras_have_zero_euler_characteristic() {
    for g in [
        LieAlgebra::sl2(),
        LieAlgebra::affine_line(),
        LieAlgebra::heisenberg(),
        LieAlgebra::abelian(3),
    ] {
        for m in [LieModule::trivial(&g, 1), LieModule::adjoint(&g)] {
            ce_complex(&g, &m, g.dim()).unwrap();
            assert_eq!(euler(&g, &m), 0);
        }
    }
}

#[test]
fn cohomology_basis_elements_are_cocycles() {
    let g = LieAlgebra::sl2();
    let m = LieModule::trivial(&g, 1);
    let h3 = lie_cohomology(&g, &m, 3).unwrap();
    assert_eq!(h3.dim, 1);
    let c = ce_complex(&g, &m, 3).unwrap();
    let z = RatMatrix::from_columns(c.dims[3], &h3.basis);
    assert_eq!(z.cols(), 1);
    let affine = LieAlgebra::affine_line();
    let tm = LieModule::trivial(&affine, 1);
    let h1 = lie_cohomology(&affine, &tm, 1).unwrap();
    let d1 = &ce_complex(&affine, &tm, 2).unwrap().differentials[1];
    assert!(d1.mul(&RatMatrix::from_columns(2, &h1.basis)).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Commuting actions of an abelian algebra: polynomials in one matrix.
    #[test]
    fn abelian_algebra_random_module(entries in prop::collection::vec(-2i64..=2, 4), coeffs in prop::collection::vec(-2i64..=2, 4)) {
        let g = LieAlgebra::abelian(2);
        let a = RatMatrix::from_i64_rows(&[entries[..2].to_vec(), entries[2..].to_vec()], 2);
        let a2 = a.mul(&a);
        let lin = |c0: i64, c1: i64| {
            let mut m = RatMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] = &a[(i, j)] * num_rational::BigRational::from_integer(c0.into())
                        + &a2[(i, j)] * num_rational::BigRational::from_integer(c1.into());
                }
            }
            m
        };
        let m = LieModule::new(&g, 2, vec![lin(coeffs[0], coeffs[1]), lin(coeffs[2], coeffs[3])]).unwrap();
        ce_complex(&g, &m, 2).unwrap();
        prop_assert_eq!(euler(&g, &m), 0);
        prop_assert_eq!(invariants_dim(&g, &m), lie_cohomology(&g, &m, 0).unwrap().dim);
    }
}

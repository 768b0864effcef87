use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::{LieAlgebra, LieModule};
use super::rational::RatMatrix;
use crate::error::{Error, Result};

/// Increasing `n`-subsets of `0..d` in lexicographic order.
pub fn subsets(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, n: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for i in start..d {
            acc.push(i);
            go(i + 1, d, n, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, n, &mut Vec::new(), &mut out);
    out
}

/// The Chevalley–Eilenberg complex `C^n = Λ^n 𝔤* ⊗ M`, basis `(S, a)` with `S`
/// an increasing subset and `a` a basis index of `M`, ordered `S`-major.
#[derive(Clone, Debug)]
pub struct CeComplex {
    pub dims: Vec<usize>,
    /// `d^n : C^n → C^{n+1}`.
    pub differentials: Vec<RatMatrix>,
}

impl CeComplex {
    pub fn n_max(&self) -> usize {
        self.dims.len() - 1
    }
}

/// Sign of sorting `k` into the increasing list `rest`, and the sorted list; `None` if `k ∈ rest`.
fn insert_sorted(k: usize, rest: &[usize]) -> Option<(bool, Vec<usize>)> {
    if rest.contains(&k) {
        return None;
    }
    let pos = rest.iter().filter(|&&x| x < k).count();
    let mut out = rest.to_vec();
    out.insert(pos, k);
    Some((pos % 2 == 0, out))
}

/// `(dω)(x_0, …, x_n) = Σ_i (−1)^i x_i.ω(…x̂_i…) + Σ_{i<j} (−1)^{i+j} ω([x_i, x_j], …x̂_i…x̂_j…)`.
fn differential(g: &LieAlgebra, m: &LieModule, n: usize) -> RatMatrix {
    let d = g.dim();
    let r = m.dim();
    let src = subsets(d, n);
    let tgt = subsets(d, n + 1);
    let index = |s: &[usize]| {
        src.binary_search_by(|x| x.as_slice().cmp(s))
            .expect("subset is listed")
    };
    let mut out = RatMatrix::zeros(tgt.len() * r, src.len() * r);
    for (ti, t) in tgt.iter().enumerate() {
        for i in 0..=n {
            let mut rest = t.clone();
            let xi = rest.remove(i);
            let si = index(&rest);
            let sign = if i % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let rho = m.rho(xi);
            for a in 0..r {
                for b in 0..r {
                    if !rho[(a, b)].is_zero() {
                        out[(ti * r + a, si * r + b)] += &sign * &rho[(a, b)];
                    }
                }
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &x)| x)
                    .collect();
                let sign = if (i + j) % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                for k in 0..d {
                    let c = g.constant(t[i], t[j], k);
                    if c.is_zero() {
                        continue;
                    }
                    let Some((even, sorted)) = insert_sorted(k, &rest) else {
                        continue;
                    };
                    let si = index(&sorted);
                    let coeff = if even { &sign * c } else { -(&sign * c) };
                    for a in 0..r {
                        out[(ti * r + a, si * r + a)] += coeff.clone();
                    }
                }
            }
        }
    }
    out
}

pub fn ce_complex(g: &LieAlgebra, m: &LieModule, n_max: usize) -> Result<CeComplex> {
    let d = g.dim();
    if m.rho(0).rows() != m.dim() && d > 0 {
        return Err(Error::InvalidModule(
            "module does not match the algebra".into(),
        ));
    }
    let top = n_max.min(d);
    let dims: Vec<usize> = (0..=top).map(|n| subsets(d, n).len() * m.dim()).collect();
    let differentials: Vec<RatMatrix> = (0..top).map(|n| differential(g, m, n)).collect();
    for n in 1..differentials.len() {
        if !differentials[n].mul(&differentials[n - 1]).is_zero() {
            return Err(Error::MalformedComplex(format!(
                "d² ≠ 0 in degree {}",
                n - 1
            )));
        }
    }
    Ok(CeComplex {
        dims,
        differentials,
    })
}

/// `H^n_Lie(𝔤, M)` with a basis of representing cocycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCohomology {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<Vec<BigRational>>,
}

pub fn lie_cohomology(g: &LieAlgebra, m: &LieModule, n: usize) -> Result<LieCohomology> {
    if n > g.dim() {
        return Err(Error::PreconditionFailed(format!(
            "degree {n} exceeds the dimension {}",
            g.dim()
        )));
    }
    let c = ce_complex(g, m, n + 1)?;
    let dn = c.dims[n];
    let cocycles = if n < c.differentials.len() {
        c.differentials[n].kernel_basis()
    } else {
        (0..dn)
            .map(|i| {
                let mut v = vec![BigRational::zero(); dn];
                v[i] = BigRational::one();
                v
            })
            .collect()
    };
    let mut span: Vec<Vec<BigRational>> = if n == 0 {
        Vec::new()
    } else {
        (0..c.differentials[n - 1].cols())
            .map(|j| c.differentials[n - 1].column(j))
            .collect()
    };
    let mut rank = RatMatrix::from_columns(dn, &span).rank();
    let mut basis = Vec::new();
    for z in cocycles {
        span.push(z.clone());
        let r = RatMatrix::from_columns(dn, &span).rank();
        if r > rank {
            rank = r;
            basis.push(z);
        } else {
            span.pop();
        }
    }
    Ok(LieCohomology {
        degree: n,
        dim: basis.len(),
        basis,
    })
}

/// `dim M^𝔤`, computed from the stacked action matrices.
pub fn invariants_dim(g: &LieAlgebra, m: &LieModule) -> usize {
    let parts: Vec<&RatMatrix> = (0..g.dim()).map(|i| m.rho(i)).collect();
    if parts.is_empty() {
        return m.dim();
    }
    m.dim() - RatMatrix::vstack(&parts, m.dim()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(g: &LieAlgebra, m: &LieModule) -> Vec<usize> {
        (0..=g.dim())
            .map(|n| lie_cohomology(g, m, n).unwrap().dim)
            .collect()
    }

    #[test]
    fn abelian_line() {
        let g = LieAlgebra::abelian(1);
        let m = LieModule::trivial(&g, 1);
        let c = ce_complex(&g, &m, 1).unwrap();
        assert!(c.differentials.iter().all(RatMatrix::is_zero));
        assert_eq!(dims(&g, &m), vec![1, 1]);
    }

    #[test]
    fn term_dimensions_are_binomial() {
        let g = LieAlgebra::abelian(4);
        let m = LieModule::trivial(&g, 2);
        assert_eq!(ce_complex(&g, &m, 4).unwrap().dims, vec![2, 8, 12, 8, 2]);
    }

    #[test]
    fn whitehead_lemmas_for_sl2() {
        let g = LieAlgebra::sl2();
        assert_eq!(dims(&g, &LieModule::trivial(&g, 1)), vec![1, 0, 0, 1]);
        let ad = LieModule::adjoint(&g);
        assert_eq!(dims(&g, &ad), vec![0, 0, 0, 0]);
    }

    #[test]
    fn affine_line_trivial_coefficients() {
        let g = LieAlgebra::affine_line();
        assert_eq!(dims(&g, &LieModule::trivial(&g, 1)), vec![1, 1, 0]);
    }

    #[test]
    fn heisenberg_betti_numbers() {
        let g = LieAlgebra::heisenberg();
        assert_eq!(dims(&g, &LieModule::trivial(&g, 1)), vec![1, 2, 2, 1]);
    }

    #[test]
    fn invariants_match_degree_zero() {
        for g in [
            LieAlgebra::sl2(),
            LieAlgebra::affine_line(),
            LieAlgebra::heisenberg(),
        ] {
            let ad = LieModule::adjoint(&g);
            assert_eq!(
                invariants_dim(&g, &ad),
                lie_cohomology(&g, &ad, 0).unwrap().dim
            );
        }
    }
}

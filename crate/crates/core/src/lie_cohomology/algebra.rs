use num_rational::BigRational;
use num_traits::Zero;

use super::rational::RatMatrix;
use crate::error::{Error, Result};

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// A Lie algebra over `Q` by structure constants `[x_i, x_j] = Σ_k c_{ij}^k x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `c[(i·d + j)·d + k]`.
    c: Vec<BigRational>,
}

impl LieAlgebra {
    /// Checks antisymmetry and the Jacobi identity on all basis triples.
    pub fn new(dim: usize, c: Vec<BigRational>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{dim}-dimensional algebra needs {} constants",
                dim.pow(3)
            )));
        }
        let g = LieAlgebra { dim, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if *g.constant(i, j, k) != -g.constant(j, i, k) {
                        return Err(Error::InvalidInput(format!(
                            "bracket is not antisymmetric at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut sum = vec![BigRational::zero(); dim];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (s, v) in sum
                            .iter_mut()
                            .zip(g.bracket(&g.bracket_basis(a, b), &g.unit(c)))
                        {
                            *s += v;
                        }
                    }
                    if sum.iter().any(|x| !x.is_zero()) {
                        return Err(Error::InvalidInput(format!(
                            "Jacobi identity fails on ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds the constants from the brackets `[x_i, x_j]` for `i < j`; unlisted pairs commute.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vec<i64>)]) -> Result<Self> {
        let mut c = vec![BigRational::zero(); dim * dim * dim];
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim || v.len() != dim {
                return Err(Error::DimensionMismatch(
                    "bracket outside the algebra".into(),
                ));
            }
            for (k, &x) in v.iter().enumerate() {
                c[(i * dim + j) * dim + k] = q(x);
                c[(j * dim + i) * dim + k] = q(-x);
            }
        }
        Self::new(dim, c)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(dim, &[]).expect("abelian algebras are Lie")
    }

    /// `sl₂` on `e, f, h`: `[e, f] = h`, `[h, e] = 2e`, `[h, f] = −2f`.
    pub fn sl2() -> Self {
        Self::from_brackets(
            3,
            &[
                (0, 1, vec![0, 0, 1]),
                (0, 2, vec![-2, 0, 0]),
                (1, 2, vec![0, 2, 0]),
            ],
        )
        .expect("sl2 is Lie")
    }

    /// The non-abelian 2-dimensional algebra `[x, y] = y`.
    pub fn affine_line() -> Self {
        Self::from_brackets(2, &[(0, 1, vec![0, 1])]).expect("the affine algebra is Lie")
    }

    /// The Heisenberg algebra `[x, y] = z`.
    pub fn heisenberg() -> Self {
        Self::from_brackets(3, &[(0, 1, vec![0, 0, 1])]).expect("the Heisenberg algebra is Lie")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<BigRational> {
        (0..self.dim)
            .map(|k| self.constant(i, j, k).clone())
            .collect()
    }

    pub fn bracket(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &s * self.constant(i, j, k);
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.dim];
        v[i] = q(1);
        v
    }
}

/// A representation `ρ : 𝔤 → gl(M)` given on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    dim: usize,
    rho: Vec<RatMatrix>,
}

impl LieModule {
    /// Checks `ρ([x_i, x_j]) = [ρ(x_i), ρ(x_j)]` on basis pairs.
    pub fn new(g: &LieAlgebra, dim: usize, rho: Vec<RatMatrix>) -> Result<Self> {
        if rho.len() != g.dim() || rho.iter().any(|r| r.rows() != dim || r.cols() != dim) {
            return Err(Error::DimensionMismatch(
                "one square action matrix per basis element is required".into(),
            ));
        }
        let m = LieModule { dim, rho };
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let lhs = m.action(&g.bracket_basis(i, j));
                let rhs = m.rho[i].mul(&m.rho[j]).sub(&m.rho[j].mul(&m.rho[i]));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "ρ is not a homomorphism on ({i}, {j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn trivial(g: &LieAlgebra, dim: usize) -> Self {
        Self::new(g, dim, vec![RatMatrix::zeros(dim, dim); g.dim()])
            .expect("the zero action is a representation")
    }

    /// `ρ(x_i)(x_j) = [x_i, x_j]`.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        let d = g.dim();
        let rho = (0..d)
            .map(|i| {
                RatMatrix::from_columns(
                    d,
                    &(0..d).map(|j| g.bracket_basis(i, j)).collect::<Vec<_>>(),
                )
            })
            .collect();
        Self::new(g, d, rho).expect("the adjoint action is a representation")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, i: usize) -> &RatMatrix {
        &self.rho[i]
    }

    /// `ρ(x)` for a combination of basis elements.
    pub fn action(&self, x: &[BigRational]) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.dim, self.dim);
        for (c, r) in x.iter().zip(&self.rho) {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    out[(i, j)] += c * &r[(i, j)];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_violation_detected() {
        // [x, y] = x, [y, z] = y, [x, z] = z fails Jacobi
        let err = LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![1, 0, 0]),
                (1, 2, vec![0, 1, 0]),
                (0, 2, vec![0, 0, 1]),
            ],
        );
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn adjoint_of_sl2_is_a_module() {
        let g = LieAlgebra::sl2();
        assert_eq!(LieModule::adjoint(&g).dim(), 3);
    }
}

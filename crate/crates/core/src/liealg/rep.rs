use alloc::vec::Vec;

use super::{son_basis, LieAlg};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::{Scalar, SeriesMatrix};

/// `X_i -> matrices[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rep {
    algebra: LieAlg,
    dim: usize,
    matrices: Vec<Matrix>,
}

impl Rep {
    pub fn new(algebra: LieAlg, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{} matrices for algebra of dimension {}",
                matrices.len(),
                algebra.dim()
            )));
        }
        let dim = matrices.first().map_or(0, |m| m.rows());
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("representation matrices".into()));
        }
        Ok(Self { algebra, dim, matrices })
    }

    pub fn zero(algebra: LieAlg, dim: usize) -> Self {
        let matrices = (0..algebra.dim()).map(|_| Matrix::zero(dim, dim)).collect();
        Self { algebra, dim, matrices }
    }

    pub fn adjoint(g: &LieAlg) -> Self {
        Self::new(g.clone(), g.ad_basis()).expect("ad has the right shape")
    }

    /// Defining representation of `so(n)` on `R^n`.
    pub fn son_defining(n: usize) -> Self {
        Self::new(LieAlg::son(n), son_basis(n)).expect("shape")
    }

    /// Spin-`j` irrep of su2 with `2j = two_j`, `dpi(X_k) = -i J_k`, in the
    /// basis `f_mu` (`mu = j, j-1, ..., -j`) where `J+ f_mu = (j-mu) f_{mu+1}`,
    /// `J- f_mu = (j+mu) f_{mu-1}`. Integer ladder entries, so everything is exact.
    pub fn su2_irrep(two_j: usize) -> Self {
        let d = two_j + 1;
        let mut jp = Matrix::zero(d, d);
        let mut jm = Matrix::zero(d, d);
        let mut j3 = Matrix::zero(d, d);
        for r in 0..d {
            // row r <-> mu = j - r, so j - mu = r and j + mu = 2j - r
            j3.set(r, r, Scalar::ratio(two_j as i64 - 2 * r as i64, 2));
            if r > 0 {
                jp.set(r - 1, r, Scalar::from_int(r as i64));
            }
            if r + 1 < d {
                jm.set(r + 1, r, Scalar::from_int((two_j - r) as i64));
            }
        }
        let half = Scalar::ratio(1, 2);
        let i = Scalar::i();
        let j1 = (&jp + &jm).scale(&half);
        // (J+ - J-)/(2i) = -(i/2)(J+ - J-)
        let j2 = (&jp - &jm).scale(&-&(&i * &half));
        let mi = -&i;
        let mats = alloc::vec![j1.scale(&mi), j2.scale(&mi), j3.scale(&mi)];
        Self::new(LieAlg::su2(), mats).expect("shape")
    }

    pub fn algebra(&self) -> &LieAlg {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Matrix> {
        if x.len() != self.matrices.len() {
            return Err(Error::DimensionMismatch("coefficient vector".into()));
        }
        let mut acc = Matrix::zero(self.dim, self.dim);
        for (m, c) in self.matrices.iter().zip(x) {
            if !c.is_zero() {
                acc = &acc + &m.scale(c);
            }
        }
        Ok(acc)
    }

    /// `R(sum x_i X_i)` with symbolic coordinates.
    pub fn symbolic(&self, order: u32) -> Result<SeriesMatrix> {
        SeriesMatrix::linear(&self.matrices, order)
    }

    /// `sum_i R(X_i)^2`.
    pub fn casimir(&self) -> Matrix {
        let mut acc = Matrix::zero(self.dim, self.dim);
        for m in &self.matrices {
            acc = &acc + &(m * m);
        }
        acc
    }

    /// Homomorphism check `[R(X_i), R(X_j)] = sum_k c_ij^k R(X_k)`.
    pub fn validate(&self) -> CheckReport {
        let g = &self.algebra;
        let d = g.dim();
        let mut rep = CheckReport::new(alloc::format!("rep of {} on C^{}", g.name(), self.dim));
        for i in 0..d {
            for j in i + 1..d {
                let lhs = self.matrices[i].commutator(&self.matrices[j]).expect("square");
                let mut rhs = Matrix::zero(self.dim, self.dim);
                for k in 0..d {
                    let c = g.c(i, j, k);
                    if !num_traits::Zero::is_zero(c) {
                        rhs = &rhs + &self.matrices[k].scale(&Scalar::from_rational(c.clone()));
                    }
                }
                rep.require(lhs == rhs, || alloc::format!("homomorphism fails on [X{}, X{}]", i + 1, j + 1));
            }
        }
        rep
    }

    /// All matrices antisymmetric (lands in so(dim)).
    pub fn is_orthogonal(&self) -> bool {
        self.matrices.iter().all(Matrix::is_antisymmetric)
    }

    /// Same representation in the basis `Y_a = sum_i p[i][a] X_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let algebra = self.algebra.change_basis(p)?;
        let d = algebra.dim();
        let matrices = (0..d)
            .map(|a| self.eval(&(0..d).map(|i| p.get(i, a).clone()).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, matrices)
    }

    /// Replace the underlying algebra (same dimension) without touching matrices.
    pub fn with_algebra(&self, algebra: LieAlg) -> Result<Self> {
        Self::new(algebra, self.matrices.clone())
    }

    /// Replace one generator matrix; used for corrupted fixtures.
    pub fn with_matrix(&self, i: usize, m: Matrix) -> Result<Self> {
        let mut matrices = self.matrices.clone();
        matrices[i] = m;
        Self::new(self.algebra.clone(), matrices)
    }
}

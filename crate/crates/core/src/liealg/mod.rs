//! Lie algebras by structure constants on a basis declared orthonormal for
//! an invariant inner product, and their matrix representations.

mod rep;

pub use rep::Rep;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::{rat, Rational, Scalar, SeriesMatrix};

/// `[X_i, X_j] = sum_k c[i][j][k] X_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlg {
    name: String,
    d: usize,
    c: Vec<Rational>,
}

impl LieAlg {
    pub fn new(name: impl Into<String>, d: usize) -> Self {
        Self { name: name.into(), d, c: alloc::vec![Rational::zero(); d * d * d] }
    }

    /// Sets `c_ij^k` and `c_ji^k = -c_ij^k`.
    pub fn with_bracket(mut self, i: usize, j: usize, k: usize, v: Rational) -> Self {
        self.set_const(j, i, k, -v.clone());
        self.set_const(i, j, k, v);
        self
    }

    /// Raw single-slot write (no antisymmetrization); used for corrupted fixtures.
    pub fn set_const(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.d;
        self.c[(i * d + j) * d + k] = v;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.d + j) * self.d + k]
    }

    pub fn abelian(d: usize) -> Self {
        Self::new(alloc::format!("abelian({d})"), d)
    }

    /// Basis `X_k = -(i/2) sigma_k`, `[X_1, X_2] = X_3` cyclic, orthonormal for `-2 tr`.
    pub fn su2() -> Self {
        Self::new("su2", 3)
            .with_bracket(0, 1, 2, Rational::one())
            .with_bracket(1, 2, 0, Rational::one())
            .with_bracket(2, 0, 1, Rational::one())
    }

    /// Rotation generators `(L_i)_{jk} = -eps_{ijk}`, structure constants read off the matrices.
    pub fn so3() -> Self {
        Self::from_matrix_basis("so3", &so3_generators()).expect("so3 basis is closed")
    }

    /// `E_ab = e_a e_b^T - e_b e_a^T`, `a < b`, orthonormal for `-tr/2`.
    pub fn son(n: usize) -> Self {
        Self::from_matrix_basis(alloc::format!("so({n})"), &son_basis(n))
            .expect("so(n) basis is closed")
    }

    /// Parses `abelian(d)`, `su2`, `so3`, `son(n)` / `so(n)`.
    pub fn builtin(name: &str) -> Result<Self> {
        let name = name.trim();
        let arg = |prefix: &str| -> Option<usize> {
            name.strip_prefix(prefix)?.strip_suffix(')')?.trim().parse().ok()
        };
        if name == "su2" {
            Ok(Self::su2())
        } else if name == "so3" {
            Ok(Self::so3())
        } else if let Some(d) = arg("abelian(") {
            Ok(Self::abelian(d))
        } else if let Some(n) = arg("son(").or_else(|| arg("so(")) {
            Ok(Self::son(n))
        } else {
            Err(Error::UnknownAlgebra(name.to_string()))
        }
    }

    /// Structure constants of the matrix Lie algebra spanned by `basis`.
    pub fn from_matrix_basis(name: impl Into<String>, basis: &[Matrix]) -> Result<Self> {
        let d = basis.len();
        let mut g = Self::new(name, d);
        let coords = coordinate_system(basis)?;
        for i in 0..d {
            for j in 0..d {
                let br = basis[i].commutator(&basis[j])?;
                let x = coords(&br)?;
                for (k, v) in x.into_iter().enumerate() {
                    let r = v.as_rational().ok_or_else(|| {
                        Error::Validation("non-rational structure constant".into())
                    })?;
                    g.set_const(i, j, k, r);
                }
            }
        }
        Ok(g)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = alloc::vec![Scalar::zero(); self.d];
        for i in 0..self.d {
            for j in 0..self.d {
                if x[i].is_zero() || y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &xy.scale_rat(c);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_len(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch(alloc::format!(
                "vector of length {} for algebra of dimension {}",
                x.len(),
                self.d
            )));
        }
        Ok(())
    }

    /// Matrix of `ad(X)`: column `j` holds the coordinates of `[X, X_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_len(x)?;
        let d = self.d;
        let mut m = Matrix::zero(d, d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                for k in 0..d {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        let v = m.get(k, j) + &x[i].scale_rat(c);
                        m.set(k, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self) -> Vec<Matrix> {
        (0..self.d).map(|i| self.ad(&unit(self.d, i)).expect("length matches")).collect()
    }

    /// `ad(sum x_i X_i)` with symbolic coordinates.
    pub fn ad_symbolic(&self, order: u32) -> Result<SeriesMatrix> {
        if self.d == 0 {
            return Err(Error::DimensionMismatch("zero-dimensional algebra".into()));
        }
        SeriesMatrix::linear(&self.ad_basis(), order)
    }

    /// Antisymmetry, Jacobi, invariance of the declared-orthonormal inner product.
    pub fn validate(&self) -> CheckReport {
        let d = self.d;
        let mut rep = CheckReport::new(alloc::format!("validate {}", self.name));
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.c(i, j, k) != &-self.c(j, i, k) {
                        rep.fail(alloc::format!("antisymmetry c[{i}][{j}][{k}]"));
                    }
                    if self.c(i, j, k) != &-self.c(i, k, j) {
                        rep.fail(alloc::format!("invariance c[{i}][{j}][{k}] vs c[{i}][{k}][{j}]"));
                    }
                }
            }
        }
        // [[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj] = 0
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for m in 0..d {
                        let mut acc = Rational::zero();
                        for l in 0..d {
                            acc += self.c(i, j, l) * self.c(l, k, m)
                                + self.c(j, k, l) * self.c(l, i, m)
                                + self.c(k, i, l) * self.c(l, j, m);
                        }
                        if !acc.is_zero() {
                            rep.fail(alloc::format!("Jacobi ({i},{j},{k}) component {m}"));
                        }
                    }
                }
            }
        }
        rep
    }

    /// Structure constants in the basis `Y_a = sum_i p[i][a] X_i` (any invertible `p`).
    /// The new basis is declared orthonormal; `validate` detects when that is false.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let d = self.d;
        if p.rows() != d || p.cols() != d {
            return Err(Error::DimensionMismatch("basis change".into()));
        }
        let pinv = p.inverse()?;
        let col = |a: usize| (0..d).map(|i| p.get(i, a).clone()).collect::<Vec<_>>();
        let mut out = Self::new(self.name.clone(), d);
        for a in 0..d {
            for b in 0..d {
                let br = self.bracket(&col(a), &col(b))?;
                let coords = pinv.apply(&br)?;
                for (c, v) in coords.into_iter().enumerate() {
                    let r = v.as_rational().ok_or_else(|| {
                        Error::Validation("basis change must be rational".into())
                    })?;
                    out.set_const(a, b, c, r);
                }
            }
        }
        Ok(out)
    }

    /// Orthonormalizes the Gram matrix `gram` of the current basis exactly and
    /// returns `(algebra, P)`; fails if a norm is not a rational square.
    pub fn with_inner_product(&self, gram: &Matrix) -> Result<(Self, Matrix)> {
        let p = orthonormalize(gram)?;
        Ok((self.change_basis(&p)?, p))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Scalar> {
        (0..self.d).map(|_| Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect()
    }
}

pub fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = alloc::vec![Scalar::zero(); d];
    v[i] = Scalar::one();
    v
}

fn so3_generators() -> Vec<Matrix> {
    // (L_i)_{jk} = -eps_{ijk}
    alloc::vec![
        Matrix::from_ints(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
        Matrix::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
        Matrix::from_ints(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]),
    ]
}

pub fn son_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut m = Matrix::zero(n, n);
            m.set(a, b, Scalar::one());
            m.set(b, a, -Scalar::one());
            out.push(m);
        }
    }
    out
}

type Coords = alloc::boxed::Box<dyn Fn(&Matrix) -> Result<Vec<Scalar>>>;

/// Returns a closure extracting coordinates of a matrix in the span of `basis`.
fn coordinate_system(basis: &[Matrix]) -> Result<Coords> {
    let Some(first) = basis.first() else {
        return Ok(alloc::boxed::Box::new(|_| Ok(Vec::new())));
    };
    let (r, c) = (first.rows(), first.cols());
    let a = Matrix::from_fn(r * c, basis.len(), |row, col| basis[col].get(row / c, row % c).clone());
    if a.rank()? != basis.len() {
        return Err(Error::Validation("matrix basis is linearly dependent".into()));
    }
    Ok(alloc::boxed::Box::new(move |m: &Matrix| {
        let flat: Vec<Scalar> = (0..r * c).map(|k| m.get(k / c, k % c).clone()).collect();
        a.solve(&flat)?
            .ok_or_else(|| Error::Validation("bracket leaves the span".into()))
    }))
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// Exact Gram-Schmidt; columns of the result are orthonormal for `gram`.
pub fn orthonormalize(gram: &Matrix) -> Result<Matrix> {
    let d = gram.rows();
    if !gram.is_square() || gram != &gram.transpose() {
        return Err(Error::NotOrthonormalizable("Gram matrix must be symmetric".into()));
    }
    let g = |u: &[Scalar], v: &[Scalar]| -> Scalar {
        let gv = gram.apply(v).expect("length");
        u.iter().zip(&gv).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
    };
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..d {
        let mut v = unit(d, i);
        for b in &basis {
            let proj = g(b, &v);
            v = v.iter().zip(b).map(|(x, y)| x - &(&proj * y)).collect();
        }
        let norm2 = g(&v, &v)
            .as_rational()
            .ok_or_else(|| Error::NotOrthonormalizable("non-rational norm".into()))?;
        if !norm2.is_positive() {
            return Err(Error::NotOrthonormalizable("not positive definite".into()));
        }
        let s = rational_sqrt(&norm2).ok_or_else(|| {
            Error::NotOrthonormalizable(alloc::format!("norm^2 = {norm2} is not a square"))
        })?;
        let inv = Scalar::from_rational(s.recip());
        basis.push(v.iter().map(|x| x * &inv).collect());
    }
    Ok(Matrix::from_fn(d, d, |r, c| basis[c][r].clone()))
}

/// Exact rational orthogonal matrix `(I - A)(I + A)^{-1}` for antisymmetric `A`.
pub fn cayley(a: &Matrix) -> Result<Matrix> {
    if !a.is_antisymmetric() {
        return Err(Error::Precondition("Cayley transform needs an antisymmetric matrix".into()));
    }
    let id = Matrix::identity(a.rows());
    (&id - a).try_mul(&(&id + a).inverse()?)
}

pub fn random_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Matrix {
    let mut a = Matrix::zero(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let v = Scalar::from_rational(rat(rng.gen_range(-3..=3), rng.gen_range(1..=4)));
            a.set(i, j, v.clone());
            a.set(j, i, -v);
        }
    }
    cayley(&a).expect("I + A is invertible for antisymmetric A")
}

pub fn is_orthogonal(p: &Matrix) -> bool {
    p.is_square() && &p.transpose() * p == Matrix::identity(p.rows())
}

use alloc::vec::Vec;

use super::{grade, Blade, CliffElt};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Graded irreducible Cl(n)-module for even n, built from Pauli tensor products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorRep {
    n: usize,
    gens: Vec<Matrix>,
    grading: Matrix,
}

fn pauli() -> (Matrix, Matrix, Matrix) {
    let i = Scalar::i();
    let z = Scalar::zero;
    let o = Scalar::one;
    let s1 = Matrix::from_rows(alloc::vec![alloc::vec![z(), o()], alloc::vec![o(), z()]]).unwrap();
    let s2 = Matrix::from_rows(alloc::vec![alloc::vec![z(), -&i], alloc::vec![i.clone(), z()]])
        .unwrap();
    let s3 = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
    (s1, s2, s3)
}

fn tensor(factors: &[Matrix]) -> Matrix {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, m| acc.kron(m))
}

impl SpinorRep {
    /// `n` in {2, 4, 6}.
    pub fn new(n: usize) -> Result<Self> {
        if !matches!(n, 2 | 4 | 6) {
            return Err(Error::UnsupportedSpinorDim(n));
        }
        let k = n / 2;
        let (s1, s2, s3) = pauli();
        let i = Scalar::i();
        let id = Matrix::identity(2);
        let mut gens = Vec::with_capacity(n);
        for m in 0..k {
            for s in [&s1, &s2] {
                let factors: Vec<Matrix> = (0..k)
                    .map(|slot| match slot.cmp(&m) {
                        core::cmp::Ordering::Less => s3.clone(),
                        core::cmp::Ordering::Equal => s.scale(&i),
                        core::cmp::Ordering::Greater => id.clone(),
                    })
                    .collect();
                gens.push(tensor(&factors));
            }
        }
        let mut grading = Matrix::identity(1 << k).scale(&i.pow(k as u32));
        for g in &gens {
            grading = &grading * g;
        }
        Ok(Self { n, gens, grading })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn module_dim(&self) -> usize {
        1 << (self.n / 2)
    }

    pub fn generator(&self, i: usize) -> &Matrix {
        &self.gens[i]
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn grading(&self) -> &Matrix {
        &self.grading
    }

    pub fn blade(&self, b: Blade) -> Matrix {
        let mut acc = Matrix::identity(self.module_dim());
        let mut rest = b;
        while rest != 0 {
            acc = &acc * &self.gens[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        debug_assert!(grade(b) as usize <= self.n);
        acc
    }

    pub fn represent(&self, a: &CliffElt) -> Result<Matrix> {
        if a.dim() != self.n {
            return Err(Error::DimensionMismatch("spinor rep dimension".into()));
        }
        let d = self.module_dim();
        let mut acc = Matrix::zero(d, d);
        for (b, c) in a.terms() {
            acc = &acc + &self.blade(b).scale(c);
        }
        Ok(acc)
    }

    /// `tr(Gamma M)`.
    pub fn supertrace(&self, m: &Matrix) -> Result<Scalar> {
        Ok(self.grading.try_mul(m)?.trace())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dim_explicit() {
        let s = SpinorRep::new(2).unwrap();
        let i = Scalar::i();
        let z = Scalar::zero();
        assert_eq!(
            s.generator(0),
            &Matrix::from_rows(alloc::vec![alloc::vec![z.clone(), i.clone()], alloc::vec![i, z]])
                .unwrap()
        );
        assert_eq!(s.generator(1), &Matrix::from_ints(&[&[0, 1], &[-1, 0]]));
        assert_eq!(s.grading(), &Matrix::from_ints(&[&[1, 0], &[0, -1]]));
        assert!(s.supertrace(&Matrix::identity(2)).unwrap().is_zero());
    }

    #[test]
    fn relations_and_grading() {
        for n in [2, 4, 6] {
            let s = SpinorRep::new(n).unwrap();
            let d = s.module_dim();
            for a in 0..n {
                for b in 0..n {
                    let ac = s.generator(a).anticommutator(s.generator(b)).unwrap();
                    let expect = if a == b {
                        Matrix::identity(d).scale(&Scalar::from_int(-2))
                    } else {
                        Matrix::zero(d, d)
                    };
                    assert_eq!(ac, expect);
                }
                assert!(s.grading().anticommutator(s.generator(a)).unwrap().is_zero());
            }
            assert_eq!(s.grading().pow(2).unwrap(), Matrix::identity(d));
            assert!(s.grading().is_diagonal());
        }
    }

    #[test]
    fn unsupported_dims() {
        assert_eq!(SpinorRep::new(3), Err(Error::UnsupportedSpinorDim(3)));
        assert_eq!(SpinorRep::new(8), Err(Error::UnsupportedSpinorDim(8)));
    }
}

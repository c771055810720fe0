//! Shipped representations and deliberately corrupted variants used by the
//! verification suites.

use alloc::vec::Vec;

use crate::error::Result;
use crate::liealg::{son_basis, LieAlg, Rep};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, Series};

/// `abelian(1) -> so(2)`, unit-rate rotation of `(e1, e2)`.
pub fn rotation() -> Rep {
    Rep::new(LieAlg::new("rotation", 1), alloc::vec![Matrix::from_ints(&[&[0, -1], &[1, 0]])])
        .expect("shape")
}

/// `su2 -> so(3)`, the adjoint representation.
pub fn su2_adjoint() -> Rep {
    Rep::adjoint(&LieAlg::su2())
}

/// `so(4)` on `R^4`.
pub fn so4_defining() -> Rep {
    Rep::son_defining(4)
}

/// `su2 -> so(4)` through half left multiplication by the unit quaternions.
pub fn quaternion_su2() -> Rep {
    let li = Matrix::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let lj = Matrix::from_ints(&[&[0, 0, -1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]]);
    let lk = Matrix::from_ints(&[&[0, 0, 0, -1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
    let h = Scalar::ratio(1, 2);
    Rep::new(LieAlg::su2(), alloc::vec![li.scale(&h), lj.scale(&h), lk.scale(&h)]).expect("shape")
}

/// Fixtures on which the Weil identities are expected to hold.
pub fn weil_fixtures() -> Vec<Rep> {
    alloc::vec![rotation(), su2_adjoint(), so4_defining()]
}

/// `so(4)` in the basis `E12 + E34, E34, E13, E14, E23, E24`, which is not
/// orthonormal for any invariant inner product.
pub fn non_invariant_so4() -> Result<Rep> {
    let e = son_basis(4);
    let basis = alloc::vec![&e[0] + &e[5], e[5].clone(), e[1].clone(), e[2].clone(), e[3].clone(), e[4].clone()];
    let g = LieAlg::from_matrix_basis("so(4) skewed", &basis)?;
    Rep::new(g, basis)
}

/// The defining `so(4)` with `alpha(E12)` replaced by `E12 + E34`.
pub fn non_homomorphic_so4() -> Result<Rep> {
    let e = son_basis(4);
    Rep::son_defining(4).with_matrix(0, &e[0] + &e[5])
}

/// `1, x, ..., x^{max}` on the one-dimensional torus.
pub fn torus_monomials(max: u32, order: u32) -> Vec<Series> {
    (0..=max).map(|p| Series::var(1, order, 0).pow(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussmoment::check_lemma;
    use crate::weil::{build_spindata, check_identities};
    use rand::SeedableRng;

    #[test]
    fn non_invariant_basis_is_detected() {
        let alpha = non_invariant_so4().unwrap();
        assert!(!alpha.algebra().validate().passed());
        let sd = build_spindata(&alpha).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let rep = check_identities(&sd, 4, &mut rng).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn non_homomorphic_gamma_is_detected() {
        let alpha = non_homomorphic_so4().unwrap();
        assert!(!alpha.validate().passed());
        let sd = build_spindata(&alpha).unwrap();
        assert!(!sd.check_gamma().passed());
        let phi = Series::var(6, 4, 0).pow(2);
        assert!(!check_lemma(&phi, &sd).unwrap().passed());
    }
}

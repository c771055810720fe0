//! Lowest-degree exact polynomial fits over Q(i)[pi, 1/pi].

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFit {
    /// `coeffs[k]` multiplies `m^k`.
    pub coeffs: Vec<Scalar>,
    /// Sum of the residuals' squared moduli over all points (zero for an exact fit).
    pub residual: Scalar,
}

impl PolyFit {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, m: i64) -> Scalar {
        let x = Scalar::from_int(m);
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * &x) + c)
    }

    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }
}

fn interpolate(points: &[(i64, Scalar)], deg: usize) -> Option<Vec<Scalar>> {
    let pts = &points[..deg + 1];
    let v = Matrix::from_fn(deg + 1, deg + 1, |r, c| Scalar::from_int(pts[r].0).pow(c as u32));
    let rhs: Vec<Scalar> = pts.iter().map(|(_, y)| y.clone()).collect();
    v.solve(&rhs).ok().flatten()
}

/// Tries degrees `0..=max_deg` in order and returns the first exact fit, or
/// the degree-`max_deg` interpolant through the first points with its residual.
pub fn fit_polynomial(points: &[(i64, Scalar)], max_deg: usize) -> Option<PolyFit> {
    if points.is_empty() {
        return None;
    }
    let mut last = None;
    for deg in 0..=max_deg.min(points.len() - 1) {
        let coeffs = interpolate(points, deg)?;
        let mut fit = PolyFit { coeffs, residual: Scalar::zero() };
        for (m, y) in points {
            let r = &fit.eval(*m) - y;
            fit.residual += &(&r * &r.conj());
        }
        if fit.is_exact() {
            return Some(fit);
        }
        last = Some(fit);
    }
    last
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_data() {
        let pts: Vec<_> = (-3..=3).map(|m| (m, Scalar::from_int(2 - m))).collect();
        let f = fit_polynomial(&pts, 3).unwrap();
        assert!(f.is_exact());
        assert_eq!(f.degree(), 1);
        assert_eq!(f.coeffs, alloc::vec![Scalar::from_int(2), Scalar::from_int(-1)]);
    }

    #[test]
    fn non_polynomial_has_residual() {
        let pts: Vec<_> = (0..6).map(|m| (m, Scalar::from_int(1 << m))).collect();
        let f = fit_polynomial(&pts, 2).unwrap();
        assert!(!f.is_exact());
    }
}

//! Formal Gaussian integration of `phi(X) e^{-lambda(X)}` against the heat
//! kernel `h_t(X) = (4 pi t)^{-d/2} exp(-|X|^2 / 4t)`, grouped by powers of `t`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::gradedalg::Multivector;
use crate::report::CheckReport;
use crate::scalar::{int, Monomial, Rational, Scalar, Series};
use crate::weil::{eval_at_mixed, SpinData};

/// `int h_t X^beta dX = coeff * t^{t_pow}`; zero when some exponent is odd.
pub fn gaussian_moment(beta: &Monomial) -> (Scalar, u32) {
    let e = beta.exponents();
    if e.iter().any(|a| a % 2 == 1) {
        return (Scalar::zero(), 0);
    }
    let mut c = Rational::one();
    for &a in e {
        // (2t)^{a/2} (a-1)!!
        let mut k = a as i64 - 1;
        while k > 1 {
            c *= int(k);
            k -= 2;
        }
        for _ in 0..a / 2 {
            c *= int(2);
        }
    }
    (Scalar::from_rational(c), beta.degree() / 2)
}

/// Coefficients `Psi_0, ..., Psi_K` of the small-`t` expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsympExpansion {
    pub psi: Vec<Multivector>,
}

impl AsympExpansion {
    pub fn k_max(&self) -> usize {
        self.psi.len().saturating_sub(1)
    }
}

/// Polynomial in `x` with exterior coefficients.
type PolyMv = BTreeMap<Monomial, Multivector>;

fn poly_mul(a: &PolyMv, b: &PolyMv, max_deg: u32) -> PolyMv {
    let mut out = PolyMv::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            if m.degree() > max_deg {
                continue;
            }
            let prod = ca * cb;
            if prod.is_zero() {
                continue;
            }
            let slot = out.entry(m).or_insert_with(|| Multivector::zero(prod.dim()));
            *slot = &*slot + &prod;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `exp(-lambda(X))` as a polynomial in `x` (finite: `lambda` is nilpotent).
fn exp_minus_lambda(sd: &SpinData, max_deg: u32) -> PolyMv {
    let d = sd.algebra().dim();
    let n = sd.n();
    let mut lam = PolyMv::new();
    for i in 0..d {
        let l = sd.lambda(i);
        if !l.is_zero() {
            lam.insert(Monomial::var(d, i), -l);
        }
    }
    let mut acc = PolyMv::new();
    acc.insert(Monomial::one(d), Multivector::one(n));
    let mut term = acc.clone();
    for k in 1..=(n / 2) as i64 {
        term = poly_mul(&term, &lam, max_deg);
        let inv = Scalar::ratio(1, k);
        for v in term.values_mut() {
            *v = v.scale(&inv);
        }
        for (m, v) in &term {
            let slot = acc.entry(m.clone()).or_insert_with(|| Multivector::zero(n));
            *slot = &*slot + v;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

pub fn expand(phi: &Series, sd: &SpinData, k_max: u32) -> Result<AsympExpansion> {
    let d = sd.algebra().dim();
    if phi.dim() != d {
        return Err(Error::DimensionMismatch("phi vs algebra".into()));
    }
    if 2 * k_max > phi.order() {
        return Err(Error::Precondition(alloc::format!(
            "K = {k_max} needs phi to order {}, have {}",
            2 * k_max,
            phi.order()
        )));
    }
    let n = sd.n();
    let max_deg = 2 * k_max;
    let phi_poly: PolyMv = phi
        .terms()
        .filter(|(m, _)| m.degree() <= max_deg)
        .map(|(m, c)| (m.clone(), Multivector::scalar(n, c.clone())))
        .collect();
    let integrand = poly_mul(&phi_poly, &exp_minus_lambda(sd, max_deg), max_deg);
    let mut psi: Vec<Multivector> = (0..=k_max).map(|_| Multivector::zero(n)).collect();
    for (m, v) in &integrand {
        let (c, tp) = gaussian_moment(m);
        if c.is_zero() {
            continue;
        }
        psi[tp as usize] = &psi[tp as usize] + &v.scale(&c);
    }
    Ok(AsympExpansion { psi })
}

/// (a) `Psi_k` lies in degrees `{0, 2, ..., 2k}`; (b) its degree-`2k` part
/// equals that of `phi(-2 Lambda)` for `k <= n/2`.
pub fn check_lemma(phi: &Series, sd: &SpinData) -> Result<CheckReport> {
    let top = (sd.n() / 2) as u32;
    let exp = expand(phi, sd, top)?;
    let target = eval_at_mixed(phi, &sd.minus_two_lambda())?;
    let mut rep = CheckReport::new("Gaussian moment lemma");
    for (k, psi) in exp.psi.iter().enumerate() {
        let k = k as u32;
        rep.require(psi.within_even_degrees(k), || {
            alloc::format!("Psi_{k} has degrees {:?}", psi.grades())
        });
        let lhs = psi.grade_part(2 * k);
        let rhs = target.grade_part(2 * k);
        rep.require(lhs == rhs, || alloc::format!("Psi_{k} top part {lhs} != {rhs}"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{LieAlg, Rep};
    use crate::matrix::Matrix;
    use crate::weil::build_spindata;

    fn rotation() -> SpinData {
        let alpha =
            Rep::new(LieAlg::abelian(1), alloc::vec![Matrix::from_ints(&[&[0, -1], &[1, 0]])]).unwrap();
        build_spindata(&alpha).unwrap()
    }

    #[test]
    fn moments() {
        assert_eq!(gaussian_moment(&Monomial::one(3)), (Scalar::one(), 0));
        assert_eq!(gaussian_moment(&Monomial::from_exponents(&[2])), (Scalar::from_int(2), 1));
        assert!(gaussian_moment(&Monomial::from_exponents(&[1])).0.is_zero());
        // E[x^4] = 3 (2t)^2 = 12 t^2
        assert_eq!(gaussian_moment(&Monomial::from_exponents(&[4])), (Scalar::from_int(12), 2));
    }

    #[test]
    fn trivial_lambda() {
        let sd = build_spindata(&Rep::zero(LieAlg::abelian(1), 2)).unwrap();
        let e = expand(&Series::one(1, 4), &sd, 2).unwrap();
        assert_eq!(e.psi[0], Multivector::one(2));
        assert!(e.psi[1].is_zero() && e.psi[2].is_zero());
    }

    #[test]
    fn linear_phi_on_rotation() {
        let sd = rotation();
        let e = expand(&Series::var(1, 4, 0), &sd, 1).unwrap();
        let expect = Multivector::from_indices(2, &[0, 1], Scalar::from_int(-1));
        assert_eq!(e.psi[1].grade_part(2), expect);
        assert!(check_lemma(&Series::var(1, 4, 0), &sd).unwrap().passed());
    }

    #[test]
    fn phi_one_on_rotation() {
        // Hand expansion: exp(-x e12/2) = 1 - x e12/2, only the constant survives.
        let e = expand(&Series::one(1, 2), &rotation(), 1).unwrap();
        assert_eq!(e.psi[0], Multivector::one(2));
        assert!(e.psi[1].is_zero());
    }

    #[test]
    fn order_precondition() {
        assert!(matches!(expand(&Series::one(1, 1), &rotation(), 1), Err(Error::Precondition(_))));
    }
}

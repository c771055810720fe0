//! Point-supported distributions on g and near e in G, the Duflo map
//! `exp_* ∘ j_g` and its inverse, realised through pairings.
//!
//! Functions near `e` are carried by their exp-pullback series, so `log^*` is
//! the identity on representatives. Pairing convention:
//! `<d^beta delta, phi> = (d^beta phi)(0)` (no `(-1)^|beta|`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::fit::fit_polynomial;
use crate::liealg::{LieAlg, Rep};
use crate::report::CheckReport;
use crate::scalar::{int, Monomial, Rational, Scalar, Series};
use crate::weil::{j_series, JKind};

/// `sum_beta a_beta d^beta delta_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dist0 {
    dim: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Dist0 {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn delta(dim: usize) -> Self {
        Self::derivative(Monomial::one(dim), Scalar::one())
    }

    pub fn derivative(beta: Monomial, c: Scalar) -> Self {
        let mut u = Self::zero(beta.dim());
        u.add_term(beta, c);
        u
    }

    /// `sum_i d_i^2 delta`, the symbol of the quadratic Casimir.
    pub fn casimir_symbol(dim: usize) -> Self {
        let mut u = Self::zero(dim);
        for i in 0..dim {
            let mut e = alloc::vec![0u8; dim];
            e[i] = 2;
            u.add_term(Monomial::from_exponents(&e), Scalar::one());
        }
        u
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, beta: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(beta.clone()).or_insert_with(Scalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&beta);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch("distribution sum".into()));
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, x) in &self.terms {
            out.add_term(b.clone(), x * c);
        }
        out
    }

    /// Highest derivative order present.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The distribution `phi -> <self, s phi>`, expanded by Leibniz.
    pub fn mul_by(&self, s: &Series) -> Result<Self> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch("multiplier series".into()));
        }
        if s.order() < self.max_order() {
            return Err(Error::OrderTooLow);
        }
        let mut out = Self::zero(self.dim);
        for (beta, a) in &self.terms {
            // d^beta (s phi)(0) = sum_{gamma <= beta} C(beta, gamma) d^{beta-gamma} s(0) d^gamma phi(0)
            for gamma in sub_indices(beta) {
                let rest: Vec<u8> =
                    beta.exponents().iter().zip(gamma.exponents()).map(|(b, g)| b - g).collect();
                let rest = Monomial::from_exponents(&rest);
                let ds = s.derivative_at_zero(&rest);
                if ds.is_zero() {
                    continue;
                }
                let c = (&ds * a).scale_rat(&binom_multi(beta, &gamma));
                out.add_term(gamma, c);
            }
        }
        Ok(out)
    }
}

fn sub_indices(beta: &Monomial) -> Vec<Monomial> {
    let mut out = alloc::vec![Vec::new()];
    for &b in beta.exponents() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u8>| {
                (0..=b).map(move |g| {
                    let mut p = prefix.clone();
                    p.push(g);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|e| Monomial::from_exponents(&e)).collect()
}

fn binom_multi(beta: &Monomial, gamma: &Monomial) -> Rational {
    let mut c = Rational::one();
    for (&b, &g) in beta.exponents().iter().zip(gamma.exponents()) {
        for k in 0..g as i64 {
            c = c * int(b as i64 - k) / int(k + 1);
        }
    }
    c
}

/// `<u, phi> = sum a_beta (d^beta phi)(0)`.
pub fn pair0(u: &Dist0, phi: &Series) -> Result<Scalar> {
    if u.dim != phi.dim() {
        return Err(Error::DimensionMismatch("distribution vs series".into()));
    }
    if phi.order() < u.max_order() {
        return Err(Error::OrderTooLow);
    }
    let mut acc = Scalar::zero();
    for (beta, a) in &u.terms {
        acc += &(a * &phi.derivative_at_zero(beta));
    }
    Ok(acc)
}

/// `exp_*(u)`: a distribution on G supported at `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistG {
    pub u: Dist0,
}

fn j_to(g: &LieAlg, order: u32) -> Result<Series> {
    Ok(j_series(JKind::Lie(g), order.max(1))?.into_series())
}

/// `Duf(u) = exp_*(j_g u)`, where `<j_g u, phi> = <u, j_g phi>`.
pub fn duflo(u: &Dist0, g: &LieAlg) -> Result<DistG> {
    let j = j_to(g, u.max_order())?;
    Ok(DistG { u: u.mul_by(&j)? })
}

/// `Duf^{-1}(T) = j_g^{-1} log_*(T)`.
pub fn duflo_inv(t: &DistG, g: &LieAlg) -> Result<Dist0> {
    let j = j_to(g, t.u.max_order())?;
    t.u.mul_by(&j.invert()?)
}

/// `<exp_*(u), f> = <u, exp^* f>`.
pub fn pair_g(t: &DistG, f_pullback: &Series) -> Result<Scalar> {
    pair0(&t.u, f_pullback)
}

/// `chi_m ∘ exp` on su2 as a series: `sin((m+1)s)/sin(s)` with `s^2 = |x|^2/4`.
pub fn su2_character_pullback(m: u32, order: u32) -> Result<Series> {
    let terms = (order / 2 + 1) as usize;
    // numerator sin((m+1)s)/s and denominator sin(s)/s as series in u = s^2
    let mut num = Vec::with_capacity(terms);
    let mut den = Vec::with_capacity(terms);
    let mut fact = Rational::one();
    let a = int(m as i64 + 1);
    let mut a_pow = a.clone();
    for k in 0..terms {
        if k > 0 {
            fact = fact * int(2 * k as i64) * int(2 * k as i64 + 1);
            a_pow = a_pow * &a * &a;
        }
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        num.push(&sign * &a_pow / &fact);
        den.push(sign / &fact);
    }
    // quotient by long division (den[0] = 1)
    let mut q: Vec<Rational> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut c = num[k].clone();
        for i in 0..k {
            c -= &q[i] * &den[k - i];
        }
        q.push(c);
    }
    let mut u = Series::zero(3, order);
    for i in 0..3 {
        let x = Series::var(3, order, i);
        u = &u + &(&x * &x);
    }
    let u = u.scale(&Scalar::ratio(1, 4));
    // sum_k q_k u^k
    let mut acc = Series::zero(3, order);
    let mut power = Series::one(3, order);
    for c in q {
        acc = &acc + &power.scale(&Scalar::from_rational(c));
        power = &power * &u;
    }
    Ok(acc)
}

/// Result of pairing the Casimir symbol with one su2 character.
#[derive(Clone, Debug)]
pub struct HarishChandra {
    pub m: u32,
    /// `<Duf(sum d_i^2 delta), chi_m ∘ exp> / dim`
    pub with_j: Scalar,
    /// `<sum d_i^2 delta, chi_m ∘ exp> / dim`
    pub without_j: Scalar,
    /// Brute-force eigenvalue of `sum r(X_i)^2` on the irrep.
    pub casimir: Scalar,
}

pub fn harish_chandra_value(m: u32) -> Result<HarishChandra> {
    let g = LieAlg::su2();
    let u = Dist0::casimir_symbol(3);
    let chi = su2_character_pullback(m, 4)?;
    let dim = Scalar::from_int(m as i64 + 1);
    let with_j = pair_g(&duflo(&u, &g)?, &chi)?.checked_div(&dim)?;
    let without_j = pair0(&u, &chi)?.checked_div(&dim)?;
    let cas = Rep::su2_irrep(m as usize).casimir();
    Ok(HarishChandra { m, with_j, without_j, casimir: cas.get(0, 0).clone() })
}

/// Over `m = 0..=m_max`: the pairing without `j` reproduces the Casimir, the
/// Duflo pairing is shifted by the constant `<sum d_i^2 delta, j_g>`, and the
/// values fit a quadratic in `m` exactly.
pub fn harish_chandra_check(m_max: u32) -> Result<CheckReport> {
    let mut rep = CheckReport::new("Harish-Chandra / Duflo");
    let shift = pair0(&Dist0::casimir_symbol(3), &j_to(&LieAlg::su2(), 2)?)?;
    rep.value("shift", shift.canonical());
    let mut points = Vec::new();
    for m in 0..=m_max {
        let hc = harish_chandra_value(m)?;
        rep.require(hc.without_j == hc.casimir, || {
            alloc::format!("m = {m}: pairing {} != Casimir {}", hc.without_j, hc.casimir)
        });
        rep.require(&hc.with_j - &hc.casimir == shift, || {
            alloc::format!("m = {m}: Duflo pairing {} not Casimir + shift", hc.with_j)
        });
        rep.value(alloc::format!("m={m}"), hc.with_j.canonical());
        points.push((m as i64, hc.with_j));
    }
    match fit_polynomial(&points, 2) {
        Some(f) if f.is_exact() && f.degree() <= 2 => {
            rep.value("fit", alloc::format!("{:?}", f.coeffs));
        }
        other => rep.fail(alloc::format!("no exact quadratic fit: {other:?}")),
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{AnalyticFn, SeriesMatrix};

    #[test]
    fn delta_and_second_derivative() {
        let phi = &Series::constant(1, 4, Scalar::from_int(5)) + &Series::var(1, 4, 0).pow(2);
        assert_eq!(pair0(&Dist0::delta(1), &phi).unwrap(), Scalar::from_int(5));
        let d2 = Dist0::derivative(Monomial::from_exponents(&[2]), Scalar::one());
        assert_eq!(pair0(&d2, &Series::var(1, 4, 0).pow(2)).unwrap(), Scalar::from_int(2));
        assert_eq!(pair0(&d2, &Series::var(1, 1, 0)), Err(Error::OrderTooLow));
    }

    #[test]
    fn odd_j_has_no_linear_term() {
        let j = j_to(&LieAlg::su2(), 4).unwrap();
        for i in 0..3 {
            let d = Dist0::derivative(Monomial::var(3, i), Scalar::one());
            assert!(pair0(&d, &j).unwrap().is_zero());
        }
    }

    #[test]
    fn abelian_duflo_is_identity() {
        let u = Dist0::derivative(Monomial::from_exponents(&[3, 1]), Scalar::from_int(2));
        assert_eq!(duflo(&u, &LieAlg::abelian(2)).unwrap().u, u);
    }

    #[test]
    fn delta_survives_duflo() {
        let t = duflo(&Dist0::delta(3), &LieAlg::su2()).unwrap();
        let f = &Series::constant(3, 4, Scalar::from_int(7)) + &Series::var(3, 4, 1);
        assert_eq!(pair_g(&t, &f).unwrap(), Scalar::from_int(7));
    }

    #[test]
    fn derivative_against_even_pullback() {
        let t = DistG { u: Dist0::derivative(Monomial::var(1, 0), Scalar::one()) };
        assert!(pair_g(&t, &Series::var(1, 4, 0).pow(2)).unwrap().is_zero());
    }

    #[test]
    fn character_matches_matrix_exponential() {
        for m in 0..=4u32 {
            let r = Rep::su2_irrep(m as usize);
            let tr = SeriesMatrix::eval_univariate(AnalyticFn::Exp, &r.symbolic(6).unwrap())
                .unwrap()
                .trace()
                .unwrap();
            assert_eq!(su2_character_pullback(m, 6).unwrap(), tr, "m = {m}");
        }
    }

    #[test]
    fn casimir_pattern() {
        let hc = harish_chandra_value(1).unwrap();
        assert_eq!(hc.casimir, Scalar::ratio(-3, 4));
        assert_eq!(hc.without_j, hc.casimir);
        assert_eq!(hc.with_j, Scalar::from_int(-1));
        let rep = harish_chandra_check(5).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
    }
}

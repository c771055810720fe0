use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, Rational, Scalar};
use crate::error::{Error, Result};

/// Exponent multi-index `x_1^{a_1} ... x_d^{a_d}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self(e)
    }

    pub fn from_exponents(e: &[u8]) -> Self {
        Self(e.to_vec())
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&a| a as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `beta! = prod_i beta_i!`.
    pub fn factorial(&self) -> Rational {
        let mut acc = Rational::one();
        for &a in &self.0 {
            for k in 2..=a as i64 {
                acc *= int(k);
            }
        }
        acc
    }

    /// All exponent vectors of total degree exactly `deg` in `dim` variables.
    pub fn all_of_degree(dim: usize, deg: u32) -> Vec<Monomial> {
        fn rec(dim: usize, left: u32, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
            if cur.len() + 1 == dim {
                cur.push(left as u8);
                out.push(Monomial(cur.clone()));
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a as u8);
                rec(dim, left - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if deg == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(dim, deg, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Power series in `dim` variables truncated at total degree `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    dim: usize,
    order: u32,
    coeffs: BTreeMap<Monomial, Scalar>,
}

impl Series {
    pub fn zero(dim: usize, order: u32) -> Self {
        Self { dim, order, coeffs: BTreeMap::new() }
    }

    pub fn constant(dim: usize, order: u32, c: Scalar) -> Self {
        let mut s = Self::zero(dim, order);
        s.add_term(Monomial::one(dim), c);
        s
    }

    pub fn one(dim: usize, order: u32) -> Self {
        Self::constant(dim, order, Scalar::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(dim: usize, order: u32, i: usize) -> Self {
        let mut s = Self::zero(dim, order);
        s.add_term(Monomial::var(dim, i), Scalar::one());
        s
    }

    pub fn from_terms(
        dim: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut s = Self::zero(dim, order);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "monomial has {} variables, series has {dim}",
                    m.dim()
                )));
            }
            s.add_term(m, c);
        }
        Ok(s)
    }

    /// Univariate coefficient list `sum_k c_k x_var^k`.
    pub fn from_univariate(dim: usize, order: u32, var: usize, coeffs: &[Scalar]) -> Self {
        let mut s = Self::zero(dim, order);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0u8; dim];
            e[var] = k as u8;
            s.add_term(Monomial(e), c.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.dim))
    }

    /// Adds `c x^m`, dropping it if its degree exceeds the truncation order.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        let slot = self.coeffs.entry(m.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self {
            dim: self.dim,
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        Self {
            dim: self.dim,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(Monomial::degree).max()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(alloc::format!(
                "series in {} and {} variables",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.truncate(other.order);
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.dim, order);
        let rhs: Vec<(&Monomial, u32, &Scalar)> =
            other.coeffs.iter().map(|(m, c)| (m, m.degree(), c)).collect();
        for (ma, ca) in &self.coeffs {
            let da = ma.degree();
            if da > order {
                continue;
            }
            for (mb, db, cb) in &rhs {
                if da + db <= order {
                    out.add_term(ma.mul(mb), ca * *cb);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.dim, self.order);
        for (m, a) in &self.coeffs {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `sum_k c_k u^k` for a series `u` without constant term.
    pub fn compose_univariate(coeffs: &[Scalar], u: &Series) -> Result<Series> {
        if !u.constant_term().is_zero() {
            return Err(Error::NotNilpotent);
        }
        let mut acc = Series::zero(u.dim, u.order);
        let mut power = Series::one(u.dim, u.order);
        for (k, c) in coeffs.iter().enumerate() {
            if k as u32 > u.order {
                break;
            }
            if !c.is_zero() {
                acc = &acc + &power.scale(c);
            }
            power = &power * u;
        }
        Ok(acc)
    }

    /// Binomial series `(1 + u)^{1/2}` with `u = self - 1`.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.constant_term().is_one() {
            return Err(Error::SqrtNonUnit);
        }
        let u = self - &Series::one(self.dim, self.order);
        let half = super::rat(1, 2);
        let mut coeffs = Vec::new();
        let mut binom = Rational::one();
        for k in 0..=self.order as i64 {
            coeffs.push(Scalar::from_rational(binom.clone()));
            binom = binom * (&half - int(k)) / int(k + 1);
        }
        Series::compose_univariate(&coeffs, &u)
    }

    /// Multiplicative inverse; the constant term must be an invertible scalar.
    pub fn invert(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let c0_inv = c0.inv().map_err(|_| Error::NotInvertible)?;
        let u = &self.scale(&c0_inv) - &Series::one(self.dim, self.order);
        let coeffs: Vec<Scalar> = (0..=self.order)
            .map(|k| Scalar::from_int(if k % 2 == 0 { 1 } else { -1 }))
            .collect();
        Ok(Series::compose_univariate(&coeffs, &u)?.scale(&c0_inv))
    }

    /// `exp(u)` for `u` without constant term.
    pub fn exp(&self) -> Result<Series> {
        Series::compose_univariate(&AnalyticFn::Exp.taylor(self.order), self)
    }

    pub fn derivative(&self, i: usize) -> Series {
        let mut out = Series::zero(self.dim, self.order);
        for (m, c) in &self.coeffs {
            let a = m.0[i];
            if a == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[i] -= 1;
            out.add_term(Monomial(e), c.scale_rat(&int(a as i64)));
        }
        out
    }

    /// `(d^beta s)(0) = beta! * coeff_beta`.
    pub fn derivative_at_zero(&self, beta: &Monomial) -> Scalar {
        self.coeff(beta).scale_rat(&beta.factorial())
    }

    /// Maps every coefficient through `f`.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Series {
        let mut out = Series::zero(self.dim, self.order);
        for (m, c) in &self.coeffs {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Random polynomial of degree `<= max_deg` with small Gaussian-rational coefficients.
    pub fn random_polynomial<R: rand::Rng + ?Sized>(
        dim: usize,
        order: u32,
        max_deg: u32,
        rng: &mut R,
    ) -> Series {
        let mut s = Series::zero(dim, order);
        for deg in 0..=max_deg.min(order) {
            for m in Monomial::all_of_degree(dim, deg) {
                if rng.gen_bool(0.5) {
                    let re = super::rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
                    let im = super::rat(rng.gen_range(-1..=1), 1);
                    s.add_term(m, Scalar::from_gauss(super::GaussRat::new(re, im)));
                }
            }
        }
        s
    }

    /// True when every coefficient has no `pi` or imaginary part.
    pub fn is_rational(&self) -> bool {
        self.coeffs.values().all(|c| c.as_rational().is_some())
    }
}

use super::AnalyticFn;

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        self.try_add(o).expect("series dimension mismatch")
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        self.try_add(&-o).expect("series dimension mismatch")
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        self.try_mul(o).expect("series dimension mismatch")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map_coeffs(|c| -c)
    }
}

impl Zero for Series {
    fn zero() -> Self {
        Series::zero(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, o: Series) -> Series {
        &self + &o
    }
}

impl fmt::Display for Series {
    /// `[scalar]·x1^2·x3 + ...`, monomials in lexicographic exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for (i, &a) in m.0.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{}", i + 1, a)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(dim={}, order={}; {})", self.dim, self.order, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::scalar::rat;

    fn x(i: usize) -> Series {
        Series::var(2, 6, i)
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let one = Series::one(2, 6);
        let s = &(&one + &x(0).scale(&Scalar::from_int(2))) + &(&x(0) * &x(0));
        assert_eq!(s.sqrt().unwrap(), &one + &x(0));
        assert_eq!(one.sqrt().unwrap(), one);
    }

    #[test]
    fn sqrt_rejects_non_unit() {
        let s = Series::constant(1, 4, Scalar::from_int(4));
        assert_eq!(s.sqrt(), Err(Error::SqrtNonUnit));
    }

    #[test]
    fn geometric_inverse() {
        let s = &Series::one(2, 6) + &x(0);
        let inv = s.invert().unwrap();
        let expected: Vec<Scalar> =
            (0..=6).map(|k| Scalar::from_int(if k % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(inv, Series::from_univariate(2, 6, 0, &expected));
        assert_eq!(x(1).invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn truncation_drops_high_degree() {
        let s = x(0).pow(7);
        assert!(s.is_zero());
        assert_eq!(x(0).pow(6).max_degree(), Some(6));
    }

    #[test]
    fn derivative_at_zero_uses_factorials() {
        let s = (&x(0) * &x(0)).scale(&Scalar::from_rational(rat(3, 1)));
        assert_eq!(
            s.derivative_at_zero(&Monomial::from_exponents(&[2, 0])),
            Scalar::from_int(6)
        );
    }

    #[test]
    fn display_is_lexicographic() {
        let s = &(&x(1) + &x(0)) + &Series::one(2, 6);
        assert_eq!(
            s.to_string(),
            "[(1+0i)·pi^0] + [(1+0i)·pi^0]·x2 + [(1+0i)·pi^0]·x1"
        );
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(1, 4).len(), 1);
    }
}

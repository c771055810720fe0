//! Exterior algebra, Clifford algebra (v·v = -|v|²), the Chevalley map and
//! the Berezin supertrace. Blades are bitmasks: bit `i` is generator `e_{i+1}`.

mod spinor;

pub use spinor::SpinorRep;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{GaussRat, Scalar};

pub type Blade = u32;

pub const MAX_DIM: usize = 16;

pub fn grade(b: Blade) -> u32 {
    b.count_ones()
}

/// Parity of the permutation sorting the concatenation `a ++ b`.
fn reorder_odd(a: Blade, b: Blade) -> bool {
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        swaps += (a >> (i + 1)).count_ones();
        rest &= rest - 1;
    }
    swaps % 2 == 1
}

fn full_blade(n: usize) -> Blade {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// Sort key: degree first, then lexicographic on indices.
fn blade_key(b: Blade) -> (u32, Vec<u32>) {
    let mut idx = Vec::new();
    let mut rest = b;
    while rest != 0 {
        idx.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    (grade(b), idx)
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Blade, Scalar>,
    sep: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    let mut sorted: Vec<_> = terms.iter().collect();
    sorted.sort_by_key(|(b, _)| blade_key(**b));
    for (k, (b, c)) in sorted.into_iter().enumerate() {
        if k > 0 {
            f.write_str(" + ")?;
        }
        write!(f, "[{c}]")?;
        if *b != 0 {
            f.write_str("·")?;
            f.write_str(&blade_name(*b, sep))?;
        }
    }
    Ok(())
}

/// `e1^e3` style name (1-based indices).
pub fn blade_name(b: Blade, sep: &str) -> String {
    let (_, idx) = blade_key(b);
    let parts: Vec<String> = idx.iter().map(|i| alloc::format!("e{}", i + 1)).collect();
    parts.join(sep)
}

fn random_coeff<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    let re = rng.gen_range(-4i64..=4);
    let im = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    Scalar::from_gauss(GaussRat::new(
        crate::scalar::rat(re, den),
        crate::scalar::rat(im, den),
    ))
}

macro_rules! blade_algebra {
    ($name:ident, $sep:expr) => {
        #[derive(Clone, PartialEq, Eq)]
        pub struct $name {
            n: usize,
            terms: BTreeMap<Blade, Scalar>,
        }

        impl $name {
            pub fn zero(n: usize) -> Self {
                assert!(n <= MAX_DIM, "ambient dimension above {MAX_DIM}");
                Self { n, terms: BTreeMap::new() }
            }

            pub fn one(n: usize) -> Self {
                Self::scalar(n, Scalar::one())
            }

            pub fn scalar(n: usize, c: Scalar) -> Self {
                Self::blade(n, 0, c)
            }

            pub fn blade(n: usize, b: Blade, c: Scalar) -> Self {
                let mut out = Self::zero(n);
                assert!(b & !full_blade(n) == 0, "blade outside dimension");
                out.add_term(b, c);
                out
            }

            /// Generator `e_{i+1}` (0-based `i`).
            pub fn gen(n: usize, i: usize) -> Self {
                Self::blade(n, 1 << i, Scalar::one())
            }

            /// Product of generators with the given 0-based strictly increasing indices.
            pub fn from_indices(n: usize, idx: &[usize], c: Scalar) -> Self {
                Self::blade(n, idx.iter().fold(0, |b, &i| b | (1 << i)), c)
            }

            pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R, max_terms: usize) -> Self {
                let mut out = Self::zero(n);
                let count = rng.gen_range(0..=max_terms);
                for _ in 0..count {
                    let b = rng.gen_range(0..=full_blade(n));
                    out.add_term(b, random_coeff(rng));
                }
                out
            }

            pub fn dim(&self) -> usize {
                self.n
            }

            pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
                self.terms.iter().map(|(b, c)| (*b, c))
            }

            pub fn num_terms(&self) -> usize {
                self.terms.len()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn coeff(&self, b: Blade) -> Scalar {
                self.terms.get(&b).cloned().unwrap_or_else(Scalar::zero)
            }

            /// Coefficient of `e_1 ... e_n`.
            pub fn top_coeff(&self) -> Scalar {
                self.coeff(full_blade(self.n))
            }

            pub fn add_term(&mut self, b: Blade, c: Scalar) {
                if c.is_zero() {
                    return;
                }
                let entry = self.terms.entry(b).or_insert_with(Scalar::zero);
                *entry += &c;
                if entry.is_zero() {
                    self.terms.remove(&b);
                }
            }

            pub fn grade_part(&self, k: u32) -> Self {
                Self {
                    n: self.n,
                    terms: self
                        .terms
                        .iter()
                        .filter(|(b, _)| grade(**b) == k)
                        .map(|(b, c)| (*b, c.clone()))
                        .collect(),
                }
            }

            pub fn grades(&self) -> Vec<u32> {
                let mut g: Vec<u32> = self.terms.keys().map(|b| grade(*b)).collect();
                g.sort_unstable();
                g.dedup();
                g
            }

            pub fn is_even(&self) -> bool {
                self.terms.keys().all(|b| grade(*b) % 2 == 0)
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                let mut out = Self::zero(self.n);
                for (b, x) in &self.terms {
                    out.add_term(*b, x * c);
                }
                out
            }

            fn check_dim(&self, other: &Self) -> Result<()> {
                if self.n != other.n {
                    return Err(Error::DimensionMismatch(alloc::format!(
                        "n = {} vs n = {}",
                        self.n, other.n
                    )));
                }
                Ok(())
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                self.check_dim(other)?;
                let mut out = self.clone();
                for (b, c) in &other.terms {
                    out.add_term(*b, c.clone());
                }
                Ok(out)
            }

            pub fn canonical(&self) -> String {
                alloc::format!("{self}")
            }
        }

        impl Add<&$name> for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                self.try_add(rhs).expect("ambient dimensions agree")
            }
        }

        impl Sub<&$name> for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                self.try_add(&-rhs).expect("ambient dimensions agree")
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale(&-Scalar::one())
            }
        }

        impl Mul<&$name> for &$name {
            type Output = $name;
            fn mul(self, rhs: &$name) -> $name {
                self.try_mul(rhs).expect("ambient dimensions agree")
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_terms(f, &self.terms, $sep)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

blade_algebra!(Multivector, "^");
blade_algebra!(CliffElt, " ");

impl Multivector {
    /// Wedge product; the product of this type.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = x * y;
                out.add_term(a | b, if reorder_odd(*a, *b) { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `sum_k m^k / k!`, finite since `m` has no degree-0 part.
    pub fn exterior_exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::DegreeZeroComponent);
        }
        let mut acc = Self::one(self.n);
        let mut term = Self::one(self.n);
        let mut k = 1i64;
        loop {
            term = (&term * self).scale(&Scalar::ratio(1, k));
            if term.is_zero() {
                return Ok(acc);
            }
            acc = &acc + &term;
            k += 1;
        }
    }

    /// Inverse Chevalley map: blade-wise identity on coefficients.
    pub fn chevalley_inv(&self) -> CliffElt {
        CliffElt { n: self.n, terms: self.terms.clone() }
    }

    /// Bivector `sum_{i<j} a_ij e_i^e_j` from an antisymmetric matrix.
    pub fn from_bivector_matrix(a: &Matrix) -> Result<Self> {
        if !a.is_antisymmetric() {
            return Err(Error::AlphaNotAntisymmetric);
        }
        let n = a.rows();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in i + 1..n {
                out.add_term((1 << i) | (1 << j), a.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// True iff every component has even degree `<= 2k`.
    pub fn within_even_degrees(&self, k: u32) -> bool {
        self.terms.keys().all(|b| grade(*b) % 2 == 0 && grade(*b) <= 2 * k)
    }
}

impl CliffElt {
    /// Clifford product with `e_i e_i = -1`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let odd = reorder_odd(*a, *b) ^ (grade(a & b) % 2 == 1);
                let c = x * y;
                out.add_term(a ^ b, if odd { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.try_mul(other)? - &other.try_mul(self)?)
    }

    /// Vector `c(v) = sum v_i e_i`.
    pub fn vector(v: &[Scalar]) -> Self {
        let mut out = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            out.add_term(1 << i, c.clone());
        }
        out
    }

    /// Chevalley map to the exterior algebra.
    pub fn chevalley(&self) -> Multivector {
        Multivector { n: self.n, terms: self.terms.clone() }
    }

    /// `(-2i)^{n/2}` times the top coefficient.
    pub fn berezin_supertrace(&self) -> Result<Scalar> {
        if self.n % 2 == 1 {
            return Err(Error::OddDimension);
        }
        let factor = (&Scalar::i() * &Scalar::from_int(-2)).pow((self.n / 2) as u32);
        Ok(&factor * &self.top_coeff())
    }

    /// Same as `berezin_supertrace` with an explicit sign knob (for sensitivity fixtures).
    pub fn berezin_supertrace_signed(&self, sign: i64) -> Result<Scalar> {
        Ok(&self.berezin_supertrace()? * &Scalar::from_int(sign))
    }
}

/// Does the Chevalley image of `span{e_i e_j : i<j}` equal the full exterior square?
pub fn bivectors_span_exterior_square(n: usize) -> Result<bool> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let target: Vec<Blade> = pairs.iter().map(|&(i, j)| (1 << i) | (1 << j)).collect();
    let mut rows = Vec::new();
    for &(i, j) in &pairs {
        let prod = &CliffElt::gen(n, i) * &CliffElt::gen(n, j);
        let img = prod.chevalley();
        if img.grades() != [2] {
            return Ok(false);
        }
        rows.push(target.iter().map(|b| img.coeff(*b)).collect::<Vec<_>>());
    }
    if pairs.is_empty() {
        return Ok(true);
    }
    Ok(Matrix::from_rows(rows)?.rank()? == target.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn e(n: usize, i: usize) -> CliffElt {
        CliffElt::gen(n, i)
    }

    #[test]
    fn clifford_sign_convention() {
        assert_eq!(&e(2, 0) * &e(2, 0), -&CliffElt::one(2));
        let e12 = CliffElt::from_indices(2, &[0, 1], Scalar::one());
        assert_eq!(&e(2, 0) * &e(2, 1), e12);
        assert_eq!(&e(2, 1) * &e(2, 0), -&e12);
        assert_eq!(&e12 * &e12, -&CliffElt::one(2));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(e(2, 0).try_mul(&e(3, 0)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn chevalley_on_bivector() {
        let img = (&e(2, 0) * &e(2, 1)).chevalley();
        assert_eq!(img, &Multivector::gen(2, 0) * &Multivector::gen(2, 1));
        assert_eq!(CliffElt::one(3).chevalley(), Multivector::one(3));
    }

    #[test]
    fn supertrace_values() {
        assert!(CliffElt::one(2).berezin_supertrace().unwrap().is_zero());
        let e12 = CliffElt::from_indices(2, &[0, 1], Scalar::one());
        assert_eq!(
            e12.berezin_supertrace().unwrap(),
            &Scalar::i() * &Scalar::from_int(-2)
        );
        let e1234 = CliffElt::from_indices(4, &[0, 1, 2, 3], Scalar::one());
        assert_eq!(e1234.berezin_supertrace().unwrap(), Scalar::from_int(-4));
        assert_eq!(CliffElt::one(3).berezin_supertrace(), Err(Error::OddDimension));
    }

    #[test]
    fn exterior_exp_examples() {
        assert_eq!(Multivector::zero(4).exterior_exp().unwrap(), Multivector::one(4));
        let w12 = Multivector::from_indices(2, &[0, 1], Scalar::one());
        assert_eq!(w12.exterior_exp().unwrap(), &Multivector::one(2) + &w12);

        let a = Multivector::from_indices(4, &[0, 1], Scalar::one());
        let b = Multivector::from_indices(4, &[2, 3], Scalar::one());
        let expected = &(&(&Multivector::one(4) + &a) + &b)
            + &Multivector::from_indices(4, &[0, 1, 2, 3], Scalar::one());
        assert_eq!((&a + &b).exterior_exp().unwrap(), expected);
        assert_eq!(Multivector::one(2).exterior_exp(), Err(Error::DegreeZeroComponent));
    }

    #[test]
    fn wedge_graded_commutative() {
        let a = Multivector::gen(3, 0);
        let b = Multivector::from_indices(3, &[1, 2], Scalar::one());
        assert_eq!(&a * &b, &b * &a);
        let c = Multivector::gen(3, 1);
        assert_eq!(&a * &c, -&(&c * &a));
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn blade_printing() {
        let w = Multivector::from_indices(3, &[0, 2], Scalar::one());
        assert_eq!(w.to_string(), "[(1+0i)·pi^0]·e1^e3");
        let c = &CliffElt::one(3) + &CliffElt::from_indices(3, &[0, 1], Scalar::from_int(2));
        assert_eq!(c.to_string(), "[(1+0i)·pi^0] + [(2+0i)·pi^0]·e1 e2");
        assert_eq!(Multivector::zero(2).to_string(), "0");
    }

    #[test]
    fn exterior_square_image() {
        for n in 0..=6 {
            assert!(bivectors_span_exterior_square(n).unwrap());
        }
    }
}

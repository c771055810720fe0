use alloc::vec::Vec;

use super::{int, Rational, Scalar, Series};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

use num_traits::One;

/// Analytic functions with rational Taylor coefficients at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticFn {
    /// `sinh(z/2) / (z/2)`
    SinhcHalf,
    /// `exp(z)`
    Exp,
    /// `exp(-z)`
    ExpNeg,
}

impl AnalyticFn {
    /// Taylor coefficients `c_0, ..., c_order`.
    pub fn taylor(self, order: u32) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(order as usize + 1);
        let mut fact = Rational::one();
        for k in 0..=order as i64 {
            if k > 0 {
                fact *= int(k);
            }
            let c = match self {
                AnalyticFn::Exp => fact.recip(),
                AnalyticFn::ExpNeg => {
                    let c = fact.recip();
                    if k % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                }
                AnalyticFn::SinhcHalf => {
                    if k % 2 == 1 {
                        Rational::from_integer(0.into())
                    } else {
                        // z^{2m} / (4^m (2m+1)!)
                        let mut f = Rational::one();
                        for q in 2..=k + 1 {
                            f *= int(q);
                        }
                        let four_m = Rational::from_integer(num_bigint::BigInt::from(4).pow((k / 2) as u32));
                        (f * four_m).recip()
                    }
                }
            };
            out.push(Scalar::from_rational(c));
        }
        out
    }
}

/// Matrix whose entries are truncated series sharing `dim` and `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    dim: usize,
    order: u32,
    entries: Vec<Series>,
}

impl SeriesMatrix {
    pub fn zero(rows: usize, cols: usize, dim: usize, order: u32) -> Self {
        Self {
            rows,
            cols,
            dim,
            order,
            entries: (0..rows * cols).map(|_| Series::zero(dim, order)).collect(),
        }
    }

    pub fn identity(n: usize, dim: usize, order: u32) -> Self {
        let mut m = Self::zero(n, n, dim, order);
        for i in 0..n {
            m.entries[i * n + i] = Series::one(dim, order);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Series>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty series matrix".into()))?;
        let (dim, order) = (first.dim(), first.order());
        if entries.len() != rows * cols
            || entries.iter().any(|s| s.dim() != dim || s.order() != order)
        {
            return Err(Error::DimensionMismatch("series matrix entries".into()));
        }
        Ok(Self { rows, cols, dim, order, entries })
    }

    /// `sum_i x_i M_i` for constant matrices `M_i`.
    pub fn linear(mats: &[Matrix], order: u32) -> Result<Self> {
        let dim = mats.len();
        let (rows, cols) = mats
            .first()
            .map(|m| (m.rows(), m.cols()))
            .ok_or_else(|| Error::DimensionMismatch("no matrices".into()))?;
        let mut out = Self::zero(rows, cols, dim, order);
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::DimensionMismatch("linear matrix family".into()));
            }
            for r in 0..rows {
                for c in 0..cols {
                    let x = Series::var(dim, order, i).scale(m.get(r, c));
                    out.entries[r * cols + c] = &out.entries[r * cols + c] + &x;
                }
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> &Series {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Series) {
        self.entries[r * self.cols + c] = s;
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("series matrix product".into()));
        }
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.rows, other.cols, self.dim, order);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Series::zero(self.dim, order);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&a.try_mul(b)?)?;
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("series matrix sum".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { entries, order: self.order.min(other.order), ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { entries: self.entries.iter().map(|s| s.scale(c)).collect(), ..self.clone() }
    }

    pub fn trace(&self) -> Result<Series> {
        let n = self.require_square()?;
        let mut acc = Series::zero(self.dim, self.order);
        for i in 0..n {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    /// `sum_k c_k A^k` truncated at the common order.
    pub fn eval_univariate(f: AnalyticFn, a: &SeriesMatrix) -> Result<SeriesMatrix> {
        Self::eval_coeffs(&f.taylor(a.order), a)
    }

    pub fn eval_coeffs(coeffs: &[Scalar], a: &SeriesMatrix) -> Result<SeriesMatrix> {
        let n = a.require_square()?;
        if a.entries.iter().any(|s| !s.constant_term().is_zero()) {
            return Err(Error::NotNilpotent);
        }
        let mut acc = Self::zero(n, n, a.dim, a.order);
        let mut power = Self::identity(n, a.dim, a.order);
        for (k, c) in coeffs.iter().enumerate() {
            if k as u32 > a.order {
                break;
            }
            if !c.is_zero() {
                acc = acc.try_add(&power.scale(c))?;
            }
            power = power.try_mul(a)?;
        }
        Ok(acc)
    }

    /// Determinant by Laplace expansion memoized over column subsets.
    pub fn det(&self) -> Result<Series> {
        let n = self.require_square()?;
        if n > 16 {
            return Err(Error::Precondition("determinant size above 16".into()));
        }
        let full = (1usize << n) - 1;
        let mut memo: Vec<Option<Series>> = alloc::vec![None; full + 1];
        memo[0] = Some(Series::one(self.dim, self.order));
        for mask in 1..=full {
            let row = mask.count_ones() as usize - 1;
            let mut acc = Series::zero(self.dim, self.order);
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let entry = self.get(row, c);
                if entry.is_zero() {
                    continue;
                }
                let minor = memo[mask & !(1 << c)].as_ref().expect("subset filled first");
                let higher = (mask >> (c + 1)).count_ones();
                let term = entry * minor;
                acc = if higher % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            memo[mask] = Some(acc);
        }
        Ok(memo[full].take().expect("full subset"))
    }

    /// Pfaffian of an antisymmetric matrix of even size.
    pub fn pfaffian(&self) -> Result<Series> {
        let n = self.require_square()?;
        if n % 2 == 1 {
            return Ok(Series::zero(self.dim, self.order));
        }
        let full = (1usize << n) - 1;
        Ok(self.pf_rec(full))
    }

    fn pf_rec(&self, mask: usize) -> Series {
        if mask == 0 {
            return Series::one(self.dim, self.order);
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = Series::zero(self.dim, self.order);
        let mut pos = 0;
        for j in 0..(usize::BITS as usize) {
            if rest & (1 << j) == 0 {
                continue;
            }
            let entry = self.get(first, j);
            if !entry.is_zero() {
                let sub = self.pf_rec(rest & !(1 << j));
                let term = entry * &sub;
                acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            pos += 1;
        }
        acc
    }
}

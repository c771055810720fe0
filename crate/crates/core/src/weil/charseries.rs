use super::{eval_at_mixed, MixedElt};
use crate::error::{Error, Result};
use crate::liealg::{LieAlg, Rep};
use crate::scalar::{rat, AnalyticFn, GaussRat, Scalar, Series, SeriesMatrix};

/// A series on g together with the outcome of its infinitesimal invariance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSeries {
    series: Series,
    invariant: bool,
}

impl InvariantSeries {
    pub fn new(series: Series, g: &LieAlg) -> Result<Self> {
        if series.dim() != g.dim() {
            return Err(Error::DimensionMismatch("series vs algebra".into()));
        }
        let invariant = is_invariant(&series, g);
        Ok(Self { series, invariant })
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn is_invariant(&self) -> bool {
        self.invariant
    }

    pub fn into_series(self) -> Series {
        self.series
    }
}

/// `sum_{j,k} c_ij^k x_j d_k s = 0` for each `i`. The vector field preserves
/// degree, so the check is exact through the truncation order.
pub fn is_invariant(s: &Series, g: &LieAlg) -> bool {
    let d = g.dim();
    let derivs: alloc::vec::Vec<Series> = (0..d).map(|k| s.derivative(k)).collect();
    (0..d).all(|i| {
        let mut acc = Series::zero(d, s.order());
        for j in 0..d {
            for (k, dk) in derivs.iter().enumerate() {
                let c = g.c(i, j, k);
                if num_traits::Zero::is_zero(c) || dk.is_zero() {
                    continue;
                }
                let xj = Series::var(d, s.order(), j).scale(&Scalar::from_rational(c.clone()));
                acc = &acc + &(&xj * dk);
            }
        }
        acc.is_zero()
    })
}

#[derive(Clone, Copy, Debug)]
pub enum JKind<'a> {
    /// `j_g = det^{1/2}[sinh(ad X/2)/(ad X/2)]`
    Lie(&'a LieAlg),
    /// `j_M`, same with `alpha(X)`
    Isotropy(&'a Rep),
    /// `tr exp(-tau(X))`
    Chern(&'a Rep),
}

pub fn j_series(kind: JKind<'_>, order: u32) -> Result<InvariantSeries> {
    match kind {
        JKind::Lie(g) => {
            let s = sqrt_det_sinhc(&g.ad_symbolic(order)?)?;
            InvariantSeries::new(s, g)
        }
        JKind::Isotropy(alpha) => {
            let s = sqrt_det_sinhc(&alpha.symbolic(order)?)?;
            InvariantSeries::new(s, alpha.algebra())
        }
        JKind::Chern(tau) => {
            let s = if tau.dim() == 0 {
                Series::zero(tau.algebra().dim(), order)
            } else {
                SeriesMatrix::eval_univariate(AnalyticFn::ExpNeg, &tau.symbolic(order)?)?.trace()?
            };
            InvariantSeries::new(s, tau.algebra())
        }
    }
}

fn sqrt_det_sinhc(a: &SeriesMatrix) -> Result<Series> {
    SeriesMatrix::eval_univariate(AnalyticFn::SinhcHalf, a)?.det()?.sqrt()
}

/// `i^{n/2} Pf(alpha(X))`; zero for odd `n`.
pub fn euler_series(alpha: &Rep, order: u32) -> Result<Series> {
    let n = alpha.dim();
    if n % 2 == 1 {
        return Ok(Series::zero(alpha.algebra().dim(), order));
    }
    let pf = alpha.symbolic(order)?.pfaffian()?;
    Ok(pf.scale(&Scalar::i().pow((n / 2) as u32)))
}

/// `1 / (2 pi i)`
pub fn two_pi_i_inv() -> Scalar {
    Scalar::monomial(GaussRat::new(rat(0, 1), rat(-1, 2)), -1)
}

/// Integration over an oriented homogeneous `M` as a volume functional on the
/// top-degree coefficient in the ordered orthonormal frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundClass {
    pub n: usize,
    /// Positive total volume.
    pub volume: Scalar,
    /// `+1` if `e_1 ^ ... ^ e_n` is positively oriented, else `-1`.
    pub orientation: i8,
}

impl FundClass {
    pub fn new(n: usize, volume: Scalar, orientation: i8) -> Self {
        Self { n, volume, orientation }
    }

    pub fn signed_volume(&self) -> Scalar {
        &self.volume * &Scalar::from_int(self.orientation as i64)
    }

    /// Fixes volume and orientation so that the Euler class pairs to `chi`.
    pub fn calibrate(euler: &Series, curvature: &MixedElt, chi: i64) -> Result<Self> {
        let n = curvature.n();
        let unit = Self::new(n, Scalar::one(), 1);
        let per_unit = cw_pair(euler, curvature, &unit)?;
        let signed = Scalar::from_int(chi).checked_div(&per_unit)?;
        let (k, c) = signed
            .as_monomial()
            .ok_or_else(|| Error::Validation("calibrated volume is not a monomial".into()))?;
        if !num_traits::Zero::is_zero(&c.im) {
            return Err(Error::Validation(alloc::format!("calibrated volume {signed} is not real")));
        }
        let positive = num_traits::Signed::is_positive(&c.re);
        let magnitude = Scalar::monomial(GaussRat::real(num_traits::Signed::abs(&c.re)), k);
        Ok(Self::new(n, magnitude, if positive { 1 } else { -1 }))
    }
}

/// `< phi(Theta / 2 pi i), [M] >`.
pub fn cw_pair(phi: &Series, curvature: &MixedElt, model: &FundClass) -> Result<Scalar> {
    if model.n != curvature.n() {
        return Err(Error::DimensionMismatch("fundamental class vs curvature".into()));
    }
    let form = eval_at_mixed(phi, &curvature.scale(&two_pi_i_inv()))?;
    Ok(&form.top_coeff() * &model.signed_volume())
}

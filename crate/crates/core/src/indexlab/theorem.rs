//! Both sides of the index formula, plus the local-index route.

use alloc::string::String;
use alloc::vec::Vec;

use super::{torus_period, CharSum, HomogModel};
use crate::duflo::{duflo_inv, pair0, Dist0, DistG};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalar::{Monomial, Scalar, Series};
use crate::weil::{cw_pair, eval_at_mixed, j_series, two_pi_i_inv, JKind};

/// Multiplying a character label `k` is `(4 pi / 2 pi i) d/dx = -2i d/dx` on `chi_k ∘ exp`.
pub fn derivative_factor() -> Scalar {
    &torus_period() * &two_pi_i_inv()
}

/// `<Duf^{-1}(sum_k Q(k) chi_k), phi>` with `sum_k k^p chi_k = (-2i)^p d^p delta_0`.
pub fn lhs_exact(cs: &CharSum, g_model: &HomogModel, phi: &Series) -> Result<Scalar> {
    let q = cs.pattern()?;
    let g = g_model.torus();
    if phi.dim() != g.dim() {
        return Err(Error::DimensionMismatch("phi vs torus".into()));
    }
    let f = derivative_factor();
    let mut u = Dist0::zero(1);
    for (p, c) in q.coeffs.iter().enumerate() {
        u.add_term(Monomial::from_exponents(&[p as u8]), c * &f.pow(p as u32));
    }
    pair0(&duflo_inv(&DistG { u }, g)?, phi)
}

/// `tr exp(-tau)` on the twisting factor `W` (`E = S ⊗ W`, `tau = 1 ⊗ tau_W`).
fn chern_w(m: &HomogModel, order: u32) -> Result<Series> {
    let tau = crate::liealg::Rep::new(m.torus().clone(), m.tau().to_vec())?;
    let ch = j_series(JKind::Chern(&tau), order)?.into_series();
    Ok(ch.scale(&Scalar::ratio(1, m.spinor_dim() as i64)))
}

fn integrand(m: &HomogModel, phi: &Series) -> Result<Series> {
    let order = phi.order().max(2);
    let jm_inv = j_series(JKind::Isotropy(m.alpha()), order)?.into_series().invert()?;
    let ch = chern_w(m, order)?;
    Ok(&(&jm_inv * &ch) * phi)
}

/// `< j_M^{-1} ch(W) phi (Theta / 2 pi i), [M] >`.
pub fn rhs_exact(m: &HomogModel, phi: &Series) -> Result<Scalar> {
    cw_pair(&integrand(m, phi)?, m.curvature(), m.fund_class())
}

/// `|V| (4 pi)^{-n/2} Str(sigma^{-1}(F(-2 Lambda)))` with `F = j_g j_M^{-1} ch(W) j_g^{-1} phi`.
pub fn local_index(m: &HomogModel, phi: &Series) -> Result<Scalar> {
    let order = phi.order().max(2);
    let jg = j_series(JKind::Lie(m.torus()), order)?.into_series();
    let f = &(&jg * &integrand(m, phi)?) * &jg.invert()?;
    let form = eval_at_mixed(&f, &m.spin().minus_two_lambda())?;
    let n = m.spin().n() as i32;
    let norm = Scalar::pi_pow(-n / 2).scale_rat(&crate::scalar::rat(1, 4i64.pow((n / 2) as u32)));
    let str_ = form.chevalley_inv().berezin_supertrace_signed(m.supertrace_sign())?;
    Ok(&(&m.fund_class().volume * &norm) * &str_)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremRow {
    pub twist: i64,
    pub phi: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub local: Scalar,
}

impl TheoremRow {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.local == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub rows: Vec<TheoremRow>,
    pub report: CheckReport,
}

/// Compares both sides for every test function.
pub fn theorem_check(m: &HomogModel, cutoff: usize, phis: &[Series]) -> Result<TheoremReport> {
    let cs = m.distributional_index(cutoff)?;
    let mut report = CheckReport::new(alloc::format!("index formula w={}", m.twist()));
    report.absorb(&cs.report);
    let mut rows = Vec::with_capacity(phis.len());
    for phi in phis {
        let row = TheoremRow {
            twist: m.twist(),
            phi: alloc::format!("{phi}"),
            lhs: lhs_exact(&cs, m, phi)?,
            rhs: rhs_exact(m, phi)?,
            local: local_index(m, phi)?,
        };
        report.require(row.holds(), || {
            alloc::format!(
                "phi = {}: lhs {} rhs {} local {}",
                row.phi,
                row.lhs,
                row.rhs,
                row.local
            )
        });
        rows.push(row);
    }
    Ok(TheoremReport { rows, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indexlab::build_model;
    use crate::scalar::GaussRat;
    use crate::scalar::rat;

    fn monomial(p: u8, order: u32) -> Series {
        Series::var(1, order, 0).pow(p as u32)
    }

    #[test]
    fn derivative_factor_matches_characters() {
        assert_eq!(derivative_factor(), &Scalar::i() * &Scalar::from_int(-2));
    }

    #[test]
    fn both_sides_by_hand() {
        // lhs = rhs = w phi(0) + 2i phi'(0)
        for w in [-1, 0, 2] {
            let m = build_model(w, 4).unwrap();
            let cs = m.distributional_index(4).unwrap();
            let phi = &Series::constant(1, 4, Scalar::from_int(3)) + &monomial(1, 4).scale(&Scalar::from_int(5));
            let expect = Scalar::from_gauss(GaussRat::new(rat(3 * w, 1), rat(10, 1)));
            assert_eq!(lhs_exact(&cs, &m, &phi).unwrap(), expect);
            assert_eq!(rhs_exact(&m, &phi).unwrap(), expect);
            assert_eq!(local_index(&m, &phi).unwrap(), expect);
        }
    }

    #[test]
    fn theorem_holds_and_sign_flip_breaks_it() {
        let m = build_model(0, 4).unwrap();
        let phis: Vec<Series> = (0..4).map(|p| monomial(p, 4)).collect();
        let rep = theorem_check(&m, 4, &phis).unwrap();
        assert!(rep.report.passed(), "{:?}", rep.report.violations);
        let flipped = theorem_check(&m.with_supertrace_sign(-1), 4, &phis).unwrap();
        assert!(!flipped.report.passed());
        let x = &flipped.rows[1];
        assert_eq!(x.lhs, -&x.rhs);
    }
}

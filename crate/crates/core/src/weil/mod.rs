//! Lie data meets graded algebra: gamma/lambda/Lambda, evaluation of
//! invariant series on g ⊗ ∧⁺, the g-spin check, characteristic series and
//! Chern-Weil pairings against a volume-functional fundamental class.

mod charseries;

pub use charseries::{
    cw_pair, euler_series, is_invariant, j_series, two_pi_i_inv, FundClass, InvariantSeries, JKind,
};

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gradedalg::{CliffElt, Multivector};
use crate::liealg::{random_orthogonal, LieAlg, Rep};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::{Scalar, Series};

/// `sum_i X_i ⊗ m_i` with each `m_i` even of degree >= 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedElt {
    n: usize,
    comps: Vec<Multivector>,
}

impl MixedElt {
    pub fn zero(d: usize, n: usize) -> Self {
        Self { n, comps: (0..d).map(|_| Multivector::zero(n)).collect() }
    }

    pub fn new(n: usize, comps: Vec<Multivector>) -> Result<Self> {
        for m in &comps {
            if m.dim() != n {
                return Err(Error::DimensionMismatch("mixed element component".into()));
            }
            if !m.is_even() || !m.coeff(0).is_zero() {
                return Err(Error::Precondition(
                    "mixed element components must be even of degree >= 2".into(),
                ));
            }
        }
        Ok(Self { n, comps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra_dim(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &Multivector {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Multivector] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Multivector::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { n: self.n, comps: self.comps.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn canonical(&self) -> alloc::string::String {
        let parts: Vec<_> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| alloc::format!("X{} ⊗ ({m})", i + 1))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `ev_eta(phi)`: substitute `x_i -> m_i` and expand in the exterior algebra.
/// Monomials of degree above `n/2` vanish identically and are skipped.
pub fn eval_at_mixed(phi: &Series, eta: &MixedElt) -> Result<Multivector> {
    if phi.dim() != eta.algebra_dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "series in {} variables evaluated on an algebra of dimension {}",
            phi.dim(),
            eta.algebra_dim()
        )));
    }
    let n = eta.n;
    let top = (n / 2) as u32;
    // powers[i][k] = m_i^k
    let powers: Vec<Vec<Multivector>> = eta
        .comps
        .iter()
        .map(|m| {
            let mut v = alloc::vec![Multivector::one(n)];
            for _ in 0..top {
                let next = v.last().expect("nonempty") * m;
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = Multivector::zero(n);
    for (mono, c) in phi.terms() {
        if mono.degree() > top {
            continue;
        }
        let mut term = Multivector::scalar(n, c.clone());
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e > 0 {
                term = &term * &powers[i][e as usize];
                if term.is_zero() {
                    break;
                }
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `gamma(X) = -1/2 sum_{i<j} <e_i, a e_j> e_i e_j` for antisymmetric `a`.
pub fn gamma_of(a: &Matrix) -> Result<CliffElt> {
    if !a.is_antisymmetric() {
        return Err(Error::AlphaNotAntisymmetric);
    }
    let n = a.rows();
    let mut out = CliffElt::zero(n);
    let mh = Scalar::ratio(-1, 2);
    for i in 0..n {
        for j in i + 1..n {
            out.add_term((1 << i) | (1 << j), a.get(i, j) * &mh);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SpinData {
    alpha: Rep,
    n: usize,
    gamma: Vec<CliffElt>,
    lambda: Vec<Multivector>,
    big_lambda: MixedElt,
}

pub fn build_spindata(alpha: &Rep) -> Result<SpinData> {
    if !alpha.is_orthogonal() {
        return Err(Error::AlphaNotAntisymmetric);
    }
    let n = alpha.dim();
    let gamma = alpha.matrices().iter().map(gamma_of).collect::<Result<Vec<_>>>()?;
    let lambda: Vec<Multivector> = gamma.iter().map(CliffElt::chevalley).collect();
    let big_lambda = MixedElt::new(n, lambda.clone())?;
    Ok(SpinData { alpha: alpha.clone(), n, gamma, lambda, big_lambda })
}

impl SpinData {
    pub fn algebra(&self) -> &LieAlg {
        self.alpha.algebra()
    }

    pub fn alpha(&self) -> &Rep {
        &self.alpha
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self, i: usize) -> &CliffElt {
        &self.gamma[i]
    }

    pub fn lambda(&self, i: usize) -> &Multivector {
        &self.lambda[i]
    }

    /// `Lambda = sum X_i ⊗ lambda(X_i)`.
    pub fn big_lambda(&self) -> &MixedElt {
        &self.big_lambda
    }

    /// `-2 Lambda`.
    pub fn minus_two_lambda(&self) -> MixedElt {
        self.big_lambda.scale(&Scalar::from_int(-2))
    }

    /// `[gamma(X_i), c(e_j)] = c(alpha(X_i) e_j)` and `gamma` is a homomorphism.
    pub fn check_gamma(&self) -> CheckReport {
        let mut rep = CheckReport::new("gamma");
        let n = self.n;
        for (i, g) in self.gamma.iter().enumerate() {
            for j in 0..n {
                let lhs = g.commutator(&CliffElt::gen(n, j)).expect("same n");
                let col: Vec<Scalar> =
                    (0..n).map(|r| self.alpha.matrix(i).get(r, j).clone()).collect();
                rep.require(lhs == CliffElt::vector(&col), || {
                    alloc::format!("[gamma(X{}), e{}] != alpha(X{}) e{}", i + 1, j + 1, i + 1, j + 1)
                });
            }
        }
        let g = self.algebra();
        let d = g.dim();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = self.gamma[i].commutator(&self.gamma[j]).expect("same n");
                let mut rhs = CliffElt::zero(n);
                for k in 0..d {
                    rhs = &rhs + &self.gamma[k].scale(&Scalar::from_rational(g.c(i, j, k).clone()));
                }
                rep.require(lhs == rhs, || {
                    alloc::format!("gamma not a homomorphism on [X{}, X{}]", i + 1, j + 1)
                });
            }
        }
        rep
    }
}

/// Outcome of the g-spin check; `tau = nu - c(gamma)` when the condition holds.
#[derive(Clone, Debug)]
pub struct GSpin {
    pub report: CheckReport,
    pub tau: Option<Vec<Matrix>>,
}

/// Represents a Clifford element through generator matrices `cliff`.
pub fn clifford_action(cliff: &[Matrix], a: &CliffElt) -> Result<Matrix> {
    let dim = cliff.first().map_or(0, Matrix::rows);
    if cliff.len() != a.dim() {
        return Err(Error::DimensionMismatch("Clifford action".into()));
    }
    let mut acc = Matrix::zero(dim, dim);
    for (b, c) in a.terms() {
        let mut m = Matrix::identity(dim);
        let mut rest = b;
        while rest != 0 {
            m = &m * &cliff[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        acc = &acc + &m.scale(c);
    }
    Ok(acc)
}

/// `[nu(X_i), c(e_j)] = c(alpha(X_i) e_j)`; then `tau` commutes with every `c(e_j)`.
pub fn check_gspin(nu: &Rep, cliff: &[Matrix], alpha: &Rep) -> Result<GSpin> {
    let n = alpha.dim();
    if cliff.len() != n || nu.matrices().len() != alpha.matrices().len() {
        return Err(Error::DimensionMismatch("g-spin data".into()));
    }
    let mut report = CheckReport::new("g-spin condition");
    for i in 0..nu.matrices().len() {
        for j in 0..n {
            let lhs = nu.matrix(i).commutator(&cliff[j])?;
            let mut rhs = Matrix::zero(nu.dim(), nu.dim());
            for r in 0..n {
                let a = alpha.matrix(i).get(r, j);
                if !a.is_zero() {
                    rhs = &rhs + &cliff[r].scale(a);
                }
            }
            report.require(lhs == rhs, || {
                alloc::format!("[nu(X{}), c(e{})] != c(alpha(X{}) e{})", i + 1, j + 1, i + 1, j + 1)
            });
        }
    }
    if !report.passed() {
        return Ok(GSpin { report, tau: None });
    }
    let sd = build_spindata(alpha)?;
    let mut tau = Vec::new();
    for i in 0..nu.matrices().len() {
        let t = nu.matrix(i) - &clifford_action(cliff, sd.gamma(i))?;
        for (j, c) in cliff.iter().enumerate() {
            report.require(t.commutator(c)?.is_zero(), || {
                alloc::format!("tau(X{}) does not commute with c(e{})", i + 1, j + 1)
            });
        }
        tau.push(t);
    }
    Ok(GSpin { report, tau: Some(tau) })
}

/// Components of `sd'`'s Lambda rewritten in the original basis, where `sd'`
/// is built from `alpha` in the basis `Y_a = sum_i p[i][a] X_i`.
pub fn lambda_after_basis_change(alpha: &Rep, p: &Matrix) -> Result<MixedElt> {
    let sd = build_spindata(&alpha.change_basis(p)?)?;
    let d = p.rows();
    let n = alpha.dim();
    let mut comps = Vec::with_capacity(d);
    for i in 0..d {
        let mut m = Multivector::zero(n);
        for a in 0..d {
            let c = p.get(i, a);
            if !c.is_zero() {
                m = &m + &sd.lambda(a).scale(c);
            }
        }
        comps.push(m);
    }
    MixedElt::new(n, comps)
}

/// (a) `sum lambda_i ^ lambda_i = 0`, (b) `j_g(-2 Lambda) = 1`,
/// (c) Lambda unchanged under a random exact orthogonal basis change.
pub fn check_identities<R: Rng + ?Sized>(sd: &SpinData, order: u32, rng: &mut R) -> Result<CheckReport> {
    let mut rep = CheckReport::new(alloc::format!("identities for {}", sd.algebra().name()));
    let n = sd.n;
    let mut sum = Multivector::zero(n);
    for l in &sd.lambda {
        sum = &sum + &(l * l);
    }
    rep.value("sum lambda^lambda", sum.canonical());
    rep.require(sum.is_zero(), || alloc::format!("sum lambda_i^lambda_i = {sum}"));

    let jg = j_series(JKind::Lie(sd.algebra()), order)?;
    let v = eval_at_mixed(jg.series(), &sd.minus_two_lambda())?;
    rep.value("j_g(-2 Lambda)", v.canonical());
    rep.require(v == Multivector::one(n), || alloc::format!("j_g(-2 Lambda) = {v}"));

    let p = random_orthogonal(sd.algebra().dim(), rng);
    let moved = lambda_after_basis_change(&sd.alpha, &p)?;
    rep.require(&moved == sd.big_lambda(), || {
        alloc::format!("Lambda changed under basis change: {}", moved.canonical())
    });
    Ok(rep)
}

/// Curvature of the canonical connection on `K -> K/H` at the base point:
/// component `a` is `sum_{i<j} c_{h_i h_j}^{v_a} e_i ^ e_j`.
pub fn homogeneous_curvature(k: &LieAlg, vertical: &[usize], horizontal: &[usize]) -> Result<MixedElt> {
    let n = horizontal.len();
    let mut comps = Vec::new();
    for &v in vertical {
        let mut m = Multivector::zero(n);
        for (i, &hi) in horizontal.iter().enumerate() {
            for (j, &hj) in horizontal.iter().enumerate().skip(i + 1) {
                m.add_term((1 << i) | (1 << j), Scalar::from_rational(k.c(hi, hj, v).clone()));
            }
        }
        comps.push(m);
    }
    MixedElt::new(n, comps)
}

/// Isotropy `alpha(X_a) = ad(X_a)` restricted to the horizontal span.
pub fn isotropy_matrices(k: &LieAlg, vertical: &[usize], horizontal: &[usize]) -> Vec<Matrix> {
    vertical
        .iter()
        .map(|&v| {
            Matrix::from_fn(horizontal.len(), horizontal.len(), |r, c| {
                Scalar::from_rational(k.c(v, horizontal[c], horizontal[r]).clone())
            })
        })
        .collect()
}

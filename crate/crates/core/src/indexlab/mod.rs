//! Transversally elliptic index harness on `P = SU(2) -> M = SU(2)/T = S^2`,
//! with `G = T` acting on the right and coefficients `E = S ⊗ C_w`.
//!
//! Torus characters are labelled by integers: `chi_k(exp x X3) = e^{ikx/2}`.

mod heat;
mod theorem;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fit::{fit_polynomial, PolyFit};
use crate::gradedalg::SpinorRep;
use crate::liealg::{LieAlg, Rep};
use crate::matrix::Matrix;
use crate::report::CheckReport;
use crate::scalar::{int, rat, Scalar};
use crate::weil::{
    build_spindata, check_gspin, euler_series, homogeneous_curvature, isotropy_matrices, FundClass,
    MixedElt, SpinData,
};

pub use heat::{heat_report, heat_trace, richardson, HeatConfig, HeatReport, HeatSample, HeatStatus};
pub use theorem::{
    derivative_factor, lhs_exact, local_index, rhs_exact, theorem_check, TheoremReport, TheoremRow,
};

const VERTICAL: [usize; 1] = [2];
const HORIZONTAL: [usize; 2] = [0, 1];

/// `4 pi`, the period of `x -> exp(x X3)`.
pub fn torus_period() -> Scalar {
    Scalar::pi_pow(1).scale_rat(&int(4))
}

/// Everything the index harness needs about the homogeneous model.
#[derive(Clone, Debug)]
pub struct HomogModel {
    twist: i64,
    order: u32,
    k: LieAlg,
    spin: SpinData,
    spinor: SpinorRep,
    nu: Rep,
    tau: Vec<Matrix>,
    curvature: MixedElt,
    fund: FundClass,
    bundle_volume: Scalar,
    supertrace_sign: i64,
    report: CheckReport,
}

/// Builds and validates the model with twist `w`; series are truncated at `order`.
pub fn build_model(w: i64, order: u32) -> Result<HomogModel> {
    if order < 2 {
        return Err(Error::Precondition("model needs series order >= 2".into()));
    }
    let k = LieAlg::su2();
    let torus = LieAlg::new("t", 1);
    let alpha = Rep::new(torus.clone(), isotropy_matrices(&k, &VERTICAL, &HORIZONTAL))?;
    let spin = build_spindata(&alpha)?;
    let spinor = SpinorRep::new(2)?;
    let mut report = CheckReport::new(alloc::format!("homogeneous model w={w}"));
    report.absorb(&spin.check_gamma());

    // nu = c(gamma) + i w/2 on E = S ⊗ C_w
    let cg = spinor.represent(spin.gamma(0))?;
    let twist = Matrix::identity(spinor.module_dim()).scale(&Scalar::from_gauss(
        crate::scalar::GaussRat::new(rat(0, 1), rat(w, 2)),
    ));
    let nu = Rep::new(torus.clone(), alloc::vec![&cg + &twist])?;
    report.absorb(&nu.validate());
    let gs = check_gspin(&nu, spinor.generators(), &alpha)?;
    report.absorb(&gs.report);
    let tau = gs.tau.ok_or_else(|| Error::Validation("g-spin condition fails".into()))?;

    let curvature = homogeneous_curvature(&k, &VERTICAL, &HORIZONTAL)?;
    let two_lambda = spin.big_lambda().scale(&Scalar::from_int(2));
    report.require(curvature == two_lambda, || {
        alloc::format!("curvature {} != 2 Lambda", curvature.canonical())
    });

    let euler = euler_series(&alpha, order)?;
    let fund = FundClass::calibrate(&euler, &curvature, 2)?;
    // SU(2) with the metric making X1, X2, X3 orthonormal is the 3-sphere of
    // radius period/2pi = 2, so vol(P) = 2 pi^2 r^3 must equal vol(M) len(T).
    let bundle_volume = Scalar::pi_pow(2).scale_rat(&int(2 * 8));
    report.require(&fund.volume * &torus_period() == bundle_volume, || {
        alloc::format!("vol(M) = {} inconsistent with vol(P)/len(T)", fund.volume)
    });
    report.value("vol(M)", fund.volume.canonical());
    report.value("orientation", alloc::format!("{}", fund.orientation));
    if !report.passed() {
        return Err(Error::Validation(report.violations.join("; ")));
    }
    Ok(HomogModel {
        twist: w,
        order,
        k,
        spin,
        spinor,
        nu,
        tau,
        curvature,
        fund,
        bundle_volume,
        supertrace_sign: 1,
        report,
    })
}

impl HomogModel {
    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The structure algebra `su2` of `P = SU(2)`.
    pub fn structure_algebra(&self) -> &LieAlg {
        &self.k
    }

    pub fn spin(&self) -> &SpinData {
        &self.spin
    }

    pub fn alpha(&self) -> &Rep {
        self.spin.alpha()
    }

    pub fn torus(&self) -> &LieAlg {
        self.spin.algebra()
    }

    pub fn nu(&self) -> &Rep {
        &self.nu
    }

    /// `tau(X3)` on `E`; a scalar `i w/2` for this model.
    pub fn tau(&self) -> &[Matrix] {
        &self.tau
    }

    pub fn curvature(&self) -> &MixedElt {
        &self.curvature
    }

    pub fn fund_class(&self) -> &FundClass {
        &self.fund
    }

    pub fn bundle_volume(&self) -> &Scalar {
        &self.bundle_volume
    }

    pub fn supertrace_sign(&self) -> i64 {
        self.supertrace_sign
    }

    pub fn report(&self) -> &CheckReport {
        &self.report
    }

    pub fn spinor_dim(&self) -> usize {
        self.spinor.module_dim()
    }

    fn spinor_grading_signs(&self) -> Vec<f64> {
        let g = self.spinor.grading();
        (0..g.rows()).map(|r| if g.get(r, r).is_one() { 1.0 } else { -1.0 }).collect()
    }

    /// Same model with the supertrace normalisation multiplied by `sign`.
    pub fn with_supertrace_sign(&self, sign: i64) -> Self {
        let mut m = self.clone();
        m.supertrace_sign = sign;
        m
    }

    /// Lifted Dirac operator on the Peter-Weyl summand of spin `two_j / 2`.
    pub fn block(&self, two_j: usize) -> Result<Block> {
        let pi = Rep::su2_irrep(two_j);
        let dv = pi.dim();
        let de = self.spinor.module_dim();
        let mut op = Matrix::zero(dv * de, dv * de);
        for (a, &h) in HORIZONTAL.iter().enumerate() {
            op = &op + &pi.matrix(h).kron(self.spinor.generator(a));
        }
        let grading = Matrix::identity(dv).kron(self.spinor.grading());
        let weight_op = &pi.matrix(VERTICAL[0]).kron(&Matrix::identity(de))
            + &Matrix::identity(dv).kron(self.nu.matrix(0));
        if !weight_op.is_diagonal() || !grading.is_diagonal() {
            return Err(Error::Validation("weight or grading operator not diagonal".into()));
        }
        let weights = (0..dv * de).map(|r| label_of(weight_op.get(r, r))).collect::<Result<Vec<_>>>()?;
        let parity = (0..dv * de).map(|r| grading.get(r, r).is_one()).collect();
        let laplacian = pi.casimir().scale(&Scalar::from_int(-1)).kron(&Matrix::identity(de));
        Ok(Block { two_j, op, grading, weight_op, laplacian, weights, parity })
    }

    /// Torus character sum of the index over blocks `2j <= cutoff`, certified
    /// against two probe blocks beyond the cutoff.
    pub fn distributional_index(&self, cutoff: usize) -> Result<CharSum> {
        let w = self.twist;
        let mut report = CheckReport::new(alloc::format!("distributional index w={w} cutoff={cutoff}"));
        let mut totals: BTreeMap<i64, i64> = BTreeMap::new();
        let mut distances = Vec::new();
        for two_j in 0..=cutoff + 2 {
            let b = self.block(two_j)?;
            let kernel = b.kernel_by_weight()?;
            let dist = kernel.keys().map(|k| (k - w).abs()).min();
            distances.push((two_j, dist));
            if two_j <= cutoff {
                for (k, v) in b.index_by_weight(&kernel, self.supertrace_sign) {
                    *totals.entry(k).or_insert(0) += v;
                }
            }
        }
        for pair in distances.windows(2) {
            let ((ja, da), (jb, db)) = (pair[0], pair[1]);
            report.require(matches!((da, db), (Some(a), Some(b)) if a < b), || {
                alloc::format!("kernel distance not increasing between 2j={ja} and 2j={jb}")
            });
        }
        let probe = distances[cutoff + 1..]
            .iter()
            .filter_map(|(_, d)| *d)
            .min()
            .ok_or_else(|| Error::Validation("probe blocks have empty kernel".into()))?;
        let radius = probe - 1;
        let coeffs: BTreeMap<i64, i64> =
            (w - radius..=w + radius).map(|k| (k, totals.get(&k).copied().unwrap_or(0))).collect();
        let points: Vec<(i64, Scalar)> = coeffs.iter().map(|(&k, &v)| (k, Scalar::from_int(v))).collect();
        let fit = fit_polynomial(&points, 3.min(points.len().saturating_sub(1)));
        report.require(fit.as_ref().is_some_and(PolyFit::is_exact), || {
            String::from("no exact low-degree polynomial through the stable coefficients")
        });
        report.value("stable radius", alloc::format!("{radius}"));
        Ok(CharSum { twist: w, cutoff, radius, coeffs, fit, report })
    }
}

/// Free-function form of [`HomogModel::block`].
pub fn block_dirac(m: &HomogModel, two_j: usize) -> Result<Block> {
    m.block(two_j)
}

/// `-2i lambda` for a diagonal entry `lambda = i k / 2`.
fn label_of(lambda: &Scalar) -> Result<i64> {
    let k = (&Scalar::i() * &Scalar::from_int(-2)) * lambda.clone();
    let r = k.as_rational().ok_or_else(|| Error::Validation(alloc::format!("weight {lambda}")))?;
    if !r.is_integer() {
        return Err(Error::Validation(alloc::format!("non-integral weight label {r}")));
    }
    r.to_integer().to_i64().ok_or_else(|| Error::Validation("weight overflow".into()))
}

/// `D = sum_{a=1,2} dpi(X_a) ⊗ c(e_a)` on `V_j ⊗ E`. The other factor of the
/// Peter-Weyl summand is inert and contributes multiplicity `2j + 1`.
#[derive(Clone, Debug)]
pub struct Block {
    pub two_j: usize,
    op: Matrix,
    grading: Matrix,
    weight_op: Matrix,
    laplacian: Matrix,
    weights: Vec<i64>,
    parity: Vec<bool>,
}

impl Block {
    pub fn multiplicity(&self) -> i64 {
        self.two_j as i64 + 1
    }

    pub fn dirac(&self) -> &Matrix {
        &self.op
    }

    pub fn grading(&self) -> &Matrix {
        &self.grading
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    fn indices(&self, k: i64, even: bool) -> Vec<usize> {
        (0..self.weights.len()).filter(|&r| self.weights[r] == k && self.parity[r] == even).collect()
    }

    fn restrict(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| m.get(rows[r], cols[c]).clone())
    }

    /// `(dim ker D+, dim ker D-)` on each weight space with nonzero kernel.
    pub fn kernel_by_weight(&self) -> Result<BTreeMap<i64, (usize, usize)>> {
        let mut labels: Vec<i64> = self.weights.clone();
        labels.sort_unstable();
        labels.dedup();
        let mut out = BTreeMap::new();
        for k in labels {
            let even = self.indices(k, true);
            let odd = self.indices(k, false);
            let kp = even.len() - Self::restrict(&self.op, &odd, &even).rank()?;
            let km = odd.len() - Self::restrict(&self.op, &even, &odd).rank()?;
            if kp + km > 0 {
                out.insert(k, (kp, km));
            }
        }
        Ok(out)
    }

    /// `sign * (2j+1) * (dim ker D+ - dim ker D-)` per weight, zeros omitted.
    pub fn index_by_weight(&self, kernel: &BTreeMap<i64, (usize, usize)>, sign: i64) -> BTreeMap<i64, i64> {
        kernel
            .iter()
            .map(|(&k, &(p, m))| (k, sign * self.multiplicity() * (p as i64 - m as i64)))
            .filter(|(_, v)| *v != 0)
            .collect()
    }

    /// `(D^2 - Delta_P)` on the weight-`k` space when it is a scalar there.
    pub fn weight_shift(&self, k: i64) -> Result<Option<Scalar>> {
        let idx: Vec<usize> = (0..self.weights.len()).filter(|&r| self.weights[r] == k).collect();
        if idx.is_empty() {
            return Ok(None);
        }
        let diff = &(&self.op * &self.op) - &self.laplacian;
        let sub = Self::restrict(&diff, &idx, &idx);
        let c = sub.get(0, 0).clone();
        let scalar = Matrix::identity(idx.len()).scale(&c);
        let off = Self::restrict(&diff, &idx, &(0..self.weights.len()).filter(|r| !idx.contains(r)).collect::<Vec<_>>());
        Ok((sub == scalar && off.is_zero()).then_some(c))
    }

    /// Oddness, torus equivariance, and McKean-Singer for the exact kernel projector.
    pub fn check(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new(alloc::format!("Dirac block 2j={}", self.two_j));
        rep.require(self.op.anticommutator(&self.grading)?.is_zero(), || {
            String::from("D does not anticommute with the grading")
        });
        rep.require(self.op.commutator(&self.weight_op)?.is_zero(), || {
            String::from("D is not torus equivariant")
        });
        let d2 = &self.op * &self.op;
        let kernel = d2.nullspace()?;
        let left = d2.transpose().nullspace()?;
        let kmat = Matrix::from_fn(d2.rows(), kernel.len(), |r, c| kernel[c][r].clone());
        let lmat = Matrix::from_fn(left.len(), d2.rows(), |r, c| left[r][c].clone());
        let proj = if kernel.is_empty() {
            Matrix::zero(d2.rows(), d2.rows())
        } else {
            &(&kmat * &(&lmat * &kmat).inverse()?) * &lmat
        };
        rep.require(&proj * &proj == proj && (&d2 * &proj).is_zero(), || {
            String::from("kernel projector is not a projector onto ker D^2")
        });
        let str_p = (&self.grading * &proj).trace();
        let idx: i64 = self.kernel_by_weight()?.values().map(|&(p, m)| p as i64 - m as i64).sum();
        rep.require(str_p == Scalar::from_int(idx), || {
            alloc::format!("str P_ker = {str_p} but dim ker D+ - dim ker D- = {idx}")
        });
        Ok(rep)
    }
}

/// `sum_k Q(k) chi_k` restricted to the certified window `|k - w| <= radius`.
#[derive(Clone, Debug)]
pub struct CharSum {
    pub twist: i64,
    pub cutoff: usize,
    pub radius: i64,
    pub coeffs: BTreeMap<i64, i64>,
    pub fit: Option<PolyFit>,
    pub report: CheckReport,
}

impl CharSum {
    /// `None` outside the certified window.
    pub fn coefficient(&self, k: i64) -> Option<i64> {
        self.coeffs.get(&k).copied()
    }

    /// Exact polynomial `Q` with `Q(k)` the coefficient of `chi_k`.
    pub fn pattern(&self) -> Result<&PolyFit> {
        self.fit.as_ref().filter(|f| f.is_exact()).ok_or(Error::NoPattern)
    }
}

//! Floating-point heat-trace route: quadrature over the torus of
//! `Str(P_t(p, p g) nu(g)^{-1}) f(g)` with the spectral expansion of the heat
//! kernel on `SU(2)`, then Richardson extrapolation to `t -> 0`.

use alloc::vec::Vec;

use super::{torus_period, HomogModel};
use crate::error::{Error, Result};
use crate::liealg::Rep;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct HeatConfig {
    pub t_grid: Vec<f64>,
    /// Largest `2j` kept in the spectral sum.
    pub spectral_cutoff: usize,
    /// Trapezoid nodes on `[0, 4 pi)`; `0` picks a count that is exact for the kept modes.
    pub quad_points: usize,
    pub tolerance: f64,
}

impl Default for HeatConfig {
    fn default() -> Self {
        Self { t_grid: alloc::vec![0.4, 0.2, 0.1, 0.05], spectral_cutoff: 80, quad_points: 0, tolerance: 1e-3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeatStatus {
    Pass,
    /// Outside tolerance, but the extrapolation remainder or spectral tail
    /// estimate is itself above tolerance.
    Flagged,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatSample {
    pub t: f64,
    pub raw: f64,
    /// Imaginary part of the quadrature; zero up to rounding.
    pub imag: f64,
    /// `e^{-t c_k} raw`, removing the constant `D^2 - Delta_P` on weight `k`.
    pub corrected: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeatReport {
    pub weight: i64,
    pub exact: i64,
    pub shift: f64,
    pub samples: Vec<HeatSample>,
    pub extrapolated: f64,
    /// `|extrapolated - exact| / max(1, |exact|)`.
    pub error: f64,
    pub remainder: f64,
    pub tail_bound: f64,
    pub status: HeatStatus,
}

/// `-(sum_i dpi(X_i)^2)_{00}`, the Laplace eigenvalue on the spin-`two_j/2` summand.
fn laplace_eigenvalue(two_j: usize) -> f64 {
    let pi = Rep::su2_irrep(two_j);
    let d = pi.dim();
    let mut acc = Scalar::zero();
    for m in pi.matrices() {
        for c in 0..d {
            acc += &(m.get(0, c) * m.get(c, 0));
        }
    }
    -acc.to_f64().0
}

fn nodes(m: &HomogModel, weight: i64, cfg: &HeatConfig) -> usize {
    if cfg.quad_points > 0 {
        cfg.quad_points
    } else {
        2 * (cfg.spectral_cutoff + m.twist().unsigned_abs() as usize + weight.unsigned_abs() as usize) + 8
    }
}

fn heat_trace_with(m: &HomogModel, t: f64, weight: i64, cfg: &HeatConfig, lap: &[f64]) -> Result<(f64, f64)> {
    let nu = m.nu().matrix(0);
    let grading = m.spinor_grading_signs();
    // nu(X3) = diag(i l_e / 2); keep l_e and the graded sign per spinor slot
    let labels: Vec<f64> = (0..nu.rows()).map(|e| 2.0 * nu.get(e, e).to_f64().1).collect();
    let n = nodes(m, weight, cfg);
    let period = torus_period().to_f64().0;
    let factor = m.fund_class().volume.to_f64().0 * period / m.bundle_volume().to_f64().0;
    let mut re = 0.0;
    let mut im = 0.0;
    for q in 0..n {
        let theta = period * q as f64 / n as f64;
        let half = theta / 2.0;
        // normalized-Haar heat kernel sum_j (2j+1) e^{-t C_j} chi_j
        let mut p_t = 0.0;
        for (two_j, &c) in lap.iter().enumerate() {
            let mut chi = 0.0;
            let mut l = -(two_j as i64);
            while l <= two_j as i64 {
                chi += libm::cos(l as f64 * half);
                l += 2;
            }
            p_t += (two_j as f64 + 1.0) * libm::exp(-t * c) * chi;
        }
        for (e, &l) in labels.iter().enumerate() {
            let phase = (weight as f64 - l) * half;
            re += grading[e] * p_t * libm::cos(phase);
            im += grading[e] * p_t * libm::sin(phase);
        }
    }
    let s = factor * m.supertrace_sign() as f64 / n as f64;
    Ok((re * s, im * s))
}

/// Raw heat-trace value `(re, im)` at time `t` for `f = chi_weight`.
pub fn heat_trace(m: &HomogModel, t: f64, weight: i64, cfg: &HeatConfig) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::Precondition("heat time must be positive".into()));
    }
    let lap: Vec<f64> = (0..=cfg.spectral_cutoff).map(laplace_eigenvalue).collect();
    heat_trace_with(m, t, weight, cfg, &lap)
}

/// Polynomial extrapolation to `t = 0` (Neville); the remainder estimate is the
/// change from dropping the last point.
pub fn richardson(ts: &[f64], vs: &[f64]) -> (f64, f64) {
    let neville = |k: usize| {
        let mut p: Vec<f64> = vs[..k].to_vec();
        for level in 1..k {
            for i in 0..k - level {
                let (a, b) = (ts[i], ts[i + level]);
                p[i] = (a * p[i + 1] - b * p[i]) / (a - b);
            }
        }
        p[0]
    };
    let n = ts.len().min(vs.len());
    let full = neville(n);
    let remainder = if n > 1 { libm::fabs(full - neville(n - 1)) } else { f64::INFINITY };
    (full, remainder)
}

fn tail_bound(cfg: &HeatConfig, t: f64) -> f64 {
    // |chi_j| <= 2j+1 and |Str| <= 2 on each dropped summand
    let mut acc = 0.0;
    let mut two_j = cfg.spectral_cutoff + 1;
    loop {
        let j = two_j as f64 / 2.0;
        let d = two_j as f64 + 1.0;
        let term = 2.0 * d * d * libm::exp(-t * j * (j + 1.0));
        acc += term;
        if term < 1e-300 || two_j > cfg.spectral_cutoff + 100_000 {
            break;
        }
        two_j += 1;
    }
    acc
}

/// Heat-trace route for `f = chi_weight`, compared with the exact index `exact`.
pub fn heat_report(m: &HomogModel, weight: i64, exact: i64, cfg: &HeatConfig) -> Result<HeatReport> {
    if cfg.t_grid.is_empty() {
        return Err(Error::Precondition("empty t grid".into()));
    }
    let shift = m
        .block(((weight - m.twist()).unsigned_abs() + 1) as usize)?
        .weight_shift(weight)?
        .ok_or_else(|| Error::Validation("D^2 - Delta_P not scalar on weight space".into()))?
        .to_f64()
        .0;
    let lap: Vec<f64> = (0..=cfg.spectral_cutoff).map(laplace_eigenvalue).collect();
    let mut samples = Vec::with_capacity(cfg.t_grid.len());
    for &t in &cfg.t_grid {
        if !(t > 0.0) {
            return Err(Error::Precondition("heat time must be positive".into()));
        }
        let (raw, imag) = heat_trace_with(m, t, weight, cfg, &lap)?;
        samples.push(HeatSample { t, raw, imag, corrected: libm::exp(-t * shift) * raw });
    }
    let ts: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let vs: Vec<f64> = samples.iter().map(|s| s.raw).collect();
    let (extrapolated, remainder) = richardson(&ts, &vs);
    let t_min = ts.iter().copied().fold(f64::INFINITY, f64::min);
    let tail = tail_bound(cfg, t_min);
    let error = libm::fabs(extrapolated - exact as f64) / libm::fmax(1.0, libm::fabs(exact as f64));
    let status = if error <= cfg.tolerance {
        HeatStatus::Pass
    } else if remainder > cfg.tolerance || tail > cfg.tolerance {
        HeatStatus::Flagged
    } else {
        HeatStatus::Fail
    };
    Ok(HeatReport { weight, exact, shift, samples, extrapolated, error, remainder, tail_bound: tail, status })
}

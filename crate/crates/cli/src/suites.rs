//! One function per subcommand; each turns core validators into report checks.

use duflo_cw_core::duflo::{duflo, duflo_inv, harish_chandra_check, pair0, Dist0};
use duflo_cw_core::fixtures;
use duflo_cw_core::gaussmoment::check_lemma;
use duflo_cw_core::gradedalg::{bivectors_span_exterior_square, CliffElt, Multivector, SpinorRep};
use duflo_cw_core::indexlab::{build_model, heat_report, theorem_check, HeatConfig, HeatStatus};
use duflo_cw_core::liealg::{LieAlg, Rep};
use duflo_cw_core::scalar::{Monomial, Scalar, Series};
use duflo_cw_core::weil::{build_spindata, check_identities, j_series, JKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::report::{Check, Report, Status};

type CoreResult<T> = duflo_cw_core::Result<T>;

fn attempt(id: &str, f: impl FnOnce() -> CoreResult<Check>) -> Check {
    f().unwrap_or_else(|e| Check::new(id, Status::Fail, format!("error: {e}")))
}

fn missed(caught: bool) -> &'static str {
    if caught {
        ""
    } else {
        "corruption went undetected"
    }
}

/// Orders above 4 make the six-dimensional so(4) series needlessly slow.
fn order_for(g: &LieAlg, order: u32) -> u32 {
    if g.dim() > 3 {
        order.min(4)
    } else {
        order
    }
}

pub fn verify_algebra(cfg: &Config, extra: Option<&LieAlg>) -> Report {
    let mut r = Report::new("verify-algebra");
    for name in ["su2", "so3", "abelian(2)", "so(4)"] {
        r.push(attempt(&format!("algebra:{name}"), || {
            Ok(Check::from_report(format!("algebra:{name}"), &LieAlg::builtin(name)?.validate()))
        }));
    }
    if let Some(g) = extra {
        r.push(Check::from_report(format!("algebra:{}", g.name()), &g.validate()));
    }
    let mut reps: Vec<(String, Rep)> = vec![
        ("su2-adjoint".into(), fixtures::su2_adjoint()),
        ("so4-defining".into(), fixtures::so4_defining()),
        ("su2-quaternion".into(), fixtures::quaternion_su2()),
    ];
    for two_j in 0..=4 {
        reps.push((format!("su2-irrep-2j={two_j}"), Rep::su2_irrep(two_j)));
    }
    for (name, rep) in &reps {
        r.push(Check::from_report(format!("rep:{name}"), &rep.validate()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in [2usize, 4] {
        let id = format!("clifford-oracle:n={n}");
        r.push(attempt(&id, || {
            let s = SpinorRep::new(n)?;
            let mut bad = 0;
            for _ in 0..200 {
                let a = CliffElt::random(n, &mut rng, 6);
                let b = CliffElt::random(n, &mut rng, 6);
                let ab = &a * &b;
                let m = s.represent(&ab)?;
                let prod_ok = m == &s.represent(&a)? * &s.represent(&b)?;
                let str_ok = ab.berezin_supertrace()? == s.supertrace(&m)?;
                bad += usize::from(!(prod_ok && str_ok));
            }
            Ok(Check::from_bool(&id, bad == 0, if bad == 0 { String::new() } else { format!("{bad} of 200 mismatched") })
                .value("samples", "200"))
        }));
    }
    let mut bad = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let m = Multivector::random(n, &mut rng, 8);
        bad += usize::from(m.chevalley_inv().chevalley() != m);
    }
    r.push(Check::from_bool("chevalley:round-trip", bad == 0, if bad == 0 { String::new() } else { format!("{bad} of 100 failed") }));
    r.push(attempt("chevalley:bivector-image", || {
        let ok = (2..=5).map(bivectors_span_exterior_square).collect::<CoreResult<Vec<_>>>()?;
        Ok(Check::from_bool("chevalley:bivector-image", ok.iter().all(|b| *b), ""))
    }));
    r
}

pub fn verify_weil(cfg: &Config) -> Report {
    let mut r = Report::new("verify-weil");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for alpha in fixtures::weil_fixtures() {
        let g = alpha.algebra().clone();
        let name = g.name().to_string();
        let order = order_for(&g, cfg.order);
        r.push(attempt(&format!("gamma:{name}"), || {
            Ok(Check::from_report(format!("gamma:{name}"), &build_spindata(&alpha)?.check_gamma()))
        }));
        r.push(attempt(&format!("identities:{name}"), || {
            let sd = build_spindata(&alpha)?;
            Ok(Check::from_report(format!("identities:{name}"), &check_identities(&sd, order, &mut rng)?))
        }));
        r.push(attempt(&format!("invariance:{name}"), || {
            let jg = j_series(JKind::Lie(&g), order)?;
            let jm = j_series(JKind::Isotropy(&alpha), order)?;
            Ok(Check::from_bool(format!("invariance:{name}"), jg.is_invariant() && jm.is_invariant(), ""))
        }));
    }
    r.push(attempt("model:su2/t", || {
        let m = build_model(0, cfg.order)?;
        Ok(Check::from_report("model:su2/t", m.report()))
    }));
    r.push(attempt("sensitivity:non-invariant-basis", || {
        let skew = fixtures::non_invariant_so4()?;
        let sd = build_spindata(&skew)?;
        let caught = !skew.algebra().validate().passed() || !check_identities(&sd, 4, &mut rng)?.passed();
        Ok(Check::from_bool("sensitivity:non-invariant-basis", caught, missed(caught)))
    }));
    r.push(attempt("sensitivity:non-homomorphic-gamma", || {
        let sd = build_spindata(&fixtures::non_homomorphic_so4()?)?;
        let caught = !sd.check_gamma().passed() || !check_lemma(&Series::var(6, 4, 0).pow(2), &sd)?.passed();
        Ok(Check::from_bool("sensitivity:non-homomorphic-gamma", caught, missed(caught)))
    }));
    r
}

pub fn verify_gauss(cfg: &Config) -> Report {
    let mut r = Report::new("verify-gauss");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for alpha in fixtures::weil_fixtures() {
        let name = alpha.algebra().name().to_string();
        let d = alpha.algebra().dim();
        let id = format!("lemma:{name}");
        r.push(attempt(&id, || {
            let sd = build_spindata(&alpha)?;
            let order = (sd.n() as u32 / 2 * 2).max(4);
            let mut bad = Vec::new();
            for t in 0..10 {
                let phi = Series::random_polynomial(d, order, 4, &mut rng);
                let rep = check_lemma(&phi, &sd)?;
                if !rep.passed() {
                    bad.push(format!("phi #{t}: {}", rep.violations.join("; ")));
                }
            }
            Ok(Check::from_bool(&id, bad.is_empty(), bad.join(" | ")).value("samples", "10"))
        }));
    }
    r
}

pub fn verify_duflo(cfg: &Config) -> Report {
    let mut r = Report::new("verify-duflo");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.push(attempt("duflo:round-trip", || {
        let g = LieAlg::su2();
        let mut bad = 0;
        for _ in 0..10 {
            let mut u = Dist0::zero(3);
            for _ in 0..3 {
                let e: Vec<u8> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                u.add_term(Monomial::from_exponents(&e), Scalar::from_int(rng.gen_range(-5..=5)));
            }
            let back = duflo_inv(&duflo(&u, &g)?, &g)?;
            let phi = Series::random_polynomial(3, 8, 8, &mut rng);
            bad += usize::from(pair0(&back, &phi)? != pair0(&u, &phi)?);
        }
        Ok(Check::from_bool("duflo:round-trip", bad == 0, if bad == 0 { String::new() } else { format!("{bad} of 10 differ") }))
    }));
    r.push(attempt("duflo:harish-chandra", || {
        Ok(Check::from_report("duflo:harish-chandra", &harish_chandra_check(5)?))
    }));
    r
}

pub fn index(cfg: &Config) -> Report {
    let mut r = Report::new("index");
    for &w in &cfg.twists {
        let id = format!("index:w={w}");
        let mut notes = Vec::new();
        let check = attempt(&id, || {
            let m = build_model(w, cfg.order)?;
            let cs = m.distributional_index(cfg.cutoff)?;
            let mut table = format!("twist {w}, cutoff {}: weight -> Ind(D_m)\n", cfg.cutoff);
            for (k, v) in &cs.coeffs {
                table.push_str(&format!("  {k:>4} {v:>5}\n"));
            }
            let mut c = Check::from_report(&id, &cs.report);
            if let Some(f) = &cs.fit {
                let poly: Vec<String> = f.coeffs.iter().map(Scalar::canonical).collect();
                table.push_str(&format!("  fit Q(m) coefficients [{}], residual {}\n", poly.join(", "), f.residual));
                c = c.value("fit", poly.join(", ")).value("fit residual", f.residual.canonical());
            }
            notes.push(table);
            let coeffs: Vec<String> = cs.coeffs.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            Ok(c.value("coefficients", coeffs.join(" ")))
        });
        r.notes.extend(notes);
        r.push(check);
    }
    r
}

pub fn verify_theorem(cfg: &Config) -> Report {
    let mut r = Report::new("verify-theorem");
    let phis = cfg.phi_series();
    let labels = cfg.phi_labels();
    for &w in &cfg.twists {
        let id = format!("theorem:w={w}");
        let result = (|| -> CoreResult<Vec<Check>> {
            let m = build_model(w, cfg.order)?;
            let rep = theorem_check(&m, cfg.cutoff.min(8), &phis)?;
            let mut out = Vec::new();
            for (row, label) in rep.rows.iter().zip(&labels) {
                out.push(
                    Check::from_bool(format!("{id}:phi={label}"), row.holds(), if row.holds() {
                        String::new()
                    } else {
                        format!("lhs {} rhs {} local {}", row.lhs, row.rhs, row.local)
                    })
                    .value("lhs", row.lhs.canonical())
                    .value("rhs", row.rhs.canonical())
                    .value("local", row.local.canonical()),
                );
            }
            Ok(out)
        })();
        match result {
            Ok(cs) => cs.into_iter().for_each(|c| r.push(c)),
            Err(e) => r.push(Check::new(id, Status::Fail, format!("error: {e}"))),
        }
    }
    r.push(attempt("sensitivity:supertrace-sign", || {
        let m = build_model(0, cfg.order)?.with_supertrace_sign(-1);
        let rep = theorem_check(&m, 4, &fixtures::torus_monomials(3, 4))?;
        Ok(Check::from_bool("sensitivity:supertrace-sign", !rep.report.passed(), missed(!rep.report.passed())))
    }));
    r
}

pub fn heat(cfg: &Config) -> Report {
    let mut r = Report::new("heat");
    let hc = HeatConfig {
        t_grid: cfg.t_grid.clone(),
        spectral_cutoff: cfg.spectral_cutoff,
        quad_points: 0,
        tolerance: cfg.tolerance,
    };
    for &w in &cfg.heat_twists {
        let model = build_model(w, cfg.order);
        let window = cfg.heat_weights.iter().map(|k| (k - w).abs()).max().unwrap_or(0) as usize;
        let cs = model.as_ref().ok().map(|m| m.distributional_index(window + 2));
        for &k in &cfg.heat_weights {
            let id = format!("heat:w={w}:m={k}");
            r.push(attempt(&id, || {
                let m = model.clone()?;
                let exact = cs.clone().expect("model built")?.coefficient(k).ok_or(duflo_cw_core::Error::NoPattern)?;
                let h = heat_report(&m, k, exact, &hc)?;
                let status = match h.status {
                    HeatStatus::Pass => Status::Pass,
                    HeatStatus::Flagged => Status::Flagged,
                    HeatStatus::Fail => Status::Fail,
                };
                let detail = match status {
                    Status::Pass => String::new(),
                    _ => format!("relative error {:.3e} exceeds {:.1e}; extrapolation remainder {:.3e}", h.error, cfg.tolerance, h.remainder),
                };
                let mut c = Check::new(&id, status, detail)
                    .value("exact", exact.to_string())
                    .value("t grid", format!("{:?}", hc.t_grid))
                    .value("spectral cutoff", hc.spectral_cutoff.to_string())
                    .value("shift c_m", format!("{}", h.shift))
                    .residual("extrapolated", h.extrapolated)
                    .residual("relative error", h.error)
                    .residual("remainder", h.remainder)
                    .residual("tail bound", h.tail_bound);
                for s in &h.samples {
                    c = c.residual(format!("raw t={}", s.t), s.raw).residual(format!("corrected t={}", s.t), s.corrected);
                }
                Ok(c)
            }));
        }
    }
    r
}

pub fn all(cfg: &Config, extra: Option<&LieAlg>) -> Report {
    let mut r = Report::new("all");
    r.extend(verify_algebra(cfg, extra));
    r.extend(verify_weil(cfg));
    r.extend(verify_gauss(cfg));
    r.extend(verify_duflo(cfg));
    r.extend(index(cfg));
    r.extend(verify_theorem(cfg));
    r.extend(heat(cfg));
    r
}

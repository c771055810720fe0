//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use duflo_cw_core::duflo::{duflo, duflo_inv, harish_chandra_check, pair0, Dist0};
use duflo_cw_core::fixtures;
use duflo_cw_core::gaussmoment::check_lemma;
use duflo_cw_core::gradedalg::{bivectors_span_exterior_square, CliffElt, Multivector, SpinorRep};
use duflo_cw_core::indexlab::{build_model, heat_report, theorem_check, HeatConfig, HeatStatus};
use duflo_cw_core::liealg::LieAlg;
use duflo_cw_core::scalar::{Monomial, Scalar, Series};
use duflo_cw_core::weil::{build_spindata, check_identities};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clifford_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [2, 4] {
        let s = SpinorRep::new(n).map_err(|e| e.to_string())?;
        for trial in 0..200 {
            let a = CliffElt::random(n, &mut rng, 6);
            let b = CliffElt::random(n, &mut rng, 6);
            let ab = &a * &b;
            let lhs = s.represent(&ab).unwrap();
            let rhs = &s.represent(&a).unwrap() * &s.represent(&b).unwrap();
            ensure(lhs == rhs, || format!("n={n} trial {trial}: product mismatch"))?;
            let st = ab.berezin_supertrace().unwrap();
            let oracle = s.supertrace(&lhs).unwrap();
            ensure(st == oracle, || format!("n={n} trial {trial}: Str {st} vs {oracle}"))?;
        }
    }
    Ok("n in {2,4}, 200 random pairs each".into())
}

fn chevalley() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for t in 0..100 {
        let n = rng.gen_range(1..=5);
        let m = Multivector::random(n, &mut rng, 8);
        ensure(m.chevalley_inv().chevalley() == m, || format!("round trip fails on {m}"))?;
        let _ = t;
    }
    for n in 2..=5 {
        ensure(bivectors_span_exterior_square(n).unwrap(), || format!("n={n}: image is not Λ²"))?;
    }
    Ok("100 round trips; Λ² image for n=2..5".into())
}

fn weil_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for alpha in [fixtures::rotation(), fixtures::su2_adjoint()] {
        let sd = build_spindata(&alpha).map_err(|e| e.to_string())?;
        let rep = check_identities(&sd, 8, &mut rng).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{}: {:?}", alpha.algebra().name(), rep.violations))?;
    }
    Ok("rotation and su2 adjoint at order 8".into())
}

fn gauss_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sd = build_spindata(&fixtures::su2_adjoint()).unwrap();
    for t in 0..20 {
        let phi = Series::random_polynomial(3, 4, 4, &mut rng);
        let rep = check_lemma(&phi, &sd).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("phi #{t}: {:?}", rep.violations))?;
    }
    Ok("20 random phi of degree <= 4".into())
}

fn duflo_checks() -> Outcome {
    let g = LieAlg::su2();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..10 {
        let mut u = Dist0::zero(3);
        for _ in 0..3 {
            let e: Vec<u8> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            u.add_term(Monomial::from_exponents(&e), Scalar::from_int(rng.gen_range(-5..=5)));
        }
        let back = duflo_inv(&duflo(&u, &g).unwrap(), &g).unwrap();
        let phi = Series::random_polynomial(3, 8, 8, &mut rng);
        let (a, b) = (pair0(&back, &phi).unwrap(), pair0(&u, &phi).unwrap());
        ensure(a == b, || format!("trial {t}: {a} != {b}"))?;
    }
    let hc = harish_chandra_check(5).map_err(|e| e.to_string())?;
    ensure(hc.passed(), || format!("{:?}", hc.violations))?;
    Ok("round trip on 10 random u; Casimir pattern exact over m=0..5".into())
}

fn index_stability() -> Outcome {
    let m = build_model(0, 4).unwrap();
    let a = m.distributional_index(20).map_err(|e| e.to_string())?;
    let b = m.distributional_index(30).map_err(|e| e.to_string())?;
    for cs in [&a, &b] {
        ensure(cs.report.passed(), || format!("{:?}", cs.report.violations))?;
        let fit = cs.pattern().map_err(|e| e.to_string())?;
        ensure(fit.degree() <= 1, || format!("fit degree {}", fit.degree()))?;
    }
    for k in -10..=10 {
        let (x, y) = (a.coefficient(k), b.coefficient(k));
        ensure(x.is_some() && x == y, || format!("weight {k}: {x:?} vs {y:?}"))?;
    }
    Ok("cutoffs 20 and 30 agree on |m| <= 10, linear fit exact".into())
}

fn theorem() -> Outcome {
    let phis = fixtures::torus_monomials(3, 4);
    let mut count = 0;
    for w in -2..=2 {
        let m = build_model(w, 4).map_err(|e| e.to_string())?;
        let rep = theorem_check(&m, 6, &phis).map_err(|e| e.to_string())?;
        ensure(rep.report.passed(), || format!("w={w}: {:?}", rep.report.violations))?;
        count += rep.rows.iter().filter(|r| r.lhs == r.rhs).count();
    }
    ensure(count == 20, || format!("{count} equalities"))?;
    Ok("20 exact equalities".into())
}

fn heat() -> Outcome {
    let m = build_model(0, 4).unwrap();
    let cs = m.distributional_index(12).unwrap();
    let cfg = HeatConfig::default();
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for k in -4..=4 {
        let exact = cs.coefficient(k).ok_or("weight outside the certified window")?;
        let r = heat_report(&m, k, exact, &cfg).map_err(|e| e.to_string())?;
        let raw: Vec<String> = r.samples.iter().map(|s| format!("{:.6}", s.raw)).collect();
        lines.push(format!(
            "m={k:+} exact={exact:+} raw(t)=[{}] extrapolated={:.6} rel.err={:.2e}",
            raw.join(", "),
            r.extrapolated,
            r.error
        ));
        if r.status != HeatStatus::Pass {
            bad.push(format!("m={k} rel.err {:.2e}", r.error));
        }
    }
    for l in &lines {
        println!("    {l}");
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("|m| <= 4 within 1e-3".into())
}

fn sensitivity() -> Outcome {
    let m = build_model(0, 4).unwrap();
    let flipped = theorem_check(&m.with_supertrace_sign(-1), 4, &fixtures::torus_monomials(3, 4)).unwrap();
    ensure(!flipped.report.passed(), || "flipped supertrace sign went unnoticed".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let skew = fixtures::non_invariant_so4().unwrap();
    let sd = build_spindata(&skew).unwrap();
    let caught = !skew.algebra().validate().passed() || !check_identities(&sd, 4, &mut rng).unwrap().passed();
    ensure(caught, || "non-invariant inner product went unnoticed".into())?;

    let bad = fixtures::non_homomorphic_so4().unwrap();
    let sd = build_spindata(&bad).unwrap();
    let phi = Series::var(6, 4, 0).pow(2);
    let caught = !sd.check_gamma().passed() || !check_lemma(&phi, &sd).unwrap().passed();
    ensure(caught, || "non-homomorphic gamma went unnoticed".into())?;
    Ok("all three corruptions detected".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Clifford/spinor oracle equivalence", clifford_oracle),
        ("Chevalley round trip and image", chevalley),
        ("Weil identities", weil_identities),
        ("Gaussian moment lemma", gauss_lemma),
        ("Duflo round trip and Casimir pattern", duflo_checks),
        ("index stability", index_stability),
        ("index formula end to end", theorem),
        ("heat trace extrapolation", heat),
        ("sensitivity fixtures", sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("criterion {}: PASS {name} ({d}) [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({d}) [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

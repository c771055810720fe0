use duflo_cw_core::fixtures::torus_monomials;
use duflo_cw_core::indexlab::{
    build_model, heat_report, heat_trace, lhs_exact, rhs_exact, theorem_check, HeatConfig, HeatStatus,
};
use duflo_cw_core::scalar::{Scalar, Series};

#[test]
fn raising_the_cutoff_keeps_coefficients() {
    let m = build_model(1, 4).unwrap();
    for c in [4usize, 8, 10] {
        let a = m.distributional_index(c).unwrap();
        let b = m.distributional_index(c + c / 2).unwrap();
        let d = m.distributional_index(2 * c).unwrap();
        for k in -(c as i64) / 2..=(c as i64) / 2 {
            assert_eq!(a.coefficient(k), b.coefficient(k));
            assert_eq!(a.coefficient(k), d.coefficient(k));
        }
    }
}

#[test]
fn untwisted_symmetric_weight_has_zero_index() {
    let cs = build_model(0, 4).unwrap().distributional_index(6).unwrap();
    assert_eq!(cs.coefficient(0), Some(0));
    // outside the certified window nothing is reported
    assert_eq!(cs.coefficient(20), None);
}

#[test]
fn every_block_is_odd_and_satisfies_mckean_singer() {
    let m = build_model(-1, 4).unwrap();
    for two_j in 0..=8 {
        let rep = m.block(two_j).unwrap().check().unwrap();
        assert!(rep.passed(), "2j={two_j}: {:?}", rep.violations);
    }
    for two_j in 9..=14 {
        let b = m.block(two_j).unwrap();
        assert!(b.dirac().anticommutator(b.grading()).unwrap().is_zero());
    }
}

#[test]
fn theorem_side_values() {
    let phis = torus_monomials(3, 4);
    for w in -2..=2 {
        let m = build_model(w, 4).unwrap();
        // rhs(1) is the Chern character of the twist, linear in w
        assert_eq!(rhs_exact(&m, &phis[0]).unwrap(), Scalar::from_int(w));
        let cs = m.distributional_index(4).unwrap();
        let zero = Series::zero(1, 4);
        assert!(lhs_exact(&cs, &m, &zero).unwrap().is_zero());
        assert!(rhs_exact(&m, &zero).unwrap().is_zero());
        // Q is affine, so x^2 and x^3 see nothing
        assert!(lhs_exact(&cs, &m, &phis[2]).unwrap().is_zero());
        assert!(lhs_exact(&cs, &m, &phis[3]).unwrap().is_zero());
    }
}

#[test]
fn sign_flip_changes_only_the_spectral_side() {
    let m = build_model(1, 4).unwrap();
    let phis = torus_monomials(1, 4);
    let good = theorem_check(&m, 4, &phis).unwrap();
    let bad = theorem_check(&m.with_supertrace_sign(-1), 4, &phis).unwrap();
    assert!(good.report.passed());
    assert!(!bad.report.passed());
    for (g, b) in good.rows.iter().zip(&bad.rows) {
        assert_eq!(g.rhs, b.rhs);
        assert_eq!(b.lhs, -&g.lhs);
    }
}

#[test]
fn heat_error_shrinks_with_spectral_cutoff() {
    let m = build_model(0, 4).unwrap();
    let t = 0.1;
    let exact = 3.0 * (-t * 2.0f64).exp(); // weight -3 sits in the 2j = 2 block
    let mut last = f64::INFINITY;
    for cutoff in [0usize, 1, 2, 4, 8] {
        let cfg = HeatConfig { spectral_cutoff: cutoff, ..HeatConfig::default() };
        let err = (heat_trace(&m, t, -3, &cfg).unwrap().0 - exact).abs();
        assert!(err <= last + 1e-12, "cutoff {cutoff}: {err} > {last}");
        last = err;
    }
    assert!(last < 1e-12);
}

#[test]
fn trivial_character_gives_index_at_zero() {
    let m = build_model(2, 4).unwrap();
    let cfg = HeatConfig { spectral_cutoff: 20, ..HeatConfig::default() };
    let r = heat_report(&m, 0, 2, &cfg).unwrap();
    assert_eq!(r.status, HeatStatus::Pass);
    assert!(r.samples.iter().all(|s| (s.corrected - 2.0).abs() < 1e-9));
}

#[test]
fn unresolved_extrapolation_is_flagged() {
    let m = build_model(0, 4).unwrap();
    let r = heat_report(&m, 4, -4, &HeatConfig { spectral_cutoff: 20, ..HeatConfig::default() }).unwrap();
    assert_eq!(r.status, HeatStatus::Flagged);
    assert!(r.remainder > 1e-3);
}

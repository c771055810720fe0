use duflo_cw_core::duflo::{duflo, duflo_inv, pair0, Dist0};
use duflo_cw_core::fixtures;
use duflo_cw_core::gaussmoment::expand;
use duflo_cw_core::gradedalg::{CliffElt, Multivector};
use duflo_cw_core::liealg::{LieAlg, Rep};
use duflo_cw_core::scalar::{rat, GaussRat, Monomial, Scalar, Series};
use duflo_cw_core::weil::{build_spindata, eval_at_mixed, MixedElt};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_series(seed: u64) -> Series {
    let mut r = rng(seed);
    let s = Series::random_polynomial(2, 6, 6, &mut r);
    &(&s - &Series::constant(2, 6, s.constant_term())) + &Series::one(2, 6)
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-2i32..=2, -6i64..=6, -6i64..=6, 1i64..=4), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (k, a, b, d)| {
            &acc + &Scalar::monomial(GaussRat::new(rat(a, d), rat(b, d)), k)
        })
    })
}

fn monomial_scalar() -> impl Strategy<Value = Scalar> {
    (-2i32..=2, -6i64..=6, -6i64..=6, 1i64..=4)
        .prop_filter("nonzero", |(_, a, b, _)| *a != 0 || *b != 0)
        .prop_map(|(k, a, b, d)| Scalar::monomial(GaussRat::new(rat(a, d), rat(b, d)), k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn series_ring_axioms(s in any::<u64>()) {
        let mut r = rng(s);
        let a = Series::random_polynomial(3, 4, 4, &mut r);
        let b = Series::random_polynomial(3, 4, 4, &mut r);
        let c = Series::random_polynomial(3, 4, 4, &mut r);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn sqrt_and_inverse(s in any::<u64>()) {
        let u = unit_series(s);
        let r = u.sqrt().unwrap();
        prop_assert_eq!(&r * &r, u.clone());
        prop_assert_eq!(&u.invert().unwrap() * &u, Series::one(2, 6));
    }

    #[test]
    fn scalar_division_round_trip(a in scalar_strategy(), b in monomial_scalar()) {
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }

    #[test]
    fn rep_homomorphism(s in any::<u64>(), which in 0usize..4) {
        let rep = match which {
            0 => fixtures::su2_adjoint(),
            1 => fixtures::so4_defining(),
            2 => Rep::su2_irrep(3),
            _ => fixtures::quaternion_su2(),
        };
        let g = rep.algebra();
        let mut r = rng(s);
        let x = g.random_element(&mut r);
        let y = g.random_element(&mut r);
        let lhs = rep.eval(&x).unwrap().commutator(&rep.eval(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rep.eval(&g.bracket(&x, &y).unwrap()).unwrap());
    }

    #[test]
    fn evaluation_is_multiplicative(s in any::<u64>()) {
        let mut r = rng(s);
        let n = 4;
        let comps: Vec<Multivector> = (0..2)
            .map(|_| {
                let m = Multivector::random(n, &mut r, 6);
                &m.grade_part(2) + &m.grade_part(4)
            })
            .collect();
        let eta = MixedElt::new(n, comps).unwrap();
        let a = Series::random_polynomial(2, 4, 3, &mut r);
        let b = Series::random_polynomial(2, 4, 3, &mut r);
        let lhs = eval_at_mixed(&(&a * &b), &eta).unwrap();
        let rhs = &eval_at_mixed(&a, &eta).unwrap() * &eval_at_mixed(&b, &eta).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chevalley_top_degree(s in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(s);
        let a = CliffElt::random(n, &mut r, 8);
        let top = a.terms().map(|(b, _)| b.count_ones()).max().unwrap_or(0);
        let sigma = a.chevalley();
        let mut expect = Multivector::zero(n);
        for (b, c) in a.terms().filter(|(b, _)| b.count_ones() == top) {
            expect.add_term(b, c.clone());
        }
        prop_assert_eq!(sigma.grade_part(top), expect);
    }

    #[test]
    fn gaussian_expansion_is_linear(s in any::<u64>()) {
        let mut r = rng(s);
        let sd = build_spindata(&fixtures::su2_adjoint()).unwrap();
        let p = Series::random_polynomial(3, 4, 4, &mut r);
        let q = Series::random_polynomial(3, 4, 4, &mut r);
        let (a, b) = (Scalar::from_int(r.gen_range(-4..=4)), Scalar::ratio(r.gen_range(-4..=4), 3));
        let lhs = expand(&(&p.scale(&a) + &q.scale(&b)), &sd, 2).unwrap();
        let (ep, eq) = (expand(&p, &sd, 2).unwrap(), expand(&q, &sd, 2).unwrap());
        for k in 0..=2 {
            prop_assert_eq!(&lhs.psi[k], &(&ep.psi[k].scale(&a) + &eq.psi[k].scale(&b)));
        }
    }

    #[test]
    fn odd_phi_has_no_scalar_part(s in any::<u64>()) {
        let mut r = rng(s);
        let sd = build_spindata(&fixtures::su2_adjoint()).unwrap();
        let mut phi = Series::zero(3, 4);
        for deg in [1u32, 3] {
            for m in Monomial::all_of_degree(3, deg) {
                phi.add_term(m, Scalar::from_int(r.gen_range(-3..=3)));
            }
        }
        let e = expand(&phi, &sd, 2).unwrap();
        for psi in &e.psi {
            prop_assert!(psi.grade_part(0).is_zero());
        }
    }

    #[test]
    fn duflo_inverse_on_monomials(e0 in 0u8..3, e1 in 0u8..3, e2 in 0u8..3, s in any::<u64>()) {
        let g = LieAlg::su2();
        let u = Dist0::derivative(Monomial::from_exponents(&[e0, e1, e2]), Scalar::one());
        let back = duflo_inv(&duflo(&u, &g).unwrap(), &g).unwrap();
        let mut r = rng(s);
        let phi = Series::random_polynomial(3, 8, 8, &mut r);
        prop_assert_eq!(pair0(&back, &phi).unwrap(), pair0(&u, &phi).unwrap());
    }
}

#[test]
fn builtins_validate() {
    for name in ["su2", "so3", "abelian(2)", "so(4)", "son(5)"] {
        let g = LieAlg::builtin(name).unwrap();
        assert!(g.validate().passed(), "{name}");
    }
}

#[test]
fn basis_blade_products_match_spinor_matrices() {
    for n in [2usize, 4, 6] {
        let s = duflo_cw_core::gradedalg::SpinorRep::new(n).unwrap();
        for a in 0u32..(1 << n) {
            let ea = CliffElt::blade(n, a, Scalar::one());
            let ma = s.blade(a);
            for b in 0u32..(1 << n) {
                let prod = &ea * &CliffElt::blade(n, b, Scalar::one());
                assert_eq!(s.represent(&prod).unwrap(), &ma * &s.blade(b), "n={n} {a:b}*{b:b}");
            }
        }
    }
}

use hyperinv::dd::Dd;
use hyperinv::exact::{pochhammer_linear, rational, BiPoly, ExactScalar};
use hyperinv::matrix::dn::d_n_brute;
use hyperinv::matrix::{build_a, build_b, d_n, float_roundtrip, roundtrip_error, DnMethod, Precision};
use hyperinv::scalar::pochhammer;
use hyperinv::series::{sigma_series, theta_residual, radius_r, TruncatedSeries};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = ExactScalar> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| rational(p, q))
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((small_rational(), 0u32..4, 0u32..4), 0..5).prop_map(|terms| {
        terms.into_iter().fold(BiPoly::zero(), |acc, (c, i, j)| acc + BiPoly::monomial(c, i, j))
    })
}

fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bipoly_ring_laws(a in bipoly(), b in bipoly(), c in bipoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &BiPoly::one(), a.clone());
    }

    #[test]
    fn bipoly_eval_is_a_ring_map(a in bipoly(), b in bipoly(), x0 in small_rational(), nu0 in small_rational()) {
        let (ea, eb) = (a.eval(&x0, &nu0), b.eval(&x0, &nu0));
        prop_assert_eq!((&a * &b).eval(&x0, &nu0), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&x0, &nu0), ea + eb);
    }

    #[test]
    fn pochhammer_linear_evaluates_pointwise(c in small_rational(), m in 0usize..8, nu0 in small_rational()) {
        let p = pochhammer_linear(&c, m);
        prop_assert_eq!(p.eval(&rational(0, 1), &nu0), pochhammer(&(&c * &nu0), m));
    }

    #[test]
    fn dd_matches_rationals(a in -1e6f64..1e6, b in 1e-3f64..1e3) {
        let exact = |v: Dd| BigRational::from_float(v.hi()).unwrap() + BigRational::from_float(v.lo()).unwrap();
        let (da, db) = (Dd::from(a) / Dd::from(7.0), Dd::from(b));
        let (ra, rb) = (exact(da), exact(db));
        let tol = BigRational::new(BigInt::one(), BigInt::from(10).pow(28));
        let check = |got: Dd, want: BigRational| {
            if want.is_zero() { return got.to_f64() == 0.0; }
            let gap = (exact(got) - &want) / &want;
            (if gap < BigRational::zero() { -gap } else { gap }) < tol
        };
        prop_assert!(check(da * db, &ra * &rb));
        prop_assert!(check(da + db, &ra + &rb));
        prop_assert!(check(da / db, &ra / &rb));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sigma_prefix_is_stable(nu in small_rational(), lo in 2usize..10, extra in 1usize..8) {
        let short = sigma_series(&nu, lo);
        let long = sigma_series(&nu, lo + extra);
        for i in 0..=lo {
            prop_assert_eq!(short.coeff(i), long.coeff(i));
        }
    }

    #[test]
    fn composition_prefix_is_stable(
        f in prop::collection::vec(small_rational(), 6),
        g in prop::collection::vec(small_rational(), 6),
    ) {
        let mut g = g;
        g[0] = rational(0, 1);
        let f5 = TruncatedSeries::new(f.clone(), 5);
        let g5 = TruncatedSeries::new(g.clone(), 5);
        let full = f5.compose(&g5).unwrap();
        let cut = f5.truncate(3).compose(&g5.truncate(3)).unwrap();
        for i in 0..=3 {
            prop_assert_eq!(full.coeff(i), cut.coeff(i));
        }
    }

    #[test]
    fn reversion_is_a_compositional_inverse(g in prop::collection::vec(small_rational(), 7)) {
        let mut g = g;
        g[0] = rational(0, 1);
        prop_assume!(!g[1].is_zero());
        let s = TruncatedSeries::new(g, 6);
        let r = s.reversion().unwrap();
        prop_assert_eq!(s.compose(&r).unwrap(), TruncatedSeries::variable(6));
    }

    #[test]
    fn roundtrip_double_small_n(
        x in complex(0.9), nu in complex(1.0),
        s in prop::collection::vec(complex(1.0), 8),
    ) {
        let back = float_roundtrip(8, x, nu, &s, Precision::Double).unwrap();
        prop_assert!(roundtrip_error(&s, &back) < 1e-8);
    }

    #[test]
    fn roundtrip_double_double_n20(
        x in complex(0.9), nu in complex(1.0),
        s in prop::collection::vec(complex(1.0), 20),
    ) {
        let back = float_roundtrip(20, x, nu, &s, Precision::DoubleDouble).unwrap();
        prop_assert!(roundtrip_error(&s, &back) < 1e-8);
    }

    #[test]
    fn reverse_order_product_is_identity(x in complex(0.9), nu in complex(1.0)) {
        let a = build_a(10, &x, &nu);
        let b = build_b(10, &x, &nu);
        let p = b.mul(&a).unwrap();
        for (n, k, v) in p.iter() {
            let want = if n == k { 1.0 } else { 0.0 };
            prop_assert!((v - want).norm() < 1e-6, "({}, {}) -> {}", n, k, v);
        }
    }

    #[test]
    fn dn_closed_matches_brute(lambda in complex(3.0), mu in complex(3.0), n in 1usize..15) {
        let closed = d_n(lambda, mu, n, DnMethod::Closed);
        let brute = d_n_brute(lambda, mu, n);
        prop_assert!((closed - brute).norm() <= 1e-9 * brute.norm().max(1.0));
    }

    #[test]
    fn theta_solves_its_equation(nu in -1.0f64..0.9, r in 0.0f64..0.8, t in 0.0f64..std::f64::consts::TAU) {
        let nu = Complex64::new(nu, 0.0);
        let w = Complex64::from_polar(r * radius_r(nu), t);
        prop_assert!(theta_residual(w, nu).unwrap() <= 1e-12);
    }
}
